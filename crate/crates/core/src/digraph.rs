//! Weight tuples, vertex-weighted digraphs and the combinatorial side of the
//! type B theory: signed nests, coking/king elimination, the row walk
//! through the descendant matrix, and the digraph forms that decide
//! supersolvability of the deleted Shi and Ish arrangements.
//!
//! Vertices are numbered from 1.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::families::{desc_b, desc_b_weights, psi_b, tower};
use crate::poset::is_modular_coatom;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightTuple(Vec<BTreeSet<i64>>);

impl WeightTuple {
    pub fn new(sets: Vec<BTreeSet<i64>>) -> Self {
        Self(sets)
    }

    pub fn from_slices(sets: &[&[i64]]) -> Self {
        Self(sets.iter().map(|s| s.iter().copied().collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sets(&self) -> &[BTreeSet<i64>] {
        &self.0
    }

    /// The set of vertex `i` (1-based).
    pub fn get(&self, i: usize) -> &BTreeSet<i64> {
        &self.0[i - 1]
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|s| s.iter().map(|x| -x).collect()).collect())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(BTreeSet::len).collect()
    }

    /// `[a, b]` if the set is a nonempty integer interval.
    pub fn interval(&self, i: usize) -> Option<(i64, i64)> {
        let s = self.get(i);
        let (&a, &b) = (s.first()?, s.last()?);
        (b - a + 1 == s.len() as i64).then_some((a, b))
    }
}

fn fmt_set(s: &BTreeSet<i64>) -> String {
    match (s.first(), s.last()) {
        (Some(&a), Some(&b)) if b - a + 1 == s.len() as i64 && s.len() > 1 => format!("[{a}..{b}]"),
        _ => format!("{{{}}}", s.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
    }
}

impl fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_set).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Whether `+-small` is contained in `big`.
pub fn signed_nested(small: &BTreeSet<i64>, big: &BTreeSet<i64>) -> bool {
    small.iter().all(|x| big.contains(x) && big.contains(&-x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleClass {
    pub centered: bool,
    pub uneven: bool,
    pub nonnegative: bool,
    /// A permutation `w` (1-based) with `+-N_w(i) subset N_w(i-1)`, if any.
    pub signed_nest: Option<Vec<usize>>,
}

/// Centered: `0 in N_i`. Uneven: no two sets of the same even size.
/// Nonnegative: all entries `>= 0`. The signed nest order is found by
/// sorting by decreasing size, ties by index; equal sizes in a nest force
/// equal symmetric sets so the tie order is irrelevant.
pub fn classify_tuple(n: &WeightTuple) -> TupleClass {
    let sizes = n.sizes();
    let uneven = (0..sizes.len())
        .all(|i| (i + 1..sizes.len()).all(|j| sizes[i] != sizes[j] || sizes[i] % 2 == 1));
    TupleClass {
        centered: n.sets().iter().all(|s| s.contains(&0)),
        uneven,
        nonnegative: n.sets().iter().all(|s| s.iter().all(|&x| x >= 0)),
        signed_nest: nest_order(n, signed_nested),
    }
}

fn nest_order(n: &WeightTuple, within: fn(&BTreeSet<i64>, &BTreeSet<i64>) -> bool) -> Option<Vec<usize>> {
    let mut w: Vec<usize> = (1..=n.len()).collect();
    w.sort_by_key(|&i| (std::cmp::Reverse(n.get(i).len()), i));
    w.windows(2).all(|p| within(n.get(p[1]), n.get(p[0]))).then_some(w)
}

/// Order with `N_w(i) subset N_w(i-1)` (type A nest), if any.
pub fn nest_type_a(n: &WeightTuple) -> Option<Vec<usize>> {
    nest_order(n, |a, b| a.is_subset(b))
}

/// Exponents `{1} + {|N_w(i)| + 2(i-1)}` predicted for a signed nest.
pub fn signed_nest_exponents(n: &WeightTuple, w: &[usize]) -> Vec<usize> {
    let mut e: Vec<usize> = w.iter().enumerate().map(|(i, &v)| n.get(v).len() + 2 * i).collect();
    e.push(1);
    e.sort_unstable();
    e
}

/// A digraph on `[order]` with optional loops. Edges may point either way;
/// the deleted-arrangement digraphs only use upward edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Digraph {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
    loops: BTreeSet<usize>,
}

impl Digraph {
    pub fn new(order: usize) -> Self {
        Self { order, edges: BTreeSet::new(), loops: BTreeSet::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn loops(&self) -> &BTreeSet<usize> {
        &self.loops
    }

    fn vertex(&self, v: usize) -> Result<()> {
        if (1..=self.order).contains(&v) {
            Ok(())
        } else {
            Err(Error::BadParams(format!("vertex {v} outside [1, {}]", self.order)))
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.vertex(u)?;
        self.vertex(v)?;
        if u == v {
            return Err(Error::BadParams(format!("edge ({u},{u}) is a loop; use L=")));
        }
        self.edges.insert((u, v));
        Ok(())
    }

    pub fn add_loop(&mut self, v: usize) -> Result<()> {
        self.vertex(v)?;
        self.loops.insert(v);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(&v)
    }

    pub fn is_upward(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u < v)
    }

    pub fn converse(&self) -> Self {
        Self {
            order: self.order,
            edges: self.edges.iter().map(|&(u, v)| (v, u)).collect(),
            loops: self.loops.clone(),
        }
    }

    /// Subgraph induced on the given vertices, relabelled `1..` in order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let pos = |x: usize| vertices.iter().position(|&v| v == x);
        let mut g = Self::new(vertices.len());
        for &(u, v) in &self.edges {
            if let (Some(a), Some(b)) = (pos(u), pos(v)) {
                g.edges.insert((a + 1, b + 1));
            }
        }
        for &v in &self.loops {
            if let Some(a) = pos(v) {
                g.loops.insert(a + 1);
            }
        }
        g
    }

    pub fn is_king(&self, v: usize) -> bool {
        (1..=self.order).all(|u| u == v || self.has_edge(v, u))
    }

    pub fn is_coking(&self, v: usize) -> bool {
        (1..=self.order).all(|u| u == v || self.has_edge(u, v))
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.edges.iter().all(|&(a, b)| a != v && b != v)
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges.iter().map(|(u, v)| format!("({u},{v})")).collect();
        let l: Vec<String> = self.loops.iter().map(usize::to_string).collect();
        write!(f, "l={} E={} L={}", self.order, e.join(","), l.join(","))
    }
}

/// A loopless digraph with a set of integers on each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedDigraph {
    graph: Digraph,
    weights: WeightTuple,
}

impl WeightedDigraph {
    pub fn new(graph: Digraph, weights: WeightTuple) -> Result<Self> {
        if !graph.loops.is_empty() {
            return Err(Error::BadParams("weighted digraphs carry no loops".into()));
        }
        if weights.len() != graph.order {
            return Err(Error::DimMismatch { expected: graph.order, found: weights.len() });
        }
        Ok(Self { graph, weights })
    }

    pub fn order(&self) -> usize {
        self.graph.order
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn weights(&self) -> &WeightTuple {
        &self.weights
    }

    pub fn converse_negated(&self) -> Self {
        Self { graph: self.graph.converse(), weights: self.weights.negated() }
    }

    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self {
            graph: self.graph.induced(vertices),
            weights: WeightTuple(vertices.iter().map(|&v| self.weights.get(v).clone()).collect()),
        }
    }

    /// Weighted digraph with vertex `v` and its edges removed.
    pub fn without(&self, v: usize) -> Self {
        let keep: Vec<usize> = (1..=self.order()).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Append isolated vertices with the given weights.
    pub fn with_isolated(&self, weights: &[BTreeSet<i64>]) -> Self {
        let mut out = self.clone();
        out.graph.order += weights.len();
        out.weights.0.extend(weights.iter().cloned());
        out
    }

    fn eliminate(&self, v: usize, into: bool) -> Result<Self> {
        let mut ivs = Vec::with_capacity(self.order());
        for i in 1..=self.order() {
            ivs.push(self.weights.interval(i).ok_or(Error::NonIntervalWeight(i))?);
        }
        let ok = if into { self.graph.is_coking(v) } else { self.graph.is_king(v) };
        if !ok {
            return Err(if into { Error::NotCoking(v) } else { Error::NotKing(v) });
        }
        let mut graph = self.graph.clone();
        graph.edges.retain(|&(a, b)| if into { b != v } else { a != v });
        let weights = ivs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if i + 1 == v { (a..=b).collect() } else { (a - 1..=b + 1).collect() })
            .collect();
        Ok(Self { graph, weights: WeightTuple(weights) })
    }
}

impl fmt::Display for WeightedDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} psi={}", self.graph, self.weights)
    }
}

/// Coking elimination: drop the edges into the coking `v` and widen every
/// other interval weight by one on each side.
pub fn bce(g: &WeightedDigraph, v: usize) -> Result<WeightedDigraph> {
    g.eliminate(v, true)
}

/// King elimination: drop the edges out of the king `v`, widening as in
/// [`bce`].
pub fn bke(g: &WeightedDigraph, v: usize) -> Result<WeightedDigraph> {
    g.eliminate(v, false)
}

/// Whether the cone of the arrangement without `v` is a modular coatom of
/// the cone of the whole arrangement.
pub fn is_b_simplicial(g: &WeightedDigraph, v: usize) -> Result<bool> {
    let whole = psi_b(g)?.cone();
    let rest = psi_b(&g.without(v))?;
    // Re-embed the smaller arrangement with x_v present but unused.
    let l = g.order();
    let lifted: Vec<(Vec<i64>, i64)> = rest
        .hyperplanes()
        .iter()
        .map(|h| {
            let mut a = h.normal().to_vec();
            a.insert(v - 1, 0);
            (a, h.offset())
        })
        .collect();
    let sub = Arrangement::from_pairs(l, lifted)?.cone();
    is_modular_coatom(&whole, &sub)
}

/// Exponent contributed by a B-simplicial vertex:
/// `|psi(v)| + 2e + 2l - 2`, `e` the number of edges at `v`.
pub fn simplicial_exponent(g: &WeightedDigraph, v: usize) -> usize {
    let e = g.graph.edges.iter().filter(|&&(a, b)| a == v || b == v).count();
    g.weights.get(v).len() + 2 * e + 2 * g.order() - 2
}

#[derive(Debug, Clone)]
pub struct RowWalkStep {
    pub k: usize,
    pub digraph: WeightedDigraph,
    pub arrangement: Arrangement,
    /// Whether the digraph agrees with the direct constructor for `k`.
    pub matches_constructor: bool,
}

/// Walk row `p` of the descendant matrix from `k = 1` to `k = l`. Each step
/// applies coking elimination at `v = l - k + 1` on the subgraph induced by
/// `[v]` and re-adds the isolated vertices `v + 1, ..., l`.
pub fn row_walk(l: usize, m: usize, p: usize) -> Result<Vec<RowWalkStep>> {
    let mut g = WeightedDigraph::new(tower(l, 1), desc_b_weights(l, m, p, 1))?;
    let mut steps = Vec::new();
    for k in 1..=l {
        if k > 1 {
            let v = l - (k - 1) + 1;
            let head: Vec<usize> = (1..=v).collect();
            let tail: Vec<BTreeSet<i64>> = (v + 1..=l).map(|i| g.weights.get(i).clone()).collect();
            g = bce(&g.induced(&head), v)?.with_isolated(&tail);
        }
        let arrangement = psi_b(&g)?;
        let matches_constructor = arrangement == desc_b(l, m, p, k)?
            && g == WeightedDigraph::new(tower(l, k), desc_b_weights(l, m, p, k))?;
        steps.push(RowWalkStep { k, digraph: g.clone(), arrangement, matches_constructor });
    }
    Ok(steps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DigraphForm {
    /// All edges leave one vertex, a loop allowed only there.
    A,
    /// At least two edges, all entering one vertex, no loops.
    B,
    /// No edges.
    C,
    None,
}

pub fn digraph_form(g: &Digraph) -> DigraphForm {
    if g.edges.is_empty() {
        return DigraphForm::C;
    }
    let tails: BTreeSet<usize> = g.edges.iter().map(|e| e.0).collect();
    let heads: BTreeSet<usize> = g.edges.iter().map(|e| e.1).collect();
    if tails.len() == 1 && g.loops.iter().all(|v| tails.contains(v)) {
        return DigraphForm::A;
    }
    if g.edges.len() >= 2 && heads.len() == 1 && g.loops.is_empty() {
        return DigraphForm::B;
    }
    DigraphForm::None
}

/// An obstruction: required and optional edges and loops on `k` pattern
/// vertices `0..k`.
struct Pattern {
    name: &'static str,
    k: usize,
    edges: &'static [(usize, usize)],
    opt_edges: &'static [(usize, usize)],
    loops: &'static [usize],
    opt_loops: &'static [usize],
}

// The first three are drawn with a loop as a loop; the fourth is the third
// pattern with its second edge replaced by a loop, reading a loop at `i` as
// an edge from `i` to an extra sink vertex. Without it the edge (1,2) plus
// an unrelated loop at 3 would escape every pattern.
const PATTERNS: [Pattern; 4] = [
    Pattern { name: "edge into a loop", k: 2, edges: &[(0, 1)], opt_edges: &[], loops: &[1], opt_loops: &[0] },
    Pattern { name: "directed path", k: 3, edges: &[(0, 1), (1, 2)], opt_edges: &[(0, 2)], loops: &[], opt_loops: &[0] },
    Pattern {
        name: "two disjoint edges",
        k: 4,
        edges: &[(0, 1), (2, 3)],
        opt_edges: &[(2, 1), (0, 3)],
        loops: &[],
        opt_loops: &[0, 2],
    },
    Pattern {
        name: "edge and a foreign loop",
        k: 3,
        edges: &[(0, 1)],
        opt_edges: &[(2, 1)],
        loops: &[2],
        opt_loops: &[0],
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenHit {
    pub pattern: String,
    /// Vertices of the digraph matched to the pattern vertices in order.
    pub vertices: Vec<usize>,
}

/// Find an induced copy of an obstruction pattern, any choice of the
/// optional edges and loops allowed.
pub fn has_forbidden_induced(g: &Digraph) -> Option<ForbiddenHit> {
    for pat in &PATTERNS {
        let mut chosen = Vec::with_capacity(pat.k);
        if let Some(v) = match_pattern(g, pat, &mut chosen) {
            return Some(ForbiddenHit { pattern: pat.name.to_string(), vertices: v });
        }
    }
    None
}

fn match_pattern(g: &Digraph, pat: &Pattern, chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
    if chosen.len() == pat.k {
        return induced_matches(g, pat, chosen).then(|| chosen.clone());
    }
    for v in 1..=g.order {
        if chosen.contains(&v) {
            continue;
        }
        chosen.push(v);
        if let Some(hit) = match_pattern(g, pat, chosen) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

fn induced_matches(g: &Digraph, pat: &Pattern, map: &[usize]) -> bool {
    for a in 0..pat.k {
        let required = pat.loops.contains(&a);
        let optional = pat.opt_loops.contains(&a);
        let present = g.has_loop(map[a]);
        if present != required && !optional {
            return false;
        }
        for b in 0..pat.k {
            if a == b {
                continue;
            }
            let required = pat.edges.contains(&(a, b));
            let optional = pat.opt_edges.contains(&(a, b));
            let present = g.has_edge(map[a], map[b]);
            if present != required && !optional {
                return false;
            }
        }
    }
    true
}

/// All upward digraphs with loops on `[l]`, `l <= 5`. Bit `t` of the index
/// is edge number `t` in lexicographic order, followed by one bit per loop.
pub fn enumerate_digraphs(l: usize) -> Result<impl Iterator<Item = Digraph> + Clone> {
    if l > 5 {
        return Err(Error::TooLarge(l));
    }
    let pairs: Vec<(usize, usize)> = (1..=l).flat_map(|i| (i + 1..=l).map(move |j| (i, j))).collect();
    let bits = pairs.len() + l;
    Ok((0u64..1 << bits).map(move |code| {
        let mut g = Digraph::new(l);
        for (t, &(i, j)) in pairs.iter().enumerate() {
            if code >> t & 1 == 1 {
                g.edges.insert((i, j));
            }
        }
        for v in 1..=l {
            if code >> (pairs.len() + v - 1) & 1 == 1 {
                g.loops.insert(v);
            }
        }
        g
    }))
}

/// `N_i = {0} + {1 if i has a loop} + {l + 2 - j : (i, j) edge}`.
pub fn n_tuple_of_digraph(g: &Digraph) -> WeightTuple {
    let l = g.order as i64;
    WeightTuple(
        (1..=g.order)
            .map(|i| {
                let mut s = BTreeSet::from([0]);
                if g.has_loop(i) {
                    s.insert(1);
                }
                s.extend(g.edges.iter().filter(|e| e.0 == i).map(|&(_, j)| l + 2 - j as i64));
                s
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsPrediction {
    pub supersolvable: bool,
    /// Exponents of the cone when supersolvable.
    pub exponents: Option<Vec<usize>>,
}

/// Supersolvability of the cone of `B(N)` for a centered nonnegative tuple:
/// with `D` the indices where `|N_i| > 1`, it holds iff `|D| <= 1` or all
/// those `N_i` are one common `{0, a}`. Exponents `{|D| + |N| - 1}` plus the
/// odd numbers `1, 3, ..., 2l - 1`, where `|N|` is the largest `|N_i|`; the
/// extra exponent is 1 when `D` is empty.
pub fn ss_predicted(n: &WeightTuple) -> Result<SsPrediction> {
    let class = classify_tuple(n);
    if !class.centered || !class.nonnegative {
        return Err(Error::WrongTupleClass);
    }
    let d: Vec<&BTreeSet<i64>> = n.sets().iter().filter(|s| s.len() > 1).collect();
    let ss = d.len() <= 1 || (d[0].len() == 2 && d.iter().all(|s| *s == d[0]));
    if !ss {
        return Ok(SsPrediction { supersolvable: false, exponents: None });
    }
    let extra = match d.iter().map(|s| s.len()).max() {
        Some(big) => d.len() + big - 1,
        None => 1,
    };
    let mut e: Vec<usize> = (1..=n.len()).map(|i| 2 * i - 1).collect();
    e.push(extra);
    e.sort_unstable();
    Ok(SsPrediction { supersolvable: true, exponents: Some(e) })
}

/// Exponents `{|E| + |L| + 1}` plus `1, 3, ..., 2l - 1` for a digraph of
/// form A, B or C.
pub fn form_exponents(g: &Digraph) -> Option<Vec<usize>> {
    if digraph_form(g) == DigraphForm::None {
        return None;
    }
    let mut e: Vec<usize> = (1..=g.order).map(|i| 2 * i - 1).collect();
    e.push(g.edges.len() + g.loops.len() + 1);
    e.sort_unstable();
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::parse_digraph;

    fn t(sets: &[&[i64]]) -> WeightTuple {
        WeightTuple::from_slices(sets)
    }

    #[test]
    fn tuple_classes() {
        let c = classify_tuple(&t(&[&[0, 1], &[0, 1]]));
        assert!(c.centered && c.nonnegative && !c.uneven);
        assert_eq!(c.signed_nest, None);
        let c = classify_tuple(&t(&[&[0], &[-1, 0, 1], &[-2, -1, 0, 1, 2]]));
        assert!(c.uneven);
        assert_eq!(c.signed_nest, Some(vec![3, 2, 1]));
        assert_eq!(signed_nest_exponents(&t(&[&[-1, 0, 1], &[0]]), &[1, 2]), vec![1, 3, 3]);
        assert_eq!(nest_type_a(&t(&[&[0], &[0, 3], &[0, 1, 3]])), Some(vec![3, 2, 1]));
        assert_eq!(nest_type_a(&t(&[&[1], &[0, 3]])), None);
    }

    #[test]
    fn bce_on_tower() {
        let m = 2;
        let w = WeightTuple::new(vec![(-m..=m).collect(); 3]);
        let g = WeightedDigraph::new(tower(3, 1), w).unwrap();
        let h = bce(&g, 3).unwrap();
        assert_eq!(h.graph().edges(), &BTreeSet::from([(1, 2)]));
        assert_eq!(h.weights().get(1), &(-3..=3).collect());
        assert_eq!(h.weights().get(2), &(-3..=3).collect());
        assert_eq!(h.weights().get(3), &(-2..=2).collect());
        assert_eq!(bce(&g, 1), Err(Error::NotCoking(1)));
    }

    #[test]
    fn bke_single_edge() {
        let mut d = Digraph::new(2);
        d.add_edge(1, 2).unwrap();
        let g = WeightedDigraph::new(d, t(&[&[0], &[0, 1]])).unwrap();
        let h = bke(&g, 1).unwrap();
        assert!(h.graph().edges().is_empty());
        assert_eq!(h.weights().get(1), &BTreeSet::from([0]));
        assert_eq!(h.weights().get(2), &(-1..=2).collect());
        assert_eq!(bke(&g, 2), Err(Error::NotKing(2)));
        let bad = WeightedDigraph::new(Digraph::new(1), t(&[&[0, 2]])).unwrap();
        assert_eq!(bce(&bad, 1), Err(Error::NonIntervalWeight(1)));
    }

    #[test]
    fn converse_duality() {
        let mut d = Digraph::new(3);
        d.add_edge(1, 2).unwrap();
        d.add_edge(1, 3).unwrap();
        let g = WeightedDigraph::new(d, t(&[&[0, 1], &[-1, 0], &[0]])).unwrap();
        let direct = bke(&g, 1).unwrap();
        let via = bce(&g.converse_negated(), 1).unwrap().converse_negated();
        assert_eq!(direct, via);
        assert_eq!(psi_b(&g).unwrap().len(), psi_b(&g.converse_negated()).unwrap().len());
    }

    #[test]
    fn forms_and_patterns() {
        let g = parse_digraph("l=2 E=(1,2) L=2").unwrap();
        assert_eq!(digraph_form(&g), DigraphForm::None);
        assert!(has_forbidden_induced(&g).is_some());
        let g = parse_digraph("l=3 E=(1,3),(2,3) L=1").unwrap();
        assert_eq!(digraph_form(&g), DigraphForm::None);
        assert!(has_forbidden_induced(&g).is_some());
        let g = parse_digraph("l=3 E=(1,3),(2,3)").unwrap();
        assert_eq!(digraph_form(&g), DigraphForm::B);
        assert_eq!(has_forbidden_induced(&g), None);
        let g = parse_digraph("l=3 E=(1,2),(1,3) L=1").unwrap();
        assert_eq!(digraph_form(&g), DigraphForm::A);
        assert_eq!(form_exponents(&g), Some(vec![1, 3, 4, 5]));
        assert_eq!(digraph_form(&parse_digraph("l=3 L=1,2,3").unwrap()), DigraphForm::C);
    }

    #[test]
    fn predicted_supersolvability() {
        let p = ss_predicted(&t(&[&[0, 2], &[0, 2], &[0]])).unwrap();
        assert!(p.supersolvable);
        assert_eq!(p.exponents, Some(vec![1, 3, 3, 5]));
        assert!(!ss_predicted(&t(&[&[0, 1, 2], &[0, 2], &[0]])).unwrap().supersolvable);
        assert_eq!(ss_predicted(&t(&[&[0], &[0], &[0]])).unwrap().exponents, Some(vec![1, 1, 3, 5]));
        assert_eq!(ss_predicted(&t(&[&[-1, 0]])), Err(Error::WrongTupleClass));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_digraphs(3).unwrap().count(), 64);
        assert_eq!(enumerate_digraphs(4).unwrap().count(), 1024);
        assert!(matches!(enumerate_digraphs(6), Err(Error::TooLarge(6))));
        assert!(enumerate_digraphs(3).unwrap().all(|g| g.is_upward()));
    }

    #[test]
    fn isolated_tail_vertices_are_simplicial() {
        for (l, m, p, k) in [(3, 1, 0, 2), (3, 1, 2, 3), (2, 2, 1, 2)] {
            let g = WeightedDigraph::new(tower(l, k), desc_b_weights(l, m, p, k)).unwrap();
            for n in l - k + 2..=l {
                let sub = g.induced(&(1..=n).collect::<Vec<_>>());
                assert!(sub.graph().is_isolated(n));
                assert!(is_b_simplicial(&sub, n).unwrap(), "l={l} m={m} p={p} k={k} n={n}");
            }
        }
    }

    #[test]
    fn row_walk_reaches_every_column() {
        for l in 1..=3 {
            for p in 0..=l {
                let steps = row_walk(l, 1, p).unwrap();
                assert_eq!(steps.len(), l);
                assert!(steps.iter().all(|s| s.matches_constructor), "l={l} p={p}");
            }
        }
    }
}
