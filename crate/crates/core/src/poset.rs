//! Intersection posets, Möbius functions, characteristic polynomials and
//! supersolvability.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::exactgeom::IntEchelon;
pub use crate::poly::IntPolynomial;

/// A nonempty affine subspace, stored as the canonical integer echelon form
/// of its equations `(a | b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    ambient: usize,
    eqs: IntEchelon,
}

impl Flat {
    pub fn ambient(dim: usize) -> Self {
        Self { ambient: dim, eqs: IntEchelon::new(dim + 1) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.eqs.rank()
    }

    pub fn codim(&self) -> usize {
        self.eqs.rank()
    }

    /// Canonical equations, one `(a_1, ..., a_l, b)` row each.
    pub fn equations(&self) -> &[Vec<i128>] {
        self.eqs.rows()
    }

    pub fn is_contained_in(&self, h: &Hyperplane) -> Result<bool> {
        self.eqs.contains(&h.row())
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_flat(&self, other: &Flat) -> Result<bool> {
        for r in self.eqs.rows() {
            if !other.eqs.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection with a hyperplane; `None` when empty.
    pub fn meet(&self, h: &Hyperplane) -> Result<Option<Flat>> {
        self.meet_row(&h.row())
    }

    pub(crate) fn meet_row(&self, row: &[i128]) -> Result<Option<Flat>> {
        let mut eqs = self.eqs.clone();
        match eqs.insert(row)? {
            Some(p) if p == self.ambient => Ok(None),
            _ => Ok(Some(Flat { ambient: self.ambient, eqs })),
        }
    }
}

/// Small bit set over hyperplane indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HSet(Vec<u64>);

impl HSet {
    pub fn with_capacity(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &HSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &HSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    /// `|self \ other|`
    pub fn difference_len(&self, other: &HSet) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &HSet) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a |= b);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

#[derive(Debug, Clone)]
pub struct FlatNode {
    pub flat: Flat,
    pub rank: usize,
    /// Indices of the hyperplanes containing the flat.
    pub hyperplanes: HSet,
    pub mobius: i64,
    /// Flats covering this one (one rank higher, strictly smaller).
    pub up: Vec<usize>,
    pub down: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct PosetLimits {
    pub max_hyperplanes: usize,
    pub max_dim: usize,
}

impl Default for PosetLimits {
    fn default() -> Self {
        Self { max_hyperplanes: 40, max_dim: 6 }
    }
}

/// The semilattice `L(A)` of nonempty intersections, ordered by reverse
/// inclusion. Node 0 is the ambient space.
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    dim: usize,
    n_hyperplanes: usize,
    nodes: Vec<FlatNode>,
    by_rank: Vec<Vec<usize>>,
}

pub fn intersection_poset(a: &Arrangement) -> Result<IntersectionPoset> {
    intersection_poset_with(a, PosetLimits::default())
}

pub fn intersection_poset_with(a: &Arrangement, limits: PosetLimits) -> Result<IntersectionPoset> {
    if a.len() > limits.max_hyperplanes || a.dim() > limits.max_dim {
        return Err(Error::LimitExceeded(format!(
            "{} hyperplanes in dimension {} (limits {} and {})",
            a.len(),
            a.dim(),
            limits.max_hyperplanes,
            limits.max_dim
        )));
    }
    let n = a.len();
    let rows: Vec<Vec<i128>> = a.hyperplanes().iter().map(Hyperplane::row).collect();
    let mut nodes = vec![FlatNode {
        flat: Flat::ambient(a.dim()),
        rank: 0,
        hyperplanes: HSet::with_capacity(n),
        mobius: 1,
        up: Vec::new(),
        down: Vec::new(),
    }];
    let mut index: HashMap<Flat, usize> = HashMap::new();
    index.insert(nodes[0].flat.clone(), 0);
    let mut by_rank = vec![vec![0]];
    loop {
        let level = by_rank.last().unwrap().clone();
        let mut next = Vec::new();
        for x in level {
            let mut covered = nodes[x].hyperplanes.clone();
            for (hi, row) in rows.iter().enumerate() {
                if covered.contains(hi) {
                    continue;
                }
                let Some(y) = nodes[x].flat.meet_row(row)? else {
                    continue;
                };
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        let mut hs = HSet::with_capacity(n);
                        for (hj, r) in rows.iter().enumerate() {
                            if y.eqs.contains(r)? {
                                hs.insert(hj);
                            }
                        }
                        let id = nodes.len();
                        index.insert(y.clone(), id);
                        nodes.push(FlatNode {
                            flat: y,
                            rank: by_rank.len(),
                            hyperplanes: hs,
                            mobius: 0,
                            up: Vec::new(),
                            down: Vec::new(),
                        });
                        next.push(id);
                        id
                    }
                };
                let ys = nodes[id].hyperplanes.clone();
                covered.union_with(&ys);
                nodes[x].up.push(id);
                nodes[id].down.push(x);
            }
        }
        if next.is_empty() {
            break;
        }
        by_rank.push(next);
    }
    // mu(X) = -sum of mu(Y) over Y strictly below X, walking the down-set.
    let mut stamp = vec![usize::MAX; nodes.len()];
    let mut stack = Vec::new();
    for x in 1..nodes.len() {
        let mut sum = 0i64;
        stack.extend(nodes[x].down.iter().copied());
        while let Some(y) = stack.pop() {
            if stamp[y] == x {
                continue;
            }
            stamp[y] = x;
            sum += nodes[y].mobius;
            stack.extend(nodes[y].down.iter().copied());
        }
        nodes[x].mobius = -sum;
    }
    Ok(IntersectionPoset { dim: a.dim(), n_hyperplanes: n, nodes, by_rank })
}

impl IntersectionPoset {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_hyperplanes(&self) -> usize {
        self.n_hyperplanes
    }

    pub fn nodes(&self) -> &[FlatNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &FlatNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn flats_of_rank(&self, r: usize) -> &[usize] {
        self.by_rank.get(r).map_or(&[], Vec::as_slice)
    }

    pub fn find(&self, f: &Flat) -> Option<usize> {
        self.by_rank
            .get(f.codim())?
            .iter()
            .copied()
            .find(|&i| &self.nodes[i].flat == f)
    }

    /// All flats `Y <= X`, that is `Y` containing `X`, including `X`.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            if std::mem::replace(&mut seen[y], true) {
                continue;
            }
            out.push(y);
            stack.extend(self.nodes[y].down.iter().copied());
        }
        out.sort_unstable();
        out
    }

    pub fn charpoly(&self) -> IntPolynomial {
        self.sum_over(0..self.nodes.len())
    }

    /// Characteristic polynomial of the localization `A_X`, read off the
    /// interval below `X`.
    pub fn local_charpoly(&self, x: usize) -> IntPolynomial {
        self.sum_over(self.down_set(x))
    }

    fn sum_over(&self, ids: impl IntoIterator<Item = usize>) -> IntPolynomial {
        let mut c = vec![0i64; self.dim + 1];
        for i in ids {
            c[self.nodes[i].flat.dim()] += self.nodes[i].mobius;
        }
        IntPolynomial::from_i64(&c)
    }

    /// Unique maximal flat of a central arrangement.
    pub fn top(&self) -> usize {
        self.by_rank.last().unwrap()[0]
    }

    /// Search for a chain of modular coatoms below `x`. Coatoms are tried by
    /// decreasing `|A_Y|` and results are memoized per flat.
    pub fn modular_chain_below(&self, x: usize) -> Option<Vec<usize>> {
        let rank2: Vec<usize> = self.flats_of_rank(2).to_vec();
        let mut memo: HashMap<usize, Option<usize>> = HashMap::new();
        if !self.ss_rec(x, &rank2, &mut memo) {
            return None;
        }
        let mut chain = vec![x];
        let mut cur = x;
        while let Some(Some(y)) = memo.get(&cur) {
            chain.push(*y);
            cur = *y;
        }
        chain.reverse();
        Some(chain)
    }

    fn ss_rec(&self, x: usize, rank2: &[usize], memo: &mut HashMap<usize, Option<usize>>) -> bool {
        if let Some(r) = memo.get(&x) {
            return r.is_some() || self.nodes[x].rank == 0;
        }
        let node = &self.nodes[x];
        if node.rank == 0 {
            memo.insert(x, None);
            return true;
        }
        let mut coatoms = node.down.clone();
        coatoms.sort_by_key(|&y| (std::cmp::Reverse(self.nodes[y].hyperplanes.len()), y));
        coatoms.dedup();
        let below: Vec<usize> = rank2
            .iter()
            .copied()
            .filter(|&z| self.nodes[z].hyperplanes.is_subset(&node.hyperplanes))
            .collect();
        for y in coatoms {
            if self.is_modular_in(y, &below) && self.ss_rec(y, rank2, memo) {
                memo.insert(x, Some(y));
                return true;
            }
        }
        memo.insert(x, None);
        false
    }

    // Every pair of hyperplanes outside A_Y meets in a rank-2 flat Z; some
    // hyperplane of A_Y must contain Z.
    fn is_modular_in(&self, y: usize, rank2_below: &[usize]) -> bool {
        let ay = &self.nodes[y].hyperplanes;
        rank2_below.iter().all(|&z| {
            let az = &self.nodes[z].hyperplanes;
            az.difference_len(ay) < 2 || az.intersects(ay)
        })
    }
}

pub fn charpoly(a: &Arrangement) -> Result<IntPolynomial> {
    Ok(intersection_poset(a)?.charpoly())
}

/// Chain of subarrangements `A_0 = {} < A_1 < ... < A_r = A`, each a
/// modular coatom of the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MChain {
    pub layers: Vec<Arrangement>,
}

impl MChain {
    pub fn rank(&self) -> usize {
        self.layers.len() - 1
    }

    /// `|A_i \ A_{i-1}|` for `i = 1..r`.
    pub fn steps(&self) -> Vec<usize> {
        self.layers.windows(2).map(|w| w[1].len() - w[0].len()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Supersolvability {
    Chain(MChain),
    NotSupersolvable,
}

impl Supersolvability {
    pub fn is_supersolvable(&self) -> bool {
        matches!(self, Self::Chain(_))
    }

    pub fn chain(&self) -> Option<&MChain> {
        match self {
            Self::Chain(c) => Some(c),
            Self::NotSupersolvable => None,
        }
    }
}

pub fn supersolvable(a: &Arrangement) -> Result<Supersolvability> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    let p = intersection_poset(a)?;
    Ok(supersolvable_in(a, &p))
}

pub fn supersolvable_in(a: &Arrangement, p: &IntersectionPoset) -> Supersolvability {
    match p.modular_chain_below(p.top()) {
        Some(chain) => Supersolvability::Chain(MChain {
            layers: chain.iter().map(|&x| a.select(p.node(x).hyperplanes.iter())).collect(),
        }),
        None => Supersolvability::NotSupersolvable,
    }
}

/// `{0^(l-r)} + {|A_i \ A_(i-1)|}`, sorted.
pub fn ss_exponents(chain: &MChain, ambient: usize) -> Vec<usize> {
    let mut e = vec![0; ambient - chain.rank()];
    e.extend(chain.steps());
    e.sort_unstable();
    e
}

/// Whether `b` is a modular coatom of the central arrangement `a`, checked
/// directly on pairs of hyperplanes of `a \ b`.
pub fn is_modular_coatom(a: &Arrangement, b: &Arrangement) -> Result<bool> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    if !b.is_subarrangement_of(a) {
        return Err(Error::NotSubarrangement);
    }
    if a.rank()? != b.rank()? + 1 {
        return Ok(false);
    }
    let outside: Vec<&Hyperplane> = a.hyperplanes().iter().filter(|h| !b.contains(h)).collect();
    let v = Flat::ambient(a.dim());
    for (i, h) in outside.iter().enumerate() {
        let fh = v.meet(h)?.expect("central");
        for k in &outside[i + 1..] {
            let z = fh.meet(k)?.expect("central");
            let mut found = false;
            for g in b.hyperplanes() {
                if z.is_contained_in(g)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cox_b2() -> Arrangement {
        Arrangement::from_pairs(2, [(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, 1], 0), (vec![1, -1], 0)]).unwrap()
    }

    #[test]
    fn cox_b2_poset() {
        let p = intersection_poset(&cox_b2()).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.node(p.top()).mobius, 3);
        assert_eq!(p.charpoly(), IntPolynomial::from_roots(&[1, 3]));
    }

    #[test]
    fn affine_poset_with_parallels() {
        // x = 0, x = 1, y = 0 in the plane: chi = (t - 2)(t - 1).
        let a = Arrangement::from_pairs(2, [(vec![1, 0], 0), (vec![1, 0], 1), (vec![0, 1], 0)]).unwrap();
        assert_eq!(charpoly(&a).unwrap(), IntPolynomial::from_roots(&[1, 2]));
    }

    #[test]
    fn limit_is_enforced() {
        let a = Arrangement::from_pairs(1, (0..41).map(|b| (vec![1], b))).unwrap();
        assert!(matches!(intersection_poset(&a), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn supersolvable_rank_two() {
        let a = cox_b2();
        let s = supersolvable(&a).unwrap();
        let chain = s.chain().unwrap();
        assert_eq!(chain.rank(), 2);
        assert_eq!(ss_exponents(chain, 2), vec![1, 3]);
        for w in chain.layers.windows(2) {
            assert!(is_modular_coatom(&w[1], &w[0]).unwrap());
        }
    }

    #[test]
    fn modular_coatom_errors() {
        let a = cox_b2();
        let affine = Arrangement::from_pairs(2, [(vec![1, 0], 1)]).unwrap();
        assert_eq!(is_modular_coatom(&affine, &affine), Err(Error::NotCentral));
        let other = Arrangement::from_pairs(2, [(vec![1, 2], 0)]).unwrap();
        assert_eq!(is_modular_coatom(&a, &other), Err(Error::NotSubarrangement));
        assert_eq!(supersolvable(&affine), Err(Error::NotCentral));
    }
}
