//! Constructors for the arrangement families studied here, and a small text
//! grammar naming them (`descB l=3 m=1 p=3 k=1`, `nishB N=[-1..2];[0..1]`,
//! `deletedI l=3 E=(1,3) L=2`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::arrangement::Arrangement;
use crate::digraph::{Digraph, WeightTuple, WeightedDigraph};
use crate::error::{Error, Result};

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v
}

// x_i + s x_j with 0-based indices.
fn pair(l: usize, i: usize, j: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v[j] = s;
    v
}

fn check(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadParams(msg.into()))
    }
}

fn pairs_upto(l: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..l).flat_map(move |i| (i + 1..l).map(move |j| (i, j)))
}

/// `x_i - x_j = 0` for `1 <= i < j <= l`, in `Q^l`.
pub fn coxeter_a(l: usize) -> Result<Arrangement> {
    check(l >= 1, "l >= 1")?;
    Arrangement::from_pairs(l, pairs_upto(l).map(|(i, j)| (pair(l, i, j, -1), 0)))
}

/// `x_i +- x_j = 0` and `x_i = 0`.
pub fn coxeter_b(l: usize) -> Result<Arrangement> {
    check(l >= 1, "l >= 1")?;
    let mut hs: Vec<(Vec<i64>, i64)> = (0..l).map(|i| (unit(l, i), 0)).collect();
    for (i, j) in pairs_upto(l) {
        hs.push((pair(l, i, j, -1), 0));
        hs.push((pair(l, i, j, 1), 0));
    }
    Arrangement::from_pairs(l, hs)
}

pub fn shi_a(l: usize) -> Result<Arrangement> {
    check(l >= 1, "l >= 1")?;
    Arrangement::from_pairs(
        l,
        pairs_upto(l).flat_map(|(i, j)| [0, 1].map(|b| (pair(l, i, j, -1), b))),
    )
}

/// Cox(A_(l-1)) plus `x_1 - x_j = i` for `1 <= i < j <= l`.
pub fn ish_a(l: usize) -> Result<Arrangement> {
    check(l >= 1, "l >= 1")?;
    let mut hs: Vec<(Vec<i64>, i64)> = pairs_upto(l).map(|(i, j)| (pair(l, i, j, -1), 0)).collect();
    for j in 1..l {
        for i in 1..=j {
            hs.push((pair(l, 0, j, -1), i as i64));
        }
    }
    Arrangement::from_pairs(l, hs)
}

pub fn shi_b(l: usize) -> Result<Arrangement> {
    check(l >= 1, "l >= 1")?;
    let mut hs = Vec::new();
    for i in 0..l {
        hs.push((unit(l, i), 0));
        hs.push((unit(l, i), 1));
    }
    for (i, j) in pairs_upto(l) {
        for s in [-1, 1] {
            for b in [0, 1] {
                hs.push((pair(l, i, j, s), b));
            }
        }
    }
    Arrangement::from_pairs(l, hs)
}

/// `x_i +- x_j = 0` and `x_i = a` for `i - l <= a <= l - i + 1`.
pub fn ish_b(l: usize) -> Result<Arrangement> {
    check(l >= 1, "l >= 1")?;
    let weights = (1..=l)
        .map(|i| (i as i64 - l as i64..=l as i64 - i as i64 + 1).collect())
        .collect();
    n_ish_b(&WeightTuple::new(weights))
}

/// Interpolation between Shi and Ish in type A, `2 <= k <= l`.
pub fn h_interp(l: usize, k: usize) -> Result<Arrangement> {
    check(l >= 2 && (2..=l).contains(&k), "2 <= k <= l")?;
    let mut hs: Vec<(Vec<i64>, i64)> = pairs_upto(l).map(|(i, j)| (pair(l, i, j, -1), 0)).collect();
    for j in 2..=l {
        for i in 1..j.min(k) {
            hs.push((pair(l, 0, j - 1, -1), i as i64));
        }
    }
    for i in k..=l {
        for j in i + 1..=l {
            hs.push((pair(l, i - 1, j - 1, -1), 1));
        }
    }
    Arrangement::from_pairs(l, hs)
}

fn range(lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).collect()
}

/// Vertex weights of the type A descendant.
pub fn desc_a_weights(l: usize, m: usize, p: usize, k: usize) -> WeightTuple {
    let m = m as i64;
    WeightTuple::new(
        (1..=l)
            .map(|i| {
                let c = (l - i + 1).min(k) as i64;
                if i <= p {
                    range(1 - m - c, 0)
                } else {
                    range(-m - c, 0)
                }
            })
            .collect(),
    )
}

/// Type A common descendant of Shi and Ish.
pub fn desc_a(l: usize, m: usize, p: usize, k: usize) -> Result<Arrangement> {
    check(l >= 1 && p <= l && (1..=l).contains(&k), "0 <= p <= l, 1 <= k <= l")?;
    let mut g = Digraph::new(l);
    for (i, j) in pairs_upto(l + 1 - k) {
        g.add_edge(i + 1, j + 1)?;
    }
    psi_a(&WeightedDigraph::new(g, desc_a_weights(l, m, p, k))?)
}

/// Vertex weights `psi^(p,k)` of the type B descendant.
pub fn desc_b_weights(l: usize, m: usize, p: usize, k: usize) -> WeightTuple {
    let m = m as i64;
    WeightTuple::new(
        (1..=l)
            .map(|i| {
                let c = (l - i + 1).min(k) as i64;
                if i <= p {
                    range(2 - m - c, c + m - 1)
                } else {
                    range(1 - m - c, c + m - 1)
                }
            })
            .collect(),
    )
}

/// The digraph `T^k_l` with edges `(i, j)`, `i < j <= l - k + 1`.
pub fn tower(l: usize, k: usize) -> Digraph {
    let mut g = Digraph::new(l);
    for (i, j) in pairs_upto(l + 1 - k) {
        g.add_edge(i + 1, j + 1).expect("valid edge");
    }
    g
}

/// Type B common descendant `B^(p,k)_l(m)` of Shi and Ish, `m >= 1`.
pub fn desc_b(l: usize, m: usize, p: usize, k: usize) -> Result<Arrangement> {
    check(l >= 1 && m >= 1 && p <= l && (1..=l).contains(&k), "m >= 1, 0 <= p <= l, 1 <= k <= l")?;
    psi_b(&WeightedDigraph::new(tower(l, k), desc_b_weights(l, m, p, k))?)
}

fn b_family(l: usize, a: usize, weights: Vec<BTreeSet<i64>>) -> Result<Arrangement> {
    let a = a as i64;
    let mut hs = Vec::new();
    for (i, j) in pairs_upto(l) {
        for s in [-1, 1] {
            for b in 1 - a..=a {
                hs.push((pair(l, i, j, s), b));
            }
        }
    }
    for (i, w) in weights.iter().enumerate() {
        hs.extend(w.iter().map(|&b| (unit(l, i), b)));
    }
    Arrangement::from_pairs(l, hs)
}

/// `x_i +- x_j in [1-a, a]`, `x_i in [1-m, m]` for `i <= p` and `[-m, m]`
/// otherwise.
pub fn b_fam(l: usize, p: usize, m: usize, a: usize) -> Result<Arrangement> {
    check(l >= 1 && p <= l && m >= 1 && a >= 1, "m >= 1, a >= 1, 0 <= p <= l")?;
    let m = m as i64;
    let w = (1..=l).map(|i| if i <= p { range(1 - m, m) } else { range(-m, m) }).collect();
    b_family(l, a, w)
}

/// `x_i +- x_j in [1-a, a]`, `x_i in [-m, m+1]` for `i <= p` and `[-m, m]`
/// otherwise.
pub fn b_hat(l: usize, p: usize, m: usize, a: usize) -> Result<Arrangement> {
    check(l >= 1 && p <= l && a >= 1, "a >= 1, 0 <= p <= l")?;
    let m = m as i64;
    let w = (1..=l).map(|i| if i <= p { range(-m, m + 1) } else { range(-m, m) }).collect();
    b_family(l, a, w)
}

/// Cox(A_(l-1)) plus `x_1 - x_i = a` for `a in N_i`; the tuple lists
/// `N_2, ..., N_l`.
pub fn n_ish_a(n: &WeightTuple) -> Result<Arrangement> {
    let l = n.len() + 1;
    let mut hs: Vec<(Vec<i64>, i64)> = pairs_upto(l).map(|(i, j)| (pair(l, i, j, -1), 0)).collect();
    for (idx, s) in n.sets().iter().enumerate() {
        hs.extend(s.iter().map(|&b| (pair(l, 0, idx + 1, -1), b)));
    }
    Arrangement::from_pairs(l, hs)
}

/// `x_i +- x_j = 0` and `x_i = a` for `a in N_i`.
pub fn n_ish_b(n: &WeightTuple) -> Result<Arrangement> {
    let l = n.len();
    check(l >= 1, "nonempty tuple")?;
    let mut hs = Vec::new();
    for (i, j) in pairs_upto(l) {
        hs.push((pair(l, i, j, -1), 0));
        hs.push((pair(l, i, j, 1), 0));
    }
    for (i, s) in n.sets().iter().enumerate() {
        hs.extend(s.iter().map(|&b| (unit(l, i), b)));
    }
    Arrangement::from_pairs(l, hs)
}

/// Cox(A_(l-1)), `x_i - x_j = 1` per edge and `x_i = psi(i)`.
pub fn psi_a(g: &WeightedDigraph) -> Result<Arrangement> {
    let l = g.order();
    let mut hs: Vec<(Vec<i64>, i64)> = pairs_upto(l).map(|(i, j)| (pair(l, i, j, -1), 0)).collect();
    for &(u, v) in g.graph().edges() {
        hs.push((pair(l, u - 1, v - 1, -1), 1));
    }
    for (i, s) in g.weights().sets().iter().enumerate() {
        hs.extend(s.iter().map(|&b| (unit(l, i), b)));
    }
    Arrangement::from_pairs(l, hs)
}

/// Cox(B_l) plus, for an edge `(u, v)`, `x_u - x_v = 1` and
/// `x_u + x_v = +-1` (sign `+` when `u < v`), plus `x_i = psi(i)`.
pub fn psi_b(g: &WeightedDigraph) -> Result<Arrangement> {
    let l = g.order();
    let mut hs = Vec::new();
    for (i, j) in pairs_upto(l) {
        hs.push((pair(l, i, j, -1), 0));
        hs.push((pair(l, i, j, 1), 0));
    }
    for &(u, v) in g.graph().edges() {
        hs.push((pair(l, u - 1, v - 1, -1), 1));
        hs.push((pair(l, u - 1, v - 1, 1), if u < v { 1 } else { -1 }));
    }
    for (i, s) in g.weights().sets().iter().enumerate() {
        hs.extend(s.iter().map(|&b| (unit(l, i), b)));
    }
    Arrangement::from_pairs(l, hs)
}

/// Cox(B_l), `x_i = 1` per loop and `x_i - x_j = 1` per edge.
pub fn deleted_s(g: &Digraph) -> Result<Arrangement> {
    let l = g.order();
    let mut hs: Vec<(Vec<i64>, i64)> = coxeter_b(l)?.hyperplanes().iter().map(|h| (h.normal().to_vec(), 0)).collect();
    hs.extend(g.loops().iter().map(|&i| (unit(l, i - 1), 1)));
    hs.extend(g.edges().iter().map(|&(i, j)| (pair(l, i - 1, j - 1, -1), 1)));
    Arrangement::from_pairs(l, hs)
}

/// Cox(B_l), `x_i = 1` per loop and `x_i = l + 2 - j` per edge `(i, j)`.
pub fn deleted_i(g: &Digraph) -> Result<Arrangement> {
    let l = g.order();
    let mut hs: Vec<(Vec<i64>, i64)> = coxeter_b(l)?.hyperplanes().iter().map(|h| (h.normal().to_vec(), 0)).collect();
    hs.extend(g.loops().iter().map(|&i| (unit(l, i - 1), 1)));
    hs.extend(g.edges().iter().map(|&(i, j)| (unit(l, i - 1), (l + 2 - j) as i64)));
    Arrangement::from_pairs(l, hs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    CoxA { l: usize },
    CoxB { l: usize },
    ShiA { l: usize },
    IshA { l: usize },
    ShiB { l: usize },
    IshB { l: usize },
    HInterp { l: usize, k: usize },
    DescA { l: usize, m: usize, p: usize, k: usize },
    DescB { l: usize, m: usize, p: usize, k: usize },
    BFam { l: usize, p: usize, m: usize, a: usize },
    BHat { l: usize, p: usize, m: usize, a: usize },
    NIshA { n: WeightTuple },
    NIshB { n: WeightTuple },
    PsiA { g: WeightedDigraph },
    PsiB { g: WeightedDigraph },
    DeletedS { g: Digraph },
    DeletedI { g: Digraph },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Arrangement> {
        match self {
            Self::CoxA { l } => coxeter_a(*l),
            Self::CoxB { l } => coxeter_b(*l),
            Self::ShiA { l } => shi_a(*l),
            Self::IshA { l } => ish_a(*l),
            Self::ShiB { l } => shi_b(*l),
            Self::IshB { l } => ish_b(*l),
            Self::HInterp { l, k } => h_interp(*l, *k),
            Self::DescA { l, m, p, k } => desc_a(*l, *m, *p, *k),
            Self::DescB { l, m, p, k } => desc_b(*l, *m, *p, *k),
            Self::BFam { l, p, m, a } => b_fam(*l, *p, *m, *a),
            Self::BHat { l, p, m, a } => b_hat(*l, *p, *m, *a),
            Self::NIshA { n } => n_ish_a(n),
            Self::NIshB { n } => n_ish_b(n),
            Self::PsiA { g } => psi_a(g),
            Self::PsiB { g } => psi_b(g),
            Self::DeletedS { g } => deleted_s(g),
            Self::DeletedI { g } => deleted_i(g),
        }
    }
}

pub const GRAMMAR: &str = "\
family := name key=value ...
  coxA|coxB|shiA|ishA|shiB|ishB l=L
  hinterp l=L k=K
  descA|descB l=L m=M p=P k=K
  bfam|bhat l=L p=P m=M a=A
  nishA N=SET;SET;...   (N_2 .. N_l)
  nishB N=SET;SET;...   (N_1 .. N_l)
  psiA|psiB l=L E=(i,j),... psi=SET;...
  deletedS|deletedI l=L E=(i,j),... L=i,...
SET := [a..b] | {a,b,...} | SET+SET | SET\\SET";

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, message: format!("{}\n{GRAMMAR}", msg.into()) }
}

fn parse_int<T: FromStr>(s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| parse_err(format!("not an integer: {s:?}")))
}

fn parse_atom(s: &str) -> Result<BTreeSet<i64>> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (a, b) = inner.split_once("..").ok_or_else(|| parse_err(format!("bad interval {s:?}")))?;
        return Ok((parse_int::<i64>(a)?..=parse_int(b)?).collect());
    }
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        return inner.split(',').filter(|x| !x.trim().is_empty()).map(parse_int).collect();
    }
    Err(parse_err(format!("bad set {s:?}")))
}

/// Parse a set expression such as `[-1..2]\{0}+{5}`.
pub fn parse_set(s: &str) -> Result<BTreeSet<i64>> {
    let mut out = BTreeSet::new();
    let mut op = '+';
    let mut start = 0;
    let bytes: Vec<char> = s.chars().collect();
    let mut depth = 0;
    let flush = |piece: &str, op: char, out: &mut BTreeSet<i64>| -> Result<()> {
        let atom = parse_atom(piece)?;
        match op {
            '+' => out.extend(atom),
            _ => out.retain(|x| !atom.contains(x)),
        }
        Ok(())
    };
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            '[' | '{' => depth += 1,
            ']' | '}' => depth -= 1,
            '+' | '\\' if depth == 0 => {
                let piece: String = bytes[start..i].iter().collect();
                flush(&piece, op, &mut out)?;
                op = c;
                start = i + 1;
            }
            _ => {}
        }
    }
    let piece: String = bytes[start..].iter().collect();
    flush(&piece, op, &mut out)?;
    Ok(out)
}

pub fn parse_tuple(s: &str) -> Result<WeightTuple> {
    Ok(WeightTuple::new(s.split(';').map(parse_set).collect::<Result<_>>()?))
}

fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split("),") {
        let p = part.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = p.split_once(',').ok_or_else(|| parse_err(format!("bad edge {part:?}")))?;
        out.push((parse_int(a)?, parse_int(b)?));
    }
    Ok(out)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(parse_int).collect()
}

/// Parse `l=3 E=(1,2),(1,3) L=1`.
pub fn parse_digraph(s: &str) -> Result<Digraph> {
    let kv = key_values(s.split_whitespace())?;
    digraph_from(&kv)
}

fn key_values<'a>(tokens: impl Iterator<Item = &'a str>) -> Result<Vec<(String, String)>> {
    tokens
        .map(|t| {
            t.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| parse_err(format!("expected key=value, found {t:?}")))
        })
        .collect()
}

fn get<'a>(kv: &'a [(String, String)], key: &str) -> Option<&'a str> {
    kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn need<T: FromStr>(kv: &[(String, String)], key: &str) -> Result<T> {
    parse_int(get(kv, key).ok_or_else(|| parse_err(format!("missing {key}=")))?)
}

fn digraph_from(kv: &[(String, String)]) -> Result<Digraph> {
    let l: usize = need(kv, "l")?;
    let mut g = Digraph::new(l);
    for (u, v) in parse_edges(get(kv, "E").unwrap_or(""))? {
        g.add_edge(u, v)?;
    }
    for i in parse_list(get(kv, "L").unwrap_or(""))? {
        g.add_loop(i)?;
    }
    Ok(g)
}

fn weighted_from(kv: &[(String, String)]) -> Result<WeightedDigraph> {
    let g = digraph_from(kv)?;
    let psi = parse_tuple(get(kv, "psi").ok_or_else(|| parse_err("missing psi="))?)?;
    WeightedDigraph::new(g, psi)
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let name = tokens.next().ok_or_else(|| parse_err("empty family"))?;
        let kv = key_values(tokens)?;
        let l = || need::<usize>(&kv, "l");
        let spec = match name {
            "coxA" => Self::CoxA { l: l()? },
            "coxB" => Self::CoxB { l: l()? },
            "shiA" => Self::ShiA { l: l()? },
            "ishA" => Self::IshA { l: l()? },
            "shiB" => Self::ShiB { l: l()? },
            "ishB" => Self::IshB { l: l()? },
            "hinterp" => Self::HInterp { l: l()?, k: need(&kv, "k")? },
            "descA" => Self::DescA { l: l()?, m: need(&kv, "m")?, p: need(&kv, "p")?, k: need(&kv, "k")? },
            "descB" => Self::DescB { l: l()?, m: need(&kv, "m")?, p: need(&kv, "p")?, k: need(&kv, "k")? },
            "bfam" => Self::BFam { l: l()?, p: need(&kv, "p")?, m: need(&kv, "m")?, a: need(&kv, "a")? },
            "bhat" => Self::BHat { l: l()?, p: need(&kv, "p")?, m: need(&kv, "m")?, a: need(&kv, "a")? },
            "nishA" => Self::NIshA { n: parse_tuple(get(&kv, "N").ok_or_else(|| parse_err("missing N="))?)? },
            "nishB" => Self::NIshB { n: parse_tuple(get(&kv, "N").ok_or_else(|| parse_err("missing N="))?)? },
            "psiA" => Self::PsiA { g: weighted_from(&kv)? },
            "psiB" => Self::PsiB { g: weighted_from(&kv)? },
            "deletedS" => Self::DeletedS { g: digraph_from(&kv)? },
            "deletedI" => Self::DeletedI { g: digraph_from(&kv)? },
            other => return Err(parse_err(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CoxA { l } => write!(f, "coxA l={l}"),
            Self::CoxB { l } => write!(f, "coxB l={l}"),
            Self::ShiA { l } => write!(f, "shiA l={l}"),
            Self::IshA { l } => write!(f, "ishA l={l}"),
            Self::ShiB { l } => write!(f, "shiB l={l}"),
            Self::IshB { l } => write!(f, "ishB l={l}"),
            Self::HInterp { l, k } => write!(f, "hinterp l={l} k={k}"),
            Self::DescA { l, m, p, k } => write!(f, "descA l={l} m={m} p={p} k={k}"),
            Self::DescB { l, m, p, k } => write!(f, "descB l={l} m={m} p={p} k={k}"),
            Self::BFam { l, p, m, a } => write!(f, "bfam l={l} p={p} m={m} a={a}"),
            Self::BHat { l, p, m, a } => write!(f, "bhat l={l} p={p} m={m} a={a}"),
            Self::NIshA { n } => write!(f, "nishA N={n}"),
            Self::NIshB { n } => write!(f, "nishB N={n}"),
            Self::PsiA { g } => write!(f, "psiA {g}"),
            Self::PsiB { g } => write!(f, "psiB {g}"),
            Self::DeletedS { g } => write!(f, "deletedS {g}"),
            Self::DeletedI { g } => write!(f, "deletedI {g}"),
        }
    }
}
