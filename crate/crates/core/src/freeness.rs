//! Freeness certificates for central arrangements.
//!
//! There is no general decision procedure for freeness, so
//! [`free_certify`] answers with a three-valued [`FreeStatus`]. A `Free`
//! answer carries a proof tree and a `NonFree` answer a witness; both can be
//! re-checked from scratch with [`replay`].

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::exactgeom::{unimodular_parametrization, RationalMatrix};
use crate::poly::IntPolynomial;
use crate::poset::{charpoly, intersection_poset, is_modular_coatom, ss_exponents, supersolvable_in, Flat, IntersectionPoset};

/// A central arrangement with a nonnegative multiplicity on each hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiarrangement {
    arrangement: Arrangement,
    multiplicity: Vec<usize>,
}

impl Multiarrangement {
    pub fn new(arrangement: Arrangement, multiplicity: Vec<usize>) -> Result<Self> {
        if !arrangement.is_central() {
            return Err(Error::NotCentral);
        }
        if multiplicity.len() != arrangement.len() {
            return Err(Error::BadParams(format!(
                "{} multiplicities for {} hyperplanes",
                multiplicity.len(),
                arrangement.len()
            )));
        }
        Ok(Self { arrangement, multiplicity })
    }

    pub fn simple(arrangement: Arrangement) -> Result<Self> {
        let n = arrangement.len();
        Self::new(arrangement, vec![1; n])
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicity
    }

    /// `|m|`, the degree of the defining polynomial.
    pub fn order(&self) -> usize {
        self.multiplicity.iter().sum()
    }
}

/// Restriction of `a` to `h` where each restricted hyperplane `X` counts the
/// hyperplanes of `a`, other than `h`, that cut out `X`.
pub fn ziegler_restriction(a: &Arrangement, h: &Hyperplane) -> Result<Multiarrangement> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    let r = a.restrict_with_map(h)?;
    let mut mult = vec![0; r.arrangement.len()];
    for &i in r.images.iter().flatten() {
        mult[i] += 1;
    }
    Multiarrangement::new(r.arrangement, mult)
}

/// Exponents `d1 <= d2` of a multiarrangement of rank at most 2.
///
/// Searches degree by degree for a nonzero derivation `f1 d/dx + f2 d/dy`
/// with `alpha^m(alpha) | f1 a + f2 b` for every line `alpha = a x + b y`;
/// the first degree with a nonzero solution is `d1` and `d2 = |m| - d1`.
pub fn multi_exponents_rank2(ma: &Multiarrangement) -> Result<(usize, usize)> {
    let keep: Vec<usize> = (0..ma.arrangement.len()).filter(|&i| ma.multiplicity[i] > 0).collect();
    let sub = ma.arrangement.select(keep.iter().copied());
    let mult: Vec<usize> = keep.iter().map(|&i| ma.multiplicity[i]).collect();
    let (ess, u) = sub.essentialize()?;
    let r = ess.dim();
    if r > 2 {
        return Err(Error::RankTooHigh(r));
    }
    let mut lines: Vec<([i64; 2], usize)> = Vec::new();
    for (h, &m) in sub.hyperplanes().iter().zip(&mult) {
        let mut a = [0i64; 2];
        for (k, col) in u[..r].iter().enumerate() {
            a[k] = h.normal().iter().zip(col).map(|(x, y)| x * y).sum();
        }
        // Essentialization is injective on hyperplanes, so these stay distinct.
        let canon = Hyperplane::new(a[..r].to_vec(), 0)?;
        let mut a = [0i64; 2];
        a[..r].copy_from_slice(canon.normal());
        lines.push((a, m));
    }
    let total: usize = mult.iter().sum();
    for d in 0..=total {
        if graded_kernel_dim(&lines, d)? > 0 {
            return Ok((d, total - d));
        }
    }
    unreachable!("Q(A, m) d/dx is a derivation of degree |m|")
}

// Dimension of the space of degree-d derivations of the multiarrangement.
fn graded_kernel_dim(lines: &[([i64; 2], usize)], d: usize) -> Result<usize> {
    let n = 2 * (d + 1);
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for &(alpha, m) in lines {
        // Coordinates (s, u) with alpha(x, y) = s.
        let param = unimodular_parametrization(&alpha, 1)?;
        let (p, r) = (param.base[0], param.base[1]);
        let (q, w) = (param.basis[0][0], param.basis[0][1]);
        // x^e y^(d-e) expanded in s, indexed by the power of s.
        let table: Vec<Vec<BigInt>> = (0..=d)
            .map(|e| {
                let mut acc = vec![BigInt::from(1)];
                for _ in 0..e {
                    acc = mul_linear(&acc, p, q);
                }
                for _ in e..d {
                    acc = mul_linear(&acc, r, w);
                }
                acc
            })
            .collect();
        for j in 0..m.min(d + 1) {
            let mut row = Vec::with_capacity(n);
            for coef in alpha {
                for t in &table {
                    row.push(BigRational::from_integer(&t[j] * coef));
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(n);
    }
    Ok(n - RationalMatrix::from_rows(&rows).rank())
}

// Multiply a polynomial in s (ascending) by (a s + b).
fn mul_linear(p: &[BigInt], a: i64, b: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c * b;
        out[i + 1] += c * a;
    }
    out
}

/// One node of a freeness proof tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Certificate {
    /// Every central arrangement of rank at most 2 is free.
    LowRank { rank: usize },
    /// An M-chain, as hyperplane indices of each layer `A_1 < ... < A_r`.
    Supersolvable { layers: Vec<Vec<usize>> },
    /// Rank-3 criterion: `chi = (t-1)(t-d2)(t-d3)` where `{d2, d3}` are the
    /// exponents of the multirestriction to the first hyperplane of the
    /// essentialization.
    Rank3 { restricted_to: Hyperplane, multi_exponents: [usize; 2] },
    /// The restriction to `hyperplane` is free and its characteristic
    /// polynomial divides ours.
    Division { hyperplane: Hyperplane, restriction: Box<Certificate> },
    /// Adding `added` gives a free arrangement whose restriction to `added`
    /// is free with all but one of its exponents.
    Deletion { added: Hyperplane, extended: Box<Certificate>, restriction: Box<Certificate> },
}

/// Evidence that an arrangement is not free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `chi` is not a product of linear factors `t - d` over the integers.
    NonSplitting { charpoly: IntPolynomial },
    /// Rank-3 criterion fails; `charpoly` is that of the essentialization.
    Rank3 { charpoly: IntPolynomial, multi_exponents: [usize; 2] },
    /// A localization `A_X` is not free. `hyperplanes` indexes `A_X`.
    Localization { hyperplanes: Vec<usize>, witness: Box<Witness> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FreeStatus {
    Free { exponents: Vec<usize>, certificate: Certificate },
    NonFree { witness: Witness },
    Unknown { reason: String },
}

impl FreeStatus {
    pub fn is_free(&self) -> bool {
        matches!(self, Self::Free { .. })
    }

    pub fn is_non_free(&self) -> bool {
        matches!(self, Self::NonFree { .. })
    }

    pub fn exponents(&self) -> Option<&[usize]> {
        match self {
            Self::Free { exponents, .. } => Some(exponents),
            _ => None,
        }
    }
}

/// Switches for the individual rules, mainly so tests can cross-check them.
/// Low rank and the splitting test are always on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleOptions {
    pub supersolvable: bool,
    pub rank3: bool,
    pub localization: bool,
    pub division: bool,
    pub deletion: bool,
    /// Budget for nested deletion steps.
    pub depth: usize,
    /// Translates tried per deletion step.
    pub deletion_candidates: usize,
}

impl Default for RuleOptions {
    fn default() -> Self {
        Self {
            supersolvable: true,
            rank3: true,
            localization: true,
            division: true,
            deletion: true,
            depth: 3,
            deletion_candidates: 8,
        }
    }
}

pub fn free_certify(a: &Arrangement) -> Result<FreeStatus> {
    Certifier::new(RuleOptions::default()).certify(a)
}

pub fn free_certify_with(a: &Arrangement, opts: RuleOptions) -> Result<FreeStatus> {
    Certifier::new(opts).certify(a)
}

/// The rank-3 criterion on its own.
pub fn free_rank3(a: &Arrangement) -> Result<FreeStatus> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    let r = a.rank()?;
    if r != 3 {
        return Err(Error::WrongRank { expected: 3, found: r });
    }
    Ok(match rank3_check(a)? {
        Ok((exponents, h, me)) => FreeStatus::Free {
            exponents,
            certificate: Certificate::Rank3 { restricted_to: h, multi_exponents: me },
        },
        Err(witness) => FreeStatus::NonFree { witness },
    })
}

type Rank3Outcome = std::result::Result<(Vec<usize>, Hyperplane, [usize; 2]), Witness>;

fn rank3_check(a: &Arrangement) -> Result<Rank3Outcome> {
    let (e, _) = a.essentialize()?;
    let chi = charpoly(&e)?;
    let h = e.hyperplanes()[0].clone();
    let (d2, d3) = multi_exponents_rank2(&ziegler_restriction(&e, &h)?)?;
    let me = [d2, d3];
    if chi != IntPolynomial::from_roots(&[1, d2 as i64, d3 as i64]) {
        return Ok(Err(Witness::Rank3 { charpoly: chi, multi_exponents: me }));
    }
    let mut exps = vec![0; a.dim() - 3];
    exps.extend([1, d2, d3]);
    exps.sort_unstable();
    Ok(Ok((exps, h, me)))
}

fn low_rank_exponents(dim: usize, rank: usize, n: usize) -> Vec<usize> {
    let mut e = vec![0; dim - rank];
    match rank {
        0 => {}
        1 => e.push(1),
        _ => e.extend([1, n - 1]),
    }
    e
}

/// Roots of `chi` when it splits as `prod (t - d)` with integers `d >= 0`.
pub fn exponents_from_charpoly(chi: &IntPolynomial) -> Option<Vec<usize>> {
    chi.integer_roots()?.into_iter().map(|r| usize::try_from(r).ok()).collect()
}

/// Memoizing rule engine behind [`free_certify`].
pub struct Certifier {
    opts: RuleOptions,
    memo: HashMap<(Arrangement, usize), FreeStatus>,
}

impl Certifier {
    pub fn new(opts: RuleOptions) -> Self {
        Self { opts, memo: HashMap::new() }
    }

    pub fn certify(&mut self, a: &Arrangement) -> Result<FreeStatus> {
        if !a.is_central() {
            return Err(Error::NotCentral);
        }
        self.certify_at(a, self.opts.depth)
    }

    fn certify_at(&mut self, a: &Arrangement, depth: usize) -> Result<FreeStatus> {
        let key = (a.clone(), depth);
        if let Some(s) = self.memo.get(&key) {
            return Ok(s.clone());
        }
        let s = self.decide(a, depth)?;
        self.memo.insert(key, s.clone());
        Ok(s)
    }

    fn decide(&mut self, a: &Arrangement, depth: usize) -> Result<FreeStatus> {
        let r = a.rank()?;
        if r <= 2 {
            return Ok(FreeStatus::Free {
                exponents: low_rank_exponents(a.dim(), r, a.len()),
                certificate: Certificate::LowRank { rank: r },
            });
        }
        let p = intersection_poset(a)?;
        if self.opts.supersolvable {
            if let Some(chain) = supersolvable_in(a, &p).chain() {
                let layers = chain.layers[1..]
                    .iter()
                    .map(|l| l.hyperplanes().iter().map(|h| a.index_of(h).unwrap()).collect())
                    .collect();
                return Ok(FreeStatus::Free {
                    exponents: ss_exponents(chain, a.dim()),
                    certificate: Certificate::Supersolvable { layers },
                });
            }
        }
        if r == 3 && self.opts.rank3 {
            return free_rank3(a);
        }
        let chi = p.charpoly();
        let Some(exponents) = exponents_from_charpoly(&chi) else {
            return Ok(FreeStatus::NonFree { witness: Witness::NonSplitting { charpoly: chi } });
        };
        if self.opts.localization {
            if let Some(witness) = self.localization_witness(a, &p)? {
                return Ok(FreeStatus::NonFree { witness });
            }
        }
        if self.opts.division {
            for h in a.hyperplanes() {
                let res = a.restrict(h)?;
                if !charpoly(&res)?.divides(&chi) {
                    continue;
                }
                if let FreeStatus::Free { certificate, .. } = self.certify_at(&res, depth)? {
                    return Ok(FreeStatus::Free {
                        exponents,
                        certificate: Certificate::Division { hyperplane: h.clone(), restriction: Box::new(certificate) },
                    });
                }
            }
        }
        if self.opts.deletion && depth > 0 && a.cone_tag().is_some() {
            if let Some(s) = self.try_deletion(a, &exponents, depth)? {
                return Ok(s);
            }
        }
        Ok(FreeStatus::Unknown { reason: format!("no rule applies within depth {}", self.opts.depth) })
    }

    // Freeness passes to localizations, so a non-free A_X refutes A. Only
    // proper flats of rank at least 3 can fail.
    fn localization_witness(&mut self, a: &Arrangement, p: &IntersectionPoset) -> Result<Option<Witness>> {
        let top = p.rank();
        let mut rank3 = Vec::new();
        for k in 3..top {
            for &x in p.flats_of_rank(k) {
                let node = p.node(x);
                let local = p.local_charpoly(x);
                let hyperplanes: Vec<usize> = node.hyperplanes.iter().collect();
                if exponents_from_charpoly(&local).is_none() {
                    let witness = Box::new(Witness::NonSplitting { charpoly: local });
                    return Ok(Some(Witness::Localization { hyperplanes, witness }));
                }
                if k == 3 {
                    rank3.push(hyperplanes);
                }
            }
        }
        if !self.opts.rank3 {
            return Ok(None);
        }
        let mut seen = HashSet::new();
        for hyperplanes in rank3 {
            let sub = a.select(hyperplanes.iter().copied());
            let (ess, _) = sub.essentialize()?;
            if !seen.insert(ess) {
                continue;
            }
            if let Err(w) = rank3_check(&sub)? {
                return Ok(Some(Witness::Localization { hyperplanes, witness: Box::new(w) }));
            }
        }
        Ok(None)
    }

    // Translates c.x = (b +- 1) z of existing hyperplanes c.x = b z.
    fn deletion_candidates(&self, a: &Arrangement) -> Result<Vec<Hyperplane>> {
        let z = a.dim() - 1;
        let mut out = Vec::new();
        for h in a.hyperplanes() {
            let n = h.normal();
            if n[..z].iter().all(|&c| c == 0) {
                continue;
            }
            for delta in [-1, 1] {
                let mut v = n.to_vec();
                v[z] += delta;
                let cand = Hyperplane::new(v, 0)?;
                if !a.contains(&cand) && !out.contains(&cand) {
                    out.push(cand);
                }
            }
            if out.len() >= self.opts.deletion_candidates {
                break;
            }
        }
        out.truncate(self.opts.deletion_candidates);
        Ok(out)
    }

    fn try_deletion(&mut self, a: &Arrangement, exponents: &[usize], depth: usize) -> Result<Option<FreeStatus>> {
        for h in self.deletion_candidates(a)? {
            let b = a.insert(h.clone())?;
            let FreeStatus::Free { exponents: eb, certificate: cb } = self.certify_at(&b, depth - 1)? else {
                continue;
            };
            let res = b.restrict(&h)?;
            let FreeStatus::Free { exponents: er, certificate: cr } = self.certify_at(&res, depth - 1)? else {
                continue;
            };
            let Some(mut e) = deletion_exponents(&eb, &er) else {
                continue;
            };
            e.sort_unstable();
            debug_assert_eq!(e, exponents);
            return Ok(Some(FreeStatus::Free {
                exponents: e,
                certificate: Certificate::Deletion {
                    added: h,
                    extended: Box::new(cb),
                    restriction: Box::new(cr),
                },
            }));
        }
        Ok(None)
    }
}

// exp(B) = exp(B^H) + {d} with d >= 1 gives exp(B \ H) = exp(B^H) + {d - 1}.
fn deletion_exponents(eb: &[usize], er: &[usize]) -> Option<Vec<usize>> {
    let mut rest = eb.to_vec();
    for d in er {
        let i = rest.iter().position(|x| x == d)?;
        rest.remove(i);
    }
    match rest.as_slice() {
        [d] if *d >= 1 => {
            let mut e = er.to_vec();
            e.push(d - 1);
            Some(e)
        }
        _ => None,
    }
}

/// Re-check a status from scratch. `Unknown` is trivially consistent.
pub fn replay(a: &Arrangement, status: &FreeStatus) -> Result<bool> {
    match status {
        FreeStatus::Free { exponents, certificate } => {
            let Some(e) = replay_certificate(a, certificate)? else {
                return Ok(false);
            };
            let roots: Vec<i64> = exponents.iter().map(|&d| d as i64).collect();
            Ok(&e == exponents
                && exponents.iter().sum::<usize>() == a.len()
                && charpoly(a)? == IntPolynomial::from_roots(&roots))
        }
        FreeStatus::NonFree { witness } => check_witness(a, witness),
        FreeStatus::Unknown { .. } => Ok(true),
    }
}

/// Exponents proved by a certificate, or `None` if it does not check out.
pub fn replay_certificate(a: &Arrangement, cert: &Certificate) -> Result<Option<Vec<usize>>> {
    if !a.is_central() {
        return Err(Error::NotCentral);
    }
    Ok(match cert {
        Certificate::LowRank { rank } => {
            let r = a.rank()?;
            (r == *rank && r <= 2).then(|| low_rank_exponents(a.dim(), r, a.len()))
        }
        Certificate::Supersolvable { layers } => {
            if layers.iter().flatten().any(|&i| i >= a.len()) {
                return Ok(None);
            }
            let arrs: Vec<Arrangement> = layers.iter().map(|l| a.select(l.iter().copied())).collect();
            let Some(first) = arrs.first() else {
                return Ok(None);
            };
            if arrs.last() != Some(a) || first.rank()? != 1 {
                return Ok(None);
            }
            for w in arrs.windows(2) {
                if !w[0].is_subarrangement_of(&w[1]) || !is_modular_coatom(&w[1], &w[0])? {
                    return Ok(None);
                }
            }
            let mut e = vec![0; a.dim() - arrs.len()];
            e.push(first.len());
            e.extend(arrs.windows(2).map(|w| w[1].len() - w[0].len()));
            e.sort_unstable();
            Some(e)
        }
        Certificate::Rank3 { restricted_to, multi_exponents } => {
            if a.rank()? != 3 {
                return Ok(None);
            }
            match rank3_check(a)? {
                Ok((e, h, me)) if &h == restricted_to && &me == multi_exponents => Some(e),
                _ => None,
            }
        }
        Certificate::Division { hyperplane, restriction } => {
            if !a.contains(hyperplane) {
                return Ok(None);
            }
            let res = a.restrict(hyperplane)?;
            if replay_certificate(&res, restriction)?.is_none() {
                return Ok(None);
            }
            let chi = charpoly(a)?;
            if !charpoly(&res)?.divides(&chi) {
                return Ok(None);
            }
            exponents_from_charpoly(&chi)
        }
        Certificate::Deletion { added, extended, restriction } => {
            if a.contains(added) || added.dim() != a.dim() || !added.is_linear() {
                return Ok(None);
            }
            let b = a.insert(added.clone())?;
            let (Some(eb), Some(er)) = (replay_certificate(&b, extended)?, replay_certificate(&b.restrict(added)?, restriction)?)
            else {
                return Ok(None);
            };
            deletion_exponents(&eb, &er).map(|mut e| {
                e.sort_unstable();
                e
            })
        }
    })
}

fn check_witness(a: &Arrangement, w: &Witness) -> Result<bool> {
    Ok(match w {
        Witness::NonSplitting { charpoly: chi } => {
            exponents_from_charpoly(chi).is_none() && &charpoly(a)? == chi
        }
        Witness::Rank3 { .. } => a.rank()? == 3 && rank3_check(a)?.err().as_ref() == Some(w),
        Witness::Localization { hyperplanes, witness } => {
            if hyperplanes.is_empty() || hyperplanes.iter().any(|&i| i >= a.len()) {
                return Ok(false);
            }
            let sub = a.select(hyperplanes.iter().copied());
            let mut x = Flat::ambient(a.dim());
            for h in sub.hyperplanes() {
                x = x.meet(h)?.expect("central");
            }
            let mut closed = Vec::new();
            for (i, h) in a.hyperplanes().iter().enumerate() {
                if x.is_contained_in(h)? {
                    closed.push(i);
                }
            }
            let mut given = hyperplanes.clone();
            given.sort_unstable();
            closed == given && check_witness(&sub, witness)?
        }
    })
}

/// One flat of a flag together with the exponents of the restriction to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagStep {
    pub dim: usize,
    /// Hyperplanes of the original arrangement containing the flat.
    pub hyperplanes: Vec<usize>,
    pub exponents: Vec<usize>,
}

/// Flats `X_1 < X_2 < ... < X_l = V` ordered by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagCertificate {
    pub steps: Vec<FlagStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FlagStatus {
    Flag(FlagCertificate),
    Unknown { reason: String },
}

pub fn flag_accurate_certify(a: &Arrangement) -> Result<FlagStatus> {
    flag_accurate_certify_with(a, RuleOptions::default())
}

/// Depth-first search for a flag whose restrictions are certified free with
/// the prefixes of the sorted exponents. Restrictions are taken
/// successively, one hyperplane at a time.
pub fn flag_accurate_certify_with(a: &Arrangement, opts: RuleOptions) -> Result<FlagStatus> {
    let mut cert = Certifier::new(opts);
    let FreeStatus::Free { exponents, .. } = cert.certify(a)? else {
        return Ok(FlagStatus::Unknown { reason: "arrangement is not certified free".into() });
    };
    let index: Vec<Option<usize>> = (0..a.len()).map(Some).collect();
    let mut search = FlagSearch { cert, exponents, failed: HashSet::new(), steps: Vec::new() };
    search.steps.push(FlagStep { dim: a.dim(), hyperplanes: Vec::new(), exponents: search.exponents.clone() });
    if search.descend(a, &index)? {
        let mut steps = search.steps;
        steps.reverse();
        Ok(FlagStatus::Flag(FlagCertificate { steps }))
    } else {
        Ok(FlagStatus::Unknown { reason: "no flag found with the available certificates".into() })
    }
}

struct FlagSearch {
    cert: Certifier,
    exponents: Vec<usize>,
    failed: HashSet<Arrangement>,
    steps: Vec<FlagStep>,
}

impl FlagSearch {
    // `index[i]` is the position of original hyperplane i in `b`, or `None`
    // when it contains the current flat.
    fn descend(&mut self, b: &Arrangement, index: &[Option<usize>]) -> Result<bool> {
        let i = b.dim();
        if i <= 1 {
            return Ok(true);
        }
        if self.failed.contains(b) {
            return Ok(false);
        }
        let target = self.exponents[..i - 1].to_vec();
        let roots: Vec<i64> = target.iter().map(|&d| d as i64).collect();
        let want = IntPolynomial::from_roots(&roots);
        for j in 0..b.len() {
            let r = b.restrict_with_map(&b.hyperplanes()[j])?;
            if charpoly(&r.arrangement)? != want {
                continue;
            }
            match self.cert.certify(&r.arrangement)? {
                FreeStatus::Free { exponents, .. } if exponents == target => {}
                _ => continue,
            }
            let next: Vec<Option<usize>> = index
                .iter()
                .map(|o| o.and_then(|k| if k == j { None } else { r.images[k] }))
                .collect();
            let hyperplanes = (0..next.len()).filter(|&k| next[k].is_none()).collect();
            self.steps.push(FlagStep { dim: i - 1, hyperplanes, exponents: target.clone() });
            if self.descend(&r.arrangement, &next)? {
                return Ok(true);
            }
            self.steps.pop();
        }
        self.failed.insert(b.clone());
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::WeightTuple;
    use crate::families::{coxeter_b, n_ish_b, shi_b};

    fn lines(pairs: &[([i64; 2], usize)]) -> Multiarrangement {
        let a = Arrangement::from_pairs(2, pairs.iter().map(|(n, _)| (n.to_vec(), 0))).unwrap();
        let mult = a
            .hyperplanes()
            .iter()
            .map(|h| pairs.iter().find(|(n, _)| Hyperplane::new(n.to_vec(), 0).unwrap() == *h).unwrap().1)
            .collect();
        Multiarrangement::new(a, mult).unwrap()
    }

    #[test]
    fn rank2_multi_exponents() {
        // x1^3 x2 (x1 - x2)(x1 + x2)
        let ma = lines(&[([1, 0], 3), ([0, 1], 1), ([1, -1], 1), ([1, 1], 1)]);
        assert_eq!(multi_exponents_rank2(&ma).unwrap(), (3, 3));
        let ma = lines(&[([1, 0], 2), ([0, 1], 2), ([1, -1], 1), ([1, 1], 1)]);
        assert_eq!(multi_exponents_rank2(&ma).unwrap(), (3, 3));
        let ma = lines(&[([1, 0], 1), ([0, 1], 1)]);
        assert_eq!(multi_exponents_rank2(&ma).unwrap(), (1, 1));
        let ma = lines(&[([1, 0], 4)]);
        assert_eq!(multi_exponents_rank2(&ma).unwrap(), (0, 4));
    }

    #[test]
    fn ziegler_multiplicities() {
        let n = WeightTuple::from_slices(&[&[-1, 0, 1], &[0]]);
        let c = n_ish_b(&n).unwrap().cone();
        let z = c.hyperplanes().iter().find(|h| h.normal() == [0, 0, 1]).unwrap().clone();
        let zr = ziegler_restriction(&c, &z).unwrap();
        let mut m = zr.multiplicities().to_vec();
        m.sort_unstable();
        assert_eq!(m, vec![1, 1, 1, 3]);
        let cb = coxeter_b(2).unwrap().cone();
        let zr = ziegler_restriction(&cb, &cb.hyperplanes()[0]).unwrap();
        assert_eq!(zr.order(), cb.len() - 1);
    }

    #[test]
    fn certify_small_cases() {
        let s = free_certify(&shi_b(2).unwrap().cone()).unwrap();
        assert_eq!(s.exponents(), Some(&[1, 4, 4][..]));
        let z = Arrangement::empty(0).cone();
        assert_eq!(free_certify(&z).unwrap().exponents(), Some(&[1][..]));
        let two = WeightTuple::from_slices(&[&[-1, 0, 1, 2], &[-1, 0, 1, 2]]);
        let c = n_ish_b(&two).unwrap().cone();
        assert!(!supersolvable_in(&c, &intersection_poset(&c).unwrap()).is_supersolvable());
        let s = free_rank3(&c).unwrap();
        assert_eq!(s.exponents(), Some(&[1, 5, 5][..]));
        assert!(replay(&c, &s).unwrap());
    }

    #[test]
    fn non_free_pair() {
        // Neither set contains the negation of the other.
        let n = WeightTuple::from_slices(&[&[-1, 0, 2], &[-2, 0, 1]]);
        let c = n_ish_b(&n).unwrap().cone();
        let s = free_certify(&c).unwrap();
        assert!(s.is_non_free(), "{s:?}");
        assert!(replay(&c, &s).unwrap());
    }

    #[test]
    fn flag_of_cox_b2() {
        let c = coxeter_b(2).unwrap().cone();
        let FlagStatus::Flag(f) = flag_accurate_certify(&c).unwrap() else { panic!() };
        let ex: Vec<Vec<usize>> = f.steps.iter().map(|s| s.exponents.clone()).collect();
        assert_eq!(ex, vec![vec![1], vec![1, 1], vec![1, 1, 3]]);
        assert!(f.steps[0].hyperplanes.len() >= 2);
    }

    #[test]
    fn tampered_certificates_fail() {
        let c = shi_b(2).unwrap().cone();
        let FreeStatus::Free { certificate, .. } = free_certify(&c).unwrap() else { panic!() };
        let bad = FreeStatus::Free { exponents: vec![1, 3, 5], certificate };
        assert!(!replay(&c, &bad).unwrap());
        let wrong = FreeStatus::NonFree { witness: Witness::NonSplitting { charpoly: charpoly(&c).unwrap() } };
        assert!(!replay(&c, &wrong).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(free_certify(&shi_b(2).unwrap()).unwrap_err(), Error::NotCentral);
        let c = coxeter_b(3).unwrap();
        assert_eq!(free_rank3(&c.cone()).unwrap_err(), Error::WrongRank { expected: 3, found: 4 });
        let three = Arrangement::from_pairs(3, [(vec![1, 0, 0], 0), (vec![0, 1, 0], 0), (vec![0, 0, 1], 0)]).unwrap();
        let ma = Multiarrangement::simple(three).unwrap();
        assert_eq!(multi_exponents_rank2(&ma).unwrap_err(), Error::RankTooHigh(3));
    }
}
