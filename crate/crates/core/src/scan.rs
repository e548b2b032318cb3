//! Exhaustive scans over digraphs and subarrangements.
//!
//! Every scan works on a deterministic enumeration, runs the items on the
//! rayon pool and returns the records in enumeration order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::digraph::{digraph_form, enumerate_digraphs, form_exponents, has_forbidden_induced, Digraph, DigraphForm};
use crate::error::{Error, Result};
use crate::families::{coxeter_b, deleted_i, deleted_s, ish_b, shi_b};
use crate::freeness::{free_certify, FreeStatus};
use crate::poly::IntPolynomial;
use crate::poset::{charpoly, intersection_poset, supersolvable_in};
use crate::quasipoly::{count_complement, default_q_min, interpolate};

/// Characteristic polynomial from point counts over `Z_p` for primes `p`
/// past the default sampling bound: `l + 1` primes to interpolate and two
/// more to confirm.
pub fn charpoly_by_counting(a: &Arrangement) -> Result<IntPolynomial> {
    let l = a.dim();
    let mut primes = Vec::new();
    let mut p = default_q_min(a).max(2);
    while primes.len() < l + 3 {
        if is_prime(p) {
            primes.push(p);
        }
        p += 1;
    }
    let counts = primes.iter().map(|&p| count_complement(a, p)).collect::<Result<Vec<u64>>>()?;
    let bad = Error::VerificationFailed { q: primes[l] };
    let f = interpolate(&primes[..=l], &counts[..=l]).ok_or(bad.clone())?;
    for (&p, &c) in primes.iter().zip(&counts).skip(l + 1) {
        if f.eval_i64(p as i64) != c.into() {
            return Err(Error::VerificationFailed { q: p });
        }
    }
    Ok(f)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// One digraph of the conjecture scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub index: usize,
    pub digraph: String,
    pub chi_s: IntPolynomial,
    pub chi_i: IntPolynomial,
    /// Both methods agreed on both arrangements.
    pub consistent: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureSummary {
    pub l: usize,
    pub digraphs: usize,
    pub counterexamples: usize,
    pub inconsistent: usize,
}

/// Compare `chi` of the deleted Shi and Ish arrangements of every digraph
/// on `l` vertices. Each polynomial is computed from the intersection
/// poset and from point counts; only when those agree is the comparison
/// made, so a disagreement between methods is reported as inconsistent
/// rather than as a counterexample.
pub fn conjecture_scan(l: usize) -> Result<(Vec<ConjectureRecord>, ConjectureSummary)> {
    let graphs: Vec<Digraph> = enumerate_digraphs(l)?.collect();
    let records = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| -> Result<ConjectureRecord> {
            let (s, i) = (deleted_s(g)?, deleted_i(g)?);
            let (chi_s, chi_i) = (charpoly(&s)?, charpoly(&i)?);
            let consistent = charpoly_by_counting(&s)? == chi_s && charpoly_by_counting(&i)? == chi_i;
            let equal = consistent && chi_s == chi_i;
            Ok(ConjectureRecord { index, digraph: g.to_string(), chi_s, chi_i, consistent, equal })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = ConjectureSummary {
        l,
        digraphs: records.len(),
        counterexamples: records.iter().filter(|r| r.consistent && !r.equal).count(),
        inconsistent: records.iter().filter(|r| !r.consistent).count(),
    };
    Ok((records, summary))
}

/// Status of one cone in the forms scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeStatus {
    pub supersolvable: bool,
    pub free: Option<bool>,
    pub exponents: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormsRecord {
    pub index: usize,
    pub digraph: String,
    pub form: DigraphForm,
    pub forbidden: Option<String>,
    pub predicted: Option<Vec<usize>>,
    pub shi: Option<ConeStatus>,
    pub ish: Option<ConeStatus>,
    /// Form, obstruction and (when computed) both cones tell the same story.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormsSummary {
    pub l: usize,
    pub digraphs: usize,
    pub certified: usize,
    pub disagreements: usize,
}

fn cone_status(a: &Arrangement) -> Result<ConeStatus> {
    let c = a.cone();
    let p = intersection_poset(&c)?;
    let supersolvable = supersolvable_in(&c, &p).is_supersolvable();
    let st = free_certify(&c)?;
    Ok(ConeStatus {
        supersolvable,
        free: match st {
            FreeStatus::Free { .. } => Some(true),
            FreeStatus::NonFree { .. } => Some(false),
            FreeStatus::Unknown { .. } => None,
        },
        exponents: st.exponents().map(<[usize]>::to_vec),
    })
}

/// Check the form classification of every digraph on `l` vertices against
/// the obstruction patterns, and on every `stride`-th digraph also against
/// supersolvability and freeness of both deleted cones.
pub fn forms_scan(l: usize, stride: usize) -> Result<(Vec<FormsRecord>, FormsSummary)> {
    let stride = stride.max(1);
    let graphs: Vec<Digraph> = enumerate_digraphs(l)?.collect();
    let records = graphs
        .par_iter()
        .enumerate()
        .map(|(index, g)| -> Result<FormsRecord> {
            let form = digraph_form(g);
            let forbidden = has_forbidden_induced(g).map(|h| h.pattern);
            let predicted = form_exponents(g);
            let good = form != DigraphForm::None;
            let mut agrees = good == forbidden.is_none();
            let (shi, ish) = if index % stride == 0 {
                let (s, i) = (cone_status(&deleted_s(g)?)?, cone_status(&deleted_i(g)?)?);
                for st in [&s, &i] {
                    agrees &= st.supersolvable == good && st.free == Some(good);
                    if good {
                        agrees &= st.exponents == predicted;
                    }
                }
                (Some(s), Some(i))
            } else {
                (None, None)
            };
            Ok(FormsRecord { index, digraph: g.to_string(), form, forbidden, predicted, shi, ish, agrees })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = FormsSummary {
        l,
        digraphs: records.len(),
        certified: records.iter().filter(|r| r.shi.is_some()).count(),
        disagreements: records.iter().filter(|r| !r.agrees).count(),
    };
    Ok((records, summary))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubarrangementSearch {
    pub target: IntPolynomial,
    pub candidates: usize,
    /// Extra hyperplanes of each matching candidate.
    pub matches: Vec<Vec<Hyperplane>>,
}

/// `chi` of `Shi(B_3)` without `x_1 = 1`, and every arrangement between
/// `Cox(B_3)` and `Ish(B_3)` with that polynomial.
pub fn shi_ish_search() -> Result<SubarrangementSearch> {
    let shi = shi_b(3)?;
    let x1 = Hyperplane::new(vec![1, 0, 0], 1)?;
    let target = charpoly(&shi.delete(&x1)?)?;
    let cox = coxeter_b(3)?;
    let extra: Vec<Hyperplane> = ish_b(3)?.hyperplanes().iter().filter(|h| !cox.contains(h)).cloned().collect();
    let n = extra.len();
    let found = (0u32..1 << n)
        .into_par_iter()
        .map(|mask| -> Result<Option<Vec<Hyperplane>>> {
            let chosen: Vec<Hyperplane> = (0..n).filter(|&k| mask >> k & 1 == 1).map(|k| extra[k].clone()).collect();
            let a = cox.with_hyperplanes(cox.hyperplanes().iter().cloned().chain(chosen.iter().cloned()))?;
            Ok((charpoly(&a)? == target).then_some(chosen))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubarrangementSearch { target, candidates: 1 << n, matches: found.into_iter().flatten().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_agrees_with_mobius() {
        let a = shi_b(2).unwrap();
        assert_eq!(charpoly_by_counting(&a).unwrap(), charpoly(&a).unwrap());
    }

    #[test]
    fn small_scans() {
        let (recs, sum) = conjecture_scan(2).unwrap();
        assert_eq!(sum.digraphs, 8);
        assert_eq!(sum.counterexamples + sum.inconsistent, 0);
        assert!(recs.windows(2).all(|w| w[0].index < w[1].index));
        let (_, sum) = forms_scan(2, 1).unwrap();
        assert_eq!(sum.disagreements, 0);
    }
}
