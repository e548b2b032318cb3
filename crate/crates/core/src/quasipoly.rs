//! Characteristic quasi-polynomials by counting points of `Z_q^l` off the
//! `q`-reduced hyperplanes.
//!
//! The lcm period comes from the elementary divisors of the coefficient
//! matrix. Constituents are interpolated from exact counts and checked on
//! extra samples; when a check fails the starting modulus is doubled.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactgeom::{smith_normal_form, IntMatrix, RationalMatrix};
use crate::poly::IntPolynomial;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Distinct normal vectors the period computation will enumerate subsets of.
pub const MAX_PERIOD_COLUMNS: usize = 24;

/// Number of points of `Z_q^l` on none of the reduced hyperplanes.
pub fn count_complement(a: &Arrangement, q: u64) -> Result<u64> {
    count_complement_with(a, q, DEFAULT_BUDGET)
}

pub fn count_complement_with(a: &Arrangement, q: u64, budget: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::BadParams("modulus q must be at least 1".into()));
    }
    let l = a.dim();
    let needed = (q as u128).checked_pow(l as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if l == 0 {
        return Ok(1);
    }
    let red = |x: i64| x.rem_euclid(q as i64) as u64;
    let mut rows = Vec::new();
    for h in a.hyperplanes() {
        let c: Vec<u64> = h.normal().iter().map(|&x| red(x)).collect();
        let b = red(h.offset());
        match c.iter().rposition(|&x| x != 0) {
            // 0 = b over Z_q: either everything or nothing is removed.
            None if b == 0 => return Ok(0),
            None => {}
            Some(last) => rows.push(Row::new(c, b, last, q)),
        }
    }
    let counter = Counter::new(rows, l, q);
    if l == 1 {
        let mut scratch = vec![false; q as usize];
        return Ok(counter.count_from(0, &mut vec![0; counter.rows.len()], &mut scratch));
    }
    Ok((0..q)
        .into_par_iter()
        .map(|x| {
            let mut s: Vec<u64> = counter.rows.iter().map(|r| mul_mod(r.c[0], x, q)).collect();
            let mut scratch = vec![false; q as usize];
            counter.count_from(1, &mut s, &mut scratch)
        })
        .collect::<Vec<u64>>()
        .into_iter()
        .sum())
}

struct Row {
    c: Vec<u64>,
    b: u64,
    last: usize,
    // Solving c_last x = r (mod q): g = gcd(c_last, q), inverse of c_last/g
    // modulo q/g.
    g: u64,
    inv: u64,
}

impl Row {
    fn new(c: Vec<u64>, b: u64, last: usize, q: u64) -> Self {
        let cl = c[last];
        let g = cl.gcd(&q);
        let m = q / g;
        let inv = if m == 1 { 0 } else { mod_inverse((cl / g) % m, m) };
        Self { c, b, last, g, inv }
    }
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = Integer::extended_gcd(&(a as i128), &(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

struct Counter {
    rows: Vec<Row>,
    dim: usize,
    q: u64,
    // Rows whose last nonzero coefficient is at coordinate i, for i < dim-1.
    finished_at: Vec<Vec<usize>>,
    // Rows that constrain the last coordinate.
    at_last: Vec<usize>,
}

impl Counter {
    fn new(rows: Vec<Row>, dim: usize, q: u64) -> Self {
        let mut finished_at = vec![Vec::new(); dim];
        let mut at_last = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            if r.last == dim - 1 {
                at_last.push(i);
            } else {
                finished_at[r.last].push(i);
            }
        }
        Self { rows, dim, q, finished_at, at_last }
    }

    // Coordinates 0..i are fixed and s holds the partial sums of each row.
    fn count_from(&self, i: usize, s: &mut [u64], scratch: &mut [bool]) -> u64 {
        if i > 0 && self.finished_at[i - 1].iter().any(|&r| s[r] == self.rows[r].b) {
            return 0;
        }
        let q = self.q;
        if i == self.dim - 1 {
            scratch.iter_mut().for_each(|x| *x = false);
            let mut hit = 0u64;
            for &ri in &self.at_last {
                let r = &self.rows[ri];
                let rhs = (r.b + q - s[ri]) % q;
                if rhs % r.g != 0 {
                    continue;
                }
                let m = q / r.g;
                let x0 = if m == 1 { 0 } else { mul_mod(rhs / r.g % m, r.inv, m) };
                let mut x = x0;
                while x < q {
                    if !std::mem::replace(&mut scratch[x as usize], true) {
                        hit += 1;
                    }
                    x += m;
                }
            }
            return q - hit;
        }
        let mut total = 0;
        for _ in 0..q {
            total += self.count_from(i + 1, s, scratch);
            for (k, r) in self.rows.iter().enumerate() {
                let v = s[k] + r.c[i];
                s[k] = if v >= q { v - q } else { v };
            }
        }
        // After q steps every partial sum is back where it started.
        total
    }
}

/// Distinct normal vectors, the columns that matter for elementary divisors.
fn distinct_columns(a: &Arrangement) -> Vec<Vec<i64>> {
    a.hyperplanes().iter().map(|h| h.normal().to_vec()).collect::<BTreeSet<_>>().into_iter().collect()
}

/// lcm over nonempty column subsets `J` of the largest elementary divisor
/// of the coefficient submatrix `C_J`. Repeated columns do not change any
/// elementary divisor, so only distinct normals are enumerated.
pub fn lcm_period(a: &Arrangement) -> Result<u64> {
    let cols = distinct_columns(a);
    if cols.len() > MAX_PERIOD_COLUMNS {
        return Err(Error::TooManyHyperplanes(cols.len()));
    }
    let n = cols.len();
    // Rows of C are coordinates, columns are normals.
    let rows: Vec<Vec<i64>> = (0..a.dim()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let c = IntMatrix::from_rows(&rows);
    let mut rho = BigInt::one();
    for mask in 1u32..(1u32 << n) {
        let j: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        if let Some(e) = smith_normal_form(&c.select_columns(&j)).last() {
            rho = rho.lcm(e);
        }
    }
    rho.to_u64().ok_or(Error::Overflow)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// `constituents[k - 1]` is the polynomial for `q = k (mod period)`.
    pub constituents: Vec<IntPolynomial>,
    /// Smallest modulus used for sampling.
    pub q_min: u64,
    /// Every `(q, count)` pair that went into the interpolation or checks.
    pub samples: Vec<(u64, u64)>,
}

impl QuasiPolynomial {
    /// Constituent for `q`, indexed so that `q = k (mod period)` gives `f^k`.
    pub fn constituent(&self, q: u64) -> &IntPolynomial {
        let k = match q % self.period {
            0 => self.period,
            r => r,
        };
        &self.constituents[k as usize - 1]
    }

    pub fn eval(&self, q: u64) -> BigInt {
        self.constituent(q).eval(&BigInt::from(q))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiConfig {
    pub budget: u64,
    /// Overrides the default starting modulus.
    pub q_min: Option<u64>,
    /// Samples per residue class beyond the `l + 1` used to interpolate.
    pub checks: usize,
    /// How many times the starting modulus may be doubled.
    pub retries: usize,
}

impl Default for QuasiConfig {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, q_min: None, checks: 2, retries: 4 }
    }
}

/// `2 (l + max|b| + R) + 2` where `R` is half the spread of the offsets,
/// rounded up. Beyond this every constituent has stabilized for the
/// families in scope; the verification samples guard the rest.
pub fn default_q_min(a: &Arrangement) -> u64 {
    let offs: Vec<i64> = a.hyperplanes().iter().map(|h| h.offset()).collect();
    let m = offs.iter().map(|b| b.unsigned_abs()).max().unwrap_or(0);
    let spread = match (offs.iter().min(), offs.iter().max()) {
        (Some(lo), Some(hi)) => (hi - lo).unsigned_abs(),
        _ => 0,
    };
    2 * (a.dim() as u64 + m + spread.div_ceil(2)) + 2
}

pub fn characteristic_quasipoly(a: &Arrangement) -> Result<QuasiPolynomial> {
    characteristic_quasipoly_with(a, QuasiConfig::default())
}

pub fn characteristic_quasipoly_with(a: &Arrangement, cfg: QuasiConfig) -> Result<QuasiPolynomial> {
    let rho = lcm_period(a)?;
    let mut q_min = cfg.q_min.unwrap_or_else(|| default_q_min(a)).max(1);
    let mut last_bad = 0;
    for _ in 0..=cfg.retries {
        match try_interpolate(a, rho, q_min, cfg)? {
            Ok(qp) => return Ok(qp),
            Err(q) => last_bad = q,
        }
        q_min *= 2;
    }
    Err(Error::VerificationFailed { q: last_bad })
}

// Err(q) names a sample that disagrees with the interpolant.
fn try_interpolate(a: &Arrangement, rho: u64, q_min: u64, cfg: QuasiConfig) -> Result<std::result::Result<QuasiPolynomial, u64>> {
    let l = a.dim();
    let per_class = l + 1 + cfg.checks;
    let mut constituents = Vec::with_capacity(rho as usize);
    let mut samples = Vec::new();
    for k in 1..=rho {
        let first = q_min + (k + rho - q_min % rho) % rho;
        let qs: Vec<u64> = (0..per_class as u64).map(|i| first + i * rho).collect();
        let counts = qs
            .iter()
            .map(|&q| count_complement_with(a, q, cfg.budget))
            .collect::<Result<Vec<u64>>>()?;
        samples.extend(qs.iter().copied().zip(counts.iter().copied()));
        let Some(f) = interpolate(&qs[..=l], &counts[..=l]) else {
            return Ok(Err(qs[l]));
        };
        if !f.is_monic() || f.degree() != Some(l) {
            return Ok(Err(qs[l]));
        }
        for (&q, &c) in qs.iter().zip(&counts).skip(l + 1) {
            if f.eval(&BigInt::from(q)) != BigInt::from(c) {
                return Ok(Err(q));
            }
        }
        constituents.push(f);
    }
    samples.sort_unstable();
    Ok(Ok(QuasiPolynomial { period: rho, constituents, q_min, samples }))
}

/// Polynomial through the points, if its coefficients are integers.
pub fn interpolate(xs: &[u64], ys: &[u64]) -> Option<IntPolynomial> {
    let n = xs.len();
    let rows: Vec<Vec<BigRational>> = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let x = BigInt::from(x);
            let mut row: Vec<BigRational> = Vec::with_capacity(n + 1);
            let mut p = BigInt::one();
            for _ in 0..n {
                row.push(BigRational::from_integer(p.clone()));
                p *= &x;
            }
            row.push(BigRational::from_integer(BigInt::from(y)));
            row
        })
        .collect();
    let (r, pivots) = RationalMatrix::from_rows(&rows).rref();
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let v = r.get(i, n);
        if !v.is_integer() {
            return None;
        }
        coeffs.push(v.to_integer());
    }
    Some(IntPolynomial::new(coeffs))
}

/// Smallest divisor `d` of the period with `f^k = f^(k+d)` for every `k`.
/// Any period of the constituent sequence has its gcd with the lcm period
/// as a period too, so divisors are enough.
pub fn minimum_period(qp: &QuasiPolynomial) -> u64 {
    let rho = qp.period as usize;
    (1..=rho)
        .filter(|d| rho % d == 0)
        .find(|&d| (0..rho).all(|k| qp.constituents[k] == qp.constituents[(k + d) % rho]))
        .unwrap_or(rho) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub lcm_period: u64,
    pub minimum_period: u64,
    pub collapse: bool,
    pub q_min: u64,
    pub samples: usize,
}

pub fn period_collapse_report(a: &Arrangement) -> Result<PeriodReport> {
    period_collapse_report_with(a, QuasiConfig::default())
}

pub fn period_collapse_report_with(a: &Arrangement, cfg: QuasiConfig) -> Result<PeriodReport> {
    let qp = characteristic_quasipoly_with(a, cfg)?;
    Ok(report_of(&qp))
}

pub fn report_of(qp: &QuasiPolynomial) -> PeriodReport {
    let min = minimum_period(qp);
    PeriodReport {
        lcm_period: qp.period,
        minimum_period: min,
        collapse: min < qp.period,
        q_min: qp.q_min,
        samples: qp.samples.len(),
    }
}

/// Brute-force count with no pruning, for cross-checking.
pub fn count_complement_naive(a: &Arrangement, q: u64) -> u64 {
    let l = a.dim();
    let total = (q as usize).pow(l as u32);
    let mut out = 0;
    let mut z = vec![0i64; l];
    for idx in 0..total {
        let mut t = idx;
        for x in z.iter_mut() {
            *x = (t % q as usize) as i64;
            t /= q as usize;
        }
        let on = a.hyperplanes().iter().any(|h| {
            let v: i128 = h.normal().iter().zip(&z).map(|(&c, &x)| c as i128 * x as i128).sum::<i128>() - h.offset() as i128;
            v.rem_euclid(q as i128) == 0
        });
        if !on {
            out += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{b_hat, coxeter_a, coxeter_b, ish_b, shi_b};

    #[test]
    fn counts_on_small_cases() {
        assert_eq!(count_complement(&coxeter_b(2).unwrap(), 5).unwrap(), 8);
        assert_eq!(count_complement(&shi_b(2).unwrap(), 5).unwrap(), 1);
        assert_eq!(count_complement(&Arrangement::empty(2), 3).unwrap(), 9);
        for q in 1..9 {
            let a = ish_b(2).unwrap();
            assert_eq!(count_complement(&a, q).unwrap(), count_complement_naive(&a, q), "q = {q}");
        }
    }

    #[test]
    fn budget() {
        let err = count_complement_with(&coxeter_b(3).unwrap(), 100, 1000).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 1_000_000, budget: 1000 });
    }

    #[test]
    fn lcm_periods() {
        assert_eq!(lcm_period(&coxeter_b(2).unwrap()).unwrap(), 2);
        assert_eq!(lcm_period(&coxeter_a(3).unwrap()).unwrap(), 1);
        assert_eq!(lcm_period(&shi_b(2).unwrap()).unwrap(), 2);
    }

    #[test]
    fn quasi_polynomials() {
        let qp = characteristic_quasipoly(&shi_b(2).unwrap()).unwrap();
        let f = IntPolynomial::from_roots(&[4, 4]);
        assert_eq!(qp.constituents, vec![f.clone(), f.clone()]);
        assert_eq!(minimum_period(&qp), 1);
        let qp = characteristic_quasipoly(&ish_b(2).unwrap()).unwrap();
        assert_eq!(qp.constituents[0], f);
        assert_eq!(qp.constituents[1], &f + &IntPolynomial::one());
        assert_eq!(minimum_period(&qp), 2);
        let qp = characteristic_quasipoly(&b_hat(2, 1, 1, 1).unwrap()).unwrap();
        assert!(qp.constituents.iter().all(|c| *c == IntPolynomial::from_roots(&[6, 5])));
    }

    #[test]
    fn interpolation_rejects_fractions() {
        assert_eq!(interpolate(&[0, 2], &[0, 1]), None);
        assert_eq!(interpolate(&[1, 2, 3], &[1, 4, 9]), Some(IntPolynomial::from_i64(&[0, 0, 1])));
    }
}
