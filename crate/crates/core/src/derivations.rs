//! Polynomial vector fields and logarithmic derivations.
//!
//! [`MultiPoly`] is a sparse integer polynomial in `x_1..x_l` and, for
//! cones, a last variable `z`. A [`Derivation`] is a tuple of such
//! polynomials, one per variable. Membership in `D(A, m)` is tested one
//! hyperplane at a time by exact division by linear forms, and a candidate
//! basis is accepted by Saito's criterion: all members, and the determinant
//! of the coefficient matrix is a nonzero constant multiple of `Q(A, m)`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freeness::Multiarrangement;

/// Variables `x_1..x_xs`, followed by `z` when `z` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    pub xs: usize,
    pub z: bool,
}

impl Ring {
    pub fn new(xs: usize, z: bool) -> Self {
        Self { xs, z }
    }

    pub fn nvars(&self) -> usize {
        self.xs + usize::from(self.z)
    }

    pub fn name(&self, i: usize) -> String {
        if i == self.xs {
            "z".into()
        } else {
            format!("x{}", i + 1)
        }
    }
}

/// Exponent vector, ordered graded lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(ring: Ring) -> Self {
        Self { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(Monomial(vec![0; ring.nvars()]), c.into());
        p
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        let mut p = Self::zero(ring);
        p.add_term(Monomial(e), BigInt::one());
        p
    }

    /// `sum c_i v_i`.
    pub fn linear(ring: Ring, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars(), "one coefficient per variable");
        let mut p = Self::zero(ring);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; ring.nvars()];
            e[i] = 1;
            p.add_term(Monomial(e), BigInt::from(c));
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Greatest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map_or_else(BigInt::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.ring), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c * BigInt::from(m.0[i]));
        }
        out
    }

    /// Replace variable `i` by the polynomial `by`.
    pub fn substitute(&self, i: usize, by: &MultiPoly) -> Self {
        let mut powers = vec![Self::one(self.ring)];
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * by;
                powers.push(next);
            }
            let mut e = m.0.clone();
            e[i] = 0;
            let mut rest = Self::zero(self.ring);
            rest.add_term(Monomial(e), c.clone());
            out = &out + &(&rest * &powers[k]);
        }
        out
    }

    /// Exact quotient by `d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = Self::zero(self.ring);
        while let Some((m, c)) = r.leading() {
            if !dm.divides(m) {
                return None;
            }
            let (qc, rem) = c.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let e: Vec<u32> = m.0.iter().zip(&dm.0).map(|(a, b)| a - b).collect();
            for (dm2, dc2) in &d.terms {
                let prod = Monomial(e.iter().zip(&dm2.0).map(|(a, b)| a + b).collect());
                r.add_term(prod, -(&qc * dc2));
            }
            q.add_term(Monomial(e), qc);
        }
        Some(q)
    }

    /// Quotient by the linear form `alpha` if it divides. `alpha` needs a
    /// coefficient equal to `+1` or `-1`.
    pub fn div_linear(&self, alpha: &[i64]) -> Result<Option<MultiPoly>> {
        if alpha.len() != self.ring.nvars() {
            return Err(Error::VariableMismatch);
        }
        if !alpha.iter().any(|c| c.abs() == 1) {
            return Err(Error::NoUnitCoefficient);
        }
        Ok(self.div_exact(&MultiPoly::linear(self.ring, alpha)))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            let mag = c.abs();
            if vars.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    fn names(&self) -> Vec<String> {
        (0..self.ring.nvars()).map(|i| self.ring.name(i)).collect()
    }
}

/// True iff the linear form `alpha` (with a unit coefficient) divides `p`.
/// Substitutes the unit variable from `alpha = 0` and checks for zero.
pub fn divisible_by_linear(p: &MultiPoly, alpha: &[i64]) -> Result<bool> {
    if alpha.len() != p.ring.nvars() {
        return Err(Error::VariableMismatch);
    }
    let u = alpha.iter().position(|c| c.abs() == 1).ok_or(Error::NoUnitCoefficient)?;
    // alpha_u = +-1 is its own inverse.
    let rest: Vec<i64> = alpha.iter().enumerate().map(|(j, &c)| if j == u { 0 } else { -alpha[u] * c }).collect();
    Ok(p.substitute(u, &MultiPoly::linear(p.ring, &rest)).is_zero())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&self.names()))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "polynomials over different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.ring, rhs.ring, "polynomials over different rings");
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = Monomial(a.0.iter().zip(&b.0).map(|(i, j)| i + j).collect());
                *acc.entry(e).or_insert_with(BigInt::zero) += x * y;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { ring: self.ring, terms: acc }
    }
}

/// `sum_i f_i d/dv_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    coeffs: Vec<MultiPoly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let ring = coeffs.first().ok_or(Error::VariableMismatch)?.ring;
        if coeffs.len() != ring.nvars() || coeffs.iter().any(|c| c.ring != ring) {
            return Err(Error::VariableMismatch);
        }
        Ok(Self { ring, coeffs })
    }

    pub fn euler(ring: Ring) -> Self {
        Self { ring, coeffs: (0..ring.nvars()).map(|i| MultiPoly::var(ring, i)).collect() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Common total degree of the nonzero coefficients.
    pub fn degree(&self) -> Option<u32> {
        let mut d = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            let e = c.homogeneous_degree()?;
            if d.is_some_and(|d| d != e) {
                return None;
            }
            d = Some(e);
        }
        d
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.ring != self.ring {
            return Err(Error::VariableMismatch);
        }
        let mut out = MultiPoly::zero(self.ring);
        for (i, f) in self.coeffs.iter().enumerate() {
            if !f.is_zero() {
                out = &out + &(f * &p.derivative(i));
            }
        }
        Ok(out)
    }

    /// `theta(alpha)` for a linear form.
    pub fn apply_linear(&self, alpha: &[i64]) -> Result<MultiPoly> {
        if alpha.len() != self.ring.nvars() {
            return Err(Error::VariableMismatch);
        }
        let mut out = MultiPoly::zero(self.ring);
        for (f, &a) in self.coeffs.iter().zip(alpha) {
            if a != 0 {
                out = &out + &f.scale(&BigInt::from(a));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c}) d/d{}", self.ring.name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Whether `theta(alpha_H)` is divisible by `alpha_H^m(H)` for every
/// hyperplane.
pub fn is_log_derivation(ma: &Multiarrangement, theta: &Derivation) -> Result<bool> {
    if theta.ring.nvars() != ma.arrangement().dim() {
        return Err(Error::VariableMismatch);
    }
    for (h, &m) in ma.arrangement().hyperplanes().iter().zip(ma.multiplicities()) {
        let mut p = theta.apply_linear(h.normal())?;
        for _ in 0..m {
            if p.is_zero() {
                break;
            }
            match p.div_linear(h.normal())? {
                Some(q) => p = q,
                None => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// `prod alpha_H^m(H)`.
pub fn defining_polynomial(ma: &Multiarrangement, ring: Ring) -> Result<MultiPoly> {
    if ring.nvars() != ma.arrangement().dim() {
        return Err(Error::VariableMismatch);
    }
    let mut q = MultiPoly::one(ring);
    for (h, &m) in ma.arrangement().hyperplanes().iter().zip(ma.multiplicities()) {
        q = &q * &MultiPoly::linear(ring, h.normal()).pow(m as u32);
    }
    Ok(q)
}

/// Matrix `M[i][j] = theta_j(x_i)`.
pub fn coefficient_matrix(thetas: &[Derivation]) -> Vec<Vec<MultiPoly>> {
    let n = thetas.len();
    (0..n).map(|i| thetas.iter().map(|t| t.coeffs[i].clone()).collect()).collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &[Vec<MultiPoly>], ring: Ring) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(ring);
    }
    let mut a = m.to_vec();
    let mut prev = MultiPoly::one(ring);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return MultiPoly::zero(ring);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Laplace expansion along the first row, used to cross-check Bareiss.
pub fn determinant_cofactor(m: &[Vec<MultiPoly>], ring: Ring) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(ring);
    }
    let mut out = MultiPoly::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][j] * &determinant_cofactor(&minor, ring);
        out = if j % 2 == 0 { &out + &t } else { &out - &t };
    }
    out
}

/// Saito's criterion. Every derivation must be logarithmic (otherwise
/// `NotMembers` lists the offenders); then the answer is whether the
/// determinant is a nonzero constant multiple of `Q(A, m)`.
pub fn saito_check(ma: &Multiarrangement, thetas: &[Derivation]) -> Result<bool> {
    let dim = ma.arrangement().dim();
    if thetas.len() != dim || thetas.iter().any(|t| t.ring.nvars() != dim) {
        return Err(Error::VariableMismatch);
    }
    let ring = thetas[0].ring;
    if thetas.iter().any(|t| t.ring != ring) {
        return Err(Error::VariableMismatch);
    }
    let mut offenders = Vec::new();
    for (i, t) in thetas.iter().enumerate() {
        if !is_log_derivation(ma, t)? {
            offenders.push(i);
        }
    }
    if !offenders.is_empty() {
        return Err(Error::NotMembers(offenders));
    }
    let det = determinant(&coefficient_matrix(thetas), ring);
    let q = defining_polynomial(ma, ring)?;
    Ok(!det.is_zero() && det.scale(&q.leading_coeff()) == q.scale(&det.leading_coeff()))
}

/// Basis of `D(cB(N))` for `N_i = [-m_i, m_i]`, `m` weakly decreasing:
/// the Euler derivation and, for `k = 1..l`,
/// `sum_{s >= k} prod_{|a| <= m_k} (x_s - a z) prod_{t < k} (x_t^2 - x_s^2) d/dx_s`.
pub fn basis_thm44(m: &[usize]) -> Result<Vec<Derivation>> {
    if m.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::BadParams(format!("{m:?} is not weakly decreasing")));
    }
    let l = m.len();
    let ring = Ring::new(l, true);
    let x = |i: usize| MultiPoly::var(ring, i);
    let z = MultiPoly::var(ring, l);
    let mut out = vec![Derivation::euler(ring)];
    for k in 0..l {
        let mut coeffs = vec![MultiPoly::zero(ring); l + 1];
        for (s, c) in coeffs.iter_mut().enumerate().take(l).skip(k) {
            let mut f = MultiPoly::one(ring);
            let mk = m[k] as i64;
            for a in -mk..=mk {
                f = &f * &(&x(s) - &z.scale(&BigInt::from(a)));
            }
            for t in 0..k {
                f = &f * &(&x(t).pow(2) - &x(s).pow(2));
            }
            *c = f;
        }
        out.push(Derivation { ring, coeffs });
    }
    Ok(out)
}

fn two_vars() -> Ring {
    Ring::new(2, false)
}

fn monomial2(c: i64, e1: u32, e2: u32) -> MultiPoly {
    let ring = two_vars();
    let mut p = MultiPoly::zero(ring);
    p.add_term(Monomial(vec![e1, e2]), BigInt::from(c));
    p
}

/// `x1^n1 x2^n2 (x1 - x2)(x1 + x2)` as a multiarrangement on four lines.
pub fn rank2_multiarrangement(n1: usize, n2: usize) -> Result<Multiarrangement> {
    let a = crate::Arrangement::from_pairs(2, [(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, -1], 0), (vec![1, 1], 0)])?;
    let mult = a
        .hyperplanes()
        .iter()
        .map(|h| match h.normal() {
            [1, 0] => n1,
            [0, 1] => n2,
            _ => 1,
        })
        .collect();
    Multiarrangement::new(a, mult)
}

/// Basis with exponents `{n1, n2 + 2}` of `x1^n1 x2^n2 (x1^2 - x2^2)` when
/// the sizes are uneven (`n1 != n2` or both odd). For `n1 < n2` the roles of
/// the variables are swapped.
pub fn basis_uneven_pair(n1: usize, n2: usize) -> Result<Vec<Derivation>> {
    if n1 == n2 && n1 % 2 == 0 {
        return Err(Error::BadParams(format!("sizes {n1}, {n2} are even and equal")));
    }
    if n1 < n2 {
        let swapped = basis_uneven_pair(n2, n1)?;
        return Ok(swapped.into_iter().map(swap_vars).collect());
    }
    let tau = u32::from(n2 % 2 == 0);
    let (n1, n2) = (n1 as u32, n2 as u32);
    let t1 = Derivation::new(vec![monomial2(1, n1, 0), monomial2(1, n1 - n2 - tau, n2 + tau)])?;
    let t2 = Derivation::new(vec![MultiPoly::zero(two_vars()), &monomial2(1, 2, n2) - &monomial2(1, 0, n2 + 2)])?;
    Ok(vec![t1, t2])
}

fn swap_vars(t: Derivation) -> Derivation {
    let swap = |p: &MultiPoly| {
        let mut out = MultiPoly::zero(p.ring);
        for (m, c) in &p.terms {
            out.add_term(Monomial(vec![m.0[1], m.0[0]]), c.clone());
        }
        out
    };
    Derivation { ring: t.ring, coeffs: vec![swap(&t.coeffs[1]), swap(&t.coeffs[0])] }
}

/// Basis with exponents `{n + 1, n + 1}` of `x1^n x2^n (x1^2 - x2^2)` for
/// even `n`. For odd `n` the second derivation fails on `x1 + x2`; that case
/// is covered by [`basis_uneven_pair`].
pub fn basis_even_pair(n: usize) -> Result<Vec<Derivation>> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::BadParams(format!("n = {n} must be even and at least 2")));
    }
    let n = n as u32;
    let t1 = Derivation::new(vec![monomial2(1, n, 1), monomial2(1, 1, n)])?;
    let t2 = Derivation::new(vec![monomial2(1, n + 1, 0), monomial2(1, 0, n + 1)])?;
    Ok(vec![t1, t2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::WeightTuple;
    use crate::families::n_ish_b;
    use crate::Arrangement;

    fn r2() -> Ring {
        two_vars()
    }

    #[test]
    fn apply_basics() {
        let ring = Ring::new(1, true);
        let p = &MultiPoly::var(ring, 0).pow(2) * &MultiPoly::var(ring, 1);
        let e = Derivation::euler(ring).apply(&p).unwrap();
        assert_eq!(e, p.scale(&BigInt::from(3)));
        let t = Derivation::new(vec![MultiPoly::var(r2(), 1), MultiPoly::zero(r2())]).unwrap();
        let s = &MultiPoly::var(r2(), 0) + &MultiPoly::var(r2(), 1);
        assert_eq!(t.apply(&s).unwrap(), MultiPoly::var(r2(), 1));
        assert!(t.apply(&MultiPoly::constant(r2(), 7)).unwrap().is_zero());
        assert_eq!(t.apply(&p).unwrap_err(), Error::VariableMismatch);
    }

    #[test]
    fn linear_divisibility() {
        let x1 = MultiPoly::var(r2(), 0);
        let x2 = MultiPoly::var(r2(), 1);
        let diff = &x1.pow(2) - &x2.pow(2);
        let sum = &x1.pow(2) + &x2.pow(2);
        assert!(divisible_by_linear(&diff, &[1, -1]).unwrap());
        assert!(!divisible_by_linear(&sum, &[1, -1]).unwrap());
        assert_eq!(diff.div_linear(&[1, -1]).unwrap(), Some(&x1 + &x2));
        assert_eq!(divisible_by_linear(&diff, &[2, 4]).unwrap_err(), Error::NoUnitCoefficient);
        // x1^(n1-n2)(x1^n2 +- x2^n2) with matching parity.
        let p = &x1 * &(&x1.pow(3) + &x2.pow(3));
        assert!(divisible_by_linear(&p, &[1, 1]).unwrap());
        assert!(!divisible_by_linear(&p, &[1, -1]).unwrap());
    }

    #[test]
    fn membership() {
        let boolean = Arrangement::from_pairs(2, [(vec![1, 0], 0)]).unwrap();
        let ma = Multiarrangement::simple(boolean).unwrap();
        let t = Derivation::new(vec![MultiPoly::var(r2(), 1), MultiPoly::zero(r2())]).unwrap();
        assert!(!is_log_derivation(&ma, &t).unwrap());
        assert!(is_log_derivation(&ma, &Derivation::euler(r2())).unwrap());
        let ma = rank2_multiarrangement(3, 1).unwrap();
        let b = basis_uneven_pair(3, 1).unwrap();
        assert!(is_log_derivation(&ma, &b[0]).unwrap());
    }

    #[test]
    fn saito_on_rank2_bases() {
        let ma = rank2_multiarrangement(3, 1).unwrap();
        let b = basis_uneven_pair(3, 1).unwrap();
        assert!(saito_check(&ma, &b).unwrap());
        let det = determinant(&coefficient_matrix(&b), r2());
        assert_eq!(det, defining_polynomial(&ma, r2()).unwrap());
        let ma = rank2_multiarrangement(2, 2).unwrap();
        assert!(saito_check(&ma, &basis_even_pair(2).unwrap()).unwrap());
        // Wrong degrees on the Boolean arrangement.
        let boolean = Arrangement::from_pairs(2, [(vec![1, 0], 0), (vec![0, 1], 0)]).unwrap();
        let ma = Multiarrangement::simple(boolean).unwrap();
        let x1 = MultiPoly::var(r2(), 0);
        let x2 = MultiPoly::var(r2(), 1);
        let t1 = Derivation::new(vec![x1.pow(2), MultiPoly::zero(r2())]).unwrap();
        let t2 = Derivation::new(vec![MultiPoly::zero(r2()), x2.clone()]).unwrap();
        assert!(!saito_check(&ma, &[t1, t2]).unwrap());
    }

    #[test]
    fn thm44_small() {
        let b = basis_thm44(&[1]).unwrap();
        assert_eq!(b[1].to_string(), "(x1^3 - x1*z^2) d/dx1");
        let c = n_ish_b(&WeightTuple::from_slices(&[&[-1, 0, 1]])).unwrap().cone();
        assert!(saito_check(&Multiarrangement::simple(c).unwrap(), &b).unwrap());
        let b = basis_thm44(&[1, 0]).unwrap();
        let degs: Vec<u32> = b.iter().map(|t| t.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 3, 3]);
        let c = n_ish_b(&WeightTuple::from_slices(&[&[-1, 0, 1], &[0]])).unwrap().cone();
        assert!(saito_check(&Multiarrangement::simple(c).unwrap(), &b).unwrap());
        assert!(basis_thm44(&[0, 1]).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let ring = Ring::new(2, true);
        let v = |i| MultiPoly::var(ring, i);
        let m = vec![
            vec![&v(0) + &v(1), v(2).pow(2), MultiPoly::constant(ring, 3)],
            vec![MultiPoly::zero(ring), &v(0) * &v(1), &v(2) - &v(0)],
            vec![v(1).pow(3), MultiPoly::constant(ring, -2), &v(0) + &v(2)],
        ];
        assert_eq!(determinant(&m, ring), determinant_cofactor(&m, ring));
    }
}
