//! Univariate integer polynomials in `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Coefficients in ascending degree, no trailing zeros. Serialized as the
/// list of coefficients in decimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t - r`
    pub fn linear(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::one(), |p, &r| p * Self::linear(r))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        self.eval(&BigInt::from(t))
    }

    /// Division by a monic polynomial.
    pub fn div_rem_monic(&self, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        (Self::new(q), Self::new(r))
    }

    /// Whether the monic polynomial `self` divides `other`.
    pub fn divides(&self, other: &IntPolynomial) -> bool {
        other.div_rem_monic(self).1.is_zero()
    }

    /// Integer roots with multiplicity, ascending, and the cofactor.
    pub fn split_integer_roots(&self) -> (Vec<BigInt>, IntPolynomial) {
        let mut p = self.clone();
        let mut roots = Vec::new();
        if p.is_zero() {
            return (roots, p);
        }
        while p.coeffs[0].is_zero() {
            p.coeffs.remove(0);
            roots.push(BigInt::zero());
        }
        'outer: while p.degree().unwrap_or(0) > 0 {
            for r in divisors(&p.coeffs[0]) {
                for cand in [r.clone(), -r] {
                    let lin = Self::new(vec![-cand.clone(), BigInt::one()]);
                    if p.eval(&cand).is_zero() {
                        let (q, rem) = p.div_rem_monic(&lin);
                        debug_assert!(rem.is_zero());
                        p = q;
                        roots.push(cand);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        roots.sort();
        (roots, p)
    }

    /// All roots if the polynomial is monic and splits into linear factors
    /// over Z.
    pub fn integer_roots(&self) -> Option<Vec<i64>> {
        if !self.is_monic() {
            return None;
        }
        let (roots, rest) = self.split_integer_roots();
        if rest.degree() != Some(0) {
            return None;
        }
        roots.iter().map(|r| r.to_i64()).collect()
    }

    /// Factored form over Z where linear factors are pulled out, for
    /// example `t(t-3)^2` or `(t-6)(t^2 - 12t + 39)`.
    pub fn factored(&self) -> String {
        if self.degree().unwrap_or(0) == 0 {
            return self.to_string();
        }
        let (roots, rest) = self.split_integer_roots();
        let mut out = String::new();
        if rest.degree() == Some(0) {
            let c = rest.leading();
            if c == -BigInt::one() {
                out.push('-');
            } else if !c.is_one() {
                out.push_str(&c.to_string());
            }
        }
        let mut i = 0;
        while i < roots.len() {
            let r = &roots[i];
            let k = roots[i..].iter().take_while(|x| *x == r).count();
            let base = if r.is_zero() {
                "t".to_string()
            } else if r.is_positive() {
                format!("(t-{r})")
            } else {
                format!("(t+{})", -r)
            };
            out.push_str(&base);
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
            i += k;
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push_str(&format!("({rest})"));
        }
        out
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(BigInt::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| format!("{s:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let coef = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write!(f, "{sign}{coef}{var}")?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let p = IntPolynomial::from_i64(&[-191, 98, -17, 1]);
        assert_eq!(p.to_string(), "t^3 - 17t^2 + 98t - 191");
        assert_eq!(IntPolynomial::from_roots(&[4, 4]).factored(), "(t-4)^2");
        assert_eq!(IntPolynomial::from_roots(&[0, 3, 3]).factored(), "t(t-3)^2");
        let q = IntPolynomial::linear(6) * IntPolynomial::from_i64(&[39, -12, 1]);
        assert_eq!(q.factored(), "(t-6)(t^2 - 12t + 39)");
        assert_eq!(IntPolynomial::from_roots(&[-1]).factored(), "(t+1)");
    }

    #[test]
    fn roots_and_division() {
        let p = IntPolynomial::from_roots(&[1, 5, 5, 0]);
        assert_eq!(p.integer_roots(), Some(vec![0, 1, 5, 5]));
        let d = IntPolynomial::from_roots(&[5, 1]);
        assert!(d.divides(&p));
        assert!(!IntPolynomial::from_roots(&[2]).divides(&p));
        let (q, r) = p.div_rem_monic(&d);
        assert!(r.is_zero());
        assert_eq!(q, IntPolynomial::from_roots(&[0, 5]));
        assert_eq!(IntPolynomial::from_i64(&[3, -3, 1]).integer_roots(), None);
    }

    #[test]
    fn evaluation() {
        let p = IntPolynomial::from_roots(&[4, 4]);
        assert_eq!(p.eval_i64(5), BigInt::from(1));
        assert_eq!(p.eval_i64(4), BigInt::zero());
    }
}
