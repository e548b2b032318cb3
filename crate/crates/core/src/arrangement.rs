//! Integral hyperplane arrangements and the basic constructions on them.
//!
//! A hyperplane `a . x = b` is stored with `gcd(a, b) = 1` and the first
//! nonzero entry of `a` positive. When `gcd(a)` divides `b` this makes `a`
//! primitive; otherwise the hyperplane carries no integer points and `a`
//! keeps the smallest integral scaling (this arises for restrictions).

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactgeom::{column_hermite, make_primitive, unimodular_parametrization};
use crate::poset::Flat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(rename = "a")]
    normal: Vec<i64>,
    #[serde(rename = "b")]
    offset: i64,
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Self> {
        Ok(Self::canonical(normal, offset)?.0)
    }

    /// Canonicalize, reporting whether a common factor had to be removed.
    pub fn canonical(normal: Vec<i64>, offset: i64) -> Result<(Self, bool)> {
        let g = normal.iter().fold(offset, |g, &x| g.gcd(&x));
        if normal.iter().all(|&x| x == 0) {
            return Err(Error::ZeroNormal);
        }
        let lead = *normal.iter().find(|&&x| x != 0).unwrap();
        let s = if lead < 0 { -g } else { g };
        let h = Self { normal: normal.iter().map(|x| x / s).collect(), offset: offset / s };
        Ok((h, g != 1))
    }

    fn from_i128(row: &[i128]) -> Result<Self> {
        let mut v = row.to_vec();
        make_primitive(&mut v);
        let conv = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow);
        let (b, a) = v.split_last().unwrap();
        Self::new(a.iter().map(|&x| conv(x)).collect::<Result<_>>()?, conv(*b)?)
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_linear(&self) -> bool {
        self.offset == 0
    }

    /// `(a_1, ..., a_l, b)` for the exact kernels.
    pub fn row(&self) -> Vec<i128> {
        self.normal.iter().map(|&x| x as i128).chain([self.offset as i128]).collect()
    }

    pub fn contains_point(&self, x: &[i64]) -> bool {
        let s: i128 = self.normal.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
        s == self.offset as i128
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.normal.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            match (first, c < 0) {
                (true, false) => write!(f, "{mag}x{}", i + 1)?,
                (true, true) => write!(f, "-{mag}x{}", i + 1)?,
                (false, false) => write!(f, " + {mag}x{}", i + 1)?,
                (false, true) => write!(f, " - {mag}x{}", i + 1)?,
            }
            first = false;
        }
        write!(f, " = {}", self.offset)
    }
}

/// Records that the last coordinate is the homogenizing variable `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeTag;

/// A finite set of hyperplanes in `Q^dim`, kept sorted and deduplicated.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    cone: Option<ConeTag>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.hyperplanes == other.hyperplanes
    }
}

impl Eq for Arrangement {}

impl std::hash::Hash for Arrangement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.hyperplanes.hash(state);
    }
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: impl IntoIterator<Item = Hyperplane>) -> Result<Self> {
        let mut hs: Vec<Hyperplane> = hyperplanes.into_iter().collect();
        if let Some(h) = hs.iter().find(|h| h.dim() != dim) {
            return Err(Error::DimMismatch { expected: dim, found: h.dim() });
        }
        hs.sort();
        hs.dedup();
        Ok(Self { dim, hyperplanes: hs, cone: None })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, hyperplanes: Vec::new(), cone: None }
    }

    /// Build from `(normal, offset)` pairs, canonicalizing each.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<Self> {
        let hs = pairs.into_iter().map(|(a, b)| Hyperplane::new(a, b)).collect::<Result<Vec<_>>>()?;
        Self::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn cone_tag(&self) -> Option<ConeTag> {
        self.cone
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.binary_search(h).ok()
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.index_of(h).is_some()
    }

    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(Hyperplane::is_linear)
    }

    pub fn is_subarrangement_of(&self, other: &Arrangement) -> bool {
        self.dim == other.dim && self.hyperplanes.iter().all(|h| other.contains(h))
    }

    /// Rank of the normal vectors, which is also the maximal codimension of
    /// a nonempty flat.
    pub fn rank(&self) -> Result<usize> {
        let rows: Vec<Vec<i64>> = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        Ok(column_hermite(&rows, self.dim)?.1)
    }

    pub fn with_hyperplanes(&self, hs: impl IntoIterator<Item = Hyperplane>) -> Result<Self> {
        let mut out = Self::new(self.dim, hs)?;
        out.cone = self.cone;
        Ok(out)
    }

    /// Subarrangement on the given indices.
    pub fn select(&self, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut hs: Vec<Hyperplane> = indices.into_iter().map(|i| self.hyperplanes[i].clone()).collect();
        hs.sort();
        hs.dedup();
        Self { dim: self.dim, hyperplanes: hs, cone: self.cone }
    }

    pub fn union(&self, other: &Arrangement) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: other.dim });
        }
        self.with_hyperplanes(self.hyperplanes.iter().chain(&other.hyperplanes).cloned())
    }

    pub fn insert(&self, h: Hyperplane) -> Result<Self> {
        self.with_hyperplanes(self.hyperplanes.iter().cloned().chain([h]))
    }

    /// `c . x = b` becomes `c . x - b z = 0`, plus the hyperplane `z = 0`.
    pub fn cone(&self) -> Self {
        let d = self.dim + 1;
        let mut hs: Vec<Hyperplane> = self
            .hyperplanes
            .iter()
            .map(|h| {
                let mut a = h.normal.clone();
                a.push(-h.offset);
                Hyperplane::new(a, 0).expect("nonzero normal")
            })
            .collect();
        let mut z = vec![0; d];
        z[d - 1] = 1;
        hs.push(Hyperplane { normal: z, offset: 0 });
        let mut out = Self::new(d, hs).expect("consistent dimension");
        out.cone = Some(ConeTag);
        out
    }

    pub fn delete(&self, h: &Hyperplane) -> Result<Self> {
        let i = self.index_of(h).ok_or_else(|| Error::HyperplaneNotInArrangement(h.to_string()))?;
        let mut out = self.clone();
        out.hyperplanes.remove(i);
        Ok(out)
    }

    pub fn restrict(&self, h: &Hyperplane) -> Result<Self> {
        Ok(self.restrict_with_map(h)?.arrangement)
    }

    /// Restriction to `h` in lattice coordinates of `h`, remembering where
    /// each hyperplane of `self` went.
    pub fn restrict_with_map(&self, h: &Hyperplane) -> Result<Restriction> {
        if !self.contains(h) {
            return Err(Error::HyperplaneNotInArrangement(h.to_string()));
        }
        let g = h.normal.iter().fold(0i64, |g, &x| g.gcd(&x));
        let prim: Vec<i64> = h.normal.iter().map(|x| x / g).collect();
        // Points of h are (b/g) u0 + L t with u0 integral and c' . u0 = 1.
        let param = unimodular_parametrization(&prim, 1)?;
        let u0 = param.base;
        let basis = param.basis;
        let dim = self.dim - 1;
        let mut images = Vec::with_capacity(self.len());
        let mut seen: BTreeMap<Hyperplane, usize> = BTreeMap::new();
        let mut raw = Vec::new();
        for k in &self.hyperplanes {
            if k == h {
                images.push(None);
                continue;
            }
            let dot = |v: &[i64]| -> i128 { k.normal.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum() };
            let coeffs: Vec<i128> = basis.iter().map(|v| g as i128 * dot(v)).collect();
            if coeffs.iter().all(|&c| c == 0) {
                images.push(None);
                continue;
            }
            let rhs = g as i128 * k.offset as i128 - h.offset as i128 * dot(&u0);
            let row: Vec<i128> = coeffs.into_iter().chain([rhs]).collect();
            let image = Hyperplane::from_i128(&row)?;
            let next = seen.len();
            let idx = *seen.entry(image.clone()).or_insert(next);
            if idx == next {
                raw.push(image);
            }
            images.push(Some(idx));
        }
        // Renumber images to the sorted order of the result.
        let arrangement = Self::new(dim, raw.iter().cloned())?;
        let images = images
            .into_iter()
            .map(|o| o.map(|i| arrangement.index_of(&raw[i]).unwrap()))
            .collect();
        Ok(Restriction { arrangement, base_numerator: u0, base_denominator: g, basis, images })
    }

    /// `A_X`: hyperplanes containing the flat `x`.
    pub fn localize(&self, x: &Flat) -> Result<Self> {
        if x.ambient_dim() != self.dim {
            return Err(Error::DimMismatch { expected: self.dim, found: x.ambient_dim() });
        }
        let mut hs = Vec::new();
        let mut meet = Flat::ambient(self.dim);
        for h in &self.hyperplanes {
            if x.is_contained_in(h)? {
                meet = meet.meet(h)?.expect("contains a common point");
                hs.push(h.clone());
            }
        }
        if &meet != x {
            return Err(Error::FlatNotInPoset);
        }
        self.with_hyperplanes(hs)
    }

    /// Linearly equivalent essential arrangement. `x = U y` where `U` is the
    /// returned unimodular matrix (columns) and only the first `rank`
    /// coordinates of `y` appear.
    pub fn essentialize(&self) -> Result<(Self, Vec<Vec<i64>>)> {
        let rows: Vec<Vec<i64>> = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        let (u, r) = column_hermite(&rows, self.dim)?;
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| {
                let a: Vec<i64> = u[..r]
                    .iter()
                    .map(|col| h.normal.iter().zip(col).map(|(x, y)| x * y).sum())
                    .collect();
                Hyperplane::new(a, h.offset)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Self::new(r, hs)?, u))
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "dim": self.dim,
            "hyperplanes": self.hyperplanes,
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    /// Parse the `{"dim", "hyperplanes": [{"a", "b"}]}` format. Hyperplanes
    /// given with a common factor are canonicalized and reported.
    pub fn from_json(text: &str) -> Result<ParsedArrangement> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            hyperplanes: Vec<RawH>,
        }
        #[derive(Deserialize)]
        struct RawH {
            a: Vec<i64>,
            b: i64,
        }
        let raw: Raw = serde_json::from_str(text)
            .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        let mut warnings = Vec::new();
        let mut hs = Vec::new();
        for (i, h) in raw.hyperplanes.into_iter().enumerate() {
            let line = nth_key_line(text, i);
            if h.a.len() != raw.dim {
                return Err(Error::Parse {
                    line,
                    message: format!("hyperplane {i} has {} coefficients, expected {}", h.a.len(), raw.dim),
                });
            }
            let (c, scaled) = Hyperplane::canonical(h.a, h.b)
                .map_err(|e| Error::Parse { line, message: e.to_string() })?;
            if scaled {
                warnings.push(format!("line {line}: hyperplane {i} rescaled to {c}"));
            }
            hs.push(c);
        }
        for w in &warnings {
            log::warn!("{w}");
        }
        Ok(ParsedArrangement { arrangement: Self::new(raw.dim, hs)?, warnings })
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} hyperplanes in dimension {}", self.len(), self.dim)?;
        for h in &self.hyperplanes {
            writeln!(f, "  {h}")?;
        }
        Ok(())
    }
}

// Line of the i-th `"a"` key, for error messages.
fn nth_key_line(text: &str, i: usize) -> usize {
    text.match_indices("\"a\"")
        .nth(i)
        .map_or(1, |(pos, _)| text[..pos].matches('\n').count() + 1)
}

pub struct ParsedArrangement {
    pub arrangement: Arrangement,
    pub warnings: Vec<String>,
}

/// Restriction together with the coordinate change `x = base + L t`, where
/// `base = base_numerator * b / base_denominator` for the restricting
/// hyperplane `a . x = b`.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub arrangement: Arrangement,
    pub base_numerator: Vec<i64>,
    pub base_denominator: i64,
    pub basis: Vec<Vec<i64>>,
    /// For each hyperplane of the original arrangement, the index of its
    /// image (`None` for the restricting hyperplane and parallel ones).
    pub images: Vec<Option<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cox_b2() -> Arrangement {
        Arrangement::from_pairs(2, [(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, 1], 0), (vec![1, -1], 0)]).unwrap()
    }

    #[test]
    fn canonical_form_divides_common_factor() {
        let (h, scaled) = Hyperplane::canonical(vec![2, 2], 2).unwrap();
        assert!(scaled);
        assert_eq!(h, Hyperplane::new(vec![1, 1], 1).unwrap());
        assert_eq!(Hyperplane::new(vec![-1, 2], 3).unwrap(), Hyperplane::new(vec![1, -2], -3).unwrap());
        assert_eq!(Hyperplane::new(vec![0, 0], 1), Err(Error::ZeroNormal));
    }

    #[test]
    fn restricting_cox_b2_to_a_mirror() {
        let a = cox_b2();
        let h = Hyperplane::new(vec![1, -1], 0).unwrap();
        let r = a.restrict(&h).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r, Arrangement::from_pairs(1, [(vec![1], 0)]).unwrap());
    }

    #[test]
    fn restriction_drops_parallels_and_keeps_rational_offsets() {
        let a = Arrangement::from_pairs(2, [(vec![1, -1], 0), (vec![1, -1], 1), (vec![1, 1], 1)]).unwrap();
        let r = a.restrict_with_map(&Hyperplane::new(vec![1, -1], 0).unwrap()).unwrap();
        assert_eq!(r.arrangement.len(), 1);
        // x1 = x2 = t, so 2t = 1.
        assert_eq!(r.arrangement.hyperplanes()[0], Hyperplane::new(vec![2], 1).unwrap());
        assert_eq!(r.images.iter().filter(|i| i.is_some()).count(), 1);
    }

    #[test]
    fn cone_and_delete() {
        let a = Arrangement::from_pairs(1, [(vec![1], 0), (vec![1], 1)]).unwrap();
        let c = a.cone();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.len(), 3);
        assert!(c.is_central());
        assert!(c.cone_tag().is_some());
        let h = Hyperplane::new(vec![1], 1).unwrap();
        assert_eq!(a.delete(&h).unwrap().cone(), c.delete(&Hyperplane::new(vec![1, -1], 0).unwrap()).unwrap());
        assert!(matches!(a.delete(&Hyperplane::new(vec![1], 5).unwrap()), Err(Error::HyperplaneNotInArrangement(_))));
    }

    #[test]
    fn essentialize_drops_unused_directions() {
        let a = Arrangement::from_pairs(3, [(vec![1, -1, 0], 0), (vec![0, 1, -1], 0), (vec![1, 0, -1], 0)]).unwrap();
        let (e, u) = a.essentialize().unwrap();
        assert_eq!(e.dim(), 2);
        assert_eq!(e.len(), 3);
        assert_eq!(u.len(), 3);
        assert_eq!(a.rank().unwrap(), 2);
    }

    #[test]
    fn localize_checks_membership() {
        let a = cox_b2();
        let origin = Flat::ambient(2).meet(&a.hyperplanes()[0]).unwrap().unwrap();
        let origin = origin.meet(&a.hyperplanes()[1]).unwrap().unwrap();
        assert_eq!(a.localize(&origin).unwrap(), a);
        let line = Flat::ambient(2).meet(&Hyperplane::new(vec![1, 2], 0).unwrap()).unwrap().unwrap();
        assert_eq!(a.localize(&line), Err(Error::FlatNotInPoset));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let a = cox_b2();
        let back = Arrangement::from_json(&a.to_json()).unwrap();
        assert_eq!(back.arrangement, a);
        assert!(back.warnings.is_empty());
        let text = "{\"dim\": 2,\n \"hyperplanes\": [\n {\"a\": [2, 2], \"b\": 2}\n]}";
        let p = Arrangement::from_json(text).unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.arrangement.hyperplanes()[0], Hyperplane::new(vec![1, 1], 1).unwrap());
        let bad = "{\"dim\": 2,\n \"hyperplanes\": [\n {\"a\": [1], \"b\": 0}\n]}";
        assert!(matches!(Arrangement::from_json(bad), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(Arrangement::from_json("{\"dim\": 2,\n"), Err(Error::Parse { .. })));
    }
}
