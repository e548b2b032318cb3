//! Exact linear algebra over Q and Z.
//!
//! Two layers live here. [`RationalMatrix`] and [`IntMatrix`] are the
//! arbitrary-precision reference implementations (row reduction, Smith normal
//! form). [`IntEchelon`] is the fraction-free echelon form used on the hot
//! paths: rows are kept primitive over `i128` and every operation is checked,
//! so an overflow surfaces as [`Error::Overflow`] instead of a wrong answer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poset::Flat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_int_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let q: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(&q)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|x| x.clone().into()).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    /// Submatrix on the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: self.rows, cols: cols.len(), data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    // row[dst] -= f * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            *self.at(dst, j) -= v;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            *self.at(i, dst) -= v;
        }
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Bring the smallest nonzero entry of the trailing block to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = a.get(i, j);
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(diag);
            };
            a.swap_rows(t, bi);
            a.swap_cols(t, bj);
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    a.row_axpy(i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    a.col_axpy(j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the whole trailing block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => a.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    finish_snf(diag)
}

fn finish_snf(mut diag: Vec<BigInt>) -> Vec<BigInt> {
    diag.sort();
    diag
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

fn checked_axpy(a: i128, x: i128, b: i128, y: i128) -> Result<i128> {
    // a*x - b*y
    let l = a.checked_mul(x).ok_or(Error::Overflow)?;
    let r = b.checked_mul(y).ok_or(Error::Overflow)?;
    l.checked_sub(r).ok_or(Error::Overflow)
}

/// Divide a row by the gcd of its entries. Returns false for the zero row.
pub fn make_primitive(v: &mut [i128]) -> bool {
    let g = v.iter().fold(0i128, |g, &x| gcd_i128(g, x));
    if g == 0 {
        return false;
    }
    if g != 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    true
}

fn leading(v: &[i128]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// Canonical reduced echelon form over Z.
///
/// Every row is the corresponding row of the rational RREF scaled to a
/// primitive integer vector with positive pivot, so equality of two
/// `IntEchelon`s is equality of row spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntEchelon {
    cols: usize,
    rows: Vec<Vec<i128>>,
}

impl IntEchelon {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| leading(r).expect("zero row in echelon")).collect()
    }

    /// Reduce `v` modulo the row space, leaving it primitive (or zero).
    pub fn reduce(&self, v: &mut [i128]) -> Result<()> {
        debug_assert_eq!(v.len(), self.cols);
        for r in &self.rows {
            let p = leading(r).expect("zero row in echelon");
            let c = v[p];
            if c == 0 {
                continue;
            }
            let a = r[p];
            for j in 0..self.cols {
                v[j] = checked_axpy(a, v[j], c, r[j])?;
            }
            make_primitive(v);
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i128]) -> Result<bool> {
        let mut w = v.to_vec();
        self.reduce(&mut w)?;
        Ok(w.iter().all(|&x| x == 0))
    }

    /// Add a row. Returns its pivot column, or `None` if it was dependent.
    pub fn insert(&mut self, v: &[i128]) -> Result<Option<usize>> {
        let mut v = v.to_vec();
        self.reduce(&mut v)?;
        if !make_primitive(&mut v) {
            return Ok(None);
        }
        let p = leading(&v).unwrap();
        if v[p] < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let a = v[p];
        for r in &mut self.rows {
            let c = r[p];
            if c != 0 {
                for j in 0..self.cols {
                    r[j] = checked_axpy(a, r[j], c, v[j])?;
                }
                make_primitive(r);
            }
        }
        let pos = self.rows.iter().position(|r| leading(r).unwrap() > p).unwrap_or(self.rows.len());
        self.rows.insert(pos, v);
        Ok(Some(p))
    }
}

/// Solve an affine system `a_i . x = b_i`; `None` if it is inconsistent.
pub fn affine_solve(equations: &[(Vec<i64>, i64)], dim: usize) -> Result<Option<Flat>> {
    let mut f = Flat::ambient(dim);
    for (a, b) in equations {
        if a.len() != dim {
            return Err(Error::DimMismatch { expected: dim, found: a.len() });
        }
        let row: Vec<i128> = a.iter().map(|&x| x as i128).chain([*b as i128]).collect();
        match f.meet_row(&row)? {
            Some(g) => f = g,
            None => return Ok(None),
        }
    }
    Ok(Some(f))
}

/// Integer points of `c . x = b` as `base + span_Z(basis)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeParam {
    pub base: Vec<i64>,
    pub basis: Vec<Vec<i64>>,
}

/// Unimodular `U` with `c U = e_1`, for primitive `c`. Columns of `U` are
/// returned as vectors.
fn unimodular_completion(c: &[i64]) -> Result<Vec<Vec<i64>>> {
    let n = c.len();
    let mut c: Vec<i128> = c.iter().map(|&x| x as i128).collect();
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..n).map(|i| i128::from(i == j)).collect())
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&j| c[j] != 0).collect();
        let Some(&i) = nz.iter().min_by_key(|&&j| (c[j].abs(), j)) else {
            return Err(Error::ZeroNormal);
        };
        if nz.len() == 1 {
            if c[i].abs() != 1 {
                return Err(Error::NonPrimitiveNormal(c.iter().map(|&x| x as i64).collect()));
            }
            if c[i] < 0 {
                cols[i].iter_mut().for_each(|x| *x = -*x);
            }
            let first = cols.remove(i);
            cols.insert(0, first);
            return cols
                .into_iter()
                .map(|col| col.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow)).collect())
                .collect();
        }
        for &j in &nz {
            if j == i {
                continue;
            }
            let q = Integer::div_floor(&c[j], &c[i]);
            c[j] -= q * c[i];
            let src = cols[i].clone();
            for (d, s) in cols[j].iter_mut().zip(src) {
                *d = d.checked_sub(q.checked_mul(s).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
        }
    }
}

/// Lattice parametrization of the hyperplane `c . x = b`, `c` primitive.
pub fn unimodular_parametrization(c: &[i64], b: i64) -> Result<LatticeParam> {
    let g = c.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroNormal);
    }
    if g != 1 {
        return Err(Error::NonPrimitiveNormal(c.to_vec()));
    }
    let mut cols = unimodular_completion(c)?;
    let u0 = cols.remove(0);
    let base = u0
        .iter()
        .map(|&x| x.checked_mul(b).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeParam { base, basis: cols })
}

/// Unimodular `U` (as columns) such that `N U` vanishes outside its first
/// `r` columns, where `N` has the given rows and `r` is its rank.
pub fn column_hermite(rows: &[Vec<i64>], n: usize) -> Result<(Vec<Vec<i64>>, usize)> {
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|j| (0..n).map(|i| i128::from(i == j)).collect())
        .collect();
    let mut work: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut col = 0;
    for ri in 0..work.len() {
        if col == n {
            break;
        }
        loop {
            let nz: Vec<usize> = (col..n).filter(|&j| work[ri][j] != 0).collect();
            let Some(&i) = nz.iter().min_by_key(|&&j| (work[ri][j].abs(), j)) else {
                break;
            };
            if nz.len() == 1 {
                swap_columns(&mut work, &mut u, i, col);
                col += 1;
                break;
            }
            for &j in &nz {
                if j != i {
                    let q = Integer::div_floor(&work[ri][j], &work[ri][i]);
                    col_sub(&mut work, &mut u, j, i, q)?;
                }
            }
        }
    }
    let u = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| i64::try_from(u[i][j]).map_err(|_| Error::Overflow))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((u, col))
}

fn swap_columns(work: &mut [Vec<i128>], u: &mut [Vec<i128>], a: usize, b: usize) {
    for r in work.iter_mut().chain(u.iter_mut()) {
        r.swap(a, b);
    }
}

// column[dst] -= q * column[src]
fn col_sub(work: &mut [Vec<i128>], u: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Result<()> {
    for r in work.iter_mut().chain(u.iter_mut()) {
        let v = q.checked_mul(r[src]).ok_or(Error::Overflow)?;
        r[dst] = r[dst].checked_sub(v).ok_or(Error::Overflow)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_small_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![1i64, 1], vec![-1, 1]])), bi(&[1, 2]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 4]])), bi(&[2, 4]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]])), bi(&[1, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![0i64, 0], vec![0, 0]])), bi(&[]));
    }

    #[test]
    fn rref_of_dependent_rows() {
        let m = RationalMatrix::from_int_rows(&[vec![1i64, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r.get(0, 2), &BigRational::from_integer(1.into()));
        assert_eq!(r.get(1, 2), &BigRational::from_integer(1.into()));
        assert!(r.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = RationalMatrix::from_int_rows(&[vec![1i64, 1, 1, 0], vec![0, 1, -1, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            for i in 0..2 {
                let s: BigRational = (0..4).map(|j| m.get(i, j) * &v[j]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn echelon_matches_scaled_rref() {
        let rows = vec![vec![2i128, 4, 0, 6], vec![1, 3, 1, 0]];
        let mut e = IntEchelon::new(4);
        for r in &rows {
            e.insert(r).unwrap();
        }
        assert_eq!(e.rows(), &[vec![1, 0, -2, 9], vec![0, 1, 1, -3]]);
        assert!(e.contains(&[3, 5, -1, 12]).unwrap());
        assert!(!e.contains(&[0, 0, 1, 0]).unwrap());
        assert_eq!(e.insert(&[4, 8, 0, 12]).unwrap(), None);
    }

    #[test]
    fn affine_solve_detects_inconsistency() {
        let eqs = vec![(vec![1, 1], 1), (vec![1, 1], 2)];
        assert!(affine_solve(&eqs, 2).unwrap().is_none());
        let eqs = vec![(vec![1, -1], 0), (vec![1, 1], 2)];
        let f = affine_solve(&eqs, 2).unwrap().unwrap();
        assert_eq!(f.dim(), 0);
    }

    fn check_param(c: &[i64], b: i64) {
        let p = unimodular_parametrization(c, b).unwrap();
        let dot = |u: &[i64]| c.iter().zip(u).map(|(x, y)| x * y).sum::<i64>();
        assert_eq!(dot(&p.base), b);
        assert_eq!(p.basis.len(), c.len() - 1);
        for v in &p.basis {
            assert_eq!(dot(v), 0);
        }
    }

    #[test]
    fn parametrizations() {
        let p = unimodular_parametrization(&[1, 0], 0).unwrap();
        assert_eq!(p.base, vec![0, 0]);
        assert_eq!(p.basis, vec![vec![0, 1]]);
        let p = unimodular_parametrization(&[1, -1], 1).unwrap();
        assert_eq!(p.base, vec![1, 0]);
        assert_eq!(p.basis, vec![vec![1, 1]]);
        check_param(&[1, 1, 1], 0);
        check_param(&[6, 10, 15], 7);
        check_param(&[0, -3, 2], -4);
        assert_eq!(unimodular_parametrization(&[2, 4], 2), Err(Error::NonPrimitiveNormal(vec![2, 4])));
    }

    #[test]
    fn column_hermite_kills_trailing_columns() {
        let rows = vec![vec![1, 1, 0], vec![1, -1, 0], vec![2, 0, 0]];
        let (u, r) = column_hermite(&rows, 3).unwrap();
        assert_eq!(r, 2);
        for row in &rows {
            let last: i64 = (0..3).map(|i| row[i] * u[2][i]).sum();
            assert_eq!(last, 0);
        }
    }
}
