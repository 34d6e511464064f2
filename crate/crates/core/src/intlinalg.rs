//! Exact integer matrices, Smith normal form and linear Diophantine systems.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Convenience constructor for small literal matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(cols, &v).expect("ragged literal matrix")
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let e = self.get(r, c);
                if !e.is_zero() {
                    *o += x * e;
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column count".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row count".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.get(b, c);
            if !v.is_zero() {
                let d = k * v;
                self.data[a * self.cols + c] += d;
            }
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = self.get(r, b);
            if !v.is_zero() {
                let d = k * v;
                self.data[r * self.cols + a] += d;
            }
        }
    }

    fn negate_row(&mut self, a: usize) {
        for c in 0..self.cols {
            let i = a * self.cols + c;
            self.data[i] = -std::mem::take(&mut self.data[i]);
        }
    }

    fn negate_col(&mut self, a: usize) {
        for r in 0..self.rows {
            let i = r * self.cols + a;
            self.data[i] = -std::mem::take(&mut self.data[i]);
        }
    }
}

/// Result of [`smith_normal_form`]: `d = s * u * t` with `s`, `t` unimodular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDecomposition {
    pub s: IntMatrix,
    pub d: IntMatrix,
    pub t: IntMatrix,
    pub s_inv: IntMatrix,
    pub t_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries d_11, d_22, ... (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Rounded quotient, so the remainder has absolute value at most |b|/2.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    let twice = &r * 2;
    if b.is_positive() {
        if twice > *b {
            q + 1
        } else {
            q
        }
    } else if twice < *b {
        q + 1
    } else {
        q
    }
}

struct Reducer {
    d: IntMatrix,
    s: IntMatrix,
    s_inv: IntMatrix,
    t: IntMatrix,
    t_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.s.swap_rows(a, b);
        self.s_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.t.swap_cols(a, b);
        self.t_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        self.d.add_row(a, b, k);
        self.s.add_row(a, b, k);
        self.s_inv.add_col(b, a, &-k);
    }

    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        self.d.add_col(a, b, k);
        self.t.add_col(a, b, k);
        self.t_inv.add_row(b, a, &-k);
    }

    fn negate_row(&mut self, a: usize) {
        self.d.negate_row(a);
        self.s.negate_row(a);
        self.s_inv.negate_col(a);
    }

    /// Position of the nonzero entry of least absolute value in the lower right
    /// block starting at (t, t); ties broken by row-major order.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in t..self.d.rows() {
            for c in t..self.d.cols() {
                let v = self.d.get(r, c);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    let one = a.is_one();
                    best = Some((r, c, a));
                    if one {
                        let (r, c, _) = best.unwrap();
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }
}

/// Smith normal form with transformation matrices and their inverses.
///
/// The reduction order is fixed, so equal inputs produce equal outputs.
pub fn smith_normal_form(u: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (u.rows(), u.cols());
    let mut st = Reducer {
        d: u.clone(),
        s: IntMatrix::identity(m),
        s_inv: IntMatrix::identity(m),
        t: IntMatrix::identity(n),
        t_inv: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        loop {
            let Some((pr, pc)) = st.min_pivot(t) else {
                break;
            };
            st.swap_rows(t, pr);
            st.swap_cols(t, pc);
            let p = st.d.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..m {
                let v = st.d.get(r, t);
                if v.is_zero() {
                    continue;
                }
                let q = round_div(v, &p);
                if !q.is_zero() {
                    st.add_row(r, t, &-q);
                }
                if !st.d.get(r, t).is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                let v = st.d.get(t, c);
                if v.is_zero() {
                    continue;
                }
                let q = round_div(v, &p);
                if !q.is_zero() {
                    st.add_col(c, t, &-q);
                }
                if !st.d.get(t, c).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&r| {
                (t + 1..n).any(|c| !st.d.get(r, c).is_multiple_of(&p))
            });
            match bad {
                Some(r) => st.add_row(t, r, &BigInt::one()),
                None => break,
            }
        }
        if st.d.get(t, t).is_negative() {
            st.negate_row(t);
        }
        if st.d.get(t, t).is_zero() {
            break;
        }
    }
    SnfDecomposition { s: st.s, d: st.d, t: st.t, s_inv: st.s_inv, t_inv: st.t_inv }
}

/// Solutions of `a x = b` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// A particular solution, if one exists.
    pub particular: Option<Vec<BigInt>>,
    /// A basis of the integer kernel of `a`.
    pub kernel: Vec<Vec<BigInt>>,
}

/// Integer solutions of `a x = b`, from a precomputed decomposition of `a`.
pub fn solve_with(snf: &SnfDecomposition, b: &[BigInt]) -> Result<LinearSolution> {
    let (m, n) = (snf.d.rows(), snf.d.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            m
        )));
    }
    let c = snf.s.mul_vec(b)?;
    let diag = snf.diagonal();
    let rank = snf.rank();
    let mut y = vec![BigInt::zero(); n];
    let mut ok = c[rank..].iter().all(Zero::is_zero);
    if ok {
        for i in 0..rank {
            let (q, r) = c[i].div_rem(&diag[i]);
            if !r.is_zero() {
                ok = false;
                break;
            }
            y[i] = q;
        }
    }
    let particular = if ok { Some(snf.t.mul_vec(&y)?) } else { None };
    let kernel = (rank..n).map(|i| snf.t.column(i)).collect();
    Ok(LinearSolution { particular, kernel })
}

/// Integer solutions of `a x = b`.
///
/// The particular solution has all free coordinates (in the Smith basis) set
/// to zero, which makes it deterministic.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    solve_with(&smith_normal_form(a), b)
}

/// Basis of the integer kernel of `a` (column vectors `x` with `a x = 0`).
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols()).map(|i| snf.t.column(i)).collect()
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(u: &IntMatrix) {
        let f = smith_normal_form(u);
        assert_eq!(f.s.mul(u).unwrap().mul(&f.t).unwrap(), f.d);
        assert_eq!(f.s.mul(&f.s_inv).unwrap(), IntMatrix::identity(u.rows()));
        assert_eq!(f.t.mul(&f.t_inv).unwrap(), IntMatrix::identity(u.cols()));
        let diag = f.diagonal();
        for r in 0..u.rows() {
            for c in 0..u.cols() {
                if r != c {
                    assert!(f.d.get(r, c).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let f = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(f.d, IntMatrix::identity(2));
        assert_eq!(f.s, IntMatrix::identity(2));
        assert_eq!(f.t, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two() {
        let u = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let f = smith_normal_form(&u);
        assert_eq!(f.diagonal(), to_bigints(&[2, 4]));
        check(&u);
    }

    #[test]
    fn zero_and_empty() {
        let z = IntMatrix::zeros(3, 2);
        let f = smith_normal_form(&z);
        assert!(f.d.is_zero());
        check(&z);
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(4, 0));
        check(&IntMatrix::zeros(0, 0));
    }

    #[test]
    fn divisibility_repair() {
        let u = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let f = smith_normal_form(&u);
        assert_eq!(f.diagonal(), to_bigints(&[1, 6]));
        check(&u);
        let u = IntMatrix::from_i64(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        assert_eq!(smith_normal_form(&u).diagonal(), to_bigints(&[1, 3, 21, 0]));
        check(&u);
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_i64(&[&[2]]);
        let s = solve_linear(&a, &to_bigints(&[4])).unwrap();
        assert_eq!(s.particular, Some(to_bigints(&[2])));
        assert!(s.kernel.is_empty());
        assert_eq!(solve_linear(&a, &to_bigints(&[3])).unwrap().particular, None);
        let a = IntMatrix::from_i64(&[&[1, 1]]);
        let s = solve_linear(&a, &to_bigints(&[0])).unwrap();
        assert_eq!(s.kernel.len(), 1);
        let k = &s.kernel[0];
        assert_eq!(&k[0] + &k[1], BigInt::zero());
        assert!(k[0].abs().is_one());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = IntMatrix::from_i64(&[&[1, 1]]);
        assert!(matches!(
            solve_linear(&a, &to_bigints(&[1, 2])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinant_small() {
        let u = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(u.determinant().unwrap(), BigInt::from(-8));
        let u = IntMatrix::from_i64(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]);
        assert_eq!(u.determinant().unwrap(), BigInt::from(-3));
    }
}
