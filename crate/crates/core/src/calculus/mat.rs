//! Dense matrices of scalar expressions.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{GgError, Result};
use crate::symexpr::{Coeff, ScalarExpr};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<ScalarExpr>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![ScalarExpr::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ScalarExpr::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ScalarExpr) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<ScalarExpr>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(GgError::Dimension("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ScalarExpr)> {
        self.data.iter().enumerate().map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }

    pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Mat {
        self.map(|e| -e)
    }

    pub fn scale(&self, k: &ScalarExpr) -> Mat {
        self.map(|e| e * k)
    }

    pub fn scale_c(&self, k: &Coeff) -> Mat {
        self.map(|e| e.scale(k))
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        Mat::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = ScalarExpr::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let b = &o[(k, j)];
                if !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[ScalarExpr]) -> Vec<ScalarExpr> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = ScalarExpr::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    /// `vᵀ M`.
    pub fn vec_mul(&self, v: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.transpose().mul_vec(v)
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[ScalarExpr], v: &[ScalarExpr]) -> ScalarExpr {
        dot(u, &self.mul_vec(v))
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.data.iter().all(ScalarExpr::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<ScalarExpr> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<ScalarExpr> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn set_column(&mut self, j: usize, v: &[ScalarExpr]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    /// Submatrix `[r0, r0+h) × [c0, c0+w)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Mat {
        Mat::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn from_blocks(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        let (n1, m1) = (a.rows, a.cols);
        Mat::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < n1, j < m1) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - m1)].clone(),
            (false, true) => c[(i - n1, j)].clone(),
            (false, false) => d[(i - n1, j - m1)].clone(),
        })
    }

    /// `u vᵀ`.
    pub fn outer(u: &[ScalarExpr], v: &[ScalarExpr]) -> Mat {
        Mat::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }

    /// Gauss–Jordan inverse; pivots on the first entry whose canonical form is
    /// nonzero, so a `None` here means the matrix is singular as a matrix of
    /// rational functions.
    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[(r, col)].is_zero())
                .min_by_key(|&r| a[(r, col)].size())?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p_inv = a[(col, col)].inv()?;
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &p_inv;
                inv[(col, j)] = &inv[(col, j)] * &p_inv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &a[(col, j)] * &f;
                    if !t.is_zero() {
                        a[(r, j)] = &a[(r, j)] - &t;
                    }
                    let t = &inv[(col, j)] * &f;
                    if !t.is_zero() {
                        inv[(r, j)] = &inv[(r, j)] - &t;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Determinant by fraction-free cofactor expansion on small sizes and
    /// elimination otherwise.
    pub fn det(&self) -> ScalarExpr {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => ScalarExpr::one(),
            1 => self[(0, 0)].clone(),
            2 => &self[(0, 0)] * &self[(1, 1)] - &self[(0, 1)] * &self[(1, 0)],
            _ => {
                let mut acc = ScalarExpr::zero();
                for j in 0..n {
                    let a = &self[(0, j)];
                    if a.is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let term = a * &minor.det();
                    acc = if j % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    pub fn minor(&self, r: usize, c: usize) -> Mat {
        Mat::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            self[(if i < r { i } else { i + 1 }, if j < c { j } else { j + 1 })].clone()
        })
    }
}

pub fn dot(u: &[ScalarExpr], v: &[ScalarExpr]) -> ScalarExpr {
    assert_eq!(u.len(), v.len(), "dot product shape");
    let mut acc = ScalarExpr::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc.add(&a.mul(b));
        }
    }
    acc
}

pub fn vec_add(u: &[ScalarExpr], v: &[ScalarExpr]) -> Vec<ScalarExpr> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(u: &[ScalarExpr], v: &[ScalarExpr]) -> Vec<ScalarExpr> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(u: &[ScalarExpr], k: &ScalarExpr) -> Vec<ScalarExpr> {
    u.iter().map(|a| a * k).collect()
}

impl Index<(usize, usize)> for Mat {
    type Output = ScalarExpr;
    fn index(&self, (i, j): (usize, usize)) -> &ScalarExpr {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ScalarExpr {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    fn m(rows: &[&[&str]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|s| parse(s).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_of_symbolic_matrix() {
        let a = m(&[&["exp(z)", "y"], &["0", "1 + x^2"]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(&[&["x", "y"], &["2*x", "2*y"]]).inverse().is_none());
    }

    #[test]
    fn determinant_matches_inverse() {
        let a = m(&[&["1", "x", "0"], &["0", "1", "y"], &["z", "0", "1"]]);
        assert_eq!(a.det(), parse("1 + x*y*z").unwrap());
    }
}
