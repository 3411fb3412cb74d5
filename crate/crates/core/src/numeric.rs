//! Floating-point evaluation of symbolic matrices at sample points.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::calculus::{ChartRef, Mat};
use crate::error::{GgError, Result};
use crate::symexpr::{sample_points, ExactPoint, Verdict, Witness, ZeroPolicy};

pub fn to_f64_point(p: &ExactPoint) -> BTreeMap<Arc<str>, f64> {
    p.iter()
        .map(|(k, v)| {
            let f = crate::symexpr::Coeff::real(v.clone()).to_complex64().re;
            (k.clone(), f)
        })
        .collect()
}

/// Evaluate every entry; `None` at a pole.
pub fn eval_mat(m: &Mat, point: &BTreeMap<Arc<str>, f64>) -> Option<DMatrix<Complex64>> {
    let mut out = DMatrix::from_element(m.rows(), m.cols(), Complex64::new(0.0, 0.0));
    for (i, j, e) in m.entries() {
        if e.is_zero() {
            continue;
        }
        let (v, _) = e.eval_complex(point).ok()?;
        if !v.re.is_finite() || !v.im.is_finite() {
            return None;
        }
        out[(i, j)] = v;
    }
    Some(out)
}

fn point_strings(p: &ExactPoint) -> BTreeMap<String, String> {
    p.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Sample points of a chart that avoid poles of `m`.
pub fn good_points(chart: &ChartRef, m: &Mat, policy: &ZeroPolicy, count: usize) -> Result<Vec<(ExactPoint, DMatrix<Complex64>)>> {
    let budget = count * policy.max_passes.max(1) as usize;
    let pts = sample_points(chart.coords(), policy.seed, budget);
    let mut out = Vec::with_capacity(count);
    for p in pts {
        if let Some(v) = eval_mat(m, &to_f64_point(&p)) {
            out.push((p, v));
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(GgError::ZeroTest(crate::symexpr::ZeroTestError::PolesExhausted {
        context: "matrix sampling".into(),
        attempts: budget,
    }))
}

/// Symmetric real part, eigenvalues ascending.
fn sym_eigen(m: &DMatrix<Complex64>) -> Vec<f64> {
    let re = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| 0.5 * (m[(i, j)].re + m[(j, i)].re));
    let mut ev: Vec<f64> = SymmetricEigen::new(re).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Positive definiteness of a symmetric matrix at `count` sample points.
pub fn check_positive(chart: &ChartRef, m: &Mat, policy: &ZeroPolicy, count: usize, ctx: &str) -> Result<Verdict> {
    for (p, v) in good_points(chart, m, policy, count)? {
        let ev = sym_eigen(&v);
        let scale = ev.iter().fold(1.0f64, |a, b| a.max(b.abs()));
        if ev[0] <= policy.tol * scale {
            return Ok(Verdict::Failed(Box::new(Witness {
                point: point_strings(&p),
                value: format!("min eigenvalue {:e}", ev[0]),
                context: ctx.to_string(),
            })));
        }
    }
    Ok(Verdict::NumericallySupported)
}

/// Numerical rank via singular values.
pub fn rank(m: &DMatrix<Complex64>, tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().fold(0.0f64, |a, b| a.max(*b));
    sv.iter().filter(|s| **s > tol.max(1e-12) * top.max(1.0)).count()
}

/// Orthonormal basis of the kernel (columns).
pub fn kernel(m: &DMatrix<Complex64>, tol: f64) -> DMatrix<Complex64> {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested v_t");
    let top = svd.singular_values.iter().fold(0.0f64, |a, b| a.max(*b));
    let cut = tol.max(1e-12) * top.max(1.0);
    let mut cols = Vec::new();
    for k in 0..vt.nrows() {
        let s = if k < svd.singular_values.len() { svd.singular_values[k] } else { 0.0 };
        if s <= cut {
            cols.push(vt.row(k).adjoint());
        }
    }
    if cols.is_empty() {
        return DMatrix::zeros(n, 0);
    }
    DMatrix::from_columns(&cols)
}

/// Number of negative eigenvalues of the Hermitian form `Kᴴ B K`.
pub fn negative_index(b: &DMatrix<Complex64>, k: &DMatrix<Complex64>, tol: f64) -> usize {
    if k.ncols() == 0 {
        return 0;
    }
    let r = k.adjoint() * b * k;
    let h = DMatrix::from_fn(r.nrows(), r.ncols(), |i, j| 0.5 * (r[(i, j)] + r[(j, i)].conj()));
    // Hermitian form as a real symmetric matrix of twice the size
    let n = h.nrows();
    let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (a, b) = (i % n, j % n);
        let z = h[(a, b)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let ev = SymmetricEigen::new(real).eigenvalues;
    let scale = ev.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    ev.iter().filter(|e| **e < -tol.max(1e-12) * scale).count() / 2
}
