//! Levi-Civita connection of a coordinate metric.

use crate::error::Result;
use crate::symexpr::{ScalarExpr, Verdict, ZeroPolicy};
use crate::verify::all_zero;

use super::chart::{same_chart, ChartRef};
use super::fields::{frame, EndoTM, MetricField, OneForm, TwoForm, VectorField};
use super::mat::Mat;
use super::ops::lie_bracket;

#[derive(Clone, Debug)]
pub struct LeviCivita {
    metric: MetricField,
    inv: Mat,
    /// `gamma[k][(i, j)] = Γᵏᵢⱼ`.
    gamma: Vec<Mat>,
}

impl LeviCivita {
    pub fn new(metric: &MetricField) -> Result<Self> {
        let c = metric.chart();
        let n = c.dim();
        let g = metric.matrix();
        let inv = metric.inverse()?;
        let dg: Vec<Mat> = (0..n).map(|l| g.map(|e| c.d(e, l))).collect();
        // first kind: [ij, l] = ½(∂ᵢg_jl + ∂ⱼg_il − ∂ₗg_ij)
        let half = ScalarExpr::rational(1, 2);
        let first: Vec<Mat> = (0..n)
            .map(|l| Mat::from_fn(n, n, |i, j| (&dg[i][(j, l)] + &dg[j][(i, l)] - &dg[l][(i, j)]) * &half))
            .collect();
        let gamma = (0..n)
            .map(|k| {
                Mat::from_fn(n, n, |i, j| {
                    let mut acc = ScalarExpr::zero();
                    for (l, fl) in first.iter().enumerate() {
                        let a = &inv[(k, l)];
                        if !a.is_zero() && !fl[(i, j)].is_zero() {
                            acc = acc + a * &fl[(i, j)];
                        }
                    }
                    acc
                })
            })
            .collect();
        Ok(LeviCivita { metric: metric.clone(), inv, gamma })
    }

    pub fn chart(&self) -> &ChartRef {
        self.metric.chart()
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    pub fn inverse_metric(&self) -> &Mat {
        &self.inv
    }

    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &ScalarExpr {
        &self.gamma[k][(i, j)]
    }

    /// `(∇_X Y)ᵏ = X(Yᵏ) + Γᵏᵢⱼ XⁱYʲ`.
    pub fn cov_vector(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        same_chart(self.chart(), x.chart())?;
        same_chart(self.chart(), y.chart())?;
        let n = self.chart().dim();
        let comps = (0..n)
            .map(|k| x.apply(y.comp(k)) + self.gamma[k].bilinear(x.comps(), y.comps()))
            .collect();
        VectorField::new(self.chart(), comps)
    }

    /// `(∇_X α)ⱼ = X(αⱼ) − Γᵏᵢⱼ Xⁱ αₖ`.
    pub fn cov_form(&self, x: &VectorField, a: &OneForm) -> Result<OneForm> {
        same_chart(self.chart(), x.chart())?;
        same_chart(self.chart(), a.chart())?;
        let n = self.chart().dim();
        let gx = self.contract_x(x);
        let comps = (0..n)
            .map(|j| {
                let mut acc = x.apply(a.comp(j));
                for (k, m) in gx.iter().enumerate() {
                    if !a.comp(k).is_zero() && !m[j].is_zero() {
                        acc = acc - &m[j] * a.comp(k);
                    }
                }
                acc
            })
            .collect();
        OneForm::new(self.chart(), comps)
    }

    /// `(Γ_X)ᵏⱼ = Γᵏᵢⱼ Xⁱ` as a list of rows indexed by `k`.
    fn contract_x(&self, x: &VectorField) -> Vec<Vec<ScalarExpr>> {
        self.gamma.iter().map(|g| g.vec_mul(x.comps())).collect()
    }

    fn gamma_x(&self, x: &VectorField) -> Mat {
        let rows = self.contract_x(x);
        let n = rows.len();
        Mat::from_fn(n, n, |k, j| rows[k][j].clone())
    }

    /// `∇_X F = X(F) + Γ_X F − F Γ_X`.
    pub fn cov_endo(&self, x: &VectorField, f: &EndoTM) -> Result<EndoTM> {
        same_chart(self.chart(), x.chart())?;
        same_chart(self.chart(), f.chart())?;
        let gx = self.gamma_x(x);
        let m = f.matrix();
        let dm = m.map(|e| x.apply(e));
        EndoTM::new(self.chart(), dm.add(&gx.mul(m)).sub(&m.mul(&gx)))
    }

    /// `∇_X B = X(B) − Γ_Xᵀ B − B Γ_X` for a bilinear form.
    pub fn cov_bilinear(&self, x: &VectorField, b: &Mat) -> Result<Mat> {
        same_chart(self.chart(), x.chart())?;
        let gx = self.gamma_x(x);
        let db = b.map(|e| x.apply(e));
        Ok(db.sub(&gx.transpose().mul(b)).sub(&b.mul(&gx)))
    }

    pub fn cov_two_form(&self, x: &VectorField, w: &TwoForm) -> Result<TwoForm> {
        same_chart(self.chart(), w.chart())?;
        Ok(TwoForm::raw(self.chart(), self.cov_bilinear(x, w.matrix())?))
    }

    /// `∇_X Y − ∇_Y X − [X, Y]` over the coordinate frame.
    pub fn check_torsion_free(&self, policy: &ZeroPolicy) -> Result<Verdict> {
        let e = frame(self.chart());
        let mut items = Vec::new();
        for i in 0..e.len() {
            for j in (i + 1)..e.len() {
                let t = self.cov_vector(&e[i], &e[j])?.sub(&self.cov_vector(&e[j], &e[i])?).sub(&lie_bracket(&e[i], &e[j])?);
                for (k, c) in t.comps().iter().enumerate() {
                    items.push((c.clone(), format!("torsion({i},{j})[{k}]")));
                }
            }
        }
        all_zero(items, policy)
    }

    /// `∇γ = 0` over the coordinate frame.
    pub fn check_metric(&self, policy: &ZeroPolicy) -> Result<Verdict> {
        let mut items = Vec::new();
        for (i, e) in frame(self.chart()).iter().enumerate() {
            let m = self.cov_bilinear(e, self.metric.matrix())?;
            for (a, b, c) in m.entries() {
                items.push((c.clone(), format!("nabla_{i} g[{a},{b}]")));
            }
        }
        all_zero(items, policy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Chart;
    use crate::symexpr::parse;

    #[test]
    fn polar_christoffels() {
        let c = Chart::new("polar", &["r", "th"]).unwrap();
        let g = MetricField::new(&c, Mat::from_rows(vec![
            vec![ScalarExpr::one(), ScalarExpr::zero()],
            vec![ScalarExpr::zero(), parse("r^2").unwrap()],
        ]).unwrap())
        .unwrap();
        let lc = LeviCivita::new(&g).unwrap();
        assert_eq!(*lc.christoffel(0, 1, 1), parse("-r").unwrap());
        assert_eq!(*lc.christoffel(1, 0, 1), parse("1/r").unwrap());
        let p = ZeroPolicy::default();
        assert!(lc.check_torsion_free(&p).unwrap().is_proved());
        assert!(lc.check_metric(&p).unwrap().is_proved());
    }
}
