//! Bracket, exterior derivative, wedge and Lie derivatives.

use crate::error::Result;
use crate::symexpr::ScalarExpr;

use super::chart::{same_chart, ChartRef};
use super::fields::{EndoTM, MetricField, OneForm, ThreeForm, TwoForm, VectorField};
use super::mat::Mat;

/// `[X, Y]ⁱ = X(Yⁱ) − Y(Xⁱ)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(x.chart(), y.chart())?;
    let comps = (0..x.chart().dim()).map(|i| x.apply(y.comp(i)) - y.apply(x.comp(i))).collect();
    Ok(VectorField::raw(x.chart(), comps))
}

/// `df`; symbols foreign to the chart are treated as constants.
pub fn d_scalar(chart: &ChartRef, f: &ScalarExpr) -> OneForm {
    OneForm::raw(chart, (0..chart.dim()).map(|i| chart.d(f, i)).collect())
}

pub trait ExtD {
    type Output;
    fn ext_d(&self) -> Self::Output;
}

impl ExtD for OneForm {
    type Output = TwoForm;
    fn ext_d(&self) -> TwoForm {
        let c = self.chart();
        let n = c.dim();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let v = c.d(self.comp(j), i) - c.d(self.comp(i), j);
                m[(j, i)] = -&v;
                m[(i, j)] = v;
            }
        }
        TwoForm::raw(c, m)
    }
}

impl ExtD for TwoForm {
    type Output = ThreeForm;
    fn ext_d(&self) -> ThreeForm {
        let c = self.chart();
        let w = self.matrix();
        ThreeForm::from_fn(c, |i, j, k| c.d(&w[(j, k)], i) + c.d(&w[(k, i)], j) + c.d(&w[(i, j)], k))
    }
}

pub fn ext_d<T: ExtD>(t: &T) -> T::Output {
    t.ext_d()
}

/// `α ∧ β (X, Y) = α(X)β(Y) − α(Y)β(X)`.
pub fn wedge(a: &OneForm, b: &OneForm) -> Result<TwoForm> {
    same_chart(a.chart(), b.chart())?;
    let n = a.chart().dim();
    let m = Mat::from_fn(n, n, |i, j| a.comp(i) * b.comp(j) - a.comp(j) * b.comp(i));
    Ok(TwoForm::raw(a.chart(), m))
}

/// `α ∧ ω` as a 3-form.
pub fn wedge_1_2(a: &OneForm, w: &TwoForm) -> Result<ThreeForm> {
    same_chart(a.chart(), w.chart())?;
    let m = w.matrix();
    Ok(ThreeForm::from_fn(a.chart(), |i, j, k| {
        a.comp(i) * &m[(j, k)] + a.comp(j) * &m[(k, i)] + a.comp(k) * &m[(i, j)]
    }))
}

pub trait LieDerivative: Sized {
    fn lie_along(&self, x: &VectorField) -> Result<Self>;
}

pub fn lie_derivative<T: LieDerivative>(x: &VectorField, t: &T) -> Result<T> {
    t.lie_along(x)
}

impl LieDerivative for VectorField {
    fn lie_along(&self, x: &VectorField) -> Result<Self> {
        lie_bracket(x, self)
    }
}

impl LieDerivative for ScalarExpr {
    fn lie_along(&self, x: &VectorField) -> Result<Self> {
        Ok(x.apply(self))
    }
}

/// Jacobian `∂ⱼXⁱ`.
fn jacobian(x: &VectorField) -> Mat {
    let c = x.chart();
    let n = c.dim();
    Mat::from_fn(n, n, |i, j| c.d(x.comp(i), j))
}

impl LieDerivative for OneForm {
    fn lie_along(&self, x: &VectorField) -> Result<Self> {
        same_chart(self.chart(), x.chart())?;
        let jac = jacobian(x);
        let tail = jac.vec_mul(self.comps());
        let comps = (0..self.chart().dim()).map(|j| x.apply(self.comp(j)) + &tail[j]).collect();
        Ok(OneForm::raw(self.chart(), comps))
    }
}

/// `(L_X B)_jk = X(B_jk) + B_ik ∂ⱼXⁱ + B_ji ∂ₖXⁱ`.
fn lie_bilinear(b: &Mat, x: &VectorField) -> Mat {
    let jac = jacobian(x);
    let t = jac.transpose().mul(b);
    let u = b.mul(&jac);
    Mat::from_fn(b.rows(), b.cols(), |j, k| x.apply(&b[(j, k)]) + &t[(j, k)] + &u[(j, k)])
}

impl LieDerivative for TwoForm {
    fn lie_along(&self, x: &VectorField) -> Result<Self> {
        same_chart(self.chart(), x.chart())?;
        Ok(TwoForm::raw(self.chart(), lie_bilinear(self.matrix(), x)))
    }
}

impl LieDerivative for MetricField {
    fn lie_along(&self, x: &VectorField) -> Result<Self> {
        same_chart(self.chart(), x.chart())?;
        Ok(MetricField::raw(self.chart(), lie_bilinear(self.matrix(), x)))
    }
}

impl LieDerivative for EndoTM {
    /// `(L_X F)ⁱⱼ = X(Fⁱⱼ) − Fᵏⱼ∂ₖXⁱ + Fⁱₖ∂ⱼXᵏ`.
    fn lie_along(&self, x: &VectorField) -> Result<Self> {
        same_chart(self.chart(), x.chart())?;
        let f = self.matrix();
        let jac = jacobian(x);
        let a = jac.mul(f);
        let b = f.mul(&jac);
        let m = Mat::from_fn(f.rows(), f.cols(), |i, j| x.apply(&f[(i, j)]) - &a[(i, j)] + &b[(i, j)]);
        Ok(EndoTM::raw(self.chart(), m))
    }
}

/// `Ω(X, Y, U)` for a 3-form by interior products.
pub fn interior2(w: &ThreeForm, x: &VectorField, y: &VectorField) -> Result<OneForm> {
    same_chart(w.chart(), x.chart())?;
    same_chart(w.chart(), y.chart())?;
    Ok(w.interior(x).interior(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{frame, Chart};
    use crate::symexpr::parse;

    fn p(s: &str) -> ScalarExpr {
        parse(s).unwrap()
    }

    #[test]
    fn dd_is_zero() {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let f = p("x^2*y + exp(z)*sin(x)");
        let a = d_scalar(&c, &f);
        assert!(a.ext_d().is_syntactically_zero());
        let b = OneForm::new(&c, vec![p("y*z"), p("x^3"), p("exp(x*y)")]).unwrap();
        assert!(b.ext_d().ext_d().is_syntactically_zero());
    }

    #[test]
    fn cartan_formula_on_one_forms() {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let x = VectorField::new(&c, vec![p("y"), p("x*z"), p("1")]).unwrap();
        let a = OneForm::new(&c, vec![p("z^2"), p("x"), p("x*y")]).unwrap();
        let lhs = a.lie_along(&x).unwrap();
        let rhs = d_scalar(&c, &a.eval(&x)).add(&a.ext_d().interior(&x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_of_frame_vanishes() {
        let c = Chart::new("R2", &["u", "v"]).unwrap();
        let e = frame(&c);
        assert!(lie_bracket(&e[0], &e[1]).unwrap().is_syntactically_zero());
    }

    #[test]
    fn charts_must_agree() {
        let a = Chart::new("A", &["x"]).unwrap();
        let b = Chart::new("B", &["y"]).unwrap();
        assert!(lie_bracket(&VectorField::basis(&a, 0), &VectorField::basis(&b, 0)).is_err());
    }
}
