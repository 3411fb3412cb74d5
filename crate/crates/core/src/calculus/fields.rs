//! Tensor fields in coordinate-frame components.

use crate::error::{GgError, Result};
use crate::symexpr::ScalarExpr;

use super::chart::{same_chart, ChartRef};
use super::mat::{dot, vec_add, vec_scale, vec_sub, Mat};

fn check_len(chart: &ChartRef, len: usize, what: &str) -> Result<()> {
    if len != chart.dim() {
        return Err(GgError::Dimension(format!(
            "{what} has {len} components but chart {} has dimension {}",
            chart.name(),
            chart.dim()
        )));
    }
    Ok(())
}

fn check_square(chart: &ChartRef, m: &Mat, what: &str) -> Result<()> {
    if m.rows() != chart.dim() || m.cols() != chart.dim() {
        return Err(GgError::Dimension(format!(
            "{what} is {}x{} but chart {} has dimension {}",
            m.rows(),
            m.cols(),
            chart.name(),
            chart.dim()
        )));
    }
    Ok(())
}

macro_rules! vector_like {
    ($ty:ident, $what:literal) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $ty {
            chart: ChartRef,
            comps: Vec<ScalarExpr>,
        }

        impl $ty {
            pub fn new(chart: &ChartRef, comps: Vec<ScalarExpr>) -> Result<Self> {
                check_len(chart, comps.len(), $what)?;
                Ok($ty { chart: chart.clone(), comps })
            }

            pub(crate) fn raw(chart: &ChartRef, comps: Vec<ScalarExpr>) -> Self {
                debug_assert_eq!(comps.len(), chart.dim());
                $ty { chart: chart.clone(), comps }
            }

            pub fn zero(chart: &ChartRef) -> Self {
                $ty { chart: chart.clone(), comps: vec![ScalarExpr::zero(); chart.dim()] }
            }

            /// The `i`-th coordinate basis element.
            pub fn basis(chart: &ChartRef, i: usize) -> Self {
                let mut comps = vec![ScalarExpr::zero(); chart.dim()];
                comps[i] = ScalarExpr::one();
                $ty { chart: chart.clone(), comps }
            }

            pub fn chart(&self) -> &ChartRef {
                &self.chart
            }

            pub fn comps(&self) -> &[ScalarExpr] {
                &self.comps
            }

            pub fn comp(&self, i: usize) -> &ScalarExpr {
                &self.comps[i]
            }

            pub fn add(&self, o: &Self) -> Self {
                $ty { chart: self.chart.clone(), comps: vec_add(&self.comps, &o.comps) }
            }

            pub fn sub(&self, o: &Self) -> Self {
                $ty { chart: self.chart.clone(), comps: vec_sub(&self.comps, &o.comps) }
            }

            pub fn neg(&self) -> Self {
                $ty { chart: self.chart.clone(), comps: self.comps.iter().map(|c| -c).collect() }
            }

            pub fn scale(&self, k: &ScalarExpr) -> Self {
                $ty { chart: self.chart.clone(), comps: vec_scale(&self.comps, k) }
            }

            pub fn is_syntactically_zero(&self) -> bool {
                self.comps.iter().all(ScalarExpr::is_zero)
            }

            /// Same components on `M × ℝ`, with a zero last component.
            pub fn lift(&self, product: &ChartRef) -> Result<Self> {
                if product.dim() != self.chart.dim() + 1
                    || product.coords()[..self.chart.dim()] != *self.chart.coords()
                {
                    return Err(GgError::ChartMismatch(format!("{} is not {} x R", product, self.chart)));
                }
                let mut comps = self.comps.clone();
                comps.push(ScalarExpr::zero());
                Ok($ty { chart: product.clone(), comps })
            }

            /// Apply `f` to every component.
            pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Self {
                $ty { chart: self.chart.clone(), comps: self.comps.iter().map(f).collect() }
            }
        }
    };
}

vector_like!(VectorField, "vector field");
vector_like!(OneForm, "1-form");

impl VectorField {
    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &ScalarExpr) -> ScalarExpr {
        let mut acc = ScalarExpr::zero();
        for (i, x) in self.comps.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let df = self.chart.d(f, i);
            if !df.is_zero() {
                acc = acc.add(&x.mul(&df));
            }
        }
        acc
    }
}

impl OneForm {
    /// `α(X)`.
    pub fn eval(&self, x: &VectorField) -> ScalarExpr {
        dot(&self.comps, &x.comps)
    }

    /// `α ∘ F`.
    pub fn compose(&self, f: &EndoTM) -> OneForm {
        OneForm { chart: self.chart.clone(), comps: f.m.vec_mul(&self.comps) }
    }

    /// The endomorphism `α ⊗ X : Y ↦ α(Y) X`.
    pub fn tensor(&self, x: &VectorField) -> EndoTM {
        EndoTM { chart: self.chart.clone(), m: Mat::outer(&x.comps, &self.comps) }
    }
}

/// Antisymmetric `(0,2)` tensor; `m[(i, j)] = ω(∂ᵢ, ∂ⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoForm {
    chart: ChartRef,
    m: Mat,
}

impl TwoForm {
    pub fn new(chart: &ChartRef, m: Mat) -> Result<Self> {
        check_square(chart, &m, "2-form")?;
        for i in 0..m.rows() {
            for j in 0..=i {
                if !(&m[(i, j)] + &m[(j, i)]).is_zero() {
                    return Err(GgError::Precondition(format!("2-form is not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(TwoForm { chart: chart.clone(), m })
    }

    pub(crate) fn raw(chart: &ChartRef, m: Mat) -> Self {
        TwoForm { chart: chart.clone(), m }
    }

    pub fn zero(chart: &ChartRef) -> Self {
        TwoForm { chart: chart.clone(), m: Mat::zeros(chart.dim(), chart.dim()) }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn eval(&self, x: &VectorField, y: &VectorField) -> ScalarExpr {
        self.m.bilinear(&x.comps, &y.comps)
    }

    /// `i(X)ω`, i.e. `Y ↦ ω(X, Y)`; equals `♭_ω X`.
    pub fn interior(&self, x: &VectorField) -> OneForm {
        OneForm { chart: self.chart.clone(), comps: self.m.vec_mul(&x.comps) }
    }

    pub fn add(&self, o: &TwoForm) -> TwoForm {
        TwoForm { chart: self.chart.clone(), m: self.m.add(&o.m) }
    }

    pub fn sub(&self, o: &TwoForm) -> TwoForm {
        TwoForm { chart: self.chart.clone(), m: self.m.sub(&o.m) }
    }

    pub fn scale(&self, k: &ScalarExpr) -> TwoForm {
        TwoForm { chart: self.chart.clone(), m: self.m.scale(k) }
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.m.is_syntactically_zero()
    }
}

/// Totally antisymmetric `(0,3)` tensor stored densely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeForm {
    chart: ChartRef,
    data: Vec<ScalarExpr>,
}

impl ThreeForm {
    pub(crate) fn from_fn(chart: &ChartRef, f: impl Fn(usize, usize, usize) -> ScalarExpr) -> Self {
        let n = chart.dim();
        let mut data = vec![ScalarExpr::zero(); n * n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let v = f(i, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let nv = -&v;
                    for (a, b, c, s) in [
                        (i, j, k, &v),
                        (j, k, i, &v),
                        (k, i, j, &v),
                        (j, i, k, &nv),
                        (i, k, j, &nv),
                        (k, j, i, &nv),
                    ] {
                        data[(a * n + b) * n + c] = s.clone();
                    }
                }
            }
        }
        ThreeForm { chart: chart.clone(), data }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn comp(&self, i: usize, j: usize, k: usize) -> &ScalarExpr {
        let n = self.chart.dim();
        &self.data[(i * n + j) * n + k]
    }

    pub fn eval(&self, x: &VectorField, y: &VectorField, u: &VectorField) -> ScalarExpr {
        let n = self.chart.dim();
        let mut acc = ScalarExpr::zero();
        for i in 0..n {
            if x.comps[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.comps[j].is_zero() || i == j {
                    continue;
                }
                let xy = &x.comps[i] * &y.comps[j];
                for k in 0..n {
                    let c = self.comp(i, j, k);
                    if c.is_zero() || u.comps[k].is_zero() {
                        continue;
                    }
                    acc = acc + &xy * &(c * &u.comps[k]);
                }
            }
        }
        acc
    }

    /// `i(X)Ω`, i.e. `(Y, U) ↦ Ω(X, Y, U)`.
    pub fn interior(&self, x: &VectorField) -> TwoForm {
        let n = self.chart.dim();
        let m = Mat::from_fn(n, n, |j, k| {
            let mut acc = ScalarExpr::zero();
            for i in 0..n {
                let c = self.comp(i, j, k);
                if !c.is_zero() && !x.comps[i].is_zero() {
                    acc = acc + &x.comps[i] * c;
                }
            }
            acc
        });
        TwoForm { chart: self.chart.clone(), m }
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.data.iter().all(ScalarExpr::is_zero)
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.data
    }
}

/// Endomorphism of `TM`; `m[(i, j)] = Fⁱⱼ`, so column `j` is `F∂ⱼ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoTM {
    chart: ChartRef,
    m: Mat,
}

impl EndoTM {
    pub fn new(chart: &ChartRef, m: Mat) -> Result<Self> {
        check_square(chart, &m, "endomorphism")?;
        Ok(EndoTM { chart: chart.clone(), m })
    }

    pub(crate) fn raw(chart: &ChartRef, m: Mat) -> Self {
        EndoTM { chart: chart.clone(), m }
    }

    pub fn identity(chart: &ChartRef) -> Self {
        EndoTM { chart: chart.clone(), m: Mat::identity(chart.dim()) }
    }

    pub fn zero(chart: &ChartRef) -> Self {
        EndoTM { chart: chart.clone(), m: Mat::zeros(chart.dim(), chart.dim()) }
    }

    /// Endomorphism with prescribed images of the coordinate frame.
    pub fn from_images(chart: &ChartRef, images: &[VectorField]) -> Result<Self> {
        check_len(chart, images.len(), "list of frame images")?;
        let mut m = Mat::zeros(chart.dim(), chart.dim());
        for (j, x) in images.iter().enumerate() {
            same_chart(chart, &x.chart)?;
            m.set_column(j, &x.comps);
        }
        Ok(EndoTM { chart: chart.clone(), m })
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.m.mul_vec(&x.comps) }
    }

    pub fn compose(&self, o: &EndoTM) -> EndoTM {
        EndoTM { chart: self.chart.clone(), m: self.m.mul(&o.m) }
    }

    pub fn pow(&self, e: u32) -> EndoTM {
        EndoTM { chart: self.chart.clone(), m: self.m.pow(e) }
    }

    pub fn add(&self, o: &EndoTM) -> EndoTM {
        EndoTM { chart: self.chart.clone(), m: self.m.add(&o.m) }
    }

    pub fn sub(&self, o: &EndoTM) -> EndoTM {
        EndoTM { chart: self.chart.clone(), m: self.m.sub(&o.m) }
    }

    pub fn neg(&self) -> EndoTM {
        EndoTM { chart: self.chart.clone(), m: self.m.neg() }
    }

    pub fn scale(&self, k: &ScalarExpr) -> EndoTM {
        EndoTM { chart: self.chart.clone(), m: self.m.scale(k) }
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.m.is_syntactically_zero()
    }
}

/// Symmetric `(0,2)` tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MetricField {
    chart: ChartRef,
    m: Mat,
}

impl MetricField {
    /// Checks symmetry and symbolic invertibility.
    pub fn new(chart: &ChartRef, m: Mat) -> Result<Self> {
        check_square(chart, &m, "metric")?;
        for i in 0..m.rows() {
            for j in 0..i {
                if !(&m[(i, j)] - &m[(j, i)]).is_zero() {
                    return Err(GgError::Precondition(format!("metric is not symmetric at ({i},{j})")));
                }
            }
        }
        if m.det().is_zero() {
            return Err(GgError::Singular(format!("metric on {} is degenerate", chart.name())));
        }
        Ok(MetricField { chart: chart.clone(), m })
    }

    pub(crate) fn raw(chart: &ChartRef, m: Mat) -> Self {
        MetricField { chart: chart.clone(), m }
    }

    pub fn euclidean(chart: &ChartRef) -> Self {
        MetricField { chart: chart.clone(), m: Mat::identity(chart.dim()) }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn inner(&self, x: &VectorField, y: &VectorField) -> ScalarExpr {
        self.m.bilinear(&x.comps, &y.comps)
    }

    /// `♭X = γ(X, ·)`.
    pub fn flat(&self, x: &VectorField) -> OneForm {
        OneForm { chart: self.chart.clone(), comps: self.m.vec_mul(&x.comps) }
    }

    pub fn inverse(&self) -> Result<Mat> {
        self.m.inverse().ok_or_else(|| GgError::Singular(format!("metric on {} is not invertible", self.chart.name())))
    }

    /// `♯α`, the vector with `γ(♯α, ·) = α`.
    pub fn sharp(&self, a: &OneForm) -> Result<VectorField> {
        let inv = self.inverse()?;
        Ok(VectorField { chart: self.chart.clone(), comps: inv.mul_vec(&a.comps) })
    }

    pub fn add(&self, o: &MetricField) -> MetricField {
        MetricField { chart: self.chart.clone(), m: self.m.add(&o.m) }
    }

    pub fn scale(&self, k: &ScalarExpr) -> MetricField {
        MetricField { chart: self.chart.clone(), m: self.m.scale(k) }
    }
}

/// Coordinate frame `∂₀, …, ∂ₙ₋₁`.
pub fn frame(chart: &ChartRef) -> Vec<VectorField> {
    (0..chart.dim()).map(|i| VectorField::basis(chart, i)).collect()
}

/// Coordinate coframe `dx⁰, …`.
pub fn coframe(chart: &ChartRef) -> Vec<OneForm> {
    (0..chart.dim()).map(|i| OneForm::basis(chart, i)).collect()
}
