//! The big tangent bundle `TM ⊕ T*M` with its neutral pairing and Courant bracket.

use std::fmt;

use crate::calculus::{d_scalar, lie_bracket, same_chart, ChartRef, LieDerivative, Mat, OneForm, VectorField};
use crate::error::{GgError, Result};
use crate::symexpr::{Coeff, ScalarExpr};

/// A pair `(X, α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigSection {
    pub x: VectorField,
    pub a: OneForm,
}

impl BigSection {
    pub fn new(x: VectorField, a: OneForm) -> Result<Self> {
        same_chart(x.chart(), a.chart())?;
        Ok(BigSection { x, a })
    }

    pub fn zero(chart: &ChartRef) -> Self {
        BigSection { x: VectorField::zero(chart), a: OneForm::zero(chart) }
    }

    pub fn vector(x: VectorField) -> Self {
        let a = OneForm::zero(x.chart());
        BigSection { x, a }
    }

    pub fn covector(a: OneForm) -> Self {
        let x = VectorField::zero(a.chart());
        BigSection { x, a }
    }

    /// Big coordinate frame `∂₀, …, ∂ₙ₋₁, dx⁰, …, dxⁿ⁻¹`.
    pub fn frame(chart: &ChartRef) -> Vec<BigSection> {
        let n = chart.dim();
        (0..2 * n)
            .map(|k| {
                if k < n {
                    BigSection::vector(VectorField::basis(chart, k))
                } else {
                    BigSection::covector(OneForm::basis(chart, k - n))
                }
            })
            .collect()
    }

    /// Stacked components `(X¹…Xⁿ, α₁…αₙ)`.
    pub fn from_components(chart: &ChartRef, v: &[ScalarExpr]) -> Result<Self> {
        let n = chart.dim();
        if v.len() != 2 * n {
            return Err(GgError::Dimension(format!("big section needs {} components, got {}", 2 * n, v.len())));
        }
        Ok(BigSection { x: VectorField::new(chart, v[..n].to_vec())?, a: OneForm::new(chart, v[n..].to_vec())? })
    }

    pub fn components(&self) -> Vec<ScalarExpr> {
        let mut v = self.x.comps().to_vec();
        v.extend_from_slice(self.a.comps());
        v
    }

    pub fn chart(&self) -> &ChartRef {
        self.x.chart()
    }

    pub fn add(&self, o: &BigSection) -> BigSection {
        BigSection { x: self.x.add(&o.x), a: self.a.add(&o.a) }
    }

    pub fn sub(&self, o: &BigSection) -> BigSection {
        BigSection { x: self.x.sub(&o.x), a: self.a.sub(&o.a) }
    }

    pub fn neg(&self) -> BigSection {
        BigSection { x: self.x.neg(), a: self.a.neg() }
    }

    pub fn scale(&self, f: &ScalarExpr) -> BigSection {
        BigSection { x: self.x.scale(f), a: self.a.scale(f) }
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.x.is_syntactically_zero() && self.a.is_syntactically_zero()
    }

    /// Same section on `M × ℝ` (zero `∂t` and `dt` parts).
    pub fn lift(&self, product: &ChartRef) -> Result<BigSection> {
        Ok(BigSection { x: self.x.lift(product)?, a: self.a.lift(product)? })
    }

    pub fn map(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> BigSection {
        BigSection { x: self.x.map(&f), a: self.a.map(&f) }
    }
}

impl fmt::Display for BigSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.components().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Neutral pairing `g((X,α),(Y,β)) = ½(α(Y) + β(X))`.
pub fn pairing(u: &BigSection, v: &BigSection) -> Result<ScalarExpr> {
    same_chart(u.chart(), v.chart())?;
    Ok(pairing_unchecked(u, v))
}

pub(crate) fn pairing_unchecked(u: &BigSection, v: &BigSection) -> ScalarExpr {
    (u.a.eval(&v.x) + v.a.eval(&u.x)).scale(&Coeff::ratio(1, 2))
}

/// Matrix of the pairing in the big coordinate frame.
pub fn pairing_matrix(n: usize) -> Mat {
    let half = ScalarExpr::rational(1, 2);
    Mat::from_fn(2 * n, 2 * n, |i, j| if i + n == j || j + n == i { half.clone() } else { ScalarExpr::zero() })
}

/// `([X,Y], L_Xβ − L_Yα + ½d(α(Y) − β(X)))`.
pub fn courant_bracket(u: &BigSection, v: &BigSection) -> Result<BigSection> {
    same_chart(u.chart(), v.chart())?;
    let x = lie_bracket(&u.x, &v.x)?;
    let f = (u.a.eval(&v.x) - v.a.eval(&u.x)).scale(&Coeff::ratio(1, 2));
    let a = v.a.lie_along(&u.x)?.sub(&u.a.lie_along(&v.x)?).add(&d_scalar(u.chart(), &f));
    Ok(BigSection { x, a })
}

/// `∂f = (0, df)`.
pub fn partial(chart: &ChartRef, f: &ScalarExpr) -> BigSection {
    BigSection::covector(d_scalar(chart, f))
}

/// Naive differential `d_C𝒰(𝒳, 𝒴)`.
pub fn naive_d(u: &BigSection, x: &BigSection, y: &BigSection) -> Result<ScalarExpr> {
    same_chart(u.chart(), x.chart())?;
    same_chart(u.chart(), y.chart())?;
    let br = courant_bracket(x, y)?;
    Ok(x.x.apply(&pairing_unchecked(u, y)) - y.x.apply(&pairing_unchecked(u, x)) - pairing_unchecked(u, &br))
}

/// Endomorphism of the big tangent bundle as a `2n × 2n` frame matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigEndo {
    chart: ChartRef,
    m: Mat,
}

impl BigEndo {
    pub fn new(chart: &ChartRef, m: Mat) -> Result<Self> {
        let n = 2 * chart.dim();
        if m.rows() != n || m.cols() != n {
            return Err(GgError::Dimension(format!("big endomorphism must be {n}x{n}, got {}x{}", m.rows(), m.cols())));
        }
        Ok(BigEndo { chart: chart.clone(), m })
    }

    pub fn identity(chart: &ChartRef) -> Self {
        BigEndo { chart: chart.clone(), m: Mat::identity(2 * chart.dim()) }
    }

    pub fn zero(chart: &ChartRef) -> Self {
        let n = 2 * chart.dim();
        BigEndo { chart: chart.clone(), m: Mat::zeros(n, n) }
    }

    /// `𝒳 ↦ g(𝒰, 𝒳) 𝒱`, written `♭_g𝒰 ⊗ 𝒱`.
    pub fn flat_tensor(u: &BigSection, v: &BigSection) -> Result<Self> {
        same_chart(u.chart(), v.chart())?;
        let n = u.chart().dim();
        let pu = pairing_matrix(n).mul_vec(&u.components());
        Ok(BigEndo { chart: u.chart().clone(), m: Mat::outer(&v.components(), &pu) })
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn apply(&self, s: &BigSection) -> BigSection {
        let v = self.m.mul_vec(&s.components());
        let n = self.chart.dim();
        BigSection {
            x: VectorField::raw(&self.chart, v[..n].to_vec()),
            a: OneForm::raw(&self.chart, v[n..].to_vec()),
        }
    }

    pub fn compose(&self, o: &BigEndo) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.mul(&o.m) }
    }

    pub fn add(&self, o: &BigEndo) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.add(&o.m) }
    }

    pub fn sub(&self, o: &BigEndo) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.sub(&o.m) }
    }

    pub fn neg(&self) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.neg() }
    }

    pub fn scale(&self, k: &ScalarExpr) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.scale(k) }
    }

    pub fn scale_c(&self, k: &Coeff) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.scale_c(k) }
    }

    pub fn pow(&self, e: u32) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.pow(e) }
    }

    pub fn conj(&self) -> BigEndo {
        BigEndo { chart: self.chart.clone(), m: self.m.map(ScalarExpr::conj) }
    }

    /// `g(𝒜𝒳, 𝒴) + g(𝒳, 𝒜𝒴)` as a matrix; zero iff `𝒜` is g-skew.
    pub fn skew_defect(&self) -> Mat {
        let p = pairing_matrix(self.chart.dim());
        let pa = p.mul(&self.m);
        pa.add(&pa.transpose())
    }

    /// Block `(vector|covector, vector|covector)` of size `n × n`.
    pub fn block(&self, row_cov: bool, col_cov: bool) -> Mat {
        let n = self.chart.dim();
        self.m.block(if row_cov { n } else { 0 }, if col_cov { n } else { 0 }, n, n)
    }

    pub fn from_blocks(chart: &ChartRef, a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Result<BigEndo> {
        BigEndo::new(chart, Mat::from_blocks(a, b, c, d))
    }

    /// Extend to `M × ℝ` by zero on `∂t` and `dt`.
    pub fn lift(&self, product: &ChartRef) -> Result<BigEndo> {
        let n = self.chart.dim();
        if product.dim() != n + 1 || product.coords()[..n] != *self.chart.coords() {
            return Err(GgError::ChartMismatch(format!("{} is not {} x R", product, self.chart)));
        }
        let idx = |k: usize| if k < n { k } else { k + 1 };
        let mut m = Mat::zeros(2 * n + 2, 2 * n + 2);
        for (i, j, e) in self.m.entries() {
            m[(idx(i), idx(j))] = e.clone();
        }
        Ok(BigEndo { chart: product.clone(), m })
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.m.is_syntactically_zero()
    }
}

/// `N_𝒜(𝒳,𝒴) = [𝒜𝒳,𝒜𝒴] − 𝒜[𝒜𝒳,𝒴] − 𝒜[𝒳,𝒜𝒴] + 𝒜²[𝒳,𝒴]`.
pub fn nijenhuis_big(a: &BigEndo, x: &BigSection, y: &BigSection) -> Result<BigSection> {
    same_chart(a.chart(), x.chart())?;
    same_chart(a.chart(), y.chart())?;
    let ax = a.apply(x);
    let ay = a.apply(y);
    let t1 = courant_bracket(&ax, &ay)?;
    let t2 = a.apply(&courant_bracket(&ax, y)?);
    let t3 = a.apply(&courant_bracket(x, &ay)?);
    let t4 = a.apply(&a.apply(&courant_bracket(x, y)?));
    Ok(t1.sub(&t2).sub(&t3).add(&t4))
}

/// Random polynomial of degree at most 2 with small integer coefficients.
pub fn random_function(chart: &ChartRef, rng: &mut impl rand::Rng) -> ScalarExpr {
    let n = chart.dim();
    let mut f = ScalarExpr::int(rng.random_range(-3..=3));
    for _ in 0..rng.random_range(1..=3) {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        let c = ScalarExpr::int(rng.random_range(-4..=4));
        f = if rng.random_bool(0.5) { f + c * chart.coord(i) } else { f + c * chart.coord(i) * chart.coord(j) };
    }
    f
}

pub fn random_section(chart: &ChartRef, rng: &mut impl rand::Rng) -> BigSection {
    let n = chart.dim();
    let v: Vec<ScalarExpr> = (0..2 * n).map(|_| random_function(chart, rng)).collect();
    BigSection::from_components(chart, &v).expect("length 2n")
}

/// `[𝒳, f𝒴] − f[𝒳,𝒴] − (Xf)𝒴 + ⟨𝒳,𝒴⟩∂f`.
pub fn anomaly_defect(x: &BigSection, y: &BigSection, f: &ScalarExpr) -> Result<BigSection> {
    let c = x.chart();
    let lhs = courant_bracket(x, &y.scale(f))?;
    let rhs = courant_bracket(x, y)?
        .scale(f)
        .add(&y.scale(&x.x.apply(f)))
        .sub(&partial(c, f).scale(&pairing(x, y)?));
    Ok(lhs.sub(&rhs))
}

/// Anomaly identity and antisymmetry of the bracket on `count` random triples.
pub fn check_bracket_identities(
    chart: &ChartRef,
    count: usize,
    policy: &crate::symexpr::ZeroPolicy,
) -> Result<crate::verify::Outcome> {
    use rand::SeedableRng;
    use crate::verify::{vec_zero, Outcome};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(policy.seed);
    let mut anomaly = crate::symexpr::Verdict::Proved;
    let mut anti = crate::symexpr::Verdict::Proved;
    for k in 0..count {
        let x = random_section(chart, &mut rng);
        let y = random_section(chart, &mut rng);
        let f = random_function(chart, &mut rng);
        let d = anomaly_defect(&x, &y, &f)?;
        anomaly = anomaly.and(vec_zero(&d.components(), policy, &format!("anomaly #{k}"))?);
        let s = courant_bracket(&x, &y)?.add(&courant_bracket(&y, &x)?);
        anti = anti.and(vec_zero(&s.components(), policy, &format!("[X,Y] + [Y,X] #{k}"))?);
    }
    Ok(Outcome::from_parts(vec![("anomaly".into(), anomaly), ("antisymmetry".into(), anti)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Chart;
    use crate::symexpr::parse;

    fn p(s: &str) -> ScalarExpr {
        parse(s).unwrap()
    }

    fn r3() -> ChartRef {
        Chart::new("R3", &["x", "y", "z"]).unwrap()
    }

    fn sec(c: &ChartRef, x: [&str; 3], a: [&str; 3]) -> BigSection {
        BigSection::new(
            VectorField::new(c, x.iter().map(|s| p(s)).collect()).unwrap(),
            OneForm::new(c, a.iter().map(|s| p(s)).collect()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn pairing_values() {
        let c = r3();
        let e = BigSection::frame(&c);
        assert_eq!(pairing(&e[0], &e[3]).unwrap(), ScalarExpr::rational(1, 2));
        assert_eq!(pairing(&e[0].add(&e[3]), &e[0].add(&e[3])).unwrap(), ScalarExpr::one());
        let u = sec(&c, ["1", "0", "0"], ["0", "1", "0"]);
        let v = sec(&c, ["0", "1", "0"], ["-1", "0", "0"]);
        assert!(pairing(&u, &v).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let c = r3();
        let u = sec(&c, ["1", "0", "0"], ["0", "0", "0"]);
        let v = sec(&c, ["0", "0", "0"], ["0", "x", "0"]);
        assert_eq!(courant_bracket(&u, &v).unwrap(), sec(&c, ["0", "0", "0"], ["0", "1", "0"]));
        let w = sec(&c, ["0", "x", "0"], ["0", "0", "y"]);
        assert!(courant_bracket(&w, &w).unwrap().is_syntactically_zero());
    }

    #[test]
    fn flat_tensor_matches_pairing() {
        let c = r3();
        let u = sec(&c, ["y", "0", "1"], ["0", "x", "0"]);
        let v = sec(&c, ["1", "z", "0"], ["x", "0", "0"]);
        let w = sec(&c, ["x", "1", "0"], ["0", "0", "z"]);
        let t = BigEndo::flat_tensor(&u, &v).unwrap();
        assert_eq!(t.apply(&w), v.scale(&pairing(&u, &w).unwrap()));
    }

    #[test]
    fn anomaly_on_random_triples() {
        let o = check_bracket_identities(&r3(), 20, &crate::symexpr::ZeroPolicy::default()).unwrap();
        assert!(o.verdict.is_proved(), "{o:#?}");
    }
}
