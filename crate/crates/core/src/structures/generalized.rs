//! Generalized metrics and generalized F structures on the big tangent bundle.

use crate::calculus::{ext_d, frame, same_chart, ChartRef, EndoTM, LeviCivita, Mat, MetricField, OneForm, ThreeForm, TwoForm, VectorField};
use crate::courant::{courant_bracket, nijenhuis_big, pairing_matrix, BigEndo, BigSection};
use crate::error::{GgError, Result};
use crate::numeric;
use crate::structures::classical::{check_classical_crf_f, check_f_structure, check_fmetric, nabla_f};
use crate::symexpr::{ScalarExpr, Verdict, ZeroPolicy};
use crate::verify::{all_zero, chain, failed, mat_equal, mat_zero, probe_function, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn expr(self) -> ScalarExpr {
        match self {
            Sign::Plus => ScalarExpr::one(),
            Sign::Minus => ScalarExpr::int(-1),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Generalized Riemannian metric determined by `(γ, ψ)`.
#[derive(Clone, Debug)]
pub struct GenMetric {
    gamma: MetricField,
    psi: TwoForm,
    ginv: Mat,
    big: BigEndo,
    gmat: Mat,
}

impl GenMetric {
    pub fn new(gamma: MetricField, psi: TwoForm) -> Result<Self> {
        same_chart(gamma.chart(), psi.chart())?;
        let c = gamma.chart().clone();
        let ginv = gamma.inverse()?;
        let g = gamma.matrix();
        let b = psi.matrix().transpose();
        let gib = ginv.mul(&b);
        let big = BigEndo::from_blocks(&c, &gib.neg(), &ginv, &g.sub(&b.mul(&gib)), &b.mul(&ginv))?;
        let gmat = big.matrix().transpose().mul(&pairing_matrix(c.dim()));
        Ok(GenMetric { gamma, psi, ginv, big, gmat })
    }

    pub fn chart(&self) -> &ChartRef {
        self.gamma.chart()
    }

    pub fn gamma(&self) -> &MetricField {
        &self.gamma
    }

    pub fn psi(&self) -> &TwoForm {
        &self.psi
    }

    pub fn gamma_inverse(&self) -> &Mat {
        &self.ginv
    }

    /// The endomorphism `𝒢` with `𝒢|V± = ±Id`.
    pub fn endo(&self) -> &BigEndo {
        &self.big
    }

    /// Matrix of `G(𝒳,𝒴) = g(𝒢𝒳,𝒴)`.
    pub fn matrix(&self) -> &Mat {
        &self.gmat
    }

    pub fn inner(&self, x: &BigSection, y: &BigSection) -> ScalarExpr {
        self.gmat.bilinear(&x.components(), &y.components())
    }

    /// Matrix of `♭_{ψ±γ}`.
    pub fn flat_matrix(&self, sign: Sign) -> Mat {
        let b = self.psi.matrix().transpose();
        match sign {
            Sign::Plus => b.add(self.gamma.matrix()),
            Sign::Minus => b.sub(self.gamma.matrix()),
        }
    }

    pub fn flat(&self, sign: Sign, x: &VectorField) -> OneForm {
        OneForm::raw(self.chart(), self.flat_matrix(sign).mul_vec(x.comps()))
    }

    /// `τ±⁻¹X = (X, ♭_{ψ±γ}X)`.
    pub fn v_section(&self, sign: Sign, x: &VectorField) -> BigSection {
        BigSection { x: x.clone(), a: self.flat(sign, x) }
    }

    pub fn v_frame(&self, sign: Sign) -> Vec<BigSection> {
        frame(self.chart()).iter().map(|x| self.v_section(sign, x)).collect()
    }

    /// `[I; ψᵀ ± γ]`, a `2n × n` matrix.
    pub fn graph(&self, sign: Sign) -> Mat {
        let n = self.chart().dim();
        let f = self.flat_matrix(sign);
        Mat::from_fn(2 * n, n, |i, j| if i < n { if i == j { ScalarExpr::one() } else { ScalarExpr::zero() } } else { f[(i - n, j)].clone() })
    }

    /// Projection `τ± ∘ pr_{V±}`, an `n × 2n` matrix.
    pub fn transfer(&self, sign: Sign) -> Mat {
        let n = self.chart().dim();
        let gib = self.ginv.mul(&self.psi.matrix().transpose());
        let id = Mat::identity(n);
        let (left, right) = match sign {
            Sign::Plus => (id.sub(&gib), self.ginv.clone()),
            Sign::Minus => (id.add(&gib), self.ginv.neg()),
        };
        let half = ScalarExpr::rational(1, 2);
        Mat::from_fn(n, 2 * n, |i, j| if j < n { left[(i, j)].clone() } else { right[(i, j - n)].clone() }).scale(&half)
    }
}

/// `𝒢² = Id`, `g(𝒢𝒳,𝒢𝒴) = g(𝒳,𝒴)`, `G` symmetric, `𝒢|V± = ±Id`, `G ∘ τ±⁻¹ = γ`.
pub fn check_cond_pt_grond(m: &GenMetric, policy: &ZeroPolicy) -> Result<Verdict> {
    let n = m.chart().dim();
    let big = m.endo().matrix();
    let p = pairing_matrix(n);
    let mut parts = vec![
        mat_equal(&big.mul(big), &Mat::identity(2 * n), policy, "G^2 - Id"),
        mat_equal(&big.transpose().mul(&p).mul(big), &p, policy, "g(GX,GY) - g(X,Y)"),
        mat_equal(m.matrix(), &m.matrix().transpose(), policy, "G symmetric"),
    ];
    for s in Sign::BOTH {
        let gr = m.graph(s);
        parts.push(mat_equal(&big.mul(&gr), &gr.scale(&s.expr()), policy, &format!("G on V{}", s.symbol())));
        parts.push(mat_equal(&gr.transpose().mul(m.matrix()).mul(&gr), m.gamma().matrix(), policy, &format!("G(V{0},V{0}) - gamma", s.symbol())));
        parts.push(mat_equal(&m.transfer(s).mul(&gr), &Mat::identity(n), policy, &format!("tau{} o inverse", s.symbol())));
    }
    chain(parts)
}

/// Positivity of `G` at sample points.
pub fn check_gen_metric_positive(m: &GenMetric, policy: &ZeroPolicy, count: usize) -> Result<Verdict> {
    numeric::check_positive(m.chart(), m.matrix(), policy, count, "G positive")
}

/// Classical data `(γ, ψ, F₊, F₋)` of a generalized metric F structure.
#[derive(Clone, Debug)]
pub struct FPair {
    pub metric: GenMetric,
    pub fp: EndoTM,
    pub fm: EndoTM,
}

impl FPair {
    pub fn f(&self, sign: Sign) -> &EndoTM {
        match sign {
            Sign::Plus => &self.fp,
            Sign::Minus => &self.fm,
        }
    }
}

/// Generalized F structure, optionally with its classical pair.
#[derive(Clone, Debug)]
pub struct GenF {
    f: BigEndo,
    pair: Option<FPair>,
}

impl GenF {
    pub fn new(f: BigEndo) -> Self {
        GenF { f, pair: None }
    }

    /// `ℱ(X, α) = (FX, −α∘F)`.
    pub fn classical(f: &EndoTM) -> Self {
        let c = f.chart();
        let n = c.dim();
        let z = Mat::zeros(n, n);
        let m = Mat::from_blocks(f.matrix(), &z, &z, &f.matrix().transpose().neg());
        GenF { f: BigEndo::new(c, m).expect("square blocks"), pair: None }
    }

    /// `ℱ(X, ♭_{ψ±γ}X) = (F±X, ♭_{ψ±γ}F±X)`; requires `F±` to be `γ`-skew.
    pub fn from_quadruple(metric: GenMetric, fp: EndoTM, fm: EndoTM, policy: &ZeroPolicy) -> Result<Self> {
        same_chart(metric.chart(), fp.chart())?;
        same_chart(metric.chart(), fm.chart())?;
        for (s, f) in [("+", &fp), ("-", &fm)] {
            if let Some(w) = check_fmetric(f, metric.gamma(), policy)?.witness() {
                return Err(GgError::Precondition(format!("F{s} is not gamma-skew: {w}")));
            }
        }
        let pair = FPair { metric, fp, fm };
        let f = Self::assemble(&pair)?;
        Ok(GenF { f, pair: Some(pair) })
    }

    /// Same as [`GenF::from_quadruple`] without the compatibility check.
    pub fn from_quadruple_unchecked(metric: GenMetric, fp: EndoTM, fm: EndoTM) -> Result<Self> {
        let pair = FPair { metric, fp, fm };
        let f = Self::assemble(&pair)?;
        Ok(GenF { f, pair: Some(pair) })
    }

    fn assemble(p: &FPair) -> Result<BigEndo> {
        let c = p.metric.chart();
        let n = c.dim();
        let mut m = Mat::zeros(2 * n, 2 * n);
        for s in Sign::BOTH {
            m = m.add(&p.metric.graph(s).mul(p.f(s).matrix()).mul(&p.metric.transfer(s)));
        }
        BigEndo::new(c, m)
    }

    pub fn endo(&self) -> &BigEndo {
        &self.f
    }

    pub fn pair(&self) -> Option<&FPair> {
        self.pair.as_ref()
    }

    pub fn chart(&self) -> &ChartRef {
        self.f.chart()
    }

    pub fn require_pair(&self) -> Result<&FPair> {
        self.pair.as_ref().ok_or_else(|| GgError::Precondition("generalized F structure has no classical pair".into()))
    }
}

/// g-skew and `ℱ³ + ℱ = 0`.
pub fn check_gen_f(f: &BigEndo, policy: &ZeroPolicy) -> Result<Verdict> {
    chain([
        mat_zero(&f.skew_defect(), policy, "g(FX,Y) + g(X,FY)"),
        mat_zero(f.pow(3).add(f).matrix(), policy, "F^3 + F"),
    ])
}

/// `G(ℱ𝒳,𝒴) + G(𝒳,ℱ𝒴) = 0` and `𝒢ℱ = ℱ𝒢`.
pub fn check_g_f(m: &GenMetric, f: &BigEndo, policy: &ZeroPolicy) -> Result<Verdict> {
    let gf = m.matrix().mul(f.matrix());
    let g = m.endo().matrix();
    chain([
        mat_zero(&gf.add(&gf.transpose()), policy, "G(FX,Y) + G(X,FY)"),
        mat_equal(&g.mul(f.matrix()), &f.matrix().mul(g), policy, "GF - FG"),
    ])
}

/// Nonzero columns of a big matrix as sections.
pub(crate) fn big_spanning_set(chart: &ChartRef, m: &Mat) -> Vec<(usize, BigSection)> {
    (0..m.cols())
        .map(|j| (j, BigSection::from_components(chart, &m.column(j)).expect("column length")))
        .filter(|(_, s)| !s.is_syntactically_zero())
        .collect()
}

/// `N_ℱ(𝒳,𝒴) = pr_S[𝒳,𝒴]` on a spanning set of `L = im ℱ`, retested with `f·𝒳`.
pub fn check_gen_crf(f: &BigEndo, policy: &ZeroPolicy) -> Result<Verdict> {
    let c = f.chart();
    let l = big_spanning_set(c, f.matrix());
    let prs = BigEndo::identity(c).add(&f.pow(2));
    let probe = probe_function(c, policy.seed);
    let mut items = Vec::new();
    for a in 0..l.len() {
        for b in (a + 1)..l.len() {
            let (i, x) = &l[a];
            let (j, y) = &l[b];
            for (tag, xx) in [("", x.clone()), ("f*", x.scale(&probe))] {
                let r = nijenhuis_big(f, &xx, y)?.sub(&prs.apply(&courant_bracket(&xx, y)?));
                for (k, e) in r.components().iter().enumerate() {
                    items.push((e.clone(), format!("N_F - prS[,] ({tag}F e{i}, F e{j})[{k}]")));
                }
            }
        }
    }
    all_zero(items, policy)
}

/// Matrix of `U, Y ↦ dψ(X, Y, U)` for `X = ∂_i`.
fn dpsi_slice(dpsi: &ThreeForm, x: &VectorField) -> Mat {
    dpsi.interior(x).matrix().clone()
}

/// Both sides of `γ(F±∇_X F±(Y), U) = ±½[dψ(X,Y,F±²U) + dψ(X,F±Y,F±U)]`, indexed `[y][u]`, one pair per frame `X`.
pub fn crfk6_sides(pair: &FPair, sign: Sign) -> Result<Vec<(Mat, Mat)>> {
    let lc = LeviCivita::new(pair.metric.gamma())?;
    let f = pair.f(sign).matrix();
    let g = pair.metric.gamma().matrix();
    let dpsi = ext_d(pair.metric.psi());
    let half = ScalarExpr::rational(1, 2).mul(&sign.expr());
    let f2 = f.mul(f);
    let frames = frame(pair.metric.chart());
    let nf = nabla_f(&lc, pair.f(sign))?;
    Ok(frames
        .iter()
        .zip(nf)
        .map(|(x, nfx)| {
            let lhs = g.mul(f).mul(nfx.matrix()).transpose();
            let d = dpsi_slice(&dpsi, x);
            let rhs = d.mul(&f2).add(&f.transpose().mul(&d).mul(f)).scale(&half);
            (lhs, rhs)
        })
        .collect())
}

pub fn check_crfk6(pair: &FPair, policy: &ZeroPolicy) -> Result<Verdict> {
    let mut parts = Vec::new();
    for s in Sign::BOTH {
        for (i, (lhs, rhs)) in crfk6_sides(pair, s)?.iter().enumerate() {
            parts.push(mat_equal(lhs, rhs, policy, &format!("CRFK6{} X=d{i}", s.symbol())));
        }
    }
    chain(parts)
}

/// Classical CRF of `F±` together with the CRFK6 identities.
pub fn check_crfk(f: &GenF, policy: &ZeroPolicy) -> Result<Outcome> {
    let pair = f.require_pair()?;
    Ok(Outcome::from_parts(vec![
        ("F+ classical CRF".into(), check_classical_crf_f(&pair.fp, policy)?),
        ("F- classical CRF".into(), check_classical_crf_f(&pair.fm, policy)?),
        ("CRFK6".into(), check_crfk6(pair, policy)?),
    ]))
}

/// `F±` are metric F structures for `γ`.
pub fn check_pair_valid(pair: &FPair, policy: &ZeroPolicy) -> Result<Verdict> {
    chain([
        check_f_structure(&pair.fp, policy),
        check_f_structure(&pair.fm, policy),
        check_fmetric(&pair.fp, pair.metric.gamma(), policy),
        check_fmetric(&pair.fm, pair.metric.gamma(), policy),
    ])
}

/// Corank of `ℱ` and the negative index of `g` on its kernel, at sample points.
pub fn corank_neg(f: &BigEndo, policy: &ZeroPolicy, points: usize) -> Result<(usize, usize)> {
    let n = f.chart().dim();
    let p = numeric::eval_mat(&pairing_matrix(n), &Default::default()).expect("constant matrix");
    let mut seen = None;
    for (pt, m) in numeric::good_points(f.chart(), f.matrix(), policy, points)? {
        let k = numeric::kernel(&m, 1e-9);
        let here = (k.ncols(), numeric::negative_index(&p, &k, 1e-9));
        match seen {
            None => seen = Some(here),
            Some(prev) if prev != here => {
                return Err(GgError::Precondition(format!("corank/negative index jumps from {prev:?} to {here:?} at {pt:?}")));
            }
            _ => {}
        }
    }
    seen.ok_or_else(|| GgError::Precondition("no sample points".into()))
}

/// Corank and negative index compared against expected values.
pub fn check_corank_neg(f: &BigEndo, expected: (usize, usize), policy: &ZeroPolicy) -> Result<Verdict> {
    let got = corank_neg(f, policy, 4)?;
    Ok(if got == expected {
        Verdict::NumericallySupported
    } else {
        failed("corank/neg", format!("got {}/{}, expected {}/{}", got.0, got.1, expected.0, expected.1))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Chart;
    use crate::symexpr::parse;

    fn p(s: &str) -> ScalarExpr {
        parse(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn flat_metric_swaps_vectors_and_forms() {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let m = GenMetric::new(MetricField::euclidean(&c), TwoForm::zero(&c)).unwrap();
        let s = BigSection::new(VectorField::basis(&c, 0), OneForm::basis(&c, 2)).unwrap();
        let t = m.endo().apply(&s);
        assert_eq!(t.x, VectorField::basis(&c, 2));
        assert_eq!(t.a, OneForm::basis(&c, 0));
    }

    #[test]
    fn metric_with_b_field_is_involutive() {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let g = MetricField::new(&c, mat(&[&["1 + y^2", "0", "-y"], &["0", "1", "0"], &["-y", "0", "1"]])).unwrap();
        let psi = TwoForm::new(&c, mat(&[&["0", "0", "0"], &["0", "0", "x"], &["0", "-x", "0"]])).unwrap();
        let m = GenMetric::new(g, psi).unwrap();
        assert!(check_cond_pt_grond(&m, &ZeroPolicy::default()).unwrap().is_proved());
        let x = VectorField::basis(&c, 0);
        let v = m.v_section(Sign::Plus, &x);
        assert_eq!(m.inner(&v, &v), p("1 + y^2"));
    }

    #[test]
    fn quadruple_with_equal_f_is_classical() {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let f = EndoTM::new(&c, mat(&[&["0", "-1", "0"], &["1", "0", "0"], &["0", "0", "0"]])).unwrap();
        let m = GenMetric::new(MetricField::euclidean(&c), TwoForm::zero(&c)).unwrap();
        let q = GenF::from_quadruple(m, f.clone(), f.clone(), &ZeroPolicy::default()).unwrap();
        assert_eq!(q.endo(), GenF::classical(&f).endo());
        assert_eq!(corank_neg(q.endo(), &ZeroPolicy::default(), 2).unwrap(), (2, 1));
    }
}
