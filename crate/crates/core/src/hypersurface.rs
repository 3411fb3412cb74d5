//! Oriented hypersurfaces: pullbacks, unit normal, second fundamental form and induced structures.

use crate::calculus::{
    ext_d, frame, ChartRef, EndoTM, LeviCivita, LieDerivative, Mat, MetricField, OneForm, ThreeForm, TwoForm,
    VectorField,
};
use crate::error::{GgError, Result};
use crate::numeric;
use crate::structures::classical::{
    check_classical_crf, check_nijenhuis_zero, check_normal_classical, AlmostContact,
};
use crate::structures::generalized::{check_crfk, GenF, GenMetric, Sign};
use crate::structures::twoone::{ClassicalPair, TwoOneGAC};
use crate::symexpr::{ScalarExpr, Verdict, ZeroPolicy};
use crate::verify::{agreement, all_zero, chain, mat_equal, mat_zero, vec_zero, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Positive,
    Negative,
}

/// `ι : N → M` given by the ambient coordinates as functions of the coordinates of `N`.
#[derive(Clone, Debug)]
pub struct Embedding {
    domain: ChartRef,
    ambient: ChartRef,
    comps: Vec<ScalarExpr>,
    orientation: Orientation,
}

impl Embedding {
    pub fn new(domain: &ChartRef, ambient: &ChartRef, comps: Vec<ScalarExpr>, orientation: Orientation) -> Result<Self> {
        if ambient.dim() != domain.dim() + 1 {
            return Err(GgError::Dimension(format!("{domain} is not a hypersurface of {ambient}")));
        }
        if comps.len() != ambient.dim() {
            return Err(GgError::Dimension(format!("embedding needs {} components, got {}", ambient.dim(), comps.len())));
        }
        for c in &comps {
            if let Some(sym) = domain.foreign_symbols(c).into_iter().next() {
                return Err(GgError::UnknownCoordinate { chart: domain.name().to_string(), symbol: sym });
            }
        }
        Ok(Embedding { domain: domain.clone(), ambient: ambient.clone(), comps, orientation })
    }

    pub fn domain(&self) -> &ChartRef {
        &self.domain
    }

    pub fn ambient(&self) -> &ChartRef {
        &self.ambient
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.comps
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `f ∘ ι`.
    pub fn restrict(&self, e: &ScalarExpr) -> ScalarExpr {
        let a = &self.ambient;
        e.subst(&|name| a.index_of(name).map(|i| self.comps[i].clone()))
    }

    pub fn restrict_mat(&self, m: &Mat) -> Mat {
        m.map(|e| self.restrict(e))
    }

    /// `∂ⱼιᵃ`, an `n × (n−1)` matrix.
    pub fn jacobian(&self) -> Mat {
        let d = &self.domain;
        Mat::from_fn(self.ambient.dim(), d.dim(), |a, j| d.d(&self.comps[a], j))
    }
}

/// Three-form of `M` with components restricted to `N`.
#[derive(Clone, Debug)]
struct Along3 {
    n: usize,
    data: Vec<ScalarExpr>,
}

impl Along3 {
    fn new(w: &ThreeForm, e: &Embedding) -> Self {
        Along3 { n: w.chart().dim(), data: w.components().iter().map(|c| e.restrict(c)).collect() }
    }

    fn eval(&self, x: &[ScalarExpr], y: &[ScalarExpr], u: &[ScalarExpr]) -> ScalarExpr {
        let n = self.n;
        let mut acc = ScalarExpr::zero();
        for (i, xi) in x.iter().enumerate().take(n) {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(n) {
                if yj.is_zero() || i == j {
                    continue;
                }
                for (k, uk) in u.iter().enumerate().take(n) {
                    let c = &self.data[(i * n + j) * n + k];
                    if c.is_zero() || uk.is_zero() {
                        continue;
                    }
                    acc = acc + &(xi * yj) * &(c * uk);
                }
            }
        }
        acc
    }
}

/// Unit normal, induced metric, second fundamental form and Weingarten operator.
#[derive(Clone, Debug)]
pub struct HypersurfaceGeometry {
    emb: Embedding,
    gamma: MetricField,
    g: Mat,
    jac: Mat,
    christoffel: Vec<Mat>,
    nu: Vec<ScalarExpr>,
    s: MetricField,
    s_inv: Mat,
    b: Mat,
    w: EndoTM,
}

/// `ν = ±γ⁻¹α/|α|` where `α` is the cofactor covector, so that `α(X) = det[dι | X]`.
pub fn unit_normal(e: &Embedding, gamma: &MetricField, policy: &ZeroPolicy) -> Result<Vec<ScalarExpr>> {
    crate::calculus::same_chart(e.ambient(), gamma.chart())?;
    let jac = e.jacobian();
    let n = e.ambient().dim();
    for (_, v) in numeric::good_points(e.domain(), &jac, policy, 4)? {
        if numeric::rank(&v, policy.tol.max(1e-12)) < n - 1 {
            return Err(GgError::Precondition(format!("embedding Jacobian is rank deficient on {}", e.domain())));
        }
    }
    let alpha: Vec<ScalarExpr> = (0..n)
        .map(|a| {
            let minor = Mat::from_fn(n - 1, n - 1, |i, j| jac[(if i < a { i } else { i + 1 }, j)].clone());
            let d = minor.det();
            if (a + n - 1).is_multiple_of(2) {
                d
            } else {
                d.neg()
            }
        })
        .collect();
    let ginv = e.restrict_mat(&gamma.inverse()?);
    let v = ginv.mul_vec(&alpha);
    let norm2 = crate::calculus::dot(&alpha, &v);
    let norm = norm2
        .sqrt_exact()
        .ok_or_else(|| GgError::Unsupported(format!("length of the normal is not an exact square root: {norm2}")))?;
    let norm = match e.orientation() {
        Orientation::Positive => norm,
        Orientation::Negative => norm.neg(),
    };
    let inv = norm.inv().ok_or_else(|| GgError::Singular("normal vanishes".into()))?;
    Ok(v.iter().map(|c| c * &inv).collect())
}

impl HypersurfaceGeometry {
    pub fn new(emb: &Embedding, gamma: &MetricField, policy: &ZeroPolicy) -> Result<Self> {
        let nu = unit_normal(emb, gamma, policy)?;
        let lc = LeviCivita::new(gamma)?;
        let n = emb.ambient().dim();
        let christoffel = (0..n)
            .map(|k| Mat::from_fn(n, n, |i, j| emb.restrict(lc.christoffel(k, i, j))))
            .collect();
        let g = emb.restrict_mat(gamma.matrix());
        let jac = emb.jacobian();
        let s = MetricField::new(emb.domain(), jac.transpose().mul(&g).mul(&jac))?;
        let s_inv = s.inverse()?;
        let mut geo = HypersurfaceGeometry {
            emb: emb.clone(),
            gamma: gamma.clone(),
            g,
            jac,
            christoffel,
            nu,
            s,
            s_inv,
            b: Mat::zeros(0, 0),
            w: EndoTM::zero(emb.domain()),
        };
        let m = emb.domain().dim();
        let cols: Vec<Vec<ScalarExpr>> = (0..m).map(|j| geo.jac.column(j)).collect();
        let b = Mat::from_fn(m, m, |i, j| {
            let e_i = unit(m, i);
            let d = geo.cov_along(&e_i, &cols[j]);
            geo.inner(&d, &geo.nu)
        });
        geo.w = EndoTM::new(emb.domain(), geo.s_inv.mul(&b))?;
        geo.b = b;
        Ok(geo)
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn gamma(&self) -> &MetricField {
        &self.gamma
    }

    /// Ambient components of `ν` along `N`.
    pub fn normal(&self) -> &[ScalarExpr] {
        &self.nu
    }

    pub fn induced_metric(&self) -> &MetricField {
        &self.s
    }

    pub fn second_form(&self) -> &Mat {
        &self.b
    }

    pub fn weingarten(&self) -> &EndoTM {
        &self.w
    }

    pub fn jacobian(&self) -> &Mat {
        &self.jac
    }

    /// `dι(X)` for `N`-components `x`.
    pub fn push(&self, x: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.jac.mul_vec(x)
    }

    /// `γ(u, v)` for ambient vectors along `N`.
    pub fn inner(&self, u: &[ScalarExpr], v: &[ScalarExpr]) -> ScalarExpr {
        self.g.bilinear(u, v)
    }

    /// `∇^γ_X W` for `X` tangent to `N` (given by `N`-components) and `W` an ambient field along `N`.
    pub fn cov_along(&self, x: &[ScalarExpr], w: &[ScalarExpr]) -> Vec<ScalarExpr> {
        let d = self.emb.domain();
        let px = self.push(x);
        (0..w.len())
            .map(|a| {
                let mut acc = self.christoffel[a].bilinear(&px, w);
                for (j, xj) in x.iter().enumerate() {
                    if !xj.is_zero() {
                        acc = acc + xj * &d.d(&w[a], j);
                    }
                }
                acc
            })
            .collect()
    }

    /// Splits an ambient vector along `N` into its tangent `N`-components and normal coefficient.
    pub fn decompose(&self, w: &[ScalarExpr]) -> (Vec<ScalarExpr>, ScalarExpr) {
        let t = self.s_inv.mul_vec(&self.jac.transpose().mul_vec(&self.g.mul_vec(w)));
        (t, self.inner(w, &self.nu))
    }

    pub fn b(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
        self.b.bilinear(x, y)
    }

    fn frame_n(&self) -> Vec<Vec<ScalarExpr>> {
        let m = self.emb.domain().dim();
        (0..m).map(|j| unit(m, j)).collect()
    }
}

fn unit(n: usize, i: usize) -> Vec<ScalarExpr> {
    let mut v = vec![ScalarExpr::zero(); n];
    v[i] = ScalarExpr::one();
    v
}

/// Unit length, orthogonality, symmetry of `b`, `s(WX, Y) = b(X, Y)`, and the Gauss and Weingarten equations.
pub fn check_geometry(geo: &HypersurfaceGeometry, policy: &ZeroPolicy) -> Result<Outcome> {
    let m = geo.emb.domain().dim();
    let nu = &geo.nu;
    let unit_v = all_zero([(geo.inner(nu, nu) - ScalarExpr::one(), "gamma(nu,nu) - 1".to_string())], policy)?;
    let orth = all_zero(
        (0..m).map(|j| (geo.inner(&geo.jac.column(j), nu), format!("gamma(nu, d{j})"))),
        policy,
    )?;
    let sym = mat_equal(&geo.b, &geo.b.transpose(), policy, "b(X,Y) - b(Y,X)")?;
    let sw = mat_equal(&geo.w.matrix().transpose().mul(geo.s.matrix()), &geo.b, policy, "s(WX,Y) - b(X,Y)")?;
    let lc_s = LeviCivita::new(&geo.s)?;
    let mut gauss = Vec::new();
    let mut wein = Vec::new();
    let mut normal_conn = Vec::new();
    for i in 0..m {
        let e_i = unit(m, i);
        for j in 0..m {
            let d = geo.cov_along(&e_i, &geo.jac.column(j));
            let tang: Vec<ScalarExpr> = (0..m).map(|k| lc_s.christoffel(k, i, j).clone()).collect();
            let pt = geo.push(&tang);
            for a in 0..d.len() {
                gauss.push((&d[a] - &pt[a] - &geo.b[(i, j)] * &nu[a], format!("Gauss (d{i},d{j})[{a}]")));
            }
        }
        let dn = geo.cov_along(&e_i, nu);
        let wx = geo.push(&geo.w.matrix().column(i));
        for a in 0..dn.len() {
            wein.push((&dn[a] + &wx[a], format!("Weingarten d{i}[{a}]")));
        }
        normal_conn.push((geo.inner(&dn, nu), format!("gamma(nabla_d{i} nu, nu)")));
    }
    Ok(Outcome::from_parts(vec![
        ("unit".into(), unit_v),
        ("orthogonal".into(), orth),
        ("b symmetric".into(), sym),
        ("s(WX,Y) = b".into(), sw),
        ("Gauss".into(), all_zero(gauss, policy)?),
        ("Weingarten".into(), all_zero(wein, policy)?),
        ("nabla^nu nu = 0".into(), all_zero(normal_conn, policy)?),
    ]))
}

pub fn check_totally_geodesic(geo: &HypersurfaceGeometry, policy: &ZeroPolicy) -> Result<Verdict> {
    mat_zero(&geo.b, policy, "b")
}

/// `b = λ s` for a function `λ`.
pub fn check_umbilical(geo: &HypersurfaceGeometry, policy: &ZeroPolicy) -> Result<Verdict> {
    let s = geo.s.matrix();
    mat_equal(&geo.b.scale(&s[(0, 0)]), &s.scale(&geo.b[(0, 0)]), policy, "b s00 - s b00")
}

/// `J² = −Id` and `γ(JX, JY) = γ(X, Y)`.
pub fn check_almost_hermitian(gamma: &MetricField, j: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    crate::calculus::same_chart(gamma.chart(), j.chart())?;
    let jm = j.matrix();
    chain([
        mat_equal(&jm.mul(jm), &Mat::identity(jm.rows()).neg(), policy, "J^2 + Id"),
        mat_equal(&jm.transpose().mul(gamma.matrix()).mul(jm), gamma.matrix(), policy, "gamma(JX,JY) - gamma(X,Y)"),
    ])
}

fn require(v: Verdict, what: &str) -> Result<()> {
    if v.holds() {
        Ok(())
    } else {
        Err(GgError::Precondition(format!("{what}: {v}")))
    }
}

/// `Ω(X, Y) = γ(JX, Y)`.
pub fn kahler_form(gamma: &MetricField, j: &EndoTM) -> Result<TwoForm> {
    TwoForm::new(gamma.chart(), j.matrix().transpose().mul(gamma.matrix()))
}

/// Induced structure of `JX = FX + ξ(X)ν`, `Z = −Jν`, `s = ι*γ`, together with the ambient data it came from.
#[derive(Clone, Debug)]
pub struct InducedStructure {
    pub structure: AlmostContact,
    j: Mat,
    j_nu: Vec<ScalarExpr>,
    d_omega: Along3,
}

impl InducedStructure {
    pub fn f(&self) -> &EndoTM {
        &self.structure.f
    }

    pub fn z(&self) -> &VectorField {
        &self.structure.z
    }

    pub fn xi(&self) -> &OneForm {
        &self.structure.xi
    }

    fn apply_j(&self, w: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.j.mul_vec(w)
    }

    /// Nonzero columns of `F`, spanning `P = im F`.
    fn p_set(&self) -> Vec<Vec<ScalarExpr>> {
        let f = self.f().matrix();
        (0..f.cols()).map(|j| f.column(j)).filter(|c| c.iter().any(|e| !e.is_zero())).collect()
    }
}

pub fn induced_almost_contact(geo: &HypersurfaceGeometry, j: &EndoTM, policy: &ZeroPolicy) -> Result<InducedStructure> {
    require(check_almost_hermitian(&geo.gamma, j, policy)?, "ambient (gamma, J) is not almost Hermitian")?;
    let e = &geo.emb;
    let d = e.domain();
    let jr = e.restrict_mat(j.matrix());
    let jjac = jr.mul(&geo.jac);
    let f = geo.s_inv.mul(&geo.jac.transpose()).mul(&geo.g).mul(&jjac);
    let xi: Vec<ScalarExpr> = (0..d.dim()).map(|k| geo.inner(&jjac.column(k), &geo.nu)).collect();
    let j_nu = jr.mul_vec(&geo.nu);
    let minus_j_nu: Vec<ScalarExpr> = j_nu.iter().map(|c| c.neg()).collect();
    let (z, zn) = geo.decompose(&minus_j_nu);
    require(all_zero([(zn, "gamma(J nu, nu)".to_string())], policy)?, "J nu is not tangent")?;
    let structure = AlmostContact::new(
        EndoTM::new(d, f)?,
        VectorField::new(d, z)?,
        OneForm::new(d, xi)?,
        Some(geo.s.clone()),
    )?;
    let omega = kahler_form(&geo.gamma, j)?;
    let d_omega = Along3::new(&ext_d(&omega), e);
    Ok(InducedStructure { structure, j: jr, j_nu, d_omega })
}

/// `Ξ = ι*Ω` with `Ξ(X, Y) = s(FX, Y)`.
pub fn check_fundamental_form(geo: &HypersurfaceGeometry, ind: &InducedStructure, policy: &ZeroPolicy) -> Result<Verdict> {
    let xi_form = ind.f().matrix().transpose().mul(geo.s.matrix());
    let pull = geo.jac.transpose().mul(&ind.j.transpose()).mul(&geo.g).mul(&geo.jac);
    mat_equal(&xi_form, &pull, policy, "Xi - i*Omega")
}

fn eq_crf2_lines(geo: &HypersurfaceGeometry, ind: &InducedStructure, policy: &ZeroPolicy) -> Result<(Verdict, Verdict)> {
    let p = ind.p_set();
    let f = ind.f().matrix();
    let mut l1 = Vec::new();
    let mut l2 = Vec::new();
    for (a, x) in p.iter().enumerate() {
        for (c, y) in p.iter().enumerate() {
            let px = geo.push(x);
            let py = geo.push(y);
            if a < c {
                let lhs = ind.d_omega.eval(&ind.apply_j(&px), &ind.apply_j(&py), &ind.j_nu);
                let rhs = ind.d_omega.eval(&px, &py, &ind.j_nu);
                l1.push((lhs - rhs, format!("dOmega(JX,JY,Jnu) - dOmega(X,Y,Jnu) (P{a},P{c})")));
            }
            if a <= c {
                let d = geo.b(&f.mul_vec(x), &f.mul_vec(y)) - geo.b(x, y);
                l2.push((d, format!("b(FX,FY) - b(X,Y) (P{a},P{c})")));
            }
        }
    }
    Ok((all_zero(l1, policy)?, all_zero(l2, policy)?))
}

fn require_integrable(j: &EndoTM, policy: &ZeroPolicy) -> Result<()> {
    require(check_nijenhuis_zero(j, policy, "N_J")?, "ambient J is not integrable")
}

/// CRF criterion for the induced structure of a hypersurface of a Hermitian manifold.
pub fn check_hyp_crf(geo: &HypersurfaceGeometry, j: &EndoTM, policy: &ZeroPolicy) -> Result<Outcome> {
    require_integrable(j, policy)?;
    let ind = induced_almost_contact(geo, j, policy)?;
    let (l1, l2) = eq_crf2_lines(geo, &ind, policy)?;
    let classical = check_classical_crf(&ind.structure, policy)?;
    let own = l1.clone().and(l2.clone());
    Ok(Outcome::from_parts(vec![
        ("eqCRF2 line 1".into(), l1),
        ("eqCRF2 line 2".into(), l2),
        ("agreement".into(), agreement(&own, &classical, "eqCRF2 vs classical CRF of the induced structure")),
    ]))
}

/// Normality criterion: the CRF lines and `b(Z, X) = b(X, Z) = −½dΩ(ν, Z, JX)` for `X ∈ P`.
pub fn check_hyp_normal(geo: &HypersurfaceGeometry, j: &EndoTM, policy: &ZeroPolicy) -> Result<Outcome> {
    require_integrable(j, policy)?;
    let ind = induced_almost_contact(geo, j, policy)?;
    let (l1, l2) = eq_crf2_lines(geo, &ind, policy)?;
    let z = ind.z().comps().to_vec();
    let pz = geo.push(&z);
    let half = ScalarExpr::rational(1, 2);
    let mut items = Vec::new();
    for (a, x) in ind.p_set().iter().enumerate() {
        let px = geo.push(x);
        let rhs = ind.d_omega.eval(&geo.nu, &pz, &ind.apply_j(&px)).neg() * &half;
        items.push((geo.b(&z, x) - &rhs, format!("b(Z,X) + dOmega(nu,Z,JX)/2 (P{a})")));
        items.push((geo.b(x, &z) - &rhs, format!("b(X,Z) + dOmega(nu,Z,JX)/2 (P{a})")));
    }
    let l3 = all_zero(items, policy)?;
    let classical = check_normal_classical(&ind.structure, policy)?;
    let own = Verdict::all([l1.clone(), l2.clone(), l3.clone()]);
    Ok(Outcome::from_parts(vec![
        ("eqCRF2 line 1".into(), l1),
        ("eqCRF2 line 2".into(), l2),
        ("eqnormal2".into(), l3),
        ("agreement".into(), agreement(&own, &classical, "eqnormal2 vs classical normality of the induced structure")),
    ]))
}

/// `b(FX, FY) = b(X, Y)` on `P`.
pub fn check_eq_crf3(geo: &HypersurfaceGeometry, j: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    let ind = induced_almost_contact(geo, j, policy)?;
    Ok(eq_crf2_lines(geo, &ind, policy)?.1)
}

/// `dΞ = 0` for the induced fundamental form.
pub fn check_closed_fundamental_form(geo: &HypersurfaceGeometry, j: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    let ind = induced_almost_contact(geo, j, policy)?;
    let xi_form = TwoForm::new(geo.emb.domain(), ind.f().matrix().transpose().mul(geo.s.matrix()))?;
    let d = ext_d(&xi_form);
    all_zero(d.components().iter().enumerate().map(|(k, c)| (c.clone(), format!("dXi[{k}]"))), policy)
}

/// `L_ZΞ(FX, FY) = L_ZΞ(X, Y)` on the full frame, and agreement with the first CRF line on `P`.
pub fn check_lxi(geo: &HypersurfaceGeometry, j: &EndoTM, policy: &ZeroPolicy) -> Result<Outcome> {
    let ind = induced_almost_contact(geo, j, policy)?;
    let xi_form = TwoForm::new(geo.emb.domain(), ind.f().matrix().transpose().mul(geo.s.matrix()))?;
    let lz = xi_form.lie_along(ind.z())?;
    let lm = lz.matrix();
    let f = ind.f().matrix();
    let check_on = |set: &[Vec<ScalarExpr>], tag: &str| -> Result<Verdict> {
        let mut items = Vec::new();
        for (a, x) in set.iter().enumerate() {
            for (c, y) in set.iter().enumerate().skip(a + 1) {
                let d = lm.bilinear(&f.mul_vec(x), &f.mul_vec(y)) - lm.bilinear(x, y);
                items.push((d, format!("L_Z Xi(FX,FY) - L_Z Xi(X,Y) ({tag}{a},{tag}{c})")));
            }
        }
        all_zero(items, policy)
    };
    let full = check_on(&geo.frame_n(), "d")?;
    let on_p = check_on(&ind.p_set(), "P")?;
    let (l1, _) = eq_crf2_lines(geo, &ind, policy)?;
    Ok(Outcome::from_parts(vec![
        ("LXi".into(), full),
        ("agreement".into(), agreement(&on_p, &l1, "LXi vs eqCRF2 line 1")),
    ]))
}

/// `∇^γ_Z Z = 0` for `Z = −Jν`.
pub fn check_geodesic(geo: &HypersurfaceGeometry, j: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    let ind = induced_almost_contact(geo, j, policy)?;
    let z = ind.z().comps().to_vec();
    let d = geo.cov_along(&z, &geo.push(&z));
    vec_zero(&d, policy, "nabla_Z Z")
}

/// `2γ(∇_XJ(Y), U) = dΩ(X,Y,U) − dΩ(X,JY,JU)` and
/// `dΩ(JZ,JX,JY) = dΩ(JZ,X,Y) + dΩ(Z,JX,Y) + dΩ(Z,X,JY)` on frame triples.
pub fn hermitian_identities(gamma: &MetricField, j: &EndoTM, policy: &ZeroPolicy) -> Result<Outcome> {
    require(check_almost_hermitian(gamma, j, policy)?, "(gamma, J) is not almost Hermitian")?;
    let lc = LeviCivita::new(gamma)?;
    let d_omega = ext_d(&kahler_form(gamma, j)?);
    let e = frame(gamma.chart());
    let je: Vec<VectorField> = e.iter().map(|x| j.apply(x)).collect();
    let two = ScalarExpr::int(2);
    let mut kn = Vec::new();
    let mut herm = Vec::new();
    for (a, x) in e.iter().enumerate() {
        let nj = lc.cov_endo(x, j)?;
        for (b, y) in e.iter().enumerate() {
            let njy = nj.apply(y);
            for (c, u) in e.iter().enumerate() {
                let lhs = &two * &gamma.inner(&njy, u);
                let rhs = d_omega.eval(x, y, u) - d_omega.eval(x, &je[b], &je[c]);
                kn.push((lhs - rhs, format!("eqdinKN (d{a},d{b},d{c})")));
                if b < c {
                    let l = d_omega.eval(&je[a], &je[b], &je[c]);
                    let r = d_omega.eval(&je[a], y, u) + d_omega.eval(x, &je[b], u) + d_omega.eval(x, y, &je[c]);
                    herm.push((l - r, format!("identHerm (d{a},d{b},d{c})")));
                }
            }
        }
    }
    Ok(Outcome::from_parts(vec![
        ("eqdinKN".into(), all_zero(kn, policy)?),
        ("identHerm".into(), all_zero(herm, policy)?),
    ]))
}

/// Ambient generalized almost Hermitian data `(γ, ψ, J₊, J₋)`.
#[derive(Clone, Debug)]
pub struct GenHermitian {
    pub gamma: MetricField,
    pub psi: TwoForm,
    pub jp: EndoTM,
    pub jm: EndoTM,
}

impl GenHermitian {
    pub fn j(&self, s: Sign) -> &EndoTM {
        match s {
            Sign::Plus => &self.jp,
            Sign::Minus => &self.jm,
        }
    }
}

/// `γ(∇_XJ±(Y), U) = ∓½[dψ(X, J±Y, U) + dψ(X, Y, J±U)]` on frame triples.
pub fn check_relpsi_j(amb: &GenHermitian, policy: &ZeroPolicy) -> Result<Verdict> {
    let lc = LeviCivita::new(&amb.gamma)?;
    let dpsi = ext_d(&amb.psi);
    let e = frame(amb.gamma.chart());
    let half = ScalarExpr::rational(1, 2);
    let mut items = Vec::new();
    for sign in Sign::BOTH {
        let j = amb.j(sign);
        let k = sign.expr() * &half;
        for (a, x) in e.iter().enumerate() {
            let nj = lc.cov_endo(x, j)?;
            for (b, y) in e.iter().enumerate() {
                let njy = nj.apply(y);
                let jy = j.apply(y);
                for (c, u) in e.iter().enumerate() {
                    let lhs = amb.gamma.inner(&njy, u);
                    let rhs = (dpsi.eval(x, &jy, u) + dpsi.eval(x, y, &j.apply(u))) * &k;
                    items.push((lhs + rhs, format!("relpsiJ{} (d{a},d{b},d{c})", sign.symbol())));
                }
            }
        }
    }
    all_zero(items, policy)
}

/// `dΩ±(J±X, J±Y, J±U) = ∓dψ(X, Y, U)` on frame triples.
pub fn check_relpsi_omega(amb: &GenHermitian, policy: &ZeroPolicy) -> Result<Verdict> {
    let dpsi = ext_d(&amb.psi);
    let e = frame(amb.gamma.chart());
    let n = e.len();
    let mut items = Vec::new();
    for sign in Sign::BOTH {
        let j = amb.j(sign);
        let dom = ext_d(&kahler_form(&amb.gamma, j)?);
        let je: Vec<VectorField> = e.iter().map(|x| j.apply(x)).collect();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let l = dom.eval(&je[a], &je[b], &je[c]);
                    let r = dpsi.eval(&e[a], &e[b], &e[c]) * &sign.expr();
                    items.push((l + r, format!("relpsiOmega{} (d{a},d{b},d{c})", sign.symbol())));
                }
            }
        }
    }
    all_zero(items, policy)
}

/// Hermitian pairs, integrability of `J±`, and the two equivalent forms of the compatibility with `dψ`.
pub fn check_gen_kahler(amb: &GenHermitian, policy: &ZeroPolicy) -> Result<Outcome> {
    let mut parts = Vec::new();
    for sign in Sign::BOTH {
        let j = amb.j(sign);
        parts.push((format!("Hermitian {}", sign.symbol()), check_almost_hermitian(&amb.gamma, j, policy)?));
    }
    if !parts.iter().all(|(_, v)| v.holds()) {
        return Ok(Outcome::from_parts(parts));
    }
    for sign in Sign::BOTH {
        let j = amb.j(sign);
        parts.push((format!("N_J{}", sign.symbol()), check_nijenhuis_zero(j, policy, &format!("N_J{}", sign.symbol()))?));
    }
    let rj = check_relpsi_j(amb, policy)?;
    let ro = check_relpsi_omega(amb, policy)?;
    let agree = agreement(&rj, &ro, "relpsiJ vs relpsiOmega");
    parts.push(("relpsiJ".into(), rj));
    parts.push(("relpsiOmega".into(), ro));
    parts.push(("agreement".into(), agree));
    Ok(Outcome::from_parts(parts))
}

/// The two induced classical structures, `κ = ι*ψ`, and the assembled (2,1) structure.
#[derive(Clone, Debug)]
pub struct InducedGen {
    pub plus: InducedStructure,
    pub minus: InducedStructure,
    pub metric: GenMetric,
    pub structure: TwoOneGAC,
}

impl InducedGen {
    pub fn side(&self, s: Sign) -> &InducedStructure {
        match s {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn gen_f(&self) -> Result<GenF> {
        GenF::from_quadruple_unchecked(self.metric.clone(), self.plus.f().clone(), self.minus.f().clone())
    }
}

pub fn induced_gen_structure(geo: &HypersurfaceGeometry, amb: &GenHermitian, policy: &ZeroPolicy) -> Result<InducedGen> {
    if geo.gamma.matrix() != amb.gamma.matrix() {
        return Err(GgError::Precondition("hypersurface geometry was built for a different ambient metric".into()));
    }
    let plus = induced_almost_contact(geo, &amb.jp, policy)?;
    let minus = induced_almost_contact(geo, &amb.jm, policy)?;
    let e = &geo.emb;
    let kappa = TwoForm::new(e.domain(), geo.jac.transpose().mul(&e.restrict_mat(amb.psi.matrix())).mul(&geo.jac))?;
    let metric = GenMetric::new(geo.s.clone(), kappa)?;
    let pair = ClassicalPair {
        fp: plus.f().clone(),
        fm: minus.f().clone(),
        zp: plus.z().clone(),
        zm: minus.z().clone(),
        xip: plus.xi().clone(),
        xim: minus.xi().clone(),
    };
    let structure = TwoOneGAC::from_pair(metric.clone(), pair)?;
    Ok(InducedGen { plus, minus, metric, structure })
}

/// CRFK criterion for the induced generalized F structure of a hypersurface of a generalized Kähler manifold.
pub fn check_hyp_crfk(geo: &HypersurfaceGeometry, amb: &GenHermitian, policy: &ZeroPolicy) -> Result<Outcome> {
    let gk = check_gen_kahler(amb, policy)?;
    if let Some((name, v)) = gk.parts.iter().find(|(_, v)| !v.holds()) {
        return Err(GgError::Precondition(format!("ambient is not generalized Kahler: {name} {v}")));
    }
    let ig = induced_gen_structure(geo, amb, policy)?;
    let e = &geo.emb;
    let dpsi = Along3::new(&ext_d(&amb.psi), e);
    let m = e.domain().dim();
    let cols: Vec<Vec<ScalarExpr>> = (0..m).map(|j| geo.jac.column(j)).collect();
    let theta = Mat::from_fn(m, m, |i, j| dpsi.eval(&geo.nu, &cols[i], &cols[j]));
    let half = ScalarExpr::rational(1, 2);
    let mut parts = Vec::new();
    for sign in Sign::BOTH {
        let ind = ig.side(sign);
        let f = ind.f().matrix();
        let p = ind.p_set();
        let mut l1 = Vec::new();
        for (a, x) in p.iter().enumerate() {
            for (c, y) in p.iter().enumerate().skip(a + 1) {
                let d = theta.bilinear(&f.mul_vec(x), &f.mul_vec(y)) - theta.bilinear(x, y);
                l1.push((d, format!("theta(FX,FY) - theta(X,Y) (P{a},P{c})")));
            }
        }
        let mut l2 = Vec::new();
        let k = sign.expr() * &half;
        for (a, x) in geo.frame_n().iter().enumerate() {
            for (c, u) in p.iter().enumerate() {
                let fu = f.mul_vec(u);
                l2.push((geo.b(x, &fu) + theta.bilinear(x, &fu) * &k, format!("b(X,FU) +- theta(X,FU)/2 (d{a},P{c})")));
            }
        }
        parts.push((format!("eqptans3 line 1 {}", sign.symbol()), all_zero(l1, policy)?));
        parts.push((format!("eqptans3 line 2 {}", sign.symbol()), all_zero(l2, policy)?));
    }
    let own = Verdict::all(parts.iter().map(|(_, v)| v.clone()));
    if own.holds() {
        for sign in Sign::BOTH {
            let v = check_normal_classical(&ig.side(sign).structure, policy)?;
            parts.push((format!("induced normal {}", sign.symbol()), v));
        }
    }
    let crfk = check_crfk(&ig.gen_f()?, policy)?;
    parts.push(("agreement".into(), agreement(&own, &crfk.verdict, "eqptans3 vs CRFK of the induced structure")));
    Ok(Outcome::from_parts(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Chart;
    use crate::symexpr::parse;

    fn p(s: &str) -> ScalarExpr {
        parse(s).unwrap()
    }

    fn std_j(c: &ChartRef) -> EndoTM {
        let m = Mat::from_rows(
            [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]
                .iter()
                .map(|r| r.iter().map(|s| p(s)).collect())
                .collect(),
        )
        .unwrap();
        EndoTM::new(c, m).unwrap()
    }

    #[test]
    fn hyperplane_normal_and_form() {
        let m = Chart::new("C2", &["x1", "x2", "x3", "x4"]).unwrap();
        let n = Chart::new("H", &["x1", "x2", "x3"]).unwrap();
        let e = Embedding::new(&n, &m, vec![p("x1"), p("x2"), p("x3"), p("0")], Orientation::Positive).unwrap();
        let pol = ZeroPolicy::default();
        let geo = HypersurfaceGeometry::new(&e, &MetricField::euclidean(&m), &pol).unwrap();
        assert_eq!(geo.normal(), &[p("0"), p("0"), p("0"), p("1")]);
        assert!(geo.second_form().is_syntactically_zero());
        let ind = induced_almost_contact(&geo, &std_j(&m), &pol).unwrap();
        assert_eq!(ind.z().comps(), &[p("0"), p("0"), p("1")]);
        assert!(check_fundamental_form(&geo, &ind, &pol).unwrap().is_proved());
    }

    #[test]
    fn sphere_is_umbilical() {
        let m = Chart::new("C2", &["x1", "x2", "x3", "x4"]).unwrap();
        let n = Chart::new("S3", &["u", "v", "w"]).unwrap();
        let r = "(1 + u^2 + v^2 + w^2)";
        let comps = vec![p(&format!("2*u/{r}")), p(&format!("2*v/{r}")), p(&format!("2*w/{r}")), p(&format!("(u^2 + v^2 + w^2 - 1)/{r}"))];
        let pol = ZeroPolicy::default();
        for o in [Orientation::Positive, Orientation::Negative] {
            let e = Embedding::new(&n, &m, comps.clone(), o).unwrap();
            let geo = HypersurfaceGeometry::new(&e, &MetricField::euclidean(&m), &pol).unwrap();
            let out = check_geometry(&geo, &pol).unwrap();
            assert!(out.verdict.holds(), "{out:#?}");
            assert!(check_umbilical(&geo, &pol).unwrap().holds());
            let inward = geo.b.sub(geo.s.matrix()).is_syntactically_zero();
            let outward = geo.b.add(geo.s.matrix()).is_syntactically_zero();
            assert_eq!((inward, outward), (o == Orientation::Positive, o == Orientation::Negative));
        }
    }

    fn sphere() -> (ChartRef, HypersurfaceGeometry) {
        let m = Chart::new("C2", &["x1", "x2", "x3", "x4"]).unwrap();
        let n = Chart::new("S3", &["u", "v", "w"]).unwrap();
        let r = "(1 + u^2 + v^2 + w^2)";
        let comps = vec![p(&format!("2*u/{r}")), p(&format!("2*v/{r}")), p(&format!("2*w/{r}")), p(&format!("(u^2 + v^2 + w^2 - 1)/{r}"))];
        let e = Embedding::new(&n, &m, comps, Orientation::Positive).unwrap();
        let geo = HypersurfaceGeometry::new(&e, &MetricField::euclidean(&m), &ZeroPolicy::default()).unwrap();
        (m, geo)
    }

    #[test]
    fn sphere_criteria() {
        let pol = ZeroPolicy::default();
        let (m, geo) = sphere();
        let j = std_j(&m);
        assert!(mat_equal(geo.second_form(), geo.induced_metric().matrix(), &pol, "b - s").unwrap().holds());
        assert!(check_hyp_crf(&geo, &j, &pol).unwrap().verdict.holds());
        assert!(check_hyp_normal(&geo, &j, &pol).unwrap().verdict.holds());
        assert!(check_lxi(&geo, &j, &pol).unwrap().verdict.holds());
        let amb = GenHermitian { gamma: MetricField::euclidean(&m), psi: TwoForm::zero(&m), jp: j.clone(), jm: j };
        let o = check_hyp_crfk(&geo, &amb, &pol).unwrap();
        assert!(o.verdict.witness().is_some());
        assert!(o.part("agreement").unwrap().holds());
        let ig = induced_gen_structure(&geo, &amb, &pol).unwrap();
        assert!(crate::structures::twoone::validate(&ig.structure, &pol).unwrap().verdict.holds());
    }

    #[test]
    fn hyperplane_criteria() {
        let pol = ZeroPolicy::default();
        let m = Chart::new("C2", &["x1", "x2", "x3", "x4"]).unwrap();
        let n = Chart::new("H", &["a", "b", "c"]).unwrap();
        let e = Embedding::new(&n, &m, vec![p("a"), p("b"), p("c"), p("0")], Orientation::Positive).unwrap();
        let geo = HypersurfaceGeometry::new(&e, &MetricField::euclidean(&m), &pol).unwrap();
        let j = std_j(&m);
        assert!(check_geometry(&geo, &pol).unwrap().verdict.is_proved());
        assert!(check_totally_geodesic(&geo, &pol).unwrap().is_proved());
        assert!(check_closed_fundamental_form(&geo, &j, &pol).unwrap().is_proved());
        assert!(check_eq_crf3(&geo, &j, &pol).unwrap().is_proved());
        assert!(check_geodesic(&geo, &j, &pol).unwrap().is_proved());
        let amb = GenHermitian { gamma: MetricField::euclidean(&m), psi: TwoForm::zero(&m), jp: j.clone(), jm: j };
        let o = check_hyp_crfk(&geo, &amb, &pol).unwrap();
        assert!(o.verdict.is_proved(), "{o:#?}");
        assert!(o.part("induced normal +").unwrap().is_proved());
    }

    #[test]
    fn relpsi_forms_agree_on_non_closed_psi() {
        let pol = ZeroPolicy::default();
        let m = Chart::new("C2", &["x1", "x2", "x3", "x4"]).unwrap();
        let mut psi = Mat::zeros(4, 4);
        psi[(1, 2)] = p("x1");
        psi[(2, 1)] = p("-x1");
        let j = std_j(&m);
        let amb = GenHermitian { gamma: MetricField::euclidean(&m), psi: TwoForm::new(&m, psi).unwrap(), jp: j.clone(), jm: j };
        let o = check_gen_kahler(&amb, &pol).unwrap();
        assert!(o.part("relpsiJ").unwrap().witness().is_some());
        assert!(o.part("relpsiOmega").unwrap().witness().is_some());
        assert!(o.part("agreement").unwrap().is_proved());
    }

    #[test]
    fn eqdinkn_detects_non_integrable_j() {
        let pol = ZeroPolicy::default();
        let m = Chart::new("R4", &["x", "y", "z", "t"]).unwrap();
        let j = Mat::from_rows(
            [["0", "-exp(-z)", "0", "0"], ["exp(z)", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]
                .iter()
                .map(|r| r.iter().map(|s| p(s)).collect())
                .collect(),
        )
        .unwrap();
        let j = EndoTM::new(&m, j).unwrap();
        let mut g = Mat::identity(4);
        g[(0, 0)] = p("exp(z)");
        g[(1, 1)] = p("exp(-z)");
        let g = MetricField::new(&m, g).unwrap();
        assert!(!check_nijenhuis_zero(&j, &pol, "N_J").unwrap().holds());
        let o = hermitian_identities(&g, &j, &pol).unwrap();
        assert!(o.part("eqdinKN").unwrap().witness().is_some());
    }
}
