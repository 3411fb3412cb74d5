//! (2,1)-generalized almost contact structures.

use crate::calculus::{same_chart, ChartRef, EndoTM, Mat, MetricField, OneForm, TwoForm, VectorField};
use crate::courant::{courant_bracket, naive_d, nijenhuis_big, pairing_matrix, pairing_unchecked, BigEndo, BigSection};
use crate::error::{GgError, Result};
use crate::numeric;
use crate::structures::classical::AlmostContact;
use crate::structures::generalized::{big_spanning_set, GenF, GenMetric, Sign};
use crate::symexpr::{Coeff, ScalarExpr, Verdict, ZeroPolicy};
use crate::verify::{agreement, all_zero, chain, mat_equal, mat_zero, probe_function, vec_zero, Outcome};

/// Two classical structures `(F±, Z±, ξ±)` sharing the metric of a generalized metric.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalPair {
    pub fp: EndoTM,
    pub fm: EndoTM,
    pub zp: VectorField,
    pub zm: VectorField,
    pub xip: OneForm,
    pub xim: OneForm,
}

impl ClassicalPair {
    pub fn duplicate(s: &AlmostContact) -> Self {
        ClassicalPair {
            fp: s.f.clone(),
            fm: s.f.clone(),
            zp: s.z.clone(),
            zm: s.z.clone(),
            xip: s.xi.clone(),
            xim: s.xi.clone(),
        }
    }

    pub fn f(&self, s: Sign) -> &EndoTM {
        match s {
            Sign::Plus => &self.fp,
            Sign::Minus => &self.fm,
        }
    }

    pub fn z(&self, s: Sign) -> &VectorField {
        match s {
            Sign::Plus => &self.zp,
            Sign::Minus => &self.zm,
        }
    }

    pub fn xi(&self, s: Sign) -> &OneForm {
        match s {
            Sign::Plus => &self.xip,
            Sign::Minus => &self.xim,
        }
    }

    pub fn structure(&self, s: Sign, gamma: &MetricField) -> AlmostContact {
        AlmostContact {
            f: self.f(s).clone(),
            z: self.z(s).clone(),
            xi: self.xi(s).clone(),
            metric: Some(gamma.clone()),
        }
    }

    /// `(F₊, −F₋, Z₊, −Z₋, ξ₊, −ξ₋)`.
    pub fn second(&self) -> Self {
        ClassicalPair {
            fp: self.fp.clone(),
            fm: self.fm.neg(),
            zp: self.zp.clone(),
            zm: self.zm.neg(),
            xip: self.xip.clone(),
            xim: self.xim.neg(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoOneGAC {
    f: BigEndo,
    zp: BigSection,
    zm: BigSection,
    metric: Option<GenMetric>,
    pair: Option<ClassicalPair>,
}

impl TwoOneGAC {
    /// Generic data; with a metric the classical pair is read off `ℱ` on `V±`.
    pub fn new(f: BigEndo, zp: BigSection, zm: BigSection, metric: Option<GenMetric>) -> Result<Self> {
        same_chart(f.chart(), zp.chart())?;
        same_chart(f.chart(), zm.chart())?;
        let pair = match &metric {
            Some(m) => {
                same_chart(f.chart(), m.chart())?;
                let n = m.chart().dim();
                let c = m.chart();
                let fs = |s: Sign| EndoTM::raw(c, f.matrix().mul(&m.graph(s)).block(0, 0, n, n));
                Some(ClassicalPair {
                    fp: fs(Sign::Plus),
                    fm: fs(Sign::Minus),
                    zp: zp.x.clone(),
                    zm: zm.x.clone(),
                    xip: m.gamma().flat(&zp.x),
                    xim: m.gamma().flat(&zm.x),
                })
            }
            None => None,
        };
        Ok(TwoOneGAC { f, zp, zm, metric, pair })
    }

    /// `ℱ(X,α) = (FX, −α∘F)`, `𝒵± = (Z, ±ξ)`, with `ψ = 0` when a metric is present.
    pub fn from_classical(s: &AlmostContact) -> Result<Self> {
        let f = GenF::classical(&s.f).endo().clone();
        let zp = BigSection::new(s.z.clone(), s.xi.clone())?;
        let zm = BigSection::new(s.z.clone(), s.xi.neg())?;
        let metric = match &s.metric {
            Some(g) => Some(GenMetric::new(g.clone(), TwoForm::zero(s.chart()))?),
            None => None,
        };
        let pair = metric.as_ref().map(|_| ClassicalPair::duplicate(s));
        Ok(TwoOneGAC { f, zp, zm, metric, pair })
    }

    /// `ℱ` from the quadruple and `𝒵± = (Z±, ♭_{ψ±γ}Z±)`.
    pub fn from_pair(metric: GenMetric, pair: ClassicalPair) -> Result<Self> {
        let f = GenF::from_quadruple_unchecked(metric.clone(), pair.fp.clone(), pair.fm.clone())?.endo().clone();
        let zp = metric.v_section(Sign::Plus, &pair.zp);
        let zm = metric.v_section(Sign::Minus, &pair.zm);
        Ok(TwoOneGAC { f, zp, zm, metric: Some(metric), pair: Some(pair) })
    }

    /// `ℱ' = 𝒢ℱ`, `𝒵'± = ±𝒵±`.
    pub fn second(&self) -> Result<Self> {
        let m = self.require_metric()?;
        Ok(TwoOneGAC {
            f: m.endo().compose(&self.f),
            zp: self.zp.clone(),
            zm: self.zm.neg(),
            metric: self.metric.clone(),
            pair: self.pair.as_ref().map(ClassicalPair::second),
        })
    }

    /// Rejects data failing the defining identities.
    pub fn validated(self, policy: &ZeroPolicy) -> Result<Self> {
        let o = validate(&self, policy)?;
        for (name, v) in &o.parts {
            if let Some(w) = v.witness() {
                return Err(GgError::Precondition(format!("({name}) fails: {w}")));
            }
        }
        Ok(self)
    }

    pub fn chart(&self) -> &ChartRef {
        self.f.chart()
    }

    pub fn f(&self) -> &BigEndo {
        &self.f
    }

    pub fn z(&self, s: Sign) -> &BigSection {
        match s {
            Sign::Plus => &self.zp,
            Sign::Minus => &self.zm,
        }
    }

    pub fn metric(&self) -> Option<&GenMetric> {
        self.metric.as_ref()
    }

    pub fn pair(&self) -> Option<&ClassicalPair> {
        self.pair.as_ref()
    }

    pub fn require_metric(&self) -> Result<&GenMetric> {
        self.metric.as_ref().ok_or_else(|| GgError::Precondition("structure has no generalized metric".into()))
    }

    pub fn require_pair(&self) -> Result<(&GenMetric, &ClassicalPair)> {
        let m = self.require_metric()?;
        Ok((m, self.pair.as_ref().expect("pair present with metric")))
    }

    /// `pr_S = Id + ℱ²`.
    pub fn pr_s(&self) -> BigEndo {
        BigEndo::identity(self.chart()).add(&self.f.pow(2))
    }

    /// Spanning set of `L = im ℱ`.
    pub fn l_spanning(&self) -> Vec<(usize, BigSection)> {
        big_spanning_set(self.chart(), self.f.matrix())
    }
}

fn pvec(s: &BigSection) -> Vec<ScalarExpr> {
    pairing_matrix(s.chart().dim()).mul_vec(&s.components())
}

/// `g(𝒵₊,𝒵₋) = 0`, `g(𝒵₊,𝒵₊) = 1`, `g(𝒵₋,𝒵₋) = −1`.
pub fn check_almoct_zpm(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let (p, m) = (&s.zp, &s.zm);
    all_zero(
        [
            (pairing_unchecked(p, m), "g(Z+,Z-)".to_string()),
            (pairing_unchecked(p, p) - ScalarExpr::one(), "g(Z+,Z+) - 1".to_string()),
            (pairing_unchecked(m, m) + ScalarExpr::one(), "g(Z-,Z-) + 1".to_string()),
        ],
        policy,
    )
}

/// `ℱ𝒵± = 0`, `ℱ² = −Id + ♭_g𝒵₊⊗𝒵₊ − ♭_g𝒵₋⊗𝒵₋`.
pub fn check_almct_f2(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let c = s.chart();
    let rhs = BigEndo::identity(c)
        .neg()
        .add(&BigEndo::flat_tensor(&s.zp, &s.zp)?)
        .sub(&BigEndo::flat_tensor(&s.zm, &s.zm)?);
    chain([
        vec_zero(&s.f.apply(&s.zp).components(), policy, "F Z+"),
        vec_zero(&s.f.apply(&s.zm).components(), policy, "F Z-"),
        mat_equal(s.f.pow(2).matrix(), rhs.matrix(), policy, "F^2 + Id - Z+ (x) Z+ + Z- (x) Z-"),
    ])
}

/// `G(ℱ𝒳,ℱ𝒴) = G(𝒳,𝒴) − g(𝒵₊,𝒳)g(𝒵₊,𝒴) − g(𝒵₋,𝒳)g(𝒵₋,𝒴)` and `𝒵± ∈ V±`.
pub fn check_21metric(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let m = s.require_metric()?;
    let f = s.f.matrix();
    let g = m.matrix();
    let (pp, pm) = (pvec(&s.zp), pvec(&s.zm));
    let rhs = g.sub(&Mat::outer(&pp, &pp)).sub(&Mat::outer(&pm, &pm));
    chain([
        mat_equal(&f.transpose().mul(g).mul(f), &rhs, policy, "G(FX,FY) - rhs"),
        vec_zero(&m.endo().apply(&s.zp).sub(&s.zp).components(), policy, "GZ+ - Z+"),
        vec_zero(&m.endo().apply(&s.zm).add(&s.zm).components(), policy, "GZ- + Z-"),
    ])
}

/// The defining identities, by label.
pub fn validate(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let mut parts = vec![
        ("almoctZpm".to_string(), check_almoct_zpm(s, policy)?),
        ("almctF2".to_string(), check_almct_f2(s, policy)?),
    ];
    if s.metric.is_some() {
        parts.push(("21metriccuZpm".to_string(), check_21metric(s, policy)?));
    }
    Ok(Outcome::from_parts(parts))
}

/// Pseudo-orthonormal pair `𝒯± = a±∂t + b±dt`, given as `(a, b)`.
#[derive(Clone, Debug)]
pub struct LineBasis {
    pub tp: (ScalarExpr, ScalarExpr),
    pub tm: (ScalarExpr, ScalarExpr),
}

impl Default for LineBasis {
    fn default() -> Self {
        LineBasis { tp: (ScalarExpr::one(), ScalarExpr::one()), tm: (ScalarExpr::int(-1), ScalarExpr::one()) }
    }
}

impl LineBasis {
    fn validate(&self) -> Result<()> {
        let g = |u: &(ScalarExpr, ScalarExpr), v: &(ScalarExpr, ScalarExpr)| (&u.0 * &v.1 + &u.1 * &v.0).scale(&Coeff::ratio(1, 2));
        let ok = (g(&self.tp, &self.tp) - ScalarExpr::one()).is_zero()
            && (g(&self.tm, &self.tm) + ScalarExpr::one()).is_zero()
            && g(&self.tp, &self.tm).is_zero();
        if ok {
            Ok(())
        } else {
            Err(GgError::Precondition("basis of T R + T*R is not g-pseudo-orthonormal".into()))
        }
    }

    fn section(pc: &ChartRef, t: &(ScalarExpr, ScalarExpr)) -> BigSection {
        let n = pc.dim();
        let mut comps = vec![ScalarExpr::zero(); 2 * n];
        comps[n - 1] = t.0.clone();
        comps[2 * n - 1] = t.1.clone();
        BigSection::from_components(pc, &comps).expect("length")
    }
}

/// `𝒥 = ℱ + ♭𝒵₊⊗𝒯₊ + ♭𝒵₋⊗𝒯₋ − ♭𝒯₊⊗𝒵₊ − ♭𝒯₋⊗𝒵₋` on `M × ℝ`.
pub fn product_j(s: &TwoOneGAC, basis: &LineBasis) -> Result<BigEndo> {
    basis.validate()?;
    let pc = s.chart().product_with_line("t")?;
    let f = s.f.lift(&pc)?;
    let zp = s.zp.lift(&pc)?;
    let zm = s.zm.lift(&pc)?;
    let tp = LineBasis::section(&pc, &basis.tp);
    let tm = LineBasis::section(&pc, &basis.tm);
    Ok(f.add(&BigEndo::flat_tensor(&zp, &tp)?)
        .add(&BigEndo::flat_tensor(&zm, &tm)?)
        .sub(&BigEndo::flat_tensor(&tp, &zp)?)
        .sub(&BigEndo::flat_tensor(&tm, &zm)?))
}

/// `𝒥² = −Id` and g-skew.
pub fn check_gen_complex(j: &BigEndo, policy: &ZeroPolicy) -> Result<Verdict> {
    chain([
        mat_equal(j.pow(2).matrix(), BigEndo::identity(j.chart()).neg().matrix(), policy, "J^2 + Id"),
        mat_zero(&j.skew_defect(), policy, "g(JX,Y) + g(X,JY)"),
    ])
}

/// `N_𝒜 = 0` on all pairs of the big coordinate frame.
pub fn check_big_nijenhuis_zero(a: &BigEndo, policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    let e = BigSection::frame(a.chart());
    let mut items = Vec::new();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let n = nijenhuis_big(a, &e[i], &e[j])?;
            for (k, c) in n.components().iter().enumerate() {
                items.push((c.clone(), format!("{ctx}(e{i},e{j})[{k}]")));
            }
        }
    }
    all_zero(items, policy)
}

/// Normality as integrability of `𝒥` on `M × ℝ`.
pub fn check_normal_nj(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let j = product_j(s, &LineBasis::default())?;
    chain([check_gen_complex(&j, policy), check_big_nijenhuis_zero(&j, policy, "N_J")])
}

/// `Φ = iℱ + ♭𝒵₊⊗𝒵₋ − ♭𝒵₋⊗𝒵₊`.
pub fn phi_endo(s: &TwoOneGAC) -> Result<BigEndo> {
    Ok(s.f
        .scale_c(&Coeff::i())
        .add(&BigEndo::flat_tensor(&s.zp, &s.zm)?)
        .sub(&BigEndo::flat_tensor(&s.zm, &s.zp)?))
}

/// `Φ² = Id`, g-skew, `Φ𝒵± = 𝒵∓`.
pub fn check_eq_phi(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let phi = phi_endo(s)?;
    chain([
        mat_equal(phi.pow(2).matrix(), &Mat::identity(2 * s.chart().dim()), policy, "Phi^2 - Id"),
        mat_zero(&phi.skew_defect(), policy, "g(PhiX,Y) + g(X,PhiY)"),
        vec_zero(&phi.apply(&s.zp).sub(&s.zm).components(), policy, "Phi Z+ - Z-"),
        vec_zero(&phi.apply(&s.zm).sub(&s.zp).components(), policy, "Phi Z- - Z+"),
    ])
}

/// `G(Φ𝒳,Φ𝒴) = −G(𝒳,𝒴)` on `L`, with `Φ` a `G`-isometry on `span{𝒵±}`:
/// `G(Φ𝒳,Φ𝒴) + G(𝒳,𝒴) = 2G(𝒵₊,𝒳)G(𝒵₊,𝒴) + 2G(𝒵₋,𝒳)G(𝒵₋,𝒴)`.
pub fn check_phi_g(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let m = s.require_metric()?;
    let phi = phi_endo(s)?;
    let g = m.matrix();
    let gp = g.mul_vec(&s.zp.components());
    let gm = g.mul_vec(&s.zm.components());
    let two = ScalarExpr::int(2);
    let corr = Mat::outer(&gp, &gp).add(&Mat::outer(&gm, &gm)).scale(&two);
    mat_equal(&phi.matrix().transpose().mul(g).mul(phi.matrix()).add(g), &corr, policy, "G(PhiX,PhiY) + G(X,Y) - 2 sum G(Z,X)G(Z,Y)")
}

/// Both eigenbundles of `Φ` have rank `n` at sample points and contain `𝒵₊ ± 𝒵₋`.
pub fn check_eq_gy(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let phi = phi_endo(s)?;
    let n = s.chart().dim();
    let id = BigEndo::identity(s.chart());
    let sum = s.zp.add(&s.zm);
    let diff = s.zp.sub(&s.zm);
    let sym = chain([
        vec_zero(&phi.apply(&sum).sub(&sum).components(), policy, "Phi(Z+ + Z-) - (Z+ + Z-)"),
        vec_zero(&phi.apply(&diff).add(&diff).components(), policy, "Phi(Z+ - Z-) + (Z+ - Z-)"),
    ])?;
    if !sym.holds() {
        return Ok(sym);
    }
    for (sign, proj) in [("+1", id.add(&phi)), ("-1", id.sub(&phi))] {
        for (pt, m) in numeric::good_points(s.chart(), proj.matrix(), policy, 4)? {
            let r = numeric::rank(&m, 1e-9);
            if r != n {
                let point = pt.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
                return Ok(Verdict::Failed(Box::new(crate::symexpr::Witness {
                    point,
                    value: format!("rank {r}, expected {n}"),
                    context: format!("{sign}-eigenbundle of Phi"),
                })));
            }
        }
    }
    Ok(sym.and(Verdict::NumericallySupported))
}

/// `N_Φ = 0`, and the generalized contact flags `N_Φ ± N_Φ̄ = 0`.
pub fn phi_integrability(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let phi = phi_endo(s)?;
    let bar = phi.conj();
    let e = BigSection::frame(s.chart());
    let mut strong = Vec::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let a = nijenhuis_big(&phi, &e[i], &e[j])?.components();
            let b = nijenhuis_big(&bar, &e[i], &e[j])?.components();
            for k in 0..a.len() {
                let tag = format!("(e{i},e{j})[{k}]");
                strong.push((a[k].clone(), format!("N_Phi{tag}")));
                plus.push((&a[k] + &b[k], format!("N_Phi + N_Phibar{tag}")));
                minus.push((&a[k] - &b[k], format!("N_Phi - N_Phibar{tag}")));
            }
        }
    }
    let strong = all_zero(strong, policy)?;
    let plus = all_zero(plus, policy)?;
    let minus = all_zero(minus, policy)?;
    let contact = if plus.holds() { plus.clone() } else { minus.clone() };
    Ok(Outcome {
        verdict: strong.clone(),
        parts: vec![
            ("N_Phi".into(), strong),
            ("generalized contact".into(), contact),
            ("N_Phi + N_Phibar".into(), plus),
            ("N_Phi - N_Phibar".into(), minus),
        ],
    })
}

/// The three families of conditions, on spanning sets of `L`.
pub fn check_normaltotal(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let c = s.chart();
    let l = s.l_spanning();
    let probe = probe_function(c, policy.seed);
    let prs = s.pr_s();
    let line1 = vec_zero(&courant_bracket(&s.zp, &s.zm)?.components(), policy, "[Z+,Z-]")?;
    let mut items = Vec::new();
    for sign in Sign::BOTH {
        let z = s.z(sign);
        for (i, x) in &l {
            for (tag, xx) in [("", x.clone()), ("f*", x.scale(&probe))] {
                let r = courant_bracket(z, &s.f.apply(&xx))?.sub(&s.f.apply(&courant_bracket(z, &xx)?));
                for (k, e) in r.components().iter().enumerate() {
                    items.push((e.clone(), format!("[Z{0},F X] - F[Z{0},X] X={tag}F e{i} [{k}]", sign.symbol())));
                }
            }
        }
    }
    let line2 = all_zero(items, policy)?;
    let mut items = Vec::new();
    for a in 0..l.len() {
        for b in (a + 1)..l.len() {
            let (i, x) = &l[a];
            let (j, y) = &l[b];
            for (tag, xx) in [("", x.clone()), ("f*", x.scale(&probe))] {
                let r = nijenhuis_big(&s.f, &xx, y)?.sub(&prs.apply(&courant_bracket(&xx, y)?));
                for (k, e) in r.components().iter().enumerate() {
                    items.push((e.clone(), format!("N_F - prS[,] ({tag}F e{i}, F e{j})[{k}]")));
                }
            }
        }
    }
    let line3 = all_zero(items, policy)?;
    Ok(Outcome::from_parts(vec![("line 1".into(), line1), ("line 2".into(), line2), ("line 3".into(), line3)]))
}

/// `N_ℱ(𝒳,𝒴) + d_C𝒵₊(𝒳,𝒴)𝒵₊ − d_C𝒵₋(𝒳,𝒴)𝒵₋`.
pub fn normtotal2_tensor(s: &TwoOneGAC, x: &BigSection, y: &BigSection) -> Result<BigSection> {
    let n = nijenhuis_big(&s.f, x, y)?;
    let dp = naive_d(&s.zp, x, y)?;
    let dm = naive_d(&s.zm, x, y)?;
    Ok(n.add(&s.zp.scale(&dp)).sub(&s.zm.scale(&dm)))
}

/// Spanning set of `L` followed by `𝒵₊`, `𝒵₋`.
pub fn basic_sections(s: &TwoOneGAC) -> Vec<(String, BigSection)> {
    let mut out: Vec<(String, BigSection)> = s.l_spanning().into_iter().map(|(i, x)| (format!("F e{i}"), x)).collect();
    out.push(("Z+".into(), s.zp.clone()));
    out.push(("Z-".into(), s.zm.clone()));
    out
}

/// `T(f𝒳,𝒴) − fT(𝒳,𝒴) = −g(pr_S𝒳,𝒴)∂f` for the unified tensor `T`.
pub fn normtotal2_defect(s: &TwoOneGAC, f: &ScalarExpr, x: &BigSection, y: &BigSection) -> Result<BigSection> {
    let t = normtotal2_tensor(s, x, y)?;
    let ft = normtotal2_tensor(s, &x.scale(f), y)?;
    Ok(ft.sub(&t.scale(f)))
}

/// The unified tensor vanishes on pairs of basic sections and is bilinear there.
pub fn check_normtotal2(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let e = basic_sections(s);
    let probe = probe_function(s.chart(), policy.seed);
    let mut zero_items = Vec::new();
    let mut lin_items = Vec::new();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let (a, x) = &e[i];
            let (b, y) = &e[j];
            let t = normtotal2_tensor(s, x, y)?;
            let ft = normtotal2_tensor(s, &x.scale(&probe), y)?;
            let tf = normtotal2_tensor(s, x, &y.scale(&probe))?;
            for (k, c) in t.components().iter().enumerate() {
                zero_items.push((c.clone(), format!("normtotal2({a},{b})[{k}]")));
                lin_items.push((&ft.components()[k] - &(&probe * c), format!("T(f {a},{b}) - f T [{k}]")));
                lin_items.push((&tf.components()[k] - &(&probe * c), format!("T({a},f {b}) - f T [{k}]")));
            }
        }
    }
    Ok(Outcome::from_parts(vec![
        ("tensor".into(), all_zero(zero_items, policy)?),
        ("bilinear".into(), all_zero(lin_items, policy)?),
    ]))
}

/// Normality by the three families, cross-checked against the unified tensor.
pub fn check_normal_21(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let a = check_normaltotal(s, policy)?;
    let b = check_normtotal2(s, policy)?;
    let tensor = b.part("tensor").cloned().unwrap_or(Verdict::Proved);
    let mut parts = a.parts.clone();
    parts.push(("normtotal2".into(), tensor.clone()));
    parts.push(("agreement".into(), agreement(&a.verdict, &tensor, "normaltotal vs normtotal2")));
    let mut o = Outcome::from_parts(parts);
    o.verdict = match o.part("agreement") {
        Some(v) if !v.holds() => v.clone(),
        _ => a.verdict.clone(),
    };
    Ok(o)
}

/// Corank 2 and negative index 1.
pub fn check_corank_21(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    crate::structures::generalized::check_corank_neg(&s.f, (2, 1), policy)
}

/// `𝒥` for the classical structure equals `diag(J, −Jᵀ)` built from the classical product `J`.
pub fn check_matches_classical_j(s: &TwoOneGAC, ac: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    let j = product_j(s, &LineBasis::default())?;
    let cj = crate::structures::classical::product_j(ac, "t")?;
    let expected = GenF::classical(&cj);
    mat_equal(j.matrix(), expected.endo().matrix(), policy, "J - J(JF)")
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

    fn heisenberg() -> AlmostContact {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let f = EndoTM::new(&c, mat(&[&["0", "1", "0"], &["-1", "0", "0"], &["0", "y", "0"]])).unwrap();
        let z = VectorField::basis(&c, 2);
        let xi = OneForm::new(&c, vec![p("-y"), p("0"), p("1")]).unwrap();
        let g = MetricField::new(&c, mat(&[&["1 + y^2", "0", "-y"], &["0", "1", "0"], &["-y", "0", "1"]])).unwrap();
        AlmostContact::new(f, z, xi, Some(g)).unwrap()
    }

    #[test]
    fn classical_lift_is_valid_and_normal() {
        let pol = ZeroPolicy::default();
        let ac = heisenberg();
        let s = TwoOneGAC::from_classical(&ac).unwrap().validated(&pol).unwrap();
        assert!(check_matches_classical_j(&s, &ac, &pol).unwrap().is_proved());
        assert!(check_normal_21(&s, &pol).unwrap().verdict.is_proved());
        assert!(check_normal_nj(&s, &pol).unwrap().is_proved());
        assert!(check_eq_phi(&s, &pol).unwrap().is_proved());
        assert!(check_phi_g(&s, &pol).unwrap().is_proved());
    }

    #[test]
    fn pair_extraction_recovers_f() {
        let ac = heisenberg();
        let s = TwoOneGAC::from_classical(&ac).unwrap();
        let t = TwoOneGAC::new(s.f().clone(), s.z(Sign::Plus).clone(), s.z(Sign::Minus).clone(), s.metric().cloned()).unwrap();
        assert_eq!(t.pair().unwrap(), &ClassicalPair::duplicate(&ac));
    }

    #[test]
    fn unified_tensor_defect_off_basic_pairs() {
        let s = TwoOneGAC::from_classical(&heisenberg()).unwrap();
        let c = s.chart().clone();
        let f = p("x*y + 2");
        let e = BigSection::frame(&c);
        let prs = s.pr_s();
        for i in 0..e.len() {
            for j in 0..e.len() {
                let d = normtotal2_defect(&s, &f, &e[i], &e[j]).unwrap();
                let g = crate::courant::pairing(&prs.apply(&e[i]), &e[j]).unwrap();
                let expected = crate::courant::partial(&c, &f).scale(&g).neg();
                assert_eq!(d, expected, "pair {i},{j}");
            }
        }
    }

    #[test]
    fn bad_line_basis_is_rejected() {
        let s = TwoOneGAC::from_classical(&heisenberg()).unwrap();
        let b = LineBasis { tp: (p("1"), p("2")), tm: (p("-1"), p("1")) };
        assert!(product_j(&s, &b).is_err());
    }
}
