//! Normality and binormality through the pair of classical structures.

use crate::calculus::{
    d_scalar, ext_d, interior2, lie_bracket, ChartRef, EndoTM, LieDerivative, MetricField, OneForm, ThreeForm,
    VectorField,
};
use crate::courant::{courant_bracket, BigSection};
use crate::error::Result;
use crate::structures::classical::{check_nijenhuis_zero, check_normal_classical, spanning_set};
use crate::structures::generalized::{GenMetric, Sign};
use crate::structures::twoone::{check_normal_21, ClassicalPair, TwoOneGAC};
use crate::symexpr::{ScalarExpr, Verdict, ZeroPolicy};
use crate::verify::{agreement, all_zero, chain, mat_zero, probe_function, vec_zero, Outcome};

/// Data needed by the explicit criteria.
pub struct ExplicitData<'a> {
    pub metric: &'a GenMetric,
    pub pair: &'a ClassicalPair,
    pub dpsi: ThreeForm,
}

impl<'a> ExplicitData<'a> {
    pub fn of(s: &'a TwoOneGAC) -> Result<Self> {
        let (metric, pair) = s.require_pair()?;
        Ok(ExplicitData { metric, pair, dpsi: ext_d(metric.psi()) })
    }

    fn gamma(&self) -> &MetricField {
        self.metric.gamma()
    }

    fn chart(&self) -> &ChartRef {
        self.metric.chart()
    }

    /// `ζ±(X) = i(X)i(Z±)dψ ± (L_{Z±}♭γX − ♭_{L_Xγ}Z±)`.
    pub fn zeta(&self, sign: Sign, x: &VectorField) -> Result<OneForm> {
        let z = self.pair.z(sign);
        let a = interior2(&self.dpsi, z, x)?;
        let lzx = self.gamma().flat(x).lie_along(z)?;
        let lxg = self.gamma().lie_along(x)?;
        let b = OneForm::raw(self.chart(), lxg.matrix().mul_vec(z.comps()));
        Ok(a.add(&lzx.sub(&b).scale(&sign.expr())))
    }

    /// `ϱ±(X) = ∓{♭γ[Z±,X] − i(X)i(Z±)dψ + L_{Z±}♭γX + i(X)dξ±}`.
    pub fn rho(&self, sign: Sign, x: &VectorField) -> Result<OneForm> {
        let z = self.pair.z(sign);
        let br = self.gamma().flat(&lie_bracket(z, x)?);
        let a = interior2(&self.dpsi, z, x)?;
        let lzx = self.gamma().flat(x).lie_along(z)?;
        let dxi = ext_d(self.pair.xi(sign)).interior(x);
        Ok(br.sub(&a).add(&lzx).add(&dxi).scale(&sign.expr()).neg())
    }

    fn sharp(&self, a: &OneForm) -> VectorField {
        VectorField::raw(self.chart(), self.metric.gamma_inverse().mul_vec(a.comps()))
    }

    /// Spanning set of `P± = im F±` with a scaled copy of each element.
    fn p_set(&self, sign: Sign, probe: &ScalarExpr) -> Vec<(String, VectorField)> {
        let mut out = Vec::new();
        for (i, x) in spanning_set(self.chart(), self.pair.f(sign).matrix()) {
            let name = format!("F{} d{i}", sign.symbol());
            out.push((format!("f*{name}"), x.scale(probe)));
            out.push((name, x));
        }
        out
    }
}

fn push_form(items: &mut Vec<(ScalarExpr, String)>, a: &OneForm, ctx: &str) {
    for (k, e) in a.comps().iter().enumerate() {
        items.push((e.clone(), format!("{ctx}[{k}]")));
    }
}

fn push_vec(items: &mut Vec<(ScalarExpr, String)>, a: &VectorField, ctx: &str) {
    for (k, e) in a.comps().iter().enumerate() {
        items.push((e.clone(), format!("{ctx}[{k}]")));
    }
}

/// `[Z₊,Z₋] = 0` and `L_{Z₋}ξ₊ + L_{Z₊}ξ₋ − d(γ(Z₊,Z₋)) = i(Z₋)i(Z₊)dψ`.
fn first_line(d: &ExplicitData, policy: &ZeroPolicy) -> Result<Verdict> {
    let p = d.pair;
    let br = lie_bracket(&p.zp, &p.zm)?;
    let lhs = p.xip.lie_along(&p.zm)?.add(&p.xim.lie_along(&p.zp)?).sub(&d_scalar(d.chart(), &d.gamma().inner(&p.zp, &p.zm)));
    let rhs = interior2(&d.dpsi, &p.zp, &p.zm)?;
    chain([
        vec_zero(br.comps(), policy, "[Z+,Z-]"),
        vec_zero(lhs.sub(&rhs).comps(), policy, "L_Z-xi+ + L_Z+xi- - d(gamma(Z+,Z-)) - i(Z-)i(Z+)dpsi"),
    ])
}

fn classical_normality(d: &ExplicitData, policy: &ZeroPolicy) -> Result<Vec<(String, Verdict)>> {
    let mut out = Vec::new();
    for s in Sign::BOTH {
        let ac = d.pair.structure(s, d.gamma());
        out.push((format!("classical normal {}", s.symbol()), check_normal_classical(&ac, policy)?));
    }
    Ok(out)
}

/// `ζ±(X±)∘F₊ = ζ±(X±)∘F₋ = −ζ±(F±X±)`.
fn zeta_line(d: &ExplicitData, policy: &ZeroPolicy, probe: &ScalarExpr) -> Result<Verdict> {
    let mut items = Vec::new();
    for s in Sign::BOTH {
        for (name, x) in d.p_set(s, probe) {
            let z = d.zeta(s, &x)?;
            let zf = d.zeta(s, &d.pair.f(s).apply(&x))?;
            push_form(&mut items, &z.compose(&d.pair.fp).add(&zf), &format!("zeta{0}({name}) o F+ + zeta{0}(F X)", s.symbol()));
            push_form(&mut items, &z.compose(&d.pair.fm).add(&zf), &format!("zeta{0}({name}) o F- + zeta{0}(F X)", s.symbol()));
        }
    }
    all_zero(items, policy)
}

/// `F±[Z±,X∓] − [Z±,F∓X∓] = ½(F₋♯ϱ±(X∓) − F₊♯ϱ±(X∓))`.
fn bracket_line(d: &ExplicitData, policy: &ZeroPolicy, probe: &ScalarExpr) -> Result<Verdict> {
    let half = ScalarExpr::rational(1, 2);
    let mut items = Vec::new();
    for s in Sign::BOTH {
        let z = d.pair.z(s);
        let (fs, fo) = (d.pair.f(s), d.pair.f(s.flip()));
        for (name, x) in d.p_set(s.flip(), probe) {
            let lhs = fs.apply(&lie_bracket(z, &x)?).sub(&lie_bracket(z, &fo.apply(&x))?);
            let r = d.sharp(&d.rho(s, &x)?);
            let rhs = d.pair.fm.apply(&r).sub(&d.pair.fp.apply(&r)).scale(&half);
            push_vec(&mut items, &lhs.sub(&rhs), &format!("bracket line {} X={name}", s.symbol()));
        }
    }
    all_zero(items, policy)
}

/// `ϱ±(F∓X∓) + ϱ±(X∓)∘F∓ = 0`.
fn rho_line(d: &ExplicitData, policy: &ZeroPolicy, probe: &ScalarExpr) -> Result<Verdict> {
    let mut items = Vec::new();
    for s in Sign::BOTH {
        let fo = d.pair.f(s.flip());
        for (name, x) in d.p_set(s.flip(), probe) {
            let r = d.rho(s, &fo.apply(&x))?.add(&d.rho(s, &x)?.compose(fo));
            push_form(&mut items, &r, &format!("rho{0}(F X) + rho{0}(X) o F, X={name}", s.symbol()));
        }
    }
    all_zero(items, policy)
}

/// Normality from classical normality of both structures plus four families of identities.
pub fn check_indbin0(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let d = ExplicitData::of(s)?;
    let probe = probe_function(d.chart(), policy.seed);
    let mut parts = classical_normality(&d, policy)?;
    parts.push(("line 1".into(), first_line(&d, policy)?));
    parts.push(("line 2".into(), zeta_line(&d, policy, &probe)?));
    parts.push(("line 3".into(), bracket_line(&d, policy, &probe)?));
    parts.push(("line 4".into(), rho_line(&d, policy, &probe)?));
    Ok(Outcome::from_parts(parts))
}

/// `ζ±(X±) = 0` on spanning sets of `P±`.
pub fn check_zeta_vanishes(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let d = ExplicitData::of(s)?;
    let probe = probe_function(d.chart(), policy.seed);
    let mut items = Vec::new();
    for sg in Sign::BOTH {
        for (name, x) in d.p_set(sg, &probe) {
            push_form(&mut items, &d.zeta(sg, &x)?, &format!("zeta{}({name})", sg.symbol()));
        }
    }
    all_zero(items, policy)
}

/// `F±[Z±,X∓] = ∓½F±♯ϱ±(X∓)` and `[Z±,F∓X∓] = ∓½F∓♯ϱ±(X∓)`.
fn split_bracket_lines(d: &ExplicitData, policy: &ZeroPolicy, probe: &ScalarExpr) -> Result<Verdict> {
    let mut items = Vec::new();
    for s in Sign::BOTH {
        let z = d.pair.z(s);
        let (fs, fo) = (d.pair.f(s), d.pair.f(s.flip()));
        let k = ScalarExpr::rational(1, 2).mul(&s.expr()).neg();
        for (name, x) in d.p_set(s.flip(), probe) {
            let r = d.sharp(&d.rho(s, &x)?);
            let a = fs.apply(&lie_bracket(z, &x)?).sub(&fs.apply(&r).scale(&k));
            let b = lie_bracket(z, &fo.apply(&x))?.sub(&fo.apply(&r).scale(&k));
            push_vec(&mut items, &a, &format!("F{0}[Z{0},X] +- 1/2 F{0} rho, X={name}", s.symbol()));
            push_vec(&mut items, &b, &format!("[Z{0},F X] +- 1/2 F rho{0}, X={name}", s.symbol()));
        }
    }
    all_zero(items, policy)
}

/// Binormality from the pair of classical structures.
pub fn check_indbin1(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let d = ExplicitData::of(s)?;
    let probe = probe_function(d.chart(), policy.seed);
    let mut parts = classical_normality(&d, policy)?;
    parts.push(("line 1".into(), first_line(&d, policy)?));
    parts.push(("zeta".into(), check_zeta_vanishes(s, policy)?));
    parts.push(("rho".into(), rho_line(&d, policy, &probe)?));
    parts.push(("split brackets".into(), split_bracket_lines(&d, policy, &probe)?));
    Ok(Outcome::from_parts(parts))
}

/// `(indbin1)` cross-checked against normality of the structure and of its companion.
pub fn check_binormal(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let explicit = check_indbin1(s, policy)?;
    let n1 = check_normal_21(s, policy)?.verdict;
    let n2 = check_normal_21(&s.second()?, policy)?.verdict;
    let both = n1.clone().and(n2.clone());
    let mut parts = explicit.parts.clone();
    parts.push(("normal".into(), n1));
    parts.push(("companion normal".into(), n2));
    parts.push(("agreement".into(), agreement(&explicit.verdict, &both, "indbin1 vs normal pair")));
    Ok(Outcome::from_parts(parts))
}

/// The seven conditions of the binormality example.
pub fn check_condlastex(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let d = ExplicitData::of(s)?;
    let p = d.pair;
    let g = d.gamma();
    let zz = g.inner(&p.zp, &p.zm);
    let mut parts = vec![
        ("[Z+,Z-] = 0".to_string(), vec_zero(lie_bracket(&p.zp, &p.zm)?.comps(), policy, "[Z+,Z-]")?),
        ("gamma(Z+,Z-) const".to_string(), vec_zero(d_scalar(d.chart(), &zz).comps(), policy, "d gamma(Z+,Z-)")?),
    ];
    let dxi = chain(Sign::BOTH.map(|sg| mat_zero(ext_d(p.xi(sg)).matrix(), policy, &format!("dxi{}", sg.symbol()))))?;
    parts.push(("dxi = 0".into(), dxi));
    let nf = chain(Sign::BOTH.map(|sg| check_nijenhuis_zero(p.f(sg), policy, &format!("N_F{}", sg.symbol()))))?;
    parts.push(("N_F = 0".into(), nf));
    let lzf = chain(Sign::BOTH.map(|sg| -> Result<Verdict> {
        let l: EndoTM = p.f(sg.flip()).lie_along(p.z(sg))?;
        mat_zero(l.matrix(), policy, &format!("L_Z{}F{}", sg.symbol(), sg.flip().symbol()))
    }))?;
    parts.push(("L_Z F = 0".into(), lzf));
    let lzg = chain(Sign::BOTH.map(|sg| -> Result<Verdict> {
        mat_zero(g.lie_along(p.z(sg))?.matrix(), policy, &format!("L_Z{}gamma", sg.symbol()))
    }))?;
    parts.push(("L_Z gamma = 0".into(), lzg));
    parts.push(("dpsi = 0".into(), all_zero(d.dpsi.components().iter().map(|e| (e.clone(), "dpsi".to_string())), policy)?));
    Ok(Outcome::from_parts(parts))
}

/// `ϱ±(X∓) = ∓2♭γ[Z±,X∓]` on spanning sets.
pub fn check_rho_reduction(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let d = ExplicitData::of(s)?;
    let probe = probe_function(d.chart(), policy.seed);
    let mut items = Vec::new();
    for sg in Sign::BOTH {
        let z = d.pair.z(sg);
        let k = ScalarExpr::int(-2).mul(&sg.expr());
        for (name, x) in d.p_set(sg.flip(), &probe) {
            let r = d.rho(sg, &x)?.sub(&d.gamma().flat(&lie_bracket(z, &x)?).scale(&k));
            push_form(&mut items, &r, &format!("rho{0}(X) +- 2 flat[Z{0},X], X={name}", sg.symbol()));
        }
    }
    all_zero(items, policy)
}

/// `ζ±(fX) = fζ±(X)` and `ϱ±(fX) = fϱ±(X) ∓ 2(Z±f)♭γX` on frames.
pub fn check_zeta_rho_linearity(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let d = ExplicitData::of(s)?;
    let f = probe_function(d.chart(), policy.seed);
    let mut items = Vec::new();
    for sg in Sign::BOTH {
        let zf = d.pair.z(sg).apply(&f);
        for (name, x) in spanning_set(d.chart(), d.pair.f(sg).matrix()) {
            let r = d.zeta(sg, &x.scale(&f))?.sub(&d.zeta(sg, &x)?.scale(&f));
            push_form(&mut items, &r, &format!("zeta{}(f X) - f zeta(X), X=F d{name}", sg.symbol()));
        }
        for (name, x) in spanning_set(d.chart(), d.pair.f(sg.flip()).matrix()) {
            let corr = d.gamma().flat(&x).scale(&zf.mul(&ScalarExpr::int(2)).mul(&sg.expr()));
            let r = d.rho(sg, &x.scale(&f))?.sub(&d.rho(sg, &x)?.scale(&f)).add(&corr);
            push_form(&mut items, &r, &format!("rho{}(f X) - f rho(X) +- 2 Z(f) flat X, X=F d{name}", sg.symbol()));
        }
    }
    all_zero(items, policy)
}

/// Closed forms of Courant brackets of `V±` sections, with signs `(a, b)` of the arguments.
pub fn courant_bracket_vpm(m: &GenMetric, x: &VectorField, y: &VectorField, signs: (Sign, Sign)) -> Result<BigSection> {
    let g = m.gamma();
    let dpsi = ext_d(m.psi());
    let br = lie_bracket(x, y)?;
    let t = interior2(&dpsi, x, y)?;
    match signs {
        (a, b) if a == b => {
            let corr = g.flat(y).lie_along(x)?.sub(&OneForm::raw(m.chart(), g.lie_along(y)?.matrix().mul_vec(x.comps())));
            Ok(BigSection { a: m.flat(a, &br).add(&t).add(&corr.scale(&a.expr())), x: br })
        }
        (Sign::Plus, Sign::Minus) => {
            let psi_br = OneForm::raw(m.chart(), m.psi().matrix().transpose().mul_vec(br.comps()));
            let corr = g.flat(y).lie_along(x)?.neg().sub(&g.flat(x).lie_along(y)?).add(&d_scalar(m.chart(), &g.inner(x, y)));
            Ok(BigSection { a: psi_br.add(&t).add(&corr), x: br })
        }
        (Sign::Minus, Sign::Plus) => Ok(courant_bracket_vpm(m, y, x, (Sign::Plus, Sign::Minus))?.neg()),
        _ => unreachable!(),
    }
}

/// Closed forms against the generic bracket on `count` random polynomial field pairs.
pub fn check_crvpm(m: &GenMetric, count: usize, policy: &ZeroPolicy) -> Result<Verdict> {
    use rand::{Rng, SeedableRng};
    let c = m.chart();
    let n = c.dim();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(policy.seed ^ 0xc0u64);
    let field = |rng: &mut rand_chacha::ChaCha8Rng| {
        let comps = (0..n)
            .map(|_| {
                let a: i64 = rng.random_range(-3..=3);
                let i = rng.random_range(0..n);
                let b: i64 = rng.random_range(-3..=3);
                let j = rng.random_range(0..n);
                ScalarExpr::int(a) + c.coord(i).mul(&ScalarExpr::int(b)) + c.coord(i).mul(&c.coord(j))
            })
            .collect();
        VectorField::raw(c, comps)
    };
    let mut items = Vec::new();
    for k in 0..count {
        let x = field(&mut rng);
        let y = field(&mut rng);
        let signs = [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus), (Sign::Plus, Sign::Minus)][k % 3];
        let closed = courant_bracket_vpm(m, &x, &y, signs)?;
        let generic = courant_bracket(&m.v_section(signs.0, &x), &m.v_section(signs.1, &y))?;
        for (i, e) in closed.sub(&generic).components().iter().enumerate() {
            items.push((e.clone(), format!("CrVpm{}{} pair {k} [{i}]", signs.0.symbol(), signs.1.symbol())));
        }
    }
    all_zero(items, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Chart, Mat, TwoForm};
    use crate::structures::classical::AlmostContact;
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

    fn deformed() -> AlmostContact {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let f = EndoTM::new(&c, mat(&[&["0", "-exp(-z)", "0"], &["exp(z)", "0", "0"], &["0", "0", "0"]])).unwrap();
        let g = MetricField::new(&c, mat(&[&["exp(z)", "0", "0"], &["0", "exp(-z)", "0"], &["0", "0", "1"]])).unwrap();
        AlmostContact::new(f, VectorField::basis(&c, 2), OneForm::basis(&c, 2), Some(g)).unwrap()
    }

    #[test]
    fn explicit_normality_matches_on_lifts() {
        let pol = ZeroPolicy::default();
        let s = TwoOneGAC::from_classical(&heisenberg()).unwrap();
        let o = check_indbin0(&s, &pol).unwrap();
        assert!(o.verdict.holds(), "{o:#?}");
        let s3 = TwoOneGAC::from_classical(&deformed()).unwrap().validated(&pol).unwrap();
        assert!(!check_indbin0(&s3, &pol).unwrap().verdict.holds());
        assert!(!check_normal_21(&s3, &pol).unwrap().verdict.holds());
    }

    #[test]
    fn heisenberg_is_not_binormal() {
        let pol = ZeroPolicy::default();
        let s = TwoOneGAC::from_classical(&heisenberg()).unwrap();
        let o = check_binormal(&s, &pol).unwrap();
        assert!(!o.verdict.holds() || o.part("agreement").unwrap().holds(), "{o:#?}");
        assert!(o.part("agreement").unwrap().holds(), "{o:#?}");
    }

    #[test]
    fn closed_forms_match_courant_bracket() {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let g = MetricField::new(&c, mat(&[&["1 + y^2", "0", "-y"], &["0", "1", "0"], &["-y", "0", "1"]])).unwrap();
        let psi = TwoForm::new(&c, mat(&[&["0", "z", "0"], &["-z", "0", "x*y"], &["0", "-x*y", "0"]])).unwrap();
        let m = GenMetric::new(g, psi).unwrap();
        assert!(check_crvpm(&m, 9, &ZeroPolicy::default()).unwrap().is_proved());
    }

    #[test]
    fn zeta_rho_scaling() {
        let s = TwoOneGAC::from_classical(&heisenberg()).unwrap();
        assert!(check_zeta_rho_linearity(&s, &ZeroPolicy::default()).unwrap().is_proved());
    }
}
