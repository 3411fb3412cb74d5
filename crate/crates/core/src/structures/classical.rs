//! Classical almost contact and F structures.

use crate::calculus::{
    frame, lie_bracket, same_chart, ChartRef, EndoTM, ExtD, LeviCivita, LieDerivative, Mat, MetricField, OneForm,
    VectorField,
};
use crate::error::{GgError, Result};
use crate::symexpr::{Coeff, ScalarExpr, Verdict, ZeroPolicy};
use crate::verify::{all_zero, chain, mat_equal, mat_zero, probe_function, vec_zero};

/// `(F, Z, ξ)` with an optional compatible metric.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostContact {
    pub f: EndoTM,
    pub z: VectorField,
    pub xi: OneForm,
    pub metric: Option<MetricField>,
}

impl AlmostContact {
    pub fn new(f: EndoTM, z: VectorField, xi: OneForm, metric: Option<MetricField>) -> Result<Self> {
        same_chart(f.chart(), z.chart())?;
        same_chart(f.chart(), xi.chart())?;
        if let Some(g) = &metric {
            same_chart(f.chart(), g.chart())?;
        }
        Ok(AlmostContact { f, z, xi, metric })
    }

    pub fn chart(&self) -> &ChartRef {
        self.f.chart()
    }

    pub fn metric(&self) -> Result<&MetricField> {
        self.metric.as_ref().ok_or_else(|| GgError::Precondition("structure has no metric".into()))
    }
}

/// `F² = −Id + ξ⊗Z`, `FZ = 0`, `ξ∘F = 0`, `ξ(Z) = 1`.
pub fn check_almcont(s: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    let c = s.chart();
    let rhs = EndoTM::identity(c).neg().add(&s.xi.tensor(&s.z));
    chain([
        mat_equal(s.f.pow(2).matrix(), rhs.matrix(), policy, "F^2 + Id - xi(x)Z"),
        vec_zero(s.f.apply(&s.z).comps(), policy, "FZ"),
        vec_zero(s.xi.compose(&s.f).comps(), policy, "xi o F"),
        crate::verify::zero(&(s.xi.eval(&s.z) - ScalarExpr::one()), policy, "xi(Z) - 1"),
    ])
}

/// `s(FX,FY) = s(X,Y) − ξ(X)ξ(Y)` on the frame.
pub fn check_clasmetric(s: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    let g = s.metric()?.matrix();
    let f = s.f.matrix();
    let lhs = f.transpose().mul(g).mul(f);
    let rhs = g.sub(&Mat::outer(s.xi.comps(), s.xi.comps()));
    mat_equal(&lhs, &rhs, policy, "s(FX,FY) - s(X,Y) + xi(X)xi(Y)")
}

pub fn check_almost_contact(s: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    let v = check_almcont(s, policy)?;
    if s.metric.is_none() || !v.holds() {
        return Ok(v);
    }
    Ok(v.and(check_clasmetric(s, policy)?))
}

/// `s(FX, Y) + s(X, FY) = 0`.
pub fn check_fmetric(f: &EndoTM, g: &MetricField, policy: &ZeroPolicy) -> Result<Verdict> {
    let gf = g.matrix().mul(f.matrix());
    mat_zero(&gf.add(&gf.transpose()), policy, "s(FX,Y) + s(X,FY)")
}

/// `F³ + F = 0`.
pub fn check_f_structure(f: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    mat_zero(&f.pow(3).add(f).matrix().clone(), policy, "F^3 + F")
}

/// `N_F(X,Y) = [FX,FY] − F[FX,Y] − F[X,FY] + F²[X,Y]`.
pub fn nijenhuis_classical(f: &EndoTM, x: &VectorField, y: &VectorField) -> Result<VectorField> {
    same_chart(f.chart(), x.chart())?;
    let fx = f.apply(x);
    let fy = f.apply(y);
    let t1 = lie_bracket(&fx, &fy)?;
    let t2 = f.apply(&lie_bracket(&fx, y)?);
    let t3 = f.apply(&lie_bracket(x, &fy)?);
    let t4 = f.apply(&f.apply(&lie_bracket(x, y)?));
    Ok(t1.sub(&t2).sub(&t3).add(&t4))
}

/// `N_F = 0` on coordinate frame pairs.
pub fn check_nijenhuis_zero(f: &EndoTM, policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    let e = frame(f.chart());
    let mut items = Vec::new();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let n = nijenhuis_classical(f, &e[i], &e[j])?;
            for (k, c) in n.comps().iter().enumerate() {
                items.push((c.clone(), format!("{ctx}(d{i},d{j})[{k}]")));
            }
        }
    }
    all_zero(items, policy)
}

/// `N_F + dξ⊗Z = 0` on frame pairs.
pub fn check_normal_classical(s: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    let e = frame(s.chart());
    let dxi = s.xi.ext_d();
    let mut items = Vec::new();
    for i in 0..e.len() {
        for j in (i + 1)..e.len() {
            let n = nijenhuis_classical(&s.f, &e[i], &e[j])?;
            let t = n.add(&s.z.scale(&dxi.eval(&e[i], &e[j])));
            for (k, c) in t.comps().iter().enumerate() {
                items.push((c.clone(), format!("N_F + dxi(x)Z (d{i},d{j})[{k}]")));
            }
        }
    }
    all_zero(items, policy)
}

/// `J = F − dt⊗Z + ξ⊗∂t` on `M × ℝ`.
pub fn product_j(s: &AlmostContact, t: &str) -> Result<EndoTM> {
    let c = s.chart();
    let n = c.dim();
    let pc = c.product_with_line(t)?;
    let f = s.f.matrix();
    let m = Mat::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => f[(i, j)].clone(),
        (true, false) => -s.z.comp(i),
        (false, true) => s.xi.comp(j).clone(),
        (false, false) => ScalarExpr::zero(),
    });
    EndoTM::new(&pc, m)
}

/// Normality through integrability of `J` on `M × ℝ`.
pub fn check_normal_via_j(s: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    let j = product_j(s, "t")?;
    let sq = mat_equal(j.pow(2).matrix(), EndoTM::identity(j.chart()).neg().matrix(), policy, "J^2 + Id")?;
    if !sq.holds() {
        return Ok(sq);
    }
    Ok(sq.and(check_nijenhuis_zero(&j, policy, "N_J")?))
}

/// Nonzero columns of `m` as vector fields.
pub(crate) fn spanning_set(chart: &ChartRef, m: &Mat) -> Vec<(usize, VectorField)> {
    (0..m.cols())
        .map(|j| (j, VectorField::raw(chart, m.column(j))))
        .filter(|(_, v)| !v.is_syntactically_zero())
        .collect()
}

fn pr_q(f: &EndoTM) -> EndoTM {
    EndoTM::identity(f.chart()).add(&f.pow(2))
}

/// CR type: `N_F(X,Y) = pr_Q[X,Y]` for `X, Y` in the image of `F`.
pub fn check_cr_type(f: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    let c = f.chart();
    let p = spanning_set(c, f.matrix());
    let q = pr_q(f);
    let probe = probe_function(c, policy.seed);
    let mut items = Vec::new();
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            let (i, x) = &p[a];
            let (j, y) = &p[b];
            for (scaled, xx) in [(false, x.clone()), (true, x.scale(&probe))] {
                let r = nijenhuis_classical(f, &xx, y)?.sub(&q.apply(&lie_bracket(&xx, y)?));
                let tag = if scaled { "f*" } else { "" };
                for (k, e) in r.comps().iter().enumerate() {
                    items.push((e.clone(), format!("CRcond({tag}F d{i}, F d{j})[{k}]")));
                }
            }
        }
    }
    all_zero(items, policy)
}

/// `F ∘ (L_Z F) = 0`.
pub fn check_crf_lie(s: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    let lzf = s.f.lie_along(&s.z)?;
    mat_zero(s.f.compose(&lzf).matrix(), policy, "F o L_Z F")
}

/// `N_F(X,Y) = 0` for `X ∈ P`, `Y ∈ Q`.
pub fn check_crf0(f: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    let c = f.chart();
    let p = spanning_set(c, f.matrix());
    let q = spanning_set(c, pr_q(f).matrix());
    let mut items = Vec::new();
    for (i, x) in &p {
        for (j, y) in &q {
            let r = nijenhuis_classical(f, x, y)?;
            for (k, e) in r.comps().iter().enumerate() {
                items.push((e.clone(), format!("CRF0(F d{i}, prQ d{j})[{k}]")));
            }
        }
    }
    all_zero(items, policy)
}

/// CR type together with `F ∘ L_Z F = 0`.
pub fn check_classical_crf(s: &AlmostContact, policy: &ZeroPolicy) -> Result<Verdict> {
    chain([check_cr_type(&s.f, policy), check_crf_lie(s, policy)])
}

/// Classical CRF for a bare F structure: CR type and `N_F(P, Q) = 0`.
pub fn check_classical_crf_f(f: &EndoTM, policy: &ZeroPolicy) -> Result<Verdict> {
    chain([check_cr_type(f, policy), check_crf0(f, policy)])
}

/// Eigenbundle projections of an F structure (matrices with complex entries).
#[derive(Clone, Debug)]
pub struct Projections {
    pub h: Mat,
    pub hbar: Mat,
    pub q: Mat,
    pub p: Mat,
}

pub fn projections_of(a: &Mat) -> Projections {
    let a2 = a.mul(a);
    let i = Coeff::i();
    let half = Coeff::ratio(-1, 2);
    let ia = a.scale_c(&i);
    Projections {
        h: a2.add(&ia).scale_c(&half),
        hbar: a2.sub(&ia).scale_c(&half),
        q: Mat::identity(a.rows()).add(&a2),
        p: a2.neg(),
    }
}

/// Projections after confirming `F³ + F = 0`.
pub fn eigen_projections(f: &EndoTM, policy: &ZeroPolicy) -> Result<Projections> {
    let v = check_f_structure(f, policy)?;
    if let Some(w) = v.witness() {
        return Err(GgError::Precondition(format!("not an F structure: {w}")));
    }
    Ok(projections_of(f.matrix()))
}

/// Algebra of the projections: completeness, `pr_P = pr_H + pr_H̄`, `A pr_H = i pr_H`, idempotency.
pub fn check_projection_algebra(a: &Mat, policy: &ZeroPolicy) -> Result<Verdict> {
    let pr = projections_of(a);
    let id = Mat::identity(a.rows());
    chain([
        mat_equal(&pr.h.add(&pr.hbar).add(&pr.q), &id, policy, "prH + prHbar + prQ - Id"),
        mat_equal(&pr.p, &pr.h.add(&pr.hbar), policy, "prP - prH - prHbar"),
        mat_equal(&a.mul(&pr.h), &pr.h.scale_c(&Coeff::i()), policy, "A prH - i prH"),
        mat_equal(&pr.h.mul(&pr.h), &pr.h, policy, "prH^2 - prH"),
        mat_equal(&pr.q.mul(&pr.q), &pr.q, policy, "prQ^2 - prQ"),
    ])
}

/// `γ(F ∇_X F(Y), U)` for frame indices.
pub(crate) fn nabla_f(lc: &LeviCivita, f: &EndoTM) -> Result<Vec<EndoTM>> {
    frame(f.chart()).iter().map(|x| lc.cov_endo(x, f)).collect()
}

/// `∇^s_X F(Y) ∈ ker F` for all frame `X, Y`.
pub fn check_kernel_nabla(f: &EndoTM, g: &MetricField, policy: &ZeroPolicy) -> Result<Verdict> {
    let lc = LeviCivita::new(g)?;
    let mut items = Vec::new();
    for (i, nf) in nabla_f(&lc, f)?.iter().enumerate() {
        for (a, b, e) in f.matrix().mul(nf.matrix()).entries() {
            items.push((e.clone(), format!("F nabla_{i}F [{a},{b}]")));
        }
    }
    all_zero(items, policy)
}

/// `∇F = 0`.
pub fn check_parallel(f: &EndoTM, g: &MetricField, policy: &ZeroPolicy) -> Result<Verdict> {
    let lc = LeviCivita::new(g)?;
    let mut items = Vec::new();
    for (i, nf) in nabla_f(&lc, f)?.iter().enumerate() {
        for (a, b, e) in nf.matrix().entries() {
            items.push((e.clone(), format!("nabla_{i}F [{a},{b}]")));
        }
    }
    all_zero(items, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Chart;
    use crate::symexpr::parse;

    fn p(s: &str) -> ScalarExpr {
        parse(s).unwrap()
    }

    fn endo(c: &ChartRef, rows: &[&[&str]]) -> EndoTM {
        EndoTM::new(c, Mat::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_nijenhuis() {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        // F e1 = e2, F e2 = -e1, e1 = dy, e2 = dx + y dz
        let f = endo(&c, &[&["0", "1", "0"], &["-1", "0", "0"], &["0", "y", "0"]]);
        let e1 = VectorField::new(&c, vec![p("0"), p("1"), p("0")]).unwrap();
        let e2 = VectorField::new(&c, vec![p("1"), p("0"), p("y")]).unwrap();
        assert_eq!(f.apply(&e1), e2);
        let n = nijenhuis_classical(&f, &e1, &e2).unwrap();
        assert_eq!(n, VectorField::basis(&c, 2));
    }
}
