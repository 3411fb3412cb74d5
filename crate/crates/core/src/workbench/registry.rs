//! Check labels and their dispatch.

use crate::calculus::{MetricField, TwoForm};
use crate::error::{GgError, Result};
use crate::hypersurface as hyp;
use crate::structures::classical as cl;
use crate::structures::generalized::{self as gen, GenF, GenMetric, Sign};
use crate::structures::{explicit, sasaki, twoone};
use crate::symexpr::ZeroPolicy;
use crate::verify::Outcome;

use super::scenario::{Kind, Subject};

pub struct LabelInfo {
    pub label: &'static str,
    pub kinds: &'static [Kind],
    pub about: &'static str,
}

const C: &[Kind] = &[Kind::Classical];
const T: &[Kind] = &[Kind::Classical, Kind::TwoOne];
const Q: &[Kind] = &[Kind::Classical, Kind::TwoOne, Kind::Quadruple];
const H: &[Kind] = &[Kind::Hermitian, Kind::GenHermitian, Kind::Hypersurface];
const G: &[Kind] = &[Kind::GenHermitian, Kind::Hypersurface];
const S: &[Kind] = &[Kind::Hypersurface];

pub const LABELS: &[LabelInfo] = &[
    LabelInfo { label: "almcont", kinds: C, about: "almost contact axioms" },
    LabelInfo { label: "almost_contact", kinds: C, about: "almost contact axioms with the metric" },
    LabelInfo { label: "clasmetric", kinds: C, about: "metric compatibility" },
    LabelInfo { label: "Fmetric", kinds: C, about: "F is skew for the metric" },
    LabelInfo { label: "normal", kinds: C, about: "N_F + dxi (x) Z = 0" },
    LabelInfo { label: "JF", kinds: C, about: "product structure on M x R is integrable" },
    LabelInfo { label: "CRcond", kinds: C, about: "CR type" },
    LabelInfo { label: "CRF0", kinds: C, about: "F-bracket condition" },
    LabelInfo { label: "CRFcuLie", kinds: C, about: "F L_Z F = 0" },
    LabelInfo { label: "classical_CRF", kinds: C, about: "classical CRF" },
    LabelInfo { label: "proneigen", kinds: C, about: "eigenprojection algebra" },
    LabelInfo { label: "kernel_nabla", kinds: C, about: "nabla F takes values in ker F" },
    LabelInfo { label: "condptGrond", kinds: Q, about: "generalized metric identities and positivity" },
    LabelInfo { label: "genF", kinds: Q, about: "generalized F structure" },
    LabelInfo { label: "G-F", kinds: Q, about: "generalized metric F structure" },
    LabelInfo { label: "gen_CRF", kinds: Q, about: "generalized CRF" },
    LabelInfo { label: "CRFK6", kinds: Q, about: "CRFK tensor identity" },
    LabelInfo { label: "CRFK", kinds: Q, about: "generalized CRFK" },
    LabelInfo { label: "almoctZpm", kinds: T, about: "pairing relations of Z+ and Z-" },
    LabelInfo { label: "almctF2", kinds: T, about: "F^2 relation" },
    LabelInfo { label: "21metriccuZpm", kinds: T, about: "metric compatibility of the (2,1) structure" },
    LabelInfo { label: "corank_neg", kinds: T, about: "corank 2 and negative index 1" },
    LabelInfo { label: "eqPhi", kinds: T, about: "Phi^2 = Id and Phi skew" },
    LabelInfo { label: "PhiG", kinds: T, about: "Phi and G" },
    LabelInfo { label: "eqGY", kinds: T, about: "eigenbundles of Phi" },
    LabelInfo { label: "N_Phi", kinds: T, about: "Nijenhuis tensors of Phi" },
    LabelInfo { label: "NJ", kinds: T, about: "generalized J on M x R is integrable" },
    LabelInfo { label: "normaltotal", kinds: T, about: "normality conditions" },
    LabelInfo { label: "normtotal2", kinds: T, about: "unified normality tensor" },
    LabelInfo { label: "normal_21", kinds: T, about: "normality of the (2,1) structure" },
    LabelInfo { label: "indbin0", kinds: T, about: "explicit normality system" },
    LabelInfo { label: "zetarho", kinds: T, about: "zeta and rho forms" },
    LabelInfo { label: "indbin1", kinds: T, about: "explicit binormality system" },
    LabelInfo { label: "binormal", kinds: T, about: "binormality" },
    LabelInfo { label: "condlastex", kinds: T, about: "product example conditions" },
    LabelInfo { label: "CrVpm", kinds: T, about: "closed-form brackets of V+ and V- sections" },
    LabelInfo { label: "tildeG", kinds: T, about: "product metric on M x R" },
    LabelInfo { label: "Sasgen", kinds: T, about: "generalized Sasakian" },
    LabelInfo { label: "N_J", kinds: H, about: "ambient J is integrable" },
    LabelInfo { label: "eqdinKN", kinds: H, about: "covariant derivative of J by dOmega" },
    LabelInfo { label: "identHerm", kinds: H, about: "Hermitian identity for dOmega" },
    LabelInfo { label: "relpsiJ", kinds: G, about: "generalized Kahler condition via nabla J" },
    LabelInfo { label: "relpsiOmega", kinds: G, about: "generalized Kahler condition via dOmega" },
    LabelInfo { label: "genKahler", kinds: G, about: "generalized Kahler ambient" },
    LabelInfo { label: "G-W", kinds: S, about: "unit normal, Gauss and Weingarten equations" },
    LabelInfo { label: "totally_geodesic", kinds: S, about: "b = 0" },
    LabelInfo { label: "umbilical", kinds: S, about: "b = lambda s" },
    LabelInfo { label: "strind1", kinds: S, about: "induced almost contact structure" },
    LabelInfo { label: "eqCRF2", kinds: S, about: "induced structure is CRF" },
    LabelInfo { label: "eqnormal2", kinds: S, about: "induced structure is normal" },
    LabelInfo { label: "LXi", kinds: S, about: "fundamental form property" },
    LabelInfo { label: "eqCRF3", kinds: S, about: "b(FX,FY) = b(X,Y) on P" },
    LabelInfo { label: "dXi", kinds: S, about: "induced fundamental form is closed" },
    LabelInfo { label: "eqptans3", kinds: S, about: "induced generalized structure is CRFK" },
    LabelInfo { label: "geodesic", kinds: S, about: "trajectories of Z+ and Z- are geodesics" },
    LabelInfo { label: "induced_21", kinds: S, about: "induced (2,1) structure" },
];

pub fn lookup(label: &str) -> Option<&'static LabelInfo> {
    LABELS.iter().find(|l| l.label == label)
}

pub fn applies(label: &str, kind: Kind) -> bool {
    lookup(label).is_some_and(|l| l.kinds.contains(&kind))
}

/// Labels applicable to a kind, in registry order.
pub fn labels_for(kind: Kind) -> impl Iterator<Item = &'static str> {
    LABELS.iter().filter(move |l| l.kinds.contains(&kind)).map(|l| l.label)
}

fn single(v: Result<crate::symexpr::Verdict>) -> Result<Outcome> {
    v.map(Outcome::single)
}

fn no_support(label: &str, s: &Subject) -> GgError {
    GgError::Unsupported(format!("{label} does not apply to a {:?} structure", s.kind()))
}

fn metric_of(ac: &cl::AlmostContact) -> Result<&MetricField> {
    ac.metric()
}

/// `ℱ` of a subject with a generalized metric.
fn gen_f(s: &Subject, policy: &ZeroPolicy) -> Result<GenF> {
    match s {
        Subject::Classical { ac, .. } => {
            let g = metric_of(ac)?;
            let m = GenMetric::new(g.clone(), TwoForm::zero(ac.chart()))?;
            GenF::from_quadruple(m, ac.f.clone(), ac.f.clone(), policy)
        }
        Subject::TwoOne(t) => {
            let (m, p) = t.require_pair()?;
            GenF::from_quadruple(m.clone(), p.fp.clone(), p.fm.clone(), policy)
        }
        Subject::Quadruple(f) => Ok(f.clone()),
        _ => Err(GgError::Unsupported("no generalized F structure".into())),
    }
}

fn ambient(s: &Subject) -> Option<hyp::GenHermitian> {
    match s {
        Subject::Hermitian { gamma, j } => Some(hyp::GenHermitian {
            gamma: gamma.clone(),
            psi: TwoForm::zero(gamma.chart()),
            jp: j.clone(),
            jm: j.clone(),
        }),
        Subject::GenHermitian(g) => Some(g.clone()),
        Subject::Hypersurface { ambient, .. } => Some(ambient.clone()),
        _ => None,
    }
}

fn per_sign(
    amb: &hyp::GenHermitian,
    f: impl Fn(&crate::calculus::EndoTM) -> Result<crate::symexpr::Verdict>,
) -> Result<Outcome> {
    let mut parts = Vec::new();
    for s in Sign::BOTH {
        parts.push((format!("J{}", s.symbol()), f(amb.j(s))?));
        if amb.jp == amb.jm {
            break;
        }
    }
    Ok(Outcome::from_parts(parts))
}

/// Runs one label on one subject.
pub fn run_label(label: &str, s: &Subject, policy: &ZeroPolicy) -> Result<Outcome> {
    let info = lookup(label).ok_or_else(|| GgError::Unsupported(format!("unknown check label '{label}'")))?;
    if !info.kinds.contains(&s.kind()) {
        return Err(no_support(label, s));
    }
    if let Subject::Classical { ac, .. } = s {
        match label {
            "almcont" => return single(cl::check_almcont(ac, policy)),
            "almost_contact" => return single(cl::check_almost_contact(ac, policy)),
            "clasmetric" => return single(cl::check_clasmetric(ac, policy)),
            "Fmetric" => return single(cl::check_fmetric(&ac.f, metric_of(ac)?, policy)),
            "normal" => return single(cl::check_normal_classical(ac, policy)),
            "JF" => return single(cl::check_normal_via_j(ac, policy)),
            "CRcond" => return single(cl::check_cr_type(&ac.f, policy)),
            "CRF0" => return single(cl::check_crf0(&ac.f, policy)),
            "CRFcuLie" => return single(cl::check_crf_lie(ac, policy)),
            "classical_CRF" => return single(cl::check_classical_crf(ac, policy)),
            "proneigen" => return single(cl::check_projection_algebra(ac.f.matrix(), policy)),
            "kernel_nabla" => return single(cl::check_kernel_nabla(&ac.f, metric_of(ac)?, policy)),
            "CRFK" => {
                let mut o = gen::check_crfk(&gen_f(s, policy)?, policy)?;
                o.parts.push(("nabla F in ker F".into(), cl::check_kernel_nabla(&ac.f, metric_of(ac)?, policy)?));
                return Ok(Outcome::from_parts(o.parts));
            }
            _ => {}
        }
    }
    match label {
        "condptGrond" => {
            let f = gen_f(s, policy)?;
            let m = &f.require_pair()?.metric;
            return Ok(Outcome::from_parts(vec![
                ("condptGrond".into(), gen::check_cond_pt_grond(m, policy)?),
                ("positive".into(), gen::check_gen_metric_positive(m, policy, 16)?),
            ]));
        }
        "genF" => return single(gen::check_gen_f(gen_f(s, policy)?.endo(), policy)),
        "G-F" => {
            let f = gen_f(s, policy)?;
            return single(gen::check_g_f(&f.require_pair()?.metric, f.endo(), policy));
        }
        "gen_CRF" => return single(gen::check_gen_crf(gen_f(s, policy)?.endo(), policy)),
        "CRFK6" => return single(gen::check_crfk6(gen_f(s, policy)?.require_pair()?, policy)),
        "CRFK" => return gen::check_crfk(&gen_f(s, policy)?, policy),
        _ => {}
    }
    if let Some(t) = s.two_one() {
        return match label {
            "almoctZpm" => single(twoone::check_almoct_zpm(t, policy)),
            "almctF2" => single(twoone::check_almct_f2(t, policy)),
            "21metriccuZpm" => single(twoone::check_21metric(t, policy)),
            "corank_neg" => single(twoone::check_corank_21(t, policy)),
            "eqPhi" => single(twoone::check_eq_phi(t, policy)),
            "PhiG" => single(twoone::check_phi_g(t, policy)),
            "eqGY" => single(twoone::check_eq_gy(t, policy)),
            "N_Phi" => twoone::phi_integrability(t, policy),
            "NJ" => single(twoone::check_normal_nj(t, policy)),
            "normaltotal" => twoone::check_normaltotal(t, policy),
            "normtotal2" => twoone::check_normtotal2(t, policy),
            "normal_21" => twoone::check_normal_21(t, policy),
            "indbin0" => explicit::check_indbin0(t, policy),
            "zetarho" => Ok(Outcome::from_parts(vec![
                ("zeta".into(), explicit::check_zeta_vanishes(t, policy)?),
                ("rho reduction".into(), explicit::check_rho_reduction(t, policy)?),
                ("linearity".into(), explicit::check_zeta_rho_linearity(t, policy)?),
            ])),
            "indbin1" => explicit::check_indbin1(t, policy),
            "binormal" => explicit::check_binormal(t, policy),
            "condlastex" => explicit::check_condlastex(t, policy),
            "CrVpm" => single(explicit::check_crvpm(t.require_metric()?, 50, policy)),
            "tildeG" => sasaki::check_tilde_g(t, policy, 16),
            "Sasgen" => sasaki::check_sasakian(t, policy),
            _ => Err(no_support(label, s)),
        };
    }
    if matches!(s, Subject::Classical { .. }) {
        return Err(GgError::Precondition(format!("{label} needs a metric to build the (2,1) lift")));
    }
    if let Some(amb) = ambient(s) {
        match label {
            "N_J" => return per_sign(&amb, |j| cl::check_nijenhuis_zero(j, policy, "N_J")),
            "eqdinKN" | "identHerm" => {
                return per_sign(&amb, |j| {
                    let o = hyp::hermitian_identities(&amb.gamma, j, policy)?;
                    Ok(o.part(label).cloned().expect("part present"))
                })
            }
            "relpsiJ" => return single(hyp::check_relpsi_j(&amb, policy)),
            "relpsiOmega" => return single(hyp::check_relpsi_omega(&amb, policy)),
            "genKahler" => return hyp::check_gen_kahler(&amb, policy),
            _ => {}
        }
    }
    let Subject::Hypersurface { geometry: geo, ambient: amb } = s else {
        return Err(no_support(label, s));
    };
    let j = &amb.jp;
    match label {
        "G-W" => hyp::check_geometry(geo, policy),
        "totally_geodesic" => single(hyp::check_totally_geodesic(geo, policy)),
        "umbilical" => single(hyp::check_umbilical(geo, policy)),
        "strind1" => {
            let ind = hyp::induced_almost_contact(geo, j, policy)?;
            Ok(Outcome::from_parts(vec![
                ("almost contact".into(), cl::check_almost_contact(&ind.structure, policy)?),
                ("Xi = i*Omega".into(), hyp::check_fundamental_form(geo, &ind, policy)?),
            ]))
        }
        "eqCRF2" => hyp::check_hyp_crf(geo, j, policy),
        "eqnormal2" => hyp::check_hyp_normal(geo, j, policy),
        "LXi" => hyp::check_lxi(geo, j, policy),
        "eqCRF3" => single(hyp::check_eq_crf3(geo, j, policy)),
        "dXi" => single(hyp::check_closed_fundamental_form(geo, j, policy)),
        "eqptans3" => hyp::check_hyp_crfk(geo, amb, policy),
        "geodesic" => per_sign(amb, |j| hyp::check_geodesic(geo, j, policy)),
        "induced_21" => {
            let ig = hyp::induced_gen_structure(geo, amb, policy)?;
            let mut o = twoone::validate(&ig.structure, policy)?;
            o.parts.push(("corank_neg".into(), twoone::check_corank_21(&ig.structure, policy)?));
            Ok(Outcome::from_parts(o.parts))
        }
        _ => Err(no_support(label, s)),
    }
}
