use ggwb_core::calculus::{frame, EndoTM, LeviCivita, Mat};
use ggwb_core::structures::classical::product_j;
use ggwb_core::structures::twoone::{phi_integrability, TwoOneGAC};
use ggwb_core::symexpr::ZeroPolicy;
use ggwb_core::workbench::{self, builtins, parse_scenario, run_checks, run_label, CheckRequest, Report, Status, Subject};
use ggwb_core::GgError;

fn scenario_error(text: &str) -> (String, String) {
    match parse_scenario(text, "t") {
        Err(GgError::Scenario { location, msg }) => (location, msg),
        Err(e) => panic!("unexpected error {e}"),
        Ok(_) => panic!("scenario should not parse"),
    }
}

fn all_two_one() -> Vec<(String, TwoOneGAC)> {
    let mut out = Vec::new();
    for b in builtins::BUILTINS {
        let s = b.load().unwrap();
        for (n, subj) in &s.subjects {
            if let Some(t) = subj.two_one() {
                out.push((format!("{}/{n}", b.name), t.clone()));
            }
            if let Subject::Hypersurface { geometry, ambient } = subj {
                let ig = ggwb_core::hypersurface::induced_gen_structure(geometry, ambient, &ZeroPolicy::default()).unwrap();
                out.push((format!("{}/{n} induced", b.name), ig.structure));
            }
        }
    }
    out
}

#[test]
fn builtins_load_with_aliases() {
    for b in builtins::BUILTINS {
        let s = b.load().unwrap();
        assert_eq!(s.name, b.name);
        for a in b.aliases {
            assert_eq!(workbench::builtin(a).unwrap().name, b.name);
        }
    }
    let s1 = workbench::builtin("S1-flat-cosymplectic").unwrap();
    assert_eq!(s1.charts.len(), 1);
    assert_eq!(s1.charts[0].dim(), 3);
    assert_eq!(s1.subjects.len(), 1);
    assert!(matches!(s1.subjects[0].1, Subject::Classical { .. }));
    assert_eq!(workbench::builtin("S6a").unwrap().name, "S4-sphere-in-C2");
    assert!(workbench::builtin("S9").is_err());
}

const BASE: &str = r#"{
  "chart": {"name": "R3", "coords": ["x", "y", "z"]},
  "fields": {
    "F": {"kind": "endo", "matrix": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]},
    "Z": {"kind": "vector", "components": ["0", "0", "1"]},
    "xi": {"kind": "form", "components": XI}
  },
  "structures": {"A": {"kind": "almost_contact", "F": "F", "Z": "Z", "xi": "xi"}},
  "checks": CHECKS
}"#;

fn base(xi: &str, checks: &str) -> String {
    BASE.replace("XI", xi).replace("CHECKS", checks)
}

#[test]
fn dimension_mismatch_is_located() {
    let (loc, msg) = scenario_error(&base(r#"["0", "1"]"#, "[]"));
    assert_eq!(loc, "fields.xi.components");
    assert!(msg.contains("expected 3 components"), "{msg}");
}

#[test]
fn undeclared_symbol_is_located() {
    let (loc, msg) = scenario_error(&base(r#"["0", "0", "w"]"#, "[]"));
    assert_eq!(loc, "fields.xi.components[2]");
    assert!(msg.contains("'w'"), "{msg}");
}

#[test]
fn syntax_error_reports_line_and_column() {
    let (loc, _) = scenario_error("{\n  \"chart\": {\"name\": \"R\", \"coords\": [\"x\"]},\n  \"fields\": {,}\n}");
    assert!(loc.starts_with("line 3 column"), "{loc}");
    let (loc, _) = scenario_error(&base(r#"["0", "0", "1 +"]"#, "[]"));
    assert_eq!(loc, "fields.xi.components[2]");
}

#[test]
fn undeclared_structure_in_checks() {
    let (loc, msg) = scenario_error(&base(r#"["0", "0", "1"]"#, r#"["normal@B"]"#));
    assert_eq!(loc, "checks[0]");
    assert!(msg.contains("'B'"));
}

#[test]
fn unknown_and_inapplicable_labels_are_config_errors() {
    let s = parse_scenario(&base(r#"["0", "0", "1"]"#, "[]"), "t").unwrap();
    let pol = ZeroPolicy::default();
    assert!(workbench::run_with(&s, &[CheckRequest::parse("nosuch")], &pol).is_err());
    assert!(workbench::run_with(&s, &[CheckRequest::parse("eqptans3")], &pol).is_err());
}

#[test]
fn checker_preconditions_become_skipped_entries() {
    let s = parse_scenario(&base(r#"["0", "0", "1"]"#, r#"["almcont", "Fmetric", "normaltotal"]"#), "t").unwrap();
    let r = run_checks(&s).unwrap();
    assert_eq!(r.entries[0].status, Status::Proved);
    assert_eq!(r.entries[1].status, Status::Skipped);
    assert!(r.entries[1].reason.as_deref().unwrap().contains("metric"));
    assert_eq!(r.entries[2].status, Status::Skipped);
    assert_eq!(r.summary.skipped, 2);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn s1_example_checks_pass() {
    let s = workbench::builtin("S1").unwrap();
    let req: Vec<_> = ["almost_contact", "normal", "classical_CRF", "CRFK"].iter().map(|l| CheckRequest::parse(l)).collect();
    let r = workbench::run_with(&s, &req, &s.policy).unwrap();
    assert_eq!(r.entries.len(), 4);
    assert!(r.entries.iter().all(|e| e.status == Status::Proved), "{}", r.to_text());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn s3_normal_fails_with_rational_witness() {
    let s = workbench::builtin("S3").unwrap();
    let r = workbench::run_with(&s, &[CheckRequest::parse("normal")], &s.policy).unwrap();
    let e = &r.entries[0];
    assert_eq!(e.status, Status::Failed);
    let w = e.witness.as_ref().unwrap();
    assert!(!w.context.is_empty());
    assert!(w.point.values().all(|v| v.chars().all(|c| c.is_ascii_digit() || "-/".contains(c))));
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn report_formats() {
    let s = workbench::builtin("S2").unwrap();
    let r = workbench::run_with(&s, &[CheckRequest::parse("normaltotal")], &s.policy).unwrap();
    let text = r.to_text();
    assert!(text.contains("(normaltotal) line 2: Proved"), "{text}");
    let json = r.to_json();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v.get("elapsed").is_none());
    let back: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_json(), json);
}

#[test]
fn all_applicable_labels_run_when_none_requested() {
    let s = workbench::builtin("S6b").unwrap();
    let r = run_checks(&s).unwrap();
    let kinds: Vec<_> = s.subjects.iter().map(|(_, x)| x.kind()).collect();
    let expected: usize = kinds.iter().map(|k| workbench::registry::labels_for(*k).count()).sum();
    assert_eq!(r.entries.len(), expected);
    assert_eq!(r.summary.failed, 0, "{}", r.to_text());
}

#[test]
fn seeds_change_samples_not_verdicts() {
    let s = workbench::builtin("S5").unwrap();
    let req = [CheckRequest::parse("corank_neg"), CheckRequest::parse("normaltotal")];
    let a = workbench::run_with(&s, &req, &ZeroPolicy { seed: 1, ..ZeroPolicy::default() }).unwrap();
    let b = workbench::run_with(&s, &req, &ZeroPolicy { seed: 2, ..ZeroPolicy::default() }).unwrap();
    let st = |r: &Report| r.entries.iter().map(|e| e.status).collect::<Vec<_>>();
    assert_eq!(st(&a), st(&b));
}

#[test]
fn levi_civita_and_musical_isomorphisms_on_scenario_metrics() {
    let pol = ZeroPolicy::default();
    for (name, t) in all_two_one() {
        let g = t.require_metric().unwrap().gamma();
        let lc = LeviCivita::new(g).unwrap();
        assert!(lc.check_metric(&pol).unwrap().holds(), "{name}");
        assert!(lc.check_torsion_free(&pol).unwrap().holds(), "{name}");
        for x in frame(g.chart()) {
            assert_eq!(g.sharp(&g.flat(&x)).unwrap(), x, "{name}");
        }
    }
}

#[test]
fn generalized_metric_commutes_with_f() {
    for (name, t) in all_two_one() {
        let g = t.require_metric().unwrap().endo();
        let f = t.f();
        assert!(g.compose(f).sub(&f.compose(g)).is_syntactically_zero(), "{name}");
        let f2 = t.second().unwrap();
        assert!(f2.f().sub(&g.compose(f)).is_syntactically_zero(), "{name}");
        assert!(f.compose(f2.f()).sub(&f2.f().compose(f)).is_syntactically_zero(), "{name}");
        let gm = g.matrix();
        let p = ggwb_core::courant::pairing_matrix(t.chart().dim());
        assert!(gm.transpose().mul(&p).mul(gm).sub(&p).is_syntactically_zero(), "{name}: G not orthogonal");
    }
}

#[test]
fn product_structure_squares_to_minus_identity() {
    for n in ["S1", "S2", "S3"] {
        let s = workbench::builtin(n).unwrap();
        let Subject::Classical { ac, .. } = &s.subjects[0].1 else { unreachable!() };
        let j = product_j(ac, "t").unwrap();
        let minus = EndoTM::new(j.chart(), Mat::identity(4).neg()).unwrap();
        assert_eq!(j.pow(2), minus);
    }
}

#[test]
fn normality_verdicts_agree_everywhere() {
    let pol = ZeroPolicy::default();
    for (name, t) in all_two_one() {
        let subj = Subject::TwoOne(t.clone());
        let v: Vec<bool> = ["normal_21", "indbin0", "NJ", "normaltotal"]
            .iter()
            .map(|l| run_label(l, &subj, &pol).unwrap().verdict.holds())
            .collect();
        assert!(v.iter().all(|&b| b == v[0]), "{name}: {v:?}");
        if v[0] {
            assert!(phi_integrability(&t, &pol).unwrap().verdict.holds(), "{name}: normal but N_Phi != 0");
        }
    }
}

/// `N × T²` with `N` flat cosymplectic.
const FLAT_PRODUCT: &str = r#"{
  "chart": {"name": "R3xT2", "coords": ["x", "y", "z", "tp", "tm"]},
  "fields": {
    "g": {"kind": "metric", "matrix": [["1","0","0","0","0"],["0","1","0","0","0"],["0","0","1","0","0"],["0","0","0","1","0"],["0","0","0","0","1"]]},
    "Fp": {"kind": "endo", "matrix": [["0","-1","0","0","0"],["1","0","0","0","0"],["0","0","0","0","-1"],["0","0","0","0","0"],["0","0","1","0","0"]]},
    "Fm": {"kind": "endo", "matrix": [["0","-1","0","0","0"],["1","0","0","0","0"],["0","0","0","-1","0"],["0","0","1","0","0"],["0","0","0","0","0"]]},
    "Zp": {"kind": "vector", "components": ["0","0","0","1","0"]},
    "Zm": {"kind": "vector", "components": ["0","0","0","0","1"]}
  },
  "structures": {"P": {"kind": "two_one", "gamma": "g", "F+": "Fp", "F-": "Fm", "Z+": "Zp", "Z-": "Zm"}},
  "checks": ["condlastex", "binormal", "indbin1"]
}"#;

#[test]
fn flat_product_is_binormal() {
    let s = parse_scenario(FLAT_PRODUCT, "flat").unwrap();
    let r = run_checks(&s).unwrap();
    assert_eq!(r.summary.failed, 0, "{}", r.to_text());
}

#[test]
fn heisenberg_product_binormality_cross_check() {
    let s = workbench::builtin("S5").unwrap();
    let r = workbench::run_with(&s, &[CheckRequest::parse("binormal")], &s.policy).unwrap();
    let e = &r.entries[0];
    assert_eq!(e.status, Status::Failed);
    let ok = |n: &str| e.part(n).map(|p| p.status != Status::Failed).unwrap();
    assert!(ok("normal") && ok("zeta") && ok("rho") && ok("split brackets"));
    assert!(!ok("companion normal"));

    let t = s.subjects[0].1.two_one().unwrap();
    let (m, p) = t.require_pair().unwrap();
    let hand = TwoOneGAC::from_pair(m.clone(), p.second()).unwrap();
    let pol = ZeroPolicy::default();
    let a = run_label("NJ", &Subject::TwoOne(hand), &pol).unwrap();
    let b = run_label("NJ", &Subject::TwoOne(t.second().unwrap()), &pol).unwrap();
    assert_eq!(a.verdict.holds(), b.verdict.holds());
    assert!(!a.verdict.holds());
}
