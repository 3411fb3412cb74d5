use ggwb_core::calculus::{EndoTM, Mat, MetricField, TwoForm};
use ggwb_core::hypersurface::{check_gen_kahler, GenHermitian};
use ggwb_core::structures::classical::product_j;
use ggwb_core::structures::generalized::Sign;
use ggwb_core::symexpr::{ScalarExpr, ZeroPolicy};
use ggwb_core::workbench::{self, Subject};

/// Bi-Hermitian data `(γ + dt², J̃₊, J̃₋)` on `M × ℝ` built from the classical pair; `flip` reverses `t` in `J̃₋`.
fn lifted(name: &str, flip: bool) -> GenHermitian {
    let s = workbench::builtin(name).unwrap();
    let t = s.subjects.iter().find_map(|(_, s)| match s {
        Subject::TwoOne(t) => Some(t.clone()),
        Subject::Classical { lift, .. } => lift.clone(),
        _ => None,
    });
    let t = t.unwrap();
    let (m, pair) = t.require_pair().unwrap();
    let g = m.gamma();
    let jp = product_j(&pair.structure(Sign::Plus, g), "t").unwrap();
    let mut jm = product_j(&pair.structure(Sign::Minus, g), "t").unwrap();
    let pc = jp.chart().clone();
    let n = pc.dim();
    if flip {
        let a = jm.matrix().clone();
        let sg = |i: usize| if i == n - 1 { -1 } else { 1 };
        let b = Mat::from_fn(n, n, |i, j| if sg(i) * sg(j) < 0 { a[(i, j)].neg() } else { a[(i, j)].clone() });
        jm = EndoTM::new(&pc, b).unwrap();
    }
    let gamma = Mat::from_fn(n, n, |i, j| {
        if i < n - 1 && j < n - 1 {
            g.matrix()[(i, j)].clone()
        } else if i == j {
            ScalarExpr::one()
        } else {
            ScalarExpr::zero()
        }
    });
    GenHermitian { gamma: MetricField::new(&pc, gamma).unwrap(), psi: TwoForm::zero(&pc), jp, jm }
}

#[test]
fn flat_lift_is_generalized_kahler() {
    let pol = ZeroPolicy::default();
    let ok = [false, true].iter().any(|&f| check_gen_kahler(&lifted("S1", f), &pol).unwrap().verdict.holds());
    assert!(ok);
}

#[test]
fn heisenberg_product_lift_is_not_generalized_kahler() {
    let pol = ZeroPolicy::default();
    for f in [false, true] {
        let o = check_gen_kahler(&lifted("S5", f), &pol).unwrap();
        assert!(o.verdict.witness().is_some(), "{o:#?}");
    }
}
