//! Conformal changes, the product metric on `M × ℝ`, and the Sasakian condition.

use crate::calculus::{ChartRef, Mat};
use crate::courant::{pairing_matrix, BigEndo};
use crate::error::Result;
use crate::numeric;
use crate::structures::twoone::{check_big_nijenhuis_zero, check_gen_complex, product_j, LineBasis, TwoOneGAC};
use crate::symexpr::{ScalarExpr, Verdict, ZeroPolicy};
use crate::verify::{chain, mat_equal, Outcome};

/// `𝒞_τ(X, α) = (X, e^τ α)`.
pub fn conformal(chart: &ChartRef, tau: &ScalarExpr) -> BigEndo {
    let n = chart.dim();
    let e = ScalarExpr::exp(tau);
    let m = Mat::from_fn(2 * n, 2 * n, |i, j| {
        if i != j {
            ScalarExpr::zero()
        } else if i < n {
            ScalarExpr::one()
        } else {
            e.clone()
        }
    });
    BigEndo::new(chart, m).expect("square")
}

/// `𝒞_{−τ} ∘ 𝒜 ∘ 𝒞_τ`.
pub fn conformal_change(tau: &ScalarExpr, a: &BigEndo) -> BigEndo {
    let c = a.chart();
    conformal(c, &tau.neg()).compose(a).compose(&conformal(c, tau))
}

/// `𝒥` and `𝒥'` on `M × ℝ`.
pub fn product_pair(s: &TwoOneGAC) -> Result<(BigEndo, BigEndo)> {
    let b = LineBasis::default();
    Ok((product_j(s, &b)?, product_j(&s.second()?, &b)?))
}

/// `𝒢̃ = −𝒥 ∘ 𝒥'`.
pub fn tilde_g(s: &TwoOneGAC) -> Result<BigEndo> {
    let (j, jp) = product_pair(s)?;
    Ok(j.compose(&jp).neg())
}

fn t_coordinate(pc: &ChartRef) -> ScalarExpr {
    pc.coord(pc.dim() - 1)
}

/// `G̃ = G + ♭𝒯₊⊗♭𝒯₊ + ♭𝒯₋⊗♭𝒯₋`, `𝒥𝒥' = 𝒥'𝒥`, and positivity of `G̃` at `points` sample points.
pub fn check_tilde_g(s: &TwoOneGAC, policy: &ZeroPolicy, points: usize) -> Result<Outcome> {
    let m = s.require_metric()?;
    let (j, jp) = product_pair(s)?;
    let pc = j.chart().clone();
    let n = pc.dim();
    let gt = j.compose(&jp).neg();
    let gmat = gt.matrix().transpose().mul(&pairing_matrix(n));
    let lifted = BigEndo::new(m.chart(), m.matrix().clone())?.lift(&pc)?;
    let half = ScalarExpr::rational(1, 2);
    let mut tp = vec![ScalarExpr::zero(); 2 * n];
    let mut tm = vec![ScalarExpr::zero(); 2 * n];
    // ♭𝒯₊ = ½(dt + ∂t), ♭𝒯₋ = ½(dt − ∂t) in frame coordinates
    tp[n - 1] = half.clone();
    tp[2 * n - 1] = half.clone();
    tm[n - 1] = half.clone();
    tm[2 * n - 1] = half.neg();
    let expected = lifted.matrix().add(&Mat::outer(&tp, &tp)).add(&Mat::outer(&tm, &tm));
    let formula = mat_equal(&gmat, &expected, policy, "G~ - G - T+ (x) T+ - T- (x) T-")?;
    let commute = mat_equal(j.compose(&jp).matrix(), jp.compose(&j).matrix(), policy, "JJ' - J'J")?;
    let positive = numeric::check_positive(&pc, &gmat, policy, points, "G~ positive")?;
    Ok(Outcome::from_parts(vec![
        ("formula".into(), formula),
        ("commute".into(), commute),
        ("positive".into(), positive),
    ]))
}

/// Integrability of `𝒥_t` and `𝒥'_t` with `τ = t`.
pub fn check_sasakian(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Outcome> {
    let pc = s.chart().product_with_line("t")?;
    check_sasakian_twisted(s, &t_coordinate(&pc), policy)
}

/// Integrability of `𝒞_{−τ}𝒥𝒞_τ` and `𝒞_{−τ}𝒥'𝒞_τ`.
pub fn check_sasakian_twisted(s: &TwoOneGAC, tau: &ScalarExpr, policy: &ZeroPolicy) -> Result<Outcome> {
    let (j, jp) = product_pair(s)?;
    let jt = conformal_change(tau, &j);
    let jpt = conformal_change(tau, &jp);
    Ok(Outcome::from_parts(vec![
        ("J_t".into(), chain([check_gen_complex(&jt, policy), check_big_nijenhuis_zero(&jt, policy, "N_J_t")])?),
        ("J'_t".into(), chain([check_gen_complex(&jpt, policy), check_big_nijenhuis_zero(&jpt, policy, "N_J'_t")])?),
    ]))
}

/// `𝒢̃_t` equals the generalized metric of `(e^{−t}γ̃, e^{−t}ψ̃)` with `γ̃ = γ + dt²`, `ψ̃ = ψ`.
pub fn check_conformal_metric(s: &TwoOneGAC, policy: &ZeroPolicy) -> Result<Verdict> {
    let m = s.require_metric()?;
    let gt = tilde_g(s)?;
    let pc = gt.chart().clone();
    let n = m.chart().dim();
    let t = t_coordinate(&pc);
    let e = ScalarExpr::exp(&t.neg());
    let gamma = Mat::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => m.gamma().matrix()[(i, j)].clone(),
        (false, false) => ScalarExpr::one(),
        _ => ScalarExpr::zero(),
    });
    let psi = Mat::from_fn(n + 1, n + 1, |i, j| if i < n && j < n { m.psi().matrix()[(i, j)].clone() } else { ScalarExpr::zero() });
    let gm = crate::calculus::MetricField::new(&pc, gamma.scale(&e))?;
    let pm = crate::calculus::TwoForm::new(&pc, psi.scale(&e))?;
    let target = crate::structures::generalized::GenMetric::new(gm, pm)?;
    chain([mat_equal(conformal_change(&t, &gt).matrix(), target.endo().matrix(), policy, "G~_t - G(e^-t gamma~, e^-t psi~)")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{Chart, EndoTM, MetricField, OneForm, VectorField};
    use crate::structures::classical::AlmostContact;
    use crate::symexpr::parse;

    fn mat(rows: &[&[&str]]) -> Mat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|s| parse(s).unwrap()).collect()).collect()).unwrap()
    }

    fn flat() -> TwoOneGAC {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let f = EndoTM::new(&c, mat(&[&["0", "-1", "0"], &["1", "0", "0"], &["0", "0", "0"]])).unwrap();
        let ac = AlmostContact::new(f, VectorField::basis(&c, 2), OneForm::basis(&c, 2), Some(MetricField::euclidean(&c))).unwrap();
        TwoOneGAC::from_classical(&ac).unwrap()
    }

    fn heisenberg() -> TwoOneGAC {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        let f = EndoTM::new(&c, mat(&[&["0", "1", "0"], &["-1", "0", "0"], &["0", "y", "0"]])).unwrap();
        let xi = OneForm::new(&c, vec![parse("-y").unwrap(), ScalarExpr::zero(), ScalarExpr::one()]).unwrap();
        let g = MetricField::new(&c, mat(&[&["1 + y^2", "0", "-y"], &["0", "1", "0"], &["-y", "0", "1"]])).unwrap();
        TwoOneGAC::from_classical(&AlmostContact::new(f, VectorField::basis(&c, 2), xi, Some(g)).unwrap()).unwrap()
    }

    #[test]
    fn flat_is_not_sasakian() {
        let pol = ZeroPolicy::default();
        let o = check_sasakian(&flat(), &pol).unwrap();
        assert!(o.part("J_t").unwrap().is_proved());
        assert!(o.part("J'_t").unwrap().witness().is_some());
    }

    #[test]
    fn heisenberg_integrable_only_with_reversed_twist() {
        let pol = ZeroPolicy::default();
        let s = heisenberg();
        assert!(!check_sasakian(&s, &pol).unwrap().verdict.holds());
        let t = s.chart().product_with_line("t").unwrap().coord(3);
        assert!(check_sasakian_twisted(&s, &t.neg(), &pol).unwrap().verdict.is_proved());
    }

    #[test]
    fn tilde_metric() {
        let pol = ZeroPolicy::default();
        for s in [flat(), heisenberg()] {
            let o = check_tilde_g(&s, &pol, 16).unwrap();
            assert!(o.verdict.holds(), "{o:#?}");
            assert!(check_conformal_metric(&s, &pol).unwrap().is_proved());
        }
    }
}
