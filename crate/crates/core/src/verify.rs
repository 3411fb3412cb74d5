//! Helpers turning lists of expressions into a single verdict.

use crate::error::Result;
use crate::symexpr::{is_zero, ScalarExpr, Verdict, ZeroPolicy};

/// Zero-test each expression; stops at the first failure.
pub fn all_zero(items: impl IntoIterator<Item = (ScalarExpr, String)>, policy: &ZeroPolicy) -> Result<Verdict> {
    let mut acc = Verdict::Proved;
    for (e, ctx) in items {
        if e.is_zero() {
            continue;
        }
        acc = acc.and(is_zero(&e, policy, &ctx)?);
        if !acc.holds() {
            break;
        }
    }
    Ok(acc)
}

pub fn zero(e: &ScalarExpr, policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    Ok(is_zero(e, policy, ctx)?)
}

pub fn equal(a: &ScalarExpr, b: &ScalarExpr, policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    zero(&(a - b), policy, ctx)
}

/// Componentwise equality of two lists.
pub fn equal_lists(a: &[ScalarExpr], b: &[ScalarExpr], policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    all_zero(a.iter().zip(b).enumerate().map(|(k, (x, y))| (x - y, format!("{ctx}[{k}]"))), policy)
}

/// Verdicts combined in order, short-circuiting on failure.
pub fn chain(parts: impl IntoIterator<Item = Result<Verdict>>) -> Result<Verdict> {
    let mut acc = Verdict::Proved;
    for p in parts {
        acc = acc.and(p?);
        if !acc.holds() {
            break;
        }
    }
    Ok(acc)
}

/// A verdict whose failure has no specific sample point.
pub fn failed(context: impl Into<String>, value: impl Into<String>) -> Verdict {
    Verdict::Failed(Box::new(crate::symexpr::Witness {
        point: Default::default(),
        value: value.into(),
        context: context.into(),
    }))
}

/// Every entry of `m` vanishes.
pub fn mat_zero(m: &crate::calculus::Mat, policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    all_zero(m.entries().map(|(i, j, e)| (e.clone(), format!("{ctx}[{i},{j}]"))), policy)
}

pub fn mat_equal(a: &crate::calculus::Mat, b: &crate::calculus::Mat, policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    mat_zero(&a.sub(b), policy, ctx)
}

/// Every component vanishes.
pub fn vec_zero(v: &[ScalarExpr], policy: &ZeroPolicy, ctx: &str) -> Result<Verdict> {
    all_zero(v.iter().enumerate().map(|(k, e)| (e.clone(), format!("{ctx}[{k}]"))), policy)
}

/// A deterministic nonconstant test function used to probe scalar invariance.
pub fn probe_function(chart: &crate::calculus::ChartRef, seed: u64) -> ScalarExpr {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d);
    let n = chart.dim();
    let i = rng.random_range(0..n);
    let j = rng.random_range(0..n);
    let a: i64 = rng.random_range(1..=5);
    let b: i64 = rng.random_range(1..=5);
    ScalarExpr::int(2) + chart.coord(i).scale(&crate::symexpr::Coeff::from_int(a))
        + (chart.coord(i) * chart.coord(j)).scale(&crate::symexpr::Coeff::from_int(b))
}

/// A verdict with named sub-results.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Outcome {
    pub verdict: Verdict,
    pub parts: Vec<(String, Verdict)>,
}

impl Outcome {
    pub fn single(v: Verdict) -> Outcome {
        Outcome { verdict: v, parts: Vec::new() }
    }

    pub fn from_parts(parts: Vec<(String, Verdict)>) -> Outcome {
        let verdict = Verdict::all(parts.iter().map(|(_, v)| v.clone()));
        Outcome { verdict, parts }
    }

    pub fn part(&self, name: &str) -> Option<&Verdict> {
        self.parts.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Outcome {
        Outcome::single(v)
    }
}

/// Both verdicts pass or both fail.
pub fn agreement(a: &Verdict, b: &Verdict, ctx: &str) -> Verdict {
    if a.holds() == b.holds() {
        Verdict::Proved
    } else {
        failed(ctx, format!("{} vs {}", a.label(), b.label()))
    }
}
