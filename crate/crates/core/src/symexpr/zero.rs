//! Zero testing: exact cancellation first, then seeded random evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ratfn::{point_to_f64, EvalError, ExactPoint, ScalarExpr};

/// Knobs for [`is_zero`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroPolicy {
    /// Bound on resampling rounds when a point lands on a pole.
    pub max_passes: u32,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for ZeroPolicy {
    fn default() -> Self {
        ZeroPolicy { max_passes: 8, samples: 32, seed: 0, tol: 1e-9 }
    }
}

/// Where a nonzero value was observed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: BTreeMap<String, String>,
    pub value: String,
    pub context: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} at (", self.context, self.value)?;
        for (k, (s, v)) in self.point.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}={v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness")]
pub enum Verdict {
    Proved,
    NumericallySupported,
    Failed(Box<Witness>),
}

impl Verdict {
    fn rank(&self) -> u8 {
        match self {
            Verdict::Failed(_) => 0,
            Verdict::NumericallySupported => 1,
            Verdict::Proved => 2,
        }
    }

    /// Weakest of the two; the first failure wins ties.
    pub fn and(self, other: Verdict) -> Verdict {
        if other.rank() < self.rank() {
            other
        } else {
            self
        }
    }

    pub fn all(it: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut acc = Verdict::Proved;
        for v in it {
            if matches!(acc, Verdict::Failed(_)) {
                break;
            }
            acc = acc.and(v);
        }
        acc
    }

    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Failed(_))
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Failed(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proved => "Proved",
            Verdict::NumericallySupported => "NumericallySupported",
            Verdict::Failed(_) => "Failed",
        }
    }

    /// Replace the witness context (no effect on passing verdicts).
    pub fn with_context(self, ctx: impl Into<String>) -> Verdict {
        match self {
            Verdict::Failed(mut w) => {
                w.context = ctx.into();
                Verdict::Failed(w)
            }
            v => v,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Failed(w) => write!(f, "Failed: {w}"),
            v => write!(f, "{}", v.label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ZeroTestError {
    #[error("{context}: every sample point hit a pole after {attempts} attempts")]
    PolesExhausted { context: String, attempts: usize },
    #[error("{context}: symbol '{symbol}' has no sample value")]
    Unbound { context: String, symbol: String },
}

fn sample_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.random_range(-97..=97);
    let den: i64 = rng.random_range(1..=97);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Deterministic sample points over the given symbols.
pub fn sample_points(symbols: &[Arc<str>], seed: u64, count: usize) -> Vec<ExactPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| symbols.iter().map(|s| (s.clone(), sample_rational(&mut rng))).collect())
        .collect()
}

fn point_strings(p: &ExactPoint) -> BTreeMap<String, String> {
    p.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Decide whether `e` vanishes identically.
///
/// `Proved` means the canonical numerator is literally zero. Otherwise the
/// expression is evaluated at `policy.samples` seeded random rational points:
/// exactly when it has no transcendental atoms, in floating point (relative
/// tolerance `policy.tol`) otherwise.
pub fn is_zero(e: &ScalarExpr, policy: &ZeroPolicy, context: &str) -> Result<Verdict, ZeroTestError> {
    if e.is_zero() {
        return Ok(Verdict::Proved);
    }
    if let Some(c) = e.as_constant() {
        return Ok(Verdict::Failed(Box::new(Witness {
            point: BTreeMap::new(),
            value: c.to_string(),
            context: context.to_string(),
        })));
    }
    let symbols: Vec<Arc<str>> = e.symbols().into_iter().collect();
    let exact = !e.has_atoms();
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let budget = policy.samples.max(1) * (policy.max_passes.max(1) as usize);
    let mut good = 0;
    let mut attempts = 0;
    while good < policy.samples.max(1) {
        if attempts >= budget {
            return Err(ZeroTestError::PolesExhausted { context: context.to_string(), attempts });
        }
        attempts += 1;
        let point: ExactPoint = symbols.iter().map(|s| (s.clone(), sample_rational(&mut rng))).collect();
        if exact {
            match e.eval_exact(&point) {
                Ok(v) if v.is_zero() => good += 1,
                Ok(v) => {
                    return Ok(Verdict::Failed(Box::new(Witness {
                        point: point_strings(&point),
                        value: v.to_string(),
                        context: context.to_string(),
                    })))
                }
                Err(EvalError::Pole) => continue,
                Err(EvalError::UnboundSymbol(s)) => {
                    return Err(ZeroTestError::Unbound { context: context.to_string(), symbol: s })
                }
                Err(EvalError::NotRational) => unreachable!("atom-free expression"),
            }
        } else {
            match e.eval_complex(&point_to_f64(&point)) {
                Ok((v, scale)) => {
                    if !scale.is_finite() {
                        continue;
                    }
                    if v.norm() <= policy.tol * scale.max(1.0) {
                        good += 1;
                    } else {
                        let value = if v.im == 0.0 { format!("{:e}", v.re) } else { format!("{:e}{:+e}i", v.re, v.im) };
                        return Ok(Verdict::Failed(Box::new(Witness {
                            point: point_strings(&point),
                            value,
                            context: context.to_string(),
                        })));
                    }
                }
                Err(EvalError::UnboundSymbol(s)) => {
                    return Err(ZeroTestError::Unbound { context: context.to_string(), symbol: s })
                }
                Err(_) => continue,
            }
        }
    }
    Ok(Verdict::NumericallySupported)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse;

    #[test]
    fn verdict_kinds() {
        let p = ZeroPolicy::default();
        assert_eq!(is_zero(&parse("x - x").unwrap(), &p, "t").unwrap(), Verdict::Proved);
        assert_eq!(
            is_zero(&parse("sin(x)^2 + cos(x)^2 - 1").unwrap(), &p, "t").unwrap(),
            Verdict::NumericallySupported
        );
        let v = is_zero(&parse("x*y - y").unwrap(), &p, "t").unwrap();
        let w = v.witness().expect("failure");
        assert_ne!(w.point["x"], "1");
    }

    #[test]
    fn deterministic_for_a_seed() {
        let p = ZeroPolicy { seed: 11, ..ZeroPolicy::default() };
        let e = parse("x^2 - y").unwrap();
        assert_eq!(is_zero(&e, &p, "c").unwrap(), is_zero(&e, &p, "c").unwrap());
    }

    #[test]
    fn aggregation_takes_weakest() {
        let f = Verdict::Failed(Box::default());
        assert_eq!(Verdict::Proved.and(Verdict::NumericallySupported), Verdict::NumericallySupported);
        assert!(!Verdict::all([Verdict::Proved, f, Verdict::NumericallySupported]).holds());
    }
}
