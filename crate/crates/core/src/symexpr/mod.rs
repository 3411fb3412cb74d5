//! Exact scalar expressions: parsing, canonical form, derivatives, zero tests.

mod coeff;
mod parse;
mod poly;
mod ratfn;
mod zero;

pub use coeff::Coeff;
pub use parse::{canon, parse, parse_node, Node, ParseError};
pub use poly::{Monomial, Poly, Var};
pub use ratfn::{EvalError, ExactPoint, ScalarExpr};
pub use zero::{is_zero, sample_points, Verdict, Witness, ZeroPolicy, ZeroTestError};
