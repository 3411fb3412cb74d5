//! Coordinate differential calculus on a single chart.

mod chart;
mod connection;
mod fields;
mod mat;
mod ops;

pub use chart::{Chart, ChartRef};
pub(crate) use chart::same_chart;
pub use connection::LeviCivita;
pub use fields::{coframe, frame, EndoTM, MetricField, OneForm, ThreeForm, TwoForm, VectorField};
pub use mat::{dot, vec_add, vec_scale, vec_sub, Mat};
pub use ops::{d_scalar, ext_d, interior2, lie_bracket, lie_derivative, wedge, wedge_1_2, ExtD, LieDerivative};
