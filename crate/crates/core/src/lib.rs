//! Computing with metric functionals: the point functionals
//! `h_x(y) = d(y, x) - d(x0, x)` of a metric space and their pointwise limits.
//!
//! The crate covers horofunction-boundary restrictions of Cayley graphs,
//! 1-Lipschitz extension, translation numbers of semi-contractions, and
//! executable checks of the structural facts about these objects on
//! desk-scale model spaces.

pub mod boundary;
pub mod descriptor;
pub mod dynamics;
pub mod error;
pub mod extension;
pub mod functionals;
pub mod groups;
pub mod metric;
pub mod scalar;
pub mod spaces;

pub use error::{Error, Result};
pub use metric::{
    discrete_ball, point_functional_eval, validate_metric, validate_metric_sampled,
    FiniteMetricSpace, Functional, LocallyFinite, MetricSpace, PointFunctional, Verdict,
};
pub use scalar::{frac, rat, Rat, Scalar, ScalarKind};
