//! Metric functionals: exact ball restrictions, closed-form models, limits
//! along witness sequences, and the property checks they must satisfy.

mod ball;
mod checks;
mod lp_limits;
mod model;
mod realized;

pub use ball::BallFunctional;
pub use checks::{
    distance_recovery_check, functional_norm_estimate, lipschitz_check, midpoint_convexity_check,
    midpoint_convexity_check_fn, ConvexityViolation, LipschitzViolation, NormEstimate,
    RecoveryCase, RecoveryReport,
};
pub use lp_limits::{
    lp_limit_convergence_check, lp_point_functional, LpLimitReport, LpLimitTarget,
};
pub use model::ModelFunctional;
pub use realized::{Realized, RealizedConfig, RealizedFunctional};
