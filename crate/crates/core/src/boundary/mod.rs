//! Restrictions of boundary points of Cayley graphs to balls, the drift
//! homomorphism, and the reduced compactification of `Z`.

mod drift;
mod reduced;
mod restrictions;

pub use drift::{
    drift_audit, drift_homomorphism, CoordBehavior, DriftAudit, DriftMeasure, DriftViolation,
    LatticeFunctional,
};
pub use reduced::{
    divergence_heuristic, reduced_classify_z, reduced_fixed_point_audit, sup_difference_z,
    DivergenceReport, FixedPointViolation, ZFunctional,
};
pub use restrictions::{
    limit_restrictions, restriction_table, restrictions_csv, sphere_restrictions,
    translate_restriction, unboundedness_check, Certificate, LimitRestrictionSet, RestrictionTable,
};
