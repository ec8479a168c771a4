//! Dynamics of semi-contractions and isometries: translation numbers,
//! displacement, the tracial property, invariant metric functionals and the
//! compactification of a distorted line.

mod almost_fixed;
mod distorted;
mod maps;
mod moebius;
mod orbit;
mod spectral;

pub use almost_fixed::{almost_fixed_invariant_functional, AlmostFixedReport, InvarianceViolation};
pub use distorted::{distorted_compactification_check, DistortedReport};
pub use maps::{
    audit_self_map, Composition, FnMap, GroupTranslation, MapKind, MapViolation, SelfMap,
};
pub use moebius::{MoebiusClass, MoebiusMap};
pub use orbit::{
    moebius_orbit_audit, parabolic_orbit_functional, OrbitAudit, OrbitFunctionalConfig,
    OrbitFunctionalReport, OrbitSpace,
};
pub use spectral::{
    minimal_displacement, moebius_tracial_check, spectral_principle_witness, tracial_check,
    translation_number, DisplacementReport, DisplacementSublevel, SpectralReport, TauReport,
    TracialReport,
};
