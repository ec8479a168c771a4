//! McShane extension, the metric Hahn-Banach extension along witness
//! sequences, and the two examples where metric functionals fail to be
//! horofunctions.

mod failure;
mod hahn_banach;
mod mcshane;

pub use failure::{
    euclidean_zero_nonmembership_check, horofunction_failure_witness, perpendicular_ray_functional,
    FailureSpace, FailureWitness, NonMembershipReport, SpokeWitness, StarWitness,
};
pub use hahn_banach::{
    hahn_banach_extend, HahnBanachConfig, HahnBanachExtension, RestrictionMismatch,
};
pub use mcshane::{mcshane_extend, McShaneExtension, McShaneMode, PartialFunctional};
