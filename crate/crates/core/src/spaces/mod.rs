//! Model and counterexample spaces with exact or closed-form distances.

mod distorted_line;
mod hyperbolic;
pub(crate) mod lp;
mod spoke_ray;
mod star_tree;

pub use distorted_line::{
    distorted_line_validate, DistortedLine, Distortion, DistortionCheck, DistortionViolation,
};
pub use hyperbolic::{
    cayley_to_disk, cayley_to_half_plane, hyperbolic_distance, HyperbolicModel, HyperbolicVariant,
};
pub use lp::{lp_norm, LpSpace};
pub use spoke_ray::{spoke_length, spoke_ray_distance, SpokePoint, SpokeRaySpace};
pub use star_tree::{star_tree_distance, StarPoint, StarTreeSpace};
