//! Exact group arithmetic for the built-in families and Cayley balls under
//! word metrics.

mod ball;
mod element;

pub use ball::{cayley_ball, word_length, CayleyBall, CayleyGraph};
pub use element::{FiniteGroup, FreeWord, GeneratingSet, Group, GroupElement};
