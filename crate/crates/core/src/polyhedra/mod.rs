//! Exact rational cones and fans on the nonnegative orthant.

mod cone;
pub(crate) mod dd;
mod fan;

pub use cone::RationalCone;
pub(crate) use cone::{require_pointed, unit_vector};
pub use fan::Fan;
