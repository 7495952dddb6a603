//! First cohomology on fat fibers and the pushforward along the second projection.

mod cech;
mod pushforward;
mod trunc;

pub use cech::*;
pub use pushforward::*;
pub use trunc::*;
