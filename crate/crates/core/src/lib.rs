//! Exact verification kernels for a family of birationally commutative graded
//! algebras built from a birational self-map of P1 x P1.

pub mod complexes;
pub mod diamond;
pub mod error;
pub mod exact;
pub mod fibercoh;
pub mod linsys;
pub mod params;
pub mod skew;
pub mod surface;

pub use error::{Error, Result};
pub use exact::{Field, Fp, MPoly, Rat, Ring};
pub use params::{Mode, Params, Sample};
pub use surface::{BiForm, SurfacePoint};
