//! Forms on P1 x P1, the maps acting on them, orbit points and the
//! determinant and base-locus certificates built from them.

pub mod baselocus;
pub mod biform;
pub mod critdens;
pub mod maps;
pub mod points;

pub use baselocus::{base_locus_check, base_locus_tau_one, check_base_locus, BaseLocusReport};
pub use biform::{binom, c2, BiForm};
pub use critdens::{critdens_determinant, CritDensReport};
pub use maps::{curve_forms, pullback_form, CurveCache, MapKind, MapSpec, Pullback};
pub use points::{orbit_point, orbit_points, orbit_sequence, Coords, OrbitStart, SurfacePoint};
