//! Exact arithmetic: rationals, a prime field, sparse multivariate polynomials,
//! rational functions in the parameters, and linear algebra over each.

pub mod fp;
pub mod matrix;
pub mod mpoly;
pub mod ring;
pub mod scalar;

pub use fp::{Fp, PRIME};
pub use matrix::{determinant, rank_and_kernel, rank_of, EchelonBasis, Matrix, ScalarMatrix};
pub use mpoly::{param_vars, parse_poly, poly_gcd, poly_lcm, MPoly, Mono};
pub use ring::{rat, rat_int, Field, Rat, Ring};
pub use scalar::Scalar;
