//! Linear systems with fat-point conditions and the monomial description at
//! the degenerate parameter value.

pub mod fatpoints;
pub mod monomial;

pub use fatpoints::{
    condition_rank, condition_rows, fat_point_scheme, h0_h1, h0_h1_at, multiplicity, satisfies, scheme_length, sections_equal_ring, Cohomology,
    FatPointScheme, SectionsReport,
};
pub use monomial::{a_h0_h1, a_monomial_basis, chart_intersection, enumerate_products, region_matches_ring, MonomialRegion};
