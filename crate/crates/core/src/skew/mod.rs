//! The twisted graded rings: graded pieces, relations, syzygies, ideal
//! membership and opposite-ring dimensions.

pub mod ideals;
pub mod presentation;
pub mod relations;
pub mod ring;

pub use ideals::{ideal_membership, monomial_element, non_noetherian_witness, standard_syzygies, syzygy_kernel, Side, SyzygyReport, WitnessRow};
pub use presentation::{degree_two_kernel, quadratic_algebra_dims, DegreeTwoKernel};
pub use relations::{
    auxiliary_relations, auxiliary_residues, auxiliary_status, binomial_relations, check_auxiliary_relations, check_relations, quadratic_relations, resolution_entries, Quadratic, Sym,
};
pub use ring::{unit, GradedPiece, Linear, PieceTable, SkewRing};

use crate::error::{Error, Result};
use crate::exact::{Fp, MPoly, Rat};
use crate::params::{Mode, Params, Sample};

/// Default degree bound for a mode.
pub fn default_bound(mode: &Mode) -> usize {
    match mode {
        Mode::Generic => 5,
        _ => 8,
    }
}

/// C(n+3, 3).
pub fn expected_dim(n: usize) -> usize {
    (n + 3) * (n + 2) * (n + 1) / 6
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded { what: "degree", value: n, bound });
    }
    Ok(())
}

/// Coefficients of the evaluation point for a mode.
pub fn sample_params(mode: &Mode, seed: u64, bound: usize) -> Result<Params<Fp>> {
    Ok(Sample::for_mode(mode, seed, bound)?.params())
}

/// Graded piece of degree n at twist m, over the evaluation field of the mode.
pub fn graded_piece(n: usize, m: usize, mode: &Mode, seed: u64, bound: usize) -> Result<GradedPiece<Fp>> {
    check_bound(n, bound)?;
    let mut table = PieceTable::new(sample_params(mode, seed, bound)?);
    Ok(table.piece(n, m).clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub n: usize,
    /// Rank at the evaluation point; a lower bound for the dimension over the parameter field.
    pub dim: usize,
    /// Quotient dimension of the quadratic presentation at the same point; an upper bound.
    pub upper: usize,
    pub expected: usize,
}

impl DimRow {
    /// Both bounds meet, so `dim` is the exact dimension.
    pub fn certified(&self) -> bool {
        self.dim == self.upper
    }

    pub fn pass(&self) -> bool {
        self.certified() && self.dim == self.expected
    }
}

/// Graded dimensions n = 1..=max_n with their two-sided certificate. The
/// relations are checked exactly first, so the presentation bound is valid.
pub fn graded_dims(mode: &Mode, seed: u64, max_n: usize) -> Result<Vec<DimRow>> {
    relations_report(mode)?;
    let params = sample_params(mode, seed, max_n)?;
    dims_at(&params, max_n)
}

fn dims_at(params: &Params<Fp>, max_n: usize) -> Result<Vec<DimRow>> {
    let upper = quadratic_algebra_dims(&quadratic_relations(params), max_n);
    let mut table = PieceTable::new(params.clone());
    Ok((1..=max_n).map(|n| DimRow { n, dim: table.dim(n, 0), upper: upper[n], expected: expected_dim(n) }).collect())
}

/// Exact relation check for a mode: symbolic for generic, rational otherwise.
/// At the degenerate value the binomial forms are checked as well.
pub fn relations_report(mode: &Mode) -> Result<()> {
    match mode.rational_point() {
        None => {
            let p = Params::<MPoly>::symbolic();
            check_relations(&mut SkewRing::new(p.clone()), &quadratic_relations(&p))
        }
        Some((r, t)) => {
            let p = Params::<Rat>::from_point(&r, &t);
            let mut ring = SkewRing::new(p.clone());
            check_relations(&mut ring, &quadratic_relations(&p))?;
            if mode.is_tau_one() {
                check_relations(&mut ring, &binomial_relations())?;
            }
            Ok(())
        }
    }
}

fn mode_params(mode: &Mode) -> Params<MPoly> {
    match mode.rational_point() {
        None => Params::<MPoly>::symbolic(),
        Some((r, t)) => {
            let vars = crate::exact::param_vars();
            Params::from_point(&MPoly::constant_in(&vars, r), &MPoly::constant_in(&vars, t))
        }
    }
}

/// The ten auxiliary elements as coefficient vectors over the parameter polynomials.
pub fn z_elements(mode: &Mode) -> Vec<Linear<MPoly>> {
    resolution_entries(&mode_params(mode)).to_vec()
}

/// Exact status of each of the fourteen auxiliary relations.
pub fn z_relation_status(mode: &Mode) -> Vec<bool> {
    auxiliary_status(&mut SkewRing::new(mode_params(mode)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OppositeRow {
    pub n: usize,
    pub dim: usize,
    pub dim_inverse: usize,
    pub certified: bool,
}

/// Dimensions of the ring and of the ring with inverted parameters, both
/// certified at the evaluation point of the mode.
pub fn opposite_dims(mode: &Mode, seed: u64, max_n: usize) -> Result<Vec<OppositeRow>> {
    let params = sample_params(mode, seed, max_n)?;
    let a = dims_at(&params, max_n)?;
    let b = dims_at(&params.inverted(), max_n)?;
    Ok(a.iter()
        .zip(&b)
        .map(|(x, y)| OppositeRow { n: x.n, dim: x.dim, dim_inverse: y.dim, certified: x.certified() && y.certified() })
        .collect())
}

/// Dimensions of the degree-n pieces at twists 0..=max_twist.
pub fn twist_dims(mode: &Mode, seed: u64, n: usize, max_twist: usize) -> Result<Vec<usize>> {
    let mut table = PieceTable::new(sample_params(mode, seed, n + max_twist)?);
    Ok((0..=max_twist).map(|m| table.dim(n, m)).collect())
}

/// Checks that products of degree-n and degree-l pieces span degree n + l.
pub fn multiplication_surjective(mode: &Mode, seed: u64, n: usize, l: usize) -> Result<bool> {
    let mut table = PieceTable::new(sample_params(mode, seed, n + l)?);
    let left = table.piece(n, 0).basis();
    let right = table.piece(l, n).basis();
    let target = table.dim(n + l, 0);
    let width = (n + l + 1) * (SkewRing::<Fp>::bidegree(n + l, 0).1 + 1);
    let mut span = crate::exact::EchelonBasis::new(width);
    for a in &left {
        for b in &right {
            span.insert(a.mul(b).coeffs());
        }
    }
    Ok(span.rank() == target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Ring};

    #[test]
    fn generic_dims_certified() {
        let rows = graded_dims(&Mode::Generic, 7, 3).unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![4, 10, 20]);
        assert!(rows.iter().all(|r| r.pass()));
    }

    #[test]
    fn tau_one_and_specialized_dims() {
        for mode in [Mode::TauOne, Mode::Specialized { rho: rat_int(2), theta: rat_int(3) }] {
            let rows = graded_dims(&mode, 0, 4).unwrap();
            assert!(rows.iter().all(|r| r.pass()), "{:?}", rows);
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(graded_piece(6, 0, &Mode::Generic, 1, 5), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn opposite_and_twists() {
        let rows = opposite_dims(&Mode::Generic, 3, 3).unwrap();
        assert!(rows.iter().all(|r| r.dim == r.dim_inverse && r.certified));
        assert_eq!(twist_dims(&Mode::Generic, 3, 2, 2).unwrap(), vec![10, 10, 10]);
        assert!(multiplication_surjective(&Mode::Generic, 3, 1, 2).unwrap());
    }

    #[test]
    fn z_nine_at_tau_one_is_u() {
        let z = z_elements(&Mode::TauOne);
        // u t up to the scalar (rho+1)(theta+1) = 4
        assert_eq!(z[8], [MPoly::zero(), MPoly::from_i64(4), MPoly::zero(), MPoly::zero()]);
    }
}
