use crate::error::{Error, Result};
use crate::exact::{EchelonBasis, Field, Fp};
use crate::params::{Mode, Params, Sample};
use crate::skew::{self, SkewRing};
use crate::surface::{binom, orbit_points, BiForm, SurfacePoint};

/// A zero-dimensional scheme given by fat points.
#[derive(Clone, Debug, PartialEq)]
pub struct FatPointScheme<F> {
    pub points: Vec<(SurfacePoint<F>, usize)>,
}

impl<F: Field> FatPointScheme<F> {
    pub fn length(&self) -> usize {
        self.points.iter().map(|(_, mu)| mu * (mu + 1) / 2).sum()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.points.iter().map(|(_, mu)| *mu).collect()
    }
}

/// Multiplicity at the j-th orbit points for the degree-n piece at twist m.
pub fn multiplicity(n: usize, m: usize, j: usize) -> usize {
    if j + 2 > n + m {
        0
    } else {
        n.min(n + m - 1 - j)
    }
}

/// Closed form for the length of the base scheme: 2(m C(n+1,2) + C(n+1,3)).
pub fn scheme_length(n: usize, m: usize) -> usize {
    let n = n as i64;
    (2 * (m as i64 * binom(n + 1, 2) + binom(n + 1, 3))) as usize
}

/// Base scheme of the degree-n piece at twist m: both orbits up to index
/// n + m - 2, ordered F_0, Q_0, F_1, Q_1, ...
pub fn fat_point_scheme<F: Field>(n: usize, m: usize, rho: &F, theta: &F) -> Result<FatPointScheme<F>> {
    if n == 0 {
        return Ok(FatPointScheme { points: Vec::new() });
    }
    let count = (n + m).saturating_sub(1);
    let orbit = orbit_points(count, rho, theta)?;
    let mut points = Vec::new();
    for (j, (f, q)) in orbit.into_iter().enumerate() {
        let mu = multiplicity(n, m, j);
        points.push((f.normalized(), mu));
        points.push((q.normalized(), mu));
    }
    for i in 0..points.len() {
        for k in 0..i {
            if points[i].0.same_point(&points[k].0) {
                return Err(Error::CheckFailed(format!("scheme points {} and {} coincide", k, i)));
            }
        }
    }
    Ok(FatPointScheme { points })
}

/// Affine coordinate of a factor and whether the chart is the one at infinity.
fn chart<F: Field>(p: &(F, F)) -> Result<(F, bool)> {
    if !p.1.is_zero() {
        Ok((p.0.div(&p.1), false))
    } else if !p.0.is_zero() {
        Ok((p.1.div(&p.0), true))
    } else {
        Err(Error::NoChart)
    }
}

/// Taylor coefficients of order < mu at a point, as linear functionals on the
/// coefficients of bidegree-(a, b) forms.
pub fn condition_rows<F: Field>(pt: &SurfacePoint<F>, mu: usize, (a, b): (usize, usize)) -> Result<Vec<Vec<F>>> {
    let s = pt.to_square();
    let (c1, inf1) = chart(&s.first)?;
    let (c2, inf2) = chart(&s.second)?;
    let binf = |n: usize, k: usize| F::from_i64(binom(n as i64, k as i64));
    let mut rows = Vec::new();
    for r in 0..mu {
        for t in 0..mu - r {
            let mut row = vec![F::zero(); (a + 1) * (b + 1)];
            for i in 0..=a {
                let p = if inf1 { a - i } else { i };
                if p < r {
                    continue;
                }
                let fa = binf(p, r).mul(&c1.pow((p - r) as u32));
                if fa.is_zero() {
                    continue;
                }
                for j in 0..=b {
                    let q = if inf2 { b - j } else { j };
                    if q < t {
                        continue;
                    }
                    row[i * (b + 1) + j] = fa.mul(&binf(q, t)).mul(&c2.pow((q - t) as u32));
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Rank of all vanishing conditions of a scheme on bidegree-(a, b) forms.
pub fn condition_rank<F: Field>(scheme: &FatPointScheme<F>, bidegree: (usize, usize)) -> Result<usize> {
    let mut e = EchelonBasis::new((bidegree.0 + 1) * (bidegree.1 + 1));
    for (pt, mu) in &scheme.points {
        for row in condition_rows(pt, *mu, bidegree)? {
            e.insert(&row);
        }
    }
    Ok(e.rank())
}

/// Whether a form satisfies every condition of the scheme.
pub fn satisfies<F: Field>(scheme: &FatPointScheme<F>, f: &BiForm<F>) -> Result<bool> {
    for (pt, mu) in &scheme.points {
        for row in condition_rows(pt, *mu, f.bidegree())? {
            let v = row.iter().zip(f.coeffs()).fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
            if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub n: usize,
    pub m: usize,
    pub a: i64,
    pub b: i64,
    pub h0: usize,
    pub h1: usize,
    pub rank: usize,
    pub length: usize,
}

impl Cohomology {
    pub fn independent(&self) -> bool {
        self.rank == self.length
    }
}

/// h0 and h1 of the degree-n sheaf at twist m, tensored with O(a, b), from the
/// restriction sequence to the base scheme. The rank is taken at `params`; it is a
/// lower bound for the generic rank, so `rank == length` certifies the generic values.
pub fn h0_h1_at(n: usize, m: usize, a: i64, b: i64, rho: &Fp, theta: &Fp) -> Result<Cohomology> {
    let k = SkewRing::<Fp>::bidegree(n, m).1 as i64;
    let (da, db) = (n as i64 + a, k + b);
    if da < 0 || db < 0 {
        return Err(Error::AmbientCohomology(format!("O({}, {}) has higher cohomology", da, db)));
    }
    let scheme = fat_point_scheme(n, m, rho, theta)?;
    let rank = condition_rank(&scheme, (da as usize, db as usize))?;
    let length = scheme.length();
    let total = ((da + 1) * (db + 1)) as usize;
    Ok(Cohomology { n, m, a, b, h0: total - rank, h1: length - rank, rank, length })
}

pub fn h0_h1(n: usize, m: usize, a: i64, b: i64, mode: &Mode, seed: u64) -> Result<Cohomology> {
    if mode.is_tau_one() {
        return Err(Error::RangeUnsupported("the orbit collapses at the degenerate value; use the monomial route".into()));
    }
    let s = Sample::for_mode(mode, seed, n + m)?;
    h0_h1_at(n, m, a, b, &s.rho, &s.theta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionsReport {
    pub n: usize,
    pub m: usize,
    pub ring_dim: usize,
    pub h0: usize,
    pub conditions: usize,
    pub all_vanish: bool,
}

impl SectionsReport {
    pub fn equal(&self) -> bool {
        self.all_vanish && self.ring_dim == self.h0
    }
}

/// Compares the ring piece with the section space at one evaluation point.
pub fn sections_equal_ring(n: usize, m: usize, mode: &Mode, seed: u64) -> Result<SectionsReport> {
    if mode.is_tau_one() {
        return Err(Error::RangeUnsupported("the orbit collapses at the degenerate value; use the monomial route".into()));
    }
    let s = Sample::for_mode(mode, seed, n + m)?;
    let params: Params<Fp> = s.params();
    let mut table = skew::PieceTable::new(params);
    let piece = table.piece(n, m).clone();
    let scheme = fat_point_scheme(n, m, &s.rho, &s.theta)?;
    for (k, f) in piece.basis().iter().enumerate() {
        if !satisfies(&scheme, f)? {
            return Err(Error::CheckFailed(format!("basis row {} violates a vanishing condition", k)));
        }
    }
    let coh = h0_h1_at(n, m, 0, 0, &s.rho, &s.theta)?;
    Ok(SectionsReport { n, m, ring_dim: piece.dim(), h0: coh.h0, conditions: coh.rank, all_vanish: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn sample() -> Sample {
        Sample::random(11, 8)
    }

    #[test]
    fn scheme_shapes() {
        let s = sample();
        let b11 = fat_point_scheme(1, 1, &s.rho, &s.theta).unwrap();
        assert_eq!((b11.multiplicities(), b11.length()), (vec![1, 1], 2));
        let b20 = fat_point_scheme(2, 0, &s.rho, &s.theta).unwrap();
        assert_eq!((b20.multiplicities(), b20.length()), (vec![1, 1], 2));
        let b21 = fat_point_scheme(2, 1, &s.rho, &s.theta).unwrap();
        assert_eq!((b21.multiplicities(), b21.length()), (vec![2, 2, 1, 1], 8));
        assert_eq!(scheme_length(2, 1), 8);
    }

    #[test]
    fn condition_ranks() {
        let s = sample();
        let pt = SurfacePoint::square((Fp(3), Fp(1)), (Fp(5), Fp(1)));
        let single = FatPointScheme { points: vec![(pt, 1)] };
        assert_eq!(condition_rank(&single, (1, 1)).unwrap(), 1);
        let b11 = fat_point_scheme(1, 1, &s.rho, &s.theta).unwrap();
        assert_eq!(condition_rank(&b11, (1, 1)).unwrap(), 2);
        let b21 = fat_point_scheme(2, 1, &s.rho, &s.theta).unwrap();
        assert_eq!(condition_rank(&b21, (2, 5)).unwrap(), 8);
    }

    #[test]
    fn taylor_rows_detect_double_zero() {
        // (x - 2y)^2 w vanishes to order 2 at [2:1][0:1] but not to order 3
        let pt = SurfacePoint::square((rat_int(2), rat_int(1)), (rat_int(0), rat_int(1)));
        let l = BiForm::x().sub(&BiForm::y().scale(&rat_int(2)));
        let f = l.mul(&l).mul(&BiForm::w());
        assert!(satisfies(&FatPointScheme { points: vec![(pt.clone(), 2)] }, &f).unwrap());
        assert!(!satisfies(&FatPointScheme { points: vec![(pt, 3)] }, &f).unwrap());
    }

    #[test]
    fn cohomology_examples() {
        for (n, m) in [(1, 0), (2, 0), (2, 1)] {
            let c = h0_h1(n, m, 0, 0, &Mode::Generic, 5).unwrap();
            assert_eq!((c.h0, c.h1), (crate::skew::expected_dim(n), 0), "{:?}", c);
        }
        assert!(matches!(h0_h1(1, 0, -2, 0, &Mode::Generic, 5), Err(Error::AmbientCohomology(_))));
    }

    #[test]
    fn sections_match_ring() {
        for (n, m) in [(1, 0), (2, 0), (3, 1)] {
            let r = sections_equal_ring(n, m, &Mode::Generic, 5).unwrap();
            assert!(r.equal(), "{:?}", r);
        }
        assert_eq!(sections_equal_ring(2, 0, &Mode::Generic, 5).unwrap().conditions, 2);
    }
}
