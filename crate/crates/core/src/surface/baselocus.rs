use crate::error::{Error, Result};
use crate::exact::{MPoly, Rat, Ring};
use crate::params::Params;

use super::biform::BiForm;
use super::maps::CurveCache;
use super::points::{orbit_points, SurfacePoint};

#[derive(Clone, Debug, PartialEq)]
pub struct BaseLocusReport {
    pub m: usize,
    /// Number of distinct points found (2m when all checks pass).
    pub points: usize,
    /// Per point (F_0, Q_0, F_1, Q_1, ...): whether the Jacobian is invertible.
    pub transverse: Vec<bool>,
    /// Exponent e with local ideal (a, b^e) at each of the two fundamental
    /// points, when the base locus is concentrated there.
    pub local_exponent: Option<usize>,
    /// Length of the scheme cut out by the two curves.
    pub length: usize,
}

impl BaseLocusReport {
    pub fn all_transverse(&self) -> bool {
        self.transverse.iter().all(|&t| t)
    }
}

/// Jacobian determinant of (f, g) at a point, in the chart where the affine
/// coordinates are finite. Only its vanishing is meaningful.
pub fn jacobian_at<C: Ring>(f: &BiForm<C>, g: &BiForm<C>, pt: &SurfacePoint<C>) -> C {
    let s = pt.to_square();
    let first_var = if s.first.1.is_zero() { 1 } else { 0 };
    let second_var = if s.second.1.is_zero() { 3 } else { 2 };
    let fa = pt.eval(&f.partial(first_var));
    let fb = pt.eval(&f.partial(second_var));
    let ga = pt.eval(&g.partial(first_var));
    let gb = pt.eval(&g.partial(second_var));
    fa.mul(&gb).sub(&fb.mul(&ga))
}

/// Checks the base locus of the m-th pulled back coordinate curves at a
/// parameter point with distinct orbit points.
pub fn check_base_locus<C: Ring>(m: usize, rho: &C, theta: &C) -> Result<BaseLocusReport> {
    if m == 0 {
        return Err(Error::CheckFailed("base locus needs m >= 1".into()));
    }
    let params = Params::from_point(rho, theta);
    let mut cache = CurveCache::new(&params);
    let [xm, ym, _, _] = cache.level(m).clone();
    if xm.bidegree() != (1, m) || ym.bidegree() != (1, m) {
        return Err(Error::CheckFailed(format!("curves have bidegree {:?}, {:?}", xm.bidegree(), ym.bidegree())));
    }
    let orbit = orbit_points(m, rho, theta)?;
    let pts: Vec<SurfacePoint<C>> = orbit.into_iter().flat_map(|(f, q)| [f, q]).collect();
    for (k, p) in pts.iter().enumerate() {
        if !p.eval(&xm).is_zero() || !p.eval(&ym).is_zero() {
            return Err(Error::CheckFailed(format!("vanishing fails at point {} of the orbit list", k)));
        }
    }
    for i in 0..pts.len() {
        for j in 0..i {
            if pts[i].same_point(&pts[j]) {
                return Err(Error::CheckFailed(format!("orbit points {} and {} coincide", j, i)));
            }
        }
    }
    let transverse: Vec<bool> = pts.iter().map(|p| !jacobian_at(&xm, &ym, p).is_zero()).collect();
    if let Some(k) = transverse.iter().position(|t| !t) {
        return Err(Error::CheckFailed(format!("Jacobian vanishes at point {} of the orbit list", k)));
    }
    Ok(BaseLocusReport { m, points: pts.len(), transverse, local_exponent: None, length: 2 * m })
}

/// Generic parameters: exact check over Z[rho, theta].
pub fn base_locus_check(m: usize) -> Result<BaseLocusReport> {
    check_base_locus(m, &MPoly::rho(), &MPoly::theta())
}

/// The degenerate parameter value: the base locus sits at the two fundamental
/// points. Dehomogenizes both curves at each point and reads off the local ideal.
pub fn base_locus_tau_one(m: usize) -> Result<BaseLocusReport> {
    if m == 0 {
        return Err(Error::CheckFailed("base locus needs m >= 1".into()));
    }
    let params = Params::<Rat>::tau_one();
    let mut cache = CurveCache::new(&params);
    let [xm, ym, _, _] = cache.level(m).clone();
    let one = crate::exact::rat_int(1);
    let zero = crate::exact::rat_int(0);
    // At [0:1][1:0] use a = x/y, b = w/z; at [1:0][0:1] use a = y/x, b = z/w.
    let charts = [
        (SurfacePoint::square((zero.clone(), one.clone()), (one.clone(), zero.clone())), false),
        (SurfacePoint::square((one.clone(), zero.clone()), (zero.clone(), one.clone())), true),
    ];
    let mut exponents = Vec::new();
    let mut transverse = Vec::new();
    for (pt, swap) in &charts {
        let (f, g) = if *swap { (ym.clone(), xm.clone()) } else { (xm.clone(), ym.clone()) };
        if !pt.eval(&f).is_zero() || !pt.eval(&g).is_zero() {
            return Err(Error::CheckFailed("curves miss a fundamental point".into()));
        }
        transverse.push(!jacobian_at(&xm, &ym, pt).is_zero());
        let e = local_monomial_ideal(&f, &g, *swap)
            .ok_or_else(|| Error::CheckFailed("local ideal is not of the form (a, b^e)".into()))?;
        exponents.push(e);
    }
    if exponents[0] != exponents[1] {
        return Err(Error::CheckFailed(format!("local exponents differ: {:?}", exponents)));
    }
    Ok(BaseLocusReport { m, points: 2, transverse, local_exponent: Some(exponents[0]), length: 2 * exponents[0] })
}

/// For forms whose dehomogenizations are `a * unit` and `b^e * unit`, returns e.
fn local_monomial_ideal(f: &BiForm<Rat>, g: &BiForm<Rat>, swap: bool) -> Option<usize> {
    let (_, b) = f.bidegree();
    // exponent of a and of b in each term, in the local chart
    let local = |i: usize, j: usize| if swap { (1 - i, j) } else { (i, b - j) };
    let single = |h: &BiForm<Rat>| -> Option<(usize, usize)> {
        let mut terms = h.terms();
        let ((i, j), _) = terms.next()?;
        if terms.next().is_some() {
            return None;
        }
        Some(local(i, j))
    };
    match (single(f)?, single(g)?) {
        ((1, 0), (0, e)) if e >= 1 => Some(e),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn generic_m1_and_m2() {
        let r = base_locus_check(1).unwrap();
        assert_eq!(r.points, 2);
        assert!(r.all_transverse());
        let r = base_locus_check(2).unwrap();
        assert_eq!((r.points, r.length), (4, 4));
    }

    #[test]
    fn tau_one_concentrates() {
        let r = base_locus_tau_one(3).unwrap();
        assert_eq!(r.local_exponent, Some(3));
        assert!(!r.all_transverse());
        assert!(base_locus_tau_one(1).unwrap().all_transverse());
    }

    #[test]
    fn specialized_point() {
        let r = check_base_locus(3, &rat_int(2), &rat_int(3)).unwrap();
        assert_eq!(r.points, 6);
    }
}
