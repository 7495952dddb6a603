use crate::error::{Error, Result};
use crate::exact::{Field, MPoly, Ring};

use super::biform::BiForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coords {
    /// `[x : y][z : w]`
    Square,
    /// `(a : b)` with `(a : b) = [a + b : b - a]` in each factor.
    Round,
}

/// A point of P1 x P1 with homogeneous coordinates in a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePoint<C> {
    pub system: Coords,
    pub first: (C, C),
    pub second: (C, C),
}

fn round_to_square<C: Ring>(p: &(C, C)) -> (C, C) {
    (p.0.add(&p.1), p.1.sub(&p.0))
}

fn square_to_round<C: Ring>(p: &(C, C)) -> (C, C) {
    (p.0.sub(&p.1), p.0.add(&p.1))
}

impl<C: Ring> SurfacePoint<C> {
    pub fn square(first: (C, C), second: (C, C)) -> Self {
        SurfacePoint { system: Coords::Square, first, second }
    }

    pub fn round(first: (C, C), second: (C, C)) -> Self {
        SurfacePoint { system: Coords::Round, first, second }
    }

    pub fn to_square(&self) -> Self {
        match self.system {
            Coords::Square => self.clone(),
            Coords::Round => SurfacePoint::square(round_to_square(&self.first), round_to_square(&self.second)),
        }
    }

    pub fn to_round(&self) -> Self {
        match self.system {
            Coords::Round => self.clone(),
            Coords::Square => SurfacePoint::round(square_to_round(&self.first), square_to_round(&self.second)),
        }
    }

    pub fn is_defined(&self) -> bool {
        !(self.first.0.is_zero() && self.first.1.is_zero()) && !(self.second.0.is_zero() && self.second.1.is_zero())
    }

    /// Coordinate swap in both factors.
    pub fn swapped(&self) -> Self {
        let s = self.to_square();
        SurfacePoint::square((s.first.1.clone(), s.first.0.clone()), (s.second.1.clone(), s.second.0.clone()))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> SurfacePoint<D> {
        SurfacePoint { system: self.system, first: (f(&self.first.0), f(&self.first.1)), second: (f(&self.second.0), f(&self.second.1)) }
    }

    /// Projective equality (cross-multiplication in each factor).
    pub fn same_point(&self, o: &Self) -> bool {
        let (a, b) = (self.to_square(), o.to_square());
        a.first.0.mul(&b.first.1) == a.first.1.mul(&b.first.0) && a.second.0.mul(&b.second.1) == a.second.1.mul(&b.second.0)
    }

    /// Value of a form at this point (square coordinates).
    pub fn eval(&self, f: &BiForm<C>) -> C {
        let s = self.to_square();
        f.eval(&s.first.0, &s.first.1, &s.second.0, &s.second.1)
    }
}

impl<C: Field> SurfacePoint<C> {
    /// Scales the last nonzero coordinate of each factor to one.
    pub fn normalized(&self) -> Self {
        fn norm<C: Field>(p: &(C, C)) -> (C, C) {
            if !p.1.is_zero() {
                (p.0.div(&p.1), C::one())
            } else {
                (C::one(), C::zero())
            }
        }
        SurfacePoint { system: self.system, first: norm(&self.first), second: norm(&self.second) }
    }
}

/// Which fundamental point an orbit starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitStart {
    /// The point `[0:1][1:0]` where the lines x = 0 and w = 0 meet.
    XW,
    /// The point `[1:0][0:1]` where the lines y = 0 and z = 0 meet.
    YZ,
}

/// The sequences (p_n, q_n), n = 0..=count, with p_0 = 1, q_0 = -1 and
/// p_{n+1} = rho p_n - theta^{n+1} q_n, q_{n+1} = q_n - rho theta^{n+1} p_n.
pub fn orbit_sequence<C: Ring>(count: usize, rho: &C, theta: &C) -> Vec<(C, C, C)> {
    let mut out = Vec::with_capacity(count + 1);
    let mut p = C::one();
    let mut q = C::one().neg();
    let mut tpow = C::one();
    out.push((p.clone(), q.clone(), tpow.clone()));
    for _ in 0..count {
        let tnext = tpow.mul(theta);
        let np = rho.mul(&p).sub(&tnext.mul(&q));
        let nq = q.sub(&rho.mul(&tnext).mul(&p));
        p = np;
        q = nq;
        tpow = tnext;
        out.push((p.clone(), q.clone(), tpow.clone()));
    }
    out
}

/// Orbit point n in round coordinates: `(p_n : q_n)(theta^n : 1)` from the
/// first start, and its coordinate swap `(-p_n : q_n)(-theta^n : 1)` from the second.
pub fn orbit_point<C: Ring>(n: usize, which: OrbitStart, rho: &C, theta: &C) -> Result<SurfacePoint<C>> {
    let seq = orbit_sequence(n, rho, theta);
    let (p, q, t) = seq[n].clone();
    if p.is_zero() && q.is_zero() {
        return Err(Error::UndefinedOrbitPoint(n));
    }
    Ok(match which {
        OrbitStart::XW => SurfacePoint::round((p, q), (t, C::one())),
        OrbitStart::YZ => SurfacePoint::round((p.neg(), q), (t.neg(), C::one())),
    })
}

/// Both orbits up to index `count - 1`, in square coordinates.
pub fn orbit_points<C: Ring>(count: usize, rho: &C, theta: &C) -> Result<Vec<(SurfacePoint<C>, SurfacePoint<C>)>> {
    let seq = orbit_sequence(count, rho, theta);
    let mut out = Vec::with_capacity(count);
    for (n, (p, q, t)) in seq.into_iter().take(count).enumerate() {
        if p.is_zero() && q.is_zero() {
            return Err(Error::UndefinedOrbitPoint(n));
        }
        let f = SurfacePoint::round((p.clone(), q.clone()), (t.clone(), C::one())).to_square();
        let g = SurfacePoint::round((p.neg(), q), (t.neg(), C::one())).to_square();
        out.push((f, g));
    }
    Ok(out)
}

/// True when `p_n == rho^n` and `q_n == -1` after setting theta = 0.
pub fn orbit_reduces_mod_theta(n: usize) -> bool {
    let seq = orbit_sequence(n, &MPoly::rho(), &MPoly::theta());
    let zero = crate::exact::rat_int(0);
    seq.iter().enumerate().all(|(k, (p, q, _))| {
        p.subst_rat(1, &zero) == MPoly::rho().pow(k as u32) && q.subst_rat(1, &zero) == MPoly::from_i64(-1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{param_vars, parse_poly, Rat};

    fn p(s: &str) -> MPoly {
        parse_poly(&param_vars(), s).unwrap()
    }

    #[test]
    fn first_orbit_points() {
        let f0 = orbit_point(0, OrbitStart::XW, &MPoly::rho(), &MPoly::theta()).unwrap();
        assert_eq!(f0.first, (MPoly::one(), MPoly::from_i64(-1)));
        assert_eq!(f0.second, (MPoly::one(), MPoly::one()));
        let f1 = orbit_point(1, OrbitStart::XW, &MPoly::rho(), &MPoly::theta()).unwrap();
        assert_eq!(f1.first, (p("rho+theta"), p("-1-rho*theta")));
        assert_eq!(f1.second, (p("theta"), MPoly::one()));
    }

    #[test]
    fn starts_are_the_fundamental_points() {
        let one = crate::exact::rat_int(1);
        let two = crate::exact::rat_int(2);
        let f = orbit_point(0, OrbitStart::XW, &two, &two).unwrap().to_square().normalized();
        assert_eq!(f, SurfacePoint::<Rat>::square((crate::exact::rat_int(0), one.clone()), (one.clone(), crate::exact::rat_int(0))));
        let q = orbit_point(0, OrbitStart::YZ, &two, &two).unwrap().to_square().normalized();
        assert_eq!(q, SurfacePoint::<Rat>::square((one.clone(), crate::exact::rat_int(0)), (crate::exact::rat_int(0), one)));
    }

    #[test]
    fn reduction_mod_theta() {
        assert!(orbit_reduces_mod_theta(6));
    }

    #[test]
    fn round_square_roundtrip() {
        let pt = SurfacePoint::round((p("rho"), p("theta+3")), (p("2"), p("rho*theta")));
        let back = pt.to_square().to_round();
        // conversion doubles coordinates, so compare projectively
        assert!(back.same_point(&pt));
        assert_eq!(back.first.0, p("2*rho"));
    }
}
