use crate::error::{Error, Result};
use crate::exact::Field;
use crate::params::Params;
use crate::surface::CurveCache;

/// Element of k[u, 1/u, v]/(v^l) with u-exponents confined to a window.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncElement<F> {
    pub ell: usize,
    pub lo: i64,
    pub hi: i64,
    coeffs: Vec<F>,
}

impl<F: Field> TruncElement<F> {
    pub fn zero(ell: usize, lo: i64, hi: i64) -> Self {
        assert!(ell >= 1 && lo <= hi);
        TruncElement { ell, lo, hi, coeffs: vec![F::zero(); (hi - lo + 1) as usize * ell] }
    }

    pub fn width(&self) -> usize {
        self.coeffs.len()
    }

    /// Column index of u^i v^j.
    pub fn index(&self, i: i64, j: usize) -> usize {
        (i - self.lo) as usize * self.ell + j
    }

    pub fn get(&self, i: i64, j: usize) -> F {
        if i < self.lo || i > self.hi || j >= self.ell {
            return F::zero();
        }
        self.coeffs[self.index(i, j)].clone()
    }

    /// Adds c u^i v^j; terms with j >= l vanish, u-exponents outside the window are an error.
    pub fn add_term(&mut self, i: i64, j: usize, c: &F) -> Result<()> {
        if j >= self.ell || c.is_zero() {
            return Ok(());
        }
        if i < self.lo || i > self.hi {
            return Err(Error::WindowTooSmall(i));
        }
        let k = self.index(i, j);
        self.coeffs[k] = self.coeffs[k].add(c);
        Ok(())
    }

    pub fn monomial(ell: usize, lo: i64, hi: i64, i: i64, j: usize) -> Result<Self> {
        let mut e = TruncElement::zero(ell, lo, hi);
        e.add_term(i, j, &F::one())?;
        Ok(e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, &F)> {
        let ell = self.ell;
        let lo = self.lo;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (lo + (k / ell) as i64, k % ell, c))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (i, j, c) in o.terms() {
            out.add_term(i, j, c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.mul(s);
        }
        out
    }

    /// Product in the window of `self`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = TruncElement::zero(self.ell, self.lo, self.hi);
        for (i, j, c) in self.terms() {
            for (i2, j2, c2) in o.terms() {
                if j + j2 < self.ell {
                    out.add_term(i + i2, j + j2, &c.mul(c2))?;
                }
            }
        }
        Ok(out)
    }

    /// Multiplication by u^s v^t.
    pub fn shift(&self, s: i64, t: usize) -> Result<Self> {
        let mut out = TruncElement::zero(self.ell, self.lo, self.hi);
        for (i, j, c) in self.terms() {
            out.add_term(i + s, j + t, c)?;
        }
        Ok(out)
    }

    /// Same element in another window.
    pub fn rewindow(&self, lo: i64, hi: i64) -> Result<Self> {
        let mut out = TruncElement::zero(self.ell, lo, hi);
        for (i, j, c) in self.terms() {
            out.add_term(i, j, c)?;
        }
        Ok(out)
    }

    /// Drops the terms of v-degree >= ell.
    pub fn truncate(&self, ell: usize) -> Self {
        let mut out = TruncElement::zero(ell, self.lo, self.hi);
        for (i, j, c) in self.terms() {
            if j < ell {
                out.add_term(i, j, c).expect("same window");
            }
        }
        out
    }
}

/// Truncated polynomial in v: coefficients of 1, v, ..., v^(l-1).
pub type VSeries<F> = Vec<F>;

fn series_mul<F: Field>(a: &[F], b: &[F]) -> VSeries<F> {
    let ell = a.len();
    let mut out = vec![F::zero(); ell];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(ell - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Inverse of a unit in k[v]/(v^l) by the finite geometric series.
pub fn series_inverse<F: Field>(a: &[F]) -> Option<VSeries<F>> {
    let ell = a.len();
    if a[0].is_zero() {
        return None;
    }
    let c = a[0].inv();
    // a = c^-1 (1 - n) with n nilpotent
    let mut nil: Vec<F> = a.iter().map(|x| x.mul(&c).neg()).collect();
    nil[0] = F::zero();
    let mut acc = vec![F::zero(); ell];
    let mut pw = vec![F::zero(); ell];
    pw[0] = F::one();
    for _ in 0..ell {
        for (s, p) in acc.iter_mut().zip(&pw) {
            *s = s.add(p);
        }
        pw = series_mul(&pw, &nil);
    }
    Some(acc.into_iter().map(|x| x.mul(&c)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Away from the curve x = 0; coordinate u.
    Plus,
    /// Away from the curve y = 0; coordinate 1/u.
    Minus,
}

/// The local equation near the fiber z = 0 of the curve cut out by the i-th
/// pulled back y-coordinate, written as x eta + y xi.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberRestriction<F> {
    pub i: usize,
    pub eta: VSeries<F>,
    pub xi: VSeries<F>,
    /// eta / xi, which lies in (v).
    pub alpha: VSeries<F>,
}

impl<F: Field> FiberRestriction<F> {
    /// The normalized equation: 1/u + alpha on the minus chart, 1 + alpha u on the plus chart.
    pub fn equation(&self, chart: Chart, lo: i64, hi: i64) -> Result<TruncElement<F>> {
        let ell = self.alpha.len();
        let mut e = TruncElement::zero(ell, lo, hi);
        let (unit_exp, alpha_exp) = match chart {
            Chart::Minus => (-1, 0),
            Chart::Plus => (0, 1),
        };
        e.add_term(unit_exp, 0, &F::one())?;
        for (j, c) in self.alpha.iter().enumerate() {
            e.add_term(alpha_exp, j, c)?;
        }
        Ok(e)
    }

    /// u times the inverse of the minus-chart equation: sum_k (-alpha u)^k.
    pub fn inverse_factor(&self, lo: i64, hi: i64) -> Result<TruncElement<F>> {
        let ell = self.alpha.len();
        let mut out = TruncElement::zero(ell, lo, hi);
        let mut pw: VSeries<F> = vec![F::zero(); ell];
        pw[0] = F::one();
        let neg_alpha: VSeries<F> = self.alpha.iter().map(|c| c.neg()).collect();
        for k in 0..ell {
            for (j, c) in pw.iter().enumerate() {
                out.add_term(k as i64, j, c)?;
            }
            pw = series_mul(&pw, &neg_alpha);
        }
        Ok(out)
    }
}

/// Restricts the i-th pulled back y-curve to the fat fiber of order l along z = 0.
pub fn restrict_curve_to_fiber<F: Field>(cache: &mut CurveCache<F>, i: usize, ell: usize) -> Result<FiberRestriction<F>> {
    let y = cache.level(i)[1].clone();
    let (a, b) = y.bidegree();
    if a != 1 {
        return Err(Error::CheckFailed(format!("curve {} has bidegree {:?}", i, (a, b))));
    }
    let mut eta = vec![F::zero(); ell];
    let mut xi = vec![F::zero(); ell];
    for j in 0..=b.min(ell - 1) {
        eta[j] = y.coeff(1, j).clone();
        xi[j] = y.coeff(0, j).clone();
    }
    if !eta[0].is_zero() {
        return Err(Error::NotTransverse(i));
    }
    let inv = series_inverse(&xi).ok_or(Error::NotTransverse(i))?;
    let alpha = series_mul(&eta, &inv);
    Ok(FiberRestriction { i, eta, xi, alpha })
}

/// Convenience constructor over a parameter point.
pub fn fiber_cache<F: Field>(params: &Params<F>) -> CurveCache<F> {
    CurveCache::new(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, Rat};

    fn params() -> Params<Rat> {
        Params::from_point(&rat_int(2), &rat_int(3))
    }

    #[test]
    fn first_curves() {
        let p = params();
        let mut cache = fiber_cache(&p);
        let r0 = restrict_curve_to_fiber(&mut cache, 0, 3).unwrap();
        assert!(r0.alpha.iter().all(|c| c == &rat_int(0)));
        let r1 = restrict_curve_to_fiber(&mut cache, 1, 3).unwrap();
        // (rho - 1)/(rho + 1) v
        assert_eq!(r1.alpha, vec![rat_int(0), crate::exact::rat(1, 3), rat_int(0)]);
        let r2 = restrict_curve_to_fiber(&mut cache, 2, 3).unwrap();
        assert_eq!(r2.alpha[0], rat_int(0));
        // alpha * xi == eta mod v^3
        assert_eq!(series_mul(&r2.alpha, &r2.xi), r2.eta);
    }

    #[test]
    fn inverse_factor_inverts() {
        let p = params();
        let mut cache = fiber_cache(&p);
        let r = restrict_curve_to_fiber(&mut cache, 2, 4).unwrap();
        let eq = r.equation(Chart::Minus, -10, 10).unwrap();
        let inv = r.inverse_factor(-10, 10).unwrap();
        let prod = eq.mul(&inv).unwrap();
        assert_eq!(prod, TruncElement::monomial(4, -10, 10, -1, 0).unwrap());
    }

    #[test]
    fn window_overflow_is_an_error() {
        let mut e = TruncElement::<Rat>::zero(2, 0, 3);
        assert!(matches!(e.add_term(4, 0, &rat_int(1)), Err(Error::WindowTooSmall(4))));
        assert!(e.add_term(4, 2, &rat_int(1)).is_ok());
    }

    #[test]
    fn series_inverse_works() {
        let a = vec![rat_int(2), rat_int(1), rat_int(5)];
        let b = series_inverse(&a).unwrap();
        assert_eq!(series_mul(&a, &b), vec![rat_int(1), rat_int(0), rat_int(0)]);
    }
}
