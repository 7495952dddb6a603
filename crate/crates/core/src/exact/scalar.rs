use std::fmt;

use num_traits::One;

use super::fp::Fp;
use super::mpoly::{param_vars, poly_gcd, MPoly};
use super::ring::{rat_int, Field, Rat, Ring};
use crate::error::{Error, Result};

/// Element of the rational function field in the parameters.
///
/// Kept reduced with a primitive integer denominator of positive leading
/// coefficient, so structural equality is field equality.
#[derive(Clone, PartialEq)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Scalar {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(Scalar::reduce(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let one = MPoly::constant_in(p.vars(), rat_int(1));
        Scalar { num: p, den: one }
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::from_poly(MPoly::constant_in(&param_vars(), r))
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Scalar { den: MPoly::constant_in(num.vars(), rat_int(1)), num };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let c = den.content();
        let inv = c.recip();
        Scalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    /// Exact evaluation at a rational parameter point.
    pub fn specialize(&self, point: &[Rat]) -> Result<Rat> {
        let d = self.den.eval_rat(point);
        if Ring::is_zero(&d) {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval_rat(point) / d)
    }

    pub fn eval_fp(&self, point: &[Fp]) -> Result<Fp> {
        let d = self.den.eval_fp(point).ok_or(Error::DenominatorVanishes)?;
        if Ring::is_zero(&d) {
            return Err(Error::DenominatorVanishes);
        }
        let n = self.num.eval_fp(point).ok_or(Error::DenominatorVanishes)?;
        Ok(n.mul(&d.inv()))
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        Scalar::from_poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::reduce(self.num.add(&o.num), self.den.clone());
        }
        Scalar::reduce(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return Scalar::reduce(self.num.mul(&o.num), self.den.mul(&o.den));
        }
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = o.den.div_exact(&g1).unwrap();
        let c = o.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        let den = b.mul(&d);
        let cst = den.content();
        let inv = cst.recip();
        Scalar { num: a.mul(&c).scale(&inv), den: den.scale(&inv) }
    }
    fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_i64(v: i64) -> Self {
        Scalar::from_poly(MPoly::from_i64(v))
    }
}

impl Field for Scalar {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        Scalar::reduce(self.den.clone(), self.num.clone())
    }
}

impl From<MPoly> for Scalar {
    fn from(p: MPoly) -> Self {
        Scalar::from_poly(p)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| One::is_one(&c)).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
