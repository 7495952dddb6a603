use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::ring::{Field, Rat, Ring};

/// The Mersenne prime 2^61 - 1.
pub const PRIME: u64 = (1u64 << 61) - 1;

/// Element of the prime field of order [`PRIME`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(pub u64);

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & PRIME;
    let hi = (x >> 61) as u64;
    let s = lo + (hi & PRIME) + ((hi >> 61) as u64);
    let s = (s & PRIME) + (s >> 61);
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % PRIME)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(PRIME);
        let r = v.mod_floor(&m);
        Fp(r.to_u64().expect("residue fits"))
    }

    /// Reduction of a rational number; `None` when the denominator vanishes mod p.
    pub fn from_rat(r: &Rat) -> Option<Self> {
        let d = Fp::from_bigint(r.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Fp::from_bigint(r.numer()).mul(&d.inv()))
    }

    /// Symmetric lift to a signed integer, for display.
    pub fn lift(&self) -> i128 {
        if self.0 > PRIME / 2 {
            self.0 as i128 - PRIME as i128
        } else {
            self.0 as i128
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lift())
    }
}

impl Ring for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= PRIME { s - PRIME } else { s })
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + PRIME - o.0 })
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fp(reduce128(self.0 as u128 * o.0 as u128))
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { PRIME - self.0 })
    }
    fn from_i64(v: i64) -> Self {
        if v >= 0 {
            Fp::new(v as u64)
        } else {
            Fp::new(v.unsigned_abs()).neg()
        }
    }
}

impl Field for Fp {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_p");
        self.pow_u64(PRIME - 2)
    }
}

impl Fp {
    pub fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Signed integer to field element, for small constants.
pub fn fp_from_bigint_signed(v: &BigInt) -> Fp {
    if v.is_negative() {
        Fp::from_bigint(&-v).neg()
    } else {
        Fp::from_bigint(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        for v in [1u64, 2, 3, 12345, PRIME - 1, 1 << 60] {
            let x = Fp::new(v);
            assert_eq!(x.mul(&x.inv()), Fp(1));
        }
    }

    #[test]
    fn reduction_of_rational() {
        let r = Rat::new(BigInt::from(-3), BigInt::from(7));
        let x = Fp::from_rat(&r).unwrap();
        assert_eq!(x.mul(&Fp::from_i64(7)), Fp::from_i64(-3));
    }

    #[test]
    fn large_products_reduce() {
        let a = Fp(PRIME - 1);
        assert_eq!(a.mul(&a), Fp(1));
    }
}
