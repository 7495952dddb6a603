//! Coefficient modes and the four linear coefficients of the map.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Fp, MPoly, Rat, Ring};

/// How the parameters are treated.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    /// Transcendental parameters: exact symbolic identities, ranks certified at a
    /// seeded random point of the prime field.
    Generic,
    /// The degenerate parameter value where the map becomes the plain shear.
    TauOne,
    /// A fixed rational parameter point that passed the guard list.
    Specialized { rho: Rat, theta: Rat },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Generic => "generic",
            Mode::TauOne => "tau-one",
            Mode::Specialized { .. } => "specialized",
        }
    }

    pub fn is_tau_one(&self) -> bool {
        matches!(self, Mode::TauOne)
    }

    /// Parameter point as rationals, when the mode fixes one.
    pub fn rational_point(&self) -> Option<(Rat, Rat)> {
        match self {
            Mode::Generic => None,
            Mode::TauOne => Some((rat_int(1), rat_int(1))),
            Mode::Specialized { rho, theta } => Some((rho.clone(), theta.clone())),
        }
    }
}

/// The coefficients rho+1, rho-1, theta+1, theta-1 of the map, in some ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Params<C> {
    pub rho_plus: C,
    pub rho_minus: C,
    pub theta_plus: C,
    pub theta_minus: C,
}

impl<C: Ring> Params<C> {
    pub fn from_point(rho: &C, theta: &C) -> Self {
        let one = C::one();
        Params {
            rho_plus: rho.add(&one),
            rho_minus: rho.sub(&one),
            theta_plus: theta.add(&one),
            theta_minus: theta.sub(&one),
        }
    }

    /// Coefficients of the map for the inverted parameters, up to a common
    /// scalar in each pair (which does not change any of the spans involved).
    pub fn inverted(&self) -> Self {
        Params {
            rho_plus: self.rho_plus.clone(),
            rho_minus: self.rho_minus.neg(),
            theta_plus: self.theta_plus.clone(),
            theta_minus: self.theta_minus.neg(),
        }
    }

    pub fn map<D>(&self, f: impl Fn(&C) -> D) -> Params<D> {
        Params {
            rho_plus: f(&self.rho_plus),
            rho_minus: f(&self.rho_minus),
            theta_plus: f(&self.theta_plus),
            theta_minus: f(&self.theta_minus),
        }
    }
}

impl Params<MPoly> {
    /// Symbolic coefficients over the integers in rho, theta.
    pub fn symbolic() -> Self {
        Params::from_point(&MPoly::rho(), &MPoly::theta())
    }
}

impl Params<Rat> {
    pub fn tau_one() -> Self {
        Params::from_point(&rat_int(1), &rat_int(1))
    }
}

/// Guard list for a rational specialization: rho, theta outside {0, 1, -1} and
/// theta not a root of unity of order at most `2 * max_degree`.
pub fn check_guards(rho: &Rat, theta: &Rat, max_degree: usize) -> Result<()> {
    for (name, v) in [("rho", rho), ("theta", theta)] {
        if Zero::is_zero(v) || One::is_one(&v.abs()) {
            return Err(Error::Guard(format!("{} = {} lies in {{0, 1, -1}}", name, v)));
        }
    }
    let mut p = rat_int(1);
    for k in 1..=2 * max_degree.max(1) {
        p *= theta;
        if One::is_one(&p) {
            return Err(Error::Guard(format!("theta = {} has multiplicative order {}", theta, k)));
        }
    }
    Ok(())
}

fn fp_guards(rho: Fp, theta: Fp, max_degree: usize) -> bool {
    let bad = [Fp(0), Fp(1), Fp(1).neg()];
    if bad.contains(&rho) || bad.contains(&theta) {
        return false;
    }
    let mut p = Fp(1);
    for _ in 1..=2 * max_degree.max(1) {
        p = p.mul(&theta);
        if p == Fp(1) {
            return false;
        }
    }
    true
}

/// A point of the prime field at which rank certificates are evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub rho: Fp,
    pub theta: Fp,
}

impl Sample {
    /// Seeded random point for generic mode, rejection-sampled against the guard list.
    pub fn random(seed: u64, max_degree: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let rho = Fp::new(rng.gen::<u64>());
            let theta = Fp::new(rng.gen::<u64>());
            if fp_guards(rho, theta, max_degree.max(8)) {
                return Sample { rho, theta };
            }
        }
    }

    pub fn from_rat(rho: &Rat, theta: &Rat) -> Result<Self> {
        Ok(Sample {
            rho: Fp::from_rat(rho).ok_or(Error::DenominatorVanishes)?,
            theta: Fp::from_rat(theta).ok_or(Error::DenominatorVanishes)?,
        })
    }

    /// Evaluation point for a mode: random for generic, the reduction otherwise.
    pub fn for_mode(mode: &Mode, seed: u64, max_degree: usize) -> Result<Self> {
        match mode.rational_point() {
            None => Ok(Sample::random(seed, max_degree)),
            Some((r, t)) => Sample::from_rat(&r, &t),
        }
    }

    pub fn params(&self) -> Params<Fp> {
        Params::from_point(&self.rho, &self.theta)
    }
}

/// A random admissible rational parameter point, reproducible from `seed`.
pub fn random_admissible_point(seed: u64, max_degree: usize) -> (Rat, Rat) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    loop {
        let r = rat(rng.gen_range(-40..=40), rng.gen_range(1..=12));
        let t = rat(rng.gen_range(-40..=40), rng.gen_range(1..=12));
        if check_guards(&r, &t, max_degree).is_ok() {
            return (r, t);
        }
    }
}

/// Parses `p` or `p/q` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {:?}", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if Zero::is_zero(&d) {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
