use std::collections::BTreeSet;


use crate::error::{Error, Result};
use crate::exact::{Field, Fp, Rat};
use crate::linsys::{h0_h1_at, multiplicity};
use crate::params::{Mode, Sample};
use crate::skew::SkewRing;
use crate::surface::{binom, c2, CurveCache};

use super::cech::{cech_h1_fatfiber, FiberData};

/// Lengths of the cyclic summands of a torsion module at one point, decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorsionProfile {
    pub multiplicities: Vec<usize>,
}

impl TorsionProfile {
    pub fn new(mut multiplicities: Vec<usize>) -> Self {
        multiplicities.retain(|&k| k > 0);
        multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        TorsionProfile { multiplicities }
    }

    /// The profile (k, k-1, ..., 1).
    pub fn staircase(k: i64) -> Self {
        TorsionProfile::new((1..=k.max(0) as usize).collect())
    }

    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// The sheaves of the ring at a general parameter point.
    R,
    /// The monomial sheaves at the degenerate parameter value.
    A,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointProfile {
    /// "f" or "q" side, with the orbit index.
    pub side: char,
    pub index: usize,
    pub profile: TorsionProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R1pReport {
    pub variant: Variant,
    pub n: usize,
    pub m: usize,
    pub a: i64,
    pub total: usize,
    pub points: Vec<PointProfile>,
    /// 2(m C(-a,2) + C(-a,3)).
    pub closed_total: usize,
    /// The second route (per-point Cech or the stated monomial basis) agrees.
    pub cross_checked: bool,
}

impl R1pReport {
    pub fn matches_closed_form(&self) -> bool {
        self.total == self.closed_total && self.cross_checked
    }
}

pub fn closed_r1p_total(m: usize, a: i64) -> usize {
    (2 * (m as i64 * binom(-a, 2) + binom(-a, 3))) as usize
}

fn check_r1p_range(n: usize, a: i64) -> Result<()> {
    if (n as i64) < -a - 1 {
        return Err(Error::RangeUnsupported(format!("need n >= {}, got {}", -a - 1, n)));
    }
    Ok(())
}

/// Effective twist at the k-th orbit points: n + a minus the local multiplicity.
pub fn effective_twist(n: usize, m: usize, a: i64, k: usize) -> i64 {
    n as i64 + a - multiplicity(n, m, k) as i64
}

/// First derived pushforward of the ring sheaf. Each orbit point contributes the staircase
/// profile for its effective twist; the profile is recomputed by Cech cochains on the fat
/// fiber with the local multiplicity as the ideal power.
pub fn r1p_length_r<F: Field>(cache: &mut CurveCache<F>, n: usize, m: usize, a: i64, b: i64) -> Result<R1pReport> {
    check_r1p_range(n, a)?;
    let mut points = Vec::new();
    let mut cross_checked = true;
    for k in 0..(n + m) {
        let ap = effective_twist(n, m, a, k);
        let profile = TorsionProfile::staircase(-ap - 1);
        if ap <= -2 {
            let e = multiplicity(n, m, k);
            let ell = FiberData::ell0(ap) + 1;
            let rep = cech_h1_fatfiber(cache, ap, b, 0, ell, e)?;
            cross_checked &= rep.matches_closed_form() && rep.profile == profile.multiplicities;
        }
        if profile.total() > 0 {
            for side in ['f', 'q'] {
                points.push(PointProfile { side, index: k, profile: profile.clone() });
            }
        }
    }
    let total = points.iter().map(|p| p.profile.total()).sum();
    Ok(R1pReport { variant: Variant::R, n, m, a, total, points, closed_total: closed_r1p_total(m, a), cross_checked })
}

/// Exponent pairs of all products of one generator from each factor (u, w^c), c = m..m+n-1.
pub fn ideal_product(n: usize, m: usize) -> BTreeSet<(usize, usize)> {
    let mut cur: BTreeSet<(usize, usize)> = [(0, 0)].into_iter().collect();
    for c in m..m + n {
        cur = cur.iter().flat_map(|&(i, j)| [(i + 1, j), (i, j + c)]).collect();
    }
    cur
}

/// Whether u^i w^j lies in the monomial ideal generated by `gens`.
pub fn in_ideal(gens: &BTreeSet<(usize, usize)>, i: usize, j: usize) -> bool {
    gens.iter().any(|&(p, q)| p <= i && q <= j)
}

/// Least j with u^i w^j in the ideal.
pub fn least_exponent(gens: &BTreeSet<(usize, usize)>, i: usize) -> usize {
    gens.iter().filter(|&&(p, _)| p <= i).map(|&(_, q)| q).min().expect("u^n lies in the ideal")
}

/// Monomials u^i w^j outside both chart modules at one fundamental point.
fn a_cech_basis(n: usize, m: usize, a: i64) -> BTreeSet<(usize, usize)> {
    let gens = ideal_product(n, m);
    let jmax = least_exponent(&gens, 0);
    let mut out = BTreeSet::new();
    for i in 0..n {
        if (i as i64) <= n as i64 + a {
            continue;
        }
        for j in 0..jmax {
            if !in_ideal(&gens, i, j) {
                out.insert((i, j));
            }
        }
    }
    out
}

/// The stated basis: with j_h = m + h - 1, indices S_(k-1) <= j < S_k carry u^i w^j for n + a < i < n - k + 1.
fn a_stated_basis(n: usize, m: usize, a: i64) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    let mut start = 0usize;
    for k in 1..=n {
        let jk = m + k - 1;
        for j in start..start + jk {
            for i in 0..(n + 1 - k) {
                if i as i64 > n as i64 + a {
                    out.insert((i, j));
                }
            }
        }
        start += jk;
    }
    out
}

/// Block sizes of multiplication by w on a monomial quotient basis.
fn chain_profile(basis: &BTreeSet<(usize, usize)>) -> TorsionProfile {
    let heads = basis.iter().filter(|&&(i, j)| j == 0 || !basis.contains(&(i, j - 1)));
    let sizes = heads.map(|&(i, j)| (j..).take_while(|&jj| basis.contains(&(i, jj))).count()).collect();
    TorsionProfile::new(sizes)
}

/// First derived pushforward of the monomial sheaf, from the Cech basis at the two
/// fundamental points.
pub fn r1p_length_a(n: usize, m: usize, a: i64) -> Result<R1pReport> {
    check_r1p_range(n, a)?;
    let basis = a_cech_basis(n, m, a);
    let profile = chain_profile(&basis);
    let cross_checked = basis == a_stated_basis(n, m, a);
    let mut points = Vec::new();
    if profile.total() > 0 {
        for side in ['f', 'q'] {
            points.push(PointProfile { side, index: 0, profile: profile.clone() });
        }
    }
    let total = 2 * basis.len();
    Ok(R1pReport { variant: Variant::A, n, m, a, total, points, closed_total: closed_r1p_total(m, a), cross_checked })
}

/// Either variant; the ring variant runs at the sample point of `mode`.
pub fn r1p_length(n: usize, m: usize, a: i64, b: i64, variant: Variant, mode: &Mode, seed: u64) -> Result<R1pReport> {
    match variant {
        Variant::A => r1p_length_a(n, m, a),
        Variant::R => {
            if mode.is_tau_one() {
                return Err(Error::RangeUnsupported("the ring variant needs a general parameter point".into()));
            }
            let s = Sample::for_mode(mode, seed, n + m + 1)?;
            let mut cache: CurveCache<Fp> = CurveCache::new(&s.params());
            r1p_length_r(&mut cache, n, m, a, b)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub n: usize,
    pub m: usize,
    pub a: i64,
    pub b: i64,
    /// Degrees of the line-bundle summands after the twist, one per u-degree.
    pub degrees: Vec<i64>,
    /// The same degrees from the displayed closed forms, as a sorted list.
    pub closed_degrees: Vec<i64>,
    pub h0: usize,
    pub h1: usize,
}

impl SplitReport {
    pub fn matches_closed_form(&self) -> bool {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d == self.closed_degrees
    }
}

/// Twist along the fibers: nm + C(n+1, 2) + b.
pub fn fiber_twist(n: usize, m: usize, b: i64) -> i64 {
    SkewRing::<Rat>::bidegree(n, m).1 as i64 + b
}

fn check_split_range(n: usize, a: i64) -> Result<()> {
    let n = n as i64;
    let ok = if a <= -1 { n >= -a } else { n >= a + 1 };
    if !ok {
        return Err(Error::RangeUnsupported(format!("splitting needs n >= {} for a = {}", if a <= -1 { -a } else { a + 1 }, a)));
    }
    Ok(())
}

fn closed_split(n: usize, m: usize, a: i64) -> Vec<i64> {
    let (n, m) = (n as i64, m as i64);
    let both = |i: i64| -(m * (n - a) + c2(n - i) + c2(i - a));
    let mut out: Vec<i64> = if a <= -1 {
        (0..=n + a).map(both).collect()
    } else {
        let single = |i: i64| -(m * (n - i) + c2(n - i));
        (0..=a).flat_map(|i| [single(i), single(i)]).chain((a + 1..n).map(both)).collect()
    };
    out.sort_unstable();
    out
}

/// Splitting of the direct image of the monomial sheaf into line bundles on the base line.
/// For each u-degree i the sections near the two fibers over 0 and infinity start at the
/// least v-exponents allowed by the fundamental-point ideals; the summand degree is minus
/// their sum, then twisted along the fibers.
pub fn pushforward_split_a(n: usize, m: usize, a: i64, b: i64) -> Result<SplitReport> {
    check_split_range(n, a)?;
    let gens = ideal_product(n, m);
    let top = n as i64 + a;
    let twist = fiber_twist(n, m, b);
    let degrees: Vec<i64> = (0..=top)
        .map(|i| {
            let near_f = least_exponent(&gens, i as usize) as i64;
            let near_q = least_exponent(&gens, (top - i) as usize) as i64;
            twist - near_f - near_q
        })
        .collect();
    let closed_degrees = closed_split(n, m, a).into_iter().map(|d| d + twist).collect();
    let h0 = degrees.iter().map(|&d| (d + 1).max(0) as usize).sum();
    let h1 = degrees.iter().map(|&d| (-d - 1).max(0) as usize).sum();
    Ok(SplitReport { n, m, a, b, degrees, closed_degrees, h0, h1 })
}

/// Least n0 within [lo, hi] such that h1 vanishes for every tested n >= n0.
pub fn split_n0(m: usize, a: i64, b: i64, hi: usize) -> Result<usize> {
    let lo = if a <= -1 { (-a) as usize } else { a as usize + 1 };
    let mut n0 = lo;
    for n in lo..=hi {
        if pushforward_split_a(n, m, a, b)?.h1 > 0 {
            n0 = n + 1;
        }
    }
    Ok(n0)
}

/// h0 and h1 on the surface of the monomial sheaf twisted by O(a, b): sections by monomials
/// in both fundamental-point ideals, h1 from the Euler characteristic.
pub fn a_surface_cohomology(n: usize, m: usize, a: i64, b: i64) -> (usize, usize) {
    let gens = ideal_product(n, m);
    let (da, db) = (n as i64 + a, fiber_twist(n, m, b));
    let mut h0 = 0usize;
    if da >= 0 && db >= 0 {
        for i in 0..=da {
            for j in 0..=db {
                if in_ideal(&gens, i as usize, (db - j) as usize) && in_ideal(&gens, (da - i) as usize, j as usize) {
                    h0 += 1;
                }
            }
        }
    }
    let colength = (0..n).map(|i| least_exponent(&gens, i) as i64).sum::<i64>();
    let chi = (da + 1) * (db + 1) - 2 * colength;
    let h2 = (-da - 1).max(0) * (-db - 1).max(0);
    (h0, (h0 as i64 + h2 - chi) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LerayReport {
    pub n: usize,
    pub m: usize,
    pub a: i64,
    pub b: i64,
    pub h1_surface_a: usize,
    pub length_a: usize,
    pub h0_surface_a: usize,
    pub split: SplitReport,
    /// h1 on the surface of the ring sheaf, when its ambient bundle has no higher cohomology.
    pub h1_surface_r: Option<usize>,
    pub length_r: usize,
}

impl LerayReport {
    /// h1(T, A) - len R1p A equals h1 of the split direct image, and h0 matches.
    pub fn a_balances(&self) -> bool {
        self.h1_surface_a as i64 - self.length_a as i64 == self.split.h1 as i64 && self.h0_surface_a == self.split.h0
    }

    /// h1 of the ring direct image: h1(T, R) - len R1p R.
    pub fn h1_direct_image_r(&self) -> Option<i64> {
        self.h1_surface_r.map(|h| h as i64 - self.length_r as i64)
    }

    /// The ring side is a nonnegative count bounded by the monomial side.
    pub fn chain_holds(&self) -> bool {
        match self.h1_direct_image_r() {
            Some(h) => h >= 0 && h <= self.split.h1 as i64 && self.length_r == self.length_a,
            None => self.length_r == self.length_a,
        }
    }
}

/// Both sides of the Leray count. The ring side runs at the sample point of `mode`.
pub fn leray_balance(n: usize, m: usize, a: i64, b: i64, mode: &Mode, seed: u64) -> Result<LerayReport> {
    let split = pushforward_split_a(n, m, a, b)?;
    let ra = r1p_length_a(n, m, a)?;
    let (h0a, h1a) = a_surface_cohomology(n, m, a, b);
    let s = Sample::for_mode(mode, seed, n + m + 1)?;
    let mut cache: CurveCache<Fp> = CurveCache::new(&s.params());
    let rr = r1p_length_r(&mut cache, n, m, a, b)?;
    let h1_surface_r = match h0_h1_at(n, m, a, b, &s.rho, &s.theta) {
        Ok(c) => Some(c.h1),
        Err(Error::AmbientCohomology(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(LerayReport {
        n,
        m,
        a,
        b,
        h1_surface_a: h1a,
        length_a: ra.total,
        h0_surface_a: h0a,
        split,
        h1_surface_r,
        length_r: rr.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::a_h0_h1;

    fn fp_cache() -> CurveCache<Fp> {
        CurveCache::new(&Sample::random(11, 8).params())
    }

    #[test]
    fn r_variant_examples() {
        let mut c = fp_cache();
        for m in 0..=2 {
            assert_eq!(r1p_length_r(&mut c, 3, m, -1, 0).unwrap().total, 0);
        }
        let r = r1p_length_r(&mut c, 1, 1, -2, 0).unwrap();
        assert_eq!(r.total, 2);
        assert!(r.matches_closed_form());
        assert_eq!(r.points.len(), 2);
        assert_eq!(r.points[0].profile.multiplicities, vec![1]);
    }

    #[test]
    fn a_variant_example() {
        let r = r1p_length_a(2, 0, -3).unwrap();
        assert_eq!(r.total, 2);
        assert!(r.matches_closed_form());
    }

    #[test]
    fn variants_agree() {
        let mut c = fp_cache();
        for a in -3..=-1i64 {
            for m in 0..=2 {
                for n in (-a - 1).max(0) as usize..=4 {
                    let r = r1p_length_r(&mut c, n, m, a, 0).unwrap();
                    let s = r1p_length_a(n, m, a).unwrap();
                    assert!(r.matches_closed_form() && s.matches_closed_form(), "{:?} {:?}", r, s);
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        let s = pushforward_split_a(2, 0, -1, 0).unwrap();
        assert_eq!(s.degrees, vec![2, 2]);
        assert_eq!(s.h1, 0);
        assert!(s.matches_closed_form());
        let s = pushforward_split_a(3, 0, 0, 0).unwrap();
        assert!(s.matches_closed_form());
        assert_eq!(s.degrees.len(), 4);
        assert_eq!(s.degrees[0], s.degrees[3]);
        assert!(matches!(pushforward_split_a(1, 0, -2, 0), Err(Error::RangeUnsupported(_))));
    }

    #[test]
    fn surface_sections_match_ring() {
        for n in 1..=4 {
            for m in 0..=2 {
                let (h0, h1) = a_surface_cohomology(n, m, 0, 0);
                assert_eq!((h0, h1), a_h0_h1(n, m).unwrap());
            }
        }
    }

    #[test]
    fn leray_counts() {
        let mode = Mode::Generic;
        for (n, m, a, b) in [(3, 0, -2, 0), (3, 1, -1, 1), (4, 1, -2, -1), (2, 0, 1, 0)] {
            let r = leray_balance(n, m, a, b, &mode, 3).unwrap();
            assert!(r.a_balances(), "{:?}", r);
            assert!(r.chain_holds(), "{:?}", r);
        }
    }
}
