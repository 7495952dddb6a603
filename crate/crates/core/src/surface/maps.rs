use crate::error::{Error, Result};
use std::collections::BTreeMap;

use crate::exact::mpoly::{vars_of, Vars};
use crate::exact::ring::{denominator_lcm, numerator_gcd};
use crate::exact::{param_vars, poly_gcd, rat_int, MPoly, Mono, Rat, Ring};
use crate::params::Params;

use super::biform::BiForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Sigma,
    SigmaInverse,
    Tau,
    TauInverse,
    Phi,
    PhiInverse,
}

/// A map given by the forms substituted for x, y, z, w.
#[derive(Clone, Debug)]
pub struct MapSpec<C> {
    pub kind: MapKind,
    pub images: [BiForm<C>; 4],
}

fn lin<C: Ring>(p: &C, xf: BiForm<C>, q: &C, yf: BiForm<C>) -> BiForm<C> {
    xf.scale(p).add(&yf.scale(q))
}

impl<C: Ring> MapSpec<C> {
    pub fn new(kind: MapKind, p: &Params<C>) -> Self {
        let (x, y, z, w) = (BiForm::<C>::x(), BiForm::<C>::y(), BiForm::<C>::z(), BiForm::<C>::w());
        let (g, d, e, h) = (&p.rho_plus, &p.rho_minus, &p.theta_plus, &p.theta_minus);
        let xz = x.mul(&z);
        let yw = y.mul(&w);
        let images = match kind {
            MapKind::Sigma => [xz, yw, z, w],
            MapKind::SigmaInverse => [x.mul(&w), y.mul(&z), z, w],
            MapKind::Tau => [
                lin(g, x.clone(), d, y.clone()),
                lin(d, x, g, y),
                lin(e, z.clone(), h, w.clone()),
                lin(h, z, e, w),
            ],
            MapKind::TauInverse => [
                lin(g, x.clone(), &d.neg(), y.clone()),
                lin(&d.neg(), x, g, y),
                lin(e, z.clone(), &h.neg(), w.clone()),
                lin(&h.neg(), z, e, w),
            ],
            MapKind::Phi => [
                lin(g, xz.clone(), d, yw.clone()),
                lin(d, xz, g, yw),
                lin(e, z.clone(), h, w.clone()),
                lin(h, z, e, w),
            ],
            MapKind::PhiInverse => {
                let zi = lin(e, z.clone(), &h.neg(), w.clone());
                let wi = lin(&h.neg(), z, e, w);
                [
                    lin(g, x.clone(), &d.neg(), y.clone()).mul(&wi),
                    lin(&d.neg(), x, g, y).mul(&zi),
                    zi,
                    wi,
                ]
            }
        };
        MapSpec { kind, images }
    }

    /// Plain substitution, no content handling.
    pub fn apply(&self, f: &BiForm<C>) -> BiForm<C> {
        let [a, b, c, d] = &self.images;
        f.substitute(&[a, b, c, d])
    }

    /// Composite substitution: first `self`, then `then`.
    pub fn then(&self, then: &MapSpec<C>) -> [BiForm<C>; 4] {
        [then.apply(&self.images[0]), then.apply(&self.images[1]), then.apply(&self.images[2]), then.apply(&self.images[3])]
    }
}

/// Coefficient rings whose forms admit a gcd over the coefficient field.
pub trait ContentRing: Ring {
    /// The coefficient as a polynomial in the parameters.
    fn to_param_poly(&self) -> MPoly;
    fn from_param_poly(p: &MPoly) -> Self;
}

impl ContentRing for MPoly {
    fn to_param_poly(&self) -> MPoly {
        self.clone()
    }
    fn from_param_poly(p: &MPoly) -> Self {
        p.clone()
    }
}

impl ContentRing for Rat {
    fn to_param_poly(&self) -> MPoly {
        MPoly::constant_in(&param_vars(), self.clone())
    }
    fn from_param_poly(p: &MPoly) -> Self {
        p.as_constant().expect("constant polynomial")
    }
}

fn form_vars() -> Vars {
    thread_local! {
        static V: Vars = vars_of(&["x", "y", "z", "w", "rho", "theta"]);
    }
    V.with(|v| v.clone())
}

/// A form as one polynomial in x, y, z, w, rho, theta.
fn form_to_poly<C: ContentRing>(f: &BiForm<C>) -> MPoly {
    let v = form_vars();
    let (a, b) = f.bidegree();
    let mut out = MPoly::zero_in(&v);
    for ((i, j), c) in f.terms() {
        for (m, k) in c.to_param_poly().terms() {
            let e = vec![i as u32, (a - i) as u32, j as u32, (b - j) as u32, m.0[0], m.0[1]];
            out.add_term(Mono(e), k.clone());
        }
    }
    out
}

fn poly_to_form<C: ContentRing>(p: &MPoly) -> BiForm<C> {
    let mut parts: BTreeMap<(usize, usize, usize, usize), Vec<(Vec<u32>, Rat)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = &m.0;
        parts.entry((e[0] as usize, e[1] as usize, e[2] as usize, e[3] as usize)).or_default().push((vec![e[4], e[5]], c.clone()));
    }
    let (a, b) = parts.keys().next().map(|k| (k.0 + k.1, k.2 + k.3)).unwrap_or((0, 0));
    let mut f = BiForm::zero(a, b);
    for ((i, _, j, _), terms) in parts {
        f.set(i, j, C::from_param_poly(&MPoly::from_terms(&param_vars(), terms)));
    }
    f
}

/// Gcd of the coefficients, with sign and scale chosen so that the first
/// nonzero coefficient of the quotient has a positive leading coefficient.
fn coefficient_content<C: ContentRing>(f: &BiForm<C>) -> MPoly {
    let mut g = MPoly::zero();
    for (_, c) in f.terms() {
        g = poly_gcd(&g, &c.to_param_poly());
    }
    let quotients: Vec<MPoly> = f.terms().map(|(_, c)| c.to_param_poly().div_exact(&g).expect("content divides")).collect();
    let Some(first) = quotients.first() else { return MPoly::one() };
    let all: Vec<&Rat> = quotients.iter().flat_map(|q| q.terms().map(|(_, c)| c)).collect();
    let num = numerator_gcd(all.iter().copied());
    let den = denominator_lcm(all.iter().copied());
    let mut scale = Rat::new(num, den);
    if first.leading().expect("nonzero").1 < &rat_int(0) {
        scale = -scale;
    }
    g.scale(&scale)
}

/// Divides out the scalar content of a form.
pub fn normalize_form<C: ContentRing>(f: &BiForm<C>) -> BiForm<C> {
    let g = coefficient_content(f);
    f.map(|c| if c.is_zero() { C::zero() } else { C::from_param_poly(&c.to_param_poly().div_exact(&g).expect("content divides")) })
}

/// Common form factor of two forms (a form of positive degree), if any.
pub fn common_form_factor<C: ContentRing>(f: &BiForm<C>, g: &BiForm<C>) -> Option<BiForm<C>> {
    let h = poly_gcd(&form_to_poly(f), &form_to_poly(g));
    let form: BiForm<C> = normalize_form(&poly_to_form(&h));
    if form.bidegree() == (0, 0) {
        None
    } else {
        Some(form)
    }
}

fn divide_form<C: ContentRing>(f: &BiForm<C>, g: &BiForm<C>) -> BiForm<C> {
    poly_to_form(&form_to_poly(f).div_exact(&form_to_poly(g)).expect("common factor divides"))
}

impl<C: ContentRing> MapSpec<C> {
    /// Removes a common form factor from the images of (x, y) and from those
    /// of (z, w). Returns the reduced map and a description of what was removed.
    pub fn reduced(&self) -> (MapSpec<C>, Option<String>) {
        let [x, y, z, w] = &self.images;
        let mut desc = Vec::new();
        let (mut x, mut y, mut z, mut w) = (x.clone(), y.clone(), z.clone(), w.clone());
        if let Some(h) = common_form_factor(&x, &y) {
            desc.push(format!("images of x, y share {}", form_to_poly(&h)));
            x = divide_form(&x, &h);
            y = divide_form(&y, &h);
        }
        if let Some(h) = common_form_factor(&z, &w) {
            desc.push(format!("images of z, w share {}", form_to_poly(&h)));
            z = divide_form(&z, &h);
            w = divide_form(&w, &h);
        }
        let d = if desc.is_empty() { None } else { Some(desc.join("; ")) };
        (MapSpec { kind: self.kind, images: [x, y, z, w] }, d)
    }
}

/// Result of a pullback with content bookkeeping.
#[derive(Clone, Debug)]
pub struct Pullback<C> {
    pub form: BiForm<C>,
    /// True when the map's images had a common form factor that was removed.
    pub cancelled: bool,
    pub factor_description: String,
}

/// Pulls `f` back along `map` (after removing any common factor among the
/// map's images) and divides out the scalar content.
pub fn pullback_form<C: ContentRing>(f: &BiForm<C>, map: &MapSpec<C>) -> Result<Pullback<C>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (reduced, desc) = map.reduced();
    let form = normalize_form(&reduced.apply(f));
    Ok(Pullback { form, cancelled: desc.is_some(), factor_description: desc.unwrap_or_default() })
}

/// Iterated pullbacks of the coordinate forms along the map.
#[derive(Clone, Debug)]
pub struct CurveCache<C> {
    map: MapSpec<C>,
    levels: Vec<[BiForm<C>; 4]>,
}

impl<C: Ring> CurveCache<C> {
    pub fn new(params: &Params<C>) -> Self {
        let map = MapSpec::new(MapKind::Phi, params);
        CurveCache { map, levels: vec![[BiForm::x(), BiForm::y(), BiForm::z(), BiForm::w()]] }
    }

    pub fn map(&self) -> &MapSpec<C> {
        &self.map
    }

    /// The forms obtained by substituting the map `k` times into x, y, z, w.
    pub fn level(&mut self, k: usize) -> &[BiForm<C>; 4] {
        while self.levels.len() <= k {
            let last = self.levels.last().unwrap();
            let next = [self.map.apply(&last[0]), self.map.apply(&last[1]), self.map.apply(&last[2]), self.map.apply(&last[3])];
            self.levels.push(next);
        }
        &self.levels[k]
    }

    /// Substitutes the map `k` times into an arbitrary form.
    pub fn pull(&mut self, f: &BiForm<C>, k: usize) -> BiForm<C> {
        if k == 0 {
            return f.clone();
        }
        let lv = self.level(k);
        f.substitute(&[&lv[0], &lv[1], &lv[2], &lv[3]])
    }

    /// Cleared spanning forms of the k-th twisted copy of the span of 1, u, v, uv,
    /// in the order 1, u, v, uv.
    pub fn generators(&mut self, k: usize) -> [BiForm<C>; 4] {
        let [x, y, z, w] = self.level(k).clone();
        [y.mul(&w), x.mul(&w), y.mul(&z), x.mul(&z)]
    }

    /// Common denominator of the k-th twisted copy: Y_k W_k.
    pub fn denominator(&mut self, k: usize) -> BiForm<C> {
        self.generators(k)[0].clone()
    }
}

impl<C: ContentRing> CurveCache<C> {
    /// The k-th iterate of the map, as the substitution it induces.
    pub fn iterate(&mut self, k: usize) -> MapSpec<C> {
        MapSpec { kind: MapKind::Phi, images: self.level(k).clone() }
    }
}

/// The four curve forms after `n` pullbacks, content-normalized.
///
/// These are the pullbacks by the n-th iterate with common factors removed.
/// With `strict` set, a common factor among the images of any iterate up to
/// `n` is an error: the n-fold pullback would then differ from the pullback by
/// the n-th iterate.
pub fn curve_forms<C: ContentRing>(n: usize, params: &Params<C>, strict: bool) -> Result<[BiForm<C>; 4]> {
    let mut cache = CurveCache::new(params);
    if strict {
        for k in 2..=n {
            if let (_, Some(d)) = cache.iterate(k).reduced() {
                return Err(Error::NonStable(format!("iterate {}: {}", k, d)));
            }
        }
    }
    let (red, _) = cache.iterate(n).reduced();
    let [x, y, z, w] = red.images;
    Ok([normalize_form(&x), normalize_form(&y), normalize_form(&z), normalize_form(&w)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, rat_int};

    fn p(s: &str) -> MPoly {
        parse_poly(&param_vars(), s).unwrap()
    }

    #[test]
    fn phi_pullback_of_y() {
        let params = Params::symbolic();
        let map = MapSpec::new(MapKind::Phi, &params);
        let pb = pullback_form(&BiForm::y(), &map).unwrap();
        let f = pb.form;
        assert_eq!(f.bidegree(), (1, 1));
        assert_eq!(*f.coeff(1, 1), p("rho-1"));
        assert_eq!(*f.coeff(0, 0), p("rho+1"));
        assert!(f.coeff(1, 0).is_zero() && f.coeff(0, 1).is_zero());
        assert!(!pb.cancelled);
    }

    #[test]
    fn phi_is_tau_then_sigma() {
        let params = Params::symbolic();
        let tau = MapSpec::new(MapKind::Tau, &params);
        let sigma = MapSpec::new(MapKind::Sigma, &params);
        let phi = MapSpec::new(MapKind::Phi, &params);
        assert_eq!(tau.then(&sigma), phi.images);
    }

    #[test]
    fn sigma_iterates_multiply_by_z() {
        let params = Params::<Rat>::tau_one();
        let sigma = MapSpec::new(MapKind::Sigma, &params);
        let mut f = BiForm::<Rat>::x();
        for n in 1..=4 {
            f = pullback_form(&f, &sigma).unwrap().form;
            assert_eq!(f, BiForm::monomial(1, n, 1, n, rat_int(1)));
        }
    }

    #[test]
    fn pullback_raises_second_degree() {
        let params = Params::symbolic();
        let map = MapSpec::new(MapKind::Phi, &params);
        let f = BiForm::<MPoly>::x().mul(&BiForm::w()).add(&BiForm::y().mul(&BiForm::z()));
        assert_eq!(pullback_form(&f, &map).unwrap().form.bidegree(), (1, 2));
        assert_eq!(pullback_form(&BiForm::<MPoly>::zero(1, 1), &map).unwrap_err(), Error::ZeroForm);
    }

    #[test]
    fn non_stable_parameters_cancel_a_factor() {
        // rho = -1, theta = 1: the square of the map has images sharing z*w.
        let params = Params::from_point(&rat_int(-1), &rat_int(1));
        let mut cache = CurveCache::new(&params);
        assert!(cache.iterate(1).reduced().1.is_none());
        let (red, desc) = cache.iterate(2).reduced();
        assert!(desc.is_some());
        assert_eq!(red.images[0].bidegree(), (1, 0));
        assert!(matches!(curve_forms(2, &params, true), Err(Error::NonStable(_))));
        let pb = pullback_form(&BiForm::x(), &cache.iterate(2)).unwrap();
        assert!(pb.cancelled);
        assert_eq!(pb.form, BiForm::x());
    }

    #[test]
    fn generic_curves_have_no_cancellation() {
        let params = Params::symbolic();
        let [x2, y2, z2, _] = curve_forms(2, &params, true).unwrap();
        assert_eq!(x2.bidegree(), (1, 2));
        assert_eq!(z2.bidegree(), (0, 1));
        assert!(!y2.coeff(1, 2).is_zero() && !y2.coeff(0, 0).is_zero());
    }

    #[test]
    fn tau_one_fixes_z_and_w() {
        let params = Params::<Rat>::tau_one();
        let [x, y, z, w] = curve_forms(4, &params, true).unwrap();
        assert_eq!(z, BiForm::z());
        assert_eq!(w, BiForm::w());
        assert_eq!(x, BiForm::x().mul(&BiForm::z().pow(4)));
        assert_eq!(y, BiForm::y().mul(&BiForm::w().pow(4)));
    }

    #[test]
    fn second_curve_matches_hand_expansion() {
        let params = Params::symbolic();
        let (g, d, e, h) = (&params.rho_plus, &params.rho_minus, &params.theta_plus, &params.theta_minus);
        let (x, y, z, w) = (BiForm::<MPoly>::x(), BiForm::y(), BiForm::z(), BiForm::w());
        let x1 = x.mul(&z).scale(g).add(&y.mul(&w).scale(d));
        let y1 = x.mul(&z).scale(d).add(&y.mul(&w).scale(g));
        let z1 = z.scale(e).add(&w.scale(h));
        let w1 = z.scale(h).add(&w.scale(e));
        let hand = x1.mul(&z1).scale(d).add(&y1.mul(&w1).scale(g));
        let mut cache = CurveCache::new(&params);
        assert_eq!(cache.level(2)[1], hand);
    }
}
