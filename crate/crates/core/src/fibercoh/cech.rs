use crate::error::{Error, Result};
use crate::exact::{EchelonBasis, Field};
use crate::surface::{c2, CurveCache};

use super::trunc::{restrict_curve_to_fiber, TruncElement};

/// Degree and twist data of the sheaf on the fat fiber of order `ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub ell: usize,
    pub n: usize,
}

impl FiberData {
    pub fn new(a: i64, b: i64, d: i64, ell: usize, n: usize) -> Self {
        FiberData { a, b, d, ell, n }
    }

    /// Least degree from which the closed form applies.
    pub fn n0(a: i64, d: i64) -> usize {
        d.max(1).max(-a - 1) as usize
    }

    /// Least fiber order from which the closed form applies.
    pub fn ell0(a: i64) -> usize {
        (-a - 1).max(1) as usize
    }

    pub fn check_range(&self) -> Result<()> {
        if self.d < 0 || self.a > -1 {
            return Err(Error::RangeUnsupported(format!("need a <= -1 and d >= 0, got a = {}, d = {}", self.a, self.d)));
        }
        if self.n < Self::n0(self.a, self.d) || self.ell < Self::ell0(self.a) {
            return Err(Error::RangeUnsupported(format!(
                "need n >= {} and l >= {}, got n = {}, l = {}",
                Self::n0(self.a, self.d),
                Self::ell0(self.a),
                self.n,
                self.ell
            )));
        }
        Ok(())
    }

    /// Default u-window: wide enough that every generator fits.
    pub fn window(&self) -> (i64, i64) {
        let pad = self.n as i64 + self.ell as i64 + self.a.abs() + self.d + 2;
        (-pad, pad)
    }

    /// Closed-form cokernel dimension C(-a-d, 2).
    pub fn closed_dim(&self) -> usize {
        c2(-self.a - self.d).max(0) as usize
    }

    /// Closed-form torsion profile (-a-d-1, ..., 1).
    pub fn closed_profile(&self) -> Vec<usize> {
        (1..(-self.a - self.d)).rev().map(|k| k as usize).collect()
    }

    /// Closed-form cokernel basis u^i v^j, 0 <= j <= i-d-1, d+1 <= i <= -a-1.
    pub fn closed_basis(&self) -> Vec<(i64, usize)> {
        let mut out = Vec::new();
        for i in (self.d + 1)..=(-self.a - 1) {
            for j in 0..=(i - self.d - 1) {
                out.push((i, j as usize));
            }
        }
        out
    }

    /// Whether u^i v^j lies in the closed-form image of the Cech differential.
    pub fn in_closed_image(&self, i: i64, j: usize) -> bool {
        let j = j as i64;
        let cut = -self.a - self.d;
        j >= cut.max(0) || i >= -self.a || i <= j + self.d
    }
}

/// Span of a set of window elements.
#[derive(Clone, Debug)]
pub struct WindowSpan<F> {
    pub ell: usize,
    pub lo: i64,
    pub hi: i64,
    pub basis: EchelonBasis<F>,
}

impl<F: Field> WindowSpan<F> {
    pub fn new(ell: usize, lo: i64, hi: i64) -> Self {
        WindowSpan { ell, lo, hi, basis: EchelonBasis::new((hi - lo + 1) as usize * ell) }
    }

    pub fn insert(&mut self, e: &TruncElement<F>) {
        self.basis.insert(e.coeffs());
    }

    pub fn contains(&self, e: &TruncElement<F>) -> bool {
        self.basis.contains(e.coeffs())
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn ambient(&self) -> usize {
        self.basis.width()
    }

    pub fn monomial(&self, i: i64, j: usize) -> TruncElement<F> {
        TruncElement::monomial(self.ell, self.lo, self.hi, i, j).expect("monomial inside window")
    }

    pub fn contains_monomial(&self, i: i64, j: usize) -> bool {
        self.contains(&self.monomial(i, j))
    }

    /// This span enlarged by the given monomials.
    pub fn with_monomials(&self, monos: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut out = self.clone();
        for (i, j) in monos {
            let m = out.monomial(i, j);
            out.insert(&m);
        }
        out
    }
}

/// The image of the Cech differential in one degree, inside the window.
#[derive(Clone, Debug)]
pub struct CechImage<F> {
    pub data: FiberData,
    pub span: WindowSpan<F>,
}

/// h = u^-n times the product of the inverses of the first n curve equations on the minus chart.
pub fn unit_factor<F: Field>(cache: &mut CurveCache<F>, n: usize, ell: usize) -> Result<TruncElement<F>> {
    let hi = (ell * n.max(1)) as i64;
    let mut h = TruncElement::monomial(ell, 0, hi, 0, 0)?;
    for i in 0..n {
        let r = restrict_curve_to_fiber(cache, i, ell)?;
        h = h.mul(&r.inverse_factor(0, hi)?)?;
    }
    Ok(h)
}

/// Builds the image of the Cech differential: the plus-chart sections u^-a S and the
/// minus-chart sections (1/u, v)^(n-d) s^-1 S, where s is the product of the curve equations.
pub fn cech_image<F: Field>(cache: &mut CurveCache<F>, data: FiberData, window: (i64, i64)) -> Result<CechImage<F>> {
    data.check_range()?;
    let (lo, hi) = window;
    let ell = data.ell;
    let mut span = WindowSpan::new(ell, lo, hi);
    for i in (-data.a).max(lo)..=hi {
        for j in 0..ell {
            span.insert(&span.monomial(i, j));
        }
    }
    let h = unit_factor(cache, data.n, ell)?.rewindow(lo.min(0), hi.max(ell as i64))?;
    let top = h.terms().map(|(i, _, _)| i).max().unwrap_or(0);
    // generators u^(d+e-p) v^(e+q) h with 0 <= e <= n-d, p >= 0
    for e in 0..=(data.n as i64 - data.d) {
        if e as usize >= ell {
            break;
        }
        let mut low = data.d + e;
        while low >= lo {
            if low + top <= hi {
                for q in 0..(ell - e as usize) {
                    let g = h.shift(low, e as usize + q)?.rewindow(lo, hi)?;
                    span.insert(&g);
                }
            }
            low -= 1;
        }
    }
    for j in 0..ell {
        for edge in [lo, hi] {
            if !span.contains_monomial(edge, j) {
                return Err(Error::WindowTooSmall(edge));
            }
        }
    }
    Ok(CechImage { data, span })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechReport {
    pub data: FiberData,
    pub dim: usize,
    /// Sizes of the cyclic summands as a module over k[v]/(v^l), decreasing.
    pub profile: Vec<usize>,
    /// The image equals the span of the closed-form monomials.
    pub image_matches: bool,
    /// The closed-form monomials project to a basis of the cokernel.
    pub basis_matches: bool,
}

impl CechReport {
    pub fn matches_closed_form(&self) -> bool {
        self.image_matches
            && self.basis_matches
            && self.dim == self.data.closed_dim()
            && self.profile == self.data.closed_profile()
    }
}

/// Ranks of v^k on the cokernel, k = 0..=l.
fn v_power_ranks<F: Field>(img: &WindowSpan<F>) -> Vec<usize> {
    let base = img.rank();
    (0..=img.ell)
        .map(|k| {
            let monos = (img.lo..=img.hi).flat_map(|i| (k..img.ell).map(move |j| (i, j)));
            img.with_monomials(monos).rank() - base
        })
        .collect()
}

/// Block sizes from the ranks of powers of a nilpotent operator.
pub fn profile_from_ranks(ranks: &[usize]) -> Vec<usize> {
    // number of blocks of size >= k is ranks[k-1] - ranks[k]
    let mut out = Vec::new();
    for k in (1..ranks.len()).rev() {
        let at_least = ranks[k - 1] - ranks[k];
        let at_least_next = if k + 1 < ranks.len() { ranks[k] - ranks[k + 1] } else { 0 };
        for _ in 0..(at_least - at_least_next) {
            out.push(k);
        }
    }
    out
}

pub fn cech_report<F: Field>(img: &CechImage<F>) -> CechReport {
    let data = img.data;
    let span = &img.span;
    let dim = span.ambient() - span.rank();
    let ranks = v_power_ranks(span);
    let profile = profile_from_ranks(&ranks);
    let closed: Vec<(i64, usize)> =
        (span.lo..=span.hi).flat_map(|i| (0..data.ell).map(move |j| (i, j))).filter(|&(i, j)| data.in_closed_image(i, j)).collect();
    let closed_span = WindowSpan::<F>::new(data.ell, span.lo, span.hi).with_monomials(closed.iter().copied());
    let image_matches = closed_span.rank() == span.rank() && closed.iter().all(|&(i, j)| span.contains_monomial(i, j));
    let basis = data.closed_basis();
    let basis_matches = basis.len() == dim && span.with_monomials(basis.iter().copied()).rank() == span.ambient();
    CechReport { data, dim, profile, image_matches, basis_matches }
}

/// First cohomology of the degree-n piece on the fat fiber of order `ell`, computed by Cech
/// cochains on the two charts and compared with the closed form.
pub fn cech_h1_fatfiber<F: Field>(cache: &mut CurveCache<F>, a: i64, b: i64, d: i64, ell: usize, n: usize) -> Result<CechReport> {
    let data = FiberData::new(a, b, d, ell, n);
    let img = cech_image(cache, data, data.window())?;
    Ok(cech_report(&img))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationReport {
    pub a: i64,
    pub d: i64,
    pub n: usize,
    pub ell: usize,
    /// Multiplication by t from degree n to n + 1 is bijective on first cohomology.
    pub t_bijective: bool,
    /// Restriction from order l + 1 to order l is bijective on first cohomology.
    pub restriction_bijective: bool,
}

/// Checks that t acts bijectively and that first cohomology is stable in the fiber order.
/// Both charts identify consecutive degrees with the same truncated ring, on which t acts as
/// the identity, so bijectivity of t is equality of the images.
pub fn mu_t_and_stabilization<F: Field>(cache: &mut CurveCache<F>, a: i64, b: i64, d: i64, ell: usize, n: usize) -> Result<StabilizationReport> {
    let here = FiberData::new(a, b, d, ell, n);
    let next = FiberData::new(a, b, d, ell, n + 1);
    let window = next.window();
    let img_n = cech_image(cache, here, window)?;
    let img_next = cech_image(cache, next, window)?;
    let t_bijective = same_span(&img_n.span, &img_next.span);

    let finer = FiberData::new(a, b, d, ell + 1, n);
    let img_fine = cech_image(cache, finer, window)?;
    // restriction maps the finer image into the coarser one and is onto the ambient space
    let mut projected = WindowSpan::new(ell, window.0, window.1);
    for row in img_fine.span.basis.rows() {
        let e = row_element(row, ell + 1, window).truncate(ell);
        projected.insert(&e);
    }
    let into = same_span(&projected, &img_n.span);
    let dims_equal = img_fine.span.ambient() - img_fine.span.rank() == img_n.span.ambient() - img_n.span.rank();
    Ok(StabilizationReport { a, d, n, ell, t_bijective, restriction_bijective: into && dims_equal })
}

fn row_element<F: Field>(row: &[F], ell: usize, (lo, hi): (i64, i64)) -> TruncElement<F> {
    let mut e = TruncElement::zero(ell, lo, hi);
    for (k, c) in row.iter().enumerate() {
        e.add_term(lo + (k / ell) as i64, k % ell, c).expect("inside window");
    }
    e
}

fn same_span<F: Field>(x: &WindowSpan<F>, y: &WindowSpan<F>) -> bool {
    x.rank() == y.rank() && x.basis.rows().iter().all(|r| y.basis.contains(r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    /// Diagonal index e: spanned by u^(j+e) v^j.
    pub diagonal: i64,
    /// Starting index c along the diagonal.
    pub start: usize,
    /// Dimension in each degree of the window.
    pub dims: Vec<usize>,
    /// t carries the generator in each degree to a generator in the next.
    pub t_bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub a: i64,
    pub d: i64,
    pub ell: usize,
    pub degrees: Vec<usize>,
    /// Every flag space is stable under the degree-one sections.
    pub stable: bool,
    pub subquotients: Vec<Subquotient>,
}

impl FiltrationReport {
    /// Every subquotient has Hilbert function 1 and t acts bijectively.
    pub fn point_modules(&self) -> bool {
        self.stable && self.subquotients.iter().all(|s| s.t_bijective && s.dims.iter().all(|&d| d == 1))
    }
}

/// Degree-one sections acting on the degree-n piece: g v^k and u v g v^k, where
/// g = sum (-u alpha)^k is built from the n-th curve.
fn action_elements<F: Field>(cache: &mut CurveCache<F>, n: usize, ell: usize, lo: i64, hi: i64) -> Result<Vec<TruncElement<F>>> {
    let r = restrict_curve_to_fiber(cache, n, ell)?;
    let g = r.inverse_factor(lo, hi)?;
    let mut out = Vec::new();
    for k in 0..ell {
        out.push(g.shift(0, k)?);
        out.push(g.shift(1, k + 1)?);
    }
    Ok(out)
}

/// Monomials spanning V(e-1) together with u^(j+e) v^j for j >= start, modulo the image.
fn flag_monomials(ell: usize, (lo, hi): (i64, i64), e: i64, start: usize) -> Vec<(i64, usize)> {
    let lower = (lo..=hi).flat_map(|i| (0..ell).map(move |j| (i, j))).filter(move |&(i, j)| i <= j as i64 + e - 1);
    let diag = (start..ell).map(move |j| (j as i64 + e, j)).filter(move |&(i, _)| i >= lo && i <= hi);
    lower.chain(diag).collect()
}

fn flag_space<F: Field>(img: &WindowSpan<F>, e: i64, start: usize) -> WindowSpan<F> {
    img.with_monomials(flag_monomials(img.ell, (img.lo, img.hi), e, start))
}

/// Filters the first cohomology in degrees n0..n0+span by subspaces stable under the
/// degree-one sections, with one-dimensional subquotients in every degree.
pub fn filtration_pointmodules<F: Field>(cache: &mut CurveCache<F>, a: i64, b: i64, d: i64, ell: usize, span: usize) -> Result<FiltrationReport> {
    let n0 = FiberData::n0(a, d);
    let degrees: Vec<usize> = (n0..=n0 + span).collect();
    let top = FiberData::new(a, b, d, ell, n0 + span + 1);
    let window = top.window();
    let mut images = Vec::new();
    for &n in degrees.iter().chain(std::iter::once(&(n0 + span + 1))) {
        images.push(cech_image(cache, FiberData::new(a, b, d, ell, n), window)?.span);
    }
    let mut stable = true;
    for (k, &n) in degrees.iter().enumerate() {
        let img = &images[k];
        let acts = action_elements(cache, n, ell, window.0, window.1)?;
        for e in d..=(-a - 1) {
            for start in 0..ell {
                let target = flag_space(&images[k + 1], e, start);
                // the image itself is carried into the next image by construction
                for (i, j) in flag_monomials(ell, window, e, start) {
                    if img.contains_monomial(i, j) {
                        continue;
                    }
                    let x = img.monomial(i, j);
                    for f in &acts {
                        let y = x.mul(f)?;
                        if !target.contains(&y) {
                            stable = false;
                        }
                    }
                }
            }
        }
    }
    let mut subquotients = Vec::new();
    for e in (d + 1)..=(-a - 1) {
        for start in 0..((-a - e) as usize).min(ell) {
            let mut dims = Vec::new();
            let mut t_bijective = true;
            for k in 0..degrees.len() {
                let upper = flag_space(&images[k], e, start);
                let lower = flag_space(&images[k], e, start + 1);
                dims.push(upper.rank() - lower.rank());
                // t is the identity on the charts: the generator must stay outside the next lower space
                let gen = lower.monomial(start as i64 + e, start);
                let next_lower = flag_space(&images[k + 1], e, start + 1);
                if next_lower.contains(&gen) || !flag_space(&images[k + 1], e, start).contains(&gen) {
                    t_bijective = false;
                }
            }
            subquotients.push(Subquotient { diagonal: e, start, dims, t_bijective });
        }
    }
    Ok(FiltrationReport { a, d, ell, degrees, stable, subquotients })
}
