use std::fmt;

use crate::exact::Ring;

/// Binomial coefficient as u64.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `C(n, 2)` extended to all integers as `n(n-1)/2`.
pub fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Bihomogeneous form in (x, y), (z, w), stored densely by exponents of x and z.
///
/// Coefficient `(i, j)` belongs to `x^i y^(a-i) z^j w^(b-j)`.
#[derive(Clone, PartialEq)]
pub struct BiForm<C> {
    a: usize,
    b: usize,
    coeffs: Vec<C>,
}

impl<C: Ring> BiForm<C> {
    pub fn zero(a: usize, b: usize) -> Self {
        BiForm { a, b, coeffs: vec![C::zero(); (a + 1) * (b + 1)] }
    }

    pub fn monomial(a: usize, b: usize, i: usize, j: usize, c: C) -> Self {
        let mut f = BiForm::zero(a, b);
        f.set(i, j, c);
        f
    }

    pub fn from_vec(a: usize, b: usize, coeffs: Vec<C>) -> Self {
        assert_eq!(coeffs.len(), (a + 1) * (b + 1));
        BiForm { a, b, coeffs }
    }

    pub fn x() -> Self {
        BiForm::monomial(1, 0, 1, 0, C::one())
    }
    pub fn y() -> Self {
        BiForm::monomial(1, 0, 0, 0, C::one())
    }
    pub fn z() -> Self {
        BiForm::monomial(0, 1, 0, 1, C::one())
    }
    pub fn w() -> Self {
        BiForm::monomial(0, 1, 0, 0, C::one())
    }
    pub fn one() -> Self {
        BiForm::monomial(0, 0, 0, 0, C::one())
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> &C {
        &self.coeffs[i * (self.b + 1) + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        let k = i * (self.b + 1) + j;
        self.coeffs[k] = c;
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero terms as `((i, j), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &C)> {
        let w = self.b + 1;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| ((k / w, k % w), c))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.bidegree(), o.bidegree(), "adding forms of different bidegree");
        BiForm { a: self.a, b: self.b, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.bidegree(), o.bidegree(), "subtracting forms of different bidegree");
        BiForm { a: self.a, b: self.b, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| if c.is_zero() { C::zero() } else { c.mul(s) })
    }

    pub fn add_scaled(&mut self, o: &Self, s: &C) {
        assert_eq!(self.bidegree(), o.bidegree());
        if s.is_zero() {
            return;
        }
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            if !y.is_zero() {
                *x = x.add(&y.mul(s));
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self.a + o.a, self.b + o.b);
        let mut out = BiForm::<C>::zero(a, b);
        let ow = o.b + 1;
        let nonzero: Vec<(usize, usize, &C)> =
            o.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k / ow, k % ow, c)).collect();
        for ((i, j), c) in self.terms() {
            for &(k, l, d) in &nonzero {
                let idx = (i + k) * (b + 1) + j + l;
                out.coeffs[idx] = out.coeffs[idx].add(&c.mul(d));
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BiForm::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> BiForm<D> {
        BiForm { a: self.a, b: self.b, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<BiForm<D>, E> {
        Ok(BiForm { a: self.a, b: self.b, coeffs: self.coeffs.iter().map(f).collect::<Result<_, _>>()? })
    }

    /// Value at homogeneous coordinates.
    pub fn eval(&self, x: &C, y: &C, z: &C, w: &C) -> C {
        let px = powers(x, self.a);
        let py = powers(y, self.a);
        let pz = powers(z, self.b);
        let pw = powers(w, self.b);
        let mut acc = C::zero();
        for ((i, j), c) in self.terms() {
            let t = c.mul(&px[i]).mul(&py[self.a - i]).mul(&pz[j]).mul(&pw[self.b - j]);
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial derivative in one of the coordinates x, y, z, w (index 0..4).
    pub fn partial(&self, var: usize) -> BiForm<C> {
        let (a, b) = (self.a, self.b);
        let (na, nb) = if var < 2 { (a.saturating_sub(1), b) } else { (a, b.saturating_sub(1)) };
        let mut out = BiForm::zero(na, nb);
        for ((i, j), c) in self.terms() {
            let (e, ni, nj) = match var {
                0 => (i, i.wrapping_sub(1), j),
                1 => (a - i, i, j),
                2 => (j, i, j.wrapping_sub(1)),
                _ => (b - j, i, j),
            };
            if e == 0 {
                continue;
            }
            out.set(ni, nj, c.mul(&C::from_i64(e as i64)));
        }
        out
    }

    /// Substitutes forms for x, y, z, w; the images of x, y share a bidegree, as do those of z, w.
    pub fn substitute(&self, images: &[&BiForm<C>; 4]) -> BiForm<C> {
        let [ix, iy, iz, iw] = *images;
        assert_eq!(ix.bidegree(), iy.bidegree());
        assert_eq!(iz.bidegree(), iw.bidegree());
        let (a, b) = (self.a, self.b);
        let xs = form_powers(ix, a);
        let ys = form_powers(iy, a);
        let zs = form_powers(iz, b);
        let ws = form_powers(iw, b);
        let zw: Vec<BiForm<C>> = (0..=b).map(|j| zs[j].mul(&ws[b - j])).collect();
        let ab = (ix.a * a + iz.a * b, ix.b * a + iz.b * b);
        let mut out = BiForm::zero(ab.0, ab.1);
        for i in 0..=a {
            let mut g: Option<BiForm<C>> = None;
            for (j, zwj) in zw.iter().enumerate() {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                match &mut g {
                    None => g = Some(zwj.scale(c)),
                    Some(g) => g.add_scaled(zwj, c),
                }
            }
            if let Some(g) = g {
                let term = xs[i].mul(&ys[a - i]).mul(&g);
                out = out.add(&term);
            }
        }
        out
    }
}

fn powers<C: Ring>(x: &C, n: usize) -> Vec<C> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(C::one());
    for k in 1..=n {
        let p = v[k - 1].mul(x);
        v.push(p);
    }
    v
}

fn form_powers<C: Ring>(f: &BiForm<C>, n: usize) -> Vec<BiForm<C>> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(BiForm::one());
    for k in 1..=n {
        let p = v[k - 1].mul(f);
        v.push(p);
    }
    v
}

impl<C: Ring + fmt::Display> fmt::Display for BiForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (v, e) in [("x", i), ("y", self.a - i), ("z", j), ("w", self.b - j)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", v)?,
                    _ => write!(f, "*{}^{}", v, e)?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for BiForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiForm({}, {})", self.a, self.b)?;
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fp;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(c2(-2), 3);
    }

    #[test]
    fn product_bidegree_adds() {
        let f = BiForm::<Fp>::x().mul(&BiForm::z());
        assert_eq!(f.bidegree(), (1, 1));
        assert_eq!(*f.coeff(1, 1), Fp(1));
    }

    #[test]
    fn substitution_is_multiplicative() {
        let xz = BiForm::<Fp>::x().mul(&BiForm::z());
        let yw = BiForm::<Fp>::y().mul(&BiForm::w());
        let images = [&xz, &yw, &BiForm::z(), &BiForm::w()];
        let f = BiForm::<Fp>::x().mul(&BiForm::y()).mul(&BiForm::w());
        let g = BiForm::<Fp>::x().add(&BiForm::y()).mul(&BiForm::z());
        let lhs = f.mul(&g).substitute(&images);
        let rhs = f.substitute(&images).mul(&g.substitute(&images));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials() {
        let f = BiForm::<Fp>::x().pow(2).mul(&BiForm::y()).mul(&BiForm::w());
        let fx = f.partial(0);
        assert_eq!(fx.bidegree(), (2, 1));
        assert_eq!(*fx.coeff(1, 0), Fp(2));
        assert!(f.partial(2).is_zero());
        assert_eq!(*f.partial(3).coeff(2, 0), Fp(1));
    }
}
