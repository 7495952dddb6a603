use std::collections::HashMap;

use crate::exact::{EchelonBasis, Field, Ring};
use crate::params::Params;
use crate::surface::{BiForm, CurveCache};

/// A degree-one element, as coefficients of 1, u, v, uv.
pub type Linear<C> = [C; 4];

pub fn unit<C: Ring>(k: usize) -> Linear<C> {
    let mut c = [C::zero(), C::zero(), C::zero(), C::zero()];
    c[k] = C::one();
    c
}

/// Forms representing products in the twisted ring, over a fixed coefficient ring.
///
/// An element of degree n at twist m is a form F of bidegree
/// (n, C(n+m+1,2) - C(m+1,2)) standing for F / prod_{i=m}^{m+n-1} Y_i W_i,
/// where Y_i, W_i are the forms y, w substituted i times.
#[derive(Clone, Debug)]
pub struct SkewRing<C> {
    params: Params<C>,
    cache: CurveCache<C>,
    gens: Vec<[BiForm<C>; 4]>,
}

impl<C: Ring> SkewRing<C> {
    pub fn new(params: Params<C>) -> Self {
        let cache = CurveCache::new(&params);
        SkewRing { params, cache, gens: Vec::new() }
    }

    pub fn params(&self) -> &Params<C> {
        &self.params
    }

    /// Bidegree of degree-n elements at twist m.
    pub fn bidegree(n: usize, m: usize) -> (usize, usize) {
        (n, (n + m + 1) * (n + m) / 2 - (m + 1) * m / 2)
    }

    /// Cleared generators 1, u, v, uv at a level.
    pub fn generators(&mut self, level: usize) -> &[BiForm<C>; 4] {
        while self.gens.len() <= level {
            let k = self.gens.len();
            let g = self.cache.generators(k);
            self.gens.push(g);
        }
        &self.gens[level]
    }

    pub fn linear(&mut self, level: usize, c: &Linear<C>) -> BiForm<C> {
        let g = self.generators(level).clone();
        let (a, b) = g[0].bidegree();
        let mut out = BiForm::zero(a, b);
        for (gk, ck) in g.iter().zip(c) {
            out.add_scaled(gk, ck);
        }
        out
    }

    /// The product of degree-one elements, read left to right, at a twist.
    pub fn word(&mut self, letters: &[Linear<C>], twist: usize) -> BiForm<C> {
        let mut acc = BiForm::one();
        for (k, l) in letters.iter().enumerate() {
            let f = self.linear(twist + k, l);
            acc = acc.mul(&f);
        }
        acc
    }

    /// Moves an element from twist m to twist m + k.
    pub fn twist(&mut self, f: &BiForm<C>, k: usize) -> BiForm<C> {
        self.cache.pull(f, k)
    }

    /// Product of an element of degree `deg_a` (at twist m) with one at twist m + deg_a.
    pub fn times(a: &BiForm<C>, b_shifted: &BiForm<C>) -> BiForm<C> {
        a.mul(b_shifted)
    }
}

/// A graded piece: a basis of degree-n elements at twist m.
#[derive(Clone, Debug)]
pub struct GradedPiece<F> {
    pub n: usize,
    pub twist: usize,
    pub bidegree: (usize, usize),
    echelon: EchelonBasis<F>,
}

impl<F: Field> GradedPiece<F> {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Basis elements as forms.
    pub fn basis(&self) -> Vec<BiForm<F>> {
        let (a, b) = self.bidegree;
        self.echelon.rows().iter().map(|r| BiForm::from_vec(a, b, r.clone())).collect()
    }

    pub fn contains(&self, f: &BiForm<F>) -> bool {
        f.bidegree() == self.bidegree && self.echelon.contains(f.coeffs())
    }

    pub fn echelon(&self) -> &EchelonBasis<F> {
        &self.echelon
    }
}

/// Graded pieces over a field, built by right multiplication with the generators.
#[derive(Clone, Debug)]
pub struct PieceTable<F> {
    ring: SkewRing<F>,
    pieces: HashMap<(usize, usize), GradedPiece<F>>,
}

impl<F: Field> PieceTable<F> {
    pub fn new(params: Params<F>) -> Self {
        PieceTable { ring: SkewRing::new(params), pieces: HashMap::new() }
    }

    pub fn ring(&mut self) -> &mut SkewRing<F> {
        &mut self.ring
    }

    pub fn piece(&mut self, n: usize, m: usize) -> &GradedPiece<F> {
        if !self.pieces.contains_key(&(n, m)) {
            let p = if n == 0 {
                let mut e = EchelonBasis::new(1);
                e.insert(&[F::one()]);
                GradedPiece { n, twist: m, bidegree: (0, 0), echelon: e }
            } else {
                let prev = self.piece(n - 1, m).basis();
                let gens = self.ring.generators(m + n - 1).clone();
                let bidegree = SkewRing::<F>::bidegree(n, m);
                let width = (bidegree.0 + 1) * (bidegree.1 + 1);
                let mut e = EchelonBasis::new(width);
                'outer: for f in &prev {
                    for g in &gens {
                        e.insert(f.mul(g).coeffs());
                        if e.rank() == width {
                            break 'outer;
                        }
                    }
                }
                GradedPiece { n, twist: m, bidegree, echelon: e }
            };
            self.pieces.insert((n, m), p);
        }
        &self.pieces[&(n, m)]
    }

    pub fn dim(&mut self, n: usize, m: usize) -> usize {
        self.piece(n, m).dim()
    }
}
