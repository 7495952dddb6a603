use crate::exact::{rank_and_kernel, EchelonBasis, Field, MPoly, Ring, Scalar, ScalarMatrix};
use crate::params::Params;

use super::relations::{quadratic_relations, quadratic_value, Quadratic};
use super::ring::{unit, SkewRing};

/// Graded dimensions of the free algebra on four letters modulo quadratic
/// relations, degrees 0..=max_n.
///
/// Degree n is built as (degree n-1 quotient) x letters modulo the image of
/// (degree n-2 quotient) x relations, so only quotient-sized matrices appear.
pub fn quadratic_algebra_dims<F: Field>(rels: &[Quadratic<F>], max_n: usize) -> Vec<usize> {
    let mut dims = vec![1usize];
    if max_n == 0 {
        return dims;
    }
    dims.push(4);
    // reductions[j]: for each basis index i of S_{j-1} and letter a, the image of
    // e_i x_a in S_j coordinates.
    let mut reductions: Vec<Vec<Vec<F>>> = vec![Vec::new(), (0..4).map(|a| unit_vec::<F>(4, a)).collect()];
    for n in 2..=max_n {
        let prev = dims[n - 1];
        let width = 4 * prev;
        let mut kernel = EchelonBasis::new(width);
        for i in 0..dims[n - 2] {
            for q in rels {
                let mut v = vec![F::zero(); width];
                for (c, a, b) in q {
                    // e_i x_a lands in S_{n-1}; then append letter b
                    let img = &reductions[n - 1][i * 4 + a];
                    for (k, x) in img.iter().enumerate() {
                        if !x.is_zero() {
                            v[k * 4 + b] = v[k * 4 + b].add(&x.mul(c));
                        }
                    }
                }
                kernel.insert(&v);
            }
        }
        let pivots = kernel.pivots().to_vec();
        let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
        let red: Vec<Vec<F>> = (0..width)
            .map(|col| {
                let r = kernel.reduce(&unit_vec::<F>(width, col));
                free.iter().map(|&f| r[f].clone()).collect()
            })
            .collect();
        dims.push(free.len());
        reductions.push(red);
    }
    dims
}

fn unit_vec<F: Ring>(n: usize, k: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[k] = F::one();
    v
}

/// Kernel of the degree-2 multiplication map from words x_a x_b to the ring,
/// computed exactly over the parameter function field.
pub struct DegreeTwoKernel {
    pub rank: usize,
    pub kernel_dim: usize,
    /// True when every kernel vector lies in the span of the six relations.
    pub spanned_by_relations: bool,
}

pub fn degree_two_kernel() -> DegreeTwoKernel {
    let params = Params::symbolic();
    let mut ring = SkewRing::new(params.clone());
    // columns: the 16 words; rows: form coefficients
    let words: Vec<Vec<MPoly>> = (0..16).map(|w| ring.word(&[unit(w / 4), unit(w % 4)], 0).into_coeffs()).collect();
    let rows = words[0].len();
    let mut m = ScalarMatrix::zeros(rows, 16);
    for (j, col) in words.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            m.set(i, j, Scalar::from_poly(c.clone()));
        }
    }
    let (rank, kernel) = rank_and_kernel(&m);
    let rels: Vec<Vec<Scalar>> = quadratic_relations(&params)
        .iter()
        .map(|q| {
            let mut v = vec![Scalar::zero(); 16];
            for (c, a, b) in q {
                v[a * 4 + b] = v[a * 4 + b].add(&Scalar::from_poly(c.clone()));
            }
            v
        })
        .collect();
    let mut span = EchelonBasis::new(16);
    for r in &rels {
        span.insert(r);
    }
    let spanned = span.rank() == kernel.len() && kernel.iter().all(|k| span.contains(k));
    // the relations must themselves map to zero
    let vanish = quadratic_relations(&params).iter().all(|q| quadratic_value(&mut ring, q).is_zero());
    DegreeTwoKernel { rank, kernel_dim: kernel.len(), spanned_by_relations: spanned && vanish }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fp;
    use crate::skew::relations::binomial_relations;

    #[test]
    fn tau_one_quotient_has_tetrahedral_dims() {
        let dims = quadratic_algebra_dims::<Fp>(&binomial_relations(), 6);
        assert_eq!(dims, vec![1, 4, 10, 20, 35, 56, 84]);
    }

    #[test]
    fn free_algebra_without_relations() {
        assert_eq!(quadratic_algebra_dims::<Fp>(&[], 3), vec![1, 4, 16, 64]);
    }

    #[test]
    fn commutative_polynomial_ring() {
        // x_a x_b - x_b x_a for a < b
        let mut rels = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                rels.push(vec![(Fp(1), a, b), (Fp(1).neg(), b, a)]);
            }
        }
        assert_eq!(quadratic_algebra_dims::<Fp>(&rels, 4), vec![1, 4, 10, 20, 35]);
    }

    #[test]
    fn degree_two_kernel_is_six_dimensional() {
        let k = degree_two_kernel();
        assert_eq!((k.rank, k.kernel_dim), (10, 6));
        assert!(k.spanned_by_relations);
    }
}
