use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{rat_int, EchelonBasis, Rat};
use crate::params::Params;
use crate::skew::{PieceTable, SkewRing};
use crate::surface::{binom, BiForm};

use super::fatpoints::scheme_length;

/// Monomials u^i v^j with 0 <= i <= n and lo(i) <= j <= hi(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialRegion {
    pub n: usize,
    pub m: usize,
    /// `(i, lo, hi)` for i = 0..=n.
    pub rows: Vec<(usize, usize, usize)>,
}

impl MonomialRegion {
    pub fn size(&self) -> usize {
        self.rows.iter().map(|(_, lo, hi)| hi - lo + 1).sum()
    }

    pub fn monomials(&self) -> BTreeSet<(usize, usize)> {
        self.rows.iter().flat_map(|&(i, lo, hi)| (lo..=hi).map(move |j| (i, j))).collect()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows.get(i).is_some_and(|&(_, lo, hi)| lo <= j && j <= hi)
    }
}

/// The monomial basis of the degree-n piece at twist m at the degenerate value.
pub fn a_monomial_basis(n: usize, m: usize) -> MonomialRegion {
    let c = |k: usize| binom(k as i64, 2) as usize;
    let rows = (0..=n).map(|i| (i, i * m + c(i), i * m + c(n + 1) - c(n - i))).collect();
    MonomialRegion { n, m, rows }
}

/// All monomials of products of one monomial from each of the n factors
/// span{1, u v^k, v, u v^(k+1)}, k = m..m+n-1.
pub fn enumerate_products(n: usize, m: usize) -> BTreeSet<(usize, usize)> {
    let mut cur: BTreeSet<(usize, usize)> = [(0, 0)].into_iter().collect();
    for k in m..m + n {
        let letters = [(0, 0), (1, k), (0, 1), (1, k + 1)];
        cur = cur.iter().flat_map(|&(i, j)| letters.iter().map(move |&(a, b)| (i + a, j + b))).collect();
    }
    cur
}

/// Checks the region against the graded piece of the ring at the degenerate value.
pub fn region_matches_ring(n: usize, m: usize) -> bool {
    let region = a_monomial_basis(n, m);
    let mut table = PieceTable::new(Params::<Rat>::tau_one());
    let piece = table.piece(n, m).clone();
    let (a, b) = SkewRing::<Rat>::bidegree(n, m);
    // u^i v^j over the denominator y^n w^b is the form x^i y^(n-i) z^j w^(b-j)
    let mut span = EchelonBasis::new((a + 1) * (b + 1));
    for (i, j) in region.monomials() {
        if j > b {
            return false;
        }
        span.insert(BiForm::monomial(a, b, i, j, rat_int(1)).coeffs());
    }
    span.rank() == piece.dim() && piece.basis().iter().all(|f| span.contains(f.coeffs()))
}

/// Sections of the sheaf generated by the monomials of `w`, as the
/// intersection over the four standard affine charts.
pub fn chart_intersection(w: &BTreeSet<(usize, usize)>) -> BTreeSet<(i64, i64)> {
    let pts: Vec<(i64, i64)> = w.iter().map(|&(i, j)| (i as i64, j as i64)).collect();
    if pts.is_empty() {
        return BTreeSet::new();
    }
    let (imin, imax) = (pts.iter().map(|p| p.0).min().unwrap(), pts.iter().map(|p| p.0).max().unwrap());
    let (jmin, jmax) = (pts.iter().map(|p| p.1).min().unwrap(), pts.iter().map(|p| p.1).max().unwrap());
    let mut out = BTreeSet::new();
    for i in imin..=imax {
        for j in jmin..=jmax {
            let pp = pts.iter().any(|&(p, q)| i >= p && j >= q);
            let mp = pts.iter().any(|&(p, q)| i >= p && j <= q);
            let mm = pts.iter().any(|&(p, q)| i <= p && j <= q);
            let pm = pts.iter().any(|&(p, q)| i <= p && j >= q);
            if pp && mp && mm && pm {
                out.insert((i, j));
            }
        }
    }
    out
}

/// h0 from the chart intersection and h1 from the restriction sequence to the base scheme.
pub fn a_h0_h1(n: usize, m: usize) -> Result<(usize, usize)> {
    let w = enumerate_products(n, m);
    let h0_set = chart_intersection(&w);
    let region: BTreeSet<(i64, i64)> = w.iter().map(|&(i, j)| (i as i64, j as i64)).collect();
    if h0_set != region {
        return Err(Error::CheckFailed(format!("chart intersection has {} monomials, generators {}", h0_set.len(), region.len())));
    }
    let (a, b) = SkewRing::<Rat>::bidegree(n, m);
    let ambient = ((a + 1) * (b + 1)) as i64;
    let h1 = h0_set.len() as i64 + scheme_length(n, m) as i64 - ambient;
    if h1 < 0 {
        return Err(Error::CheckFailed(format!("negative h1 {}", h1)));
    }
    Ok((h0_set.len(), h1 as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_examples() {
        let r = a_monomial_basis(1, 0);
        assert_eq!(r.monomials(), [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().collect());
        let r = a_monomial_basis(2, 0);
        assert_eq!(r.rows, vec![(0, 0, 2), (1, 0, 3), (2, 1, 3)]);
        assert_eq!(r.size(), 10);
        assert_eq!(a_monomial_basis(2, 1).rows, vec![(0, 0, 2), (1, 1, 4), (2, 3, 5)]);
    }

    #[test]
    fn brute_force_agrees() {
        for n in 0..=5 {
            for m in 0..=3 {
                assert_eq!(enumerate_products(n, m), a_monomial_basis(n, m).monomials(), "n={} m={}", n, m);
            }
        }
    }

    #[test]
    fn ring_piece_is_monomial() {
        for (n, m) in [(1, 0), (2, 0), (2, 1), (3, 2)] {
            assert!(region_matches_ring(n, m), "n={} m={}", n, m);
        }
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(a_h0_h1(1, 0).unwrap(), (4, 0));
        assert_eq!(a_h0_h1(2, 0).unwrap(), (10, 0));
        assert_eq!(a_h0_h1(2, 3).unwrap(), (10, 0));
    }
}
