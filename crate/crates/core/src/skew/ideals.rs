use crate::error::{Error, Result};
use crate::exact::{EchelonBasis, Field, Rat, Ring};
use crate::surface::BiForm;

use super::ring::{unit, Linear, PieceTable, SkewRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyReport {
    pub n: usize,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    /// Every expected syzygy maps to zero.
    pub expected_in_kernel: bool,
}

impl SyzygyReport {
    pub fn matches(&self) -> bool {
        self.expected_in_kernel && self.kernel_dim == self.expected_dim
    }
}

fn concat<F: Ring>(a: &BiForm<F>, b: &BiForm<F>) -> Vec<F> {
    let mut v = a.coeffs().to_vec();
    v.extend_from_slice(b.coeffs());
    v
}

/// Degree-n syzygies of a pair of degree-one elements.
///
/// Right side: pairs (x, y) of degree n with a x + b y = 0; left side: x a + y b = 0.
/// `expected` lists degree-one generator pairs of the expected syzygy module,
/// which is compared with the kernel in degree n.
pub fn syzygy_kernel<F: Field>(
    table: &mut PieceTable<F>,
    pair: (&Linear<F>, &Linear<F>),
    n: usize,
    side: Side,
    expected: &[(Linear<F>, Linear<F>)],
) -> SyzygyReport {
    let basis = table.piece(n, 0).basis();
    let (a, b) = pair;
    let ring = table.ring();
    let apply = |ring: &mut SkewRing<F>, x: &BiForm<F>, c: &Linear<F>| -> BiForm<F> {
        match side {
            Side::Right => {
                let l = ring.linear(0, c);
                let shifted = ring.twist(x, 1);
                l.mul(&shifted)
            }
            Side::Left => {
                let l = ring.linear(n, c);
                x.mul(&l)
            }
        }
    };
    let mut images = Vec::new();
    for x in &basis {
        images.push(apply(ring, x, a));
    }
    for y in &basis {
        images.push(apply(ring, y, b));
    }
    let width = images[0].len();
    let mut span = EchelonBasis::new(width);
    for im in &images {
        span.insert(im.coeffs());
    }
    let kernel_dim = 2 * basis.len() - span.rank();

    let mut exp_span = None::<EchelonBasis<F>>;
    let mut in_kernel = true;
    if n >= 1 {
        let lower = table.piece(n - 1, 0).basis();
        let ring = table.ring();
        for (g1, g2) in expected {
            for c in &lower {
                let (x, y) = match side {
                    Side::Right => {
                        let s = ring.twist(c, 1);
                        (ring.linear(0, g1).mul(&s), ring.linear(0, g2).mul(&s))
                    }
                    Side::Left => (c.mul(&ring.linear(n - 1, g1)), c.mul(&ring.linear(n - 1, g2))),
                };
                let total = apply(ring, &x, a).add(&apply(ring, &y, b));
                if !total.is_zero() {
                    in_kernel = false;
                }
                let v = concat(&x, &y);
                exp_span.get_or_insert_with(|| EchelonBasis::new(v.len())).insert(&v);
            }
        }
    }
    let expected_dim = exp_span.map(|e| e.rank()).unwrap_or(0);
    SyzygyReport { n, kernel_dim, expected_dim, expected_in_kernel: in_kernel }
}

/// The syzygy pairs checked at the degenerate parameter value, with the
/// generators of their expected modules on each side.
pub fn standard_syzygies<F: Ring>(side: Side) -> Vec<((usize, usize), Vec<(Linear<F>, Linear<F>)>)> {
    let neg = |k: usize| -> Linear<F> {
        let mut u: Linear<F> = unit(k);
        u[k] = F::one().neg();
        u
    };
    match side {
        Side::Right => vec![
            ((0, 1), vec![(unit(1), neg(2))]),
            ((2, 3), vec![(unit(1), neg(2))]),
            ((0, 2), vec![(unit(2), neg(0)), (unit(3), neg(1))]),
            ((1, 3), vec![(unit(2), neg(0)), (unit(3), neg(1))]),
        ],
        Side::Left => vec![
            ((0, 1), vec![(unit(3), neg(0))]),
            ((2, 3), vec![(unit(3), neg(0))]),
            ((0, 2), vec![(unit(2), neg(0)), (unit(3), neg(1))]),
            ((1, 3), vec![(unit(2), neg(0)), (unit(3), neg(1))]),
        ],
    }
}

/// Decides whether `element` (degree n, twist 0) lies in the right ideal
/// generated by `generators` (pairs of form and degree), in degree n.
pub fn ideal_membership<F: Field>(
    table: &mut PieceTable<F>,
    element: &BiForm<F>,
    n: usize,
    generators: &[(BiForm<F>, usize)],
) -> Result<bool> {
    let bd = SkewRing::<F>::bidegree(n, 0);
    if element.bidegree() != bd {
        return Err(Error::DegreeMismatch(format!("element has bidegree {:?}, degree {} needs {:?}", element.bidegree(), n, bd)));
    }
    let width = element.len();
    let mut span = EchelonBasis::new(width);
    for (g, d) in generators {
        if *d > n || g.bidegree() != SkewRing::<F>::bidegree(*d, 0) {
            return Err(Error::DegreeMismatch(format!("generator of degree {} does not fit degree {}", d, n)));
        }
        let basis = table.piece(n - d, *d).basis();
        for c in &basis {
            span.insert(g.mul(c).coeffs());
        }
    }
    Ok(span.contains(element.coeffs()))
}

/// At the degenerate parameter value, the element u^a v^b t^n as a cleared form.
pub fn monomial_element(a: usize, b: usize, n: usize) -> Result<BiForm<Rat>> {
    let (da, db) = SkewRing::<Rat>::bidegree(n, 0);
    if a > da || b > db {
        return Err(Error::DegreeMismatch(format!("u^{} v^{} is not a section in degree {}", a, b, n)));
    }
    Ok(BiForm::monomial(da, db, a, b, crate::exact::rat_int(1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub n: usize,
    pub in_ideal: bool,
}

/// For each n in 2..=max_n, whether u v^(2n-1) t^n lies in the right ideal
/// generated by the same elements of lower degree.
pub fn non_noetherian_witness(max_n: usize) -> Result<Vec<WitnessRow>> {
    let mut table = PieceTable::new(crate::params::Params::<Rat>::tau_one());
    let mut out = Vec::new();
    for n in 2..=max_n {
        let gens: Vec<(BiForm<Rat>, usize)> =
            (1..n).map(|k| monomial_element(1, 2 * k - 1, k).map(|f| (f, k))).collect::<Result<_>>()?;
        let el = monomial_element(1, 2 * n - 1, n)?;
        out.push(WitnessRow { n, in_ideal: ideal_membership(&mut table, &el, n, &gens)? });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Params;

    fn tau_one_table() -> PieceTable<Rat> {
        PieceTable::new(Params::<Rat>::tau_one())
    }

    #[test]
    fn right_syzygies_of_first_pair() {
        let mut t = tau_one_table();
        let exp = &standard_syzygies::<Rat>(Side::Right)[0].1;
        let r0 = syzygy_kernel(&mut t, (&unit(0), &unit(1)), 0, Side::Right, exp);
        assert_eq!(r0.kernel_dim, 0);
        let r1 = syzygy_kernel(&mut t, (&unit(0), &unit(1)), 1, Side::Right, exp);
        assert_eq!((r1.kernel_dim, r1.expected_dim), (1, 1));
        assert!(r1.matches());
    }

    #[test]
    fn right_syzygies_of_second_pair() {
        let mut t = tau_one_table();
        let exp = &standard_syzygies::<Rat>(Side::Right)[2].1;
        let r = syzygy_kernel(&mut t, (&unit(0), &unit(2)), 1, Side::Right, exp);
        assert_eq!(r.kernel_dim, 2);
        assert!(r.matches());
    }

    #[test]
    fn membership_examples() {
        let mut t = tau_one_table();
        let uv = monomial_element(1, 1, 1).unwrap();
        assert!(ideal_membership(&mut t, &uv, 1, &[(BiForm::monomial(0, 0, 0, 0, crate::exact::rat_int(1)), 0)]).unwrap());
        let el = monomial_element(1, 3, 2).unwrap();
        assert!(!ideal_membership(&mut t, &el, 2, &[(uv.clone(), 1)]).unwrap());
        let rows = non_noetherian_witness(3).unwrap();
        assert!(rows.iter().all(|r| !r.in_ideal));
    }

    #[test]
    fn degree_mismatch() {
        let mut t = tau_one_table();
        let el = monomial_element(1, 1, 1).unwrap();
        assert!(matches!(ideal_membership(&mut t, &el, 2, &[]), Err(Error::DegreeMismatch(_))));
    }
}
