//! The length-four complex built from the generators and auxiliary elements,
//! its dual, and their degreewise homology.

use crate::error::{Error, Result};
use crate::exact::{EchelonBasis, Field, Fp, MPoly, Rat, Ring};
use crate::params::{Mode, Params, Sample};
use crate::skew::relations::sym_value;
use crate::skew::{Linear, PieceTable, SkewRing, Sym};
use crate::surface::{binom, BiForm};

/// A matrix of degree-one entries (or zeros).
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Option<Sym>>,
}

impl SymMatrix {
    fn from_rows(rows: Vec<Vec<Option<Sym>>>) -> Self {
        let cols = rows[0].len();
        SymMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Sym> {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Option<Sym>) {
        self.entries[i * self.cols + j] = s;
    }
}

/// The four maps, from the last term to the first: M, N, P, Q.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedComplex {
    pub m: SymMatrix,
    pub n: SymMatrix,
    pub p: SymMatrix,
    pub q: SymMatrix,
}

/// Ranks of the free terms, from degree 0 to degree 4.
pub const TERM_RANKS: [usize; 5] = [1, 4, 6, 4, 1];

impl GradedComplex {
    pub fn standard() -> Self {
        let z = |k: usize| Some(Sym::Z(k - 1));
        let r = |k: usize| Some(Sym::R(k - 1));
        let o = None;
        GradedComplex {
            m: SymMatrix::from_rows(vec![vec![o], vec![o], vec![z(9)], vec![z(10)]]),
            n: SymMatrix::from_rows(vec![
                vec![z(9), o, o, o],
                vec![z(10), o, o, o],
                vec![o, z(9), o, o],
                vec![o, z(10), o, o],
                vec![o, o, z(1), z(3)],
                vec![o, o, z(2), z(4)],
            ]),
            p: SymMatrix::from_rows(vec![
                vec![z(1), z(3), o, o, z(5), z(7)],
                vec![o, o, z(1), z(3), o, o],
                vec![z(2), z(4), o, o, o, o],
                vec![o, o, z(2), z(4), z(6), z(8)],
            ]),
            q: SymMatrix::from_rows(vec![vec![r(1), r(2), r(3), r(4)]]),
        }
    }

    /// Maps in homological order: the map out of term i (i = 1..4) is `maps()[i - 1]`.
    pub fn maps(&self) -> [&SymMatrix; 4] {
        [&self.q, &self.p, &self.n, &self.m]
    }
}

/// Expands the product of two matrices entrywise and returns the first nonzero
/// entry as `(row, col, residue)`.
fn product_residue<C: Ring>(ring: &mut SkewRing<C>, a: &SymMatrix, b: &SymMatrix) -> Option<(usize, usize, BiForm<C>)> {
    let params = ring.params().clone();
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = BiForm::zero(2, 3);
            for k in 0..a.cols {
                if let (Some(x), Some(y)) = (a.get(i, k), b.get(k, j)) {
                    let w = ring.word(&[sym_value(&params, x), sym_value(&params, y)], 0);
                    acc = acc.add(&w);
                }
            }
            if !acc.is_zero() {
                return Some((i, j, acc));
            }
        }
    }
    None
}

/// Checks QP = PN = NM = 0 by exact expansion. Errors carry the identity index
/// (1 for QP, 2 for PN, 3 for NM).
pub fn verify_identities<C: Ring>(params: &Params<C>, cx: &GradedComplex) -> Result<()> {
    let mut ring = SkewRing::new(params.clone());
    for (k, (a, b)) in [(&cx.q, &cx.p), (&cx.p, &cx.n), (&cx.n, &cx.m)].into_iter().enumerate() {
        if let Some((i, j, v)) = product_residue(&mut ring, a, b) {
            return Err(Error::RelationFailed {
                index: k + 1,
                residue: format!("entry ({}, {}) has {} nonzero coefficients", i + 1, j + 1, v.terms().count()),
            });
        }
    }
    Ok(())
}

/// Builds the standard complex and checks its identities exactly for a mode.
pub fn build_complex(mode: &Mode) -> Result<GradedComplex> {
    let cx = GradedComplex::standard();
    match mode.rational_point() {
        None => verify_identities(&Params::<MPoly>::symbolic(), &cx)?,
        Some((r, t)) => verify_identities(&Params::<Rat>::from_point(&r, &t), &cx)?,
    }
    Ok(cx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub n: usize,
    /// Dimensions of the degree-n pieces of terms 0..=4.
    pub dims: [usize; 5],
    /// Ranks of the maps out of terms 1..=4.
    pub ranks: [usize; 4],
    /// Homology at terms 0..=4; term 0 is augmented by the field in degree 0.
    pub homology: [usize; 5],
}

impl DegreeReport {
    pub fn exact(&self) -> bool {
        self.homology.iter().all(|&h| h == 0)
    }
}

/// Graded pieces and multiplication data over a field.
pub struct Evaluator<F> {
    table: PieceTable<F>,
    params: Params<F>,
}

impl<F: Field> Evaluator<F> {
    pub fn new(params: Params<F>) -> Self {
        Evaluator { table: PieceTable::new(params.clone()), params }
    }

    pub fn dim(&mut self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.table.dim(d as usize, 0)
        }
    }

    fn basis(&mut self, d: i64) -> Vec<BiForm<F>> {
        if d < 0 {
            Vec::new()
        } else {
            self.table.piece(d as usize, 0).basis()
        }
    }

    fn entry(&self, s: Sym) -> Linear<F> {
        sym_value(&self.params, s)
    }

    /// Rank of the left-multiplication map given by `mat` from columns of
    /// degree-d elements to columns of degree-(d+1) elements.
    pub fn left_rank(&mut self, mat: &SymMatrix, d: i64) -> usize {
        let basis = self.basis(d);
        if basis.is_empty() {
            return 0;
        }
        let width_one = SkewRing::<F>::bidegree(d as usize + 1, 0);
        let width_one = (width_one.0 + 1) * (width_one.1 + 1);
        let mut span = EchelonBasis::new(width_one * mat.rows);
        let lin: Vec<Vec<Option<BiForm<F>>>> = (0..mat.rows)
            .map(|i| (0..mat.cols).map(|j| mat.get(i, j).map(|s| { let c = self.entry(s); self.table.ring().linear(0, &c) })).collect())
            .collect();
        for a in &basis {
            let shifted = self.table.ring().twist(a, 1);
            for j in 0..mat.cols {
                let mut v = Vec::with_capacity(width_one * mat.rows);
                for row in &lin {
                    match &row[j] {
                        Some(l) => v.extend_from_slice(l.mul(&shifted).coeffs()),
                        None => v.extend(std::iter::repeat_n(F::zero(), width_one)),
                    }
                }
                span.insert(&v);
            }
        }
        span.rank()
    }

    /// Rank of the right-multiplication map given by `mat` from rows of
    /// degree-d elements to rows of degree-(d+1) elements.
    pub fn right_rank(&mut self, mat: &SymMatrix, d: i64) -> usize {
        let basis = self.basis(d);
        if basis.is_empty() {
            return 0;
        }
        let d = d as usize;
        let bd = SkewRing::<F>::bidegree(d + 1, 0);
        let width_one = (bd.0 + 1) * (bd.1 + 1);
        let mut span = EchelonBasis::new(width_one * mat.cols);
        let lin: Vec<Vec<Option<BiForm<F>>>> = (0..mat.rows)
            .map(|i| (0..mat.cols).map(|j| mat.get(i, j).map(|s| { let c = self.entry(s); self.table.ring().linear(d, &c) })).collect())
            .collect();
        for x in &basis {
            for row in &lin {
                let mut v = Vec::with_capacity(width_one * mat.cols);
                for e in row {
                    match e {
                        Some(l) => v.extend_from_slice(x.mul(l).coeffs()),
                        None => v.extend(std::iter::repeat_n(F::zero(), width_one)),
                    }
                }
                span.insert(&v);
            }
        }
        span.rank()
    }

    /// Degree-n homology of the complex of right modules.
    pub fn primal_report(&mut self, cx: &GradedComplex, n: usize) -> DegreeReport {
        let n = n as i64;
        let mut dims = [0usize; 5];
        for (i, d) in dims.iter_mut().enumerate() {
            *d = TERM_RANKS[i] * self.dim(n - i as i64);
        }
        let mut ranks = [0usize; 4];
        for (i, mat) in cx.maps().iter().enumerate() {
            // map out of term i+1: entries of degree n - i - 1
            ranks[i] = self.left_rank(mat, n - i as i64 - 1);
        }
        let mut homology = [0usize; 5];
        let aug = if n == 0 { 1 } else { 0 };
        homology[0] = dims[0] - ranks[0] - aug;
        for i in 1..5 {
            let out = ranks[i - 1];
            let inc = if i < 4 { ranks[i] } else { 0 };
            homology[i] = dims[i] - out - inc;
        }
        DegreeReport { n: n as usize, dims, ranks, homology }
    }
}

fn evaluator_for(mode: &Mode, seed: u64, bound: usize) -> Result<Evaluator<Fp>> {
    Ok(Evaluator::new(Sample::for_mode(mode, seed, bound)?.params()))
}

/// Default degree window for a mode.
pub fn default_window(mode: &Mode) -> usize {
    if mode.is_tau_one() {
        6
    } else {
        4
    }
}

fn check_window(n: usize, mode: &Mode) -> Result<()> {
    let bound = crate::skew::default_bound(mode);
    if n + 1 > bound + 1 {
        return Err(Error::BoundExceeded { what: "degree", value: n, bound });
    }
    Ok(())
}

/// Degree-n report of the complex at the evaluation point of the mode. Ranks at a
/// point are lower bounds, so zero homology there certifies exactness.
pub fn exactness_in_degree(n: usize, mode: &Mode, seed: u64) -> Result<DegreeReport> {
    check_window(n, mode)?;
    let cx = build_complex(mode)?;
    Ok(evaluator_for(mode, seed, n + 1)?.primal_report(&cx, n))
}

/// The same report for the ring with inverted parameters.
pub fn exactness_inverted(n: usize, mode: &Mode, seed: u64) -> Result<DegreeReport> {
    check_window(n, mode)?;
    let cx = GradedComplex::standard();
    let params = Sample::for_mode(mode, seed, n + 1)?.params().inverted();
    Ok(Evaluator::new(params).primal_report(&cx, n))
}

/// Alternating sum of the term dimensions when each piece has dimension C(n+3, 3).
pub fn euler_characteristic(n: usize) -> i64 {
    (0..5).map(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let d = n as i64 - i as i64;
        let c = if d < 0 { 0 } else { binom(d + 3, 3) };
        sign * TERM_RANKS[i] as i64 * c
    }).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRow {
    /// Ring degree of the middle term.
    pub n: usize,
    /// Values at the evaluation point, for i = 0..=4.
    pub dims: [usize; 5],
    /// Certified lower bound for the fourth group in this degree.
    pub ext4_lower: usize,
}

/// Homology of the dual complex (rows, right multiplication). Ext^i in ring degree n is
/// the homology at term i with entries of degree n, between degrees n - 1 and n + 1.
pub fn ext_dimensions(max_n: usize, mode: &Mode, seed: u64) -> Result<Vec<ExtRow>> {
    check_window(max_n, mode)?;
    let cx = build_complex(mode)?;
    let mut ev = evaluator_for(mode, seed, max_n + 1)?;
    let maps = [&cx.q, &cx.p, &cx.n, &cx.m];
    let mut out = Vec::new();
    for n in 0..=max_n {
        let n_i = n as i64;
        let mut dims = [0usize; 5];
        for (i, slot) in dims.iter_mut().enumerate() {
            let size = TERM_RANKS[i] * ev.dim(n_i);
            let out_rank = if i < 4 { ev.right_rank(maps[i], n_i) } else { 0 };
            let in_rank = if i > 0 { ev.right_rank(maps[i - 1], n_i - 1) } else { 0 };
            *slot = size - out_rank - in_rank;
        }
        let ext4_lower = quotient_lower_bound(&mut ev, n)?;
        out.push(ExtRow { n, dims, ext4_lower });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub n: usize,
    /// Value at the evaluation point; an upper bound.
    pub dim: usize,
    /// dim R_n - 2 dim R_(n-1) + rank of the known syzygies; a lower bound.
    pub lower: usize,
}

impl QuotientRow {
    pub fn exact(&self) -> bool {
        self.dim == self.lower
    }
}

fn z_row() -> SymMatrix {
    SymMatrix::from_rows(vec![vec![Some(Sym::Z(8))], vec![Some(Sym::Z(9))]])
}

/// Lower bound for dim (R / (R z9 + R z10))_n from the syzygies
/// (c z1 + c' z2, c z3 + c' z4), c, c' of degree n - 2.
fn quotient_lower_bound<F: Field>(ev: &mut Evaluator<F>, n: usize) -> Result<usize> {
    let n = n as i64;
    let syz = SymMatrix::from_rows(vec![vec![Some(Sym::Z(0)), Some(Sym::Z(2))], vec![Some(Sym::Z(1)), Some(Sym::Z(3))]]);
    let known = ev.right_rank(&syz, n - 2);
    let v = ev.dim(n) as i64 - 2 * ev.dim(n - 1) as i64 + known as i64;
    Ok(v.max(0) as usize)
}

/// Hilbert function of R / (R z9 + R z10) in degrees 0..=max_n.
pub fn quotient_hilbert(max_n: usize, mode: &Mode, seed: u64) -> Result<Vec<QuotientRow>> {
    check_window(max_n, mode)?;
    build_complex(mode)?;
    let mut ev = evaluator_for(mode, seed, max_n + 1)?;
    let zs = z_row();
    let mut out = Vec::new();
    for n in 0..=max_n {
        let image = ev.right_rank(&zs, n as i64 - 1);
        let dim = ev.dim(n as i64) - image;
        let lower = quotient_lower_bound(&mut ev, n)?;
        out.push(QuotientRow { n, dim, lower });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold() {
        build_complex(&Mode::Generic).unwrap();
        build_complex(&Mode::TauOne).unwrap();
    }

    #[test]
    fn corrupted_p_fails_on_qp() {
        let mut cx = GradedComplex::standard();
        cx.p.set(0, 4, Some(Sym::Z(5)));
        cx.p.set(3, 4, Some(Sym::Z(4)));
        let err = verify_identities(&Params::<MPoly>::symbolic(), &cx).unwrap_err();
        assert!(matches!(err, Error::RelationFailed { index: 1, .. }), "{:?}", err);
    }

    #[test]
    fn tau_one_entries_are_generator_multiples() {
        // at the degenerate value z9 = 4 u t and z10 = -4 v t
        let p = Params::<Rat>::tau_one();
        let z9 = sym_value(&p, Sym::Z(8));
        let z10 = sym_value(&p, Sym::Z(9));
        assert_eq!(z9.iter().filter(|c| !Ring::is_zero(*c)).count(), 1);
        assert_eq!(z10.iter().filter(|c| !Ring::is_zero(*c)).count(), 1);
    }

    #[test]
    fn exact_in_low_degrees() {
        for n in 0..=3 {
            let r = exactness_in_degree(n, &Mode::Generic, 2).unwrap();
            assert!(r.exact(), "{:?}", r);
        }
        let r2 = exactness_in_degree(2, &Mode::Generic, 2).unwrap();
        // kernel of Q in degree 2 is 16 - 10 = 6, the image of P
        assert_eq!(r2.ranks[1], 6);
    }

    #[test]
    fn euler() {
        assert_eq!(euler_characteristic(0), 1);
        for n in 1..=8 {
            assert_eq!(euler_characteristic(n), 0);
        }
    }

    #[test]
    fn quotient_low_degrees() {
        let rows = quotient_hilbert(2, &Mode::Generic, 4).unwrap();
        assert_eq!((rows[0].dim, rows[0].lower), (1, 1));
        assert_eq!((rows[1].dim, rows[1].lower), (2, 2));
        assert!(rows[2].lower >= 3);
        // regression value
        assert_eq!((rows[2].dim, rows[2].lower), (4, 4));
    }

    #[test]
    fn ext_low_groups_vanish() {
        let rows = ext_dimensions(2, &Mode::TauOne, 0).unwrap();
        for r in &rows {
            assert_eq!((r.dims[0], r.dims[1]), (0, 0), "{:?}", r);
        }
    }
}

