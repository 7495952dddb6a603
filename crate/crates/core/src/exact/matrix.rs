use super::mpoly::{poly_lcm, MPoly};
use super::ring::{Field, Ring};
use super::scalar::Scalar;

/// Dense row-major matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<C> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C>,
}

pub type ScalarMatrix = Matrix<Scalar>;

impl<C: Ring> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Matrix<D>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }
}

/// Vector space spanned incrementally, kept in semi-echelon form.
///
/// Each stored row has a pivot column with entry one, and rows added later
/// vanish at all earlier pivots; reduction against the rows in order gives a
/// canonical representative modulo the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F> {
    width: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(width: usize) -> Self {
        EchelonBasis { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x = x.sub(&c.mul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns true when the rank grows.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in r.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` in terms of the stored rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let mut v = v.to_vec();
        let mut coords = vec![F::zero(); self.rows.len()];
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x = x.sub(&c.mul(r));
                }
            }
            coords[k] = c;
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Rank over a field by Gaussian elimination.
pub fn rank_of<F: Field>(rows: &[Vec<F>]) -> usize {
    let Some(w) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut b = EchelonBasis::new(w);
    for r in rows {
        b.insert(r);
        if b.rank() == w {
            break;
        }
    }
    b.rank()
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn determinant(rows: &[Vec<MPoly>]) -> MPoly {
    let n = rows.len();
    let mut a: Vec<Vec<MPoly>> = rows.to_vec();
    let mut prev = MPoly::one();
    let mut sign = false;
    for c in 0..n {
        assert_eq!(a[c].len(), n, "determinant of a non-square matrix");
        let best = (c..n).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].num_terms());
        let Some(p) = best else { return MPoly::zero() };
        if p != c {
            a.swap(c, p);
            sign = !sign;
        }
        let piv = a[c][c].clone();
        for i in c + 1..n {
            let f = a[i][c].clone();
            for j in c + 1..n {
                let v = piv.mul(&a[i][j]).sub(&f.mul(&a[c][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = MPoly::zero();
        }
        prev = piv;
    }
    if n == 0 {
        return MPoly::one();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Rank and kernel basis of a matrix over the parameter function field.
///
/// Rows are cleared to polynomial numerators and eliminated fraction-free
/// (Bareiss), choosing the pivot with the fewest terms; the kernel is then read
/// off by back substitution in the field.
pub fn rank_and_kernel(m: &ScalarMatrix) -> (usize, Vec<Vec<Scalar>>) {
    let mut a: Vec<Vec<MPoly>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let mut l = MPoly::one();
            for s in row {
                if !s.is_zero() {
                    l = poly_lcm(&l, s.denom());
                }
            }
            row.iter().map(|s| if s.is_zero() { MPoly::zero() } else { s.numer().mul(&l.div_exact(s.denom()).unwrap()) }).collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = MPoly::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].num_terms());
        let Some(p) = best else { continue };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c + 1..cols {
                let v = piv.mul(&a[i][j]).sub(&f.mul(&a[r][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = MPoly::zero();
        }
        prev = piv;
        pivot_cols.push(c);
        r += 1;
    }
    let rank = pivot_cols.len();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut kernel = Vec::new();
    for &f in &free {
        let mut x = vec![Scalar::zero(); cols];
        x[f] = Scalar::one();
        for k in (0..rank).rev() {
            let pc = pivot_cols[k];
            let mut acc = Scalar::zero();
            for j in pc + 1..cols {
                if !a[k][j].is_zero() && !x[j].is_zero() {
                    acc = acc.add(&Scalar::from_poly(a[k][j].clone()).mul(&x[j]));
                }
            }
            x[pc] = acc.neg().div(&Scalar::from_poly(a[k][pc].clone()));
        }
        kernel.push(x);
    }
    (rank, kernel)
}
