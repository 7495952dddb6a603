use crate::error::{Error, Result};
use crate::exact::{determinant, rat_int, MPoly, Mono, Rat, Ring};

use super::points::orbit_sequence;

/// Exponents `(i, j)` of `x^i y^(m-i) z^j w^(s-j)` in increasing order: higher
/// z-power first, then higher x-power.
pub fn monomial_order(m: usize, s: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity((m + 1) * (s + 1));
    for j in (0..=s).rev() {
        for i in (0..=m).rev() {
            out.push((i, j));
        }
    }
    out
}

/// Order on parameter monomials: theta-degree first, then rho-degree.
pub fn param_key(m: &Mono) -> (u32, u32) {
    (m.0[1], m.0[0])
}

/// The lowest term of a polynomial under [`param_key`].
pub fn lowest_term(p: &MPoly) -> Option<(Mono, Rat)> {
    p.terms().min_by_key(|(m, _)| param_key(m)).map(|(m, c)| (m.clone(), c.clone()))
}

#[derive(Clone, Debug)]
pub struct CritDensReport {
    pub m: usize,
    pub s: usize,
    pub indices: Vec<usize>,
    pub determinant: MPoly,
    /// Product of the lowest terms of the diagonal entries, with its sign.
    pub expected_lowest: (Mono, Rat),
    pub lowest: Option<(Mono, Rat)>,
}

impl CritDensReport {
    pub fn nonzero(&self) -> bool {
        !self.determinant.is_zero()
    }

    pub fn lowest_matches(&self) -> bool {
        self.lowest.as_ref() == Some(&self.expected_lowest)
    }
}

/// Matrix whose entry (i, j) is the i-th monomial of bidegree (m, s) evaluated
/// at orbit point `indices[j]` in round coordinates `(p, q)(theta^n, 1)`.
pub fn critdens_matrix(m: usize, s: usize, indices: &[usize]) -> Result<Vec<Vec<MPoly>>> {
    let n = (m + 1) * (s + 1);
    if indices.len() != n {
        return Err(Error::BadIndexList(format!("expected {} indices, got {}", n, indices.len())));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadIndexList(format!("indices {:?} are not strictly increasing", indices)));
    }
    let top = *indices.last().unwrap();
    let seq = orbit_sequence(top, &MPoly::rho(), &MPoly::theta());
    let order = monomial_order(m, s);
    let mut rows = vec![Vec::with_capacity(n); n];
    for &k in indices {
        let (p, q, t) = &seq[k];
        for (r, &(i, j)) in order.iter().enumerate() {
            rows[r].push(p.pow(i as u32).mul(&q.pow((m - i) as u32)).mul(&t.pow(j as u32)));
        }
    }
    Ok(rows)
}

/// Determinant of the critical-density matrix together with its lowest-term certificate.
pub fn critdens_determinant(m: usize, s: usize, indices: &[usize]) -> Result<CritDensReport> {
    let rows = critdens_matrix(m, s, indices)?;
    let det = determinant(&rows);
    let order = monomial_order(m, s);
    let mut rho_exp = 0u32;
    let mut theta_exp = 0u32;
    let mut sign = 1i64;
    for (&(i, j), &k) in order.iter().zip(indices) {
        rho_exp += (i * k) as u32;
        theta_exp += (j * k) as u32;
        if (m - i) % 2 == 1 {
            sign = -sign;
        }
    }
    Ok(CritDensReport {
        m,
        s,
        indices: indices.to_vec(),
        lowest: lowest_term(&det),
        determinant: det,
        expected_lowest: (Mono(vec![rho_exp, theta_exp]), rat_int(sign)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{param_vars, parse_poly};

    #[test]
    fn one_by_one() {
        let r = critdens_determinant(0, 0, &[0]).unwrap();
        assert_eq!(r.determinant, MPoly::one());
        assert!(r.lowest_matches());
    }

    #[test]
    fn two_by_two_factors() {
        let r = critdens_determinant(1, 0, &[0, 1]).unwrap();
        let expected = parse_poly(&param_vars(), "-(1-rho)*(1-theta)").unwrap();
        assert_eq!(r.determinant, expected);
        assert!(r.lowest_matches());
    }

    #[test]
    fn bad_indices() {
        assert!(matches!(critdens_determinant(1, 0, &[1, 0]), Err(Error::BadIndexList(_))));
        assert!(matches!(critdens_determinant(1, 1, &[0, 1, 2]), Err(Error::BadIndexList(_))));
    }

    #[test]
    fn order_starts_and_ends_correctly() {
        let o = monomial_order(2, 1);
        assert_eq!(o.first(), Some(&(2, 1)));
        assert_eq!(o.last(), Some(&(0, 0)));
    }
}
