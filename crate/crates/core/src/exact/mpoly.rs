use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fp::Fp;
use super::ring::{denominator_lcm, numerator_gcd, rat_int, Field, Rat, Ring};
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically, earlier variables heavier.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub type Vars = Arc<[String]>;

/// Variable list shared by all parameter polynomials.
pub fn param_vars() -> Vars {
    thread_local! {
        static VARS: Vars = Arc::from(vec!["rho".to_string(), "theta".to_string()]);
    }
    VARS.with(|v| v.clone())
}

pub fn vars_of(names: &[&str]) -> Vars {
    Arc::from(names.iter().map(|s| s.to_string()).collect::<Vec<_>>())
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Mono, Rat>,
}

impl PartialEq for MPoly {
    fn eq(&self, o: &Self) -> bool {
        if self.vars == o.vars {
            return self.terms == o.terms;
        }
        match (self.as_constant(), o.as_constant()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl MPoly {
    pub fn zero_in(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: &Vars, c: Rat) -> Self {
        let mut p = MPoly::zero_in(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn var_in(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MPoly::zero_in(vars);
        p.terms.insert(Mono(e), rat_int(1));
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = MPoly::zero_in(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variable list");
            p.add_term(Mono(e), c);
        }
        p
    }

    /// The parameter `rho` in the standard two-parameter ring.
    pub fn rho() -> Self {
        MPoly::var_in(&param_vars(), 0)
    }

    /// The parameter `theta` in the standard two-parameter ring.
    pub fn theta() -> Self {
        MPoly::var_in(&param_vars(), 1)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if Zero::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(rat_int(0)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.degree() == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Brings two polynomials onto a common variable list; constants adapt to the other side.
    fn aligned<'a>(&'a self, o: &'a MPoly) -> (std::borrow::Cow<'a, MPoly>, std::borrow::Cow<'a, MPoly>) {
        use std::borrow::Cow;
        if self.vars == o.vars || Arc::ptr_eq(&self.vars, &o.vars) {
            return (Cow::Borrowed(self), Cow::Borrowed(o));
        }
        if let Some(c) = self.as_constant() {
            return (Cow::Owned(MPoly::constant_in(&o.vars, c)), Cow::Borrowed(o));
        }
        if let Some(c) = o.as_constant() {
            return (Cow::Borrowed(self), Cow::Owned(MPoly::constant_in(&self.vars, c)));
        }
        panic!("polynomials over different variable lists: {:?} vs {:?}", self.vars, o.vars);
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if Zero::is_zero(c) {
            return MPoly::zero_in(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> MPoly {
        if Zero::is_zero(c) {
            return MPoly::zero_in(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Rational content, signed so that dividing by it leaves a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn content(&self) -> Rat {
        if self.terms.is_empty() {
            return rat_int(1);
        }
        let l = denominator_lcm(self.terms.values());
        let g = numerator_gcd(self.terms.values().map(|c| c * Rat::from_integer(l.clone())).collect::<Vec<_>>().iter());
        let mut c = Rat::new(g, l);
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        c
    }

    /// Primitive integer normalization with positive leading coefficient.
    pub fn normalize(&self) -> MPoly {
        if self.terms.is_empty() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Exact division, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (a, b) = self.aligned(d);
        let (a, b) = (a.into_owned(), b.into_owned());
        assert!(!b.terms.is_empty(), "division by zero polynomial");
        if let Some(c) = b.as_constant() {
            return Some(a.scale(&c.recip()));
        }
        let (lm, lc) = b.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = a;
        let mut q = MPoly::zero_in(&b.vars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = &c / &lc;
            rem = rem.sub(&b.mul_mono(&qm, &qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    pub fn eval_rat(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut acc = rat_int(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                if *e > 0 {
                    t *= Ring::pow(x, *e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Reduction mod p evaluated at a point; `None` if a coefficient denominator vanishes.
    pub fn eval_fp(&self, point: &[Fp]) -> Option<Fp> {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Fp(0);
        for (m, c) in &self.terms {
            let mut t = Fp::from_rat(c)?;
            for (e, x) in m.0.iter().zip(point) {
                if *e > 0 {
                    t = t.mul(&x.pow(*e));
                }
            }
            acc = acc.add(&t);
        }
        Some(acc)
    }

    /// Substitutes `value` for variable `var`, keeping the variable list.
    pub fn subst_rat(&self, var: usize, value: &Rat) -> MPoly {
        let mut out = MPoly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] = 0;
            out.add_term(Mono(e), c * Ring::pow(value, k));
        }
        out
    }

    /// Coefficients in `var` as polynomials not involving `var`, indexed by degree.
    pub fn to_univariate(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero_in(&self.vars); d + 1];
        if self.terms.is_empty() {
            return out;
        }
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var] as usize;
            e[var] = 0;
            out[k].add_term(Mono(e), c.clone());
        }
        out
    }

    pub fn from_univariate(vars: &Vars, var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero_in(vars);
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in p.terms() {
                let mut e = m.0.clone();
                e[var] += k as u32;
                out.add_term(Mono(e), c.clone());
            }
        }
        out
    }

    /// Integer coefficient view, requiring all coefficients to be integers.
    pub fn integer_coeffs(&self) -> Option<Vec<(Mono, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| if c.is_integer() { Some((m.clone(), c.to_integer())) } else { None })
            .collect()
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            out.add_term(Mono(e), c * rat_int(k as i64));
        }
        out
    }

    /// Sum of terms whose exponent in `var` is minimal (the lowest-order part in that variable).
    pub fn lowest_part_in(&self, var: usize) -> MPoly {
        let k = self.min_degree_in(var);
        let mut out = MPoly::zero_in(&self.vars);
        for (m, c) in &self.terms {
            if m.0[var] == k {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::zero_in(&param_vars())
    }
    fn one() -> Self {
        MPoly::constant_in(&param_vars(), rat_int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let mut out = a.into_owned();
        for (m, c) in b.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let mut out = a.into_owned();
        for (m, c) in b.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        let mut out = MPoly::zero_in(&a.vars);
        if a.terms.is_empty() || b.terms.is_empty() {
            return out;
        }
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn from_i64(v: i64) -> Self {
        MPoly::constant_in(&param_vars(), rat_int(v))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let is_const = m.degree() == 0;
            if !One::is_one(&a) || is_const {
                write!(f, "{}", a)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut fs = true;
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !fs {
                    write!(f, "*")?;
                }
                fs = false;
                write!(f, "{}", self.vars[i])?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

fn pseudo_remainder(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r: Vec<MPoly> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<MPoly> = r.iter().map(|c| c.mul(lb)).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bc.mul(&lr));
        }
        trim(&mut next);
        r = next;
    }
    r
}

fn trim(p: &mut Vec<MPoly>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn uni_is_zero(p: &[MPoly]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn uni_content(p: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero_in(p[0].vars());
    for c in p {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn uni_primitive(p: &[MPoly]) -> Vec<MPoly> {
    let c = uni_content(p);
    p.iter().map(|x| x.div_exact(&c).expect("content divides coefficients")).collect()
}

/// Normalized greatest common divisor over the rationals.
pub fn poly_gcd(p: &MPoly, q: &MPoly) -> MPoly {
    let (p, q) = p.aligned(q);
    let (p, q) = (p.into_owned(), q.into_owned());
    if p.is_zero() {
        return q.normalize();
    }
    if q.is_zero() {
        return p.normalize();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::constant_in(p.vars(), rat_int(1));
    }
    let vars = p.vars().clone();
    let main = (0..vars.len()).find(|&v| p.degree_in(v) > 0 || q.degree_in(v) > 0).unwrap();
    // Monomial factors in the main variable are split off first.
    let pk = p.min_degree_in(main);
    let qk = q.min_degree_in(main);
    let mut up = p.to_univariate(main);
    let mut uq = q.to_univariate(main);
    up.drain(..pk as usize);
    uq.drain(..qk as usize);
    let cp = uni_content(&up);
    let cq = uni_content(&uq);
    let c = poly_gcd(&cp, &cq);
    let mut a = uni_primitive(&up);
    let mut b = uni_primitive(&uq);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            if b[0].is_zero() {
                break;
            }
            a = vec![MPoly::constant_in(&vars, rat_int(1))];
            break;
        }
        let r = pseudo_remainder(&a, &b);
        if uni_is_zero(&r) {
            a = b;
            break;
        }
        a = b;
        b = uni_primitive(&r);
    }
    let g = MPoly::from_univariate(&vars, main, &uni_primitive(&a));
    let mut mono = vec![0; vars.len()];
    mono[main] = pk.min(qk);
    g.mul(&c).mul_mono(&Mono(mono), &rat_int(1)).normalize()
}

/// Least common multiple, normalized.
pub fn poly_lcm(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero_in(p.vars());
    }
    let g = poly_gcd(p, q);
    p.mul(&q.div_exact(&g).expect("gcd divides")).normalize()
}

/// Parses a polynomial written with `+`, `-`, `*`, `^`, integer constants and variable names.
pub fn parse_poly(vars: &Vars, s: &str) -> Result<MPoly> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let p = parse_sum(vars, &toks, &mut pos)?;
    if pos != toks.len() {
        return Err(Error::Parse(format!("trailing input at {} in {:?}", pos, s)));
    }
    Ok(p)
}

fn parse_sum(vars: &Vars, t: &[char], pos: &mut usize) -> Result<MPoly> {
    let mut acc = MPoly::zero_in(vars);
    let mut sign = 1i64;
    if *pos < t.len() && (t[*pos] == '-' || t[*pos] == '+') {
        if t[*pos] == '-' {
            sign = -1;
        }
        *pos += 1;
    }
    loop {
        let term = parse_product(vars, t, pos)?;
        acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
        if *pos < t.len() && (t[*pos] == '+' || t[*pos] == '-') {
            sign = if t[*pos] == '+' { 1 } else { -1 };
            *pos += 1;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(vars: &Vars, t: &[char], pos: &mut usize) -> Result<MPoly> {
    let mut acc = parse_power(vars, t, pos)?;
    while *pos < t.len() && (t[*pos] == '*' || t[*pos] == '(') {
        if t[*pos] == '*' {
            *pos += 1;
        }
        acc = acc.mul(&parse_power(vars, t, pos)?);
    }
    Ok(acc)
}

fn parse_power(vars: &Vars, t: &[char], pos: &mut usize) -> Result<MPoly> {
    let base = parse_atom(vars, t, pos)?;
    if *pos < t.len() && t[*pos] == '^' {
        *pos += 1;
        let start = *pos;
        while *pos < t.len() && t[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let e: u32 = t[start..*pos].iter().collect::<String>().parse().map_err(|_| Error::Parse("bad exponent".into()))?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn parse_atom(vars: &Vars, t: &[char], pos: &mut usize) -> Result<MPoly> {
    if *pos >= t.len() {
        return Err(Error::Parse("unexpected end of input".into()));
    }
    let c = t[*pos];
    if c == '(' {
        *pos += 1;
        let p = parse_sum(vars, t, pos)?;
        if *pos >= t.len() || t[*pos] != ')' {
            return Err(Error::Parse("missing ')'".into()));
        }
        *pos += 1;
        return Ok(p);
    }
    if c.is_ascii_digit() {
        let start = *pos;
        while *pos < t.len() && t[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let n: BigInt = t[start..*pos].iter().collect::<String>().parse().unwrap();
        return Ok(MPoly::constant_in(vars, Rat::from_integer(n)));
    }
    if c.is_alphabetic() {
        let start = *pos;
        while *pos < t.len() && (t[*pos].is_alphanumeric() || t[*pos] == '_') {
            *pos += 1;
        }
        let name: String = t[start..*pos].iter().collect();
        let i = vars.iter().position(|v| *v == name).ok_or_else(|| Error::Parse(format!("unknown variable {}", name)))?;
        return Ok(MPoly::var_in(vars, i));
    }
    Err(Error::Parse(format!("unexpected character {:?}", c)))
}

impl MPoly {
    /// Evaluates every coefficient's field image; convenience for `Field` targets.
    pub fn eval_in<F: Field>(&self, point: &[F], embed: impl Fn(&Rat) -> F) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (e, x) in m.0.iter().zip(point) {
                if *e > 0 {
                    t = t.mul(&x.pow(*e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        parse_poly(&param_vars(), s).unwrap()
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        assert_eq!(poly_gcd(&p("rho^2-1"), &p("rho-1")), p("rho-1"));
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        assert_eq!(poly_gcd(&MPoly::zero(), &p("theta+1")), p("theta+1"));
        assert_eq!(poly_gcd(&p("-2*theta-2"), &MPoly::zero()), p("theta+1"));
    }

    #[test]
    fn gcd_of_constructed_products() {
        let common = p("rho*theta+1");
        let a = common.mul(&p("rho-theta"));
        let b = common.mul(&p("theta+1"));
        assert_eq!(poly_gcd(&a, &b), common);
    }

    #[test]
    fn gcd_with_monomial_factors() {
        let a = p("rho^2*theta^3*(rho+theta)");
        let b = p("rho*theta^5*(rho+theta)^2*(rho-1)");
        assert_eq!(poly_gcd(&a, &b), p("rho*theta^3*(rho+theta)"));
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        assert!(p("rho^2+1").div_exact(&p("rho+1")).is_none());
        assert_eq!(p("rho^2-1").div_exact(&p("rho+1")).unwrap(), p("rho-1"));
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let q = p("3*rho^2*theta - 2*theta + 7");
        assert_eq!(p(&q.to_string()), q);
    }

    #[test]
    fn normalization_is_idempotent() {
        let q = p("-4*rho^2 + 6*theta").scale(&super::super::ring::rat(1, 3));
        let n = q.normalize();
        assert_eq!(n, p("2*rho^2 - 3*theta"));
        assert_eq!(n.normalize(), n);
    }
}
