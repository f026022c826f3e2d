//! Homogeneous polynomials in `n_vars` variables and the graded-lex monomial bases.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u16>;

const BINOM_MAX: usize = 256;

fn binom_table() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![vec![0u64; BINOM_MAX + 1]; BINOM_MAX + 1];
        for n in 0..=BINOM_MAX {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(t[n - 1][k]);
            }
        }
        t
    })
}

/// Binomial coefficient for small arguments; zero outside `0 ≤ k ≤ n`.
#[inline]
pub fn binom(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    if (n as usize) <= BINOM_MAX {
        return binom_table()[n as usize][k as usize];
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// dim R_d for R a polynomial ring in `n_vars` variables.
#[inline]
pub fn monomial_count(n_vars: usize, d: i64) -> usize {
    if d < 0 || n_vars == 0 {
        return usize::from(d == 0 && n_vars == 0);
    }
    binom(n_vars as i64 - 1 + d, d) as usize
}

/// All exponent vectors of total degree `d`, lexicographically descending
/// (`x0^d` first). Within one degree this is the graded-lex order.
pub fn monomial_basis(n_vars: usize, d: i64) -> Vec<Exponents> {
    let mut out = Vec::with_capacity(monomial_count(n_vars, d));
    if d < 0 || n_vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u16; n_vars];
    fill_basis(&mut cur, 0, d as u16, &mut out);
    out
}

fn fill_basis(cur: &mut [u16], pos: usize, left: u16, out: &mut Vec<Exponents>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.to_vec());
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill_basis(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

/// Position of `e` in `monomial_basis(e.len(), |e|)`.
#[inline]
pub fn monomial_index(e: &[u16]) -> usize {
    let k = e.len();
    let mut left: i64 = e.iter().map(|&x| x as i64).sum();
    let mut idx = 0u64;
    for (i, &ei) in e.iter().enumerate().take(k.saturating_sub(1)) {
        let m = (k - i - 1) as i64;
        idx += binom(left - ei as i64 - 1 + m, m);
        left -= ei as i64;
    }
    idx as usize
}

/// Inverse of [`monomial_index`].
pub fn monomial_at(n_vars: usize, d: i64, mut idx: usize) -> Exponents {
    let mut e = vec![0u16; n_vars];
    let mut left = d;
    for i in 0..n_vars.saturating_sub(1) {
        let m = (n_vars - i - 1) as i64;
        // exponents are tried from `left` downwards; each choice x covers
        // monomial_count(m, left - x) slots
        let mut x = left;
        loop {
            let block = binom(left - x + m - 1, m - 1) as usize;
            if idx < block {
                break;
            }
            idx -= block;
            x -= 1;
        }
        e[i] = x as u16;
        left -= x;
    }
    if n_vars > 0 {
        e[n_vars - 1] = left as u16;
    }
    e
}

/// A homogeneous polynomial. The zero polynomial keeps a nominal degree.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly<F: Field> {
    n_vars: usize,
    degree: i64,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Field> HomogPoly<F> {
    pub fn zero(n_vars: usize, degree: i64) -> Self {
        HomogPoly { n_vars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: F) -> Self {
        let mut p = Self::zero(n_vars, 0);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0u16; n_vars];
        e[i] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(e: Exponents, c: F) -> Self {
        let n_vars = e.len();
        let degree = e.iter().map(|&x| x as i64).sum();
        let mut p = Self::zero(n_vars, degree);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Builds a polynomial from terms, checking homogeneity and dropping zeros.
    pub fn from_terms(n_vars: usize, degree: i64, terms: impl IntoIterator<Item = (Exponents, F)>) -> Result<Self> {
        let mut p = Self::zero(n_vars, degree);
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(Error::VariableMismatch(n_vars, e.len()));
            }
            if e.iter().map(|&x| x as i64).sum::<i64>() != degree {
                return Err(Error::NotHomogeneous);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u16]) -> F {
        self.terms.get(e).copied().unwrap_or_else(F::zero)
    }

    /// Adds `c·x^e`; `e` must have the polynomial's degree.
    pub fn add_term(&mut self, e: Exponents, c: F) {
        debug_assert_eq!(e.iter().map(|&x| x as i64).sum::<i64>(), self.degree);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars, self.degree);
        }
        HomogPoly {
            n_vars: self.n_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, &v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-F::one())
    }

    /// Sum of two polynomials of the same degree (or where one is zero).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_vars != other.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, other.n_vars));
        }
        if self.is_zero() && self.degree != other.degree {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::NotHomogeneous);
        }
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Drops the last variable, i.e. reduces modulo `x_{n_vars-1}`.
    pub fn restrict_last_variable(&self) -> Self {
        let nv = self.n_vars - 1;
        HomogPoly {
            n_vars: nv,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[nv] == 0)
                .map(|(e, &c)| (e[..nv].to_vec(), c))
                .collect(),
        }
    }
}

/// Product of homogeneous polynomials.
pub fn poly_mul<F: Field>(f: &HomogPoly<F>, g: &HomogPoly<F>) -> Result<HomogPoly<F>> {
    if f.n_vars != g.n_vars {
        return Err(Error::VariableMismatch(f.n_vars, g.n_vars));
    }
    let mut acc: BTreeMap<Exponents, F> = BTreeMap::new();
    for (ef, &cf) in &f.terms {
        for (eg, &cg) in &g.terms {
            let e: Exponents = ef.iter().zip(eg).map(|(a, b)| a + b).collect();
            *acc.entry(e).or_insert_with(F::zero) += cf * cg;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(HomogPoly { n_vars: f.n_vars, degree: f.degree + g.degree, terms: acc })
}

/// A form of degree `d` whose coefficients are drawn uniformly from the field.
/// Negative `d` gives the zero polynomial of that nominal degree.
pub fn random_form<F: Field>(n_vars: usize, d: i64, rng: &mut ChaCha8Rng) -> HomogPoly<F> {
    let mut p = HomogPoly::zero(n_vars, d);
    for e in monomial_basis(n_vars, d) {
        let c = F::sample(rng);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
    }
    p
}

/// Seeded convenience wrapper around [`random_form`].
pub fn random_form_seeded<F: Field>(n_vars: usize, d: i64, seed: u64) -> HomogPoly<F> {
    random_form(n_vars, d, &mut ChaCha8Rng::seed_from_u64(seed))
}

impl<F: Field> fmt::Debug for HomogPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for HomogPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomial first
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{x}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::field::Fp;

    type F = Fp<32003>;

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomial_basis(5, 1).len(), 5);
        assert_eq!(monomial_basis(5, 2).len(), 15);
        assert_eq!(monomial_count(6, 8), 1287);
        assert!(monomial_basis(4, -1).is_empty());
    }

    #[test]
    fn basis_order_is_lex_descending_and_index_roundtrips() {
        for nv in 1..5 {
            for d in 0..5 {
                let b = monomial_basis(nv, d);
                for w in b.windows(2) {
                    assert!(w[0] > w[1]);
                }
                for (i, e) in b.iter().enumerate() {
                    assert_eq!(monomial_index(e), i);
                    assert_eq!(&monomial_at(nv, d, i), e);
                }
            }
        }
    }

    #[test]
    fn difference_of_squares() {
        let x0 = HomogPoly::<F>::var(2, 0);
        let x1 = HomogPoly::<F>::var(2, 1);
        let p = poly_mul(&x0.add(&x1).unwrap(), &x0.sub(&x1).unwrap()).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&[2, 0]), F::one());
        assert_eq!(p.coeff(&[0, 2]), -F::one());
    }

    #[test]
    fn zero_absorbs() {
        let z = HomogPoly::<F>::zero(3, 4);
        let g = random_form_seeded::<F>(3, 2, 1);
        let p = poly_mul(&z, &g).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.degree(), 6);
    }

    #[test]
    fn random_forms_are_deterministic() {
        let a = random_form_seeded::<F>(2, 1, 7);
        let b = random_form_seeded::<F>(2, 1, 7);
        assert_eq!(a, b);
        assert!(random_form_seeded::<F>(5, 0, 3).len() <= 1);
    }

    #[test]
    fn cancellation_removes_terms() {
        let x0 = HomogPoly::<F>::var(2, 0);
        let s = x0.sub(&x0).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = HomogPoly::<F>::var(2, 0);
        let b = HomogPoly::<F>::var(3, 0);
        assert!(poly_mul(&a, &b).is_err());
    }
}
