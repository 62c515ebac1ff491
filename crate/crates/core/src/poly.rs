//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("ring descriptor: {0}")]
    Descriptor(String),
}

/// Storage order for terms: descending grevlex with unit weights. Rings with
/// another order tag only consult their order when picking leading terms.
fn storage_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// A polynomial with exact coefficients. Terms are kept strictly descending,
/// without zero coefficients or repeated monomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(Monomial::var(nvars, index, 1), F::one())
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Polynomial::zero(nvars)
        } else {
            Polynomial { nvars, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| storage_cmp(&b.0, &a.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term if the polynomial is constant (zero counts).
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.as_slice() {
            [] => Some(F::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    fn check_arity(&self, rhs: &Self) -> Result<(), RingError> {
        if self.nvars != rhs.nvars {
            return Err(RingError::ArityMismatch { left: self.nvars, right: rhs.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check_arity(rhs)?;
        Ok(self.merge(rhs, false))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check_arity(rhs)?;
        Ok(self.merge(rhs, true))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, RingError> {
        self.check_arity(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(rhs.mul_term(m, c));
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out = out.merge(&rhs.mul_term(m, c), false);
        }
        Ok(out)
    }

    fn merge(&self, rhs: &Self, subtract: bool) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match storage_cmp(ma, mb) {
                Ordering::Greater => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((mb.clone(), if subtract { cb.neg() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(rhs.terms[j..].iter().map(|(m, c)| (m.clone(), if subtract { c.neg() } else { c.clone() })));
        Polynomial { nvars: self.nvars, terms }
    }

    /// Multiplication by a single term; keeps the storage order.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Polynomial::one(self.nvars), |acc, _| &acc * self)
    }

    /// Weighted degree of the highest term; `None` for zero.
    pub fn degree(&self, weights: &[u32]) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.degree(weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: MonomialOrder, weights: &[u32]) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0, weights)).map(|(m, c)| (m, c))
    }

    /// Substitutes `images[k]` for variable `k`. The images share an arity
    /// which becomes the arity of the result.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((k, e)).or_insert_with(|| images[k].pow(e)).clone();
                term = &term * &p;
            }
            out = &out + &term;
        }
        out
    }

    /// Same polynomial viewed in a ring with `extra` more variables appended.
    pub fn extend_vars(&self, extra: usize) -> Polynomial<F> {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Renders with the given variable names, in the storage order.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = format_monomial(m, names);
            let coeff = c.to_text();
            let (negative, body) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            let text = match (mono.is_empty(), body.as_str()) {
                (true, _) => body.clone(),
                (false, "1") => mono,
                (false, _) => format!("{body}*{mono}"),
            };
            match (k, negative) {
                (0, false) => out.push_str(&text),
                (0, true) => {
                    out.push('-');
                    out.push_str(&text);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&text);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&text);
                }
            }
        }
        out
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| if e == 1 { names[k].clone() } else { format!("{}^{}", names[k], e) })
        .collect();
    parts.join("*")
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("polynomial arity")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("polynomial arity")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("polynomial arity")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&F::one().neg())
    }
}

/// Arithmetic operation selector for [`ring_arithmetic`].
#[derive(Clone, Debug)]
pub enum ArithOp<F: Field> {
    Add,
    Mul,
    /// Scale the first operand; the second operand is ignored.
    Scale(F),
}

/// Checked arithmetic entry point: the operands must share an arity.
pub fn ring_arithmetic<F: Field>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
    op: ArithOp<F>,
) -> Result<Polynomial<F>, RingError> {
    match op {
        ArithOp::Add => p.try_add(q),
        ArithOp::Mul => p.try_mul(q),
        ArithOp::Scale(c) => {
            p.check_arity(q)?;
            Ok(p.scale(&c))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gaussian, Rational};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cancellation_and_zero() {
        let x = Polynomial::<Rational>::var(2, 0);
        let t = Polynomial::<Rational>::var(2, 1);
        let sum = ring_arithmetic(&(&x + &t), &(-&x), ArithOp::Add).unwrap();
        assert_eq!(sum, t);
        let z = Polynomial::<Rational>::zero(2);
        assert!(ring_arithmetic(&x, &z, ArithOp::Mul).unwrap().is_zero());
    }

    #[test]
    fn gaussian_product_gives_sum_of_squares() {
        let x = Polynomial::<Gaussian>::var(2, 0);
        let y = Polynomial::<Gaussian>::var(2, 1);
        let iy = y.scale(&Gaussian::i());
        let a = &x + &iy;
        let b = &x - &iy;
        let prod = ring_arithmetic(&a, &b, ArithOp::Mul).unwrap();
        assert_eq!(prod, &(&x * &x) + &(&y * &y));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let x = Polynomial::<Rational>::var(2, 0);
        let y = Polynomial::<Rational>::var(3, 0);
        assert!(matches!(ring_arithmetic(&x, &y, ArithOp::Add), Err(RingError::ArityMismatch { .. })));
    }

    #[test]
    fn formatting() {
        let n = names(&["x", "u", "v"]);
        let x = Polynomial::<Rational>::var(3, 0);
        let u = Polynomial::<Rational>::var(3, 1);
        let v = Polynomial::<Rational>::var(3, 2);
        let p = &(&x * &x) + &(&u * &v);
        assert_eq!(p.format(&n), "x^2 + u*v");
        let q = &(&x.scale(&Rational::new(-3, 2)) - &u) + &Polynomial::constant(3, Rational::from_i64(-1));
        assert_eq!(q.format(&n), "-3/2*x - u - 1");
    }

    #[test]
    fn substitution() {
        // x -> a + b, y -> a - b ; x*y -> a^2 - b^2
        let x = Polynomial::<Rational>::var(2, 0);
        let y = Polynomial::<Rational>::var(2, 1);
        let a = Polynomial::<Rational>::var(2, 0);
        let b = Polynomial::<Rational>::var(2, 1);
        let img = [&a + &b, &a - &b];
        assert_eq!((&x * &y).substitute(&img), &(&a * &a) - &(&b * &b));
    }
}
