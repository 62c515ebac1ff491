//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial. The arity is fixed by the ambient ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Weighted degree.
    pub fn degree(&self, weights: &[u32]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(rhs.0.iter()).all(|(a, b)| a <= b)
    }

    /// `rhs / self`, assuming `self` divides `rhs`.
    pub fn quotient_of(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(rhs.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Appends `extra` zero exponents (for adjoining variables).
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(0, extra));
        Monomial(v)
    }
}

/// All monomials in `nvars` variables of weighted degree `degree`.
pub fn monomials_of_degree(weights: &[u32], degree: i64) -> Vec<Monomial> {
    fn rec(weights: &[u32], idx: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let w = weights[idx] as i64;
        let max_e = left / w;
        for e in (0..=max_e).rev() {
            cur.push(e as u32);
            rec(weights, idx + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    if weights.is_empty() {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(weights, 0, degree, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

/// Monomial order. All orders are graded by the ring's variable weights
/// except `Lex`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.degree(weights).cmp(&b.degree(weights)).then_with(|| {
                for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
                    if x != y {
                        // smaller exponent in the last differing variable wins
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::DegLex => a.degree(weights).cmp(&b.degree(weights)).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::Lex => a.0.cmp(&b.0),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "grevlex" => Some(MonomialOrder::GrevLex),
            "deglex" => Some(MonomialOrder::DegLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_prefers_x_squared_over_uv() {
        // variables x,u,v,t
        let x2 = Monomial::from_exponents(&[2, 0, 0, 0]);
        let uv = Monomial::from_exponents(&[0, 1, 1, 0]);
        let w = [1, 1, 1, 1];
        assert_eq!(MonomialOrder::GrevLex.compare(&x2, &uv, &w), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.compare(&x2, &uv, &w), Ordering::Greater);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_degree(&[1, 1, 1, 1, 1], 12).len(), 1820);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert!(monomials_of_degree(&[1], -1).is_empty());
    }
}
