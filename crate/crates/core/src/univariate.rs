//! Dense univariate polynomials over a field. Used for minimal polynomials
//! and the idempotent construction in the factorization splitter.

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    /// Builds from coefficients, constant term first. Trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        UniPoly::new(vec![c])
    }

    /// `T - root`
    pub fn linear(root: &F) -> Self {
        UniPoly::new(vec![root.neg(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = F::zero();
        UniPoly::new(
            (0..n).map(|k| self.coeffs.get(k).unwrap_or(&zero).add(rhs.coeffs.get(k).unwrap_or(&zero))).collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(UniPoly::constant(F::one()), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
            None => UniPoly::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, rhs: &Self) -> (Self, Self) {
        let d = rhs.degree().expect("division by zero polynomial");
        let lead_inv = rhs.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let c = rem.last().unwrap().mul(&lead_inv);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(b));
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul(&F::from_i64(k as i64))).collect())
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*rhs = g = gcd(self, rhs)`, `g` monic.
    pub fn ext_gcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let one = UniPoly::constant(F::one());
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (one.clone(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let li = l.inv().unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    /// `self / gcd(self, self')`, monic. In characteristic p this may keep
    /// repeated factors whose derivative vanishes; callers only use it to
    /// speed up root finding.
    pub fn squarefree_part(&self) -> Self {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = self.gcd(&d);
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of `root` as a root of `self`.
    pub fn multiplicity(&self, root: &F) -> usize {
        let lin = UniPoly::linear(root);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.div_rem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(c.iter().map(|&v| Rational::from_i64(v)).collect())
    }

    #[test]
    fn bezout_identity() {
        let a = q(&[-1, 0, 1]); // T^2 - 1
        let b = q(&[2, 1]); // T + 2
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, q(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn multiplicity_and_squarefree() {
        let p = q(&[1, -1]).mul(&q(&[1, -1])).mul(&q(&[3, 1])); // (1-T)^2 (T+3)
        assert_eq!(p.multiplicity(&Rational::from_i64(1)), 2);
        assert_eq!(p.squarefree_part().degree(), Some(2));
    }
}
