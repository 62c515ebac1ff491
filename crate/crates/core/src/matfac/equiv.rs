//! Morphisms of matrix factorizations and equivalence search.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MatrixFactorization;
use crate::field::Field;
use crate::linalg::Dense;
use crate::matrix::PolyMatrix;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;

/// A degree zero morphism `(A, B)` with `A φ₁ = φ₂ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfMorphism<F: Field> {
    pub a: PolyMatrix<F>,
    pub b: PolyMatrix<F>,
}

impl<F: Field> MfMorphism<F> {
    pub fn compose(&self, other: &MfMorphism<F>) -> MfMorphism<F> {
        MfMorphism { a: self.a.mul(&other.a), b: self.b.mul(&other.b) }
    }

    pub fn add(&self, other: &MfMorphism<F>) -> MfMorphism<F> {
        MfMorphism { a: self.a.add(&other.a), b: self.b.add(&other.b) }
    }

    pub fn scale(&self, c: &F) -> MfMorphism<F> {
        MfMorphism { a: self.a.scale(c), b: self.b.scale(c) }
    }

    pub fn identity(n: usize, nvars: usize) -> MfMorphism<F> {
        MfMorphism { a: PolyMatrix::identity(n, nvars), b: PolyMatrix::identity(n, nvars) }
    }

    /// Whether both matrices are invertible over the polynomial ring.
    pub fn is_invertible(&self) -> bool {
        constant_part(&self.a).inverse().is_some() && constant_part(&self.b).inverse().is_some()
    }
}

/// Constant coefficients of a matrix. For graded degree zero maps the matrix
/// is invertible iff this part is.
pub(crate) fn constant_part<F: Field>(m: &PolyMatrix<F>) -> Dense<F> {
    let mut d = Dense::zeros(m.rows(), m.cols());
    for (i, j, p) in m.entries() {
        if let Some(c) = p.as_constant() {
            d.set(i, j, c);
        }
    }
    d
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Slot {
    A,
    B,
}

/// Basis of the space of degree zero morphisms `m1 -> m2`.
pub fn morphism_basis<F: Field>(m1: &MatrixFactorization<F>, m2: &MatrixFactorization<F>) -> Vec<MfMorphism<F>> {
    let ring = m1.ring();
    let w = ring.weights();
    let nv = ring.nvars();
    let (n1, n2) = (m1.size(), m2.size());
    let mut unknowns: Vec<(Slot, usize, usize, Monomial)> = Vec::new();
    for i in 0..n2 {
        for k in 0..n1 {
            for mono in monomials_of_degree(w, m1.rows()[k] - m2.rows()[i]) {
                unknowns.push((Slot::A, i, k, mono));
            }
            for mono in monomials_of_degree(w, m1.cols()[k] - m2.cols()[i]) {
                unknowns.push((Slot::B, i, k, mono));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    // coefficient of (row i, col j, monomial) in A φ₁ - φ₂ B
    let mut eqs: HashMap<(usize, usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, F)> = Vec::new();
    let mut push = |key: (usize, usize, Monomial), u: usize, c: F| {
        let next = eqs.len();
        let row = *eqs.entry(key).or_insert(next);
        entries.push((row, u, c));
    };
    for (u, (slot, i, k, mono)) in unknowns.iter().enumerate() {
        match slot {
            Slot::A => {
                for j in 0..n1 {
                    for (m, c) in m1.phi().get(*k, j).terms() {
                        push((*i, j, m.mul(mono)), u, c.clone());
                    }
                }
            }
            Slot::B => {
                for r in 0..n2 {
                    for (m, c) in m2.phi().get(r, *i).terms() {
                        push((r, *k, m.mul(mono)), u, c.neg());
                    }
                }
            }
        }
    }
    let mut sys: Dense<F> = Dense::zeros(eqs.len(), unknowns.len());
    for (r, u, c) in entries {
        let cur = sys.get(r, u).add(&c);
        sys.set(r, u, cur);
    }
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut a = PolyMatrix::zeros(n2, n1, nv);
            let mut b = PolyMatrix::zeros(n2, n1, nv);
            for (c, (slot, i, k, mono)) in v.iter().zip(&unknowns) {
                if c.is_zero() {
                    continue;
                }
                let target = if *slot == Slot::A { &mut a } else { &mut b };
                let cur = target.get(*i, *k).clone();
                target.set(*i, *k, &cur + &Polynomial::monomial(mono.clone(), c.clone()));
            }
            MfMorphism { a, b }
        })
        .collect()
}

pub(crate) fn random_combination<F: Field>(basis: &[MfMorphism<F>], rng: &mut ChaCha8Rng) -> MfMorphism<F> {
    let mut acc = basis[0].scale(&F::zero());
    for m in basis {
        acc = acc.add(&m.scale(&F::from_i64(rng.gen_range(-9..=9))));
    }
    acc
}

/// An isomorphism `m1 -> m2` of degree zero, if one is found among the basis
/// elements and seeded random combinations.
pub fn equivalence<F: Field>(
    m1: &MatrixFactorization<F>,
    m2: &MatrixFactorization<F>,
    seed: u64,
) -> Option<MfMorphism<F>> {
    if m1.size() != m2.size() || m1.ring() != m2.ring() || m1.potential() != m2.potential() {
        return None;
    }
    if m1.size() == 0 {
        return Some(MfMorphism::identity(0, m1.ring().nvars()));
    }
    let basis = morphism_basis(m1, m2);
    if basis.is_empty() {
        return None;
    }
    let check = |h: &MfMorphism<F>| h.is_invertible() && h.b.mul(m1.psi()) == m2.psi().mul(&h.a);
    if let Some(h) = basis.iter().find(|h| check(h)) {
        return Some(h.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..16).map(|_| random_combination(&basis, &mut rng)).find(check)
}

/// Equivalence after twisting `m2` so that the smallest row degrees agree.
pub fn equivalent_up_to_twist<F: Field>(
    m1: &MatrixFactorization<F>,
    m2: &MatrixFactorization<F>,
    seed: u64,
) -> Option<(i64, MfMorphism<F>)> {
    let lo = |m: &MatrixFactorization<F>| m.rows().iter().copied().min();
    let shift = match (lo(m1), lo(m2)) {
        (Some(a), Some(b)) => a - b,
        _ => 0,
    };
    equivalence(m1, &super::twist_mf(m2, shift), seed).map(|h| (shift, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_mf;
    use crate::field::Gaussian;
    use crate::matfac::{knoerrer_periodicity, rename_into, twist_mf};

    #[test]
    fn cone_display_is_knoerrer_image() {
        for l in 1..=2 {
            let cone = get_mf::<Gaussian>("cone-4x4", l).unwrap();
            let k = knoerrer_periodicity(&get_mf::<Gaussian>("bgs-iii", l).unwrap(), "u", "v").unwrap();
            let k = rename_into(&k, cone.ring().clone()).unwrap();
            assert_eq!(k, cone);
            assert!(equivalence(&cone, &k, 3).is_some());
        }
    }

    #[test]
    fn twisted_copies_are_not_degree_zero_equivalent() {
        let m = get_mf::<Gaussian>("bgs-ii", 1).unwrap();
        assert!(equivalence(&m, &m, 0).is_some());
        assert!(equivalence(&m, &twist_mf(&m, 1), 0).is_none());
    }
}
