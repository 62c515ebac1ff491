//! Heuristic splitting of a factorization into a direct sum.
//!
//! Idempotents are searched in the algebra of degree zero endomorphisms
//! `(A, B)` with `A φ = φ B`. For a candidate `z` the minimal polynomial is
//! factored over its roots in the field; a nontrivial coprime factorization
//! `μ = p q` yields the idempotent `t(z) q(z)` from `s p + t q = 1`. The
//! images and kernels of the idempotent give the new bases.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::equiv::{constant_part, random_combination};
use super::{change_of_variables, morphism_basis, verify_mf, MatrixFactorization, MfError, MfMorphism};
use crate::field::Field;
use crate::linalg::Dense;
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::GradedRing;
use crate::univariate::UniPoly;

/// A linear change of variables into `target`, one image per source variable.
#[derive(Clone, Debug)]
pub struct Substitution<F: Field> {
    pub target: Arc<GradedRing<F>>,
    pub images: Vec<Polynomial<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome<F: Field> {
    /// Two or more blocks, each verified.
    Blocks(Vec<MatrixFactorization<F>>),
    NoSplit,
}

const RANDOM_TRIES: usize = 12;
const MAX_DEPTH: usize = 4;

/// Attempts to block-diagonalize `m` (after the optional substitution) by
/// invertible row and column operations over the ring.
pub fn try_split<F: Field>(
    m: &MatrixFactorization<F>,
    substitution: Option<&Substitution<F>>,
    seed: u64,
) -> Result<SplitOutcome<F>, MfError> {
    let m = match substitution {
        Some(s) => change_of_variables(m, s.target.clone(), &s.images)?,
        None => m.clone(),
    };
    let blocks = split_rec(&m, seed, MAX_DEPTH);
    Ok(if blocks.len() > 1 { SplitOutcome::Blocks(blocks) } else { SplitOutcome::NoSplit })
}

fn split_rec<F: Field>(m: &MatrixFactorization<F>, seed: u64, depth: usize) -> Vec<MatrixFactorization<F>> {
    if depth == 0 || m.size() < 2 {
        return vec![m.clone()];
    }
    match split_once(m, seed) {
        Some((a, b)) => {
            let mut out = split_rec(&a, seed.wrapping_add(1), depth - 1);
            out.extend(split_rec(&b, seed.wrapping_add(2), depth - 1));
            out
        }
        None => vec![m.clone()],
    }
}

/// Coordinates of an algebra element as a sparse vector.
fn flatten<F: Field>(z: &MfMorphism<F>, index: &mut HashMap<(bool, usize, usize, Monomial), usize>) -> Vec<(usize, F)> {
    let mut out = Vec::new();
    for (is_a, mat) in [(true, &z.a), (false, &z.b)] {
        for (i, j, p) in mat.entries() {
            for (mono, c) in p.terms() {
                let next = index.len();
                let k = *index.entry((is_a, i, j, mono.clone())).or_insert(next);
                out.push((k, c.clone()));
            }
        }
    }
    out
}

/// Minimal polynomial of `z` in the endomorphism algebra, by finding the
/// first power that is a combination of lower ones.
fn minimal_polynomial<F: Field>(z: &MfMorphism<F>, n: usize, nvars: usize, bound: usize) -> Option<UniPoly<F>> {
    let mut index = HashMap::new();
    let mut vecs: Vec<Vec<(usize, F)>> = Vec::new();
    let mut power: MfMorphism<F> = MfMorphism::identity(n, nvars);
    for k in 0..=bound {
        let v = flatten(&power, &mut index);
        if k > 0 {
            let dim = index.len();
            let mut sys: Dense<F> = Dense::zeros(dim, k);
            for (col, vec) in vecs.iter().enumerate() {
                for (r, c) in vec {
                    sys.set(*r, col, c.clone());
                }
            }
            let mut rhs = vec![F::zero(); dim];
            for (r, c) in &v {
                rhs[*r] = c.clone();
            }
            if let Some(sol) = sys.solve(&rhs) {
                let mut coeffs: Vec<F> = sol.iter().map(|c| c.neg()).collect();
                coeffs.push(F::one());
                return Some(UniPoly::new(coeffs));
            }
        }
        vecs.push(v);
        power = power.compose(z);
    }
    None
}

fn eval_at<F: Field>(p: &UniPoly<F>, z: &MfMorphism<F>, n: usize, nvars: usize) -> MfMorphism<F> {
    let id = MfMorphism::identity(n, nvars);
    let mut acc = id.scale(&F::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.compose(z).add(&id.scale(c));
    }
    acc
}

/// An idempotent other than 0 and 1 built from `z`, if its minimal
/// polynomial has a root in the field with a nontrivial cofactor.
fn idempotent_from<F: Field>(z: &MfMorphism<F>, n: usize, nvars: usize, bound: usize) -> Option<MfMorphism<F>> {
    let mu = minimal_polynomial(z, n, nvars, bound)?;
    for root in F::roots(mu.coeffs()) {
        let mult = mu.multiplicity(&root);
        let p = UniPoly::linear(&root).pow(mult);
        let (q, r) = mu.div_rem(&p);
        debug_assert!(r.is_zero());
        if q.degree() == Some(0) {
            continue;
        }
        let (g, _s, t) = p.ext_gcd(&q);
        if g.degree() != Some(0) {
            continue;
        }
        return Some(eval_at(&t.mul(&q), z, n, nvars));
    }
    None
}

/// Inverse of a graded degree zero matrix: `P = P0 + N` with `P0⁻¹ N` nilpotent.
fn graded_inverse<F: Field>(p: &PolyMatrix<F>) -> Option<PolyMatrix<F>> {
    let n = p.rows();
    let nvars = p.nvars();
    let p0 = constant_part(p);
    let p0_inv = p0.inverse()?;
    let lift = |d: &Dense<F>| {
        let mut m = PolyMatrix::zeros(d.rows, d.cols, nvars);
        for i in 0..d.rows {
            for j in 0..d.cols {
                m.set(i, j, Polynomial::constant(nvars, d.get(i, j).clone()));
            }
        }
        m
    };
    let p0_inv = lift(&p0_inv);
    let nil = p0_inv.mul(&p.sub(&lift(&p0))).neg();
    let mut term = PolyMatrix::identity(n, nvars);
    let mut sum = term.clone();
    for _ in 0..=n {
        term = term.mul(&nil);
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term);
    }
    let inv = sum.mul(&p0_inv);
    (p.mul(&inv) == PolyMatrix::identity(n, nvars)).then_some(inv)
}

/// New basis adapted to the idempotent `e`: image columns then kernel columns.
fn adapted_basis<F: Field>(e: &PolyMatrix<F>) -> (PolyMatrix<F>, Vec<usize>, Vec<usize>) {
    let n = e.rows();
    let id = PolyMatrix::identity(n, e.nvars());
    let comp = id.sub(e);
    let pivots = |m: &PolyMatrix<F>| {
        let mut d = constant_part(m);
        d.rref()
    };
    let j1 = pivots(e);
    let j2 = pivots(&comp);
    let all: Vec<usize> = (0..n).collect();
    let p = e.submatrix(&all, &j1).hcat(&comp.submatrix(&all, &j2));
    (p, j1, j2)
}

fn split_with<F: Field>(
    m: &MatrixFactorization<F>,
    e: &MfMorphism<F>,
) -> Option<(MatrixFactorization<F>, MatrixFactorization<F>)> {
    let n = m.size();
    let (p, j1, j2) = adapted_basis(&e.a);
    let (q, k1, k2) = adapted_basis(&e.b);
    if j1.is_empty() || j2.is_empty() || j1.len() + j2.len() != n || k1.len() != j1.len() || k2.len() != j2.len() {
        return None;
    }
    let p_inv = graded_inverse(&p)?;
    let q_inv = graded_inverse(&q)?;
    let phi = p_inv.mul(m.phi()).mul(&q);
    let psi = q_inv.mul(m.psi()).mul(&p);
    let r = j1.len();
    let first: Vec<usize> = (0..r).collect();
    let second: Vec<usize> = (r..n).collect();
    for mat in [&phi, &psi] {
        if !mat.submatrix(&first, &second).is_zero() || !mat.submatrix(&second, &first).is_zero() {
            return None;
        }
    }
    let pick = |v: &[i64], idx: &[usize]| idx.iter().map(|&i| v[i]).collect::<Vec<_>>();
    let block = |idx: &[usize], rows: &[usize], cols: &[usize]| {
        MatrixFactorization::new(
            m.ring().clone(),
            m.potential().clone(),
            phi.submatrix(idx, idx),
            psi.submatrix(idx, idx),
            pick(m.rows(), rows),
            pick(m.cols(), cols),
        )
        .ok()
    };
    let a = block(&first, &j1, &k1)?;
    let b = block(&second, &j2, &k2)?;
    (verify_mf(&a).pass() && verify_mf(&b).pass()).then_some((a, b))
}

fn split_once<F: Field>(
    m: &MatrixFactorization<F>,
    seed: u64,
) -> Option<(MatrixFactorization<F>, MatrixFactorization<F>)> {
    let n = m.size();
    let nvars = m.ring().nvars();
    let basis = morphism_basis(m, m);
    if basis.len() < 2 {
        return None;
    }
    let bound = basis.len();
    let try_z = |z: &MfMorphism<F>| {
        let e = idempotent_from(z, n, nvars, bound)?;
        split_with(m, &e)
    };
    if let Some(s) = basis.iter().find_map(try_z) {
        return Some(s);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_TRIES).find_map(|_| try_z(&random_combination(&basis, &mut rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gaussian_substitution, get_mf};
    use crate::field::Gaussian;
    use crate::matfac::{direct_sum_mf, double_branched_cover, equivalent_up_to_twist};

    #[test]
    fn diagonal_factorization_splits() {
        let b = get_mf::<Gaussian>("r1-b", 1).unwrap();
        let c = get_mf::<Gaussian>("r1-c", 1).unwrap();
        let sum = direct_sum_mf(&b, &c).unwrap();
        match try_split(&sum, None, 1).unwrap() {
            SplitOutcome::Blocks(bl) => assert_eq!(bl.len(), 2),
            SplitOutcome::NoSplit => panic!("direct sum did not split"),
        }
    }

    #[test]
    fn double_cover_of_type_ii_splits_after_substitution() {
        let m = double_branched_cover(&get_mf::<Gaussian>("bgs-ii", 1).unwrap(), "y").unwrap();
        let sub = gaussian_substitution::<Gaussian>(m.ring()).unwrap();
        let SplitOutcome::Blocks(blocks) = try_split(&m, Some(&sub), 5).unwrap() else {
            panic!("no split");
        };
        assert_eq!(blocks.len(), 2);
        let b = crate::catalog::r1_in_ab::<Gaussian>("r1-b", 1).unwrap();
        let c = crate::catalog::r1_in_ab::<Gaussian>("r1-c", 1).unwrap();
        let matches = |x: &MatrixFactorization<Gaussian>, y: &MatrixFactorization<Gaussian>| {
            equivalent_up_to_twist(x, y, 0).is_some()
        };
        assert!(
            (matches(&blocks[0], &b) && matches(&blocks[1], &c))
                || (matches(&blocks[0], &c) && matches(&blocks[1], &b))
        );
    }

    #[test]
    fn indecomposable_block_does_not_split() {
        let d = get_mf::<Gaussian>("r1-d", 1).unwrap();
        assert_eq!(try_split(&d, None, 0).unwrap(), SplitOutcome::NoSplit);
    }
}
