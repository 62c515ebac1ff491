//! Random factorizations with known ground truth.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{direct_sum_mf, twist_mf, MatrixFactorization, MfError};
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;

/// A random homogeneous form of degree `d` (0 or 1), or `None` when no
/// variable has weight `d`.
fn random_form<F: Field, R: Rng>(m: &MatrixFactorization<F>, d: i64, rng: &mut R) -> Option<Polynomial<F>> {
    let r = m.ring();
    let c = F::from_i64(*[-3, -2, -1, 1, 2, 3].choose(rng).unwrap());
    match d {
        0 => Some(r.constant(c)),
        1 => {
            let vars: Vec<&String> =
                r.names().iter().zip(r.weights()).filter(|(_, w)| **w == 1).map(|(n, _)| n).collect();
            vars.choose(rng).map(|v| r.var(v).scale(&c))
        }
        _ => None,
    }
}

fn elementary<F: Field>(n: usize, nvars: usize, i: usize, j: usize, p: &Polynomial<F>) -> PolyMatrix<F> {
    let mut e = PolyMatrix::identity(n, nvars);
    e.set(i, j, p.clone());
    e
}

/// Applies `ops` random elementary row or column operations whose entries
/// have degree at most one. The result is equivalent to `m`.
pub fn scramble<F: Field, R: Rng>(m: &MatrixFactorization<F>, ops: usize, rng: &mut R) -> MatrixFactorization<F> {
    let n = m.size();
    if n < 2 {
        return m.clone();
    }
    let nvars = m.ring().nvars();
    let (mut phi, mut psi) = (m.phi().clone(), m.psi().clone());
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let on_rows = rng.gen_bool(0.5);
        let d = if on_rows { m.rows()[j] - m.rows()[i] } else { m.cols()[j] - m.cols()[i] };
        let Some(p) = random_form(m, d, rng) else { continue };
        let fwd = elementary(n, nvars, i, j, &p);
        let inv = elementary(n, nvars, i, j, &-&p);
        if on_rows {
            phi = fwd.mul(&phi);
            psi = psi.mul(&inv);
        } else {
            // column op on φ moves column i into column j: Q = I + p E_ij
            phi = phi.mul(&fwd);
            psi = inv.mul(&psi);
        }
    }
    MatrixFactorization::new(m.ring().clone(), m.potential().clone(), phi, psi, m.rows().to_vec(), m.cols().to_vec())
        .expect("elementary operations preserve the shape")
}

/// A direct sum of 1 to `max_summands` randomly twisted copies of `blocks`,
/// scrambled by elementary operations.
pub fn random_factorization<F: Field, R: Rng>(
    blocks: &[MatrixFactorization<F>],
    max_summands: usize,
    rng: &mut R,
) -> Result<MatrixFactorization<F>, MfError> {
    let k = rng.gen_range(1..=max_summands.max(1));
    let mut acc = MatrixFactorization::empty(blocks[0].ring().clone(), blocks[0].potential().clone())?;
    for _ in 0..k {
        let b = blocks.choose(rng).unwrap();
        acc = direct_sum_mf(&acc, &twist_mf(b, rng.gen_range(-1..=1)))?;
    }
    let ops = 3 * acc.size();
    Ok(scramble(&acc, ops, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_mf;
    use crate::field::Rational;
    use crate::matfac::{equivalence, verify_mf};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scrambled_sums_verify_and_stay_equivalent() {
        let blocks: Vec<_> = ["bgs-i", "bgs-ii", "bgs-iii"].iter().map(|n| get_mf::<Rational>(n, 1).unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m = random_factorization(&blocks, 3, &mut rng).unwrap();
            assert!(verify_mf(&m).pass());
        }
        let sum = direct_sum_mf(&blocks[1], &blocks[2]).unwrap();
        let s = scramble(&sum, 8, &mut rng);
        assert!(verify_mf(&s).pass());
        assert!(equivalence(&sum, &s, 0).is_some());
    }
}
