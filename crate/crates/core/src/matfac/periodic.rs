//! The 2-periodic free resolution of `coker φ` over `S/(f)`.
//!
//! `F0 <-φ- F1 <-ψ- F2 <-φ- F3 ...` with `F0 = ⊕R(-rows)`, `F1 = ⊕R(-cols)`
//! and `F(k+2) = F(k)(-deg f)`. Exactness at `F(k)` is checked degreewise by
//! comparing `dim ker d(k)` with `dim im d(k+1)`.

use std::fmt;

use super::MatrixFactorization;
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::modres::GradedModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCheck {
    /// Homological position `k` of the free module being checked.
    pub step: usize,
    /// `None` for the composition check `d(k) ∘ d(k+1) = 0`.
    pub degree: Option<i64>,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for PeriodicCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "ok" } else { "FAIL" };
        match self.degree {
            None => write!(f, "step {} composition {} {}", self.step, status, self.detail),
            Some(d) => write!(f, "step {} degree {:>3} {} {}", self.step, d, status, self.detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicReport {
    pub steps: usize,
    pub cutoff: i64,
    pub checks: Vec<PeriodicCheck>,
}

impl PeriodicReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&PeriodicCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks.iter().map(|c| c.to_string()).collect()
    }
}

/// Checks `steps` positions of the periodic resolution in degrees up to `cutoff`.
pub fn periodic_resolution_check<F: Field>(m: &MatrixFactorization<F>, steps: usize, cutoff: i64) -> PeriodicReport {
    let ring = m.quotient_ring();
    let e = m.potential_degree();
    let coker_phi = GradedModule::new(ring.clone(), m.rows().to_vec(), m.phi().clone());
    let coker_psi = GradedModule::new(ring.clone(), m.cols().to_vec(), m.psi().clone());
    let (coker_phi, coker_psi) = match (coker_phi, coker_psi) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            let check =
                PeriodicCheck { step: 0, degree: None, pass: false, detail: "entries are not homogeneous".into() };
            return PeriodicReport { steps, cutoff, checks: vec![check] };
        }
    };

    // degrees of F(k) and the shift of the cokernel of d(k) relative to its base copy
    let free_degrees = |k: usize| -> Vec<i64> {
        let base = if k.is_multiple_of(2) { m.rows() } else { m.cols() };
        base.iter().map(|g| g + (k as i64 / 2) * e).collect()
    };
    let free_hf = |k: usize, d: i64| -> i64 { free_degrees(k).iter().map(|g| ring.hilbert(d - g) as i64).sum() };
    // rank of d(k): F(k) -> F(k-1) in degree d
    let rank = |k: usize, d: i64| -> i64 {
        let (coker, twist) =
            if k % 2 == 1 { (&coker_phi, (k as i64 - 1) / 2 * e) } else { (&coker_psi, (k as i64 / 2 - 1) * e) };
        free_hf(k - 1, d) - coker.hilbert(d - twist) as i64
    };
    let matrix = |k: usize| -> &PolyMatrix<F> {
        if k % 2 == 1 {
            m.phi()
        } else {
            m.psi()
        }
    };

    let mut checks = Vec::new();
    for k in 1..=steps {
        let product = matrix(k).mul(matrix(k + 1));
        let bad = product.entries().find(|(_, _, p)| !ring.is_zero_mod(p)).map(|(i, j, _)| (i + 1, j + 1));
        checks.push(PeriodicCheck {
            step: k,
            degree: None,
            pass: bad.is_none(),
            detail: match bad {
                None => "d(k)∘d(k+1) = 0".into(),
                Some((i, j)) => format!("nonzero entry ({i},{j})"),
            },
        });
        for d in 0..=cutoff {
            let kernel = free_hf(k, d) - rank(k, d);
            let image = rank(k + 1, d);
            checks.push(PeriodicCheck {
                step: k,
                degree: Some(d),
                pass: kernel == image,
                detail: format!("ker {kernel} im {image}"),
            });
        }
    }
    PeriodicReport { steps, cutoff, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::get_mf;
    use crate::field::Gaussian;

    #[test]
    fn catalog_resolutions_are_exact() {
        for name in ["bgs-i", "bgs-ii", "bgs-iii"] {
            let m = get_mf::<Gaussian>(name, 2).unwrap();
            let r = periodic_resolution_check(&m, 4, 6);
            assert!(r.pass(), "{name}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn broken_factorization_fails() {
        let m = get_mf::<Gaussian>("bgs-ii", 1).unwrap();
        let r = m.ring().clone();
        let bad = m.with_phi_entry(0, 0, r.p("t"));
        assert!(!periodic_resolution_check(&bad, 2, 3).pass());
    }

    #[test]
    fn wrong_twists_fail_without_panicking() {
        let m = MatrixFactorization::<Gaussian>::from_text(
            "mf\nvars: x,y\ndegs: 1,1\nmod:\nf: x^2+y^2\nrows: 0\ncols: 1\nphi:\n3*x*y\npsi:\n1\n",
        )
        .unwrap();
        assert!(!periodic_resolution_check(&m, 2, 4).pass());
    }
}
