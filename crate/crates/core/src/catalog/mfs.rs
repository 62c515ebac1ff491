//! Matrix factorization templates.

use std::sync::Arc;

use super::CatalogError;
use crate::field::Field;
use crate::matfac::{knoerrer_periodicity, rename_into, MatrixFactorization, Substitution};
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::GradedRing;

pub const MF_NAMES: [&str; 12] =
    ["bgs-i", "bgs-ii", "bgs-iii", "cone-4x4", "r1-a", "r1-b", "r1-c", "r1-d", "r1-e", "r3-d", "r3-e", "r3-d-display"];

/// Whether the template depends on `ℓ`.
pub fn takes_level(name: &str) -> bool {
    matches!(name, "bgs-iii" | "cone-4x4" | "r1-d" | "r1-e" | "r3-d" | "r3-e" | "r3-d-display")
}

pub(crate) fn ring<F: Field>(names: &[&str]) -> Arc<GradedRing<F>> {
    Arc::new(GradedRing::polynomial(names).expect("valid catalog ring"))
}

/// `a = x + iy` and `b = x - iy` over a ring with variables `x`, `y`.
pub(crate) fn ab<F: Field>(r: &GradedRing<F>) -> Result<(Polynomial<F>, Polynomial<F>), CatalogError> {
    let i = F::sqrt_minus_one().ok_or(CatalogError::NeedsI)?;
    let (x, y) = (r.var("x"), r.var("y"));
    let iy = y.scale(&i);
    Ok((&x + &iy, &x - &iy))
}

fn mf<F: Field>(
    r: &Arc<GradedRing<F>>,
    f: Polynomial<F>,
    phi: Vec<Vec<Polynomial<F>>>,
    psi: Vec<Vec<Polynomial<F>>>,
    rows: Vec<i64>,
    cols: Vec<i64>,
) -> Result<MatrixFactorization<F>, CatalogError> {
    let n = r.nvars();
    Ok(MatrixFactorization::new(
        r.clone(),
        f,
        PolyMatrix::from_rows(phi, n),
        PolyMatrix::from_rows(psi, n),
        rows,
        cols,
    )?)
}

/// The template `name` at level `l`. Levels are ignored by templates that
/// do not take one but must still be positive.
pub fn get_mf<F: Field>(name: &str, l: u32) -> Result<MatrixFactorization<F>, CatalogError> {
    if l == 0 {
        return Err(CatalogError::InvalidParameter(format!("level must be at least 1, got {l}")));
    }
    let li = l as i64;
    match name {
        "bgs-i" | "bgs-ii" | "bgs-iii" => {
            let r = ring::<F>(&["x", "t"]);
            let (x, t) = (r.var("x"), r.var("t"));
            let f = r.p("x^2");
            match name {
                "bgs-i" => mf(&r, f, vec![vec![r.p("x^2")]], vec![vec![r.one()]], vec![0], vec![2]),
                "bgs-ii" => mf(&r, f, vec![vec![x.clone()]], vec![vec![x]], vec![0], vec![1]),
                _ => {
                    let m = vec![vec![x.clone(), t.pow(l)], vec![r.zero(), -&x]];
                    mf(&r, f, m.clone(), m, vec![0, li - 1], vec![1, li])
                }
            }
        }
        "cone-4x4" => {
            let r = ring::<F>(&["x", "u", "v", "t"]);
            let (x, u, v, tl) = (r.var("x"), r.var("u"), r.var("v"), r.var("t").pow(l));
            let z = r.zero();
            let block = |p: &Polynomial<F>, q: &Polynomial<F>| {
                vec![
                    vec![p.clone(), z.clone(), x.clone(), tl.clone()],
                    vec![z.clone(), p.clone(), z.clone(), -&x],
                    vec![x.clone(), tl.clone(), -q, z.clone()],
                    vec![z.clone(), -&x, z.clone(), -q],
                ]
            };
            mf(&r, r.p("x^2 + u*v"), block(&u, &v), block(&v, &u), vec![1, li, 1, li], vec![2, li + 1, 2, li + 1])
        }
        "r1-a" | "r1-b" | "r1-c" | "r1-d" | "r1-e" => {
            let r = ring::<F>(&["x", "y", "t"]);
            let (a, b) = ab(&r)?;
            let f = r.p("x^2 + y^2");
            let tl = r.var("t").pow(l);
            let z = r.zero();
            match name {
                "r1-a" => mf(&r, f.clone(), vec![vec![f]], vec![vec![r.one()]], vec![0], vec![2]),
                "r1-b" => mf(&r, f, vec![vec![a]], vec![vec![b]], vec![0], vec![1]),
                "r1-c" => mf(&r, f, vec![vec![b]], vec![vec![a]], vec![0], vec![1]),
                _ => {
                    let (p, q) = if name == "r1-d" { (a, b) } else { (b, a) };
                    let phi = vec![vec![p.clone(), -&tl], vec![z.clone(), q.clone()]];
                    let psi = vec![vec![q, tl], vec![z, p]];
                    mf(&r, f, phi, psi, vec![0, li - 1], vec![1, li])
                }
            }
        }
        "r3-d" | "r3-e" => {
            let base = get_mf::<F>(if name == "r3-d" { "r1-d" } else { "r1-e" }, l)?;
            let k = knoerrer_periodicity(&base, "u", "v")?;
            Ok(rename_into(&k, ring::<F>(&["x", "y", "u", "v", "t"]))?)
        }
        "r3-d-display" => {
            // the 4x4 display [[u, φ_d], [ψ_d, -v]] and [[v, φ_d], [ψ_d, -u]]
            let r = ring::<F>(&["x", "y", "u", "v", "t"]);
            let (a, b) = ab(&r)?;
            let (u, v, tl) = (r.var("u"), r.var("v"), r.var("t").pow(l));
            let z = r.zero();
            let block = |p: &Polynomial<F>, q: &Polynomial<F>| {
                vec![
                    vec![p.clone(), z.clone(), a.clone(), -&tl],
                    vec![z.clone(), p.clone(), z.clone(), b.clone()],
                    vec![b.clone(), tl.clone(), -q, z.clone()],
                    vec![z.clone(), a.clone(), z.clone(), -q],
                ]
            };
            let f = r.p("x^2 + y^2 + u*v");
            mf(&r, f, block(&u, &v), block(&v, &u), vec![1, li, 1, li], vec![2, li + 1, 2, li + 1])
        }
        _ => Err(CatalogError::UnknownName(name.to_string())),
    }
}

/// The change of variables `x = (a+b)/2`, `y = -i(a-b)/2` from a ring
/// containing `x`, `y` into the ring with variables `a, b` followed by the
/// remaining variables in their original order.
pub fn gaussian_substitution<F: Field>(source: &GradedRing<F>) -> Result<Substitution<F>, CatalogError> {
    let i = F::sqrt_minus_one().ok_or(CatalogError::NeedsI)?;
    let (xi, yi) = match (source.var_index("x"), source.var_index("y")) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(CatalogError::InvalidParameter("ring has no variables x and y".into())),
    };
    let mut names = vec!["a".to_string(), "b".to_string()];
    let mut weights = vec![source.weights()[xi], source.weights()[yi]];
    for (k, n) in source.names().iter().enumerate() {
        if k != xi && k != yi {
            names.push(n.clone());
            weights.push(source.weights()[k]);
        }
    }
    let target = Arc::new(GradedRing::new(names, weights, Vec::new(), source.order())?);
    let half = F::from_ratio(1, 2);
    let (a, b) = (target.var("a"), target.var("b"));
    let images = source
        .names()
        .iter()
        .enumerate()
        .map(|(k, n)| {
            if k == xi {
                (&a + &b).scale(&half)
            } else if k == yi {
                (&a - &b).scale(&i.neg().mul(&half))
            } else {
                target.var(n)
            }
        })
        .collect();
    Ok(Substitution { target, images })
}

/// An `r1` template rewritten in the variables `a, b, t`.
pub fn r1_in_ab<F: Field>(name: &str, l: u32) -> Result<MatrixFactorization<F>, CatalogError> {
    let m = get_mf::<F>(name, l)?;
    let sub = gaussian_substitution(m.ring())?;
    Ok(crate::matfac::change_of_variables(&m, sub.target.clone(), &sub.images)?)
}
