//! Degreewise certificates for short exact sequences and extensions.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{column_degree, hom_basis, GradedModule, ModuleError, ModuleMap};
use crate::field::Field;
use crate::matrix::PolyMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Composition,
    Injective,
    Surjective,
    Additivity,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Composition => "composition",
            Condition::Injective => "injective",
            Condition::Surjective => "surjective",
            Condition::Additivity => "additivity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: i64,
    pub condition: Condition,
    pub pass: bool,
    pub detail: String,
}

/// Bounded certificate: every condition checked in every degree up to the cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub cutoff: i64,
    pub checks: Vec<DegreeCheck>,
}

impl ExactnessReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&DegreeCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    /// One line per (degree, condition).
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "degree {:>3} {:<11} {} {}",
                    c.degree,
                    c.condition.to_string(),
                    if c.pass { "ok" } else { "FAIL" },
                    c.detail
                )
            })
            .collect()
    }
}

fn lowest_degree<F: Field>(mods: &[&GradedModule<F>]) -> i64 {
    mods.iter().filter_map(|m| m.min_degree()).min().unwrap_or(0)
}

/// Certifies `0 -> A -f-> E -g-> B -> 0` in every degree up to `cutoff`.
pub fn is_sequence_exact<F: Field>(f: &ModuleMap<F>, g: &ModuleMap<F>, cutoff: i64) -> ExactnessReport {
    let (a, e, b) = (f.source(), f.target(), g.target());
    let comp = g.compose(f);
    let ring = a.ring();
    let bad_columns: Vec<(usize, Option<i64>)> = comp
        .matrix()
        .columns()
        .iter()
        .enumerate()
        .filter(|(_, c)| !b.is_zero_element(c))
        .map(|(j, c)| (j, column_degree(ring, b.gens(), c).ok().flatten()))
        .collect();
    let lo = lowest_degree(&[a, e, b]).min(lowest_degree(&[a]) + f.shift());
    let mut checks = Vec::new();
    for d in lo..=cutoff {
        let (ha, he, hb) = (a.hilbert(d - f.shift()), e.hilbert(d), b.hilbert(d + g.shift()));
        let bad: Vec<usize> =
            bad_columns.iter().filter(|(_, deg)| deg.is_none_or(|x| x == d + g.shift())).map(|(j, _)| *j).collect();
        checks.push(DegreeCheck {
            degree: d,
            condition: Condition::Composition,
            pass: bad.is_empty(),
            detail: if bad.is_empty() { String::new() } else { format!("nonzero image of generators {bad:?}") },
        });
        let img = f.image_dim(d);
        checks.push(DegreeCheck {
            degree: d,
            condition: Condition::Injective,
            pass: img == ha,
            detail: format!("dim A = {ha}, rank = {img}"),
        });
        let cok = g.cokernel().hilbert(d + g.shift());
        checks.push(DegreeCheck {
            degree: d,
            condition: Condition::Surjective,
            pass: cok == 0,
            detail: format!("dim coker = {cok}"),
        });
        checks.push(DegreeCheck {
            degree: d,
            condition: Condition::Additivity,
            pass: he == ha + hb,
            detail: format!("{he} = {ha} + {hb}"),
        });
    }
    ExactnessReport { cutoff, checks }
}

/// Outcome of [`check_extension`].
#[derive(Clone, Debug)]
pub struct ExtensionReport<F: Field> {
    pub embedding: PolyMatrix<F>,
    /// Map from `B` onto `E / A`, bijective in every checked degree.
    pub quotient_map: Option<PolyMatrix<F>>,
    pub checks: Vec<DegreeCheck>,
}

impl<F: Field> ExtensionReport<F> {
    pub fn pass(&self) -> bool {
        self.quotient_map.is_some() && self.checks.iter().all(|c| c.pass)
    }
}

fn random_combination<F: Field>(basis: &[PolyMatrix<F>], rng: &mut ChaCha8Rng) -> PolyMatrix<F> {
    let mut acc = basis[0].scale(&F::zero());
    for m in basis {
        let c = F::from_i64(rng.gen_range(-9..=9));
        acc = acc.add(&m.scale(&c));
    }
    acc
}

/// Searches a map of degree zero among random combinations of a Hom basis
/// satisfying `accept`. Basis elements are tried first.
pub(crate) fn search_map<F: Field>(
    basis: &[PolyMatrix<F>],
    seed: u64,
    tries: usize,
    mut accept: impl FnMut(&PolyMatrix<F>) -> bool,
) -> Option<PolyMatrix<F>> {
    if basis.is_empty() {
        return None;
    }
    for m in basis {
        if accept(m) {
            return Some(m.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..tries).map(|_| random_combination(basis, &mut rng)).find(|m| accept(m))
}

/// Certifies that `E` is an extension `0 -> A -> E -> B -> 0` through `cutoff`.
///
/// When no embedding is supplied one is searched among degree zero maps
/// `A -> E` that are injective through the cutoff. The quotient `E / A` is
/// then compared with `B` by a degree zero map `B -> E / A` which must be
/// surjective with equal Hilbert functions.
pub fn check_extension<F: Field>(
    e: &Arc<GradedModule<F>>,
    a: &Arc<GradedModule<F>>,
    b: &Arc<GradedModule<F>>,
    embedding: Option<PolyMatrix<F>>,
    cutoff: i64,
    seed: u64,
) -> Result<ExtensionReport<F>, ModuleError> {
    let lo = lowest_degree(&[a, e, b]);
    let injective = |m: &PolyMatrix<F>| -> bool {
        match ModuleMap::unchecked(a.clone(), e.clone(), m.clone(), 0) {
            Ok(map) => (lo..=cutoff).all(|d| map.image_dim(d) == a.hilbert(d)),
            Err(_) => false,
        }
    };
    let emb = match embedding {
        Some(m) => {
            ModuleMap::new(a.clone(), e.clone(), m.clone(), 0)?;
            m
        }
        None => search_map(&hom_basis(a, e, 0), seed, 24, injective)
            .ok_or_else(|| ModuleError::SearchFailed("injective map from the submodule".into()))?,
    };
    let emb_map = ModuleMap::unchecked(a.clone(), e.clone(), emb.clone(), 0)?;
    let q = Arc::new(emb_map.cokernel().clone());
    let mut checks = Vec::new();
    for d in lo..=cutoff {
        let (ha, img) = (a.hilbert(d), emb_map.image_dim(d));
        checks.push(DegreeCheck {
            degree: d,
            condition: Condition::Injective,
            pass: ha == img,
            detail: format!("dim A = {ha}, rank = {img}"),
        });
        let (hq, hb) = (q.hilbert(d), b.hilbert(d));
        checks.push(DegreeCheck {
            degree: d,
            condition: Condition::Additivity,
            pass: hq == hb,
            detail: format!("dim E/A = {hq}, dim B = {hb}"),
        });
    }
    let surjective = |m: &PolyMatrix<F>| -> bool {
        match ModuleMap::unchecked(b.clone(), q.clone(), m.clone(), 0) {
            Ok(map) => (lo..=cutoff).all(|d| map.cokernel().hilbert(d) == 0),
            Err(_) => false,
        }
    };
    let quotient_map = search_map(&hom_basis(b, &q, 0), seed.wrapping_add(1), 24, surjective);
    if let Some(m) = &quotient_map {
        let map = ModuleMap::unchecked(b.clone(), q.clone(), m.clone(), 0)?;
        for d in lo..=cutoff {
            let c = map.cokernel().hilbert(d);
            checks.push(DegreeCheck {
                degree: d,
                condition: Condition::Surjective,
                pass: c == 0,
                detail: format!("dim coker(B -> E/A) = {c}"),
            });
        }
    }
    Ok(ExtensionReport { embedding: emb, quotient_map, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::ring::GradedRing;

    #[test]
    fn koszul_sequence_is_exact() {
        // 0 -> R(-2) -> R(-1)^2 -> (x,y) -> 0 over k[x,y]
        let r = Arc::new(GradedRing::<Rational>::polynomial(&["x", "y"]).unwrap());
        let a = Arc::new(GradedModule::free(r.clone(), vec![2]));
        let e = Arc::new(GradedModule::free(r.clone(), vec![1, 1]));
        let b = Arc::new(GradedModule::ideal(r.clone(), &[r.p("x"), r.p("y")], 0).unwrap());
        let f =
            ModuleMap::new(a, e.clone(), PolyMatrix::from_rows(vec![vec![r.p("y")], vec![r.p("-x")]], 2), 0).unwrap();
        let g = ModuleMap::new(e, b, PolyMatrix::identity(2, 2), 0).unwrap();
        let rep = is_sequence_exact(&f, &g, 8);
        assert!(rep.pass(), "{:?}", rep.first_failure());
        // dropping the syzygy breaks injectivity nowhere but additivity fails
        let zero = ModuleMap::new(f.source().clone(), f.target().clone(), PolyMatrix::zeros(2, 1, 2), 0).unwrap();
        let rep = is_sequence_exact(&zero, &g, 8);
        assert_eq!(rep.first_failure().unwrap().condition, Condition::Injective);
    }

    #[test]
    fn split_extension() {
        let r = Arc::new(GradedRing::<Rational>::polynomial(&["x", "y"]).unwrap());
        let a = Arc::new(GradedModule::ideal(r.clone(), &[r.p("x"), r.p("y")], 0).unwrap());
        let b = Arc::new(GradedModule::free(r.clone(), vec![1]));
        let e = Arc::new(a.direct_sum(&b).unwrap());
        let rep = check_extension(&e, &a, &b, None, 6, 1).unwrap();
        assert!(rep.pass());
    }
}
