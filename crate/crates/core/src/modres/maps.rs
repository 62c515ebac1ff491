//! Homogeneous maps between presented modules and the search for them.

use std::collections::HashMap;
use std::sync::Arc;

use super::{GradedModule, ModuleError};
use crate::field::Field;
use crate::linalg::Dense;
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// A map `source -> target` raising degrees by `shift`. Column `j` of the
/// matrix is the image of source generator `j`.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    source: Arc<GradedModule<F>>,
    target: Arc<GradedModule<F>>,
    matrix: PolyMatrix<F>,
    shift: i64,
    coker: std::sync::OnceLock<GradedModule<F>>,
}

impl<F: Field> ModuleMap<F> {
    /// Builds the map after checking degrees and that relations go to relations.
    pub fn new(
        source: Arc<GradedModule<F>>,
        target: Arc<GradedModule<F>>,
        matrix: PolyMatrix<F>,
        shift: i64,
    ) -> Result<Self, ModuleError> {
        let map = Self::unchecked(source, target, matrix, shift)?;
        map.check_degrees()?;
        map.check_well_defined()?;
        Ok(map)
    }

    /// Builds the map checking only shapes and the common ring.
    pub fn unchecked(
        source: Arc<GradedModule<F>>,
        target: Arc<GradedModule<F>>,
        matrix: PolyMatrix<F>,
        shift: i64,
    ) -> Result<Self, ModuleError> {
        if source.ring() != target.ring() {
            return Err(ModuleError::RingMismatch);
        }
        if matrix.rows() != target.num_gens() || matrix.cols() != source.num_gens() {
            return Err(ModuleError::Shape { rows: matrix.rows(), gens: target.num_gens() });
        }
        Ok(ModuleMap { source, target, matrix, shift, coker: Default::default() })
    }

    pub fn identity(m: Arc<GradedModule<F>>) -> Self {
        let n = m.num_gens();
        let id = PolyMatrix::identity(n, m.ring().nvars());
        ModuleMap { source: m.clone(), target: m, matrix: id, shift: 0, coker: Default::default() }
    }

    pub fn source(&self) -> &Arc<GradedModule<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule<F>> {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn check_degrees(&self) -> Result<(), ModuleError> {
        let ring = self.source.ring();
        for (i, j, p) in self.matrix.entries() {
            if p.is_zero() {
                continue;
            }
            let want = self.source.gens()[j] + self.shift - self.target.gens()[i];
            if !ring.is_homogeneous(p) || ring.degree(p) != Some(want) {
                return Err(ModuleError::MapDegree { row: i, col: j });
            }
        }
        Ok(())
    }

    /// Every source relation must map into the target's relations.
    pub fn check_well_defined(&self) -> Result<(), ModuleError> {
        for (j, rel) in self.source.rels().columns().iter().enumerate() {
            let img = self.matrix.mul_column(rel);
            if !self.target.is_zero_element(&img) {
                return Err(ModuleError::NotWellDefined { column: j });
            }
        }
        Ok(())
    }

    /// `target / image`.
    pub fn cokernel(&self) -> &GradedModule<F> {
        self.coker.get_or_init(|| self.target.quotient(&self.matrix).expect("homogeneous image"))
    }

    /// Dimension of the image inside the degree `d` piece of the target.
    pub fn image_dim(&self, d: i64) -> usize {
        self.target.hilbert(d) - self.cokernel().hilbert(d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
            shift: self.shift + other.shift,
            coker: Default::default(),
        }
    }

    /// True when every generator maps to zero.
    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }
}

/// Basis of the space of maps `a -> b` raising degrees by `shift`.
pub fn hom_basis<F: Field>(a: &GradedModule<F>, b: &GradedModule<F>, shift: i64) -> Vec<PolyMatrix<F>> {
    let n = a.ring().nvars();
    let k = b.num_gens();
    // unknowns: (source generator j, standard term of b in degree gens[j] + shift)
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for (j, &d) in a.gens().iter().enumerate() {
        for (c, m) in b.standard_terms(d + shift) {
            unknowns.push((j, c, m));
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }
    let unit_column = |c: usize, m: &Monomial, coeff: &Polynomial<F>| -> Vec<Polynomial<F>> {
        let mut col = vec![Polynomial::zero(n); k];
        col[c] = coeff.mul_term(m, &F::one());
        col
    };
    let mut eq_index: HashMap<(usize, usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, F)> = Vec::new();
    for (r, rel) in a.rels().columns().iter().enumerate() {
        for (u, (j, c, m)) in unknowns.iter().enumerate() {
            if rel[*j].is_zero() {
                continue;
            }
            let img = b.basis().reduce(&b.to_vec(&unit_column(*c, m, &rel[*j])));
            for (cc, mm, coeff) in img.terms() {
                let next = eq_index.len();
                let row = *eq_index.entry((r, *cc, mm.clone())).or_insert(next);
                entries.push((row, u, coeff.clone()));
            }
        }
    }
    let mut system: Dense<F> = Dense::zeros(eq_index.len(), unknowns.len());
    for (row, col, v) in entries {
        let cur = system.get(row, col).add(&v);
        system.set(row, col, cur);
    }
    system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut m = PolyMatrix::zeros(k, a.num_gens(), n);
            for (coeff, (j, c, mono)) in v.iter().zip(&unknowns) {
                if coeff.is_zero() {
                    continue;
                }
                let cur = m.get(*c, *j).clone();
                m.set(*c, *j, &cur + &Polynomial::monomial(mono.clone(), coeff.clone()));
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::ring::GradedRing;

    #[test]
    fn endomorphisms_of_residue_class_ring() {
        // R/(x) over k[x,t]/(x^2): degree-0 endomorphisms are scalars
        let r = Arc::new(GradedRing::<Rational>::from_strings(&["x", "t"], &[1, 1], &["x^2"]).unwrap());
        let m = GradedModule::new(r.clone(), vec![0], PolyMatrix::from_rows(vec![vec![r.p("x")]], 2)).unwrap();
        assert_eq!(hom_basis(&m, &m, 0).len(), 1);
        // degree-one maps: multiplication by t only (x acts as zero)
        assert_eq!(hom_basis(&m, &m, 1).len(), 1);
        // maps R -> R/(x) of degree 1: x and t, but x is zero in the target
        let free = GradedModule::free(r.clone(), vec![0]);
        assert_eq!(hom_basis(&free, &m, 1).len(), 1);
    }

    #[test]
    fn well_definedness_is_checked() {
        let r = Arc::new(GradedRing::<Rational>::polynomial(&["x", "t"]).unwrap());
        let a =
            Arc::new(GradedModule::new(r.clone(), vec![0], PolyMatrix::from_rows(vec![vec![r.p("x")]], 2)).unwrap());
        let free = Arc::new(GradedModule::free(r.clone(), vec![0]));
        let bad = ModuleMap::new(a.clone(), free.clone(), PolyMatrix::identity(1, 2), 0);
        assert!(matches!(bad, Err(ModuleError::NotWellDefined { .. })));
        let ok = ModuleMap::new(free, a, PolyMatrix::identity(1, 2), 0);
        assert!(ok.is_ok());
    }
}
