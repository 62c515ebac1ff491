//! Kernels of maps between free modules, minimal generators and syzygies.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{column_degree, GradedModule, ModuleError};
use crate::field::Field;
use crate::gb::{ModVec, ModuleBasis, TermOrder};
use crate::linalg::Dense;
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::GradedRing;

fn ideal_multiples<F: Field>(
    ring: &GradedRing<F>,
    rank: usize,
    offset: usize,
    total: usize,
    ord: &TermOrder,
) -> Vec<ModVec<F>> {
    let n = ring.nvars();
    let mut out = Vec::new();
    for g in ring.ideal_basis() {
        for c in 0..rank {
            let mut col = vec![Polynomial::zero(n); total];
            col[offset + c] = g.clone();
            out.push(ModVec::from_column(&col, ord));
        }
    }
    out
}

/// Columns generating the kernel of `matrix: R^m(-source) -> target`, where
/// the target is a presented module. Not necessarily minimal.
pub fn kernel<F: Field>(matrix: &PolyMatrix<F>, source: &[i64], target: &GradedModule<F>) -> Vec<Vec<Polynomial<F>>> {
    let ring = target.ring();
    let n = ring.nvars();
    let k = target.num_gens();
    let m = source.len();
    assert_eq!(matrix.rows(), k);
    assert_eq!(matrix.cols(), m);
    let mut degs = target.gens().to_vec();
    degs.extend_from_slice(source);
    let ord = ring.term_order(degs).with_block(k);
    let mut gens = Vec::new();
    for j in 0..m {
        let mut col = matrix.column(j);
        col.extend((0..m).map(|i| if i == j { Polynomial::one(n) } else { Polynomial::zero(n) }));
        gens.push(ModVec::from_column(&col, &ord));
    }
    for rel in target.rels().columns() {
        let mut col = rel;
        col.extend((0..m).map(|_| Polynomial::zero(n)));
        gens.push(ModVec::from_column(&col, &ord));
    }
    gens.extend(ideal_multiples(ring, k, 0, k + m, &ord));
    let basis = ModuleBasis::compute(&gens, ord);
    basis.elements().iter().filter(|v| v.lead().unwrap().0 >= k).map(|v| v.to_column(k + m, n).split_off(k)).collect()
}

/// A minimal generating subset (up to the defining ideal) of the submodule of
/// the free module `R^k(-ambient)` spanned by `columns`, keeping the earliest
/// columns where there is a choice. Returns column indices.
pub fn minimal_columns<F: Field>(ring: &GradedRing<F>, ambient: &[i64], columns: &[Vec<Polynomial<F>>]) -> Vec<usize> {
    let k = ambient.len();
    let ord = ring.term_order(ambient.to_vec());
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (j, c) in columns.iter().enumerate() {
        if let Ok(Some(d)) = column_degree(ring, ambient, c) {
            by_degree.entry(d).or_default().push(j);
        }
    }
    let mut kept: Vec<usize> = Vec::new();
    let base = ideal_multiples(ring, k, 0, k, &ord);
    for (_, idx) in by_degree {
        let mut gens = base.clone();
        gens.extend(kept.iter().map(|&j| ModVec::from_column(&columns[j], &ord)));
        let gb = ModuleBasis::compute(&gens, ord.clone());
        // linear independence of normal forms within this degree
        let mut coords: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut rows: Vec<Vec<(usize, F)>> = Vec::new();
        let mut chosen = Vec::new();
        for j in idx {
            let nf = gb.reduce(&ModVec::from_column(&columns[j], &ord));
            if nf.is_zero() {
                continue;
            }
            let sparse: Vec<(usize, F)> = nf
                .terms()
                .iter()
                .map(|(c, m, a)| {
                    let next = coords.len();
                    (*coords.entry((*c, m.clone())).or_insert(next), a.clone())
                })
                .collect();
            rows.push(sparse);
            let width = coords.len();
            let dense = Dense::from_rows(
                rows.iter()
                    .map(|r| {
                        let mut v = vec![F::zero(); width];
                        for (i, a) in r {
                            v[*i] = a.clone();
                        }
                        v
                    })
                    .collect(),
            );
            if dense.rank() == rows.len() {
                chosen.push(j);
            } else {
                rows.pop();
            }
        }
        kept.extend(chosen);
    }
    kept.sort_unstable();
    kept
}

/// Presentation of the submodule of `R^k(-ambient)` generated by the columns
/// of `matrix`, on a minimal subset of those columns.
pub fn submodule<F: Field>(
    ring: &Arc<GradedRing<F>>,
    ambient: &[i64],
    matrix: &PolyMatrix<F>,
) -> Result<GradedModule<F>, ModuleError> {
    let cols = matrix.columns();
    for (j, c) in cols.iter().enumerate() {
        column_degree(ring, ambient, c).map_err(|_| ModuleError::NotHomogeneous { column: j })?;
    }
    let keep = minimal_columns(ring, ambient, &cols);
    let sub = matrix.submatrix(&(0..matrix.rows()).collect::<Vec<_>>(), &keep);
    presentation_of_image(ring, ambient, &sub)
}

/// Presentation of the image of `matrix` using all of its columns as generators.
pub(crate) fn presentation_of_image<F: Field>(
    ring: &Arc<GradedRing<F>>,
    ambient: &[i64],
    matrix: &PolyMatrix<F>,
) -> Result<GradedModule<F>, ModuleError> {
    let n = ring.nvars();
    let cols = matrix.columns();
    let mut degs = Vec::with_capacity(cols.len());
    for (j, c) in cols.iter().enumerate() {
        match column_degree(ring, ambient, c) {
            Ok(Some(d)) => degs.push(d),
            _ => return Err(ModuleError::NotHomogeneous { column: j }),
        }
    }
    let free = GradedModule::free(ring.clone(), ambient.to_vec());
    let ker = kernel(matrix, &degs, &free);
    let keep = minimal_columns(ring, &degs, &ker);
    let rels: Vec<Vec<Polynomial<F>>> = keep.into_iter().map(|j| ker[j].clone()).collect();
    let rels = PolyMatrix::from_columns(rels, degs.len(), n);
    GradedModule::new(ring.clone(), degs, rels)
}

/// First syzygy module of `M`: the kernel of the free cover `R^k(-gens) -> M`,
/// presented on a minimal set of generators.
pub fn syzygy_module<F: Field>(m: &GradedModule<F>) -> Result<GradedModule<F>, ModuleError> {
    submodule(m.ring(), m.gens(), m.rels())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = Arc::new(GradedRing::<Rational>::polynomial(&["x", "y"]).unwrap());
        let m = GradedModule::ideal(r.clone(), &[r.p("x"), r.p("y")], 0).unwrap();
        assert_eq!(m.rels().cols(), 1);
        assert_eq!(m.rel_degrees(), &[Some(2)]);
        let syz = syzygy_module(&m).unwrap();
        assert_eq!(syz.gens(), &[2]);
        assert_eq!(syz.rels().cols(), 0);
    }

    #[test]
    fn redundant_generators_are_pruned() {
        let r = Arc::new(GradedRing::<Rational>::polynomial(&["x", "y"]).unwrap());
        let row = PolyMatrix::from_rows(vec![vec![r.p("x"), r.p("x*y"), r.p("y"), r.p("x + y")]], 2);
        let m = submodule(&r, &[0], &row).unwrap();
        assert_eq!(m.gens(), &[1, 1]);
        let syz_of_free = syzygy_module(&GradedModule::free(r.clone(), vec![0, 1])).unwrap();
        assert_eq!(syz_of_free.num_gens(), 0);
    }
}
