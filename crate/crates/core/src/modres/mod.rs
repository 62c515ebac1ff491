//! Finitely presented graded modules over graded rings.

mod exact;
mod maps;
mod syzygy;

pub use exact::{check_extension, is_sequence_exact, Condition, DegreeCheck, ExactnessReport, ExtensionReport};
pub use maps::{hom_basis, ModuleMap};
pub use syzygy::{kernel, minimal_columns, submodule, syzygy_module};

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::field::Field;
use crate::gb::{ModVec, ModuleBasis};
use crate::matrix::PolyMatrix;
use crate::monomial::Monomial;
use crate::parse::{int_list, keyed, split_list, ParseError};
use crate::poly::Polynomial;
use crate::ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("relation matrix has {rows} rows for {gens} generators")]
    Shape { rows: usize, gens: usize },
    #[error("relation {column} is not homogeneous")]
    NotHomogeneous { column: usize },
    #[error("map entry ({row},{col}) has the wrong degree")]
    MapDegree { row: usize, col: usize },
    #[error("map does not send relation {column} into the target relations")]
    NotWellDefined { column: usize },
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("no {0} found within the search bounds")]
    SearchFailed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `R^k(-gens) / image(rels)` over `R = S/I`. Columns of `rels` are relations.
#[derive(Clone, Debug)]
pub struct GradedModule<F: Field> {
    ring: Arc<GradedRing<F>>,
    gens: Vec<i64>,
    rels: PolyMatrix<F>,
    rel_degrees: Vec<Option<i64>>,
    basis: OnceLock<ModuleBasis<F>>,
}

impl<F: Field> PartialEq for GradedModule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.rels == other.rels
    }
}

/// Degree of a column in the free module with basis degrees `gens`; `Err`
/// when the column is not homogeneous, `Ok(None)` when it is zero.
pub(crate) fn column_degree<F: Field>(
    ring: &GradedRing<F>,
    gens: &[i64],
    col: &[Polynomial<F>],
) -> Result<Option<i64>, ()> {
    let mut deg = None;
    for (i, p) in col.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        if !ring.is_homogeneous(p) {
            return Err(());
        }
        let d = ring.degree(p).unwrap() + gens[i];
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Err(()),
            _ => {}
        }
    }
    Ok(deg)
}

impl<F: Field> GradedModule<F> {
    pub fn new(ring: Arc<GradedRing<F>>, gens: Vec<i64>, rels: PolyMatrix<F>) -> Result<Self, ModuleError> {
        if rels.rows() != gens.len() {
            return Err(ModuleError::Shape { rows: rels.rows(), gens: gens.len() });
        }
        let mut rel_degrees = Vec::with_capacity(rels.cols());
        for j in 0..rels.cols() {
            let d =
                column_degree(&ring, &gens, &rels.column(j)).map_err(|_| ModuleError::NotHomogeneous { column: j })?;
            rel_degrees.push(d);
        }
        Ok(GradedModule { ring, gens, rels, rel_degrees, basis: OnceLock::new() })
    }

    /// Free module `⊕ R(-d)` with generators in the given degrees.
    pub fn free(ring: Arc<GradedRing<F>>, gens: Vec<i64>) -> Self {
        let n = ring.nvars();
        let k = gens.len();
        Self::new(ring, gens, PolyMatrix::zeros(k, 0, n)).unwrap()
    }

    /// The ideal generated by `generators`, twisted by `twist`; generator `g`
    /// sits in degree `deg g - twist`.
    pub fn ideal(ring: Arc<GradedRing<F>>, generators: &[Polynomial<F>], twist: i64) -> Result<Self, ModuleError> {
        let row = PolyMatrix::from_rows(vec![generators.to_vec()], ring.nvars());
        let m = submodule(&ring, &[-twist], &row)?;
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    pub fn rels(&self) -> &PolyMatrix<F> {
        &self.rels
    }

    pub fn rel_degrees(&self) -> &[Option<i64>] {
        &self.rel_degrees
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Gröbner basis of the relations plus the defining ideal times each generator.
    pub fn basis(&self) -> &ModuleBasis<F> {
        self.basis.get_or_init(|| {
            let ord = self.ring.term_order(self.gens.clone());
            let mut vecs: Vec<ModVec<F>> = self.rels.columns().iter().map(|c| ModVec::from_column(c, &ord)).collect();
            let n = self.ring.nvars();
            for g in self.ring.ideal_basis() {
                for c in 0..self.gens.len() {
                    let mut col = vec![Polynomial::zero(n); self.gens.len()];
                    col[c] = g.clone();
                    vecs.push(ModVec::from_column(&col, &ord));
                }
            }
            ModuleBasis::compute(&vecs, ord)
        })
    }

    pub fn hilbert(&self, d: i64) -> usize {
        self.basis().hilbert(d)
    }

    pub fn hilbert_range(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.hilbert(d)).collect()
    }

    /// Standard terms spanning the degree `d` piece.
    pub fn standard_terms(&self, d: i64) -> Vec<(usize, Monomial)> {
        self.basis().standard_terms(d)
    }

    pub fn to_vec(&self, col: &[Polynomial<F>]) -> ModVec<F> {
        ModVec::from_column(col, self.basis().order())
    }

    /// Normal form of an element given by its coordinates.
    pub fn reduce(&self, col: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let v = self.basis().reduce(&self.to_vec(col));
        v.to_column(self.gens.len(), self.ring.nvars())
    }

    pub fn is_zero_element(&self, col: &[Polynomial<F>]) -> bool {
        self.basis().contains(&self.to_vec(col))
    }

    /// `M(a)`: the degree `d` piece of `M(a)` is the degree `d + a` piece of `M`.
    pub fn twist(&self, a: i64) -> Self {
        GradedModule {
            ring: self.ring.clone(),
            gens: self.gens.iter().map(|g| g - a).collect(),
            rels: self.rels.clone(),
            rel_degrees: self.rel_degrees.iter().map(|d| d.map(|d| d - a)).collect(),
            basis: OnceLock::new(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ModuleError> {
        if self.ring != other.ring {
            return Err(ModuleError::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Self::new(self.ring.clone(), gens, self.rels.direct_sum(&other.rels))
    }

    /// Quotient by the submodule generated by extra relation columns.
    pub fn quotient(&self, extra: &PolyMatrix<F>) -> Result<Self, ModuleError> {
        Self::new(self.ring.clone(), self.gens.clone(), self.rels.hcat(extra))
    }

    /// Lowest degree in which the module can be nonzero.
    pub fn min_degree(&self) -> Option<i64> {
        self.gens.iter().copied().min()
    }

    /// Krull dimension of the ring, from the growth of its Hilbert function.
    pub fn ring_dimension(ring: &GradedRing<F>) -> usize {
        let probe = 2 * ring.weights().iter().copied().max().unwrap_or(1) as i64 + 8;
        let vals: Vec<i64> = (0..=probe).map(|d| ring.hilbert(d) as i64).collect();
        // number of differences needed to reach a constant tail, plus one
        let mut seq = vals;
        for k in 0..ring.nvars() + 1 {
            let tail = &seq[seq.len().saturating_sub(3)..];
            if tail.iter().all(|v| *v == tail[0]) {
                return if tail[0] == 0 { k } else { k + 1 };
            }
            seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
        }
        ring.nvars()
    }

    /// Generic rank: leading Hilbert coefficient relative to the ring's.
    pub fn rank(&self) -> usize {
        let dim = Self::ring_dimension(&self.ring);
        if dim == 0 {
            return 0;
        }
        let top = self.gens.iter().copied().max().unwrap_or(0).max(0) + 12;
        let diff = |f: &dyn Fn(i64) -> i64| -> i64 {
            // (dim-1)-th backward difference at `top`
            let k = dim as i64 - 1;
            (0..=k)
                .map(|j| {
                    let c = binomial(k, j) * if j % 2 == 0 { 1 } else { -1 };
                    c * f(top - j)
                })
                .sum()
        };
        let m = diff(&|d| self.hilbert(d) as i64);
        let r = diff(&|d| self.ring.hilbert(d) as i64);
        if r == 0 {
            0
        } else {
            ((m as f64) / (r as f64)).round() as usize
        }
    }

    /// Text form: `module`, ring block, `gens:`, `rels:` and one line per generator.
    pub fn to_text(&self) -> String {
        let mut s = String::from("module\n");
        s.push_str(&self.ring.to_block());
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        writeln!(s, "gens: {}", gens.join(",")).unwrap();
        s.push_str("rels:\n");
        if self.rels.cols() > 0 {
            for i in 0..self.rels.rows() {
                let row: Vec<String> = self.rels.row(i).iter().map(|p| self.ring.format(p)).collect();
                writeln!(s, "{}", row.join(", ")).unwrap();
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, ModuleError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
        if lines.next() != Some("module") {
            return Err(ParseError::Format("expected `module` header".into()).into());
        }
        let ring = Arc::new(GradedRing::parse_block(&mut lines)?);
        let gens = int_list(keyed(lines.next(), "gens")?)?;
        if !keyed(lines.next(), "rels")?.is_empty() {
            return Err(ParseError::Format("`rels:` takes no inline value".into()).into());
        }
        let rows: Vec<Vec<Polynomial<F>>> = lines
            .map(|l| split_list(l).into_iter().map(|t| ring.parse(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        let n = ring.nvars();
        let rels = if rows.is_empty() {
            PolyMatrix::zeros(gens.len(), 0, n)
        } else {
            if rows.len() != gens.len() || rows.iter().any(|r| r.len() != rows[0].len()) {
                return Err(ModuleError::Shape { rows: rows.len(), gens: gens.len() });
            }
            PolyMatrix::from_rows(rows, n)
        };
        Self::new(ring, gens, rels)
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gaussian;

    fn cone() -> Arc<GradedRing<Gaussian>> {
        Arc::new(GradedRing::from_strings(&["x", "u", "v", "t"], &[1; 4], &["x^2 + u*v"]).unwrap())
    }

    #[test]
    fn ideal_of_line_on_cone() {
        let r = cone();
        let il = GradedModule::ideal(r.clone(), &[r.p("x"), r.p("u")], 0).unwrap();
        assert_eq!(il.gens(), &[1, 1]);
        // I_L in degree d: (d+1)^2 - (d+1)
        for d in 0..7 {
            assert_eq!(il.hilbert(d) as i64, (d + 1) * (d + 1) - (d + 1));
        }
        assert_eq!(il.rank(), 1);
        let text = il.to_text();
        let back = GradedModule::<Gaussian>::from_text(&text).unwrap();
        assert_eq!(back, il);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn free_module_and_zero_module() {
        let r = cone();
        let f = GradedModule::free(r.clone(), vec![0, 0]);
        assert_eq!(f.rank(), 2);
        assert_eq!(f.hilbert(1), 8);
        let zero = f.quotient(&PolyMatrix::identity(2, 4)).unwrap();
        assert!((0..12).all(|d| zero.hilbert(d) == 0));
        assert_eq!(GradedModule::<Gaussian>::ring_dimension(&r), 3);
    }

    #[test]
    fn direct_sum_adds_hilbert_functions() {
        let r = cone();
        let a = GradedModule::ideal(r.clone(), &[r.p("x"), r.p("u")], 0).unwrap();
        let b = GradedModule::free(r.clone(), vec![2]);
        let s = a.direct_sum(&b).unwrap();
        for d in 0..8 {
            assert_eq!(s.hilbert(d), a.hilbert(d) + b.hilbert(d));
        }
    }
}
