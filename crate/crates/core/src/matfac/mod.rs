//! Graded matrix factorizations `φ ψ = ψ φ = f · I`.
//!
//! Twist convention: `φ[i][j]` has degree `cols[j] - rows[i]` and
//! `ψ[j][i]` has degree `rows[i] + deg f - cols[j]`. The cokernel of `φ` is
//! generated in the row degrees.

mod equiv;
mod periodic;
mod random;
mod split;

pub use equiv::{equivalence, equivalent_up_to_twist, morphism_basis, MfMorphism};
pub use periodic::{periodic_resolution_check, PeriodicCheck, PeriodicReport};
pub use random::{random_factorization, scramble};
pub use split::{try_split, SplitOutcome, Substitution};

use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::Dense;
use crate::matrix::PolyMatrix;
use crate::modres::GradedModule;
use crate::parse::{int_list, keyed, split_list, ParseError};
use crate::poly::{Polynomial, RingError};
use crate::ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error("malformed factorization: {0}")]
    Shape(String),
    #[error("variable `{0}` already exists")]
    VariableCollision(String),
    #[error("potentials differ")]
    PotentialMismatch,
    #[error("potential must be a nonzero homogeneous polynomial")]
    BadPotential,
    #[error("potential of odd degree {0} has no square root variable")]
    OddDegree(i64),
    #[error("substitution is not an invertible linear change of variables")]
    NonInvertible,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization<F: Field> {
    ring: Arc<GradedRing<F>>,
    f: Polynomial<F>,
    phi: PolyMatrix<F>,
    psi: PolyMatrix<F>,
    rows: Vec<i64>,
    cols: Vec<i64>,
}

/// What went wrong in [`verify_mf`]. Entry indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MfFailure {
    /// `φψ` (or `ψφ` when `phi_first` is false) differs from `f·I` at the entry.
    Product { phi_first: bool, row: usize, col: usize },
    /// An entry of `φ` (or `ψ`) is not homogeneous of the forced degree.
    Degree { in_phi: bool, row: usize, col: usize },
}

impl fmt::Display for MfFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MfFailure::Product { phi_first, row, col } => {
                write!(f, "{} != f*I at entry ({row},{col})", if *phi_first { "phi*psi" } else { "psi*phi" })
            }
            MfFailure::Degree { in_phi, row, col } => {
                write!(f, "{} entry ({row},{col}) has the wrong degree", if *in_phi { "phi" } else { "psi" })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub failure: Option<MfFailure>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

impl<F: Field> MatrixFactorization<F> {
    /// Checks shapes only; use [`verify_mf`] for the defining identities.
    pub fn new(
        ring: Arc<GradedRing<F>>,
        f: Polynomial<F>,
        phi: PolyMatrix<F>,
        psi: PolyMatrix<F>,
        rows: Vec<i64>,
        cols: Vec<i64>,
    ) -> Result<Self, MfError> {
        let n = rows.len();
        if cols.len() != n {
            return Err(MfError::Shape(format!("{} row twists but {} column twists", n, cols.len())));
        }
        for (name, m) in [("phi", &phi), ("psi", &psi)] {
            if m.rows() != n || m.cols() != n {
                return Err(MfError::Shape(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
            }
            if m.nvars() != ring.nvars() {
                return Err(RingError::ArityMismatch { left: m.nvars(), right: ring.nvars() }.into());
            }
        }
        if f.nvars() != ring.nvars() {
            return Err(RingError::ArityMismatch { left: f.nvars(), right: ring.nvars() }.into());
        }
        if f.is_zero() || !ring.is_homogeneous(&f) {
            return Err(MfError::BadPotential);
        }
        if !ring.ideal().is_empty() {
            return Err(MfError::Shape("factorizations live over a polynomial ring".into()));
        }
        Ok(MatrixFactorization { ring, f, phi, psi, rows, cols })
    }

    /// The 0x0 factorization, neutral for direct sums.
    pub fn empty(ring: Arc<GradedRing<F>>, f: Polynomial<F>) -> Result<Self, MfError> {
        let n = ring.nvars();
        Self::new(ring, f, PolyMatrix::zeros(0, 0, n), PolyMatrix::zeros(0, 0, n), vec![], vec![])
    }

    pub fn ring(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn potential(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn phi(&self) -> &PolyMatrix<F> {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix<F> {
        &self.psi
    }

    pub fn rows(&self) -> &[i64] {
        &self.rows
    }

    pub fn cols(&self) -> &[i64] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn potential_degree(&self) -> i64 {
        self.ring.degree(&self.f).unwrap()
    }

    /// Replaces one entry of `φ`; used to build corrupted instances.
    pub fn with_phi_entry(&self, i: usize, j: usize, p: Polynomial<F>) -> Self {
        let mut out = self.clone();
        out.phi.set(i, j, p);
        out
    }

    pub fn with_psi_entry(&self, i: usize, j: usize, p: Polynomial<F>) -> Self {
        let mut out = self.clone();
        out.psi.set(i, j, p);
        out
    }

    /// The hypersurface ring `S/(f)`.
    pub fn quotient_ring(&self) -> Arc<GradedRing<F>> {
        Arc::new(self.ring.with_ideal(vec![self.f.clone()]).expect("homogeneous potential"))
    }

    /// Text form; see the crate documentation for the layout.
    pub fn to_text(&self) -> String {
        let mut s = String::from("mf\n");
        s.push_str(&self.ring.to_block());
        writeln!(s, "f: {}", self.ring.format(&self.f)).unwrap();
        let list = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.rows.is_empty() {
            s.push_str("rows:\ncols:\n");
        } else {
            writeln!(s, "rows: {}", list(&self.rows)).unwrap();
            writeln!(s, "cols: {}", list(&self.cols)).unwrap();
        }
        for (name, m) in [("phi", &self.phi), ("psi", &self.psi)] {
            writeln!(s, "{name}:").unwrap();
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|p| self.ring.format(p)).collect();
                writeln!(s, "{}", row.join(", ")).unwrap();
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, MfError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
        if lines.next() != Some("mf") {
            return Err(ParseError::Format("expected `mf` header".into()).into());
        }
        let ring = Arc::new(GradedRing::parse_block(&mut lines)?);
        let f = ring.parse(keyed(lines.next(), "f")?)?;
        let rows = int_list(keyed(lines.next(), "rows")?)?;
        let cols = int_list(keyed(lines.next(), "cols")?)?;
        let n = rows.len();
        let mut read = |name: &str| -> Result<PolyMatrix<F>, MfError> {
            if !keyed(lines.next(), name)?.is_empty() {
                return Err(ParseError::Format(format!("`{name}:` takes no inline value")).into());
            }
            let mut m = Vec::with_capacity(n);
            for _ in 0..n {
                let line = lines.next().ok_or_else(|| ParseError::Format(format!("{name} has fewer than {n} rows")))?;
                let row = split_list(line).into_iter().map(|t| ring.parse(t)).collect::<Result<Vec<_>, _>>()?;
                if row.len() != n {
                    return Err(MfError::Shape(format!("{name} row has {} entries, expected {n}", row.len())));
                }
                m.push(row);
            }
            Ok(if n == 0 { PolyMatrix::zeros(0, 0, ring.nvars()) } else { PolyMatrix::from_rows(m, ring.nvars()) })
        };
        let phi = read("phi")?;
        let psi = read("psi")?;
        if let Some(extra) = lines.next() {
            return Err(ParseError::Format(format!("trailing line `{extra}`")).into());
        }
        Self::new(ring, f, phi, psi, rows, cols)
    }
}

/// Checks `φψ = ψφ = f·I` entrywise and the degree of every entry.
pub fn verify_mf<F: Field>(m: &MatrixFactorization<F>) -> VerifyReport {
    let n = m.size();
    let target = PolyMatrix::scalar(n, &m.f);
    for (phi_first, prod) in [(true, m.phi.mul(&m.psi)), (false, m.psi.mul(&m.phi))] {
        for (i, j, p) in prod.entries() {
            if p != target.get(i, j) {
                return VerifyReport { failure: Some(MfFailure::Product { phi_first, row: i + 1, col: j + 1 }) };
            }
        }
    }
    let e = m.potential_degree();
    for (in_phi, mat) in [(true, &m.phi), (false, &m.psi)] {
        for (i, j, p) in mat.entries() {
            if p.is_zero() {
                continue;
            }
            let want = if in_phi { m.cols[j] - m.rows[i] } else { m.rows[j] + e - m.cols[i] };
            if !m.ring.is_homogeneous(p) || m.ring.degree(p) != Some(want) {
                return VerifyReport { failure: Some(MfFailure::Degree { in_phi, row: i + 1, col: j + 1 }) };
            }
        }
    }
    VerifyReport { failure: None }
}

/// `(ψᵀ, φᵀ)` with row twists `-rows` and column twists `deg f - cols`.
pub fn dual_mf<F: Field>(m: &MatrixFactorization<F>) -> MatrixFactorization<F> {
    let e = m.potential_degree();
    MatrixFactorization {
        ring: m.ring.clone(),
        f: m.f.clone(),
        phi: m.psi.transpose(),
        psi: m.phi.transpose(),
        rows: m.rows.iter().map(|r| -r).collect(),
        cols: m.cols.iter().map(|c| e - c).collect(),
    }
}

/// Shifts all twists by `shift`.
pub fn twist_mf<F: Field>(m: &MatrixFactorization<F>, shift: i64) -> MatrixFactorization<F> {
    let mut out = m.clone();
    out.rows.iter_mut().for_each(|r| *r += shift);
    out.cols.iter_mut().for_each(|c| *c += shift);
    out
}

pub fn direct_sum_mf<F: Field>(
    a: &MatrixFactorization<F>,
    b: &MatrixFactorization<F>,
) -> Result<MatrixFactorization<F>, MfError> {
    if a.ring != b.ring {
        return Err(RingError::Descriptor("factorizations over different rings".into()).into());
    }
    if a.f != b.f {
        return Err(MfError::PotentialMismatch);
    }
    let cat = |x: &[i64], y: &[i64]| x.iter().chain(y).copied().collect::<Vec<_>>();
    Ok(MatrixFactorization {
        ring: a.ring.clone(),
        f: a.f.clone(),
        phi: a.phi.direct_sum(&b.phi),
        psi: a.psi.direct_sum(&b.psi),
        rows: cat(&a.rows, &b.rows),
        cols: cat(&a.cols, &b.cols),
    })
}

fn fresh(ring: &GradedRing<impl Field>, names: &[&str]) -> Result<(), MfError> {
    for n in names {
        if ring.var_index(n).is_some() {
            return Err(MfError::VariableCollision(n.to_string()));
        }
    }
    if names.len() == 2 && names[0] == names[1] {
        return Err(MfError::VariableCollision(names[0].to_string()));
    }
    Ok(())
}

/// Builds `[[a·I, ψ], [φ, -b·I]]` style blocks over the enlarged ring.
fn two_by_two<F: Field>(
    m: &MatrixFactorization<F>,
    ring: Arc<GradedRing<F>>,
    first: &Polynomial<F>,
    second: &Polynomial<F>,
    du: i64,
) -> (PolyMatrix<F>, Vec<i64>, Vec<i64>) {
    let extra = ring.nvars() - m.ring.nvars();
    let n = m.size();
    let phi = m.phi.extend_vars(extra);
    let psi = m.psi.extend_vars(extra);
    let top_left = PolyMatrix::scalar(n, first);
    let bottom_right = PolyMatrix::scalar(n, &-second);
    let block = PolyMatrix::block(&top_left, &psi, &phi, &bottom_right);
    let e = m.potential_degree();
    let rows: Vec<i64> = m.cols.iter().copied().chain(m.rows.iter().map(|r| r + du)).collect();
    let cols: Vec<i64> = m.cols.iter().map(|c| c + du).chain(m.rows.iter().map(|r| r + e)).collect();
    (block, rows, cols)
}

/// Knörrer periodicity: a factorization of `f + uv` over `S[u,v]` given by
/// `([[u, ψ], [φ, -v]], [[v, ψ], [φ, -u]])`.
pub fn knoerrer_periodicity<F: Field>(
    m: &MatrixFactorization<F>,
    u: &str,
    v: &str,
) -> Result<MatrixFactorization<F>, MfError> {
    fresh(&m.ring, &[u, v])?;
    let e = m.potential_degree();
    if e < 2 {
        return Err(MfError::BadPotential);
    }
    let du = e / 2;
    let dv = e - du;
    let ring = Arc::new(m.ring.adjoin(&[u, v], &[du as u32, dv as u32])?);
    let (pu, pv) = (ring.var(u), ring.var(v));
    let (phi, rows, cols) = two_by_two(m, ring.clone(), &pu, &pv, du);
    let (psi, _, _) = two_by_two(m, ring.clone(), &pv, &pu, du);
    let f = &m.f.extend_vars(2) + &(&pu * &pv);
    MatrixFactorization::new(ring, f, phi, psi, rows, cols)
}

/// Knörrer's double branched cover: `([[y, ψ], [φ, -y]], same)` for `f + y²`.
pub fn double_branched_cover<F: Field>(m: &MatrixFactorization<F>, y: &str) -> Result<MatrixFactorization<F>, MfError> {
    fresh(&m.ring, &[y])?;
    let e = m.potential_degree();
    if e % 2 != 0 {
        return Err(MfError::OddDegree(e));
    }
    let dy = e / 2;
    let ring = Arc::new(m.ring.adjoin(&[y], &[dy as u32])?);
    let py = ring.var(y);
    let (phi, rows, cols) = two_by_two(m, ring.clone(), &py, &py, dy);
    let f = &m.f.extend_vars(1) + &(&py * &py);
    MatrixFactorization::new(ring, f, phi.clone(), phi, rows, cols)
}

/// Applies the linear substitution `var_k -> images[k]` into `target`.
pub fn change_of_variables<F: Field>(
    m: &MatrixFactorization<F>,
    target: Arc<GradedRing<F>>,
    images: &[Polynomial<F>],
) -> Result<MatrixFactorization<F>, MfError> {
    let n = m.ring.nvars();
    if images.len() != n || target.nvars() != n || images.iter().any(|p| p.nvars() != n) {
        return Err(MfError::NonInvertible);
    }
    // each image must be a linear form of the same weight
    let mut jac: Dense<F> = Dense::zeros(n, n);
    for (k, img) in images.iter().enumerate() {
        for (mono, c) in img.terms() {
            let exps = mono.exponents();
            let Some(var) = exps.iter().position(|&e| e == 1) else {
                return Err(MfError::NonInvertible);
            };
            if mono.total_degree() != 1 || target.weights()[var] != m.ring.weights()[k] {
                return Err(MfError::NonInvertible);
            }
            jac.set(k, var, c.clone());
        }
    }
    if jac.inverse().is_none() {
        return Err(MfError::NonInvertible);
    }
    MatrixFactorization::new(
        target,
        m.f.substitute(images),
        m.phi.substitute(images),
        m.psi.substitute(images),
        m.rows.clone(),
        m.cols.clone(),
    )
}

/// Moves a factorization into a ring with the same variable names in
/// another order (or with extra variables).
pub fn rename_into<F: Field>(
    m: &MatrixFactorization<F>,
    target: Arc<GradedRing<F>>,
) -> Result<MatrixFactorization<F>, MfError> {
    let mut images = Vec::with_capacity(m.ring.nvars());
    for (name, w) in m.ring.names().iter().zip(m.ring.weights()) {
        let k = target.var_index(name).ok_or(MfError::NonInvertible)?;
        if target.weights()[k] != *w {
            return Err(MfError::NonInvertible);
        }
        images.push(target.var(name));
    }
    MatrixFactorization::new(
        target.clone(),
        m.f.substitute(&images),
        m.phi.substitute(&images),
        m.psi.substitute(&images),
        m.rows.clone(),
        m.cols.clone(),
    )
}

/// `coker φ` over `S/(f)`: generators in the row degrees, relations the columns of `φ`.
pub fn cokernel_module<F: Field>(m: &MatrixFactorization<F>) -> GradedModule<F> {
    let ring = m.quotient_ring();
    GradedModule::new(ring, m.rows.clone(), m.phi.clone()).expect("verified factorization is homogeneous")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gaussian;

    fn kxt() -> Arc<GradedRing<Gaussian>> {
        Arc::new(GradedRing::polynomial(&["x", "t"]).unwrap())
    }

    fn one_by_one(r: &Arc<GradedRing<Gaussian>>, f: &str, a: &str, b: &str, c: i64) -> MatrixFactorization<Gaussian> {
        MatrixFactorization::new(
            r.clone(),
            r.p(f),
            PolyMatrix::from_rows(vec![vec![r.p(a)]], r.nvars()),
            PolyMatrix::from_rows(vec![vec![r.p(b)]], r.nvars()),
            vec![0],
            vec![c],
        )
        .unwrap()
    }

    #[test]
    fn verification_and_first_failure() {
        let r = kxt();
        assert!(verify_mf(&one_by_one(&r, "x^2", "x^2", "1", 2)).pass());
        let wrong = one_by_one(&r, "x^3", "x", "x", 1);
        assert_eq!(verify_mf(&wrong).failure, Some(MfFailure::Product { phi_first: true, row: 1, col: 1 }));
    }

    #[test]
    fn knoerrer_of_type_ii() {
        let r = kxt();
        let k = knoerrer_periodicity(&one_by_one(&r, "x^2", "x", "x", 1), "u", "v").unwrap();
        assert!(verify_mf(&k).pass());
        let s = k.ring();
        assert_eq!(k.potential(), &s.p("x^2 + u*v"));
        assert_eq!(k.phi().format(s.names()), "u, x\nx, -v");
        assert_eq!(k.psi().format(s.names()), "v, x\nx, -u");
        assert!(matches!(knoerrer_periodicity(&k, "u", "w"), Err(MfError::VariableCollision(_))));
    }

    #[test]
    fn double_cover_and_dual() {
        let r = kxt();
        let m = one_by_one(&r, "x^2", "x", "x", 1);
        let d = double_branched_cover(&m, "y").unwrap();
        assert!(verify_mf(&d).pass());
        assert_eq!(d.phi(), d.psi());
        assert_eq!(dual_mf(&dual_mf(&d)), d);
        assert!(verify_mf(&dual_mf(&d)).pass());
        assert_eq!(dual_mf(&m), m);
    }

    #[test]
    fn text_roundtrip() {
        let r = kxt();
        let m = one_by_one(&r, "x^2", "x", "x", 1);
        let text = m.to_text();
        assert_eq!(text, "mf\nvars: x,t\ndegs: 1,1\nmod:\nf: x^2\nrows: 0\ncols: 1\nphi:\nx\npsi:\nx\n");
        assert_eq!(MatrixFactorization::from_text(&text).unwrap(), m);
        let e = MatrixFactorization::empty(r.clone(), r.p("x^2")).unwrap();
        assert_eq!(MatrixFactorization::<Gaussian>::from_text(&e.to_text()).unwrap(), e);
    }
}
