//! Matrices of polynomials.

use crate::field::Field;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, data: vec![Polynomial::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::scalar(n, &Polynomial::one(nvars))
    }

    /// `p * I_n`
    pub fn scalar(n: usize, p: &Polynomial<F>) -> Self {
        let mut m = Self::zeros(n, n, p.nvars());
        for k in 0..n {
            m.set(k, k, p.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial<F>>>, nvars: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        assert!(rows.iter().flatten().all(|p| p.nvars() == nvars), "arity mismatch");
        PolyMatrix { rows: r, cols: c, nvars, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: Vec<Vec<Polynomial<F>>>, rows: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len(), nvars);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, p) in col.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        assert_eq!(p.nvars(), self.nvars);
        self.data[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<F>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial<F>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Polynomial<F>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial<F>)> {
        self.data.iter().enumerate().map(move |(k, p)| (k / self.cols.max(1), k % self.cols.max(1), p))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out = Self::zeros(self.rows, rhs.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_column(&self, v: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Polynomial::zero(self.nvars), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, rhs: &PolyMatrix<F>) -> PolyMatrix<F> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &PolyMatrix<F>) -> PolyMatrix<F> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &PolyMatrix<F>, op: impl Fn(&Polynomial<F>, &Polynomial<F>) -> Polynomial<F>) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> PolyMatrix<F> {
        let data: Vec<Polynomial<F>> = self.data.iter().map(f).collect();
        let nvars = data.first().map_or(self.nvars, Polynomial::nvars);
        PolyMatrix { rows: self.rows, cols: self.cols, nvars, data }
    }

    pub fn neg(&self) -> PolyMatrix<F> {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &F) -> PolyMatrix<F> {
        self.map(|p| p.scale(c))
    }

    pub fn transpose(&self) -> PolyMatrix<F> {
        let mut out = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn substitute(&self, images: &[Polynomial<F>]) -> PolyMatrix<F> {
        let nvars = images.first().map_or(0, Polynomial::nvars);
        let mut out = self.map(|p| p.substitute(images));
        out.nvars = nvars;
        out
    }

    pub fn extend_vars(&self, extra: usize) -> PolyMatrix<F> {
        let mut out = self.map(|p| p.extend_vars(extra));
        out.nvars = self.nvars + extra;
        out
    }

    /// `[[a, b], [c, d]]` from four blocks.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> PolyMatrix<F> {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (r, k) = (a.rows + c.rows, a.cols + b.cols);
        let mut out = Self::zeros(r, k, a.nvars);
        for (src, di, dj) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..src.rows {
                for j in 0..src.cols {
                    out.set(i + di, j + dj, src.get(i, j).clone());
                }
            }
        }
        out
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &Self) -> PolyMatrix<F> {
        let nvars = if self.rows + self.cols == 0 { rhs.nvars } else { self.nvars };
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols, nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Self) -> PolyMatrix<F> {
        assert_eq!(self.rows, rhs.rows);
        let mut cols = self.columns();
        cols.extend(rhs.columns());
        Self::from_columns(cols, self.rows, self.nvars.max(rhs.nvars))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix<F> {
        let mut out = Self::zeros(rows.len(), cols.len(), self.nvars);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rows separated by newlines, entries by `, `.
    pub fn format(&self, names: &[String]) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.format(names)).collect::<Vec<_>>().join(", "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::ring::GradedRing;

    #[test]
    fn block_product() {
        let r: GradedRing<Rational> = GradedRing::polynomial(&["x", "t"]).unwrap();
        let phi = PolyMatrix::from_rows(vec![vec![r.p("x"), r.p("t")], vec![r.zero(), r.p("-x")]], 2);
        let sq = phi.mul(&phi);
        assert_eq!(sq, PolyMatrix::scalar(2, &r.p("x^2")));
        assert_eq!(phi.transpose().transpose(), phi);
        let big = phi.direct_sum(&PolyMatrix::identity(1, 2));
        assert_eq!((big.rows(), big.cols()), (3, 3));
        let empty = PolyMatrix::<Rational>::zeros(0, 0, 2);
        assert_eq!(empty.direct_sum(&phi), phi);
    }
}
