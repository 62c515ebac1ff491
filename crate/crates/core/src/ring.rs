//! Graded polynomial rings and their quotients.

use std::fmt::Write as _;

use crate::field::Field;
use crate::gb::{ModVec, ModuleBasis, TermOrder};
use crate::monomial::MonomialOrder;
use crate::parse::{int_list, keyed, parse_polynomial, split_list, ParseError};
use crate::poly::{Polynomial, RingError};

/// `k[vars] / (ideal)` with positive variable weights.
#[derive(Clone, Debug)]
pub struct GradedRing<F: Field> {
    names: Vec<String>,
    weights: Vec<u32>,
    ideal: Vec<Polynomial<F>>,
    order: MonomialOrder,
    basis: ModuleBasis<F>,
}

impl<F: Field> PartialEq for GradedRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.weights == other.weights
            && self.ideal == other.ideal
            && self.order == other.order
    }
}

impl<F: Field> Eq for GradedRing<F> {}

impl<F: Field> GradedRing<F> {
    pub fn new(
        names: Vec<String>,
        weights: Vec<u32>,
        ideal: Vec<Polynomial<F>>,
        order: MonomialOrder,
    ) -> Result<Self, RingError> {
        if names.len() != weights.len() {
            return Err(RingError::Descriptor(format!("{} variables but {} degrees", names.len(), weights.len())));
        }
        if weights.contains(&0) {
            return Err(RingError::Descriptor("variable degrees must be positive".into()));
        }
        for (k, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid || n == "i" {
                return Err(RingError::Descriptor(format!("invalid variable name `{n}`")));
            }
            if names[..k].contains(n) {
                return Err(RingError::Descriptor(format!("duplicate variable `{n}`")));
            }
        }
        for (index, g) in ideal.iter().enumerate() {
            if g.nvars() != names.len() {
                return Err(RingError::ArityMismatch { left: g.nvars(), right: names.len() });
            }
            if !g.is_homogeneous(&weights) {
                return Err(RingError::NotHomogeneous { index });
            }
        }
        let ideal: Vec<Polynomial<F>> = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        let ord = TermOrder::new(order, weights.clone(), vec![0]);
        let gens: Vec<ModVec<F>> = ideal.iter().map(|g| ModVec::from_column(std::slice::from_ref(g), &ord)).collect();
        let basis = ModuleBasis::compute(&gens, ord);
        Ok(GradedRing { names, weights, ideal, order, basis })
    }

    /// Polynomial ring with all variables of degree one.
    pub fn polynomial(names: &[&str]) -> Result<Self, RingError> {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
            Vec::new(),
            MonomialOrder::GrevLex,
        )
    }

    /// Parses the ideal generators from text and builds the ring.
    pub fn from_strings(names: &[&str], weights: &[u32], ideal: &[&str]) -> Result<Self, ParseError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let ideal = ideal.iter().map(|t| parse_polynomial(t, &names)).collect::<Result<Vec<_>, _>>()?;
        Self::new(names, weights.to_vec(), ideal, MonomialOrder::GrevLex).map_err(|e| ParseError::Format(e.to_string()))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Defining ideal generators as given.
    pub fn ideal(&self) -> &[Polynomial<F>] {
        &self.ideal
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn ideal_basis(&self) -> Vec<Polynomial<F>> {
        let n = self.nvars();
        self.basis.elements().iter().map(|v| v.to_column(1, n).remove(0)).collect()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.ideal.len() == 1
    }

    /// Same variables, no relations.
    pub fn ambient(&self) -> Self {
        Self::new(self.names.clone(), self.weights.clone(), Vec::new(), self.order).unwrap()
    }

    /// Same variables, new defining ideal.
    pub fn with_ideal(&self, ideal: Vec<Polynomial<F>>) -> Result<Self, RingError> {
        Self::new(self.names.clone(), self.weights.clone(), ideal, self.order)
    }

    /// Appends variables; the defining ideal is carried along.
    pub fn adjoin(&self, names: &[&str], weights: &[u32]) -> Result<Self, RingError> {
        let mut all = self.names.clone();
        all.extend(names.iter().map(|s| s.to_string()));
        let mut w = self.weights.clone();
        w.extend_from_slice(weights);
        let ideal = self.ideal.iter().map(|g| g.extend_vars(names.len())).collect();
        Self::new(all, w, ideal, self.order)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Polynomial<F> {
        let k = self.var_index(name).unwrap_or_else(|| panic!("no variable `{name}`"));
        Polynomial::var(self.nvars(), k)
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial<F> {
        Polynomial::one(self.nvars())
    }

    pub fn constant(&self, c: F) -> Polynomial<F> {
        Polynomial::constant(self.nvars(), c)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F>, ParseError> {
        parse_polynomial(text, &self.names)
    }

    /// Parses text known to be valid; panics otherwise.
    pub fn p(&self, text: &str) -> Polynomial<F> {
        self.parse(text).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn format(&self, p: &Polynomial<F>) -> String {
        p.format(&self.names)
    }

    pub fn degree(&self, p: &Polynomial<F>) -> Option<i64> {
        p.degree(&self.weights)
    }

    pub fn is_homogeneous(&self, p: &Polynomial<F>) -> bool {
        p.is_homogeneous(&self.weights)
    }

    /// Term order for a free module with the given basis degrees.
    pub fn term_order(&self, comp_degrees: Vec<i64>) -> TermOrder {
        TermOrder::new(self.order, self.weights.clone(), comp_degrees)
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let ord = self.basis.order();
        let v = ModVec::from_column(std::slice::from_ref(p), ord);
        self.basis.reduce(&v).to_column(1, self.nvars()).remove(0)
    }

    pub fn is_zero_mod(&self, p: &Polynomial<F>) -> bool {
        self.reduce(p).is_zero()
    }

    /// Hilbert function of the quotient ring.
    pub fn hilbert(&self, d: i64) -> usize {
        self.basis.hilbert(d)
    }

    /// Text block: `vars:`, `degs:`, `mod:` and, for a non-default order, `order:`.
    pub fn to_block(&self) -> String {
        let mut s = String::new();
        writeln!(s, "vars: {}", self.names.join(",")).unwrap();
        let degs: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        writeln!(s, "degs: {}", degs.join(",")).unwrap();
        let gens: Vec<String> = self.ideal.iter().map(|g| self.format(g)).collect();
        if gens.is_empty() {
            s.push_str("mod:\n");
        } else {
            writeln!(s, "mod: {}", gens.join(", ")).unwrap();
        }
        if self.order != MonomialOrder::GrevLex {
            writeln!(s, "order: {}", self.order).unwrap();
        }
        s
    }

    /// Parses a ring block from the front of `lines`, consuming it.
    pub fn parse_block<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<Self, ParseError>
    where
        I: Iterator<Item = &'a str>,
    {
        let names: Vec<String> = split_list(keyed(lines.next(), "vars")?).into_iter().map(String::from).collect();
        let degs = int_list(keyed(lines.next(), "degs")?)?;
        let weights = degs
            .iter()
            .map(|&d| u32::try_from(d).map_err(|_| ParseError::Format(format!("bad degree {d}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = split_list(keyed(lines.next(), "mod")?)
            .into_iter()
            .map(|t| parse_polynomial(t, &names))
            .collect::<Result<Vec<_>, _>>()?;
        let mut order = MonomialOrder::GrevLex;
        if let Some(line) = lines.peek() {
            if line.starts_with("order:") {
                let tag = keyed(lines.next(), "order")?;
                order =
                    MonomialOrder::from_tag(tag).ok_or_else(|| ParseError::Format(format!("unknown order `{tag}`")))?;
            }
        }
        Self::new(names, weights, ideal, order).map_err(|e| ParseError::Format(e.to_string()))
    }

    pub fn from_block(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
        let r = Self::parse_block(&mut lines)?;
        match lines.next() {
            None => Ok(r),
            Some(extra) => Err(ParseError::Format(format!("trailing line `{extra}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gaussian, Rational};

    #[test]
    fn cone_ring_block_roundtrip() {
        let r: GradedRing<Rational> =
            GradedRing::from_strings(&["x", "u", "v", "t"], &[1, 1, 1, 1], &["x^2 + u*v"]).unwrap();
        assert!(r.is_hypersurface());
        let block = r.to_block();
        assert_eq!(block, "vars: x,u,v,t\ndegs: 1,1,1,1\nmod: x^2 + u*v\n");
        assert_eq!(GradedRing::<Rational>::from_block(&block).unwrap(), r);
        // Hilbert function of a quadric in P^3 is (d+1)^2
        for d in 0..6 {
            assert_eq!(r.hilbert(d), ((d + 1) * (d + 1)) as usize);
        }
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(GradedRing::<Rational>::from_strings(&["x", "y"], &[1, 1], &["x^2 + y"]).is_err());
        assert!(GradedRing::<Rational>::polynomial(&["x", "x"]).is_err());
        assert!(GradedRing::<Gaussian>::polynomial(&["i", "x"]).is_err());
    }

    #[test]
    fn weighted_block_with_order() {
        let r: GradedRing<Rational> =
            GradedRing::new(vec!["x".into(), "y".into()], vec![1, 2], vec![], MonomialOrder::Lex).unwrap();
        let text = r.to_block();
        assert!(text.ends_with("order: lex\n"));
        assert_eq!(GradedRing::<Rational>::from_block(&text).unwrap(), r);
        assert_eq!(r.hilbert(4), 3);
    }
}
