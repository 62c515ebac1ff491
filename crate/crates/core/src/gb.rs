//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Ideals are the rank one case. Vectors are sparse lists of terms
//! `(component, monomial, coefficient)` kept in descending order for a
//! [`TermOrder`]. Hilbert functions are read off the leading terms.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::field::Field;
use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Order on the terms `m * e_c` of a graded free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    pub weights: Vec<u32>,
    /// Degree of each basis vector `e_c`.
    pub comp_degrees: Vec<i64>,
    /// When `Some(k)`, every term in components `< k` is larger than every
    /// term in components `>= k` (elimination of the first block).
    pub block: Option<usize>,
}

impl TermOrder {
    pub fn new(mono: MonomialOrder, weights: Vec<u32>, comp_degrees: Vec<i64>) -> Self {
        TermOrder { mono, weights, comp_degrees, block: None }
    }

    pub fn with_block(mut self, block: usize) -> Self {
        self.block = Some(block);
        self
    }

    pub fn term_degree(&self, comp: usize, m: &Monomial) -> i64 {
        m.degree(&self.weights) + self.comp_degrees[comp]
    }

    pub fn compare(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        if let Some(k) = self.block {
            let (ia, ib) = (a.0 < k, b.0 < k);
            if ia != ib {
                return ia.cmp(&ib);
            }
        }
        self.term_degree(a.0, a.1)
            .cmp(&self.term_degree(b.0, b.1))
            .then_with(|| self.mono.compare(a.1, b.1, &self.weights))
            .then_with(|| b.0.cmp(&a.0))
    }
}

/// A vector of a free module, terms sorted descending for some [`TermOrder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModVec<F: Field> {
    terms: Vec<(usize, Monomial, F)>,
}

impl<F: Field> ModVec<F> {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Monomial, F)>, order: &TermOrder) -> Self {
        let mut acc: HashMap<(usize, Monomial), F> = HashMap::new();
        for (c, m, a) in terms {
            let e = acc.entry((c, m)).or_insert_with(F::zero);
            *e = e.add(&a);
        }
        let mut terms: Vec<(usize, Monomial, F)> =
            acc.into_iter().filter(|(_, a)| !a.is_zero()).map(|((c, m), a)| (c, m, a)).collect();
        terms.sort_by(|x, y| order.compare((y.0, &y.1), (x.0, &x.1)));
        ModVec { terms }
    }

    /// Column of polynomials, entry `c` in component `c`.
    pub fn from_column(col: &[Polynomial<F>], order: &TermOrder) -> Self {
        Self::from_terms(
            col.iter().enumerate().flat_map(|(c, p)| p.terms().iter().map(move |(m, a)| (c, m.clone(), a.clone()))),
            order,
        )
    }

    pub fn to_column(&self, rank: usize, nvars: usize) -> Vec<Polynomial<F>> {
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); rank];
        for (c, m, a) in &self.terms {
            buckets[*c].push((m.clone(), a.clone()));
        }
        buckets.into_iter().map(|t| Polynomial::from_terms(nvars, t)).collect()
    }

    pub fn terms(&self) -> &[(usize, Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(usize, Monomial, F)> {
        self.terms.first()
    }

    pub fn components(&self) -> HashSet<usize> {
        self.terms.iter().map(|t| t.0).collect()
    }

    fn make_monic(&mut self) {
        if let Some(inv) = self.terms.first().and_then(|t| t.2.inv()) {
            for t in &mut self.terms {
                t.2 = t.2.mul(&inv);
            }
        }
    }

    /// `self - c * m * other`
    fn sub_scaled(&self, c: &F, m: &Monomial, other: &ModVec<F>, order: &TermOrder) -> ModVec<F> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |t: &(usize, Monomial, F)| (t.0, t.1.mul(m), t.2.mul(c).neg());
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = scaled(&other.terms[j]);
            match order.compare((a.0, &a.1), (b.0, &b.1)) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a.2.add(&b.2);
                    if !s.is_zero() {
                        out.push((a.0, a.1.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(scaled));
        ModVec { terms: out }
    }

    pub fn scale(&self, c: &F) -> ModVec<F> {
        if c.is_zero() {
            return ModVec::zero();
        }
        ModVec { terms: self.terms.iter().map(|(k, m, a)| (*k, m.clone(), a.mul(c))).collect() }
    }

    /// `c * m * self`; order preserved since term orders are multiplicative.
    pub fn mul_term(&self, c: &F, m: &Monomial) -> ModVec<F> {
        if c.is_zero() {
            return ModVec::zero();
        }
        ModVec { terms: self.terms.iter().map(|(k, t, a)| (*k, t.mul(m), a.mul(c))).collect() }
    }

    pub fn add(&self, other: &ModVec<F>, order: &TermOrder) -> ModVec<F> {
        let nvars = self.terms.first().or(other.terms.first()).map(|t| t.1.nvars()).unwrap_or(0);
        self.sub_scaled(&F::one().neg(), &Monomial::one(nvars), other, order)
    }
}

fn find_reducer<'a, F: Field>(basis: &'a [ModVec<F>], comp: usize, m: &Monomial) -> Option<&'a ModVec<F>> {
    basis.iter().find(|g| {
        let (c, lm, _) = g.lead().expect("basis elements are nonzero");
        *c == comp && lm.divides(m)
    })
}

/// Reduces only the leading term until it is irreducible.
fn top_reduce<F: Field>(mut v: ModVec<F>, basis: &[ModVec<F>], order: &TermOrder) -> ModVec<F> {
    while let Some((c, m, a)) = v.lead().cloned() {
        match find_reducer(basis, c, &m) {
            Some(g) => {
                let (_, gm, ga) = g.lead().unwrap();
                let q = gm.quotient_of(&m);
                let coef = a.div(ga).unwrap();
                v = v.sub_scaled(&coef, &q, g, order);
            }
            None => break,
        }
    }
    v
}

/// Full normal form: no term of the result is divisible by a leading term.
pub fn reduce<F: Field>(v: &ModVec<F>, basis: &[ModVec<F>], order: &TermOrder) -> ModVec<F> {
    let mut rem = v.clone();
    let mut done: Vec<(usize, Monomial, F)> = Vec::new();
    loop {
        rem = top_reduce(rem, basis, order);
        if rem.terms.is_empty() {
            break;
        }
        done.push(rem.terms.remove(0));
    }
    ModVec { terms: done }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Job {
    Gen(usize),
    Pair(usize, usize),
}

fn single_component<F: Field>(v: &ModVec<F>) -> bool {
    let c = v.lead().map(|t| t.0);
    v.terms.iter().all(|t| Some(t.0) == c)
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner<F: Field>(gens: &[ModVec<F>], order: &TermOrder) -> Vec<ModVec<F>> {
    let mut basis: Vec<ModVec<F>> = Vec::new();
    let mut queue: BinaryHeap<Reverse<(i64, Job)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for (k, g) in gens.iter().enumerate() {
        if let Some((c, m, _)) = g.lead() {
            queue.push(Reverse((order.term_degree(*c, m), Job::Gen(k))));
        }
    }
    let lcm_of = |basis: &[ModVec<F>], i: usize, j: usize| -> Monomial {
        basis[i].lead().unwrap().1.lcm(&basis[j].lead().unwrap().1)
    };
    while let Some(Reverse((_, job))) = queue.pop() {
        let candidate = match job {
            Job::Gen(k) => gens[k].clone(),
            Job::Pair(i, j) => {
                pending.remove(&(i, j));
                let lcm = lcm_of(&basis, i, j);
                let comp = basis[i].lead().unwrap().0;
                // chain criterion
                let chain = (0..basis.len()).any(|k| {
                    k != i
                        && k != j
                        && basis[k].lead().unwrap().0 == comp
                        && basis[k].lead().unwrap().1.divides(&lcm)
                        && !pending.contains(&(i.min(k), i.max(k)))
                        && !pending.contains(&(j.min(k), j.max(k)))
                });
                if chain {
                    continue;
                }
                let (_, mi, ci) = basis[i].lead().unwrap();
                let (_, mj, cj) = basis[j].lead().unwrap();
                let qi = mi.quotient_of(&lcm);
                let qj = mj.quotient_of(&lcm);
                basis[i].mul_term(&ci.inv().unwrap(), &qi).sub_scaled(&cj.inv().unwrap(), &qj, &basis[j], order)
            }
        };
        let mut r = top_reduce(candidate, &basis, order);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        let idx = basis.len();
        let (rc, rm, _) = r.lead().cloned().unwrap();
        let r_single = single_component(&r);
        basis.push(r);
        for k in 0..idx {
            let (kc, km, _) = basis[k].lead().unwrap();
            if *kc != rc {
                continue;
            }
            if km.is_coprime(&rm) && r_single && single_component(&basis[k]) {
                continue;
            }
            let lcm = km.lcm(&rm);
            pending.insert((k, idx));
            queue.push(Reverse((order.term_degree(rc, &lcm), Job::Pair(k, idx))));
        }
    }
    interreduce(basis, order)
}

fn interreduce<F: Field>(basis: Vec<ModVec<F>>, order: &TermOrder) -> Vec<ModVec<F>> {
    // drop elements whose leading term is divisible by another leading term
    let mut keep: Vec<ModVec<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (c, m, _) = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let (hc, hm, _) = h.lead().unwrap();
            j != i && hc == c && hm.divides(m) && (hm != m || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let (head, tail) = keep[i].terms.split_first().unwrap();
        let others: Vec<ModVec<F>> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let tail = reduce(&ModVec { terms: tail.to_vec() }, &others, order);
        let mut terms = vec![head.clone()];
        terms.extend(tail.terms);
        let mut v = ModVec { terms };
        v.make_monic();
        out.push(v);
    }
    out.sort_by(|a, b| {
        let (ac, am, _) = a.lead().unwrap();
        let (bc, bm, _) = b.lead().unwrap();
        order.compare((*ac, am), (*bc, bm))
    });
    out
}

/// A reduced Gröbner basis together with its order and leading terms.
#[derive(Clone, Debug)]
pub struct ModuleBasis<F: Field> {
    order: TermOrder,
    elems: Vec<ModVec<F>>,
    /// Minimal leading monomials per component.
    leads: Vec<Vec<Monomial>>,
}

impl<F: Field> ModuleBasis<F> {
    pub fn compute(gens: &[ModVec<F>], order: TermOrder) -> Self {
        let elems = groebner(gens, &order);
        let mut leads = vec![Vec::new(); order.comp_degrees.len()];
        for g in &elems {
            let (c, m, _) = g.lead().unwrap();
            leads[*c].push(m.clone());
        }
        ModuleBasis { order, elems, leads }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[ModVec<F>] {
        &self.elems
    }

    pub fn rank(&self) -> usize {
        self.order.comp_degrees.len()
    }

    pub fn reduce(&self, v: &ModVec<F>) -> ModVec<F> {
        reduce(v, &self.elems, &self.order)
    }

    pub fn contains(&self, v: &ModVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    fn is_standard(&self, comp: usize, m: &Monomial) -> bool {
        !self.leads[comp].iter().any(|l| l.divides(m))
    }

    /// Standard terms `m * e_c` of total degree `degree`: a vector space
    /// basis of the quotient in that degree.
    pub fn standard_terms(&self, degree: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (c, &cd) in self.order.comp_degrees.iter().enumerate() {
            for m in monomials_of_degree(&self.order.weights, degree - cd) {
                if self.is_standard(c, &m) {
                    out.push((c, m));
                }
            }
        }
        out
    }

    /// Dimension of the quotient free module / submodule in degree `degree`.
    pub fn hilbert(&self, degree: i64) -> usize {
        let mut cache: HashMap<i64, Vec<Monomial>> = HashMap::new();
        let mut n = 0;
        for (c, &cd) in self.order.comp_degrees.iter().enumerate() {
            let ms = cache.entry(degree - cd).or_insert_with(|| monomials_of_degree(&self.order.weights, degree - cd));
            n += ms.iter().filter(|m| self.is_standard(c, m)).count();
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn ideal_of_twisted_cubic_has_three_quadrics() {
        // k[a,b,c,d], minors of [[a,b,c],[b,c,d]]
        let ord = TermOrder::new(MonomialOrder::GrevLex, vec![1; 4], vec![0]);
        let g = |t: &[(&[u32], i64)]| ModVec::from_terms(t.iter().map(|(e, c)| (0, mono(e), q(*c))), &ord);
        let gens = vec![
            g(&[(&[1, 0, 1, 0], 1), (&[0, 2, 0, 0], -1)]),
            g(&[(&[1, 0, 0, 1], 1), (&[0, 1, 1, 0], -1)]),
            g(&[(&[0, 1, 0, 1], 1), (&[0, 0, 2, 0], -1)]),
        ];
        let b = ModuleBasis::compute(&gens, ord);
        assert_eq!(b.elements().len(), 3);
        // Hilbert function of the twisted cubic is 3d+1
        for d in 0..8 {
            assert_eq!(b.hilbert(d), 3 * d as usize + 1);
        }
    }

    #[test]
    fn module_hilbert_function_of_cokernel() {
        // k[x] free module with e_0 in degree 0, e_1 in degree 1, relation (x, -1)
        // identifies e_1 with x e_0: quotient is k[x] e_0 so HF = 1 in each degree >= 0.
        let ord = TermOrder::new(MonomialOrder::GrevLex, vec![1], vec![0, 1]);
        let r = ModVec::from_terms([(0, mono(&[1]), q(1)), (1, mono(&[0]), q(-1))], &ord);
        let b = ModuleBasis::compute(&[r], ord);
        assert_eq!((0..5).map(|d| b.hilbert(d)).collect::<Vec<_>>(), vec![1, 1, 1, 1, 1]);
    }
}
