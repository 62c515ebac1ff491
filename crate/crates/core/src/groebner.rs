//! Gröbner bases of ideals in the ambient polynomial ring.

use crate::field::Field;
use crate::gb::{self, ModVec, TermOrder};
use crate::poly::{Polynomial, RingError};
use crate::ring::GradedRing;

fn order_of<F: Field>(ring: &GradedRing<F>) -> TermOrder {
    ring.term_order(vec![0])
}

fn check<F: Field>(ring: &GradedRing<F>, p: &Polynomial<F>) -> Result<(), RingError> {
    if p.nvars() != ring.nvars() {
        return Err(RingError::ArityMismatch { left: p.nvars(), right: ring.nvars() });
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal of `k[vars]` generated by `generators`,
/// using the ring's order and weights. The ring's own defining ideal is not
/// added; include it among the generators to work in the quotient.
pub fn groebner_basis<F: Field>(
    generators: &[Polynomial<F>],
    ring: &GradedRing<F>,
) -> Result<Vec<Polynomial<F>>, RingError> {
    let ord = order_of(ring);
    let mut gens = Vec::with_capacity(generators.len());
    for (index, g) in generators.iter().enumerate() {
        check(ring, g)?;
        if !ring.is_homogeneous(g) {
            return Err(RingError::NotHomogeneous { index });
        }
        gens.push(ModVec::from_column(std::slice::from_ref(g), &ord));
    }
    let basis = gb::groebner(&gens, &ord);
    Ok(basis.iter().map(|v| v.to_column(1, ring.nvars()).remove(0)).collect())
}

/// Remainder of `p` on division by `basis`, fully reduced.
pub fn normal_form<F: Field>(
    p: &Polynomial<F>,
    basis: &[Polynomial<F>],
    ring: &GradedRing<F>,
) -> Result<Polynomial<F>, RingError> {
    check(ring, p)?;
    let ord = order_of(ring);
    let mut b = Vec::with_capacity(basis.len());
    for g in basis {
        check(ring, g)?;
        if !g.is_zero() {
            let mut v = ModVec::from_column(std::slice::from_ref(g), &ord);
            let inv = v.lead().unwrap().2.inv().unwrap();
            v = v.scale(&inv);
            b.push(v);
        }
    }
    let v = ModVec::from_column(std::slice::from_ref(p), &ord);
    Ok(gb::reduce(&v, &b, &ord).to_column(1, ring.nvars()).remove(0))
}

/// S-polynomial of two polynomials under the ring's order.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, ring: &GradedRing<F>) -> Polynomial<F> {
    let (mf, cf) = f.leading_term(ring.order(), ring.weights()).expect("nonzero");
    let (mg, cg) = g.leading_term(ring.order(), ring.weights()).expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), &cf.inv().unwrap());
    let b = g.mul_term(&mg.quotient_of(&l), &cg.inv().unwrap());
    &a - &b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gaussian;
    use crate::monomial::Monomial;

    fn s2() -> GradedRing<Gaussian> {
        GradedRing::polynomial(&["x", "u", "v", "t"]).unwrap()
    }

    #[test]
    fn single_generator_is_a_basis() {
        let r = s2();
        let g = groebner_basis(&[r.p("x^2 + u*v")], &r).unwrap();
        assert_eq!(g, vec![r.p("x^2 + u*v")]);
        assert!(groebner_basis(&[], &r).unwrap().is_empty());
    }

    #[test]
    fn line_in_cone_has_monomial_leads() {
        let r = s2();
        let g = groebner_basis(&[r.p("x"), r.p("u"), r.p("x^2 + u*v")], &r).unwrap();
        let mut leads: Vec<Monomial> =
            g.iter().map(|p| p.leading_term(r.order(), r.weights()).unwrap().0.clone()).collect();
        leads.sort_by_key(|m| m.exponents().to_vec());
        assert_eq!(leads, vec![r.p("u").terms()[0].0.clone(), r.p("x").terms()[0].0.clone()]);
    }

    #[test]
    fn normal_forms() {
        let r = s2();
        let b = vec![r.p("x^2 + u*v")];
        assert_eq!(normal_form(&r.p("x^2"), &b, &r).unwrap(), r.p("-u*v"));
        assert_eq!(normal_form(&r.p("x"), &b, &r).unwrap(), r.p("x"));
        assert!(normal_form(&r.p("u*v + x^2"), &b, &r).unwrap().is_zero());
    }

    #[test]
    fn non_homogeneous_rejected() {
        let r = s2();
        assert!(matches!(groebner_basis(&[r.p("x^2 + u")], &r), Err(RingError::NotHomogeneous { index: 0 })));
    }
}
