use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mfx_core::catalog::{get_classes, get_resolution_pattern, PATTERN_NAMES};
use mfx_core::field::{Field, Gaussian, Rational};
use mfx_core::groebner::{groebner_basis, normal_form};
use mfx_core::kgroup::{mat_mul, smith_normal_form, solve_integer, veronese_m_invariant, SheafClassVector};
use mfx_core::matfac::{
    cokernel_module, direct_sum_mf, double_branched_cover, dual_mf, knoerrer_periodicity, random_factorization,
    scramble, try_split, verify_mf, MatrixFactorization, SplitOutcome,
};
use mfx_core::monomial::Monomial;
use mfx_core::poly::Polynomial;
use mfx_core::ring::GradedRing;
use mfx_core::selftest::{fresh_name, random_block_families};

fn poly(nvars: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..=5), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(
            nvars,
            terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_i64(c))),
        )
    })
}

fn gaussian() -> impl Strategy<Value = Gaussian> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, b, c, d)| Gaussian::from_parts((a, b), (c, d)))
}

fn random_mf(seed: u64) -> MatrixFactorization<Gaussian> {
    let families = random_block_families();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_factorization(&families[(seed % 2) as usize], 3, &mut rng).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        let i = Gaussian::sqrt_minus_one().unwrap();
        prop_assert_eq!(i.mul(&i), Gaussian::from_i64(-1));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Gaussian::one());
        }
    }

    #[test]
    fn normal_form_is_a_remainder(p in poly(3), q in poly(3)) {
        let ring = GradedRing::<Rational>::polynomial(&["x", "y", "z"]).unwrap();
        let gens = [ring.p("x^2 + y*z"), ring.p("x*y - z^2")];
        let gb = groebner_basis(&gens, &ring).unwrap();
        let nf = |x: &Polynomial<Rational>| normal_form(x, &gb, &ring).unwrap();
        let r = nf(&p);
        prop_assert_eq!(nf(&r), r.clone());
        // p + q*g reduces like p
        let shifted = &p + &(&q * &gens[0]);
        prop_assert_eq!(nf(&shifted), r);
    }

    #[test]
    fn transforms_of_random_factorizations_verify(seed in any::<u64>()) {
        let m = random_mf(seed);
        prop_assert!(verify_mf(&m).pass());
        let (u, v) = (fresh_name(m.ring(), "u"), fresh_name(m.ring(), "v"));
        prop_assert!(verify_mf(&knoerrer_periodicity(&m, &u, &v).unwrap()).pass());
        let y = fresh_name(m.ring(), "y");
        prop_assert!(verify_mf(&double_branched_cover(&m, &y).unwrap()).pass());
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let m = random_mf(seed);
        let d = dual_mf(&m);
        prop_assert!(verify_mf(&d).pass());
        prop_assert_eq!(dual_mf(&d), m);
    }

    #[test]
    fn mfx_text_round_trips(seed in any::<u64>()) {
        let m = random_mf(seed);
        let text = m.to_text();
        let back = MatrixFactorization::<Gaussian>::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn hilbert_function_is_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let families = random_block_families();
        let fam = &families[0];
        let mut rng = ChaCha8Rng::seed_from_u64(s1 ^ s2.rotate_left(7));
        let a = random_factorization(fam, 2, &mut rng).unwrap();
        let b = random_factorization(fam, 2, &mut rng).unwrap();
        let (ca, cb) = (cokernel_module(&a), cokernel_module(&b));
        let sum = cokernel_module(&direct_sum_mf(&a, &b).unwrap());
        for d in -2..=12 {
            prop_assert_eq!(sum.hilbert(d), ca.hilbert(d) + cb.hilbert(d));
        }
    }

    #[test]
    fn smith_normal_form_diagonalizes(rows in 1usize..4, cols in 1usize..4, entries in prop::collection::vec(-6i64..=6, 16)) {
        let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect()).collect();
        let (u, d, v) = smith_normal_form(&a, cols);
        let uav = mat_mul(&mat_mul(&u, &a, rows, cols), &v, cols, cols);
        prop_assert_eq!(&uav, &d);
        let diag: Vec<i64> = (0..rows.min(cols)).map(|k| d[k][k]).collect();
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert_eq!(d[i][j], 0);
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(w[0] >= 0 && (w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0)), "{:?}", diag);
        }
    }

    #[test]
    fn lattice_membership_finds_preimages(entries in prop::collection::vec(-5i64..=5, 9), x in prop::collection::vec(-4i64..=4, 3)) {
        let a: Vec<Vec<i64>> = (0..3).map(|i| entries[i * 3..i * 3 + 3].to_vec()).collect();
        let b: Vec<i64> = (0..3).map(|i| (0..3).map(|j| a[i][j] * x[j]).sum()).collect();
        let y = solve_integer(&a, 3, &b).expect("b is in the lattice");
        let ay: Vec<i64> = (0..3).map(|i| (0..3).map(|j| a[i][j] * y[j]).sum()).collect();
        prop_assert_eq!(ay, b);
    }

    #[test]
    fn class_vectors_print_and_parse(items in prop::collection::vec((0usize..4, -3i64..=3), 1..6)) {
        let labels = ["O", "I_F", "I_H-F", "I_H-2F"];
        let mut v = SheafClassVector::new();
        for (l, t) in &items {
            v = v.with(labels[*l], *t, 1);
        }
        let back = SheafClassVector::parse(&v.to_string()).unwrap();
        let (mut x, mut y) = (v.entries.clone(), back.entries.clone());
        x.sort();
        y.sort();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn m_invariant_ignores_common_dissocie_summands(p in 0usize..6, half in 1i64..4, twists in prop::collection::vec(-3i64..=3, 1..4)) {
        let classes = get_classes("veronese").unwrap();
        let name = PATTERN_NAMES[p];
        let (e, n) = get_resolution_pattern(name, (name == "determinantal").then_some(2 * half)).unwrap();
        let mut d = SheafClassVector::new();
        for t in twists {
            d = d.with("O", t, 1);
        }
        let m = veronese_m_invariant(&classes, &e, &n).unwrap();
        prop_assert_eq!(m % 2, 0);
        prop_assert_eq!(veronese_m_invariant(&classes, &e.concat(&d), &n.concat(&d)).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn split_blocks_reassemble(seed in any::<u64>(), i in 0usize..4, j in 0usize..4) {
        let fam = &random_block_families()[0];
        let sum = direct_sum_mf(&fam[i], &fam[j]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = scramble(&sum, 6, &mut rng);
        let outcome = try_split(&m, None, seed).unwrap();
        prop_assert!(matches!(outcome, SplitOutcome::Blocks(_)), "scrambled sum did not split");
        if let SplitOutcome::Blocks(blocks) = outcome {
            let mut acc = MatrixFactorization::empty(m.ring().clone(), m.potential().clone()).unwrap();
            for b in &blocks {
                prop_assert!(verify_mf(b).pass());
                acc = direct_sum_mf(&acc, b).unwrap();
            }
            prop_assert!(verify_mf(&acc).pass());
            let (x, y) = (cokernel_module(&m), cokernel_module(&acc));
            for d in -2..=12 {
                prop_assert_eq!(x.hilbert(d), y.hilbert(d));
            }
        }
    }
}
