mod common;

use std::sync::Arc;

use common::strategies::{config, nonzero_polynomial, polynomial, rational};
use common::{corpus, corpus_derivations, rand_point, rand_q, rng, CASES};
use num_traits::Zero;
use plinth::arith::{MonomialOrder, Polynomial, RationalFunction, Q};
use plinth::derivation::{Derivation, Nilpotency, RelationCheck, RingPresentation};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn leibniz_rule_suite() {
    assert_eq!(common::suite_leibniz(CASES), Ok(CASES));
}

#[test]
fn exp_is_a_ring_homomorphism_suite() {
    assert_eq!(common::suite_exp_homomorphism(CASES), Ok(CASES));
}

#[test]
fn group_law_suite() {
    assert_eq!(common::suite_group_law(CASES), Ok(CASES));
}

#[test]
fn derivative_in_s_commutes_suite() {
    assert_eq!(common::suite_derivative_commutes(CASES), Ok(CASES));
}

#[test]
fn corpus_derivations_preserve_relations_and_are_nilpotent() {
    for (name, der) in corpus_derivations() {
        assert_eq!(der.check_preserves_relations(), RelationCheck::Preserved, "{name}");
        assert!(matches!(der.nilpotency(), Nilpotency::Witness(_)), "{name}");
    }
}

#[test]
fn a_derivation_leaving_the_surface_is_reported() {
    let ring = corpus("ex_danielewski.lnd").ring_arc().clone();
    let one = ring.one();
    let der = Derivation::new(ring.clone(), vec![one, ring.zero(), ring.zero()]).unwrap();
    match der.check_preserves_relations() {
        RelationCheck::Violated { image, .. } => assert_eq!(image, ring.var(2).scale(&common::q(-2, 1))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn non_nilpotent_derivation_hits_the_cap() {
    let ring = Arc::new(RingPresentation::free(vec!["x"]).unwrap());
    let der = Derivation::new(ring.clone(), vec![ring.var(0)]).unwrap();
    assert!(matches!(der.nilpotency_witness(10), Nilpotency::CapExceeded { variable: 0, cap: 10 }));
}

#[test]
fn orbits_stay_on_the_variety() {
    let der = corpus("ex_danielewski.lnd");
    let rel = der.ring().relations().generators()[0].clone();
    let moved = der.exp_action(&rel).unwrap();
    assert!(moved.coeffs().iter().all(|c| der.ring().is_zero_mod(c)));
    let mut rng = rng(20);
    for _ in 0..CASES {
        let p = rand_point(&mut rng, &der);
        let s0 = rand_q(&mut rng);
        let image = der.orbit_point(&p, &s0).unwrap();
        assert!(der.ring().contains_point(&image).unwrap(), "{p:?} moved off by {s0}");
    }
}

#[test]
fn fixed_points_are_fixed() {
    let mut rng = rng(21);
    for (name, der) in corpus_derivations() {
        let locus = der.fixed_locus().ideal;
        let mut hits = 0;
        for _ in 0..CASES {
            let mut p = rand_point(&mut rng, &der);
            // Zero the coordinates cut out by single-variable basis elements.
            for g in locus.basis() {
                if let [(m, _)] = g.terms() {
                    for (i, &e) in m.exponents().iter().enumerate() {
                        if e > 0 && m.degree() == e {
                            p[i] = Q::zero();
                        }
                    }
                }
            }
            if !locus.basis().iter().all(|g| g.eval(&p).unwrap().is_zero()) {
                continue;
            }
            hits += 1;
            for _ in 0..3 {
                let s0 = rand_q(&mut rng);
                assert_eq!(der.orbit_point(&p, &s0).unwrap(), p, "{name}");
            }
        }
        // The surface action is free, so it has no fixed points to test.
        assert!(hits > 0 || locus.is_unit(), "{name}");
    }
}

#[test]
fn kernel_is_factorially_closed_on_samples() {
    let der = corpus("ex_fp.lnd");
    let (x, z) = (der.ring().var(0), der.ring().var(2));
    let h = &(&der.ring().var(1) * &der.ring().var(1)) - &(&x * &z).scale(&common::q(2, 1));
    let mut rng = rng(22);
    for _ in 0..CASES {
        // k = P(z, h) for a random P in two variables.
        let p = common::rand_nonzero_poly(&mut rng, 2, 3, 3);
        let k = p
            .terms()
            .iter()
            .fold(der.ring().zero(), |acc, (m, c)| &acc + &(&z.pow(m.exponent(0)) * &h.pow(m.exponent(1))).scale(c));
        assert!(der.apply(&k).unwrap().is_zero());
        let other = common::rand_poly(&mut rng, 3, 2, 3);
        let prod = &k * &other;
        // k * other is in the kernel exactly when other is.
        assert_eq!(der.apply(&prod).unwrap().is_zero(), der.apply(&other).unwrap().is_zero());
        if rng.gen_bool(0.5) {
            assert!(!der.apply(&(&k * &x)).unwrap().is_zero());
        }
    }
}

fn corpus_index() -> impl Strategy<Value = usize> {
    0usize..4
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn nilpotency_bound_is_an_upper_bound(i in corpus_index(), f in polynomial(4, 3, 4)) {
        let (_, der) = &corpus_derivations()[i];
        let f = restrict(&f, der);
        let Nilpotency::Witness(w) = der.nilpotency() else { panic!() };
        let k = w.bound_for(&f);
        prop_assert!(der.apply_n(&f, k).unwrap().is_zero());
        let exp = der.exp_action(&f).unwrap();
        prop_assert!(exp.degree().unwrap_or(0) < k as usize);
    }

    #[test]
    fn quotient_rule(i in corpus_index(), a in polynomial(4, 2, 3), b in nonzero_polynomial(4, 2, 3)) {
        let (_, der) = &corpus_derivations()[i];
        let (a, b) = (restrict(&a, der), restrict(&b, der));
        prop_assume!(!der.ring().is_zero_mod(&b));
        let r = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let d = der.apply_rational(&r).unwrap();
        let num = &(&b * &der.apply(&a).unwrap()) - &(&a * &der.apply(&b).unwrap());
        let expected = RationalFunction::new(num, &b * &b).unwrap();
        prop_assert!(der.ring().is_zero_mod(&d.cross_difference(&expected)));
    }

    #[test]
    fn exp_at_zero_is_the_identity(i in corpus_index(), f in polynomial(4, 3, 4), s in rational()) {
        let (_, der) = &corpus_derivations()[i];
        let f = restrict(&f, der);
        let e = der.exp_action(&f).unwrap();
        prop_assert_eq!(der.ring().reduce(&e.substitute(&Q::zero())), der.ring().reduce(&f));
        // exp(s∂)(exp(-s∂) f) = f for a fixed s.
        let back = der.exp_action(&e.substitute(&s)).unwrap().substitute(&-s);
        prop_assert_eq!(der.ring().reduce(&back), der.ring().reduce(&f));
    }
}

/// Drops the extra variables of a 4-variable sample for smaller rings.
fn restrict(f: &Polynomial, der: &Derivation) -> Polynomial {
    let n = der.ring().nvars();
    Polynomial::from_terms(
        n,
        MonomialOrder::DegRevLex,
        f.terms()
            .iter()
            .map(|(m, c)| (plinth::arith::Monomial::from_exponents(m.exponents()[..n].iter().copied()), c.clone()))
            .collect::<Vec<_>>(),
    )
}
