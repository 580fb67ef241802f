//! Shared fixtures, random generators and the seeded property suites used by
//! both the acceptance harness and the regular test targets.
#![allow(dead_code)]

use std::path::Path;

use num_traits::{One, Zero};
use plinth::arith::{Monomial, MonomialOrder, Polynomial, RationalFunction, SPoly, Q};
use plinth::cylinder::{dixmier_reduce, preimage_search, Preimage};
use plinth::derivation::Derivation;
use plinth::groebner::{radical_membership, Ideal};
use plinth::io::parse_spec;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_0fa1;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

pub fn corpus(name: &str) -> Derivation {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_spec(&text).unwrap().derivation().unwrap()
}

/// The four ring examples used by the randomized suites.
pub fn corpus_derivations() -> Vec<(&'static str, Derivation)> {
    ["ex_fp.lnd", "ex_danielewski.lnd", "ex_a4.lnd", "ex_plane.lnd"].into_iter().map(|n| (n, corpus(n))).collect()
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn rand_q<R: Rng>(rng: &mut R) -> Q {
    let n = rng.gen_range(-5i64..=5);
    let d = if rng.gen_bool(0.25) { rng.gen_range(1i64..=3) } else { 1 };
    q(n, d)
}

pub fn rand_monomial<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    let deg = rng.gen_range(0..=max_deg);
    for _ in 0..deg {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(exps)
}

pub fn rand_poly<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let n = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        nvars,
        MonomialOrder::DegRevLex,
        (0..n).map(|_| (rand_monomial(rng, nvars, max_deg), rand_q(rng))).collect::<Vec<_>>(),
    )
}

pub fn rand_nonzero_poly<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    loop {
        let p = rand_poly(rng, nvars, max_deg, max_terms.max(1));
        if !p.is_zero() {
            return p;
        }
    }
}

/// Rational point on the variety of `der`'s ring. Only the corpus rings
/// are supported: free rings and the surface `y^2 - 2xz - 1`.
pub fn rand_point<R: Rng>(rng: &mut R, der: &Derivation) -> Vec<Q> {
    let n = der.ring().nvars();
    if der.ring().is_free() {
        return (0..n).map(|_| rand_q(rng)).collect();
    }
    loop {
        let y = rand_q(rng);
        let z = rand_q(rng);
        if z.is_zero() {
            continue;
        }
        let x = (&y * &y - Q::one()) / (Q::from_integer(2.into()) * &z);
        let p = vec![x, y, z];
        assert!(der.ring().contains_point(&p).unwrap());
        return p;
    }
}

fn reduce_spoly(der: &Derivation, f: &SPoly) -> SPoly {
    f.map_coeffs(|c| der.ring().reduce(c))
}

fn factorial(k: usize) -> Q {
    Q::from_integer((1..=k as i64).product::<i64>().into())
}

/// Outcome of one seeded suite: cases run, or the first counterexample.
pub type SuiteResult = Result<usize, String>;

pub const CASES: usize = 200;

fn each_ring<F>(salt: u64, cases: usize, mut check: F) -> SuiteResult
where
    F: FnMut(&str, &Derivation, &mut ChaCha8Rng) -> Result<(), String>,
{
    let ders = corpus_derivations();
    let mut rng = rng(salt);
    for i in 0..cases {
        let (name, der) = &ders[i % ders.len()];
        check(name, der, &mut rng).map_err(|e| format!("case {i} on {name}: {e}"))?;
    }
    Ok(cases)
}

/// `∂(fg) = f ∂g + g ∂f` modulo the relations.
pub fn suite_leibniz(cases: usize) -> SuiteResult {
    each_ring(1, cases, |_, der, rng| {
        let n = der.ring().nvars();
        let f = rand_poly(rng, n, 3, 4);
        let g = rand_poly(rng, n, 3, 4);
        let lhs = der.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &der.apply(&g).unwrap()) + &(&g * &der.apply(&f).unwrap());
        if der.ring().is_zero_mod(&(&lhs - &rhs)) {
            Ok(())
        } else {
            Err(format!("f = {f:?}, g = {g:?}"))
        }
    })
}

/// `exp(s∂)` is additive and multiplicative.
pub fn suite_exp_homomorphism(cases: usize) -> SuiteResult {
    each_ring(2, cases, |_, der, rng| {
        let n = der.ring().nvars();
        let f = rand_poly(rng, n, 3, 3);
        let g = rand_poly(rng, n, 3, 3);
        let (ef, eg) = (der.exp_action(&f).unwrap(), der.exp_action(&g).unwrap());
        let prod = reduce_spoly(der, &der.exp_action(&(&f * &g)).unwrap());
        let sum = reduce_spoly(der, &der.exp_action(&(&f + &g)).unwrap());
        if prod != reduce_spoly(der, &ef.mul(&eg)) {
            return Err(format!("product: f = {f:?}, g = {g:?}"));
        }
        if sum != reduce_spoly(der, &ef.add(&eg)) {
            return Err(format!("sum: f = {f:?}, g = {g:?}"));
        }
        Ok(())
    })
}

/// Group law: `exp((s+t)∂) f` has `s^i t^j` coefficient `∂^{i+j} f / (i! j!)`,
/// and moving a point by `s0` then `t0` equals moving it by `s0 + t0`.
pub fn suite_group_law(cases: usize) -> SuiteResult {
    each_ring(3, cases, |_, der, rng| {
        let n = der.ring().nvars();
        let f = rand_poly(rng, n, 3, 3);
        let shifted = der.exp_action(&f).unwrap().substitute_shift();
        let top = der.exp_action(&f).unwrap().degree().unwrap_or(0);
        for i in 0..=top {
            for j in 0..=top - i {
                let expected =
                    der.apply_n(&f, (i + j) as u32).unwrap().scale(&(Q::one() / (factorial(i) * factorial(j))));
                let got = der.ring().reduce(&shifted.coeff(i, j));
                if got != der.ring().reduce(&expected) {
                    return Err(format!("coefficient s^{i} t^{j} of f = {f:?}"));
                }
            }
        }
        let p = rand_point(rng, der);
        let (s0, t0) = (rand_q(rng), rand_q(rng));
        let two_steps = der.orbit_point(&der.orbit_point(&p, &s0).unwrap(), &t0).unwrap();
        let one_step = der.orbit_point(&p, &(&s0 + &t0)).unwrap();
        if two_steps != one_step {
            return Err(format!("point {p:?}, s0 = {s0}, t0 = {t0}"));
        }
        Ok(())
    })
}

/// `d/ds exp(s∂) f = exp(s∂)(∂f)`.
pub fn suite_derivative_commutes(cases: usize) -> SuiteResult {
    each_ring(4, cases, |_, der, rng| {
        let n = der.ring().nvars();
        let f = rand_poly(rng, n, 4, 4);
        let lhs = reduce_spoly(der, &der.exp_action(&f).unwrap().derivative());
        let rhs = reduce_spoly(der, &der.exp_action(&der.apply(&f).unwrap()).unwrap());
        if lhs == rhs {
            Ok(())
        } else {
            Err(format!("f = {f:?}"))
        }
    })
}

/// Slices used by the Dixmier suite, one per corpus ring.
pub fn corpus_slice(name: &str, der: &Derivation) -> RationalFunction {
    let v = |i| der.ring().var(i);
    let (num, den) = match name {
        "ex_fp.lnd" | "ex_danielewski.lnd" => (v(1), v(2)),
        "ex_a4.lnd" => (v(0), v(2)),
        "ex_plane.lnd" => (v(0), &v(1) * &v(1)),
        _ => panic!("no slice for {name}"),
    };
    RationalFunction::new(num, den).unwrap()
}

/// `b = sum c_k σ^k` with every `c_k` killed by `∂`, recomputed here rather
/// than trusted from `dixmier_reduce`.
pub fn suite_dixmier(cases: usize) -> SuiteResult {
    each_ring(5, cases, |name, der, rng| {
        let n = der.ring().nvars();
        let sigma = corpus_slice(name, der);
        let b = rand_poly(rng, n, 3, 4);
        let coeffs = dixmier_reduce(der, &sigma, &b).map_err(|e| format!("b = {b:?}: {e}"))?;
        let mut total = RationalFunction::from_polynomial(der.ring().zero());
        for (k, c) in coeffs.iter().enumerate() {
            let d = der.apply_rational(c).unwrap();
            if !der.ring().is_zero_mod(d.numerator()) {
                return Err(format!("c_{k} not in the kernel for b = {b:?}"));
            }
            total = total.add(&c.mul(&sigma.pow(k as u32)));
        }
        let diff = total.cross_difference(&RationalFunction::from_polynomial(b.clone()));
        if der.ring().is_zero_mod(&diff) {
            Ok(())
        } else {
            Err(format!("reconstruction of b = {b:?}"))
        }
    })
}

/// The reduced basis does not depend on generator order or scaling.
pub fn suite_groebner_determinism(cases: usize) -> SuiteResult {
    let mut rng = rng(6);
    for i in 0..cases {
        let nvars = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..k).map(|_| rand_nonzero_poly(&mut rng, nvars, 2, 3)).collect();
        let base = Ideal::new(nvars, MonomialOrder::DegRevLex, gens.clone());
        let mut shuffled: Vec<Polynomial> = gens
            .iter()
            .map(|g| {
                let mut c = rand_q(&mut rng);
                while c.is_zero() {
                    c = rand_q(&mut rng);
                }
                g.scale(&c)
            })
            .collect();
        shuffled.shuffle(&mut rng);
        let other = Ideal::new(nvars, MonomialOrder::DegRevLex, shuffled);
        if base.basis() != other.basis() {
            return Err(format!("case {i}: generators {gens:?}"));
        }
    }
    Ok(cases)
}

/// Preimages found by the search map onto the target under `∂`.
pub fn suite_preimage(cases: usize) -> SuiteResult {
    each_ring(7, cases, |_, der, rng| {
        let n = der.ring().nvars();
        let f = rand_poly(rng, n, 3, 3);
        let target = der.apply(&f).unwrap();
        match preimage_search(der, &target, 3).unwrap() {
            Preimage::Found(g) => {
                let dg = der.apply(&g).unwrap();
                if der.ring().is_zero_mod(&(&dg - &target)) && g.total_degree().unwrap_or(0) <= 3 {
                    Ok(())
                } else {
                    Err(format!("bad preimage {g:?} of ∂({f:?})"))
                }
            }
            Preimage::NoneWithin { .. } => Err(format!("missed the preimage {f:?}")),
        }
    })
}

/// Exact oracle on `I = (l1^a, l2^b)` for independent linear forms: `f`
/// lies in the radical iff it is a combination of `l1, l2`, and then
/// `f^(a+b-1)` lies in `I`. Also checks one-sidedly that any power of `f`
/// up to 5 found in a random ideal forces a yes.
pub fn suite_radical(cases: usize) -> SuiteResult {
    let mut rng = rng(8);
    let o = MonomialOrder::DegRevLex;
    let x = |i| Polynomial::var(3, o, i);
    for i in 0..cases {
        let forms: Vec<Polynomial> = loop {
            let m: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-2i64..=2)).collect()).collect();
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if det != 0 {
                break m
                    .iter()
                    .map(|row| {
                        row.iter().enumerate().fold(Polynomial::zero(3, o), |acc, (j, &c)| &acc + &x(j).scale(&q(c, 1)))
                    })
                    .collect();
            }
        };
        let (a, b) = (rng.gen_range(1..=3u32), rng.gen_range(1..=3u32));
        let ideal = Ideal::new(3, o, vec![forms[0].pow(a), forms[1].pow(b)]);
        let mut c: Vec<Q> = (0..3).map(|_| rand_q(&mut rng)).collect();
        if rng.gen_bool(0.5) {
            c[2] = Q::zero();
        }
        let f = &(&forms[0].scale(&c[0]) + &forms[1].scale(&c[1])) + &forms[2].scale(&c[2]);
        let expected = c[2].is_zero();
        if radical_membership(&f, &ideal) != expected {
            return Err(format!("case {i}: f = {f:?}, a = {a}, b = {b}"));
        }
        if expected && !ideal.contains(&f.pow(a + b - 1)) {
            return Err(format!("case {i}: power bound failed for f = {f:?}"));
        }

        let gens: Vec<Polynomial> = (0..2).map(|_| rand_nonzero_poly(&mut rng, 3, 2, 2)).collect();
        let random_ideal = Ideal::new(3, o, gens);
        let g = rand_nonzero_poly(&mut rng, 3, 1, 2);
        let power_found = (1..=5).any(|k| random_ideal.contains(&g.pow(k)));
        if power_found && !radical_membership(&g, &random_ideal) {
            return Err(format!("case {i}: power of {g:?} in the ideal but radical says no"));
        }
    }
    Ok(cases)
}

pub mod strategies {
    use super::*;
    use proptest::prelude::*;
    use proptest::test_runner::{Config, RngSeed};

    /// 200 cases from a fixed seed, no persistence files.
    pub fn config() -> Config {
        Config { cases: CASES as u32, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
    }

    pub fn rational() -> impl Strategy<Value = Q> {
        (-6i64..=6, prop_oneof![3 => Just(1i64), 1 => 1i64..=4]).prop_map(|(n, d)| q(n, d))
    }

    pub fn monomial(nvars: usize, max_deg: u32) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0..=max_deg, nvars)
            .prop_filter("degree bound", move |e| e.iter().sum::<u32>() <= max_deg)
            .prop_map(Monomial::from_exponents)
    }

    pub fn polynomial(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((monomial(nvars, max_deg), rational()), 0..=max_terms)
            .prop_map(move |terms| Polynomial::from_terms(nvars, MonomialOrder::DegRevLex, terms))
    }

    pub fn nonzero_polynomial(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        polynomial(nvars, max_deg, max_terms.max(1)).prop_filter("nonzero", |p| !p.is_zero())
    }
}
