//! Ideals, reduced Gröbner bases (Buchberger), normal forms, membership,
//! radical membership, elimination and gcds of polynomials.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::arith::{ArithError, Monomial, MonomialOrder, Polynomial, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("{order:?} is not an elimination order for the first {k} variables")]
    NotEliminationOrder { order: MonomialOrder, k: usize },
    #[error("gcd of the zero polynomial")]
    ZeroInput,
    #[error("denominator lies in the ideal")]
    DenominatorInIdeal,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Ideal of a polynomial ring together with its reduced Gröbner basis,
/// computed once at construction.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
}

impl Ideal {
    /// Panics if a generator has a different variable count.
    pub fn new(nvars: usize, order: MonomialOrder, generators: Vec<Polynomial>) -> Self {
        for g in &generators {
            assert_eq!(g.nvars(), nvars, "generator variable count does not match the ring");
        }
        let generators: Vec<_> = generators.into_iter().map(|g| g.with_order(order)).collect();
        let basis = buchberger(&generators, order);
        Ideal { nvars, order, generators, basis }
    }

    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Ideal { nvars, order, generators: Vec::new(), basis: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis: monic, inter-reduced, sorted by
    /// descending leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(&f.with_order(self.order), &self.basis)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// The ideal generated by `self` and `extra`.
    pub fn with_generators(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.basis.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(self.nvars, self.order, gens)
    }

    /// Same ideal, basis recomputed for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        Ideal::new(self.nvars, order, self.generators.clone())
    }

    /// Whether `m` is a standard monomial, i.e. not divisible by any leading
    /// monomial of the basis.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.basis.iter().any(|g| g.leading_monomial().unwrap().divides(m))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.order == other.order && self.basis == other.basis
    }
}

/// Full reduction of `f` by `divisors` (multivariate division remainder).
pub fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let order = f.order();
    let mut p = f.clone();
    let mut remainder = Vec::new();
    while let Some((m, c)) = p.leading_term().cloned() {
        let hit = divisors.iter().find_map(|g| {
            let (lm, lc) = g.leading_term()?;
            lm.quotient_of(&m).map(|q| (g, q, lc))
        });
        match hit {
            Some((g, q, lc)) => {
                p = &p - &g.with_order(order).mul_term(&q, &(&c / lc));
            }
            None => {
                p.pop_leading();
                remainder.push((m, c));
            }
        }
    }
    Polynomial::from_terms(f.nvars(), order, remainder)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l).unwrap(), &fc.recip());
    let b = g.mul_term(&gm.quotient_of(&l).unwrap(), &gc.recip());
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed smallest lcm first (ties by generator index), with
/// Buchberger's coprime and chain criteria. The returned basis is monic,
/// inter-reduced and sorted by descending leading monomial, so it depends
/// only on the ideal and the order.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let g = g.with_order(order);
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return vec![Polynomial::one(g.nvars(), order)];
        }
        basis.push(g.monic());
    }
    if basis.is_empty() {
        return basis;
    }

    let lcm_of =
        |b: &[Polynomial], i: usize, j: usize| b[i].leading_monomial().unwrap().lcm(b[j].leading_monomial().unwrap());
    let mut pending: Vec<(usize, usize, Monomial)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pending.push((i, j, lcm_of(&basis, i, j)));
        }
    }
    let mut pending_set: HashSet<(usize, usize)> = pending.iter().map(|p| (p.0, p.1)).collect();

    while !pending.is_empty() {
        let pos = (0..pending.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pending[a], &pending[b]);
                match order.compare(&pa.2, &pb.2) {
                    Ordering::Equal => (pa.1, pa.0).cmp(&(pb.1, pb.0)),
                    o => o,
                }
            })
            .unwrap();
        let (i, j, l) = pending.swap_remove(pos);
        pending_set.remove(&(i, j));

        let (mi, mj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if mi.is_coprime(mj) {
            continue;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending_set.contains(&key(i, k))
                && !pending_set.contains(&key(j, k))
        });
        if chain {
            continue;
        }

        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Polynomial::one(r.nvars(), order)];
        }
        let k = basis.len();
        basis.push(r.monic());
        for i in 0..k {
            pending.push((i, k, lcm_of(&basis, i, k)));
            pending_set.insert((i, k));
        }
    }

    interreduce(basis, order)
}

fn interreduce(basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != idx && hm.divides(lm) && (hm != lm || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|idx| {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, h)| h.clone()).collect();
            let g = &minimal[idx];
            let (lm, lc) = g.leading_term().unwrap().clone();
            let mut tail = g.clone();
            tail.pop_leading();
            let tail = reduce(&tail, &others);
            (&Polynomial::monomial(lm, lc, order) + &tail).monic()
        })
        .collect();
    reduced.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}

/// Remainder of `f` modulo the reduced basis of `ideal`; zero iff `f` lies
/// in the ideal.
pub fn normal_form(f: &Polynomial, ideal: &Ideal) -> Polynomial {
    ideal.normal_form(f)
}

pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> bool {
    ideal.contains(f)
}

/// Generators of `ideal` viewed in the quotient ring by `relations`: the
/// reduced basis of `ideal`, dropping elements that lie in `relations` or
/// in the ideal generated by `relations` and the elements kept so far,
/// scanning from the smallest leading monomial. `ideal` must contain
/// `relations`.
pub fn generators_mod(ideal: &Ideal, relations: &Ideal) -> Vec<Polynomial> {
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in ideal.basis().iter().rev() {
        if !relations.with_generators(&kept).contains(g) {
            kept.push(relations.normal_form(g));
        }
    }
    kept.reverse();
    kept
}

/// Whether some power of `f` lies in `ideal`: `1` belongs to
/// `ideal + (1 - t*f)` with one extra variable `t` appended last.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal) -> bool {
    let n = ideal.nvars();
    let order = MonomialOrder::DegRevLex;
    let f = f.with_order(ideal.order());
    if ideal.contains(&f) {
        return true;
    }
    let mut gens: Vec<Polynomial> = ideal.basis().iter().map(|g| g.extend_vars(1, order)).collect();
    let t = Polynomial::var(n + 1, order, n);
    let one = Polynomial::one(n + 1, order);
    gens.push(&one - &(&t * &f.extend_vars(1, order)));
    Ideal::new(n + 1, order, gens).is_unit()
}

/// `ideal ∩ K[x_k, ..., x_{n-1}]`, returned as an ideal in the remaining
/// `n - k` variables. The ideal's order must eliminate the first `k`
/// variables.
pub fn eliminate(ideal: &Ideal, k: usize) -> Result<Ideal, GroebnerError> {
    if k == 0 {
        return Ok(ideal.clone());
    }
    if !ideal.order().eliminates(k) {
        return Err(GroebnerError::NotEliminationOrder { order: ideal.order(), k });
    }
    let rest_order = match ideal.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::DegRevLex,
    };
    let gens: Vec<Polynomial> = ideal.basis().iter().filter_map(|g| g.drop_front_vars(k, rest_order)).collect();
    Ok(Ideal::new(ideal.nvars() - k, rest_order, gens))
}

/// Generator of `(f) ∩ (g)`, monic.
pub fn lcm(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    if f.is_zero() || g.is_zero() {
        return Err(GroebnerError::ZeroInput);
    }
    if f.nvars() != g.nvars() {
        return Err(ArithError::VariableCountMismatch { left: f.nvars(), right: g.nvars() }.into());
    }
    let n = f.nvars();
    let order = MonomialOrder::Elimination(1);
    let t = Polynomial::var(n + 1, order, 0);
    let one = Polynomial::one(n + 1, order);
    let fe = f.extend_vars_front(1, order);
    let ge = g.extend_vars_front(1, order);
    let ideal = Ideal::new(n + 1, order, vec![&t * &fe, &(&one - &t) * &ge]);
    let inter = eliminate(&ideal, 1)?;
    debug_assert_eq!(inter.basis().len(), 1, "intersection of principal ideals is principal");
    Ok(inter.basis()[0].with_order(f.order()))
}

/// `gcd(f, g) = f*g / lcm(f, g)`, made monic.
pub fn gcd_via_lcm(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    let l = lcm(f, g)?;
    let prod = f * &g.with_order(f.order());
    let gcd = prod.exact_div(&l).expect("lcm divides the product");
    Ok(gcd.monic())
}

/// Equality of two rational functions modulo `ideal`, by cross-multiplication.
pub fn ratfun_eq_mod(ideal: &Ideal, a: &RationalFunction, b: &RationalFunction) -> Result<bool, GroebnerError> {
    if ideal.contains(a.denominator()) || ideal.contains(b.denominator()) {
        return Err(GroebnerError::DenominatorInIdeal);
    }
    Ok(ideal.contains(&a.cross_difference(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn vars(n: usize, order: MonomialOrder) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(n, order, i)).collect()
    }

    fn danielewski() -> (Vec<Polynomial>, Polynomial) {
        let o = MonomialOrder::DegRevLex;
        let v = vars(3, o);
        let rel = &(&v[1] * &v[1]) - &(&v[0] * &v[2]).scale(&q(2, 1)) - Polynomial::one(3, o);
        (v, rel)
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let (_, rel) = danielewski();
        let i = Ideal::new(3, MonomialOrder::DegRevLex, vec![rel.clone()]);
        assert_eq!(i.basis(), &[rel]);
    }

    #[test]
    fn lex_basis_of_x_minus_y_and_y_squared() {
        let o = MonomialOrder::Lex;
        let v = vars(2, o);
        let i = Ideal::new(2, o, vec![&v[0] - &v[1], &v[1] * &v[1]]);
        assert_eq!(i.basis(), &[&v[0] - &v[1], &v[1] * &v[1]]);
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let o = MonomialOrder::DegRevLex;
        let i = Ideal::new(3, o, vec![Polynomial::zero(3, o)]);
        assert!(i.basis().is_empty());
        assert!(i.is_zero());
    }

    #[test]
    fn normal_forms() {
        let (v, rel) = danielewski();
        let i = Ideal::new(3, MonomialOrder::DegRevLex, vec![rel.clone()]);
        let expected = &(&v[0] * &v[2]).scale(&q(2, 1)) + &Polynomial::one(3, MonomialOrder::DegRevLex);
        assert_eq!(i.normal_form(&(&v[1] * &v[1])), expected);
        assert!(i.normal_form(&rel).is_zero());
        let yi = Ideal::new(3, MonomialOrder::DegRevLex, vec![v[1].clone()]);
        assert_eq!(yi.normal_form(&v[0]), v[0]);
    }

    #[test]
    fn generators_in_the_quotient() {
        let (v, rel) = danielewski();
        let o = MonomialOrder::DegRevLex;
        let rels = Ideal::new(3, o, vec![rel]);
        let zi = rels.with_generators(&[v[2].clone()]);
        assert_eq!(zi.basis().len(), 2);
        assert_eq!(generators_mod(&zi, &rels), vec![v[2].clone()]);
        assert!(generators_mod(&rels, &rels).is_empty());
    }

    #[test]
    fn memberships() {
        let o = MonomialOrder::DegRevLex;
        let v = vars(4, o); // x y u v
        let uv = Ideal::new(4, o, vec![v[2].clone(), v[3].clone()]);
        assert!(!uv.contains(&Polynomial::one(4, o)));
        assert!(uv.contains(&(&(&v[0] * &v[3]) - &(&v[1] * &v[2]))));
        assert!(!uv.contains(&(&v[0] * &v[1])));
        let (d, rel) = danielewski();
        let i = Ideal::new(3, o, vec![rel.clone()]);
        assert!(i.contains(&(&d[1] * &rel)));
    }

    #[test]
    fn radical_memberships() {
        let o = MonomialOrder::DegRevLex;
        let v = vars(3, o);
        let x2 = Ideal::new(3, o, vec![&v[0] * &v[0]]);
        assert!(radical_membership(&v[0], &x2));
        let x = Ideal::new(3, o, vec![v[0].clone()]);
        assert!(!radical_membership(&v[1], &x));
        let h = &(&v[1] * &v[1]) - &(&v[0] * &v[2]).scale(&q(2, 1));
        let zh = Ideal::new(3, o, vec![&v[2] * &h]);
        assert!(!radical_membership(&v[2], &zh));
    }

    #[test]
    fn elimination() {
        let o = MonomialOrder::Elimination(1);
        let v = vars(3, o); // t x y
        let one = Polynomial::one(3, o);
        let i = Ideal::new(3, o, vec![&v[0] * &v[1], &(&one - &v[0]) * &v[2]]);
        let e = eliminate(&i, 1).unwrap();
        let r = vars(2, MonomialOrder::DegRevLex);
        assert_eq!(e.basis(), &[&r[0] * &r[1]]);

        let j = Ideal::new(2, MonomialOrder::Elimination(1), {
            let w = vars(2, MonomialOrder::Elimination(1));
            vec![&Polynomial::one(2, MonomialOrder::Elimination(1)) - &(&w[0] * &w[1])]
        });
        assert!(eliminate(&j, 1).unwrap().is_zero());
        assert_eq!(eliminate(&i, 0).unwrap(), i);

        let bad = Ideal::new(3, MonomialOrder::DegRevLex, vec![]);
        assert!(matches!(eliminate(&bad, 1), Err(GroebnerError::NotEliminationOrder { .. })));
    }

    #[test]
    fn gcds() {
        let o = MonomialOrder::DegRevLex;
        let v = vars(4, o);
        assert!(gcd_via_lcm(&v[2], &v[3]).unwrap().is_one());
        let x = &v[0];
        let y = &v[1];
        assert_eq!(gcd_via_lcm(&(x * y), &(x * x)).unwrap(), x.clone());
        let f = &(x * y).scale(&q(3, 1)) + &v[2];
        assert_eq!(gcd_via_lcm(&f, &f).unwrap(), f.monic());
        assert_eq!(gcd_via_lcm(&f, &Polynomial::zero(4, o)), Err(GroebnerError::ZeroInput));
    }

    #[test]
    fn rational_function_equality_on_the_surface() {
        let (v, rel) = danielewski();
        let o = MonomialOrder::DegRevLex;
        let one = Polynomial::one(3, o);
        let a = RationalFunction::new(&v[1] + &one, v[2].clone()).unwrap();
        let b = RationalFunction::new(v[0].scale(&q(2, 1)), &v[1] - &one).unwrap();
        let surface = Ideal::new(3, o, vec![rel]);
        assert!(ratfun_eq_mod(&surface, &a, &b).unwrap());
        assert!(!ratfun_eq_mod(&Ideal::zero(3, o), &a, &b).unwrap());
        assert!(ratfun_eq_mod(&surface, &a, &a).unwrap());
        let bad = RationalFunction::new(one.clone(), v[2].clone()).unwrap();
        let zi = Ideal::new(3, o, vec![v[2].clone()]);
        assert_eq!(ratfun_eq_mod(&zi, &bad, &bad), Err(GroebnerError::DenominatorInIdeal));
    }
}
