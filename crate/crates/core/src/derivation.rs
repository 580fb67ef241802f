//! Derivations of presented rings `K[x_0, ..., x_{n-1}] / I`: application,
//! nilpotency, the exponential map `exp(s∂)`, orbits and fixed points.
//!
//! A derivation is determined by the images of the ring generators. It
//! descends to the quotient when it maps every relation into the relation
//! ideal, see [`Derivation::check_preserves_relations`]. It is locally
//! nilpotent when every generator is killed by some power of it; the
//! nilpotent elements form a subalgebra, so checking generators suffices.
//!
//! The relation ideal is assumed to be prime. This is not checked.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{ArithError, Monomial, MonomialOrder, Polynomial, RationalFunction, SPoly, Q};
use crate::groebner::Ideal;

/// Default bound on the number of iterations in nilpotency checks.
pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("the relations generate the unit ideal (empty variety)")]
    EmptyVariety,
    #[error("expected {expected} derivation images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("not verified to be locally nilpotent: ∂^{cap}({variable}) ≠ 0")]
    NotNilpotent { variable: String, cap: u32 },
    #[error("point does not satisfy the relations")]
    OffVariety,
    #[error("denominator vanishes modulo the relations")]
    DenominatorInIdeal,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `K[names] / (relations)`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    names: Vec<String>,
    relations: Ideal,
}

impl RingPresentation {
    pub fn new<S: Into<String>>(names: Vec<S>, relations: Vec<Polynomial>) -> Result<Self, DerivationError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(DerivationError::DuplicateVariable(n.clone()));
            }
        }
        for r in &relations {
            if r.nvars() != names.len() {
                return Err(ArithError::VariableCountMismatch { left: names.len(), right: r.nvars() }.into());
            }
        }
        let relations = Ideal::new(names.len(), MonomialOrder::DegRevLex, relations);
        if relations.is_unit() {
            return Err(DerivationError::EmptyVariety);
        }
        Ok(RingPresentation { names, relations })
    }

    /// Polynomial ring without relations.
    pub fn free<S: Into<String>>(names: Vec<S>) -> Result<Self, DerivationError> {
        Self::new(names, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.relations.order()
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn var(&self, index: usize) -> Polynomial {
        Polynomial::var(self.nvars(), self.order(), index)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars(), self.order())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars(), self.order())
    }

    pub fn constant(&self, c: Q) -> Polynomial {
        Polynomial::constant(self.nvars(), self.order(), c)
    }

    /// Normal form modulo the relations.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.relations.normal_form(f)
    }

    /// Reduces numerator and denominator; fails if the denominator vanishes.
    pub fn reduce_rational(&self, r: &RationalFunction) -> Result<RationalFunction, DerivationError> {
        let num = self.reduce(r.numerator());
        let den = self.reduce(r.denominator());
        if den.is_zero() {
            return Err(DerivationError::DenominatorInIdeal);
        }
        Ok(RationalFunction::new(num, den)?)
    }

    pub fn is_zero_mod(&self, f: &Polynomial) -> bool {
        self.relations.contains(f)
    }

    pub fn contains_point(&self, point: &[Q]) -> Result<bool, DerivationError> {
        if point.len() != self.nvars() {
            return Err(ArithError::PointLength { expected: self.nvars(), got: point.len() }.into());
        }
        for g in self.relations.generators() {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Standard monomials of total degree at most `max_degree`, i.e. a
    /// vector-space basis of the elements of degree `<= max_degree` in
    /// normal form. Sorted by ascending degree, then descending order.
    pub fn standard_monomials(&self, max_degree: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut layer = Vec::new();
            let mut exps = vec![0u32; n];
            compositions(d, 0, &mut exps, &mut layer);
            let order = self.order();
            layer.retain(|m| self.relations.is_standard(m));
            layer.sort_by(|a, b| order.compare(b, a));
            out.extend(layer);
        }
        out
    }
}

fn compositions(remaining: u32, index: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if index + 1 >= exps.len() {
        if exps.is_empty() {
            if remaining == 0 {
                out.push(Monomial::one(0));
            }
            return;
        }
        exps[index] = remaining;
        out.push(Monomial::from_exponents(exps.iter().copied()));
        exps[index] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[index] = e;
        compositions(remaining - e, index + 1, exps, out);
    }
    exps[index] = 0;
}

/// Outcome of [`Derivation::check_preserves_relations`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationCheck {
    Preserved,
    /// `relation` is mapped to `image`, which is nonzero modulo the relations.
    Violated {
        relation: Polynomial,
        image: Polynomial,
    },
}

/// Per-generator vanishing orders: `orders[i]` is the least `k` with
/// `∂^k(x_i) ≡ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyWitness {
    pub orders: Vec<u32>,
    pub cap: u32,
}

impl NilpotencyWitness {
    /// Upper bound for the vanishing order of `f`.
    pub fn bound_for(&self, f: &Polynomial) -> u32 {
        f.terms()
            .iter()
            .map(|(m, _)| m.exponents().iter().zip(&self.orders).map(|(&e, &k)| e * (k - 1)).sum::<u32>() + 1)
            .max()
            .unwrap_or(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Witness(NilpotencyWitness),
    /// `∂^cap(x_variable)` is still nonzero: undecided, not refuted.
    CapExceeded {
        variable: usize,
        cap: u32,
    },
}

/// Zero set of the images of the generators (plus the relations), which is
/// the fixed-point set of the action.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedLocus {
    pub ideal: Ideal,
}

/// A derivation of a presented ring, given by the images of the generators
/// (stored in normal form).
#[derive(Clone, Debug)]
pub struct Derivation {
    ring: Arc<RingPresentation>,
    images: Vec<Polynomial>,
    cap: u32,
    nilpotency: OnceLock<Nilpotency>,
}

impl Derivation {
    pub fn new(ring: Arc<RingPresentation>, images: Vec<Polynomial>) -> Result<Self, DerivationError> {
        if images.len() != ring.nvars() {
            return Err(DerivationError::ImageCount { expected: ring.nvars(), got: images.len() });
        }
        let mut reduced = Vec::with_capacity(images.len());
        for img in &images {
            if img.nvars() != ring.nvars() {
                return Err(ArithError::VariableCountMismatch { left: ring.nvars(), right: img.nvars() }.into());
            }
            reduced.push(ring.reduce(img));
        }
        Ok(Derivation { ring, images: reduced, cap: DEFAULT_NILPOTENCY_CAP, nilpotency: OnceLock::new() })
    }

    /// Sets the iteration cap used by nilpotency checks and `exp`.
    pub fn with_cap(mut self, cap: u32) -> Self {
        assert!(cap >= 1);
        self.cap = cap;
        self.nilpotency = OnceLock::new();
        self
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn check_ambient(&self, f: &Polynomial) -> Result<(), DerivationError> {
        if f.nvars() != self.ring.nvars() {
            return Err(ArithError::VariableCountMismatch { left: self.ring.nvars(), right: f.nvars() }.into());
        }
        Ok(())
    }

    fn apply_free(&self, f: &Polynomial) -> Polynomial {
        let mut acc = self.ring.zero();
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                acc = &acc + &(&d * img);
            }
        }
        acc
    }

    /// `∂f`, in normal form modulo the relations.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, DerivationError> {
        self.check_ambient(f)?;
        Ok(self.ring.reduce(&self.apply_free(&f.with_order(self.ring.order()))))
    }

    /// `∂^k f` in normal form.
    pub fn apply_n(&self, f: &Polynomial, k: u32) -> Result<Polynomial, DerivationError> {
        let mut g = self.ring.reduce(&f.with_order(self.ring.order()));
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g)?;
        }
        Ok(g)
    }

    /// Whether `∂g` lies in the relation ideal for every relation generator.
    pub fn check_preserves_relations(&self) -> RelationCheck {
        for g in self.ring.relations().generators() {
            let image = self.ring.reduce(&self.apply_free(g));
            if !image.is_zero() {
                return RelationCheck::Violated { relation: g.clone(), image };
            }
        }
        RelationCheck::Preserved
    }

    /// Least `k` with `∂^k(x_i) ≡ 0` for each generator, searching up to
    /// `cap` iterations.
    pub fn nilpotency_witness(&self, cap: u32) -> Nilpotency {
        let mut orders = Vec::with_capacity(self.ring.nvars());
        for i in 0..self.ring.nvars() {
            let mut g = self.ring.reduce(&self.ring.var(i));
            let mut k = 0;
            while !g.is_zero() {
                if k == cap {
                    return Nilpotency::CapExceeded { variable: i, cap };
                }
                g = self.ring.reduce(&self.apply_free(&g));
                k += 1;
            }
            orders.push(k.max(1));
        }
        Nilpotency::Witness(NilpotencyWitness { orders, cap })
    }

    /// Cached [`nilpotency_witness`](Self::nilpotency_witness) at the
    /// configured cap.
    pub fn nilpotency(&self) -> &Nilpotency {
        self.nilpotency.get_or_init(|| self.nilpotency_witness(self.cap))
    }

    fn witness(&self) -> Result<&NilpotencyWitness, DerivationError> {
        match self.nilpotency() {
            Nilpotency::Witness(w) => Ok(w),
            Nilpotency::CapExceeded { variable, cap } => {
                Err(DerivationError::NotNilpotent { variable: self.ring.names()[*variable].clone(), cap: *cap })
            }
        }
    }

    /// `exp(s∂)(f) = sum_k s^k ∂^k(f) / k!`.
    pub fn exp_action(&self, f: &Polynomial) -> Result<SPoly, DerivationError> {
        self.check_ambient(f)?;
        let witness = self.witness()?;
        let bound = witness.bound_for(f);
        let mut coeffs = Vec::new();
        let mut g = self.ring.reduce(&f.with_order(self.ring.order()));
        let mut factorial = BigInt::from(1);
        let mut k: u32 = 0;
        while !g.is_zero() {
            debug_assert!(k < bound, "vanishing order exceeds the witness bound");
            if k > 0 {
                factorial *= k;
            }
            coeffs.push(g.scale(&Q::new(1.into(), factorial.clone())));
            g = self.ring.reduce(&self.apply_free(&g));
            k += 1;
        }
        Ok(SPoly::new(self.ring.nvars(), self.ring.order(), coeffs))
    }

    /// The point `s0 · p`, i.e. the coordinates `exp(s∂)(x_i)` evaluated at
    /// `p` and `s = s0`.
    pub fn orbit_point(&self, point: &[Q], s0: &Q) -> Result<Vec<Q>, DerivationError> {
        if !self.ring.contains_point(point)? {
            return Err(DerivationError::OffVariety);
        }
        (0..self.ring.nvars())
            .map(|i| {
                let e = self.exp_action(&self.ring.var(i))?;
                Ok(e.substitute(s0).eval(point)?)
            })
            .collect()
    }

    pub fn fixed_locus(&self) -> FixedLocus {
        let ideal = self.ring.relations().with_generators(&self.images);
        FixedLocus { ideal }
    }

    /// Quotient rule: `∂(p/q) = (q ∂p - p ∂q) / q^2`, reduced modulo the
    /// relations.
    pub fn apply_rational(&self, r: &RationalFunction) -> Result<RationalFunction, DerivationError> {
        let r = self.ring.reduce_rational(r)?;
        let (p, q) = (r.numerator(), r.denominator());
        let dq = self.apply(q)?;
        if dq.is_zero() {
            return self.ring.reduce_rational(&RationalFunction::new(self.apply(p)?, q.clone())?);
        }
        let num = &(q * &self.apply(p)?) - &(p * &dq);
        self.ring.reduce_rational(&RationalFunction::new(num, q * q)?)
    }

    /// Whether `∂r ≡ 0`.
    pub fn kills_rational(&self, r: &RationalFunction) -> Result<bool, DerivationError> {
        Ok(self.apply_rational(r)?.is_zero())
    }
}
