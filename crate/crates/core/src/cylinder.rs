//! Plinth ideal membership, the principal cylinder criterion, slices and the
//! Dixmier trivialization.
//!
//! For a locally nilpotent derivation `∂` of `B = K[X]` the plinth ideal is
//! `pl(∂) = Ker ∂ ∩ Im ∂`. A principal open set `D(h)` is an invariant
//! cylinder on which the action is a translation exactly when `h^n ∈ pl(∂)`
//! for some `n`; a preimage `f` with `∂f = h^n` then gives the slice
//! `f / h^n` of the localization `B_h`.
//!
//! The existence of `n` is only semi-decidable here. Searches are bounded by
//! [`SearchBounds`] and answer `Yes` (with a certificate), `No` (when
//! `∂h ≠ 0`: the kernel of an LND of a domain is factorially closed, so no
//! power of `h` is a kernel element either) or `UnknownAtBounds`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{Monomial, Polynomial, RationalFunction, Q};
use crate::derivation::{Derivation, DerivationError, RingPresentation};
use crate::groebner::{gcd_via_lcm, GroebnerError, Ideal};
use crate::linalg::{solve_exact, InconsistencyCertificate, LinalgError, QMatrix, Solution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CylinderError {
    #[error("h is zero modulo the relations; D(h) is empty")]
    ZeroElement,
    #[error("not a slice: ∂σ is not 1")]
    NotASlice,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("search bounds need max power >= 1")]
    InvalidBounds,
    #[error("certificate check failed: {0}")]
    InvalidCertificate(&'static str),
    #[error("plinth claim not verified")]
    ClaimNotVerified,
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<crate::arith::ArithError> for CylinderError {
    fn from(e: crate::arith::ArithError) -> Self {
        CylinderError::Derivation(e.into())
    }
}

/// Limits for the bounded searches: powers `h^n` with `n <= max_power`,
/// preimages of total degree `<= max_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_power: u32,
    pub max_degree: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_power: 4, max_degree: 8 }
    }
}

impl SearchBounds {
    pub fn new(max_power: u32, max_degree: u32) -> Result<Self, CylinderError> {
        if max_power == 0 {
            return Err(CylinderError::InvalidBounds);
        }
        Ok(SearchBounds { max_power, max_degree })
    }
}

/// Three-valued answer of a bounded search.
#[derive(Clone, Debug, PartialEq)]
pub enum Decision<T> {
    Yes(T),
    /// `∂h = derivative ≠ 0`, so no power of `h` is in the kernel.
    No {
        derivative: Polynomial,
    },
    UnknownAtBounds(SearchBounds),
}

impl<T> Decision<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn yes(self) -> Option<T> {
        match self {
            Decision::Yes(t) => Some(t),
            _ => None,
        }
    }
}

/// `∂h = 0` and `∂f = h^n`, so `h^n ∈ pl(∂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlinthCertificate {
    h: Polynomial,
    n: u32,
    f: Polynomial,
}

impl PlinthCertificate {
    /// Verifies both identities modulo the relations.
    pub fn new(der: &Derivation, h: Polynomial, n: u32, f: Polynomial) -> Result<Self, CylinderError> {
        let ring = der.ring();
        let h = ring.reduce(&h);
        let f = ring.reduce(&f);
        if n == 0 {
            return Err(CylinderError::InvalidCertificate("power must be positive"));
        }
        if !der.apply(&h)?.is_zero() {
            return Err(CylinderError::InvalidCertificate("∂h ≠ 0"));
        }
        if der.apply(&f)? != ring.reduce(&h.pow(n)) {
            return Err(CylinderError::InvalidCertificate("∂f ≠ h^n"));
        }
        Ok(PlinthCertificate { h, n, f })
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }
}

/// Constructive content of the cylinder criterion: the slice `f / h^n` of
/// `B_h` and the Dixmier images `π(x_i)` of the generators, which generate
/// the kernel of the localized derivation together with `1/h`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderCertificate {
    plinth: PlinthCertificate,
    slice: RationalFunction,
    dixmier_images: Vec<RationalFunction>,
}

impl CylinderCertificate {
    pub fn new(der: &Derivation, plinth: PlinthCertificate) -> Result<Self, CylinderError> {
        let ring = der.ring();
        let slice = ring.reduce_rational(&RationalFunction::new(plinth.f.clone(), plinth.h.pow(plinth.n))?)?;
        if !is_slice(der, &slice)? {
            return Err(CylinderError::InvalidCertificate("∂σ ≠ 1"));
        }
        let mut dixmier_images = Vec::with_capacity(ring.nvars());
        for i in 0..ring.nvars() {
            let image = dixmier_map(der, &slice, &ring.var(i))?;
            if !der.kills_rational(&image)? {
                return Err(CylinderError::InvalidCertificate("Dixmier image not in the kernel"));
            }
            dixmier_images.push(image);
        }
        Ok(CylinderCertificate { plinth, slice, dixmier_images })
    }

    pub fn plinth(&self) -> &PlinthCertificate {
        &self.plinth
    }

    pub fn slice(&self) -> &RationalFunction {
        &self.slice
    }

    pub fn dixmier_images(&self) -> &[RationalFunction] {
        &self.dixmier_images
    }
}

/// The `A x = b` system behind a bounded preimage search, kept so that an
/// infeasibility certificate can be checked independently.
#[derive(Clone, Debug, PartialEq)]
pub struct PreimageSystem {
    /// Unknowns: coefficients of these standard monomials.
    pub basis: Vec<Monomial>,
    /// Equations: coefficients of these monomials.
    pub row_monomials: Vec<Monomial>,
    pub matrix: QMatrix,
    pub rhs: Vec<Q>,
}

impl PreimageSystem {
    pub fn build(der: &Derivation, target: &Polynomial, max_degree: u32) -> Result<Self, CylinderError> {
        let ring = der.ring();
        let target = ring.reduce(target);
        let basis = ring.standard_monomials(max_degree);
        let columns: Vec<Polynomial> = basis
            .iter()
            .map(|m| der.apply(&Polynomial::monomial(m.clone(), Q::from_integer(1.into()), ring.order())))
            .collect::<Result<_, _>>()?;
        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        for p in columns.iter().chain(std::iter::once(&target)) {
            for (m, _) in p.terms() {
                rows.entry(m.clone()).or_insert(0);
            }
        }
        let mut row_monomials: Vec<Monomial> = rows.keys().cloned().collect();
        let order = ring.order();
        row_monomials.sort_by(|a, b| order.compare(b, a));
        for (i, m) in row_monomials.iter().enumerate() {
            rows.insert(m.clone(), i);
        }
        let mut matrix = QMatrix::zeros(row_monomials.len(), basis.len());
        for (j, col) in columns.iter().enumerate() {
            for (m, c) in col.terms() {
                matrix.set(rows[m], j, c.clone());
            }
        }
        let mut rhs = vec![Q::zero(); row_monomials.len()];
        for (m, c) in target.terms() {
            rhs[rows[m]] = c.clone();
        }
        Ok(PreimageSystem { basis, row_monomials, matrix, rhs })
    }

    fn polynomial(&self, ring: &RingPresentation, x: &[Q]) -> Polynomial {
        Polynomial::from_terms(ring.nvars(), ring.order(), self.basis.iter().cloned().zip(x.iter().cloned()))
    }
}

/// Outcome of [`preimage_search`].
#[derive(Clone, Debug, PartialEq)]
pub enum Preimage {
    /// `∂f ≡ target`, with `f` of least possible degree.
    Found(Polynomial),
    /// No `f` of degree `<= degree` maps to the target.
    NoneWithin { degree: u32, system: Box<PreimageSystem>, certificate: InconsistencyCertificate },
}

fn solve_system(
    der: &Derivation,
    target: &Polynomial,
    degree: u32,
) -> Result<(PreimageSystem, Solution), CylinderError> {
    let system = PreimageSystem::build(der, target, degree)?;
    let solution = solve_exact(&system.matrix, &system.rhs)?;
    Ok((system, solution))
}

/// Searches for `f` with `∂f ≡ target` among elements of degree at most
/// `max_degree` (spanned by standard monomials). Returns a preimage of
/// minimal degree, or the certified infeasibility of the linear system.
pub fn preimage_search(der: &Derivation, target: &Polynomial, max_degree: u32) -> Result<Preimage, CylinderError> {
    let ring = der.ring();
    let target = ring.reduce(target);
    if target.is_zero() {
        return Ok(Preimage::Found(ring.zero()));
    }
    let (system, solution) = solve_system(der, &target, max_degree)?;
    let Solution::Consistent(top) = solution else {
        let Solution::Inconsistent(certificate) = solution else { unreachable!() };
        return Ok(Preimage::NoneWithin { degree: max_degree, system: Box::new(system), certificate });
    };
    let mut best = system.polynomial(ring, &top);
    for d in 0..max_degree {
        if let (sys, Solution::Consistent(x)) = solve_system(der, &target, d)? {
            best = sys.polynomial(ring, &x);
            break;
        }
    }
    if der.apply(&best)? != target {
        return Err(CylinderError::InvalidCertificate("preimage does not map to the target"));
    }
    Ok(Preimage::Found(best))
}

/// `∂h ≡ 0`.
pub fn kernel_check(der: &Derivation, h: &Polynomial) -> Result<bool, CylinderError> {
    Ok(der.apply(h)?.is_zero())
}

/// Bounded test of `h^n ∈ pl(∂)` for `n = 1, ..., max_power`.
pub fn plinth_membership(
    der: &Derivation,
    h: &Polynomial,
    bounds: SearchBounds,
) -> Result<Decision<PlinthCertificate>, CylinderError> {
    let ring = der.ring();
    let h = ring.reduce(h);
    if h.is_zero() {
        return Err(CylinderError::ZeroElement);
    }
    let derivative = der.apply(&h)?;
    if !derivative.is_zero() {
        return Ok(Decision::No { derivative });
    }
    let mut power = ring.one();
    for n in 1..=bounds.max_power {
        power = ring.reduce(&(&power * &h));
        if let Preimage::Found(f) = preimage_search(der, &power, bounds.max_degree)? {
            return Ok(Decision::Yes(PlinthCertificate::new(der, h, n, f)?));
        }
    }
    Ok(Decision::UnknownAtBounds(bounds))
}

/// Whether `D(h)` is an invariant cylinder on which the action is a
/// translation, with the slice and trivialization when it is.
pub fn cylinder_decision(
    der: &Derivation,
    h: &Polynomial,
    bounds: SearchBounds,
) -> Result<Decision<CylinderCertificate>, CylinderError> {
    Ok(match plinth_membership(der, h, bounds)? {
        Decision::Yes(cert) => Decision::Yes(CylinderCertificate::new(der, cert)?),
        Decision::No { derivative } => Decision::No { derivative },
        Decision::UnknownAtBounds(b) => Decision::UnknownAtBounds(b),
    })
}

/// `∂σ ≡ 1`.
pub fn is_slice(der: &Derivation, sigma: &RationalFunction) -> Result<bool, CylinderError> {
    let d = der.apply_rational(sigma)?;
    Ok(der.ring().is_zero_mod(&(d.numerator() - d.denominator())))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * i)
}

/// Dixmier map `π(b) = sum_j (-σ)^j ∂^j(b) / j!` for a polynomial `b`.
pub fn dixmier_map(
    der: &Derivation,
    sigma: &RationalFunction,
    b: &Polynomial,
) -> Result<RationalFunction, CylinderError> {
    let ring = der.ring();
    let neg_sigma = sigma.neg();
    let mut acc = RationalFunction::from_polynomial(ring.zero());
    let mut sigma_pow = RationalFunction::from_polynomial(ring.one());
    let mut g = ring.reduce(b);
    let mut j = 0;
    while !g.is_zero() {
        let coeff = Q::new(1.into(), factorial(j));
        let term = sigma_pow.mul(&RationalFunction::from_polynomial(g.scale(&coeff)));
        acc = acc.add(&term);
        g = der.apply(&g)?;
        sigma_pow = sigma_pow.mul(&neg_sigma);
        j += 1;
    }
    Ok(ring.reduce_rational(&acc)?)
}

/// Coefficients `c_k = π(∂^k b) / k!` of `b` as a polynomial in the slice:
/// `b = sum_k c_k σ^k` with every `c_k` in the kernel. Both identities are
/// re-checked before returning.
pub fn dixmier_reduce(
    der: &Derivation,
    sigma: &RationalFunction,
    b: &Polynomial,
) -> Result<Vec<RationalFunction>, CylinderError> {
    if !is_slice(der, sigma)? {
        return Err(CylinderError::NotASlice);
    }
    let ring = der.ring();
    let mut coeffs = Vec::new();
    let mut g = ring.reduce(b);
    let mut k = 0;
    while !g.is_zero() {
        let c = dixmier_map(der, sigma, &g)?.scale(&Q::new(1.into(), factorial(k)));
        if !der.kills_rational(&c)? {
            return Err(CylinderError::InvalidCertificate("Dixmier coefficient not in the kernel"));
        }
        coeffs.push(c);
        g = der.apply(&g)?;
        k += 1;
    }
    let mut total = RationalFunction::from_polynomial(ring.zero());
    let mut sigma_pow = RationalFunction::from_polynomial(ring.one());
    for c in &coeffs {
        total = total.add(&c.mul(&sigma_pow));
        sigma_pow = sigma_pow.mul(sigma);
    }
    let b_rat = RationalFunction::from_polynomial(b.clone());
    if !ring.is_zero_mod(&total.cross_difference(&b_rat)) {
        return Err(CylinderError::InvalidCertificate("Dixmier reconstruction failed"));
    }
    Ok(coeffs)
}

/// Certified absence of a polynomial slice of degree `<= degree_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct NoSliceCertificate {
    pub degree_bound: u32,
    pub system: PreimageSystem,
    pub certificate: InconsistencyCertificate,
}

impl NoSliceCertificate {
    /// Rebuilds the linear system from the derivation and checks the
    /// certificate against it.
    pub fn verify(&self, der: &Derivation) -> Result<bool, CylinderError> {
        let rebuilt = PreimageSystem::build(der, &der.ring().one(), self.degree_bound)?;
        Ok(rebuilt == self.system && self.certificate.verify(&self.system.matrix, &self.system.rhs))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SliceSearch {
    NoSlice(NoSliceCertificate),
    SliceFound(Polynomial),
}

/// Looks for a global slice `∂f = 1` of degree at most `max_degree`.
pub fn slice_nonexistence(der: &Derivation, max_degree: u32) -> Result<SliceSearch, CylinderError> {
    Ok(match preimage_search(der, &der.ring().one(), max_degree)? {
        Preimage::Found(f) => SliceSearch::SliceFound(f),
        Preimage::NoneWithin { degree, system, certificate } => {
            SliceSearch::NoSlice(NoSliceCertificate { degree_bound: degree, system: *system, certificate })
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClaimStatus {
    /// Every claimed generator lies in `Ker ∂ ∩ Im ∂`.
    Verified,
    /// Generator `index` is not in the kernel.
    Rejected { index: usize },
    /// Generator `index` could not be placed in the image within the bounds.
    Unknown { index: usize },
}

#[derive(Clone, Debug)]
pub struct PlinthClaimReport {
    pub status: ClaimStatus,
    pub generators: Vec<Polynomial>,
    pub memberships: Vec<Decision<PlinthCertificate>>,
    /// `(generators) + relations`: under the claim, its zero set is the
    /// complement of the union of all principal invariant cylinders.
    pub complement: Ideal,
}

/// Checks that each claimed generator of `pl(∂)` is in the plinth ideal.
/// That they generate it is taken on trust.
pub fn plinth_claim_verify(
    der: &Derivation,
    gens: &[Polynomial],
    bounds: SearchBounds,
) -> Result<PlinthClaimReport, CylinderError> {
    if gens.is_empty() {
        return Err(CylinderError::EmptyGenerators);
    }
    let ring = der.ring();
    let generators: Vec<Polynomial> = gens.iter().map(|g| ring.reduce(g)).collect();
    let mut memberships = Vec::with_capacity(gens.len());
    let mut status = ClaimStatus::Verified;
    for (i, g) in generators.iter().enumerate() {
        let decision = plinth_membership(der, g, bounds)?;
        let verdict = match &decision {
            Decision::Yes(c) if c.n() == 1 => ClaimStatus::Verified,
            Decision::Yes(_) | Decision::UnknownAtBounds(_) => ClaimStatus::Unknown { index: i },
            Decision::No { .. } => ClaimStatus::Rejected { index: i },
        };
        memberships.push(decision);
        status = match (status, verdict) {
            (s @ ClaimStatus::Rejected { .. }, _) => s,
            (_, v @ ClaimStatus::Rejected { .. }) => v,
            (s @ ClaimStatus::Unknown { .. }, _) => s,
            (_, v) => v,
        };
    }
    let complement = ring.relations().with_generators(&generators);
    Ok(PlinthClaimReport { status, generators, memberships, complement })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Principality {
    Principal(Polynomial),
    /// The gcd of the generators does not lie in the ideal they generate.
    NotPrincipal {
        gcd: Polynomial,
    },
}

/// Principality of `(gens)` in the free polynomial ring the generators live
/// in. In a factorial ring an ideal is principal iff it contains the gcd
/// of its generators.
pub fn principality_check(gens: &[Polynomial]) -> Result<Principality, CylinderError> {
    let first = gens.first().ok_or(CylinderError::EmptyGenerators)?;
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some((head, rest)) = nonzero.split_first() else {
        return Ok(Principality::Principal(Polynomial::zero(first.nvars(), first.order())));
    };
    let mut g = head.monic();
    for f in rest {
        if g.is_one() {
            break;
        }
        g = gcd_via_lcm(&g, f)?;
    }
    let ideal = Ideal::new(first.nvars(), first.order(), gens.to_vec());
    if ideal.contains(&g) {
        Ok(Principality::Principal(g))
    } else {
        Ok(Principality::NotPrincipal { gcd: g })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MaximalCylinder {
    /// `D(g)` for the generator `g` of the plinth ideal.
    Found(Box<CylinderCertificate>),
    NotPrincipal {
        gcd: Polynomial,
    },
    /// The principal generator was found but the bounded search did not
    /// produce a certificate.
    Undecided(SearchBounds),
}

/// The maximal principal invariant cylinder, when the (verified) plinth
/// generators generate a principal ideal. Principality is tested in the
/// free polynomial ring on the ambient variables.
pub fn maximal_cylinder(
    der: &Derivation,
    gens: &[Polynomial],
    bounds: SearchBounds,
) -> Result<MaximalCylinder, CylinderError> {
    let report = plinth_claim_verify(der, gens, bounds)?;
    if report.status != ClaimStatus::Verified {
        return Err(CylinderError::ClaimNotVerified);
    }
    match principality_check(gens)? {
        Principality::NotPrincipal { gcd } => Ok(MaximalCylinder::NotPrincipal { gcd }),
        Principality::Principal(g) => Ok(match cylinder_decision(der, &g, bounds)? {
            Decision::Yes(cert) => MaximalCylinder::Found(Box::new(cert)),
            _ => MaximalCylinder::Undecided(bounds),
        }),
    }
}
