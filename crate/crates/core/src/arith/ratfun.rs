use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Polynomial, Q};

/// Scalar clearing all denominators and common integer factors of both
/// parts at once, signed so the denominator's leading coefficient is positive.
fn joint_primitive_factor(numerator: &Polynomial, denominator: &Polynomial) -> Q {
    let coeffs = || numerator.terms().iter().chain(denominator.terms()).map(|(_, c)| c);
    let den_lcm = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num_gcd = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den_lcm / c.denom()))));
    let k = Q::new(den_lcm, num_gcd);
    if denominator.leading_coeff().is_some_and(|c| c.is_negative()) {
        -k
    } else {
        k
    }
}

/// Quotient `numerator / denominator` of two polynomials.
///
/// Normal form: numerator and denominator have integer coefficients with no
/// common integer factor, the denominator has a positive leading
/// coefficient, and any monomial common to every term of
/// both parts is cancelled. Zero is stored as `0/1`. No polynomial gcd is
/// taken, so two equal functions may still have different representations;
/// compare them by cross-multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self, ArithError> {
        if denominator.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if numerator.nvars() != denominator.nvars() {
            return Err(ArithError::VariableCountMismatch { left: numerator.nvars(), right: denominator.nvars() });
        }
        Ok(Self::normalized(numerator, denominator))
    }

    fn normalized(numerator: Polynomial, denominator: Polynomial) -> Self {
        debug_assert!(!denominator.is_zero());
        if numerator.is_zero() {
            let one = Polynomial::one(denominator.nvars(), denominator.order());
            return RationalFunction { numerator, denominator: one };
        }
        let common = numerator.monomial_content().gcd(&denominator.monomial_content());
        let (numerator, denominator) = if common.is_one() {
            (numerator, denominator)
        } else {
            (numerator.div_monomial(&common), denominator.div_monomial(&common))
        };
        let k = joint_primitive_factor(&numerator, &denominator);
        RationalFunction { numerator: numerator.scale(&k), denominator: denominator.scale(&k) }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let one = Polynomial::one(p.nvars(), p.order());
        RationalFunction { numerator: p, denominator: one }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The polynomial value when the denominator is `1`.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.denominator.is_one().then_some(&self.numerator)
    }

    /// Applies `f` to numerator and denominator (for instance a normal form
    /// modulo a relation ideal). Fails if the denominator maps to zero.
    pub fn map_parts<F: FnMut(&Polynomial) -> Polynomial>(&self, mut f: F) -> Result<Self, ArithError> {
        RationalFunction::new(f(&self.numerator), f(&self.denominator))
    }

    /// Sum, reusing a denominator when one divides the other.
    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let (a, b) = (self, other);
        if a.denominator == b.denominator {
            return Self::normalized(&a.numerator + &b.numerator, a.denominator.clone());
        }
        if let Some(q) = b.denominator.exact_div(&a.denominator) {
            return Self::normalized(&(&a.numerator * &q) + &b.numerator, b.denominator.clone());
        }
        if let Some(q) = a.denominator.exact_div(&b.denominator) {
            return Self::normalized(&a.numerator + &(&b.numerator * &q), a.denominator.clone());
        }
        Self::normalized(
            &(&a.numerator * &b.denominator) + &(&b.numerator * &a.denominator),
            &a.denominator * &b.denominator,
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        Self::normalized(&self.numerator * &other.numerator, &self.denominator * &other.denominator)
    }

    pub fn scale(&self, c: &Q) -> RationalFunction {
        Self::normalized(self.numerator.scale(c), self.denominator.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, ArithError> {
        if other.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::normalized(&self.numerator * &other.denominator, &self.denominator * &other.numerator))
    }

    pub fn pow(&self, n: u32) -> RationalFunction {
        Self::normalized(self.numerator.pow(n), self.denominator.pow(n))
    }

    /// `numerator(self) * denominator(other) - numerator(other) * denominator(self)`,
    /// which vanishes (modulo a prime ideal) exactly when the two functions agree.
    pub fn cross_difference(&self, other: &RationalFunction) -> Polynomial {
        &(&self.numerator * &other.denominator) - &(&other.numerator * &self.denominator)
    }

    /// Evaluation at a point where the denominator does not vanish.
    pub fn eval(&self, point: &[Q]) -> Result<Q, ArithError> {
        let d = self.denominator.eval(point)?;
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(self.numerator.eval(point)? / d)
    }
}
