use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Monomial, MonomialOrder, Q};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in strictly descending order under the polynomial's
/// monomial order, and no stored coefficient is zero.
#[derive(Clone, Debug)]
pub struct Polynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Q)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Polynomial { nvars, order, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Q) -> Self {
        Self::monomial(Monomial::one(nvars), c, order)
    }

    pub fn one(nvars: usize, order: MonomialOrder) -> Self {
        Self::constant(nvars, order, Q::one())
    }

    pub fn var(nvars: usize, order: MonomialOrder, index: usize) -> Self {
        Self::monomial(Monomial::var(nvars, index), Q::one(), order)
    }

    pub fn monomial(m: Monomial, c: Q, order: MonomialOrder) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Self::zero(nvars, order);
        }
        Polynomial { nvars, order, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zero coefficients.
    pub fn from_terms<I>(nvars: usize, order: MonomialOrder, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Q)>,
    {
        let mut acc: HashMap<Monomial, Q> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length does not match variable count");
            *acc.entry(m).or_insert_with(Q::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { nvars, order, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Terms in descending order.
    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Q)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Q)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.terms.first().map(|t| &t.1)
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, Q)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Re-sorts the terms under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { nvars: self.nvars, order, terms }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<(), ArithError> {
        if self.nvars != other.nvars {
            return Err(ArithError::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let other = other.with_order(self.order);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.into_iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.compare(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, if negate { -c } else { c }));
                }
                Ordering::Equal => {
                    let (m, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let c = if negate { c1 - c2 } else { c1 + c2 };
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                }
            }
        }
        Polynomial { nvars: self.nvars, order, terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.check_vars(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.check_vars(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, ArithError> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars, self.order));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.with_order(self.order).mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, Q> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Q::zero) += ca * cb;
            }
        }
        Ok(Polynomial::from_terms(self.nvars, self.order, acc))
    }

    /// Multiplies by the single term `c * m`. Order is preserved, so no sort.
    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        Polynomial { nvars: self.nvars, order: self.order, terms }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars, self.order);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `index`.
    pub fn partial(&self, index: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(index);
            m.lower(index).map(|lowered| (lowered, c * Q::from_integer(BigInt::from(e))))
        });
        Polynomial::from_terms(self.nvars, self.order, terms)
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q, ArithError> {
        if point.len() != self.nvars {
            return Err(ArithError::PointLength { expected: self.nvars, got: point.len() });
        }
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// The positive rational `c` such that `self / c` has coprime integer
    /// coefficients and a positive leading coefficient is `content * sign`.
    /// Returns the factor `k` with `self * k` primitive with positive lead.
    pub fn primitive_factor(&self) -> Q {
        if self.is_zero() {
            return Q::one();
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut k = Q::new(den_lcm, num_gcd);
        if self.leading_coeff().unwrap().is_negative() {
            k = -k;
        }
        k
    }

    /// Integer coprime coefficients with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        self.scale(&self.primitive_factor())
    }

    /// Exact quotient in the free polynomial ring, when `divisor` divides
    /// `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let divisor = divisor.with_order(self.order);
        let (lm, lc) = divisor.leading_term().unwrap().clone();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            let q = lm.quotient_of(&m)?;
            let qc = &c / &lc;
            rem = &rem - &divisor.mul_term(&q, &qc);
            quotient.push((q, qc));
        }
        Some(Polynomial::from_terms(self.nvars, self.order, quotient))
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some((first, _)) => it.fold(first.clone(), |g, (m, _)| g.gcd(m)),
        }
    }

    /// Divides every term by `m`; panics when some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| (m.quotient_of(t).expect("monomial does not divide term"), c.clone()))
            .collect();
        Polynomial { nvars: self.nvars, order: self.order, terms }
    }

    /// Appends `extra` fresh variables after the existing ones.
    pub fn extend_vars(&self, extra: usize, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(self.nvars + extra, order, self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())))
    }

    /// Prepends `extra` fresh variables before the existing ones.
    pub fn extend_vars_front(&self, extra: usize, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            self.nvars + extra,
            order,
            self.terms.iter().map(|(m, c)| (m.extend_front(extra), c.clone())),
        )
    }

    /// Removes the first `k` variables, which must not occur.
    pub fn drop_front_vars(&self, k: usize, order: MonomialOrder) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.drop_front(k)?, c.clone()));
        }
        Some(Polynomial::from_terms(self.nvars - k, order, terms))
    }

    /// Removes the last `k` variables, which must not occur.
    pub fn drop_back_vars(&self, k: usize, order: MonomialOrder) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            terms.push((m.drop_back(k)?, c.clone()));
        }
        Some(Polynomial::from_terms(self.nvars - k, order, terms))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the variable counts differ.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { nvars: self.nvars, order: self.order, terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
