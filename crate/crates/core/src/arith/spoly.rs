use num_bigint::BigInt;
use num_traits::One;

use super::{MonomialOrder, Polynomial, Q};

/// Polynomial in an adjoined time variable `s` whose coefficients are
/// ring polynomials: `sum_k coeffs[k] * s^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPoly {
    nvars: usize,
    order: MonomialOrder,
    coeffs: Vec<Polynomial>,
}

fn binomial(n: usize, k: usize) -> Q {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

impl SPoly {
    pub fn new(nvars: usize, order: MonomialOrder, coeffs: Vec<Polynomial>) -> Self {
        let mut p = SPoly { nvars, order, coeffs };
        p.trim();
        p
    }

    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        SPoly { nvars, order, coeffs: Vec::new() }
    }

    pub fn constant(p: Polynomial) -> Self {
        SPoly::new(p.nvars(), p.order(), vec![p])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Coefficients indexed by the power of `s`; the last one is nonzero.
    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars, self.order))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `s`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn map_coeffs<F: FnMut(&Polynomial) -> Polynomial>(&self, f: F) -> SPoly {
        SPoly::new(self.nvars, self.order, self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &SPoly) -> SPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SPoly::new(self.nvars, self.order, (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &SPoly) -> SPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SPoly::new(self.nvars, self.order, (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        if self.is_zero() || other.is_zero() {
            return SPoly::zero(self.nvars, self.order);
        }
        let mut out = vec![Polynomial::zero(self.nvars, self.order); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        SPoly::new(self.nvars, self.order, out)
    }

    /// Evaluates `s` at a rational value. Substituting zero returns the
    /// constant coefficient.
    pub fn substitute(&self, value: &Q) -> Polynomial {
        // Horner
        let mut acc = Polynomial::zero(self.nvars, self.order);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(value) + c;
        }
        acc
    }

    /// Substitutes `s -> s + t`.
    pub fn substitute_shift(&self) -> STPoly {
        let mut grid = vec![vec![Polynomial::zero(self.nvars, self.order); self.coeffs.len()]; self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            for j in 0..=k {
                // s^j t^(k-j)
                let term = c.scale(&binomial(k, j));
                grid[k - j][j] = &grid[k - j][j] + &term;
            }
        }
        STPoly::new(
            self.nvars,
            self.order,
            grid.into_iter().map(|row| SPoly::new(self.nvars, self.order, row)).collect(),
        )
    }

    /// Formal derivative `d/ds`.
    pub fn derivative(&self) -> SPoly {
        SPoly::new(
            self.nvars,
            self.order,
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Q::from_integer(BigInt::from(k)))).collect(),
        )
    }
}

/// Polynomial in two adjoined variables `s, t`, stored as a polynomial in
/// `t` with [`SPoly`] coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct STPoly {
    nvars: usize,
    order: MonomialOrder,
    by_t: Vec<SPoly>,
}

impl STPoly {
    pub fn new(nvars: usize, order: MonomialOrder, by_t: Vec<SPoly>) -> Self {
        let mut p = STPoly { nvars, order, by_t };
        while p.by_t.last().is_some_and(|c| c.is_zero()) {
            p.by_t.pop();
        }
        p
    }

    /// `sum_j t^j * rows[j]`.
    pub fn by_t(&self) -> &[SPoly] {
        &self.by_t
    }

    /// Coefficient of `s^i t^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Polynomial {
        self.by_t.get(j).map(|row| row.coeff(i)).unwrap_or_else(|| Polynomial::zero(self.nvars, self.order))
    }

    pub fn map_coeffs<F: FnMut(&Polynomial) -> Polynomial>(&self, mut f: F) -> STPoly {
        STPoly::new(self.nvars, self.order, self.by_t.iter().map(|row| row.map_coeffs(&mut f)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.by_t.is_empty()
    }
}
