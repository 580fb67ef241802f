use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a power product `x_0^{e_0} * ... * x_{n-1}^{e_{n-1}}`.
///
/// Variable `0` is the largest variable under every supported order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        Monomial(exps.into_iter().collect())
    }

    /// The monomial `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lowers the exponent of `x_index` by one; `None` if it is already zero.
    pub fn lower(&self, index: usize) -> Option<Monomial> {
        if self.0[index] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[index] -= 1;
        Some(Monomial(e))
    }

    /// Appends `extra` variables with exponent zero.
    pub fn extend(&self, extra: usize) -> Monomial {
        Monomial(self.0.iter().copied().chain(std::iter::repeat_n(0, extra)).collect())
    }

    /// Prepends `extra` variables with exponent zero.
    pub fn extend_front(&self, extra: usize) -> Monomial {
        Monomial(std::iter::repeat_n(0, extra).chain(self.0.iter().copied()).collect())
    }

    /// Drops the first `k` variables. Returns `None` when any of them occurs.
    pub fn drop_front(&self, k: usize) -> Option<Monomial> {
        if self.0[..k].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial(self.0[k..].into()))
    }

    /// Drops the last `k` variables. Returns `None` when any of them occurs.
    pub fn drop_back(&self, k: usize) -> Option<Monomial> {
        let n = self.0.len() - k;
        if self.0[n..].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Monomial(self.0[..n].into()))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Admissible monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Block order: the first `block` variables are compared first (by
    /// degree reverse lexicographic order), ties are broken by degree reverse
    /// lexicographic order on the remaining variables.
    Elimination(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.0.len());
                match degrevlex(&a.0[..k], &b.0[..k]) {
                    Ordering::Equal => degrevlex(&a.0[k..], &b.0[k..]),
                    o => o,
                }
            }
        }
    }

    /// Whether any monomial involving one of the first `k` variables is
    /// larger than every monomial free of them.
    pub fn eliminates(self, k: usize) -> bool {
        match self {
            _ if k == 0 => true,
            MonomialOrder::Lex => true,
            MonomialOrder::DegRevLex => false,
            MonomialOrder::Elimination(b) => b == k,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn degrevlex_prefers_missing_last_variable() {
        let o = MonomialOrder::DegRevLex;
        // y^2 > x*z in degrevlex with x > y > z
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_compares_first_variable() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 7, 7])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        assert!(o.eliminates(1));
        assert!(!o.eliminates(2));
        assert!(!MonomialOrder::DegRevLex.eliminates(1));
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 0]).quotient_of(&m(&[2, 1])), Some(m(&[1, 1])));
        assert_eq!(m(&[0, 2]).quotient_of(&m(&[2, 1])), None);
    }
}
