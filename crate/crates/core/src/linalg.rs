//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: matrix has {rows} rows, right-hand side has {rhs}")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("ragged matrix: row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
}

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::from_integer(1.into()));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::Ragged { row: i, expected: cols, got: row.len() });
            }
            entries.extend(row);
        }
        Ok(QMatrix { rows: n, cols, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Q::from_integer(BigInt::from(v))).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `y^T A`.
    pub fn left_mul_vec(&self, y: &[Q]) -> Vec<Q> {
        assert_eq!(y.len(), self.rows);
        (0..self.cols).map(|c| (0..self.rows).map(|r| &y[r] * self.get(r, c)).sum()).collect()
    }
}

/// Witness that `A x = b` has no solution: `y^T A = 0` while `y^T b = c ≠ 0`.
/// In eliminated form this is the row `(0 ... 0 | c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconsistencyCertificate {
    /// Multipliers of the original rows.
    pub combination: Vec<Q>,
    /// The nonzero right-hand side of the combined row.
    pub rhs: Q,
}

impl InconsistencyCertificate {
    /// Checks the certificate against the system independently of the
    /// elimination that produced it.
    pub fn verify(&self, a: &QMatrix, b: &[Q]) -> bool {
        if self.combination.len() != a.rows() || b.len() != a.rows() || self.rhs.is_zero() {
            return false;
        }
        let lhs_zero = a.left_mul_vec(&self.combination).iter().all(Zero::is_zero);
        let rhs: Q = self.combination.iter().zip(b).map(|(y, v)| y * v).sum();
        lhs_zero && rhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution; free variables are set to zero.
    Consistent(Vec<Q>),
    Inconsistent(InconsistencyCertificate),
}

fn pivot_weight(q: &Q) -> (u64, u64) {
    (q.numer().abs().bits(), q.denom().bits())
}

struct Echelon {
    /// augmented rows `[A | b | tracked identity]`
    rows: Vec<Vec<Q>>,
    pivots: Vec<(usize, usize)>,
}

/// Gauss-Jordan elimination on `[A | extra]`, pivoting only in the first
/// `cols` columns. Pivot rows are chosen by smallest entry size.
fn eliminate(mut rows: Vec<Vec<Q>>, cols: usize) -> Echelon {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == n {
            break;
        }
        let Some(p) = (next..n).filter(|&r| !rows[r][c].is_zero()).min_by_key(|&r| pivot_weight(&rows[r][c])) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][c].recip();
        for v in rows[next].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push((next, c));
        next += 1;
    }
    Echelon { rows, pivots }
}

/// Exact solution of `A x = b`, or a certified inconsistency.
pub fn solve_exact(a: &QMatrix, b: &[Q]) -> Result<Solution, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch { rows: a.rows(), rhs: b.len() });
    }
    let (m, n) = (a.rows(), a.cols());
    let rows: Vec<Vec<Q>> = (0..m)
        .map(|r| {
            let mut row = Vec::with_capacity(n + 1 + m);
            row.extend_from_slice(a.row(r));
            row.push(b[r].clone());
            row.extend((0..m).map(|k| if k == r { Q::from_integer(1.into()) } else { Q::zero() }));
            row
        })
        .collect();
    let ech = eliminate(rows, n);
    for row in &ech.rows[ech.pivots.len()..] {
        if !row[n].is_zero() {
            return Ok(Solution::Inconsistent(InconsistencyCertificate {
                combination: row[n + 1..].to_vec(),
                rhs: row[n].clone(),
            }));
        }
    }
    let mut x = vec![Q::zero(); n];
    for &(r, c) in &ech.pivots {
        x[c] = ech.rows[r][n].clone();
    }
    Ok(Solution::Consistent(x))
}

pub fn rank(a: &QMatrix) -> usize {
    let rows: Vec<Vec<Q>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
    eliminate(rows, a.cols()).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_integer(x.into())).collect()
    }

    #[test]
    fn identity_solve() {
        let a = QMatrix::identity(2);
        assert_eq!(solve_exact(&a, &qv(&[3, 5])).unwrap(), Solution::Consistent(qv(&[3, 5])));
    }

    #[test]
    fn underdetermined_consistent() {
        let a = QMatrix::from_i64(&[&[1, 1]]).unwrap();
        let Solution::Consistent(x) = solve_exact(&a, &qv(&[2])).unwrap() else { panic!() };
        assert_eq!(a.mul_vec(&x), qv(&[2]));
        assert_eq!(x, qv(&[2, 0]));
    }

    #[test]
    fn contradictory_rows() {
        let a = QMatrix::from_i64(&[&[1], &[1]]).unwrap();
        let b = qv(&[0, 1]);
        let Solution::Inconsistent(cert) = solve_exact(&a, &b).unwrap() else { panic!() };
        assert!(cert.verify(&a, &b));
    }

    #[test]
    fn dimension_mismatch() {
        let a = QMatrix::identity(2);
        assert_eq!(solve_exact(&a, &qv(&[1])), Err(LinalgError::DimensionMismatch { rows: 2, rhs: 1 }));
        assert!(QMatrix::from_i64(&[&[1, 2], &[3]]).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&QMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&QMatrix::identity(5)), 5);
        assert_eq!(rank(&QMatrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap()), 1);
    }
}
