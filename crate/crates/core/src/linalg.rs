//! Exact rational linear algebra: Gauss-Jordan elimination, kernel bases,
//! particular solutions and integer canonicalization.
//!
//! Everything here is exact. Pivots are the first nonzero entry in column
//! order; there is no magnitude pivoting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::rational::{to_strings, Rational};

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::new(rows.len(), cols, rows.iter().flatten().cloned().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, columns: &[Vec<Rational>]) -> Self {
        let mut entries = Vec::with_capacity(len * columns.len());
        for r in 0..len {
            for c in columns {
                entries.push(c[r].clone());
            }
        }
        Self::new(len, columns.len(), entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n, vec![Rational::zero(); n * n]);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Appends `other`'s columns to the right.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        RatMatrix::new(self.rows, cols, entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = to_strings(self.row(r));
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows of `"p/q"` strings.
impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(&to_strings(self.row(r)))?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: RatMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl RrefResult {
    pub fn free_cols(&self) -> Vec<usize> {
        let mut pivots = self.pivot_cols.iter().peekable();
        (0..self.rref.cols())
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }
}

/// Reduced row-echelon form by Gauss-Jordan elimination.
pub fn rref(a: &RatMatrix) -> RrefResult {
    rref_limited(a, a.cols())
}

/// Gauss-Jordan elimination that only picks pivots among the first
/// `pivot_limit` columns; later columns are carried along.
fn rref_limited(a: &RatMatrix, pivot_limit: usize) -> RrefResult {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..pivot_limit.min(cols) {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(pivot_row, found);

        let inv = m.get(pivot_row, col).recip();
        for c in col..cols {
            let idx = pivot_row * cols + c;
            m.entries[idx] = &m.entries[idx] * &inv;
        }

        let pivot: Vec<Rational> = m.row(pivot_row).to_vec();
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                if pivot[c].is_zero() {
                    continue;
                }
                let idx = r * cols + c;
                m.entries[idx] = &m.entries[idx] - &factor * &pivot[c];
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    let rank = pivot_cols.len();
    RrefResult {
        rref: m,
        pivot_cols,
        rank,
    }
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).rank
}

/// Basis of `{x : A·x = 0}`, one vector per free column: that free
/// variable is 1, the other free variables are 0 and pivot variables are
/// back-substituted. Returns an empty list for full column rank.
pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let reduced = rref(a);
    reduced
        .free_cols()
        .into_iter()
        .map(|free| {
            let mut x = vec![Rational::zero(); a.cols()];
            x[free] = Rational::one();
            for (row, &pc) in reduced.pivot_cols.iter().enumerate() {
                x[pc] = -reduced.rref.get(row, free).clone();
            }
            x
        })
        .collect()
}

/// Solution of `A·y = b` with every free variable set to 0.
///
/// On failure returns [`Error::Inconsistent`] carrying a row weighting `w`
/// with `wᵀA = 0` and `wᵀb ≠ 0`, which certifies that `b` is outside the
/// column space.
pub fn solve_particular(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if b.len() != a.rows() {
        return Err(Error::LengthMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let rhs = RatMatrix::from_columns(a.rows(), &[b.to_vec()]);
    let augmented = a.hstack(&rhs).hstack(&RatMatrix::identity(a.rows()));
    let reduced = rref_limited(&augmented, a.cols());
    let n = a.cols();

    // Rows below the rank have a zero A-part; their identity part is a
    // left-null vector of A.
    for row in reduced.rank..a.rows() {
        let rhs_entry = reduced.rref.get(row, n);
        if !rhs_entry.is_zero() {
            let witness = reduced.rref.row(row)[n + 1..].to_vec();
            return Err(Error::Inconsistent { witness });
        }
    }

    let mut y = vec![Rational::zero(); n];
    for (row, &pc) in reduced.pivot_cols.iter().enumerate() {
        y[pc] = reduced.rref.get(row, n).clone();
    }
    Ok(y)
}

/// Scales `v` by a positive factor so that its entries are coprime
/// integers, then flips the sign if the first nonzero entry is negative.
pub fn primitive_integer(v: &[Rational]) -> Result<Vec<Rational>> {
    let first = v.iter().find(|e| !e.is_zero()).ok_or(Error::ZeroVector)?;
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|e| (e * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    Ok(scaled
        .into_iter()
        .map(|e| Rational::from_integer(e / &gcd * &sign))
        .collect())
}

/// Rank of the matrix whose columns are `vectors` (each of length `len`).
pub fn span_rank(len: usize, vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    rank(&RatMatrix::from_columns(len, vectors))
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(v: &[Rational], vectors: &[Vec<Rational>]) -> Result<bool> {
    for u in vectors {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: v.len(),
                found: u.len(),
            });
        }
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let base = span_rank(v.len(), vectors);
    let mut extended = vectors.to_vec();
    extended.push(v.to_vec());
    Ok(span_rank(v.len(), &extended) == base)
}

/// Whether `candidate - base` lies in `span(kernel)`.
pub fn in_affine_span(candidate: &[Rational], base: &[Rational], kernel: &[Vec<Rational>]) -> Result<bool> {
    if candidate.len() != base.len() {
        return Err(Error::LengthMismatch {
            expected: base.len(),
            found: candidate.len(),
        });
    }
    let diff: Vec<Rational> = candidate.iter().zip(base).map(|(a, b)| a - b).collect();
    in_span(&diff, kernel)
}

/// Whether two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], len: usize) -> Result<bool> {
    for v in a.iter().chain(b) {
        if v.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    let ra = span_rank(len, a);
    let rb = span_rank(len, b);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    Ok(ra == rb && span_rank(len, &both) == ra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};

    fn b_matrix() -> RatMatrix {
        RatMatrix::from_i64(&[&[1, -1, 1, 0], &[0, 1, 0, 0], &[0, 0, -1, -1], &[0, -1, 0, 2]])
    }

    fn k_matrix() -> RatMatrix {
        RatMatrix::from_i64(&[
            &[1, -1, 1, 0, 0],
            &[0, 1, 0, 0, 1],
            &[0, 0, -1, -1, 0],
            &[0, -1, 0, 2, 0],
        ])
    }

    fn k_time_matrix() -> RatMatrix {
        RatMatrix::from_i64(&[
            &[1, -1, 1, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, -1, -1, 1],
            &[0, -1, 0, 2, 0],
        ])
    }

    #[test]
    fn rref_of_market_matrices() {
        let r = rref(&b_matrix());
        assert_eq!((r.rank, r.pivot_cols.clone()), (4, vec![0, 1, 2, 3]));
        assert_eq!(r.rref, RatMatrix::identity(4));
        let r = rref(&k_matrix());
        assert_eq!((r.rank, r.pivot_cols.clone()), (4, vec![0, 1, 2, 3]));
        assert_eq!(r.free_cols(), vec![4]);
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = RatMatrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.rref, id);
        assert_eq!(r.rank, 3);
        let z = RatMatrix::from_i64(&[&[0, 0], &[0, 0]]);
        assert_eq!(rref(&z).rank, 0);
        assert_eq!(kernel_basis(&z).len(), 2);
    }

    #[test]
    fn kernels_of_market_matrices() {
        assert!(kernel_basis(&b_matrix()).is_empty());
        let k = kernel_basis(&k_matrix());
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![ratio(-3, 2), int(-1), ratio(1, 2), ratio(-1, 2), int(1)]);
        assert_eq!(primitive_integer(&k[0]).unwrap(), ints(&[3, 2, -1, 1, -2]));
        let kt = kernel_basis(&k_time_matrix());
        assert_eq!(kt.len(), 1);
        assert_eq!(kt[0], ints(&[-1, 0, 1, 0, 1]));
        assert_eq!(primitive_integer(&kt[0]).unwrap(), ints(&[1, 0, -1, 0, -1]));
    }

    #[test]
    fn particular_solutions() {
        let a = ints(&[0, 0, 0, 1]);
        assert_eq!(
            solve_particular(&b_matrix(), &a).unwrap(),
            vec![ratio(1, 2), int(0), ratio(-1, 2), ratio(1, 2)]
        );
        assert_eq!(
            solve_particular(&k_matrix(), &a).unwrap(),
            vec![ratio(1, 2), int(0), ratio(-1, 2), ratio(1, 2), int(0)]
        );
        assert_eq!(
            solve_particular(&RatMatrix::identity(3), &ints(&[0, 0, 1])).unwrap(),
            ints(&[0, 0, 1])
        );
        let pendulum = RatMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, -2]]);
        assert_eq!(
            solve_particular(&pendulum, &ints(&[0, 0, 1])).unwrap(),
            vec![ratio(1, 2), int(0), ratio(-1, 2)]
        );
    }

    #[test]
    fn inconsistent_system_returns_left_null_witness() {
        // No column carries the second row's dimension.
        let a = RatMatrix::from_i64(&[&[1, 2], &[0, 0], &[1, 0]]);
        let b = ints(&[0, 1, 0]);
        match solve_particular(&a, &b) {
            Err(Error::Inconsistent { witness }) => {
                for c in 0..a.cols() {
                    let dot: Rational = (0..a.rows()).map(|r| &witness[r] * a.get(r, c)).sum();
                    assert!(dot.is_zero());
                }
                let wb: Rational = witness.iter().zip(&b).map(|(w, x)| w * x).sum();
                assert!(!wb.is_zero());
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
        assert!(matches!(
            solve_particular(&a, &ints(&[1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn primitive_integer_examples() {
        let v = vec![ratio(-3, 2), int(-1), ratio(1, 2), ratio(-1, 2), int(1)];
        assert_eq!(primitive_integer(&v).unwrap(), ints(&[3, 2, -1, 1, -2]));
        assert_eq!(primitive_integer(&ints(&[2, 4])).unwrap(), ints(&[1, 2]));
        assert_eq!(
            primitive_integer(&[int(0), ratio(-1, 3), int(0)]).unwrap(),
            ints(&[0, 1, 0])
        );
        assert_eq!(primitive_integer(&ints(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn affine_span_examples() {
        let y0 = vec![ratio(1, 2), int(0), ratio(-1, 2), ratio(1, 2), int(0)];
        let kernel = vec![ints(&[3, 2, -1, 1, -2])];
        let kyle = vec![int(0), ratio(-1, 3), ratio(-1, 3), ratio(1, 3), ratio(1, 3)];
        assert!(in_affine_span(&kyle, &y0, &kernel).unwrap());
        assert!(in_affine_span(&ints(&[-1, -1, 0, 0, 1]), &y0, &kernel).unwrap());
        assert!(in_affine_span(&y0, &y0, &kernel).unwrap());
        assert!(in_affine_span(&y0, &y0, &[]).unwrap());
        assert!(!in_affine_span(&ints(&[0, 0, 0, 0, 0]), &y0, &kernel).unwrap());
        assert!(matches!(
            in_affine_span(&ints(&[0]), &y0, &kernel),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn same_span_detects_scaling_and_difference() {
        let a = vec![ints(&[3, 2, -1, 1, -2])];
        let b = vec![vec![int(1), ratio(2, 3), ratio(-1, 3), ratio(1, 3), ratio(-2, 3)]];
        assert!(same_span(&a, &b, 5).unwrap());
        assert!(!same_span(&a, &[ints(&[1, 0, 0, 0, 0])], 5).unwrap());
        assert!(!same_span(&a, &[], 5).unwrap());
    }

    #[test]
    fn matrix_serializes_as_rational_strings() {
        let m = RatMatrix::from_rows(&[vec![ratio(1, 2), int(-3)]]);
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"[["1/2","-3"]]"#);
    }
}
