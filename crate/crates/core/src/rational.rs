//! Exact rational scalars and dense vectors/matrices over them.
//!
//! `ExactScalar` is an arbitrary-precision rational, always in lowest terms
//! with a positive denominator; arithmetic never rounds. The text form is
//! `p/q`, or plain `p` when the denominator is 1, and that format is used in
//! every machine-readable emission.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

pub type ExactScalar = BigRational;

/// Builds num/den in canonical form, rejecting a zero denominator.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<ExactScalar> {
    let num = num.into();
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

/// Integer-valued scalar.
pub fn int(value: impl Into<BigInt>) -> ExactScalar {
    BigRational::from_integer(value.into())
}

/// Parses `p/q` or `p`.
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let trimmed = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    match trimmed.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = trimmed.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(num))
        }
    }
}

/// Positive least common multiple of all denominators (1 for an empty input).
pub fn common_denominator<'a>(values: impl Iterator<Item = &'a ExactScalar>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc
}

/// Scales a slice of rationals to integers by their common denominator.
/// Returns `(ints, den)` with `values[i] = ints[i] / den` and `den > 0`.
pub fn to_common_integers(values: &[ExactScalar]) -> (Vec<BigInt>, BigInt) {
    let den = common_denominator(values.iter());
    let ints = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    (ints, den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactVector {
    entries: Vec<ExactScalar>,
}

impl ExactVector {
    pub fn new(entries: Vec<ExactScalar>) -> Self {
        Self { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![ExactScalar::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[ExactScalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactScalar> {
        self.entries.iter()
    }

    pub fn into_inner(self) -> Vec<ExactScalar> {
        self.entries
    }
}

impl Index<usize> for ExactVector {
    type Output = ExactScalar;
    fn index(&self, i: usize) -> &ExactScalar {
        &self.entries[i]
    }
}

impl IndexMut<usize> for ExactVector {
    fn index_mut(&mut self, i: usize) -> &mut ExactScalar {
        &mut self.entries[i]
    }
}

impl From<Vec<ExactScalar>> for ExactVector {
    fn from(entries: Vec<ExactScalar>) -> Self {
        Self::new(entries)
    }
}

impl FromIterator<ExactScalar> for ExactVector {
    fn from_iter<I: IntoIterator<Item = ExactScalar>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Exact inner product; errors on length mismatch.
pub fn dot(a: &ExactVector, b: &ExactVector) -> Result<ExactScalar> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let mut acc = ExactScalar::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    Ok(acc)
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let row_count = rows.len();
        let col_count = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(row_count * col_count);
        for row in rows {
            if row.len() != col_count {
                return Err(Error::BadShape(format!(
                    "ragged rows: expected {} columns, found {}",
                    col_count,
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: row_count,
            cols: col_count,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &ExactScalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: ExactScalar) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        debug_assert!(r < self.rows);
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major flattening into a vector of length rows × cols.
    pub fn flatten(&self) -> ExactVector {
        ExactVector::new(self.entries.clone())
    }
}

/// Scales one rational row to integers by its common denominator.
pub(crate) fn integer_row(row: &[ExactScalar]) -> Vec<BigInt> {
    let den = common_denominator(row.iter());
    row.iter().map(|v| v.numer() * (&den / v.denom())).collect()
}

/// Divides an integer row by the gcd of its entries (no-op on a zero row).
/// The sign of every entry is preserved.
pub(crate) fn reduce_by_gcd(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
        }
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// Exact rank via fraction-free row-echelon reduction.
///
/// Each row is scaled to integers first (row scaling preserves rank); newly
/// inserted rows are reduced against the echelon and gcd-normalized so
/// intermediate magnitudes stay small.
pub fn rank(m: &ExactMatrix) -> usize {
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for r in 0..m.rows() {
        let row = integer_row(m.row(r));
        if insert_into_echelon(&mut echelon, row) && echelon.len() == m.cols() {
            break;
        }
    }
    echelon.len()
}

/// Rank of a set of integer rows (shared by the facet machinery).
pub(crate) fn integer_rank(rows: impl Iterator<Item = Vec<BigInt>>, max_rank: usize) -> usize {
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for row in rows {
        if insert_into_echelon(&mut echelon, row) && echelon.len() == max_rank {
            break;
        }
    }
    echelon.len()
}

/// Reduces `row` against the echelon and inserts it if independent.
/// Returns true when the row extended the echelon.
pub(crate) fn insert_into_echelon(echelon: &mut Vec<(usize, Vec<BigInt>)>, mut row: Vec<BigInt>) -> bool {
    for (pivot_col, basis) in echelon.iter() {
        if row[*pivot_col].is_zero() {
            continue;
        }
        let a = basis[*pivot_col].clone();
        let b = row[*pivot_col].clone();
        for (x, y) in row.iter_mut().zip(basis.iter()) {
            *x = &a * &*x - &b * y;
        }
        reduce_by_gcd(&mut row);
    }
    match row.iter().position(|x| !x.is_zero()) {
        Some(lead) => {
            reduce_by_gcd(&mut row);
            let at = echelon.partition_point(|(c, _)| *c < lead);
            echelon.insert(at, (lead, row));
            true
        }
        None => false,
    }
}
