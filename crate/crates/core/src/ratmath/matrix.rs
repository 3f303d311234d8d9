use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{denominator_lcm, format_rational, make_primitive, parse_rational, Rational};
use super::vector::SpectralVector;
use super::MathError;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, MathError> {
        if entries.len() != rows * cols {
            return Err(MathError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from rows, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MathError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(MathError::Ragged {
                row: bad,
                expected: cols,
                found: rows[bad].len(),
            });
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, MathError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Parses one row per line (or per `;`). Entries are separated by commas
    /// and/or whitespace; `#` starts a comment; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, MathError> {
        let mut rows = Vec::new();
        for line in text.lines().flat_map(|l| l.split(';')) {
            let line = line.split('#').next().unwrap_or("");
            let row = SpectralVector::parse(line)?;
            if !row.is_empty() {
                rows.push(row.into_entries());
            }
        }
        if rows.is_empty() {
            return Err(MathError::Parse("empty matrix".into()));
        }
        Self::from_rows(rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&SpectralVector::ones(n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Square matrix with `v` on the diagonal.
    pub fn diag(v: &[Rational]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in v.iter().enumerate() {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> SpectralVector {
        SpectralVector::new(self.row_slice(i).to_vec())
    }

    pub fn row_slice(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> SpectralVector {
        SpectralVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<SpectralVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<SpectralVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, MathError> {
        if self.cols != other.rows {
            return Err(MathError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * other.get(k, j);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &SpectralVector) -> Result<SpectralVector, MathError> {
        if self.cols != v.len() {
            return Err(MathError::LengthMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok(SpectralVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row_slice(i)
                        .iter()
                        .zip(v.iter())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    /// Row vector times matrix (`x^T M`).
    pub fn vec_mul(&self, v: &SpectralVector) -> Result<SpectralVector, MathError> {
        self.transpose().mul_vec(v)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|a| !a.is_negative())
    }

    /// Exact inverse by fraction-free Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<Self, MathError> {
        if !self.is_square() {
            return Err(MathError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // Clear denominators row by row: N = L * M with L = diag(row lcms),
        // so M^{-1} = N^{-1} * L.
        let scales: Vec<BigInt> = (0..n).map(|i| denominator_lcm(self.row_slice(i))).collect();
        let mut aug: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigInt> = self
                    .row_slice(i)
                    .iter()
                    .map(|a| a.numer() * (&scales[i] / a.denom()))
                    .collect();
                row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                row
            })
            .collect();
        bareiss_gauss_jordan(&mut aug, n).ok_or(MathError::Singular)?;
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in aug.iter().enumerate() {
            let pivot = &row[i];
            for j in 0..n {
                entries.push(Rational::new(&row[n + j] * &scales[j], pivot.clone()));
            }
        }
        Ok(Self {
            rows: n,
            cols: n,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect();
        rank_of_rows(&rows)
    }

    /// True when `M * M^T` is exactly the identity.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square()
            && self
                .matmul(&self.transpose())
                .is_ok_and(|p| p == Self::identity(self.rows))
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row_slice(i).iter().map(format_rational).collect())
            .collect()
    }
}

/// Fraction-free Gauss-Jordan on the first `n` columns of an integer matrix
/// with `n` rows. On success the left block is diagonal and every row `i`
/// satisfies `row[i] != 0`; all divisions are exact.
fn bareiss_gauss_jordan(a: &mut [Vec<BigInt>], n: usize) -> Option<()> {
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        let (head, tail) = a.split_at_mut(k);
        let (pivot_row, rest) = tail.split_first_mut().expect("row k exists");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let factor = row[k].clone();
            for j in 0..width {
                if j == k {
                    continue;
                }
                let num = &pivot_row[k] * &row[j] - &factor * &pivot_row[j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact fraction-free division");
                row[j] = q;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    Some(())
}

/// Integer echelon elimination with gcd normalisation; returns the rank.
pub(crate) fn rank_of_int_rows(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..width {
                row[j] = &pivot[col] * &row[j] - &factor * &pivot[j];
            }
            *row = make_primitive(std::mem::take(row));
        }
        rank += 1;
    }
    rank
}

pub(crate) fn rank_of_rows(rows: &[Vec<Rational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| super::primitive_integers(r)).collect();
    rank_of_int_rows(&ints)
}

/// Basis of `{ y : r . y = 0 for every row r }`, each vector primitive.
pub fn nullspace(rows: &[Vec<Rational>], dim: usize) -> Vec<SpectralVector> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); dim];
            v[free] = Rational::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[k][free].clone();
            }
            SpectralVector::new(v).primitive()
        })
        .collect()
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row_slice(i).iter().map(format_rational).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(deserializer)?;
        let rows = raw
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Self::from_rows(rows).map_err(D::Error::custom)
    }
}
