//! Spectracones and row cones of Perron similarities.
//!
//! For an invertible `S`, the spectracone is `{ x : S diag(x) S^{-1} >= 0 }`
//! and the row cone is the conical hull of the rows of `S`. A
//! [`PerronContext`] owns `S`, its exact inverse, and both cones (built on
//! first use).

mod classify;
mod realize;
mod rhc;
mod spectra;

use std::sync::OnceLock;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::cones::{Cone, ConeError, HRep};
use crate::ratmath::{MathError, Rational, RationalMatrix, SpectralVector};

pub use classify::{AllOnesRow, CrossChecks, Relation, RelationReport, Witness};
pub use realize::{EigenCheck, Realization};
pub use rhc::{is_rhc, RhcFailure, RhcVerdict};
pub use spectra::{build_vandermonde, is_suleimanova};

/// Environment variable that turns on the algebraic-versus-geometric cross
/// validation in release builds. Debug builds always run it.
pub const DEBUG_CHECKS_ENV: &str = "SPECTRACONE_DEBUG_CHECKS";

pub fn debug_checks_enabled() -> bool {
    cfg!(debug_assertions) || std::env::var(DEBUG_CHECKS_ENV).is_ok_and(|v| v == "1")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerronError {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("row index {index} out of range for {len} rows")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("spectrum is not in the spectracone: entry ({row}, {col}) of S diag(x) S^-1 is {value}")]
    NotInSpectracone { row: usize, col: usize, value: Rational },
    #[error("no row of S is totally nonzero")]
    NoTotallyNonzeroRow,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// An invertible matrix `S` together with its exact inverse and lazily built
/// cones.
#[derive(Debug)]
pub struct PerronContext {
    s: RationalMatrix,
    s_inv: RationalMatrix,
    spectracone: OnceLock<Cone>,
    row_cone: OnceLock<Cone>,
}

impl PerronContext {
    pub fn new(s: RationalMatrix) -> Result<Self, PerronError> {
        let s_inv = s.invert()?;
        Ok(Self {
            s,
            s_inv,
            spectracone: OnceLock::new(),
            row_cone: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.s.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.s
    }

    pub fn inverse(&self) -> &RationalMatrix {
        &self.s_inv
    }

    /// Linear functional giving entry `(i, j)` of `S diag(x) S^{-1}`:
    /// its `k`-th coefficient is `S[i,k] * S^{-1}[k,j]`.
    pub fn spectracone_row(&self, i: usize, j: usize) -> SpectralVector {
        SpectralVector::new((0..self.n()).map(|k| self.s.get(i, k) * self.s_inv.get(k, j)).collect())
    }

    /// Maps an H-rep row index of the spectracone back to its matrix entry.
    pub fn spectracone_entry(&self, row: usize) -> (usize, usize) {
        (row / self.n(), row % self.n())
    }

    /// The `n^2` inequalities in row-major `(i, j)` order, zero rows included.
    pub fn spectracone(&self) -> &Cone {
        self.spectracone.get_or_init(|| {
            let n = self.n();
            let rows = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| self.spectracone_row(i, j))
                .collect();
            // x -> S diag(x) S^{-1} is injective, so the rows have rank n.
            Cone::from_halfspaces(HRep::new(n, rows).expect("rows have length n")).expect("spectracone is pointed")
        })
    }

    /// Row cone with H-rep `x S^{-1} >= 0`: one inequality per column of `S^{-1}`.
    pub fn row_cone(&self) -> &Cone {
        self.row_cone.get_or_init(|| {
            let rows = self.s_inv.column_vectors();
            Cone::from_halfspaces(HRep::new(self.n(), rows).expect("rows have length n"))
                .expect("inverse columns are independent")
        })
    }

    /// Checks that the row cone computed from the H-rep has exactly the
    /// primitive rows of `S` as extremal rays.
    pub fn validate_row_cone(&self) -> Result<(), PerronError> {
        let mut expected: Vec<SpectralVector> = self.s.row_vectors().iter().map(SpectralVector::primitive).collect();
        expected.sort();
        expected.dedup();
        let found = self.row_cone().extremal_rays().rays();
        if expected.len() != self.n() || found != expected.as_slice() {
            return Err(PerronError::Inconsistent(format!(
                "row cone rays {found:?} differ from the rows of S {expected:?}"
            )));
        }
        Ok(())
    }

    /// Whether some nonscalar diagonal `D` gives `S D S^{-1} >= 0`.
    pub fn is_perron_similarity(&self) -> bool {
        let n = self.n();
        if n < 2 {
            return false;
        }
        let rays = self.spectracone().extremal_rays().rays();
        let ones = SpectralVector::ones(n);
        rays.len() >= 2 || rays.iter().any(|r| r.positive_multiple_of(&ones).is_none())
    }

    pub fn is_orthogonal(&self) -> bool {
        self.s.is_orthogonal()
    }

    fn check_row(&self, i: usize) -> Result<(), PerronError> {
        if i < self.n() {
            Ok(())
        } else {
            Err(PerronError::IndexOutOfRange {
                index: i,
                len: self.n(),
            })
        }
    }

    /// `S diag(r_i) S^{-1}`.
    pub fn row_spectrum_matrix(&self, i: usize) -> Result<RationalMatrix, PerronError> {
        self.check_row(i)?;
        let d = RationalMatrix::diag(self.s.row_slice(i));
        Ok(self.s.matmul(&d)?.matmul(&self.s_inv)?)
    }

    /// Whether row `i` of `S` is itself a realizable spectrum, i.e.
    /// `S diag(r_i) S^{-1} >= 0`.
    pub fn row_spectrum_test(&self, i: usize) -> Result<bool, PerronError> {
        Ok(self.row_spectrum_matrix(i)?.is_nonnegative())
    }

    /// Membership in the row cone of the Hadamard product of the selected
    /// rows (repeats allowed).
    pub fn hadamard_closure_sample(&self, indices: &[usize]) -> Result<bool, PerronError> {
        let mut product = SpectralVector::ones(self.n());
        for &i in indices {
            self.check_row(i)?;
            product = product.hadamard(&self.s.row(i))?;
        }
        Ok(self.row_cone().contains(&product)?)
    }

    pub fn rhc(&self) -> RhcVerdict {
        rhc::rhc_with_inverse(&self.s, &self.s_inv)
    }

    /// Row cone inside spectracone, decided by the RHC test.
    pub fn decide_row_cone_in_spectracone(&self) -> Result<bool, PerronError> {
        let algebraic = self.rhc().holds;
        if debug_checks_enabled() {
            let geometric = self.row_cone().is_subset(self.spectracone())?;
            if geometric != algebraic {
                return Err(PerronError::Inconsistent(format!(
                    "RHC test says {algebraic}, row cone containment says {geometric}"
                )));
            }
        }
        Ok(algebraic)
    }

    /// An extremal ray `y` of the spectracone with a negative entry in
    /// `y S^{-1}`, with the column and value.
    pub fn extremal_outside_row_cone(&self) -> Option<(SpectralVector, usize, Rational)> {
        self.spectracone().extremal_rays().rays().iter().find_map(|y| {
            let coords = self.s_inv.vec_mul(y).expect("ray has length n");
            coords
                .iter()
                .position(Signed::is_negative)
                .map(|k| (y.clone(), k, coords[k].clone()))
        })
    }

    /// Spectracone inside row cone, decided by testing `y S^{-1} >= 0` on
    /// every extremal ray `y`.
    pub fn decide_spectracone_in_row_cone(&self) -> Result<bool, PerronError> {
        let algebraic = self.extremal_outside_row_cone().is_none();
        if debug_checks_enabled() {
            let geometric = self.spectracone().is_subset(self.row_cone())?;
            if geometric != algebraic {
                return Err(PerronError::Inconsistent(format!(
                    "extremal test says {algebraic}, cone containment says {geometric}"
                )));
            }
            if self.all_ones_row().is_some() && !algebraic {
                return Err(PerronError::Inconsistent(
                    "S has an all-ones row but the spectracone is not inside the row cone".into(),
                ));
            }
        }
        Ok(algebraic)
    }

    /// A row of `S` equal to `c * e` with `c > 0`; exact matches (`c = 1`)
    /// are preferred.
    pub fn all_ones_row(&self) -> Option<AllOnesRow> {
        let ones = SpectralVector::ones(self.n());
        let found: Vec<AllOnesRow> = (0..self.n())
            .filter_map(|i| {
                self.s.row(i).positive_multiple_of(&ones).map(|scale| AllOnesRow {
                    index: i,
                    exact: scale.is_one(),
                    scale,
                })
            })
            .collect();
        found.iter().find(|r| r.exact).or(found.first()).cloned()
    }

    pub fn totally_nonzero_rows(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.s.row(i).is_totally_nonzero()).collect()
    }

    /// Intersection over totally nonzero rows `r_i` of the row cones of
    /// `S diag(r_i)^{-1}`; always contains the spectracone.
    pub fn intersection_bound(&self) -> Result<Cone, PerronError> {
        let rows = self.totally_nonzero_rows();
        if rows.is_empty() {
            return Err(PerronError::NoTotallyNonzeroRow);
        }
        let mut bound: Option<Cone> = None;
        for i in rows {
            let inv_diag: Vec<Rational> = self.s.row_slice(i).iter().map(|a| a.recip()).collect();
            let scaled = PerronContext::new(self.s.matmul(&RationalMatrix::diag(&inv_diag))?)?;
            let cone = scaled.row_cone().clone();
            bound = Some(match bound {
                None => cone,
                Some(b) => b.intersect(&cone)?,
            });
        }
        let bound = bound.expect("at least one row");
        if debug_checks_enabled() && !self.spectracone().is_subset(&bound)? {
            return Err(PerronError::Inconsistent(
                "spectracone escapes the intersection bound".into(),
            ));
        }
        Ok(bound)
    }
}
