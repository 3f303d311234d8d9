use serde::Serialize;

use crate::ratmath::{rational_string, MathError, Rational, RationalMatrix, SpectralVector};

use super::{PerronContext, PerronError};

/// `A = S diag(x) S^{-1} >= 0`, with every column `s_k` of `S` checked to be an
/// eigenvector for `x_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub spectrum: SpectralVector,
    pub matrix: RationalMatrix,
    pub eigenpairs: Vec<EigenCheck>,
    /// `S` is orthogonal, so `A` is symmetric.
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenCheck {
    pub index: usize,
    #[serde(with = "rational_string")]
    pub eigenvalue: Rational,
    pub eigenvector: SpectralVector,
    pub image: SpectralVector,
    pub holds: bool,
}

impl PerronContext {
    /// Nonnegative matrix with spectrum `x`, or the entry of `S diag(x) S^{-1}`
    /// that goes negative.
    pub fn realize(&self, x: &SpectralVector) -> Result<Realization, PerronError> {
        if x.len() != self.n() {
            return Err(MathError::LengthMismatch {
                left: self.n(),
                right: x.len(),
            }
            .into());
        }
        if let Some((row, col, value)) = self.first_negative_entry(x) {
            return Err(PerronError::NotInSpectracone { row, col, value });
        }
        let a = self.matrix().matmul(&RationalMatrix::diag(x))?.matmul(self.inverse())?;
        if !a.is_nonnegative() {
            return Err(PerronError::Inconsistent("realization has a negative entry".into()));
        }
        let eigenpairs = (0..self.n())
            .map(|k| {
                let column = self.matrix().column(k);
                let image = a.mul_vec(&column)?;
                let holds = image == column.scale(&x[k]);
                Ok(EigenCheck {
                    index: k,
                    eigenvalue: x[k].clone(),
                    eigenvector: column,
                    image,
                    holds,
                })
            })
            .collect::<Result<Vec<_>, PerronError>>()?;
        if eigenpairs.iter().any(|e| !e.holds) {
            return Err(PerronError::Inconsistent("eigenvector check failed".into()));
        }
        Ok(Realization {
            spectrum: x.clone(),
            matrix: a,
            eigenpairs,
            symmetric: self.is_orthogonal(),
        })
    }
}
