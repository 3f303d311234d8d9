use num_traits::Signed;
use serde::Serialize;

use crate::cones::{conic_hull_halfspaces, in_conic_hull};
use crate::ratmath::{rational_string, Rational, RationalMatrix, SpectralVector};

use super::PerronError;

/// Outcome of the row Hadamard conic test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhcVerdict {
    pub holds: bool,
    pub failure: Option<RhcFailure>,
}

/// A pair of rows whose Hadamard product leaves the row cone, with a Farkas
/// certificate: `certificate . r >= 0` for every row `r`, while
/// `certificate . product = value < 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhcFailure {
    pub i: usize,
    pub j: usize,
    pub product: SpectralVector,
    pub certificate: SpectralVector,
    #[serde(with = "rational_string")]
    pub value: Rational,
}

impl RhcFailure {
    /// Re-checks the certificate against the rows of `m`.
    pub fn verify(&self, m: &RationalMatrix) -> bool {
        let expected = m.row(self.i).hadamard(&m.row(self.j));
        let Ok(expected) = expected else { return false };
        let Ok(value) = self.certificate.dot(&self.product) else {
            return false;
        };
        expected == self.product
            && value == self.value
            && value.is_negative()
            && m.row_vectors()
                .iter()
                .all(|r| r.dot(&self.certificate).is_ok_and(|d| !d.is_negative()))
    }
}

/// Decides whether every `r_i ∘ r_j` lies in the conic hull of the rows of
/// `m`. Square invertible input uses `x ∈ RC(S) ⇔ x S^{-1} >= 0`; anything
/// else falls back to exact Fourier-Motzkin feasibility.
pub fn is_rhc(m: &RationalMatrix) -> Result<RhcVerdict, PerronError> {
    if m.is_square() {
        if let Ok(inv) = m.invert() {
            return Ok(rhc_with_inverse(m, &inv));
        }
    }
    rhc_by_elimination(m)
}

pub(crate) fn rhc_with_inverse(s: &RationalMatrix, s_inv: &RationalMatrix) -> RhcVerdict {
    for (i, j, product) in pairs(s) {
        let coords = s_inv.vec_mul(&product).expect("square matrix");
        if let Some(k) = coords.iter().position(Signed::is_negative) {
            // column k of S^{-1} pairs to a Kronecker delta with the rows of S
            return RhcVerdict {
                holds: false,
                failure: Some(RhcFailure {
                    i,
                    j,
                    product,
                    certificate: s_inv.column(k),
                    value: coords[k].clone(),
                }),
            };
        }
    }
    RhcVerdict {
        holds: true,
        failure: None,
    }
}

fn rhc_by_elimination(m: &RationalMatrix) -> Result<RhcVerdict, PerronError> {
    let rows = m.row_vectors();
    if m.cols() == 0 {
        return Ok(RhcVerdict {
            holds: true,
            failure: None,
        });
    }
    let mut hull_rows: Option<Vec<SpectralVector>> = None;
    for (i, j, product) in pairs(m) {
        if in_conic_hull(&rows, &product)? {
            continue;
        }
        let halfspaces = match &hull_rows {
            Some(h) => h,
            None => hull_rows.insert(conic_hull_halfspaces(m.cols(), &rows)?),
        };
        let certificate = halfspaces
            .iter()
            .find(|h| h.dot(&product).is_ok_and(|d| d.is_negative()))
            .cloned()
            .ok_or_else(|| {
                PerronError::Inconsistent(format!(
                    "elimination rejects r{i} ∘ r{j} but no separating halfspace exists"
                ))
            })?;
        let value = certificate.dot(&product)?;
        return Ok(RhcVerdict {
            holds: false,
            failure: Some(RhcFailure {
                i,
                j,
                product,
                certificate,
                value,
            }),
        });
    }
    Ok(RhcVerdict {
        holds: true,
        failure: None,
    })
}

/// All unordered pairs `i <= j` with their Hadamard products.
fn pairs(m: &RationalMatrix) -> impl Iterator<Item = (usize, usize, SpectralVector)> + '_ {
    (0..m.rows()).flat_map(move |i| {
        (i..m.rows()).map(move |j| {
            let p = m.row(i).hadamard(&m.row(j)).expect("rows share a length");
            (i, j, p)
        })
    })
}
