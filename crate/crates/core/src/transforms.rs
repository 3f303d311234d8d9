//! Row and column operations on `S` whose effect on both cones is known in
//! advance.
//!
//! | transform | spectracone                  | row cone                         |
//! |-----------|------------------------------|----------------------------------|
//! | `P S`     | unchanged                    | unchanged                        |
//! | `D₊ S`    | unchanged                    | unchanged                        |
//! | `S P`     | ray coordinates permuted     | ray coordinates permuted         |
//! | `S D`     | unchanged                    | rays multiplied entrywise by `D` |
//!
//! Permutations are stored 0-based. Column `j` of `S P` is column `perm[j]`
//! of `S`, and row `i` of `P S` is row `perm[i]` of `S`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cones::{Cone, ConeError, VRep};
use crate::perron::PerronContext;
use crate::ratmath::{format_rational, MathError, Rational, RationalMatrix, SpectralVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("bad transform parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Math(#[from] MathError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Transform {
    PermuteRows(Vec<usize>),
    ScaleRowsPositive(SpectralVector),
    PermuteCols(Vec<usize>),
    ScaleColsInvertible(SpectralVector),
}

impl Transform {
    pub fn kind(&self) -> &'static str {
        match self {
            Transform::PermuteRows(_) => "permute-rows",
            Transform::ScaleRowsPositive(_) => "scale-rows",
            Transform::PermuteCols(_) => "permute-cols",
            Transform::ScaleColsInvertible(_) => "scale-cols",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Transform::PermuteRows(p) | Transform::PermuteCols(p) => p.len(),
            Transform::ScaleRowsPositive(d) | Transform::ScaleColsInvertible(d) => d.len(),
        }
    }

    /// Checks the parameter invariants.
    pub fn validate(&self) -> Result<(), TransformError> {
        match self {
            Transform::PermuteRows(p) | Transform::PermuteCols(p) => {
                let mut seen = vec![false; p.len()];
                for &k in p {
                    if k >= p.len() || std::mem::replace(&mut seen[k], true) {
                        return Err(TransformError::BadParameter(format!("{p:?} is not a permutation")));
                    }
                }
            }
            Transform::ScaleRowsPositive(d) => {
                if let Some(x) = d.iter().find(|x| !x.is_positive()) {
                    return Err(TransformError::BadParameter(format!(
                        "row scaling entry {} is not positive",
                        format_rational(x)
                    )));
                }
            }
            Transform::ScaleColsInvertible(d) => {
                if d.iter().any(Zero::is_zero) {
                    return Err(TransformError::BadParameter("column scaling has a zero entry".into()));
                }
            }
        }
        Ok(())
    }

    /// The permutation or diagonal matrix: `P S`, `D₊ S`, `S P` or `S D`.
    pub fn parameter(&self) -> Result<RationalMatrix, TransformError> {
        self.validate()?;
        let n = self.size();
        Ok(match self {
            Transform::PermuteRows(p) => {
                let mut m = RationalMatrix::zeros(n, n);
                for (i, &k) in p.iter().enumerate() {
                    m.set(i, k, Rational::one());
                }
                m
            }
            Transform::PermuteCols(p) => {
                let mut m = RationalMatrix::zeros(n, n);
                for (j, &k) in p.iter().enumerate() {
                    m.set(k, j, Rational::one());
                }
                m
            }
            Transform::ScaleRowsPositive(d) | Transform::ScaleColsInvertible(d) => RationalMatrix::diag(d),
        })
    }

    fn check_size(&self, n: usize) -> Result<(), TransformError> {
        if self.size() != n {
            return Err(TransformError::BadParameter(format!(
                "{} parameter has size {}, matrix has size {n}",
                self.kind(),
                self.size()
            )));
        }
        Ok(())
    }
}

/// `P S`, `D₊ S`, `S P` or `S D`.
pub fn apply(t: &Transform, s: &RationalMatrix) -> Result<RationalMatrix, TransformError> {
    let n = match t {
        Transform::PermuteRows(_) | Transform::ScaleRowsPositive(_) => s.rows(),
        Transform::PermuteCols(_) | Transform::ScaleColsInvertible(_) => s.cols(),
    };
    t.check_size(n)?;
    let p = t.parameter()?;
    Ok(match t {
        Transform::PermuteRows(_) | Transform::ScaleRowsPositive(_) => p.matmul(s)?,
        Transform::PermuteCols(_) | Transform::ScaleColsInvertible(_) => s.matmul(&p)?,
    })
}

/// The spectracone and row cone of `apply(t, S)`, built only from the cones
/// of `S`.
pub fn predicted_effect(t: &Transform, ctx: &PerronContext) -> Result<(Cone, Cone), TransformError> {
    t.check_size(ctx.n())?;
    t.validate()?;
    let c = ctx.spectracone().extremal_rays().rays();
    let rc = ctx.row_cone().extremal_rays().rays();
    let (c, rc): (Vec<SpectralVector>, Vec<SpectralVector>) = match t {
        Transform::PermuteRows(_) | Transform::ScaleRowsPositive(_) => (c.to_vec(), rc.to_vec()),
        Transform::PermuteCols(p) => {
            let permute = |v: &SpectralVector| SpectralVector::new(p.iter().map(|&k| v[k].clone()).collect());
            (c.iter().map(permute).collect(), rc.iter().map(permute).collect())
        }
        Transform::ScaleColsInvertible(d) => (c.to_vec(), rc.iter().map(|r| r.hadamard(d)).collect::<Result<_, _>>()?),
    };
    let n = ctx.n();
    Ok((Cone::from_rays(VRep::new(n, c)?)?, Cone::from_rays(VRep::new(n, rc)?)?))
}

/// `kind:values`, where kind is `permute-rows`, `scale-rows`, `permute-cols`
/// or `scale-cols`. Permutations are written 1-based.
impl FromStr for Transform {
    type Err = TransformError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (kind, values) = text
            .split_once(':')
            .ok_or_else(|| TransformError::BadParameter(format!("expected kind:values, got {text:?}")))?;
        let perm = || -> Result<Vec<usize>, TransformError> {
            values
                .split(',')
                .map(|v| match v.trim().parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(TransformError::BadParameter(format!("bad permutation index {v:?}"))),
                })
                .collect()
        };
        let diag = || SpectralVector::parse(values).map_err(|e| TransformError::BadParameter(e.to_string()));
        let t = match kind.trim() {
            "permute-rows" => Transform::PermuteRows(perm()?),
            "scale-rows" => Transform::ScaleRowsPositive(diag()?),
            "permute-cols" => Transform::PermuteCols(perm()?),
            "scale-cols" => Transform::ScaleColsInvertible(diag()?),
            other => {
                return Err(TransformError::BadParameter(format!(
                    "unknown transform kind {other:?}"
                )))
            }
        };
        t.validate()?;
        Ok(t)
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = match self {
            Transform::PermuteRows(p) | Transform::PermuteCols(p) => p.iter().map(|k| (k + 1).to_string()).collect(),
            Transform::ScaleRowsPositive(d) | Transform::ScaleColsInvertible(d) => {
                d.iter().map(format_rational).collect()
            }
        };
        write!(f, "{}:{}", self.kind(), values.join(","))
    }
}
