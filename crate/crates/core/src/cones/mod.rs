//! Pointed polyhedral cones with an inequality (H) and a generator (V)
//! description.
//!
//! A [`Cone`] is always built from an H-representation `{ x : a . x >= 0 }`.
//! Its extremal rays are computed on demand by double description and cached.
//! Cones given by generators are converted by running double description on
//! the dual system.

mod dd;
mod hull;
mod json;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ratmath::{nullspace, primitive_integers, rank_of_int_rows, MathError, Rational, SpectralVector};

pub use hull::in_conic_hull;
pub use json::ConeDocument;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension must be at least 1")]
    EmptyAmbientSpace,
    #[error("cone is not pointed: it contains the line through {line}")]
    NotPointed { line: SpectralVector },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Inequality description: each row `a` stands for `a . x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    dim: usize,
    rows: Vec<SpectralVector>,
}

impl HRep {
    pub fn new(dim: usize, rows: Vec<SpectralVector>) -> Result<Self, ConeError> {
        check_lengths(dim, &rows)?;
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[SpectralVector] {
        &self.rows
    }
}

/// Generator description: canonical extremal rays, primitive integer vectors
/// in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    dim: usize,
    rays: Vec<SpectralVector>,
}

impl VRep {
    pub fn new(dim: usize, rays: Vec<SpectralVector>) -> Result<Self, ConeError> {
        check_lengths(dim, &rays)?;
        Ok(Self { dim, rays })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[SpectralVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Canonical form: primitive, deduplicated, sorted.
    pub fn canonical(&self) -> Self {
        let mut rays: Vec<SpectralVector> = self
            .rays
            .iter()
            .filter(|r| !r.is_zero())
            .map(SpectralVector::primitive)
            .collect();
        rays.sort();
        rays.dedup();
        Self { dim: self.dim, rays }
    }
}

/// Inequality rows describing the conic hull of `generators`: its facet
/// normals, plus an opposite pair for every direction orthogonal to all
/// generators. Works whether or not the hull is pointed. Each row `h`
/// satisfies `h . g >= 0` for every generator, so a row with `h . t < 0` is a
/// Farkas certificate that `t` lies outside the hull.
pub fn conic_hull_halfspaces(dim: usize, generators: &[SpectralVector]) -> Result<Vec<SpectralVector>, ConeError> {
    check_lengths(dim, generators)?;
    let mut gens: Vec<Vec<BigInt>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| primitive_integers(g))
        .collect();
    gens.sort();
    gens.dedup();
    let as_rational: Vec<Vec<Rational>> = gens
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let kernel: Vec<Vec<BigInt>> = nullspace(&as_rational, dim)
        .iter()
        .map(|k| primitive_integers(k))
        .collect();
    let negate = |k: &Vec<BigInt>| -> Vec<BigInt> { k.iter().map(|x| -x).collect() };
    // Generators and kernel together span the space, so the dual system is
    // pointed even when the hull is not.
    let mut dual_rows = gens;
    for k in &kernel {
        dual_rows.push(k.clone());
        dual_rows.push(negate(k));
    }
    let basis = dd::independent_rows(&dual_rows, dim);
    debug_assert_eq!(basis.len(), dim);
    let mut rows: Vec<SpectralVector> = dd::extreme_rays(&dual_rows, dim, &basis)
        .iter()
        .map(|f| SpectralVector::from_bigints(f))
        .collect();
    for k in &kernel {
        rows.push(SpectralVector::from_bigints(k));
        rows.push(SpectralVector::from_bigints(&negate(k)));
    }
    Ok(rows)
}

fn check_lengths(dim: usize, vs: &[SpectralVector]) -> Result<(), ConeError> {
    if dim == 0 {
        return Err(ConeError::EmptyAmbientSpace);
    }
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(ConeError::DimensionMismatch {
            expected: dim,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

/// A pointed polyhedral cone.
#[derive(Debug, Clone)]
pub struct Cone {
    hrep: HRep,
    /// Primitive, nonzero, deduplicated integer rows fed to the engine.
    engine_rows: Vec<Vec<BigInt>>,
    /// Indices into `engine_rows` of `dim` independent rows; their existence
    /// certifies that the cone contains no line.
    pointed_basis: Vec<usize>,
    rays: OnceLock<VRep>,
}

impl Cone {
    /// `{ x : a . x >= 0 for every row a }`.
    pub fn from_halfspaces(hrep: HRep) -> Result<Self, ConeError> {
        let dim = hrep.dim;
        let mut engine_rows: Vec<Vec<BigInt>> = Vec::with_capacity(hrep.rows.len());
        for row in &hrep.rows {
            let ints = primitive_integers(row);
            if ints.iter().any(|x| !x.is_zero()) && !engine_rows.contains(&ints) {
                engine_rows.push(ints);
            }
        }
        let pointed_basis = dd::independent_rows(&engine_rows, dim);
        if pointed_basis.len() < dim {
            let rows: Vec<Vec<Rational>> = engine_rows
                .iter()
                .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
                .collect();
            let line = nullspace(&rows, dim)
                .into_iter()
                .next()
                .expect("rank-deficient system has a kernel");
            return Err(ConeError::NotPointed { line });
        }
        Ok(Self {
            hrep,
            engine_rows,
            pointed_basis,
            rays: OnceLock::new(),
        })
    }

    /// Conical hull of `rays`. Zero and redundant generators are dropped.
    pub fn from_rays(vrep: VRep) -> Result<Self, ConeError> {
        let rows = conic_hull_halfspaces(vrep.dim, vrep.rays())?;
        Self::from_halfspaces(HRep { dim: vrep.dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.hrep.dim
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    /// `dim` linearly independent inequality normals; no line can satisfy
    /// all of them.
    pub fn pointedness_certificate(&self) -> Vec<SpectralVector> {
        self.pointed_basis
            .iter()
            .map(|&i| SpectralVector::from_bigints(&self.engine_rows[i]))
            .collect()
    }

    /// Canonical extremal rays, computed once.
    pub fn extremal_rays(&self) -> &VRep {
        self.rays.get_or_init(|| {
            let mut rays: Vec<SpectralVector> = dd::extreme_rays(&self.engine_rows, self.dim(), &self.pointed_basis)
                .iter()
                .map(|r| SpectralVector::from_bigints(r))
                .collect();
            rays.sort();
            rays.dedup();
            VRep { dim: self.dim(), rays }
        })
    }

    pub fn contains(&self, x: &SpectralVector) -> Result<bool, ConeError> {
        Ok(self.first_violation(x)?.is_none())
    }

    /// First H-rep row (by original index) that `x` violates, with the
    /// negative value `a . x`.
    pub fn first_violation(&self, x: &SpectralVector) -> Result<Option<(usize, Rational)>, ConeError> {
        self.check_dim(x.len())?;
        for (i, row) in self.hrep.rows.iter().enumerate() {
            let v = row.dot(x)?;
            if v.is_negative() {
                return Ok(Some((i, v)));
            }
        }
        Ok(None)
    }

    /// Rank of the H-rep rows tight at `x`. Extremal rays have rank `dim - 1`.
    pub fn tight_rank(&self, x: &SpectralVector) -> Result<usize, ConeError> {
        self.check_dim(x.len())?;
        let xi = primitive_integers(x);
        let tight: Vec<Vec<BigInt>> = self
            .engine_rows
            .iter()
            .filter(|r| dd::dot(r, &xi).is_zero())
            .cloned()
            .collect();
        Ok(rank_of_int_rows(&tight))
    }

    pub fn is_subset(&self, other: &Cone) -> Result<bool, ConeError> {
        Ok(self.subset_violation(other)?.is_none())
    }

    /// An extremal ray of `self` outside `other`, with the index of the
    /// violated row of `other` and its value.
    pub fn subset_violation(&self, other: &Cone) -> Result<Option<(SpectralVector, usize, Rational)>, ConeError> {
        self.check_dim(other.dim())?;
        for ray in self.extremal_rays().rays() {
            if let Some((row, value)) = other.first_violation(ray)? {
                return Ok(Some((ray.clone(), row, value)));
            }
        }
        Ok(None)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, ConeError> {
        self.check_dim(other.dim())?;
        let rows = self.hrep.rows.iter().chain(&other.hrep.rows).cloned().collect();
        Self::from_halfspaces(HRep { dim: self.dim(), rows })
    }

    /// True for the zero cone `{0}`.
    pub fn is_trivial(&self) -> bool {
        self.extremal_rays().is_empty()
    }

    pub fn equals_as_sets(&self, other: &Cone) -> Result<bool, ConeError> {
        self.check_dim(other.dim())?;
        Ok(self.extremal_rays() == other.extremal_rays())
    }

    pub fn to_document(&self) -> ConeDocument {
        ConeDocument {
            dim: self.dim(),
            hrep: self.hrep.rows.clone(),
            rays: self.extremal_rays().rays.clone(),
        }
    }

    fn check_dim(&self, found: usize) -> Result<(), ConeError> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(ConeError::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }
}
