//! Planar slices `{ x in K : x_k = v }` of three-dimensional cones.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cones::Cone;
use crate::ratmath::{format_rational, rational_string, Rational, SpectralVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectionError {
    #[error("cross-sections need a 3-dimensional cone, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("slice coordinate {coordinate} is out of range")]
    CoordinateOutOfRange { coordinate: usize },
    #[error("slice value {} must be positive", format_rational(.0))]
    NonPositiveValue(Rational),
    #[error("slice is unbounded: rays {} have nonpositive slice coordinate", list(.rays))]
    UnboundedSlice { rays: Vec<SpectralVector> },
}

fn list(rays: &[SpectralVector]) -> String {
    rays.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Polygon cut from a cone by `x[coordinate] = value`, vertices in
/// counter-clockwise order in the remaining two coordinates, starting from
/// the direction of the positive first remaining axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossSection {
    pub coordinate: usize,
    #[serde(with = "rational_string")]
    pub value: Rational,
    pub vertices: Vec<SpectralVector>,
}

impl CrossSection {
    pub fn of(cone: &Cone, coordinate: usize, value: &Rational) -> Result<Self, SectionError> {
        if cone.dim() != 3 {
            return Err(SectionError::UnsupportedDimension(cone.dim()));
        }
        if coordinate >= 3 {
            return Err(SectionError::CoordinateOutOfRange { coordinate });
        }
        if !value.is_positive() {
            return Err(SectionError::NonPositiveValue(value.clone()));
        }
        let rays = cone.extremal_rays().rays();
        let unbounded: Vec<SpectralVector> = rays.iter().filter(|r| !r[coordinate].is_positive()).cloned().collect();
        if !unbounded.is_empty() {
            return Err(SectionError::UnboundedSlice { rays: unbounded });
        }
        let mut vertices: Vec<SpectralVector> = rays.iter().map(|r| r.scale(&(value / &r[coordinate]))).collect();
        sort_counter_clockwise(&mut vertices, coordinate);
        Ok(CrossSection {
            coordinate,
            value: value.clone(),
            vertices,
        })
    }
}

fn sort_counter_clockwise(vertices: &mut [SpectralVector], coordinate: usize) {
    let (a, b) = match coordinate {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    if vertices.is_empty() {
        return;
    }
    let count = Rational::from_integer(vertices.len().into());
    let centre = |k: usize| vertices.iter().map(|v| v[k].clone()).sum::<Rational>() / &count;
    let (ca, cb) = (centre(a), centre(b));
    let key = |v: &SpectralVector| (&v[a] - &ca, &v[b] - &cb);
    // upper half-plane (including the positive first axis) before the lower one
    let half = |(x, y): &(Rational, Rational)| !(y.is_positive() || (y.is_zero() && !x.is_negative()));
    vertices.sort_by(|p, q| {
        let (p, q) = (key(p), key(q));
        half(&p).cmp(&half(&q)).then_with(|| {
            let cross = &p.0 * &q.1 - &p.1 * &q.0;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
}
