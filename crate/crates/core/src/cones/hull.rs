//! Membership in a conic hull by Fourier-Motzkin elimination.
//!
//! Decides whether `target = sum_i lambda_i g_i` has a solution with every
//! `lambda_i >= 0`. The equality system is first reduced exactly; the
//! pivot variables become affine functions of the free ones, and the
//! resulting inequalities are projected onto the empty set of variables.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::ratmath::{make_primitive, primitive_integers, Rational, SpectralVector};

use super::ConeError;

/// `true` iff `target` is a nonnegative combination of `generators`.
pub fn in_conic_hull(generators: &[SpectralVector], target: &SpectralVector) -> Result<bool, ConeError> {
    let dim = target.len();
    if let Some(g) = generators.iter().find(|g| g.len() != dim) {
        return Err(ConeError::DimensionMismatch {
            expected: dim,
            found: g.len(),
        });
    }
    let m = generators.len();

    // Augmented system [G^T | target], one equation per coordinate.
    let mut eqs: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            let mut row: Vec<Rational> = generators.iter().map(|g| g[k].clone()).collect();
            row.push(target[k].clone());
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..dim).find(|&i| !eqs[i][col].is_zero()) else {
            continue;
        };
        eqs.swap(r, p);
        let inv = eqs[r][col].recip();
        for x in &mut eqs[r] {
            *x *= &inv;
        }
        let pivot = eqs[r].clone();
        for (i, row) in eqs.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == dim {
            break;
        }
    }
    if eqs[r..].iter().any(|row| !row[m].is_zero()) {
        return Ok(false);
    }

    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    // Each constraint is [c_0 .. c_{f-1}, constant] meaning constant + c . lambda_free >= 0.
    let mut system: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for (k, _) in pivots.iter().enumerate() {
        let mut c: Vec<Rational> = free.iter().map(|&f| -eqs[k][f].clone()).collect();
        c.push(eqs[k][m].clone());
        system.insert(primitive_integers(&c));
    }
    for k in 0..free.len() {
        let mut c = vec![BigInt::zero(); free.len() + 1];
        c[k] = BigInt::from(1);
        system.insert(c);
    }

    for var in 0..free.len() {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), BTreeSet::new());
        for c in system {
            if c[var].is_positive() {
                pos.push(c);
            } else if c[var].is_negative() {
                neg.push(c);
            } else {
                keep.insert(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = &p[var];
                let b = -&q[var];
                let combined: Vec<BigInt> = p.iter().zip(q).map(|(x, y)| &b * x + a * y).collect();
                keep.insert(make_primitive(combined));
            }
        }
        if keep
            .iter()
            .any(|c| c[..free.len()].iter().all(Zero::is_zero) && c[free.len()].is_negative())
        {
            return Ok(false);
        }
        keep.retain(|c| c[..free.len()].iter().any(|x| !x.is_zero()) || !c[free.len()].is_zero());
        system = keep;
    }
    Ok(system.iter().all(|c| !c[free.len()].is_negative()))
}
