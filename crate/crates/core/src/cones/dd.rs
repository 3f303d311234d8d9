//! Incremental double description over the integers.
//!
//! Starts from the simplicial cone cut out by `dim` independent rows and adds
//! the remaining halfspaces one at a time. A new ray is generated for every
//! adjacent pair straddling the new hyperplane; adjacency is the algebraic
//! test `rank(common tight rows) == dim - 2`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::ratmath::{make_primitive, primitive_integers, rank_of_int_rows, Rational, RationalMatrix};

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Greedily picks row indices until they span `dim` dimensions.
pub(crate) fn independent_rows(rows: &[Vec<BigInt>], dim: usize) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::with_capacity(dim);
    let mut chosen: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for (idx, row) in rows.iter().enumerate() {
        if picked.len() == dim {
            break;
        }
        chosen.push(row.clone());
        if rank_of_int_rows(&chosen) == chosen.len() {
            picked.push(idx);
        } else {
            chosen.pop();
        }
    }
    picked
}

/// Extreme rays of `{ x : row . x >= 0 }`. `basis` must index `dim`
/// linearly independent rows, which makes the cone pointed.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize, basis: &[usize]) -> Vec<Vec<BigInt>> {
    assert_eq!(basis.len(), dim, "double description needs a full-rank basis");
    let b = RationalMatrix::from_rows(
        basis
            .iter()
            .map(|&i| rows[i].iter().cloned().map(Rational::from_integer).collect())
            .collect(),
    )
    .expect("basis rows have equal length");
    let b_inv = b.invert().expect("basis rows are independent");
    // Column k of B^{-1} is tight on every basis row except row k.
    let mut rays: Vec<Vec<BigInt>> = b_inv.column_vectors().iter().map(|c| primitive_integers(c)).collect();
    let mut processed: Vec<usize> = basis.to_vec();

    for (idx, row) in rows.iter().enumerate() {
        if basis.contains(&idx) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, r)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        let mut next: BTreeSet<Vec<BigInt>> = rays
            .iter()
            .zip(&values)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r.clone())
            .collect();
        for &p in &positive {
            for &q in &negative {
                if !adjacent(rows, &processed, &rays[p], &rays[q], dim) {
                    continue;
                }
                let combined: Vec<BigInt> = rays[q]
                    .iter()
                    .zip(&rays[p])
                    .map(|(xq, xp)| &values[p] * xq - &values[q] * xp)
                    .collect();
                next.insert(make_primitive(combined));
            }
        }
        rays = next.into_iter().collect();
        processed.push(idx);
    }
    rays
}

fn adjacent(rows: &[Vec<BigInt>], processed: &[usize], p: &[BigInt], q: &[BigInt], dim: usize) -> bool {
    if dim < 2 {
        return false;
    }
    let common: Vec<Vec<BigInt>> = processed
        .iter()
        .map(|&i| &rows[i])
        .filter(|r| dot(r, p).is_zero() && dot(r, q).is_zero())
        .cloned()
        .collect();
    if common.len() < dim - 2 {
        return false;
    }
    rank_of_int_rows(&common) == dim - 2
}
