//! Exact resistance distance by fraction-free elimination.
//!
//! For a connected component with `k` nodes and Laplacian `L`, the integer
//! matrix `A = k·L + J` (with `J` the all-ones matrix) is invertible and
//! `(L + J/k)^{-1} = k·A^{-1}`. Writing `Y = det(A)·A^{-1}` (an integer
//! matrix), the resistance between `i` and `j` is
//! `k·(Y_ii + Y_jj − 2·Y_ij) / det(A)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Distance, DistanceMatrix, Rational, RdMatrix};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};

/// Largest component handled by [`rd_matrix`].
pub const RD_COMPONENT_LIMIT: usize = 128;

pub fn rd_matrix(g: &Graph) -> Result<RdMatrix> {
    let n = g.node_count();
    let mut entries = vec![Distance::Unreachable; n * n];
    for members in connected_components(g).classes() {
        let k = members.len();
        if k > RD_COMPONENT_LIMIT {
            return Err(Error::GuardExceeded {
                what: "exact resistance distance (per component)",
                limit: RD_COMPONENT_LIMIT,
                actual: k,
            });
        }
        let mut local = vec![usize::MAX; n];
        for (i, &u) in members.iter().enumerate() {
            local[u] = i;
        }
        let kk = BigInt::from(k);
        let mut a = vec![vec![BigInt::one(); k]; k];
        for (i, &u) in members.iter().enumerate() {
            a[i][i] += &kk * BigInt::from(g.degree(u));
            for &w in g.neighbors(u) {
                a[i][local[w]] -= &kk;
            }
        }
        let (det, y) = scaled_inverse(a);
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                let num = &kk * (&y[i][i] + &y[j][j] - BigInt::from(2) * &y[i][j]);
                entries[u * n + v] = Distance::Finite(Rational::new(num, det.clone()));
            }
        }
    }
    Ok(DistanceMatrix::from_entries(n, entries))
}

/// Returns `(d, Y)` with `Y = d·A^{-1}` integral, using Bareiss elimination.
///
/// Panics if `A` is singular.
fn scaled_inverse(mut a: Vec<Vec<BigInt>>) -> (BigInt, Vec<Vec<BigInt>>) {
    let k = a.len();
    for (i, row) in a.iter_mut().enumerate() {
        row.extend((0..k).map(|j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        }));
    }
    let width = 2 * k;
    let mut prev = BigInt::one();
    for p in 0..k {
        if a[p][p].is_zero() {
            let swap = (p + 1..k)
                .find(|&r| !a[r][p].is_zero())
                .expect("resistance system is singular");
            a.swap(p, swap);
        }
        let (upper, lower) = a.split_at_mut(p + 1);
        let pivot_row = &upper[p];
        for row in lower.iter_mut() {
            for j in p + 1..width {
                let t = &row[j] * &pivot_row[p] - &row[p] * &pivot_row[j];
                row[j] = t / &prev;
            }
            row[p] = BigInt::zero();
        }
        prev = a[p][p].clone();
    }
    let det = prev;
    assert!(!det.is_zero(), "resistance system is singular");

    // Back-substitute column by column on the scaled unknowns.
    let mut y = vec![vec![BigInt::zero(); k]; k];
    for col in 0..k {
        for i in (0..k).rev() {
            let mut acc = &det * &a[i][k + col];
            for j in i + 1..k {
                acc -= &a[i][j] * &y[j][col];
            }
            debug_assert!((&acc % &a[i][i]).is_zero());
            y[i][col] = acc / &a[i][i];
        }
    }
    if det.is_negative() {
        for row in &mut y {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        return (-det, y);
    }
    (det, y)
}

/// Expected hitting times `h[u][v]` of a simple random walk from `u` to `v`.
///
/// For each target `t`, `h(·, t)` solves `L_t·h = deg` where `L_t` is the
/// Laplacian with row and column `t` removed.
pub fn hitting_time_matrix(g: &Graph) -> Result<Vec<Vec<Rational>>> {
    const LIMIT: usize = 30;
    let n = g.node_count();
    if n > LIMIT {
        return Err(Error::GuardExceeded {
            what: "hitting-time solver",
            limit: LIMIT,
            actual: n,
        });
    }
    if connected_components(g).len() > 1 {
        return Err(Error::Disconnected);
    }
    let mut h = vec![vec![Rational::zero(); n]; n];
    for target in g.nodes() {
        let rest: Vec<usize> = g.nodes().filter(|&u| u != target).collect();
        if rest.is_empty() {
            continue;
        }
        let mut index = vec![usize::MAX; n];
        for (i, &u) in rest.iter().enumerate() {
            index[u] = i;
        }
        let m = rest.len();
        let mut grounded = vec![vec![BigInt::zero(); m]; m];
        for (i, &u) in rest.iter().enumerate() {
            grounded[i][i] = BigInt::from(g.degree(u));
            for &w in g.neighbors(u) {
                if w != target {
                    grounded[i][index[w]] -= 1;
                }
            }
        }
        let (det, y) = scaled_inverse(grounded);
        for (i, &u) in rest.iter().enumerate() {
            let num: BigInt = rest
                .iter()
                .enumerate()
                .map(|(j, &w)| &y[i][j] * BigInt::from(g.degree(w)))
                .sum();
            h[u][target] = Rational::new(num, det.clone());
        }
    }
    Ok(h)
}
