//! Brute-force reference computations used to cross-check the fast paths.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::latcore::lattice::{combine, norm2, sign_normalize};
use crate::latcore::matrix::{adjugate, bareiss_det};
use crate::latcore::{IntegerLattice, RankTracker};

/// Largest box (number of coefficient vectors) the oracle will scan.
pub const MAX_BOX: u64 = 3_000_000;

/// Successive minima by scanning every coefficient vector `x` with
/// `x_i^2 <= R adj(G)_ii / det(G)`, where `R` is the largest basis norm.
/// Returns `None` when the box exceeds [`MAX_BOX`].
pub fn box_successive_minima2(lat: &IntegerLattice) -> Option<Vec<i64>> {
    let n = lat.rank();
    let basis = lat.basis();
    let r = basis.iter().map(|b| norm2(b)).max()?;
    let g = lat.gram_big().ok()?;
    let adj = adjugate(&g)?;
    let det = bareiss_det(&g);
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let q: BigInt = BigInt::from(r) * &adj[i][i] / &det;
            q.sqrt().to_i64().unwrap_or(i64::MAX)
        })
        .collect();
    let size = bounds.iter().try_fold(1u64, |acc, &b| acc.checked_mul(2 * b as u64 + 1))?;
    if size > MAX_BOX {
        return None;
    }
    let mut vecs: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        if x.iter().any(|&c| c != 0) {
            let v = combine(&x, basis);
            let nv = norm2(&v);
            if nv <= r {
                vecs.push((nv, sign_normalize(v)));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                vecs.sort();
                vecs.dedup();
                let mut t = RankTracker::default();
                let mut out = Vec::new();
                for (nv, v) in vecs {
                    if t.insert(&v) {
                        out.push(nv);
                    }
                }
                return Some(out);
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

/// All coefficient vectors of norm at most `bound2` by the same box scan,
/// one per sign and sign-normalized, sorted.
pub fn box_short_vectors(lat: &IntegerLattice, bound2: i64) -> Option<Vec<Vec<i64>>> {
    let n = lat.rank();
    let basis = lat.basis();
    let g = lat.gram_big().ok()?;
    let adj = adjugate(&g)?;
    let det = bareiss_det(&g);
    let bounds: Vec<i64> = (0..n)
        .map(|i| (BigInt::from(bound2) * &adj[i][i] / &det).sqrt().to_i64().unwrap_or(i64::MAX))
        .collect();
    let size = bounds.iter().try_fold(1u64, |acc, &b| acc.checked_mul(2 * b as u64 + 1))?;
    if size > MAX_BOX {
        return None;
    }
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        if x.iter().any(|&c| c != 0) {
            let v = combine(&x, basis);
            if norm2(&v) <= bound2 {
                out.push(sign_normalize(v));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                out.dedup();
                return Some(out);
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}
