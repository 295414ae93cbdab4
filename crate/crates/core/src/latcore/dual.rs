use num_bigint::BigInt;
use num_integer::Integer;

use super::enumerate::count_gram;
use super::lattice::IntegerLattice;
use super::matrix::adjugate;
use crate::error::{invalid, Error, Result};

/// Number of dual vectors `w` (both signs) with `0 < |w|^2 <= num / den`.
///
/// The dual has Gram matrix `G^{-1}`; scaling it by `det2 = det G` gives the
/// integral form `det2 * adj(G)`, whose vectors `det2 * w` satisfy
/// `|det2 * w|^2 <= det2^2 * num / den`.
pub fn dual_short_vector_count(lat: &IntegerLattice, num: i64, den: i64, cap: usize) -> Result<usize> {
    if num < 0 || den <= 0 {
        return invalid("dual bound must be a nonnegative fraction with positive denominator");
    }
    let g = lat.gram_big()?;
    let det2 = lat.det2()?;
    let adj = adjugate(&g).ok_or_else(|| Error::InvalidInput("singular Gram matrix".into()))?;
    let scaled: Vec<Vec<BigInt>> = adj.iter().map(|r| r.iter().map(|x| x * &det2).collect()).collect();
    let bound = (&det2 * &det2 * BigInt::from(num)).div_floor(&BigInt::from(den));
    count_gram(&scaled, &bound, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latcore::enumerate::DEFAULT_ENUM_CAP;

    fn a_n(n: usize) -> IntegerLattice {
        IntegerLattice::new(
            (0..n)
                .map(|i| {
                    let mut v = vec![0i64; n + 1];
                    v[i] = 1;
                    v[i + 1] = -1;
                    v
                })
                .collect(),
        )
        .unwrap()
    }

    /// A_n^* is the projection of Z^{n+1} onto the sum-zero hyperplane; count
    /// projected integer points (up to translation by the all-ones vector) of
    /// small norm directly: (n+1) |w|^2 = (n+1)|x|^2 - (sum x)^2.
    fn projected_count(n: usize, num: i64, den: i64) -> usize {
        let m = n + 1;
        let r = 2i64;
        let mut count = 0;
        let mut x = vec![-r; m];
        loop {
            // representatives with x[0] = 0 are unique mod the all-ones vector
            if x[0] == 0 {
                let s: i64 = x.iter().sum();
                let q: i64 = x.iter().map(|a| a * a).sum();
                let scaled = m as i64 * q - s * s;
                if scaled > 0 && scaled * den <= num * m as i64 {
                    count += 1;
                }
            }
            let mut i = 0;
            while i < m && x[i] == r {
                x[i] = -r;
                i += 1;
            }
            if i == m {
                break;
            }
            x[i] += 1;
        }
        count
    }

    #[test]
    fn root_lattice_dual_minimum() {
        for n in 2..=6 {
            let got = dual_short_vector_count(&a_n(n), n as i64, n as i64 + 1, DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(got, 2 * (n + 1));
            assert_eq!(got, projected_count(n, n as i64, n as i64 + 1));
        }
    }

    #[test]
    fn scaling_moves_the_bound() {
        let l = a_n(4);
        let two = l.scale(2).unwrap();
        // (2L)^* = L^* / 2, so norms shrink by four
        let a = dual_short_vector_count(&l, 6, 5, DEFAULT_ENUM_CAP).unwrap();
        let b = dual_short_vector_count(&two, 6, 20, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(a, b);
    }
}
