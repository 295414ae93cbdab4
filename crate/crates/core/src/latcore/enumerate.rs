//! Exact Fincke-Pohst enumeration.
//!
//! With integral Gram-Schmidt data (`d_i`, `lambda_ij`) the quadratic form is
//! `Q(x) = sum_k Y_k^2 / (d_k d_{k+1})` where `Y_k = d_{k+1} x_k + sum_{j>k}
//! lambda_jk x_j` is an integer, so every level bound is an integer square
//! root and no rounding enters the search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::lattice::{combine, IntegerLattice};
use super::lll::{lll_gram, Delta};
use super::matrix::{to_i64, IntMatrix};
use crate::error::{invalid, Error, Result};

/// Default cap on the number of enumerated vectors (up to sign).
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// Integral Gram-Schmidt data of a positive definite form.
struct Profile {
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
}

fn profile(gram: &IntMatrix) -> Result<Profile> {
    let n = gram.len();
    let mut d = vec![BigInt::from(1); n + 1];
    let mut lambda = vec![vec![BigInt::zero(); n]; n];
    for k in 0..n {
        for j in 0..=k {
            let mut u = gram[k][j].clone();
            for i in 0..j {
                u = (&d[i + 1] * &u - &lambda[k][i] * &lambda[j][i]) / &d[i];
            }
            if j < k {
                lambda[k][j] = u;
            } else {
                if u <= BigInt::zero() {
                    return invalid("Gram matrix is not positive definite");
                }
                d[k + 1] = u;
            }
        }
    }
    Ok(Profile { d, lambda })
}

struct Search<'a> {
    p: &'a Profile,
    n: usize,
    bound: BigRational,
    cap: usize,
    x: Vec<BigInt>,
    out: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// Fills levels `k, k-1, ..., 0`; `partial` is the form value of levels above `k`.
    fn level(&mut self, k: usize, partial: &BigRational, all_zero_above: bool) -> Result<()> {
        let dk1 = &self.p.d[k + 1];
        let dd = &self.p.d[k] * dk1;
        let rem = &self.bound - partial;
        let t = (rem * BigRational::from_integer(dd.clone())).floor().to_integer();
        let s = t.sqrt();
        let c: BigInt = (k + 1..self.n).map(|j| &self.p.lambda[j][k] * &self.x[j]).sum();
        // |d_{k+1} x + c| <= s
        let mut lo = (-&s - &c).div_ceil(dk1);
        let hi = (&s - &c).div_floor(dk1);
        if all_zero_above && lo < BigInt::zero() {
            lo = BigInt::zero();
        }
        let mut xk = lo;
        while xk <= hi {
            let y = dk1 * &xk + &c;
            let here = partial + BigRational::new(&y * &y, dd.clone());
            let zero_here = all_zero_above && xk.is_zero();
            self.x[k] = xk.clone();
            if k == 0 {
                if !zero_here {
                    if self.out.len() >= self.cap {
                        return Err(Error::Resource(format!(
                            "short-vector enumeration exceeded the cap of {} vectors",
                            self.cap
                        )));
                    }
                    self.out.push(self.x.clone());
                }
            } else {
                self.level(k - 1, &here, zero_here)?;
            }
            xk += 1;
        }
        self.x[k] = BigInt::zero();
        Ok(())
    }
}

/// All nonzero coefficient vectors `x` (one of each `+-x`) with `x G x^T <= bound2`.
pub fn enumerate_gram(gram: &IntMatrix, bound2: &BigInt, cap: usize) -> Result<Vec<Vec<BigInt>>> {
    let n = gram.len();
    if n == 0 || bound2 < &BigInt::from(1) {
        return Ok(Vec::new());
    }
    // Reduce first: the search tree is far smaller on an LLL basis.
    let red = lll_gram(gram, Delta::default())?;
    let p = profile(&red.reduced_gram)?;
    let mut search = Search {
        p: &p,
        n,
        bound: BigRational::from_integer(bound2.clone()),
        cap,
        x: vec![BigInt::zero(); n],
        out: Vec::new(),
    };
    search.level(n - 1, &BigRational::zero(), true)?;
    let found = search.out;
    Ok(found.iter().map(|x| (0..n).map(|c| (0..n).map(|i| &x[i] * &red.transform[i][c]).sum()).collect()).collect())
}

/// Counts nonzero vectors of norm at most `bound2`, both signs included.
pub fn count_gram(gram: &IntMatrix, bound2: &BigInt, cap: usize) -> Result<usize> {
    Ok(2 * enumerate_gram(gram, bound2, cap)?.len())
}

/// All `v` in `L` with `0 < |v|^2 <= bound2`, one of each `+-v`, each
/// sign-normalized (first nonzero entry positive) and the list sorted
/// lexicographically.
pub fn enumerate_short(lat: &IntegerLattice, bound2: i64, cap: usize) -> Result<Vec<Vec<i64>>> {
    if bound2 < 1 {
        return invalid("enumeration bound must be at least 1");
    }
    let coeffs = enumerate_gram(&lat.gram_big()?, &BigInt::from(bound2), cap)?;
    let coeffs = to_i64(&coeffs)?;
    let mut out: Vec<Vec<i64>> = coeffs
        .iter()
        .map(|x| super::lattice::sign_normalize(combine(x, lat.basis())))
        .collect();
    out.sort();
    Ok(out)
}

/// Coefficient vectors of the short vectors, relative to `lat.basis()`.
pub fn enumerate_short_coords(lat: &IntegerLattice, bound2: i64, cap: usize) -> Result<Vec<Vec<i64>>> {
    let coeffs = enumerate_gram(&lat.gram_big()?, &BigInt::from(bound2), cap)?;
    to_i64(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latcore::lattice::{norm2, sign_normalize};

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

    /// Brute force over coefficients in `[-r, r]^n`.
    fn box_oracle(lat: &IntegerLattice, bound2: i64, r: i64) -> Vec<Vec<i64>> {
        let n = lat.rank();
        let mut out = Vec::new();
        let mut x = vec![-r; n];
        loop {
            let v = combine(&x, lat.basis());
            let q = norm2(&v);
            if q > 0 && q <= bound2 {
                out.push(sign_normalize(v));
            }
            let mut i = 0;
            while i < n && x[i] == r {
                x[i] = -r;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn hexagonal_kissing_number() {
        let v = enumerate_short(&a_n(2), 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(v, box_oracle(&a_n(2), 2, 2));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn doubled_root_lattice_has_nothing_below_eight() {
        for n in 2..7 {
            let l = a_n(n).scale(2).unwrap();
            assert!(enumerate_short(&l, 7, DEFAULT_ENUM_CAP).unwrap().is_empty());
            assert_eq!(enumerate_short(&l, 8, DEFAULT_ENUM_CAP).unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn cap_is_loud() {
        let err = enumerate_short(&a_n(6), 2, 5).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn output_is_sign_normalized_and_sorted() {
        let l = IntegerLattice::new(vec![vec![3, 1, -2], vec![1, -4, 2]]).unwrap();
        let v = enumerate_short(&l, 200, DEFAULT_ENUM_CAP).unwrap();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(|x| x.iter().find(|&&c| c != 0).unwrap() > &0));
        assert_eq!(v, box_oracle(&l, 200, 12));
    }
}
