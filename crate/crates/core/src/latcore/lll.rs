//! Integral LLL (all quantities are integers: the Gram minors `d_i` and the
//! scaled Gram-Schmidt coefficients `lambda_ij = d_j mu_ij`), run on the Gram
//! matrix so it applies equally to ambient bases and to abstract forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::lattice::IntegerLattice;
use super::matrix::{identity, mat_mul, to_big, to_i64, IntMatrix};
use crate::error::{invalid, Result};

/// Reduction parameter `delta = num / den`, with `1/4 < delta <= 1`.
#[derive(Debug, Clone, Copy)]
pub struct Delta {
    pub num: i64,
    pub den: i64,
}

impl Default for Delta {
    fn default() -> Self {
        Delta { num: 3, den: 4 }
    }
}

/// Output of Gram-based LLL: `reduced_gram = t * gram * t^T`, `t` unimodular.
#[derive(Debug, Clone)]
pub struct LllResult {
    pub transform: IntMatrix,
    pub reduced_gram: IntMatrix,
}

struct State {
    gram: IntMatrix,
    t: IntMatrix,
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
}

impl State {
    // d is indexed 0..=n with d[0] = 1; basis vector k (0-based) owns d[k + 1].
    fn size_reduce(&mut self, k: usize, l: usize) {
        let two_lambda: BigInt = &self.lambda[k][l] * 2;
        if two_lambda.abs() <= self.d[l + 1] {
            return;
        }
        let dl = &self.d[l + 1];
        let q = (&two_lambda + dl).div_floor(&(dl * 2));
        let n = self.gram.len();
        // b_k <- b_k - q b_l: row operation, then the matching column operation.
        for j in 0..n {
            let s = &q * &self.gram[l][j];
            self.gram[k][j] -= s;
        }
        for i in 0..n {
            let s = &q * &self.gram[i][l];
            self.gram[i][k] -= s;
        }
        for c in 0..n {
            let s = &q * &self.t[l][c];
            self.t[k][c] -= s;
        }
        let qd = &q * &self.d[l + 1];
        self.lambda[k][l] -= qd;
        for i in 0..l {
            let s = &q * &self.lambda[l][i];
            self.lambda[k][i] -= s;
        }
    }
}

/// LLL-reduces the form `gram` (symmetric positive definite). Exact.
pub fn lll_gram(gram: &IntMatrix, delta: Delta) -> Result<LllResult> {
    let n = gram.len();
    if 4 * delta.num <= delta.den || delta.num > delta.den {
        return invalid("LLL delta must lie in (1/4, 1]");
    }
    let mut st = State {
        gram: gram.clone(),
        t: identity(n),
        d: vec![BigInt::zero(); n + 1],
        lambda: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::from(1);
    if n == 0 {
        return Ok(LllResult { transform: st.t, reduced_gram: st.gram });
    }
    st.d[1] = st.gram[0][0].clone();
    let mut k = 1usize;
    let mut kmax = 0usize;
    let dnum = BigInt::from(delta.num);
    let dden = BigInt::from(delta.den);
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = st.gram[k][j].clone();
                for i in 0..j {
                    u = (&st.d[i + 1] * &u - &st.lambda[k][i] * &st.lambda[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return invalid("LLL input vectors are linearly dependent");
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        st.size_reduce(k, k - 1);
        // Lovasz: den * d_k+1 d_k-1 >= num * d_k^2 - den * lambda^2 (scaled)
        let lam = &st.lambda[k][k - 1];
        let lhs = &dden * &st.d[k + 1] * &st.d[k - 1];
        let rhs = &dnum * &st.d[k] * &st.d[k] - &dden * lam * lam;
        if lhs < rhs {
            swap(&mut st, k, kmax);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                st.size_reduce(k, l);
            }
            k += 1;
        }
    }
    Ok(LllResult { transform: st.t, reduced_gram: st.gram })
}

fn swap(st: &mut State, k: usize, kmax: usize) {
    st.gram.swap(k, k - 1);
    for row in st.gram.iter_mut() {
        row.swap(k, k - 1);
    }
    st.t.swap(k, k - 1);
    for j in 0..k - 1 {
        let (a, b) = st.lambda.split_at_mut(k);
        std::mem::swap(&mut a[k - 1][j], &mut b[0][j]);
    }
    let lam = st.lambda[k][k - 1].clone();
    let b = (&st.d[k - 1] * &st.d[k + 1] + &lam * &lam) / &st.d[k];
    for i in k + 1..=kmax {
        let t = st.lambda[i][k].clone();
        st.lambda[i][k] = (&st.d[k + 1] * &st.lambda[i][k - 1] - &lam * &t) / &st.d[k];
        st.lambda[i][k - 1] = (&b * &t + &lam * &st.lambda[i][k]) / &st.d[k + 1];
    }
    st.d[k] = b;
}

/// LLL with the default `delta = 3/4`; returns the same lattice with a
/// Lovasz-reduced basis.
pub fn lll_reduce(lat: &IntegerLattice) -> Result<IntegerLattice> {
    lll_reduce_with(lat, Delta::default())
}

pub fn lll_reduce_with(lat: &IntegerLattice, delta: Delta) -> Result<IntegerLattice> {
    let res = lll_gram(&lat.gram_big()?, delta)?;
    let basis = to_i64(&mat_mul(&res.transform, &to_big(lat.basis())))?;
    Ok(lat.with_basis(basis))
}
