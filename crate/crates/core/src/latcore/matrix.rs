//! Exact integer matrix kernels: Hermite and Smith normal forms, fraction-free
//! determinants and integer solving. All entries are `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_i64(rows: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::Resource(format!("matrix entry {x} exceeds 64 bits")))
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            debug_assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut acc = BigInt::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            acc += x * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `(g, s, t)` with `g = gcd(a, b) >= 0` and `s*a + t*b = g`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn combine_rows(a: &mut IntMatrix, i: usize, j: usize, m: [&BigInt; 4]) {
    // rows (i, j) <- [[m0, m1], [m2, m3]] * rows (i, j)
    let cols = a[i].len();
    for c in 0..cols {
        let x = a[i][c].clone();
        let y = a[j][c].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        a[i][c] = m[0] * &x + m[1] * &y;
        a[j][c] = m[2] * &x + m[3] * &y;
    }
}

fn sub_row_multiple(a: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Row-style Hermite normal form of the row lattice of `a`. Zero rows are
/// dropped; pivots are positive, strictly increasing in column, and entries
/// above each pivot lie in `[0, pivot)`. Unique for a given row lattice.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let mut a = a.clone();
    let m = a.len();
    let k = a.first().map_or(0, |r| r.len());
    let mut row = 0;
    for col in 0..k {
        if row == m {
            break;
        }
        for i in row + 1..m {
            if a[i][col].is_zero() {
                continue;
            }
            if a[row][col].is_zero() {
                a.swap(row, i);
                continue;
            }
            let x = a[row][col].clone();
            let y = a[i][col].clone();
            if (&y % &x).is_zero() {
                let q = &y / &x;
                sub_row_multiple(&mut a, i, row, &q);
                continue;
            }
            let (g, s, t) = ext_gcd(&x, &y);
            let u = -(&y / &g);
            let v = &x / &g;
            combine_rows(&mut a, row, i, [&s, &t, &u, &v]);
        }
        if a[row][col].is_zero() {
            continue;
        }
        if a[row][col].is_negative() {
            for x in a[row].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = a[row][col].clone();
        for r2 in 0..row {
            let q = a[r2][col].div_floor(&pivot);
            sub_row_multiple(&mut a, r2, row, &q);
        }
        row += 1;
    }
    a.truncate(row);
    a
}

/// Column index of the first nonzero entry of each HNF row.
pub fn pivots(h: &IntMatrix) -> Vec<usize> {
    h.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
        .collect()
}

/// Smith normal form with transforms: `u * a * v = d`, `d` diagonal with
/// nonnegative entries `d_1 | d_2 | ...` (zeros last), `u` and `v` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

pub fn snf(a: &IntMatrix) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    let swap_cols = |mat: &mut IntMatrix, i: usize, j: usize| {
        for r in mat.iter_mut() {
            r.swap(i, j);
        }
    };
    let sub_col_multiple = |mat: &mut IntMatrix, target: usize, src: usize, q: &BigInt| {
        for r in mat.iter_mut() {
            if !r[src].is_zero() {
                let s = q * &r[src];
                r[target] -= s;
            }
        }
    };

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(u, d, v);
            };
            if bi != t {
                d.swap(t, bi);
                u.swap(t, bi);
            }
            if bj != t {
                swap_cols(&mut d, t, bj);
                swap_cols(&mut v, t, bj);
            }
            let mut dirty = false;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                sub_row_multiple(&mut d, i, t, &q);
                sub_row_multiple(&mut u, i, t, &q);
                dirty |= !d[i][t].is_zero();
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                sub_col_multiple(&mut d, j, t, &q);
                sub_col_multiple(&mut v, j, t, &q);
                dirty |= !d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility condition on the remaining block
            let pivot = d[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => {
                    // row t += row i, then reprocess
                    let q = BigInt::from(-1);
                    sub_row_multiple(&mut d, t, i, &q);
                    sub_row_multiple(&mut u, t, i, &q);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish_snf(u, d, v)
}

fn finish_snf(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> Smith {
    Smith { u, d, v }
}

/// Determinant of a square matrix by Bareiss fraction-free elimination.
pub fn bareiss_det(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Adjugate `det(a) * a^{-1}` of a nonsingular square matrix, by exact
/// rational Gauss-Jordan elimination. Returns `None` when `a` is singular.
pub fn adjugate(a: &IntMatrix) -> Option<IntMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..2 * n {
                    let s = &f * &m[col][c];
                    m[r][c] -= s;
                }
            }
        }
    }
    let det = BigRational::from_integer(bareiss_det(a));
    Some(m.iter().map(|row| row[n..].iter().map(|x| (x * &det).to_integer()).collect()).collect())
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    hnf(a).len()
}

/// Solves `x * h = v` for an integer row vector `x`, where `h` is in HNF.
/// Returns `None` when `v` is not in the row lattice of `h`.
pub fn solve_hnf(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let piv = pivots(h);
    let mut rest = v.to_vec();
    let mut x = Vec::with_capacity(h.len());
    for (row, &c) in h.iter().zip(piv.iter()) {
        // entries left of the pivot must already be cleared
        if rest[..c].iter().any(|e| !e.is_zero()) {
            return None;
        }
        let (q, r) = rest[c].div_rem(&row[c]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (e, b) in rest.iter_mut().zip(row.iter()) {
                *e -= &q * b;
            }
        }
        x.push(q);
    }
    if rest.iter().all(|e| e.is_zero()) {
        Some(x)
    } else {
        None
    }
}

/// Integer (left) kernel of `a`: a basis of `{x in Z^m : x * a = 0}` in HNF.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let m = a.len();
    let k = a.first().map_or(0, |r| r.len());
    let aug: IntMatrix = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let h = hnf(&aug);
    let kernel: IntMatrix = h
        .into_iter()
        .filter(|r| r[..k].iter().all(|x| x.is_zero()))
        .map(|r| r[k..].to_vec())
        .collect();
    hnf(&kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check_smith(a: &IntMatrix, s: &Smith) {
        assert_eq!(mat_mul(&mat_mul(&s.u, a), &s.v), s.d);
        assert_eq!(bareiss_det(&s.u).abs(), BigInt::one());
        assert_eq!(bareiss_det(&s.v).abs(), BigInt::one());
        let inv = s.invariants();
        for w in inv.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn hnf_of_identity_is_identity() {
        let id = identity(4);
        assert_eq!(hnf(&id), id);
    }

    #[test]
    fn hnf_is_canonical() {
        let a = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let b = big(&[&[-4, 10, 16], &[-6, 6, 12], &[-4, 22, 28]]);
        let ha = hnf(&a);
        // b's rows are unimodular combinations of a's rows
        let bh = hnf(&b);
        assert_eq!(ha, bh);
        for (i, &c) in pivots(&ha).iter().enumerate() {
            assert!(ha[i][c].is_positive());
            for r in 0..i {
                assert!(!ha[r][c].is_negative() && ha[r][c] < ha[i][c]);
            }
        }
    }

    #[test]
    fn snf_small_example() {
        let a = big(&[&[2, 4], &[6, 8]]);
        let s = snf(&a);
        check_smith(&a, &s);
        assert_eq!(s.invariants(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_of_twice_identity() {
        let a = big(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let s = snf(&a);
        check_smith(&a, &s);
        assert_eq!(s.invariants(), vec![BigInt::from(2); 3]);
    }

    #[test]
    fn snf_rectangular_and_singular() {
        let a = big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[2, 4, 6]]);
        let s = snf(&a);
        check_smith(&a, &s);
        assert_eq!(s.invariants(), vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = big(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(bareiss_det(&a), BigInt::from(4));
        let b = big(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(&b), BigInt::from(-1));
        let c = big(&[&[1, 2], &[2, 4]]);
        assert_eq!(bareiss_det(&c), BigInt::zero());
    }

    #[test]
    fn solve_and_kernel() {
        let h = hnf(&big(&[&[2, 0, -2], &[0, 2, -2]]));
        let v: Vec<BigInt> = [4, -2, -2].iter().map(|&x| BigInt::from(x)).collect();
        let x = solve_hnf(&h, &v).unwrap();
        let back: Vec<BigInt> = (0..3).map(|c| x.iter().zip(&h).map(|(a, r)| a * &r[c]).sum()).collect();
        assert_eq!(back, v);
        let odd: Vec<BigInt> = [1, -1, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(solve_hnf(&h, &odd).is_none());

        let a = big(&[&[1], &[1], &[1]]);
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: BigInt = row.iter().sum();
            assert!(s.is_zero());
        }
    }

    proptest::proptest! {
        #[test]
        fn snf_transforms_hold(entries in proptest::collection::vec(-9i64..10, 12)) {
            let a: IntMatrix = entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let s = snf(&a);
            check_smith(&a, &s);
            proptest::prop_assert_eq!(s.invariants().len(), rank(&a));
        }
    }
}
