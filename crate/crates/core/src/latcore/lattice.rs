use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{self, bareiss_det, hnf, snf, solve_hnf, to_big, IntMatrix};
use crate::error::{invalid, Error, Result};

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[i64]) -> i64 {
    dot(v, v)
}

/// Combination `sum coeffs[i] * rows[i]`.
pub fn combine(coeffs: &[i64], rows: &[Vec<i64>]) -> Vec<i64> {
    let m = rows.first().map_or(0, |r| r.len());
    let mut out = vec![0i64; m];
    for (c, row) in coeffs.iter().zip(rows) {
        if *c == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

/// Flips the sign so the first nonzero entry is positive.
pub fn sign_normalize(mut v: Vec<i64>) -> Vec<i64> {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    v
}

/// Exact Gram data: `gram = B * B^T` and `det2 = det(gram)`, the squared
/// lattice determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramData {
    pub gram: Vec<Vec<i64>>,
    pub det2: BigInt,
}

impl GramData {
    /// The determinant itself when `det2` is a perfect square.
    pub fn det_exact(&self) -> Option<BigInt> {
        let r = self.det2.sqrt();
        (&r * &r == self.det2).then_some(r)
    }
}

/// A full-rank-in-its-span integer lattice given by a basis (rows) in `Z^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<Vec<i64>>,
    labels: Option<Vec<String>>,
}

impl IntegerLattice {
    /// Validates shape and linear independence of the rows.
    pub fn new(basis: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return invalid("a lattice needs at least one basis vector");
        };
        let m = first.len();
        if let Some(bad) = basis.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, got: bad.len() });
        }
        let lat = IntegerLattice { ambient_dim: m, basis, labels: None };
        if lat.rank() > m || lat.gram_data()?.det2.is_zero() {
            return invalid("basis rows are linearly dependent");
        }
        Ok(lat)
    }

    /// Lattice spanned by arbitrary generators (dependent rows allowed);
    /// the stored basis is the Hermite normal form.
    pub fn from_generators(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, got: bad.len() });
        }
        let h = hnf(&to_big(rows));
        Self::new(matrix::to_i64(&h)?)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn gram(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v: i128 = self.basis[i]
                    .iter()
                    .zip(&self.basis[j])
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                let v = i64::try_from(v)
                    .map_err(|_| Error::Resource("Gram entry exceeds 64 bits".into()))?;
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        Ok(g)
    }

    pub fn gram_big(&self) -> Result<IntMatrix> {
        Ok(to_big(&self.gram()?))
    }

    /// Gram matrix and squared determinant by Bareiss elimination.
    pub fn gram_data(&self) -> Result<GramData> {
        let gram = self.gram()?;
        let det2 = bareiss_det(&to_big(&gram));
        Ok(GramData { gram, det2 })
    }

    pub fn det2(&self) -> Result<BigInt> {
        Ok(self.gram_data()?.det2)
    }

    pub fn hnf(&self) -> IntMatrix {
        hnf(&to_big(&self.basis))
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.len() });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        self.check_dim(v)?;
        let h = self.hnf();
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        Ok(solve_hnf(&h, &v).is_some())
    }

    /// Membership test against a precomputed HNF, for repeated queries.
    pub fn membership(&self) -> Membership {
        Membership { hnf: self.hnf() }
    }

    /// Same set of vectors (identical Hermite normal forms).
    pub fn lattice_eq(&self, other: &IntegerLattice) -> bool {
        self.ambient_dim == other.ambient_dim && self.hnf() == other.hnf()
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> Result<bool> {
        self.check_dim(&vec![0; other.ambient_dim])?;
        let m = other.membership();
        Ok(self.basis.iter().all(|r| m.contains(r)))
    }

    /// Index `[other : self]` of an equal-rank sublattice, as the product of
    /// the Smith invariants of the coefficient matrix of `self` in `other`.
    pub fn index_in(&self, other: &IntegerLattice) -> Result<BigInt> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: other.ambient_dim, got: self.ambient_dim });
        }
        if self.rank() != other.rank() {
            return Err(Error::NotSublattice(format!(
                "rank {} differs from rank {}",
                self.rank(),
                other.rank()
            )));
        }
        let solver = CoordinateSolver::new(other)?;
        let mut coeffs = Vec::with_capacity(self.rank());
        for row in &self.basis {
            match solver.coordinates(row) {
                Some(c) => coeffs.push(c),
                None => return Err(Error::NotSublattice(format!("{row:?} is not in the lattice"))),
            }
        }
        let s = snf(&to_big(&coeffs));
        Ok(s.invariants().iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// Every basis vector multiplied by `c >= 1`.
    pub fn scale(&self, c: i64) -> Result<IntegerLattice> {
        if c < 1 {
            return invalid(format!("scale factor {c} must be positive"));
        }
        let basis = self.basis.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        Ok(IntegerLattice { ambient_dim: self.ambient_dim, basis, labels: self.labels.clone() })
    }

    /// Same lattice, different basis (unchecked: callers pass unimodular changes).
    pub(crate) fn with_basis(&self, basis: Vec<Vec<i64>>) -> IntegerLattice {
        IntegerLattice { ambient_dim: self.ambient_dim, basis, labels: self.labels.clone() }
    }

    /// Image of the lattice under a coordinate permutation `sigma`
    /// (entry `c` moves to position `sigma[c]`).
    pub fn permute_coordinates(&self, sigma: &[usize]) -> Result<IntegerLattice> {
        if sigma.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: sigma.len() });
        }
        let basis = self.basis.iter().map(|r| permute(r, sigma)).collect();
        Ok(IntegerLattice { ambient_dim: self.ambient_dim, basis, labels: None })
    }
}

/// `out[sigma[c]] = v[c]`
pub fn permute(v: &[i64], sigma: &[usize]) -> Vec<i64> {
    let mut out = vec![0i64; v.len()];
    for (c, &x) in v.iter().enumerate() {
        out[sigma[c]] = x;
    }
    out
}

/// Cached HNF for repeated membership queries.
#[derive(Debug, Clone)]
pub struct Membership {
    hnf: IntMatrix,
}

impl Membership {
    pub fn contains(&self, v: &[i64]) -> bool {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        solve_hnf(&self.hnf, &v).is_some()
    }
}

/// Coordinates of ambient vectors with respect to a fixed lattice basis,
/// via `x = (v B^T) adj(G) / det(G)`.
#[derive(Debug, Clone)]
pub struct CoordinateSolver {
    basis: Vec<Vec<i64>>,
    adj: IntMatrix,
    det: BigInt,
}

impl CoordinateSolver {
    pub fn new(lat: &IntegerLattice) -> Result<Self> {
        let g = lat.gram_big()?;
        let adj = matrix::adjugate(&g).ok_or_else(|| Error::InvalidInput("singular Gram matrix".into()))?;
        let det = bareiss_det(&g);
        Ok(CoordinateSolver { basis: lat.basis().to_vec(), adj, det })
    }

    /// Integer coordinates of `v`, or `None` if `v` is not a lattice vector.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.basis.len();
        let vb: Vec<BigInt> = self.basis.iter().map(|b| BigInt::from(dot(v, b))).collect();
        let mut x = Vec::with_capacity(n);
        for j in 0..n {
            let s: BigInt = (0..n).map(|i| &vb[i] * &self.adj[i][j]).sum();
            if !(&s % &self.det).is_zero() {
                return None;
            }
            x.push((s / &self.det).to_i64()?);
        }
        (combine(&x, &self.basis) == v).then_some(x)
    }
}

/// Whether the row vectors are linearly independent over the rationals.
pub fn independent(rows: &[Vec<i64>]) -> bool {
    rows.is_empty() || matrix::rank(&to_big(rows)) == rows.len()
}

pub fn is_perfect_square(x: &BigInt) -> bool {
    !x.is_negative() && {
        let r = x.sqrt();
        &r * &r == *x
    }
}
