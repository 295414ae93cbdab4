use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::enumerate::enumerate_short;
use super::lattice::{norm2, CoordinateSolver, IntegerLattice};
use super::lll::lll_reduce;
use super::matrix::{hnf, snf, to_big};
use crate::error::{Error, Result};

/// Squared successive minima with independent witnesses attaining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaProfile {
    pub lambda2: Vec<i64>,
    pub witnesses: Vec<Vec<i64>>,
}

/// Outcome of the exhaustive search for a basis of minimal vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalBasis {
    Found(Vec<Vec<i64>>),
    NotFound(String),
}

/// Default node budget for [`minimal_vector_basis`].
pub const DEFAULT_BASIS_BUDGET: u64 = 5_000_000;

/// Incremental rank test over the rationals (fraction-free echelon rows).
#[derive(Debug, Default, Clone)]
pub struct RankTracker {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RankTracker {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[i64]) -> Vec<BigInt> {
        let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = w[*p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
        }
        w
    }

    /// Adds `v` if it is independent of the rows so far; reports whether it was.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let w = self.reduce(v);
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

fn start_bound(lat: &IntegerLattice) -> Result<(i64, i64)> {
    let red = lll_reduce(lat)?;
    let norms: Vec<i64> = red.basis().iter().map(|v| norm2(v)).collect();
    Ok((*norms.iter().min().unwrap(), *norms.iter().max().unwrap()))
}

/// Squared minimum, by a doubling search capped at the shortest LLL vector.
pub fn minimum2(lat: &IntegerLattice, cap: usize) -> Result<i64> {
    let (b1, _) = start_bound(lat)?;
    let mut bound = 1i64;
    loop {
        bound = (bound * 2).min(b1);
        let v = enumerate_short(lat, bound, cap)?;
        if let Some(m) = v.iter().map(|x| norm2(x)).min() {
            return Ok(m);
        }
    }
}

/// Minimal vectors up to sign, in canonical (lexicographic) order.
pub fn minimal_vectors(lat: &IntegerLattice, cap: usize) -> Result<Vec<Vec<i64>>> {
    let m = minimum2(lat, cap)?;
    enumerate_short(lat, m, cap)
}

/// Number of minimal vectors, both signs counted.
pub fn kissing_number(lat: &IntegerLattice, cap: usize) -> Result<usize> {
    Ok(2 * minimal_vectors(lat, cap)?.len())
}

/// Greedy independent selection over all vectors sorted by (norm, lex);
/// the bound doubles from the minimum up to the longest LLL basis vector,
/// which always yields `rank` independent vectors.
pub fn successive_minima2(lat: &IntegerLattice, cap: usize) -> Result<MinimaProfile> {
    let n = lat.rank();
    let (_, bmax) = start_bound(lat)?;
    let mut bound = minimum2(lat, cap)?;
    loop {
        let mut vs = enumerate_short(lat, bound, cap)?;
        vs.sort_by_key(|v| norm2(v));
        let mut tracker = RankTracker::default();
        let mut profile = MinimaProfile { lambda2: Vec::new(), witnesses: Vec::new() };
        for v in vs {
            if tracker.insert(&v) {
                profile.lambda2.push(norm2(&v));
                profile.witnesses.push(v);
                if profile.lambda2.len() == n {
                    return Ok(profile);
                }
            }
        }
        if bound >= bmax {
            return Err(Error::Verification("LLL basis bound did not yield full rank".into()));
        }
        bound = (bound * 2).min(bmax);
    }
}

/// Minimal vectors span the rational span of the lattice.
pub fn is_well_rounded(lat: &IntegerLattice, cap: usize) -> Result<bool> {
    let mut t = RankTracker::default();
    for v in minimal_vectors(lat, cap)? {
        t.insert(&v);
    }
    Ok(t.rank() == lat.rank())
}

/// Exhaustive backtracking over minimal vectors for a basis of `lat`.
///
/// A partial selection is kept only while its coordinate rows (in the basis
/// of `lat`) are primitive, i.e. all Smith invariants equal one; a full
/// primitive selection is unimodular. `NotFound` is conclusive.
pub fn minimal_vector_basis(lat: &IntegerLattice, cap: usize, budget: u64) -> Result<MinimalBasis> {
    let n = lat.rank();
    let mins = minimal_vectors(lat, cap)?;
    let mut t = RankTracker::default();
    for v in &mins {
        t.insert(v);
    }
    if t.rank() < n {
        return Ok(MinimalBasis::NotFound(format!(
            "minimal vectors span rank {} < {}",
            t.rank(),
            n
        )));
    }
    if hnf(&to_big(&mins)) != lat.hnf() {
        return Ok(MinimalBasis::NotFound("minimal vectors generate a proper sublattice".into()));
    }
    let solver = CoordinateSolver::new(lat)?;
    let coords: Vec<Vec<i64>> = mins
        .iter()
        .map(|v| solver.coordinates(v).ok_or_else(|| Error::Verification("minimal vector outside lattice".into())))
        .collect::<Result<_>>()?;
    let mut search = BasisSearch { coords: &coords, n, budget, nodes: 0, chosen: Vec::new() };
    if search.extend(0)? {
        Ok(MinimalBasis::Found(search.chosen.iter().map(|&i| mins[i].clone()).collect()))
    } else {
        Ok(MinimalBasis::NotFound("no unimodular selection of minimal vectors".into()))
    }
}

struct BasisSearch<'a> {
    coords: &'a [Vec<i64>],
    n: usize,
    budget: u64,
    nodes: u64,
    chosen: Vec<usize>,
}

impl BasisSearch<'_> {
    fn primitive(&self) -> bool {
        let rows: Vec<Vec<i64>> = self.chosen.iter().map(|&i| self.coords[i].clone()).collect();
        let inv = snf(&to_big(&rows)).invariants();
        inv.len() == rows.len() && inv.iter().all(|d| d.is_one())
    }

    fn extend(&mut self, from: usize) -> Result<bool> {
        if self.chosen.len() == self.n {
            return Ok(true);
        }
        let need = self.n - self.chosen.len();
        for i in from..self.coords.len() {
            if self.coords.len() - i < need {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Resource(format!(
                    "minimal-vector basis search exceeded {} nodes",
                    self.budget
                )));
            }
            self.chosen.push(i);
            if self.primitive() && self.extend(i + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}
