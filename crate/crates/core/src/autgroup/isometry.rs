use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;

use super::perm::PermutationGroup;
use crate::error::{Error, Result};
use crate::latcore::enumerate::enumerate_short_coords;
use crate::latcore::lattice::{combine, dot};
use crate::latcore::{lll_reduce, IntegerLattice};

/// Rank guard for the full isometry search.
pub const DEFAULT_MAX_ISOMETRY_RANK: usize = 12;

/// Search-tree node budget per isometry computation.
pub const ISOMETRY_NODE_BUDGET: u64 = 200_000_000;

/// Order of an automorphism group with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryReport {
    pub order: BigUint,
    pub factored: Vec<(u64, u32)>,
    /// Whether `order` counts `-Id` (full isometry groups) or not
    /// (coordinate permutations).
    pub includes_minus_id: bool,
    pub generators: ReportGenerators,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportGenerators {
    /// Image arrays of coordinate permutations.
    Permutations(Vec<Vec<usize>>),
    /// Each generator maps `basis[i]` to `sum_j images[g][i][j] basis[j]`.
    Matrices { basis: Vec<Vec<i64>>, images: Vec<Vec<Vec<i64>>> },
}

fn factor_small(mut n: u64, acc: &mut BTreeMap<u64, u32>) {
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            *acc.entry(p).or_default() += 1;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        *acc.entry(n).or_default() += 1;
    }
}

/// Factorization of a product of small integers.
pub fn factor_product(parts: &[u64]) -> Vec<(u64, u32)> {
    let mut acc = BTreeMap::new();
    for &x in parts {
        factor_small(x, &mut acc);
    }
    acc.into_iter().collect()
}

pub fn perm_report(group: &PermutationGroup) -> IsometryReport {
    let sizes: Vec<u64> = group.orbit_sizes().iter().map(|&s| s as u64).collect();
    let mut gens: Vec<Vec<usize>> = group.generators().iter().map(|g| g.images().to_vec()).collect();
    gens.sort();
    IsometryReport {
        order: group.order(),
        factored: factor_product(&sizes),
        includes_minus_id: false,
        generators: ReportGenerators::Permutations(gens),
    }
}

/// Short vectors in both signs with coordinates in a fixed basis.
struct Shell {
    vecs: Vec<Vec<i64>>,
    coords: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl Shell {
    fn image(&self, s: usize, images: &[Vec<i64>]) -> Option<usize> {
        self.index.get(&combine(&self.coords[s], images)).copied()
    }
}

struct Search<'a> {
    shell: &'a Shell,
    gram: Vec<Vec<i64>>,
    by_norm: HashMap<i64, Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn n(&self) -> usize {
        self.gram.len()
    }

    /// Shell indices of norm `gram[i][i]` compatible with `assigned`.
    fn domain(&self, i: usize, assigned: &[usize]) -> Vec<usize> {
        let Some(bucket) = self.by_norm.get(&self.gram[i][i]) else { return Vec::new() };
        bucket
            .iter()
            .copied()
            .filter(|&c| {
                assigned
                    .iter()
                    .enumerate()
                    .all(|(j, &a)| dot(&self.shell.vecs[c], &self.shell.vecs[a]) == self.gram[i][j])
            })
            .collect()
    }

    /// Completes `assigned` to images of the whole basis.
    fn complete(&mut self, assigned: &mut Vec<usize>) -> Result<bool> {
        let n = self.n();
        let d = assigned.len();
        let mut domains: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, dom) in domains.iter_mut().enumerate().skip(d) {
            *dom = self.domain(i, assigned);
            if dom.is_empty() {
                return Ok(false);
            }
        }
        self.extend(assigned, domains)
    }

    fn extend(&mut self, assigned: &mut Vec<usize>, domains: Vec<Vec<usize>>) -> Result<bool> {
        let n = self.n();
        let d = assigned.len();
        if d == n {
            return Ok(true);
        }
        for &c in &domains[d] {
            self.nodes += 1;
            if self.nodes > ISOMETRY_NODE_BUDGET {
                return Err(Error::Resource(format!("isometry search exceeded {ISOMETRY_NODE_BUDGET} nodes")));
            }
            let vc = &self.shell.vecs[c];
            let mut next = vec![Vec::new(); n];
            let mut ok = true;
            for i in d + 1..n {
                next[i] = domains[i]
                    .iter()
                    .copied()
                    .filter(|&x| dot(&self.shell.vecs[x], vc) == self.gram[i][d])
                    .collect();
                if next[i].is_empty() {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            assigned.push(c);
            if self.extend(assigned, next)? {
                return Ok(true);
            }
            assigned.pop();
        }
        Ok(false)
    }
}

/// Full isometry group of `lat` by Gram-compatible backtracking.
///
/// On an LLL basis `b_0..b_{n-1}` an isometry is determined by the images
/// `w_i`, which must be lattice vectors with `<w_i, w_j> = <b_i, b_j>`; any
/// such tuple defines an automorphism (same Gram determinant, so the image
/// has index one). Candidates come from all vectors of norm at most the
/// largest basis norm. The order is the product of the orbit lengths along
/// the chain `Stab(b_0, ..., b_{k-1})`, each orbit found exhaustively.
pub fn isometry_group_order(lat: &IntegerLattice, max_rank: usize, cap: usize) -> Result<IsometryReport> {
    let n = lat.rank();
    if n > max_rank {
        return Err(Error::Resource(format!("rank {n} exceeds the isometry guard {max_rank}")));
    }
    let red = lll_reduce(lat)?;
    let basis = red.basis().to_vec();
    let gram = red.gram()?;
    let bound = (0..n).map(|i| gram[i][i]).max().unwrap_or(0);

    let mut shell = Shell { vecs: Vec::new(), coords: Vec::new(), index: HashMap::new() };
    for c in enumerate_short_coords(&red, bound, cap)? {
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        for cc in [c, neg] {
            let v = combine(&cc, &basis);
            shell.index.insert(v.clone(), shell.vecs.len());
            shell.vecs.push(v);
            shell.coords.push(cc);
        }
    }
    let base: Vec<usize> = basis
        .iter()
        .map(|b| shell.index.get(b).copied().ok_or_else(|| Error::Verification("basis vector missing from shell".into())))
        .collect::<Result<_>>()?;
    let mut by_norm: HashMap<i64, Vec<usize>> = HashMap::new();
    for (i, v) in shell.vecs.iter().enumerate() {
        by_norm.entry(dot(v, v)).or_default().push(i);
    }
    let mut search = Search { shell: &shell, gram: gram.clone(), by_norm, nodes: 0 };

    // generators as permutations of the shell, plus their basis images
    let mut gen_perms: Vec<Vec<usize>> = Vec::new();
    let mut gen_images: Vec<Vec<usize>> = Vec::new();
    let mut orbit_sizes = vec![1u64; n];
    for k in (0..n).rev() {
        let mut orbit = orbit_of(base[k], &gen_perms);
        let targets = search.domain(k, &base[..k]);
        for t in targets {
            if orbit.contains_key(&t) {
                continue;
            }
            let mut assigned = base[..k].to_vec();
            assigned.push(t);
            if search.complete(&mut assigned)? {
                let images: Vec<Vec<i64>> = assigned.iter().map(|&a| shell.vecs[a].clone()).collect();
                let perm = (0..shell.vecs.len())
                    .map(|s| shell.image(s, &images).ok_or_else(|| Error::Verification("isometry leaves the shell".into())))
                    .collect::<Result<Vec<usize>>>()?;
                gen_perms.push(perm);
                gen_images.push(assigned);
                orbit = orbit_of(base[k], &gen_perms);
            }
        }
        orbit_sizes[k] = orbit.len() as u64;
    }

    // each generator preserves the Gram matrix
    for imgs in &gen_images {
        for i in 0..n {
            for j in 0..n {
                if dot(&shell.vecs[imgs[i]], &shell.vecs[imgs[j]]) != gram[i][j] {
                    return Err(Error::Verification("generator does not preserve the Gram matrix".into()));
                }
            }
        }
    }
    let order = orbit_sizes.iter().fold(BigUint::one(), |a, &s| a * s);
    let images = gen_images.iter().map(|imgs| imgs.iter().map(|&a| shell.coords[a].clone()).collect()).collect();
    Ok(IsometryReport {
        order,
        factored: factor_product(&orbit_sizes),
        includes_minus_id: true,
        generators: ReportGenerators::Matrices { basis, images },
    })
}

fn orbit_of(x: usize, gens: &[Vec<usize>]) -> HashMap<usize, ()> {
    let mut seen = HashMap::from([(x, ())]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g[y];
            if seen.insert(z, ()).is_none() {
                stack.push(z);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{root_lattice_a, scale};
    use crate::latcore::DEFAULT_ENUM_CAP;

    fn order(lat: &IntegerLattice) -> BigUint {
        isometry_group_order(lat, DEFAULT_MAX_ISOMETRY_RANK, DEFAULT_ENUM_CAP).unwrap().order
    }

    #[test]
    fn small_root_lattices() {
        // 2 (n+1)! for n >= 2; A_1 = Z(1,-1) has only +-Id
        assert_eq!(order(&root_lattice_a(1).unwrap()), BigUint::from(2u32));
        assert_eq!(order(&root_lattice_a(2).unwrap()), BigUint::from(12u32));
        assert_eq!(order(&root_lattice_a(3).unwrap()), BigUint::from(48u32));
        assert_eq!(order(&root_lattice_a(4).unwrap()), BigUint::from(240u32));
    }

    #[test]
    fn cubic_lattices() {
        // Aut(Z^n) = signed permutations, 2^n n!
        for n in 1..=5usize {
            let basis: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            let z = IntegerLattice::new(basis).unwrap();
            let want: u64 = (1..=n as u64).product::<u64>() << n;
            assert_eq!(order(&z), BigUint::from(want));
        }
        // D_4 has 1152 automorphisms (the Weyl group of F_4)
        let d4 = IntegerLattice::new(vec![vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, -1], vec![0, 0, 1, 1]])
            .unwrap();
        assert_eq!(order(&d4), BigUint::from(1152u32));
    }

    #[test]
    fn scaling_and_factorization() {
        let a = root_lattice_a(3).unwrap();
        let r = isometry_group_order(&scale(&a, 2).unwrap(), 12, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.order, BigUint::from(48u32));
        let back = r.factored.iter().fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e));
        assert_eq!(back, r.order);
    }

    #[test]
    fn factor_product_merges() {
        assert_eq!(factor_product(&[12, 10, 1]), vec![(2, 3), (3, 1), (5, 1)]);
    }

    #[test]
    fn rank_guard() {
        let a = root_lattice_a(4).unwrap();
        assert!(matches!(isometry_group_order(&a, 3, DEFAULT_ENUM_CAP), Err(Error::Resource(_))));
    }
}
