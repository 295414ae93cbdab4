use std::collections::HashSet;

use super::perm::{Permutation, PermutationGroup};
use crate::error::{Error, Result};
use crate::latcore::lattice::{norm2, permute};
use crate::latcore::{enumerate_short, minimum2, IntegerLattice};

/// Default ambient-dimension guard for permutation backtracking.
pub const DEFAULT_MAX_PERM_DIM: usize = 14;

/// Short vectors of `lat` (one per sign) up to the smallest norm bound at
/// which they generate `lat`. Any norm-preserving map that permutes this set
/// and fixes the span maps `lat` onto itself.
pub fn generating_shell(lat: &IntegerLattice, cap: usize) -> Result<(i64, Vec<Vec<i64>>)> {
    let target = lat.hnf();
    let mut bound = minimum2(lat, cap)?;
    loop {
        let vs = enumerate_short(lat, bound, cap)?;
        let gen = IntegerLattice::from_generators(lat.ambient_dim(), &vs);
        if gen.is_ok_and(|g| g.hnf() == target) {
            return Ok((bound, vs));
        }
        bound += 1;
    }
}

/// The coordinate permutations `sigma` with `sigma(L) = L`, where `sigma`
/// moves the entry at coordinate `c` to `sigma(c)`.
pub fn perm_stabilizer(lat: &IntegerLattice, max_dim: usize, cap: usize) -> Result<PermutationGroup> {
    let m = lat.ambient_dim();
    if m > max_dim {
        return Err(Error::Resource(format!("ambient dimension {m} exceeds the permutation guard {max_dim}")));
    }
    let (_, shell) = generating_shell(lat, cap)?;
    let search = Search::new(m, shell);

    // Stabilizer chain on the base 0, 1, ..., m-1, deepest level first so
    // that generators found below already fix the current prefix.
    let mut gens: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![1usize; m];
    for k in (0..m).rev() {
        let mut orbit = orbit_of(k, &gens, m);
        for j in k + 1..m {
            if orbit.contains(&j) || search.sig[j] != search.sig[k] {
                continue;
            }
            if let Some(sigma) = search.find(k, j) {
                gens.push(sigma);
                orbit = orbit_of(k, &gens, m);
            }
        }
        orbit_sizes[k] = orbit.len();
    }

    let membership = lat.membership();
    for g in &gens {
        if !lat.basis().iter().all(|r| membership.contains(&permute(r, g.images()))) {
            return Err(Error::Verification(format!("{g:?} does not stabilize the lattice")));
        }
    }
    let group = PermutationGroup::new(m, gens)?;
    let product = orbit_sizes.iter().fold(num_bigint::BigUint::from(1u32), |a, &s| a * s);
    if group.order() != product {
        return Err(Error::Verification("stabilizer chain disagrees with the orbit census".into()));
    }
    Ok(group)
}

/// Orbit of `x` under the group generated by `gens`.
pub fn orbit_of(x: usize, gens: &[Permutation], m: usize) -> HashSet<usize> {
    let mut seen = HashSet::from([x]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if z < m && seen.insert(z) {
                stack.push(z);
            }
        }
    }
    seen
}

struct Search {
    m: usize,
    /// Both signs of every shell vector.
    set: HashSet<Vec<i64>>,
    /// Shell vectors grouped by their largest support coordinate.
    by_last: Vec<Vec<Vec<i64>>>,
    /// Per-coordinate invariant: sorted `(norm, entry)` pairs over the shell.
    sig: Vec<Vec<(i64, i64)>>,
}

impl Search {
    fn new(m: usize, shell: Vec<Vec<i64>>) -> Self {
        let mut sig = vec![Vec::new(); m];
        let mut by_last = vec![Vec::new(); m];
        let mut set = HashSet::new();
        for v in shell {
            let n = norm2(&v);
            for (c, &x) in v.iter().enumerate() {
                sig[c].push((n, x.abs()));
            }
            if let Some(last) = v.iter().rposition(|&x| x != 0) {
                by_last[last].push(v.clone());
            }
            set.insert(v.iter().map(|x| -x).collect());
            set.insert(v);
        }
        for s in sig.iter_mut() {
            s.sort_unstable();
        }
        Search { m, set, by_last, sig }
    }

    /// A stabilizing permutation fixing `0..k` pointwise with `k -> j`.
    fn find(&self, k: usize, j: usize) -> Option<Permutation> {
        let mut sigma: Vec<usize> = (0..self.m).collect();
        let mut used = vec![false; self.m];
        for (c, u) in used.iter_mut().enumerate().take(k) {
            *u = true;
            sigma[c] = c;
        }
        sigma[k] = j;
        used[j] = true;
        if !self.consistent(&sigma, k) {
            return None;
        }
        self.extend(&mut sigma, &mut used, k + 1).then(|| Permutation::new(sigma).expect("bijection"))
    }

    fn extend(&self, sigma: &mut [usize], used: &mut [bool], c: usize) -> bool {
        if c == self.m {
            return true;
        }
        for t in 0..self.m {
            if used[t] || self.sig[t] != self.sig[c] {
                continue;
            }
            sigma[c] = t;
            used[t] = true;
            if self.consistent(sigma, c) && self.extend(sigma, used, c + 1) {
                return true;
            }
            used[t] = false;
        }
        false
    }

    /// Vectors whose support ends at `c` must map into the shell.
    fn consistent(&self, sigma: &[usize], c: usize) -> bool {
        let mut img = vec![0i64; self.m];
        self.by_last[c].iter().all(|v| {
            img.iter_mut().for_each(|x| *x = 0);
            for (i, &x) in v.iter().enumerate().take(c + 1) {
                img[sigma[i]] = x;
            }
            self.set.contains(&img)
        })
    }
}

/// Whether the coordinate permutation maps `lat` onto itself.
pub fn stabilizes(lat: &IntegerLattice, sigma: &Permutation) -> Result<bool> {
    if sigma.degree() != lat.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: lat.ambient_dim(), got: sigma.degree() });
    }
    let membership = lat.membership();
    Ok(lat.basis().iter().all(|r| membership.contains(&permute(r, sigma.images()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{barnes_lattice, root_lattice_a, scale};
    use crate::latcore::DEFAULT_ENUM_CAP;
    use num_bigint::BigUint;

    fn order(lat: &IntegerLattice) -> BigUint {
        perm_stabilizer(lat, DEFAULT_MAX_PERM_DIM, DEFAULT_ENUM_CAP).unwrap().order()
    }

    #[test]
    fn root_lattices_have_full_symmetric_group() {
        for n in 1..=7usize {
            let fact: u64 = (1..=n as u64 + 1).product();
            let a = root_lattice_a(n).unwrap();
            assert_eq!(order(&a), BigUint::from(fact));
            assert_eq!(order(&scale(&a, 2).unwrap()), BigUint::from(fact));
        }
    }

    #[test]
    fn barnes_permutations_match_brute_force() {
        // brute force over S_6 on B_5
        let b5 = barnes_lattice(5).unwrap();
        let mut count = 0u32;
        let mut perm: Vec<usize> = (0..6).collect();
        permutations(&mut perm, 0, &mut |p| {
            if stabilizes(&b5, &Permutation::new(p.to_vec()).unwrap()).unwrap() {
                count += 1;
            }
        });
        assert_eq!(order(&b5), BigUint::from(count));
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn guard_is_enforced() {
        let a = root_lattice_a(5).unwrap();
        assert!(matches!(perm_stabilizer(&a, 4, DEFAULT_ENUM_CAP), Err(Error::Resource(_))));
    }

    #[test]
    fn shell_generates() {
        let b = barnes_lattice(8).unwrap();
        let (bound, vs) = generating_shell(&b, DEFAULT_ENUM_CAP).unwrap();
        assert!(bound >= 4);
        assert!(IntegerLattice::from_generators(9, &vs).unwrap().lattice_eq(&b));
    }
}
