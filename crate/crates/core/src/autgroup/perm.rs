use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{invalid, Result};

/// A bijection of `{0, ..., m-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return invalid(format!("{images:?} is not a permutation"));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (0..m).collect();
        v.swap(a, b);
        Permutation(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Smallest moved point.
    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(i, &x)| *i != x).map(|(i, _)| i)
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[x]` maps the base point to `x`, for `x` in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn orbit_size(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }
}

/// Permutation group with a stabilizer chain built by Schreier-Sims.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return invalid(format!("generator of degree {} in a group of degree {degree}", g.degree()));
        }
        let mut group = PermutationGroup { degree, generators: Vec::new(), levels: Vec::new() };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            if let Some((level, residue)) = group.sift(0, &g) {
                group.add(level, residue);
            }
            group.generators.push(g);
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Level::orbit_size).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit_size()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(0, g).is_none()
    }

    /// Strips `g` through levels `from..`; returns the level where it got
    /// stuck and the residue, or `None` when it sifts to the identity.
    fn sift(&self, from: usize, g: &Permutation) -> Option<(usize, Permutation)> {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let x = h.apply(level.base);
            match &level.transversal[x] {
                Some(u) => h = h.then(&u.inverse()),
                None => return Some((j, h)),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((self.levels.len(), h))
        }
    }

    /// Strong generators of the stabilizer of the first `i` base points.
    fn strong_gens(&self, i: usize) -> Vec<Permutation> {
        self.levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    fn push(&mut self, j: usize, g: Permutation) {
        if j == self.levels.len() {
            let base = g.first_moved().expect("non-identity residue");
            let mut transversal = vec![None; self.degree];
            transversal[base] = Some(Permutation::identity(self.degree));
            self.levels.push(Level { base, gens: Vec::new(), transversal });
        }
        self.levels[j].gens.push(g);
    }

    fn add(&mut self, j: usize, g: Permutation) {
        self.push(j, g);
        for l in (0..=j).rev() {
            self.complete(l);
        }
    }

    /// Rebuilds the orbit at level `i` and sifts every Schreier generator
    /// through the deeper levels until all of them strip to the identity.
    fn complete(&mut self, i: usize) {
        loop {
            let gens = self.strong_gens(i);
            let base = self.levels[i].base;
            let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
            transversal[base] = Some(Permutation::identity(self.degree));
            let mut stack = vec![base];
            while let Some(x) = stack.pop() {
                for s in &gens {
                    let y = s.apply(x);
                    if transversal[y].is_none() {
                        transversal[y] = Some(transversal[x].as_ref().unwrap().then(s));
                        stack.push(y);
                    }
                }
            }
            let mut pending = None;
            'outer: for x in 0..self.degree {
                let Some(ux) = &transversal[x] else { continue };
                for s in &gens {
                    let uy = transversal[s.apply(x)].as_ref().unwrap();
                    let h = ux.then(s).then(&uy.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    if let Some(res) = self.sift(i + 1, &h) {
                        pending = Some(res);
                        break 'outer;
                    }
                }
            }
            self.levels[i].transversal = transversal;
            match pending {
                Some((j, r)) => {
                    self.push(j, r);
                    for l in (i + 1..=j).rev() {
                        self.complete(l);
                    }
                }
                None => return,
            }
        }
    }
}

/// Order of the group generated by `generators` on `degree` points.
pub fn schreier_sims_order(degree: usize, generators: &[Permutation]) -> Result<BigUint> {
    Ok(PermutationGroup::new(degree, generators.to_vec())?.order())
}
