use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::latcore::matrix::{hnf, snf, IntMatrix};

/// `Z/n_1 x ... x Z/n_k` with `1 < n_1 | n_2 | ... | n_k`; elements are
/// residue tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

pub type Element = Vec<u64>;

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&n| n < 2) {
            return invalid("invariant factors must exceed 1");
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return invalid(format!("{factors:?} is not a divisibility chain"));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n < 2 {
            Self::trivial()
        } else {
            FiniteAbelianGroup { factors: vec![n] }
        }
    }

    /// Elementary abelian `(Z/2)^k`.
    pub fn two_torsion(k: usize) -> Self {
        FiniteAbelianGroup { factors: vec![2; k] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> Element {
        vec![0; self.factors.len()]
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        self.factors.iter().enumerate().map(|(i, &n)| (a[i] + b[i]) % n).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        self.factors.iter().enumerate().map(|(i, &n)| (n - a[i] % n) % n).collect()
    }

    pub fn scale(&self, a: &[u64], k: i64) -> Element {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, &n)| ((a[i] as i128 * k as i128).rem_euclid(n as i128)) as u64)
            .collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        self.factors.iter().zip(a).fold(1, |acc, (&n, &x)| acc.lcm(&(n / n.gcd(&x))))
    }

    /// All elements in lexicographic order of their residue tuples.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![Vec::new()];
        for &n in &self.factors {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..n).map(move |x| {
                        let mut f = e.clone();
                        f.push(x);
                        f
                    })
                })
                .collect();
        }
        out
    }

    /// Index of `a` among [`elements`](Self::elements).
    pub fn index_of(&self, a: &[u64]) -> usize {
        self.factors.iter().zip(a).fold(0, |acc, (&n, &x)| acc * n as usize + x as usize)
    }
}

/// Structure of a finite abelian group given as `n` abstract elements with
/// identity `zero` and an addition oracle on indices.
#[derive(Debug, Clone)]
pub struct Structure {
    pub group: FiniteAbelianGroup,
    /// Invariant-factor coordinates of every element, by index.
    pub coords: Vec<Element>,
}

/// Recovers the invariant factors of a finite abelian group from its addition
/// law. Generators are chosen greedily; a breadth-first spanning tree gives
/// words for all elements and the non-tree edges give a complete set of
/// relations, whose Smith form yields the factors and a coordinate change.
pub fn structure_from_law(n: usize, zero: usize, add: impl Fn(usize, usize) -> usize) -> Result<Structure> {
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; n];
    inside[zero] = true;
    let closure = |gens: &[usize], inside: &mut Vec<bool>| {
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| inside[i]).collect();
        while let Some(h) = queue.pop_front() {
            for &g in gens {
                let s = add(h, g);
                if !inside[s] {
                    inside[s] = true;
                    queue.push_back(s);
                }
            }
        }
    };
    for cand in 0..n {
        if !inside[cand] {
            gens.push(cand);
            closure(&gens, &mut inside);
        }
    }
    let k = gens.len();
    if k == 0 {
        return Ok(Structure { group: FiniteAbelianGroup::trivial(), coords: vec![Vec::new(); n] });
    }
    // Words from a BFS tree rooted at zero.
    let mut word: Vec<Option<Vec<i64>>> = vec![None; n];
    word[zero] = Some(vec![0; k]);
    let mut queue = VecDeque::from([zero]);
    let mut order = Vec::with_capacity(n);
    while let Some(h) = queue.pop_front() {
        order.push(h);
        for (j, &g) in gens.iter().enumerate() {
            let s = add(h, g);
            if word[s].is_none() {
                let mut w = word[h].clone().unwrap();
                w[j] += 1;
                word[s] = Some(w);
                queue.push_back(s);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Verification("addition law does not reach every element".into()));
    }
    let word: Vec<Vec<i64>> = word.into_iter().map(Option::unwrap).collect();
    let mut rel: IntMatrix = Vec::new();
    for &h in &order {
        for (j, &g) in gens.iter().enumerate() {
            let s = add(h, g);
            let r: Vec<BigInt> = (0..k)
                .map(|c| BigInt::from(word[h][c] + i64::from(c == j) - word[s][c]))
                .collect();
            if r.iter().any(|x| !x.is_zero()) {
                rel.push(r);
            }
        }
        if rel.len() > 4 * k {
            rel = hnf(&rel);
        }
    }
    let rel = hnf(&rel);
    if rel.len() != k {
        return Err(Error::Verification("relations do not have full rank".into()));
    }
    let s = snf(&rel);
    let diag: Vec<u64> = (0..k).map(|i| s.d[i][i].to_u64().unwrap_or(0)).collect();
    if diag.iter().product::<u64>() != n as u64 {
        return Err(Error::Verification(format!("Smith invariants {diag:?} do not multiply to {n}")));
    }
    let keep: Vec<usize> = (0..k).filter(|&i| diag[i] > 1).collect();
    let group = FiniteAbelianGroup::new(keep.iter().map(|&i| diag[i]).collect())?;
    let coords = word
        .iter()
        .map(|w| {
            keep.iter()
                .map(|&i| {
                    let c: BigInt = (0..k).map(|r| BigInt::from(w[r]) * &s.v[r][i]).sum();
                    c.mod_floor(&BigInt::from(diag[i])).to_u64().unwrap()
                })
                .collect()
        })
        .collect();
    Ok(Structure { group, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Z/a x Z/b given in mixed-radix indexing.
    fn product_law(a: usize, b: usize) -> impl Fn(usize, usize) -> usize {
        move |i, j| ((i / b + j / b) % a) * b + (i % b + j % b) % b
    }

    #[test]
    fn recovers_invariant_factors() {
        let cases = [((2, 2), vec![2, 2]), ((4, 6), vec![2, 12]), ((3, 5), vec![15]), ((6, 4), vec![2, 12]), ((1, 9), vec![9])];
        for ((a, b), want) in cases {
            let s = structure_from_law(a * b, 0, product_law(a, b)).unwrap();
            assert_eq!(s.group.factors(), &want[..]);
            // coordinates are a bijective homomorphism
            let law = product_law(a, b);
            let distinct: HashSet<_> = s.coords.iter().collect();
            assert_eq!(distinct.len(), a * b);
            for i in 0..a * b {
                for j in 0..a * b {
                    assert_eq!(s.coords[law(i, j)], s.group.add(&s.coords[i], &s.coords[j]));
                }
            }
        }
    }

    #[test]
    fn trivial_group() {
        let s = structure_from_law(1, 0, |_, _| 0).unwrap();
        assert_eq!(s.group.order(), 1);
    }

    #[test]
    fn element_orders_and_indexing() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(g.element_order(&[1, 2]), 2);
        assert_eq!(g.element_order(&[0, 1]), 4);
        for (i, e) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of(e), i);
        }
        assert!(FiniteAbelianGroup::new(vec![4, 2]).is_err());
    }
}
