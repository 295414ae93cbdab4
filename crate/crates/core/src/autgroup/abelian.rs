use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;

use crate::curves::{Element, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::latcore::matrix::{hnf, identity};

/// Guard on `|G|` for brute-force automorphism enumeration.
pub const MAX_ABELIAN_ORDER: u64 = 10_000;
/// Guard on the number of candidate generator images.
pub const MAX_ABELIAN_CANDIDATES: u64 = 2_000_000;

/// An endomorphism given by the images of the invariant-factor generators:
/// row `j` is the image of `e_j`.
pub type AbelianMatrix = Vec<Vec<u64>>;

#[derive(Debug, Clone)]
pub struct AbelianAutGroup {
    pub group: FiniteAbelianGroup,
    pub order: u64,
    /// Every automorphism, in lexicographic order of the matrices.
    pub elements: Vec<AbelianMatrix>,
    /// A generating set chosen greedily from `elements`.
    pub generators: Vec<AbelianMatrix>,
}

pub fn apply(group: &FiniteAbelianGroup, m: &AbelianMatrix, x: &[u64]) -> Element {
    let mut acc = group.zero();
    for (row, &c) in m.iter().zip(x) {
        acc = group.add(&acc, &group.scale(row, c as i64));
    }
    acc
}

fn bijective(group: &FiniteAbelianGroup, m: &AbelianMatrix) -> bool {
    // image = (span(rows) + D) / D; bijective iff span(rows) + D = Z^k
    let k = group.rank();
    let mut rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    for (j, &n) in group.factors().iter().enumerate() {
        let mut r = vec![BigInt::from(0); k];
        r[j] = BigInt::from(n);
        rows.push(r);
    }
    hnf(&rows) == identity(k)
}

/// `Aut(G)` for a finite abelian group of rank at most two, by brute force.
pub fn abelian_automorphism_group(group: &FiniteAbelianGroup) -> Result<AbelianAutGroup> {
    if group.rank() > 2 {
        return Err(Error::InvalidInput(format!("rank {} exceeds 2", group.rank())));
    }
    if group.order() > MAX_ABELIAN_ORDER {
        return Err(Error::Resource(format!("|G| = {} exceeds {MAX_ABELIAN_ORDER}", group.order())));
    }
    let elems = group.elements();
    // row j must be killed by n_j
    let rows: Vec<Vec<Element>> = group
        .factors()
        .iter()
        .map(|&n| elems.iter().filter(|e| group.scale(e, n as i64) == group.zero()).cloned().collect())
        .collect();
    let candidates: u64 = rows.iter().map(|r| r.len() as u64).product();
    if candidates > MAX_ABELIAN_CANDIDATES {
        return Err(Error::Resource(format!("{candidates} candidate matrices exceed {MAX_ABELIAN_CANDIDATES}")));
    }
    let mut elements: Vec<AbelianMatrix> = vec![Vec::new()];
    for choices in &rows {
        elements = elements
            .into_iter()
            .flat_map(|m| {
                choices.iter().map(move |r| {
                    let mut m2 = m.clone();
                    m2.push(r.clone());
                    m2
                })
            })
            .collect();
    }
    elements.retain(|m| bijective(group, m));
    elements.sort();

    let expected = aut_order_formula(group.factors());
    if elements.len() as u64 != expected {
        return Err(Error::Verification(format!(
            "brute force found {} automorphisms, the order formula gives {expected}",
            elements.len()
        )));
    }

    // greedy generators: add an automorphism when it is not yet generated
    let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let as_perm = |m: &AbelianMatrix| -> Vec<usize> { elems.iter().map(|e| index[&apply(group, m, e)]).collect() };
    let id: Vec<usize> = (0..elems.len()).collect();
    let mut generated: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut gen_perms: Vec<Vec<usize>> = Vec::new();
    let mut generators = Vec::new();
    for m in &elements {
        let p = as_perm(m);
        if generated.contains(&p) {
            continue;
        }
        gen_perms.push(p);
        generators.push(m.clone());
        let mut stack: Vec<Vec<usize>> = generated.iter().cloned().collect();
        while let Some(x) = stack.pop() {
            for g in &gen_perms {
                let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
                if generated.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
    }
    Ok(AbelianAutGroup { group: group.clone(), order: elements.len() as u64, elements, generators })
}

fn euler_phi_prime_power(p: u64, e: u32) -> u64 {
    if e == 0 {
        1
    } else {
        (p - 1) * p.pow(e - 1)
    }
}

/// `|Aut(G)|` for `G` of rank at most two, from its primary parts:
/// `phi(p^e)` for a cyclic part, `phi(p^e)^2 p^(2e-1) (p+1)` for
/// `(Z/p^e)^2` and `phi(p^e1) phi(p^e2) p^(2 e1 - 1) p` for `e1 < e2`.
pub fn aut_order_formula(factors: &[u64]) -> u64 {
    let mut parts: HashMap<u64, Vec<u32>> = HashMap::new();
    for &n in factors {
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                parts.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    parts
        .iter()
        .map(|(&p, es)| match es[..] {
            [e] => euler_phi_prime_power(p, e),
            [e1, e2] if e1 == e2 => euler_phi_prime_power(p, e1).pow(2) * p.pow(2 * e1 - 1) * (p + 1),
            [e1, e2] => {
                let (a, b) = (e1.min(e2), e1.max(e2));
                euler_phi_prime_power(p, a) * euler_phi_prime_power(p, b) * p.pow(2 * a - 1) * p
            }
            _ => unreachable!("rank is at most two"),
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let z8 = abelian_automorphism_group(&FiniteAbelianGroup::cyclic(8)).unwrap();
        assert_eq!(z8.order, 4);
        let v4 = abelian_automorphism_group(&FiniteAbelianGroup::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(v4.order, 6);
        let z2z4 = abelian_automorphism_group(&FiniteAbelianGroup::new(vec![2, 4]).unwrap()).unwrap();
        assert_eq!(z2z4.order, 8);
        assert_eq!(abelian_automorphism_group(&FiniteAbelianGroup::cyclic(9)).unwrap().order, 6);
    }

    #[test]
    fn every_automorphism_is_a_bijective_homomorphism() {
        for factors in [vec![12], vec![2, 6], vec![3, 3], vec![2, 8]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            let aut = abelian_automorphism_group(&g).unwrap();
            let elems = g.elements();
            for m in &aut.elements {
                let images: HashSet<Element> = elems.iter().map(|e| apply(&g, m, e)).collect();
                assert_eq!(images.len(), elems.len());
                for a in &elems {
                    for b in &elems {
                        assert_eq!(apply(&g, m, &g.add(a, b)), g.add(&apply(&g, m, a), &apply(&g, m, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_group_has_trivial_automorphisms() {
        let aut = abelian_automorphism_group(&FiniteAbelianGroup::trivial()).unwrap();
        assert_eq!(aut.order, 1);
        assert!(aut.generators.is_empty());
    }
}
