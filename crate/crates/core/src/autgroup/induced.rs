use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use super::abelian::{abelian_automorphism_group, apply};
use super::perm::{Permutation, PermutationGroup};
use super::stabilizer::stabilizes;
use crate::builders::LatticeBundle;
use crate::curves::{Element, Selector};
use crate::error::{invalid, Error, Result};
use crate::fieldpoly::{is_prime, PrimeField};

#[derive(Debug, Clone)]
pub struct EllipticSubgroupReport {
    pub group_order: u64,
    pub aut_order: u64,
    /// Order of the group generated by the translations alone.
    pub translation_order: BigUint,
    /// Order of the group generated by translations and automorphisms.
    pub order: BigUint,
    pub translations: Vec<Permutation>,
    pub automorphisms: Vec<Permutation>,
}

fn require_stable(bundle: &LatticeBundle, sigma: &Permutation, what: &str) -> Result<()> {
    if stabilizes(&bundle.lattice, sigma)? {
        Ok(())
    } else {
        Err(Error::Verification(format!("{what} {sigma:?} does not stabilize the lattice")))
    }
}

/// Coordinate permutations induced by translations `P -> P + Q` and by the
/// automorphisms of the point group, each checked against the lattice.
pub fn elliptic_subgroup_check(bundle: &LatticeBundle) -> Result<EllipticSubgroupReport> {
    if bundle.places.selector != Selector::EllipticAllRational {
        return invalid("elliptic subgroup check needs an elliptic all-rational lattice");
    }
    let Some((group, emb)) = &bundle.group else {
        return invalid("bundle carries no point group");
    };
    let m = emb.images.len();
    let place: HashMap<&Element, usize> = emb.images.iter().enumerate().map(|(i, e)| (e, i)).collect();
    if place.len() != m || m as u64 != group.order() {
        return Err(Error::Verification("place images are not a bijection onto the group".into()));
    }
    let induced = |f: &dyn Fn(&Element) -> Element| -> Permutation {
        Permutation::new(emb.images.iter().map(|e| place[&f(e)]).collect()).expect("bijection")
    };

    let translations: Vec<Permutation> =
        group.elements().iter().map(|q| induced(&|e: &Element| group.add(e, q))).collect();
    let aut = abelian_automorphism_group(group)?;
    let automorphisms: Vec<Permutation> =
        aut.elements.iter().map(|a| induced(&|e: &Element| apply(group, a, e))).collect();
    for t in &translations {
        require_stable(bundle, t, "translation")?;
    }
    for a in &automorphisms {
        require_stable(bundle, a, "automorphism")?;
    }

    let translation_order = PermutationGroup::new(m, translations.clone())?.order();
    let all: Vec<Permutation> = translations.iter().chain(&automorphisms).cloned().collect();
    let order = PermutationGroup::new(m, all)?.order();
    let expected = BigUint::from(group.order()) * BigUint::from(aut.order);
    if translation_order != BigUint::from(group.order()) || order != expected {
        return Err(Error::Verification(format!(
            "generated order {order} (translations {translation_order}) differs from |G| |Aut(G)| = {expected}"
        )));
    }
    Ok(EllipticSubgroupReport {
        group_order: group.order(),
        aut_order: aut.order,
        translation_order,
        order,
        translations,
        automorphisms,
    })
}

/// Place index on `P^1(F_q)`: `x` for finite `x`, `q` for infinity.
fn mobius_image(fp: &PrimeField, [a, b, c, d]: [u64; 4], x: usize) -> usize {
    let q = fp.p() as usize;
    if x == q {
        return if c == 0 { q } else { fp.mul(a, fp.inv(c)) as usize };
    }
    let x = x as u64;
    let num = fp.add(fp.mul(a, x), b);
    let den = fp.add(fp.mul(c, x), d);
    if den == 0 {
        q
    } else {
        fp.mul(num, fp.inv(den)) as usize
    }
}

/// Permutations of the `q + 1` rational places of `F_q(x)` induced by the
/// Moebius maps `x -> (ax + b)/(cx + d)`.
#[derive(Debug, Clone)]
pub struct MobiusGroup {
    pub q: u64,
    /// One permutation per projective class of matrices, sorted.
    pub perms: Vec<Permutation>,
    pub group: PermutationGroup,
}

pub fn mobius_induced_perms(q: u64) -> Result<MobiusGroup> {
    if !is_prime(q) || q > 50 {
        return invalid(format!("q = {q} must be a prime at most 50"));
    }
    let fp = PrimeField::new(q)?;
    let m = q as usize + 1;
    // normalized representatives: c = 1, or c = 0 and d = 1
    let mut mats = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for d in 0..q {
                if fp.sub(fp.mul(a, d), b) != 0 {
                    mats.push([a, b, 1, d]);
                }
            }
            if a != 0 {
                mats.push([a, b, 0, 1]);
            }
        }
    }
    let mut perms: Vec<Permutation> = mats
        .iter()
        .map(|&mat| Permutation::new((0..m).map(|x| mobius_image(&fp, mat, x)).collect()))
        .collect::<Result<_>>()?;
    let expected = q * q * q - q;
    if mats.len() as u64 != expected {
        return Err(Error::Verification(format!("{} projective classes, expected {expected}", mats.len())));
    }
    let distinct: HashSet<&Permutation> = perms.iter().collect();
    if distinct.len() != perms.len() {
        return Err(Error::Verification("two Moebius classes induce the same permutation".into()));
    }
    let fixing_all = perms.iter().filter(|p| p.is_identity()).count();
    if fixing_all != 1 {
        return Err(Error::Verification(format!("{fixing_all} maps fix every place")));
    }
    perms.sort();
    let group = PermutationGroup::new(m, perms.clone())?;
    if group.order() != BigUint::from(expected) {
        return Err(Error::Verification(format!("generated order {} differs from {expected}", group.order())));
    }
    Ok(MobiusGroup { q, perms, group })
}

#[derive(Debug, Clone)]
pub struct HyperellipticSubgroupReport {
    /// Coordinates of `P_inf` and the finite ramified places.
    pub ramified: Vec<usize>,
    pub inert: Vec<usize>,
    /// Verified order `(2g + 2)! s!`.
    pub order: BigUint,
    /// Whether swapping `P_inf` with an inert coordinate is rejected
    /// (`None` without inert places).
    pub mixing_rejected: Option<bool>,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |a, k| a * k)
}

/// Transpositions of ramified coordinates (with `P_inf`) and of inert
/// coordinates, each verified to stabilize the lattice.
pub fn hyperelliptic_subgroup_check(bundle: &LatticeBundle) -> Result<HyperellipticSubgroupReport> {
    let sys = &bundle.places;
    let model = bundle.model.as_ref().filter(|_| sys.selector == Selector::RamifiedInert);
    let Some(model) = model else {
        return invalid("hyperelliptic subgroup check needs a ramified-inert lattice");
    };
    if !model.splits() {
        return invalid("hyperelliptic subgroup check needs f to split");
    }
    let m = sys.len();
    let mut ramified = vec![0usize];
    ramified.extend(sys.ramified_indices());
    let inert = sys.inert_indices();
    let mut gens = Vec::new();
    for class in [&ramified, &inert] {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                let t = Permutation::transposition(m, a, b);
                require_stable(bundle, &t, "transposition")?;
                gens.push(t);
            }
        }
    }
    let order = PermutationGroup::new(m, gens)?.order();
    let expected = factorial(ramified.len()) * factorial(inert.len());
    if order != expected {
        return Err(Error::Verification(format!("generated order {order} differs from {expected}")));
    }
    let mixing_rejected = match inert.first() {
        Some(&q) => Some(!stabilizes(&bundle.lattice, &Permutation::transposition(m, 0, q))?),
        None => None,
    };
    Ok(HyperellipticSubgroupReport { ramified, inert, order, mixing_rejected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_ff_lattice, root_lattice_a};
    use crate::curves::HyperellipticModel;

    #[test]
    fn elliptic_f5_curve() {
        let model = HyperellipticModel::from_coeffs(5, &[1, 1, 0, 1]).unwrap();
        let b = build_ff_lattice(&model, Selector::EllipticAllRational).unwrap();
        let r = elliptic_subgroup_check(&b).unwrap();
        assert_eq!(r.order, BigUint::from(54u32));
        assert_eq!(r.translation_order, BigUint::from(9u32));
        // translation by the identity element
        assert!(r.translations[0].is_identity());
    }

    #[test]
    fn mobius_orders() {
        assert_eq!(mobius_induced_perms(3).unwrap().group.order(), BigUint::from(24u32));
        let g5 = mobius_induced_perms(5).unwrap();
        assert_eq!(g5.group.order(), BigUint::from(120u32));
        let a5 = root_lattice_a(5).unwrap();
        assert!(g5.perms.iter().all(|p| stabilizes(&a5, p).unwrap()));
        assert!(mobius_induced_perms(4).is_err());
    }

    #[test]
    fn hyperelliptic_orders() {
        let f11 = HyperellipticModel::parse(11, "9,0,2,4,9,3,5,1").unwrap();
        let r = hyperelliptic_subgroup_check(&build_ff_lattice(&f11, Selector::RamifiedInert).unwrap()).unwrap();
        assert_eq!(r.order, BigUint::from(80640u32));
        assert_eq!(r.mixing_rejected, Some(true));
        let g2 = HyperellipticModel::from_coeffs(7, &[0, 24, -50, 35, -10, 1]).unwrap();
        let r = hyperelliptic_subgroup_check(&build_ff_lattice(&g2, Selector::RamifiedInert).unwrap()).unwrap();
        assert_eq!(r.order, BigUint::from(720u32));
    }
}
