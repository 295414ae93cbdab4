//! Named lattices and the function-field lattices of rational, elliptic and
//! hyperelliptic models.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::curves::{
    elliptic_point_group, jacobian_group, two_torsion_classes, FiniteAbelianGroup, HyperellipticModel, PlaceEmbedding,
    PlaceKind, PlaceSystem, Selector,
};
use crate::error::{invalid, Error, Result};
use crate::latcore::matrix::{left_kernel, to_i64};
use crate::latcore::IntegerLattice;

/// `A_n`: basis `e_i - e_{i+1}`, `i = 0..n-1`, in `Z^{n+1}`.
pub fn root_lattice_a(n: usize) -> Result<IntegerLattice> {
    if n < 1 {
        return invalid("A_n needs n >= 1");
    }
    let basis = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n + 1];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    IntegerLattice::new(basis)
}

/// `B_n = { v in A_n : sum i v_i = 0 mod n + 1 }`.
pub fn barnes_lattice(n: usize) -> Result<IntegerLattice> {
    if n < 2 {
        return invalid("B_n needs n >= 2");
    }
    let g = FiniteAbelianGroup::cyclic(n as u64 + 1);
    let images: Vec<Vec<u64>> = (0..=n as u64).map(|i| vec![i]).collect();
    kernel_lattice(&g, &images, &vec![1; n + 1])
}

pub fn scale(lat: &IntegerLattice, c: i64) -> Result<IntegerLattice> {
    lat.scale(c)
}

/// `{ x in Z^{n+1} : sum x_i = 0, d_i | x_i, sum (x_i / d_i) g_i = 0 in G }`.
///
/// Writing `x_i = d_i y_i`, the conditions on `y` are linear over `Z` modulo
/// the invariant factors of `G`, so the lattice is a projected integer kernel.
pub fn kernel_lattice(group: &FiniteAbelianGroup, images: &[Vec<u64>], degrees: &[u32]) -> Result<IntegerLattice> {
    let m = images.len();
    if degrees.len() != m {
        return Err(Error::DimensionMismatch { expected: m, got: degrees.len() });
    }
    if m < 2 {
        return invalid("kernel lattice needs at least two places");
    }
    let k = group.rank();
    if let Some(bad) = images.iter().find(|e| e.len() != k) {
        return Err(Error::DimensionMismatch { expected: k, got: bad.len() });
    }
    if degrees.contains(&0) {
        return invalid("place degrees must be positive");
    }
    // rows: (d_i, g_i) for each place, then (0, n_j e_j) for each factor
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m + k);
    for (img, &d) in images.iter().zip(degrees) {
        let mut r = vec![BigInt::from(d)];
        r.extend(img.iter().map(|&x| BigInt::from(x)));
        rows.push(r);
    }
    for (j, &n) in group.factors().iter().enumerate() {
        let mut r = vec![BigInt::zero(); k + 1];
        r[j + 1] = BigInt::from(n);
        rows.push(r);
    }
    let ker = left_kernel(&rows);
    let gens: Vec<Vec<BigInt>> = ker
        .iter()
        .map(|r| r[..m].iter().zip(degrees).map(|(y, &d)| y * BigInt::from(d)).collect())
        .collect();
    IntegerLattice::from_generators(m, &to_i64(&gens)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorTag {
    /// `x - alpha_k` for the `k`-th finite ramified place (1-based).
    XMinusAlpha(usize),
    /// `x - beta_j` for the `j`-th inert place, or the `j`-th split pair in an
    /// all-rational system (1-based).
    XMinusBeta(usize),
    /// `y`, a unit only when `f` splits.
    U,
    /// Basis row of a lattice built from a group relation kernel.
    GroupRelation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorVector {
    pub tag: GeneratorTag,
    pub vector: Vec<i64>,
}

/// Principal divisor of a tagged function, as a lattice vector.
pub fn phi_vector(tag: GeneratorTag, sys: &PlaceSystem, model: &HyperellipticModel) -> Result<GeneratorVector> {
    let m = sys.len();
    let mut v = vec![0i64; m];
    let inf = sys.position(PlaceKind::Infinity).ok_or_else(|| Error::InvalidInput("no place at infinity".into()))?;
    let ram = sys.ramified_indices();
    match tag {
        GeneratorTag::XMinusAlpha(k) => {
            let &c = ram.get(k.wrapping_sub(1)).ok_or_else(|| Error::InvalidInput(format!("no ramified place {k}")))?;
            v[inf] = -2;
            v[c] = 2;
        }
        GeneratorTag::XMinusBeta(j) => {
            let inert = sys.inert_indices();
            let pairs = sys.split_pairs();
            v[inf] = -2;
            if let Some(&c) = inert.get(j.wrapping_sub(1)) {
                v[c] = 2;
            } else if inert.is_empty() && j >= 1 && j <= pairs.len() {
                let (a, b) = pairs[j - 1];
                v[a] = 1;
                v[b] = 1;
            } else {
                return invalid(format!("no place for x - beta_{j}"));
            }
        }
        GeneratorTag::U => {
            if !model.splits() {
                return invalid("y is a unit away from the ramified places only when f splits");
            }
            v[inf] = -(2 * model.genus() as i64 + 1);
            for &c in &ram {
                v[c] = 1;
            }
        }
        GeneratorTag::GroupRelation(_) => return invalid("group-relation rows are not principal divisors of a named function"),
    }
    Ok(GeneratorVector { tag, vector: v })
}

/// A function-field lattice with its places and the data that produced it.
#[derive(Debug, Clone)]
pub struct LatticeBundle {
    pub lattice: IntegerLattice,
    pub places: PlaceSystem,
    pub generators: Vec<GeneratorVector>,
    pub model: Option<HyperellipticModel>,
    /// Group and place images when the lattice is a relation kernel.
    pub group: Option<(FiniteAbelianGroup, PlaceEmbedding)>,
}

impl LatticeBundle {
    /// `h_0 = [A_n : L] * d / prod d_i`.
    pub fn h0(&self) -> Result<BigInt> {
        let n = self.places.len() - 1;
        let index = self.lattice.index_in(&root_lattice_a(n)?)?;
        let degs = self.places.degrees();
        let d = degs.iter().fold(0u32, |a, &b| a.gcd(&b));
        let prod: BigInt = degs.iter().map(|&x| BigInt::from(x)).product();
        let num = index * BigInt::from(d);
        if !(&num % &prod).is_zero() {
            return Err(Error::Verification(format!("index times d is not divisible by {prod}")));
        }
        Ok(num / prod)
    }
}

fn rows_as_generators(lat: &IntegerLattice) -> Vec<GeneratorVector> {
    lat.basis()
        .iter()
        .enumerate()
        .map(|(i, r)| GeneratorVector { tag: GeneratorTag::GroupRelation(i), vector: r.clone() })
        .collect()
}

fn labelled(lat: IntegerLattice, sys: &PlaceSystem) -> Result<IntegerLattice> {
    lat.with_labels(sys.labels())
}

/// `n + 1` rational places of `F_q(x)`: the lattice is `A_n`.
pub fn build_rational(n: usize) -> Result<LatticeBundle> {
    if n < 1 {
        return invalid("the rational selector needs n >= 1");
    }
    let places = PlaceSystem::rational(n);
    // divisors P_i - P_{i+1} are principal on a genus-0 curve
    let generators: Vec<GeneratorVector> = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n + 1];
            v[i] = 1;
            v[i + 1] = -1;
            GeneratorVector { tag: GeneratorTag::GroupRelation(i), vector: v }
        })
        .collect();
    let rows: Vec<Vec<i64>> = generators.iter().map(|g| g.vector.clone()).collect();
    let lattice = labelled(IntegerLattice::from_generators(n + 1, &rows)?, &places)?;
    Ok(LatticeBundle { lattice, places, generators, model: None, group: None })
}

/// Function-field lattice of `model` for a curve selector.
pub fn build_ff_lattice(model: &HyperellipticModel, selector: Selector) -> Result<LatticeBundle> {
    match selector {
        Selector::RationalField => invalid("the rational selector takes n, not a curve"),
        Selector::RamifiedInert => build_ramified_inert(model),
        Selector::EllipticAllRational => {
            let eg = elliptic_point_group(model)?;
            let lat = kernel_lattice(&eg.group, &eg.embedding.images, &eg.places.degrees())?;
            let lattice = labelled(lat, &eg.places)?;
            Ok(LatticeBundle {
                generators: rows_as_generators(&lattice),
                lattice,
                places: eg.places,
                model: Some(model.clone()),
                group: Some((eg.group, eg.embedding)),
            })
        }
        Selector::HyperellipticAllRational => {
            let jac = jacobian_group(model)?;
            let places = PlaceSystem::all_rational(model);
            let emb = jac.embed(&places)?;
            let lat = kernel_lattice(&jac.group, &emb.images, &places.degrees())?;
            let lattice = labelled(lat, &places)?;
            Ok(LatticeBundle {
                generators: rows_as_generators(&lattice),
                lattice,
                places,
                model: Some(model.clone()),
                group: Some((jac.group, emb)),
            })
        }
    }
}

fn build_ramified_inert(model: &HyperellipticModel) -> Result<LatticeBundle> {
    let places = PlaceSystem::ramified_inert(model);
    let mut tags: Vec<GeneratorTag> = Vec::new();
    if model.splits() {
        tags.push(GeneratorTag::U);
    }
    tags.extend((1..places.r).map(GeneratorTag::XMinusAlpha));
    tags.extend((1..=places.s).map(GeneratorTag::XMinusBeta));
    let generators = tags.into_iter().map(|t| phi_vector(t, &places, model)).collect::<Result<Vec<_>>>()?;
    if places.len() < 2 {
        return invalid("ramified-inert system has a single place");
    }
    let rows: Vec<Vec<i64>> = generators.iter().map(|g| g.vector.clone()).collect();
    let lattice = labelled(IntegerLattice::from_generators(places.len(), &rows)?, &places)?;
    if lattice.rank() != places.len() - 1 {
        return Err(Error::Verification("generators do not span a full-rank sublattice of A_n".into()));
    }
    Ok(LatticeBundle { lattice, places, generators, model: Some(model.clone()), group: None })
}

/// The ramified-inert lattice recomputed as a class-group kernel: ramified
/// classes from the two-torsion embedding (split `f`) or from the enumerated
/// Jacobian, inert places with trivial class and degree 2.
pub fn oracle_build_ramified_inert(model: &HyperellipticModel) -> Result<IntegerLattice> {
    let places = PlaceSystem::ramified_inert(model);
    let (group, images) = if model.splits() {
        let (g, emb) = two_torsion_classes(model)?;
        let mut images = emb.images;
        images.extend(std::iter::repeat_n(g.zero(), places.s));
        (g, images)
    } else {
        let jac = jacobian_group(model)?;
        let emb = jac.embed(&places)?;
        (jac.group, emb.images)
    };
    kernel_lattice(&group, &images, &places.degrees())
}

/// `h_0` of a bundle, as a positive integer.
pub fn h0(bundle: &LatticeBundle) -> Result<BigInt> {
    let h = bundle.h0()?;
    if h < BigInt::one() {
        return Err(Error::Verification("h_0 must be positive".into()));
    }
    Ok(h)
}
