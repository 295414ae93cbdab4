//! Mumford representation and Cantor's algorithm for `y^2 = f(x)`,
//! `deg f = 2g + 1`. A pair `(u, v)` stands for the class of the affine
//! divisor cut out by `u` and `y = v(x)`, minus `(deg u) P_inf`.

use std::collections::HashMap;

use super::group::{structure_from_law, Element, FiniteAbelianGroup};
use super::model::HyperellipticModel;
use super::places::{classify_places, PlaceKind, PlaceSystem};
use super::PlaceEmbedding;
use crate::error::{invalid, Error, Result};
use crate::fieldpoly::FpPoly;

/// Desk-scale guards for Jacobian enumeration.
pub const MAX_JACOBIAN_GENUS: usize = 3;
pub const MAX_JACOBIAN_P: u64 = 50;
/// Upper limit on the number of `(u, v)` candidates examined.
pub const MAX_JACOBIAN_CANDIDATES: u128 = 30_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MumfordDivisor {
    pub u: FpPoly,
    pub v: FpPoly,
}

impl MumfordDivisor {
    pub fn identity(model: &HyperellipticModel) -> Self {
        let fp = model.field();
        MumfordDivisor { u: FpPoly::one(&fp), v: FpPoly::zero(&fp) }
    }

    /// Class of `P - P_inf` for a rational point `P = (a, b)`.
    pub fn point(model: &HyperellipticModel, a: u64, b: u64) -> Self {
        let fp = model.field();
        MumfordDivisor { u: FpPoly::linear(&fp, a), v: FpPoly::constant(&fp, b) }
    }

    pub fn degree(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    /// Reduced: `u` monic, `deg v < deg u <= g`, `u | v^2 - f`.
    pub fn is_reduced(&self, model: &HyperellipticModel) -> bool {
        self.u.is_monic()
            && self.degree() <= model.genus()
            && self.v.deg() < self.u.deg()
            && self.v.mul(&self.v).sub(model.f()).rem(&self.u).is_zero()
    }

    /// The hyperelliptic involution `v -> -v mod u`.
    pub fn negate(&self) -> Self {
        MumfordDivisor { u: self.u.clone(), v: self.v.neg().rem(&self.u) }
    }

    fn sort_key(&self) -> (usize, Vec<u64>, Vec<u64>) {
        (self.degree(), self.u.coeffs().to_vec(), self.v.coeffs().to_vec())
    }
}

/// Composition followed by reduction; returns the reduced representative of
/// the class sum.
pub fn cantor_add(model: &HyperellipticModel, d1: &MumfordDivisor, d2: &MumfordDivisor) -> MumfordDivisor {
    let f = model.f();
    let (d0, e1, e2) = d1.u.ext_gcd(&d2.u);
    let (d, c1, c2) = d0.ext_gcd(&d1.v.add(&d2.v));
    let s1 = c1.mul(&e1);
    let s2 = c1.mul(&e2);
    let s3 = c2;
    let d2sq = d.mul(&d);
    let mut u = d1.u.mul(&d2.u).exact_div(&d2sq);
    let num = s1
        .mul(&d1.u)
        .mul(&d2.v)
        .add(&s2.mul(&d2.u).mul(&d1.v))
        .add(&s3.mul(&d1.v.mul(&d2.v).add(f)));
    let mut v = num.exact_div(&d).rem(&u);
    while u.deg() > model.genus() as isize {
        let u2 = f.sub(&v.mul(&v)).exact_div(&u).monic();
        v = v.neg().rem(&u2);
        u = u2;
    }
    let v = v.rem(&u);
    MumfordDivisor { u, v }
}

/// `k * D` by double-and-add (`k >= 0`).
pub fn cantor_mul(model: &HyperellipticModel, d: &MumfordDivisor, mut k: u64) -> MumfordDivisor {
    let mut acc = MumfordDivisor::identity(model);
    let mut base = d.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = cantor_add(model, &acc, &base);
        }
        base = cantor_add(model, &base, &base);
        k >>= 1;
    }
    acc
}

fn check_guards(model: &HyperellipticModel) -> Result<()> {
    let (g, p) = (model.genus(), model.p());
    if g > MAX_JACOBIAN_GENUS || p > MAX_JACOBIAN_P {
        return Err(Error::Resource(format!(
            "Jacobian enumeration limited to g <= {MAX_JACOBIAN_GENUS}, p <= {MAX_JACOBIAN_P} (got g = {g}, p = {p})"
        )));
    }
    let candidates: u128 = (0..=g as u32).map(|d| (p as u128).pow(2 * d)).sum();
    if candidates > MAX_JACOBIAN_CANDIDATES {
        return Err(Error::Resource(format!(
            "Jacobian enumeration would examine {candidates} candidates (limit {MAX_JACOBIAN_CANDIDATES})"
        )));
    }
    Ok(())
}

/// Every reduced divisor, in canonical order `(deg u, u, v)`; the identity first.
pub fn reduced_divisors(model: &HyperellipticModel) -> Result<Vec<MumfordDivisor>> {
    check_guards(model)?;
    let fp = model.field();
    let p = fp.p();
    let mut out = Vec::new();
    for deg in 0..=model.genus() {
        // monic u of this degree, v of degree < deg: iterate residue tuples
        let count = p.pow(deg as u32);
        for ui in 0..count {
            let mut uc = digits(ui, p, deg);
            uc.push(1);
            let u = FpPoly::from_residues(&fp, uc);
            let target = model.f().rem(&u);
            for vi in 0..count {
                let v = FpPoly::from_residues(&fp, digits(vi, p, deg));
                if v.mul(&v).rem(&u) == target {
                    out.push(MumfordDivisor { u: u.clone(), v });
                }
            }
        }
    }
    out.sort_by_key(MumfordDivisor::sort_key);
    Ok(out)
}

fn digits(mut x: u64, p: u64, len: usize) -> Vec<u64> {
    let mut d = Vec::with_capacity(len + 1);
    for _ in 0..len {
        d.push(x % p);
        x /= p;
    }
    d
}

/// The Jacobian `Cl^0` as an enumerated group.
#[derive(Debug, Clone)]
pub struct Jacobian {
    pub model: HyperellipticModel,
    pub group: FiniteAbelianGroup,
    /// Reduced representatives in canonical order; index 0 is the identity.
    pub table: Vec<MumfordDivisor>,
    /// Group coordinates of `table[i]`.
    pub coords: Vec<Element>,
    index: HashMap<MumfordDivisor, usize>,
}

impl Jacobian {
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn index_of(&self, d: &MumfordDivisor) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn class_of(&self, d: &MumfordDivisor) -> Option<&Element> {
        self.index_of(d).map(|i| &self.coords[i])
    }

    /// Class of `P - deg(P) P_inf` for a place of this model. Inert places of
    /// degree 2 are the conorm of `x = beta`, hence principal.
    pub fn place_class(&self, kind: PlaceKind) -> Result<Element> {
        let fp = self.model.field();
        let d = match kind {
            PlaceKind::Infinity | PlaceKind::Inert(_) => return Ok(self.group.zero()),
            PlaceKind::Ramified(a) => MumfordDivisor::point(&self.model, a, 0),
            PlaceKind::Split { beta, sheet } => {
                let roots = fp.sqrts(self.model.f().eval(beta));
                if roots.len() != 2 || !(1..=2).contains(&sheet) {
                    return invalid(format!("{beta} is not a split value"));
                }
                MumfordDivisor::point(&self.model, beta, roots[sheet as usize - 1])
            }
            PlaceKind::Rational(_) => return invalid("rational-field places have no Jacobian class"),
        };
        self.class_of(&d)
            .cloned()
            .ok_or_else(|| Error::Verification(format!("{d:?} missing from the class table")))
    }

    pub fn embed(&self, places: &PlaceSystem) -> Result<PlaceEmbedding> {
        let images = places.places.iter().map(|p| self.place_class(p.kind)).collect::<Result<_>>()?;
        Ok(PlaceEmbedding { images })
    }
}

pub fn jacobian_group(model: &HyperellipticModel) -> Result<Jacobian> {
    let table = reduced_divisors(model)?;
    let index: HashMap<MumfordDivisor, usize> = table.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let st = structure_from_law(table.len(), 0, |i, j| index[&cantor_add(model, &table[i], &table[j])])?;
    Ok(Jacobian { model: model.clone(), group: st.group, table, coords: st.coords, index })
}

/// Order of the Jacobian.
pub fn class_number(model: &HyperellipticModel) -> Result<u64> {
    Ok(jacobian_group(model)?.order())
}

/// `(Z/2)^{2g}` generated by the ramified classes of a split model: `P_inf`
/// maps to 0, `P_1..P_2g` to the unit vectors and `P_{2g+1}` to the all-ones
/// vector. Images are returned for `(P_inf, P_1, ..., P_{2g+1})`.
pub fn two_torsion_classes(model: &HyperellipticModel) -> Result<(FiniteAbelianGroup, PlaceEmbedding)> {
    let c = classify_places(model);
    let g2 = 2 * model.genus();
    if c.roots.len() != g2 + 1 {
        return invalid("two-torsion embedding needs f to split into linear factors");
    }
    let mut images = vec![vec![0u64; g2]];
    for i in 0..g2 {
        let mut e = vec![0u64; g2];
        e[i] = 1;
        images.push(e);
    }
    images.push(vec![1u64; g2]);
    Ok((FiniteAbelianGroup::two_torsion(g2), PlaceEmbedding { images }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::elliptic::points;

    fn g2_split() -> HyperellipticModel {
        HyperellipticModel::from_coeffs(7, &[0, 24, -50, 35, -10, 1]).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let m = g2_split();
        let all = reduced_divisors(&m).unwrap();
        let id = MumfordDivisor::identity(&m);
        assert_eq!(all[0], id);
        for d in &all {
            assert!(d.is_reduced(&m));
            assert_eq!(&cantor_add(&m, d, &id), d);
            assert_eq!(cantor_add(&m, d, &d.negate()), id);
        }
    }

    #[test]
    fn two_points_give_the_interpolating_pair() {
        // (x - a1)(x - a2) with v the line through both points
        let m = HyperellipticModel::from_coeffs(7, &[1, 3, 0, 2, 5, 1]).unwrap();
        let fp = m.field();
        let pts: Vec<(u64, u64)> = points(&m).into_iter().flatten().collect();
        let mut checked = 0;
        for &(a1, b1) in &pts {
            for &(a2, b2) in &pts {
                if a1 >= a2 {
                    continue;
                }
                let s = cantor_add(&m, &MumfordDivisor::point(&m, a1, b1), &MumfordDivisor::point(&m, a2, b2));
                let slope = fp.mul(fp.sub(b2, b1), fp.inv(fp.sub(a2, a1)));
                let v = FpPoly::from_residues(&fp, vec![fp.sub(b1, fp.mul(slope, a1)), slope]);
                let u = FpPoly::from_roots(&fp, &[a1, a2]);
                assert_eq!(s, MumfordDivisor { u, v });
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn genus_one_matches_point_count() {
        let m = HyperellipticModel::from_coeffs(5, &[1, 1, 0, 1]).unwrap();
        assert_eq!(class_number(&m).unwrap(), 9);
        assert_eq!(class_number(&m).unwrap() as usize, points(&m).len());
    }

    #[test]
    fn group_laws_on_small_jacobian() {
        let m = g2_split();
        let all = reduced_divisors(&m).unwrap();
        assert!(all.len() <= 200);
        let idx: HashMap<_, _> = all.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let n = all.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| idx[&cantor_add(&m, &all[i], &all[j])]).collect()).collect();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(table[a][b], table[b][a]);
                for c in 0..n {
                    assert_eq!(table[table[a][b]][c], table[a][table[b][c]]);
                }
            }
        }
    }

    #[test]
    fn ramified_classes_are_two_torsion() {
        let m = g2_split();
        let jac = jacobian_group(&m).unwrap();
        let sys = PlaceSystem::ramified_inert(&m);
        for &i in &sys.ramified_indices() {
            let c = jac.place_class(sys.places[i].kind).unwrap();
            assert_eq!(jac.group.scale(&c, 2), jac.group.zero());
        }
        // the ramified classes generate a (Z/2)^4
        let gens: Vec<Element> =
            sys.ramified_indices().iter().map(|&i| jac.place_class(sys.places[i].kind).unwrap()).collect();
        let mut span = std::collections::HashSet::from([jac.group.zero()]);
        for g in &gens {
            let cur: Vec<Element> = span.iter().cloned().collect();
            for e in cur {
                span.insert(jac.group.add(&e, g));
            }
        }
        assert_eq!(span.len(), 16);
        let total = gens.iter().fold(jac.group.zero(), |acc, g| jac.group.add(&acc, g));
        assert_eq!(total, jac.group.zero());
    }

    #[test]
    fn guards_trip_loudly() {
        let m = HyperellipticModel::from_coeffs(53, &[1, 1, 0, 1]).unwrap();
        assert!(matches!(jacobian_group(&m), Err(Error::Resource(_))));
    }

    #[test]
    fn two_torsion_relation() {
        let (g, e) = two_torsion_classes(&g2_split()).unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(e.images[0], vec![0, 0, 0, 0]);
        assert_eq!(e.images[5], vec![1, 1, 1, 1]);
        assert!(two_torsion_classes(&HyperellipticModel::from_coeffs(5, &[1, 1, 0, 1]).unwrap()).is_err());
    }
}
