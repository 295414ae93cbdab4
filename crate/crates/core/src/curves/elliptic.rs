use std::collections::HashMap;

use super::group::{structure_from_law, Element, FiniteAbelianGroup};
use super::model::HyperellipticModel;
use super::places::{Place, PlaceKind, PlaceSystem, Selector};
use super::PlaceEmbedding;
use crate::error::{invalid, Error, Result};

/// A point of `y^2 = f(x)`, `None` being the neutral point `O` at infinity.
pub type Point = Option<(u64, u64)>;

/// Chord-tangent addition on `y^2 = c3 x^3 + c2 x^2 + c1 x + c0`.
pub fn add_points(model: &HyperellipticModel, p: Point, q: Point) -> Point {
    let fp = model.field();
    let (Some((x1, y1)), Some((x2, y2))) = (p, q) else {
        return p.or(q);
    };
    let lambda = if x1 == x2 {
        if fp.add(y1, y2) == 0 {
            return None;
        }
        // tangent slope f'(x1) / (2 y1)
        fp.mul(model.f().derivative().eval(x1), fp.inv(fp.add(y1, y1)))
    } else {
        fp.mul(fp.sub(y2, y1), fp.inv(fp.sub(x2, x1)))
    };
    let c3 = model.f().coeff(3);
    let c2 = model.f().coeff(2);
    let sum = fp.mul(fp.sub(fp.mul(lambda, lambda), c2), fp.inv(c3));
    let x3 = fp.sub(fp.sub(sum, x1), x2);
    let y3 = fp.neg(fp.add(fp.mul(lambda, fp.sub(x3, x1)), y1));
    Some((x3, y3))
}

/// All points, `O` first, affine points in ascending `(x, y)`.
pub fn points(model: &HyperellipticModel) -> Vec<Point> {
    let fp = model.field();
    let mut out = vec![None];
    for a in 0..fp.p() {
        for b in fp.sqrts(model.f().eval(a)) {
            out.push(Some((a, b)));
        }
    }
    out
}

/// The rational points of an elliptic model as an abstract group, with the
/// all-rational place system ordered by group coordinates (`O` first).
#[derive(Debug, Clone)]
pub struct EllipticGroup {
    pub group: FiniteAbelianGroup,
    pub places: PlaceSystem,
    pub points: Vec<Point>,
    pub embedding: PlaceEmbedding,
}

impl EllipticGroup {
    /// Place index of a group element.
    pub fn place_of(&self, e: &[u64]) -> usize {
        self.embedding.images.iter().position(|x| x == e).expect("embedding is a bijection")
    }
}

pub fn elliptic_point_group(model: &HyperellipticModel) -> Result<EllipticGroup> {
    if model.genus() != 1 {
        return invalid(format!("elliptic point group needs genus 1, model has genus {}", model.genus()));
    }
    let pts = points(model);
    let index: HashMap<Point, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let law = |i: usize, j: usize| index[&add_points(model, pts[i], pts[j])];
    let st = structure_from_law(pts.len(), 0, law)?;
    // Cross-check by element orders computed by repeated addition.
    for (i, &p) in pts.iter().enumerate() {
        let mut acc = p;
        let mut ord = 1;
        while acc.is_some() {
            acc = add_points(model, acc, p);
            ord += 1;
        }
        if ord != st.group.element_order(&st.coords[i]) {
            return Err(Error::Verification(format!("order census mismatch at point {p:?}")));
        }
    }
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| st.coords[a].cmp(&st.coords[b]));
    let fp = model.field();
    let places = order
        .iter()
        .map(|&i| match pts[i] {
            None => Place::new(PlaceKind::Infinity),
            Some((a, 0)) => Place::new(PlaceKind::Ramified(a)),
            Some((a, b)) => {
                let roots = fp.sqrts(model.f().eval(a));
                let sheet = if roots[0] == b { 1 } else { 2 };
                Place::new(PlaceKind::Split { beta: a, sheet })
            }
        })
        .collect::<Vec<_>>();
    let r = places.iter().filter(|p| matches!(p.kind, PlaceKind::Infinity | PlaceKind::Ramified(_))).count();
    let t = places.iter().filter(|p| matches!(p.kind, PlaceKind::Split { .. })).count() / 2;
    let s = (fp.p() as usize + 1) - r - t;
    Ok(EllipticGroup {
        group: st.group,
        places: PlaceSystem { selector: Selector::EllipticAllRational, places, r, s, t },
        points: order.iter().map(|&i| pts[i]).collect(),
        embedding: PlaceEmbedding { images: order.iter().map(|&i| st.coords[i].clone()).collect::<Vec<Element>>() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> HyperellipticModel {
        HyperellipticModel::from_coeffs(5, &[1, 1, 0, 1]).unwrap()
    }

    #[test]
    fn nine_points_over_f5() {
        // brute force: b^2 = a^3 + a + 1
        let mut count = 1;
        for a in 0..5u64 {
            for b in 0..5u64 {
                if (b * b) % 5 == (a * a * a + a + 1) % 5 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 9);
        let eg = elliptic_point_group(&curve()).unwrap();
        assert_eq!(eg.group.order(), 9);
        assert_eq!(eg.embedding.images[0], eg.group.zero());
        assert_eq!(eg.places.places[0].kind, PlaceKind::Infinity);
    }

    #[test]
    fn cyclic_order_nine_by_census() {
        // an element of order 9 exists iff the group is cyclic
        let m = curve();
        let pts = points(&m);
        let max_order = pts
            .iter()
            .map(|&p| {
                let (mut acc, mut k) = (p, 1);
                while acc.is_some() {
                    acc = add_points(&m, acc, p);
                    k += 1;
                }
                k
            })
            .max()
            .unwrap();
        let eg = elliptic_point_group(&m).unwrap();
        assert_eq!(eg.group.is_cyclic(), max_order == 9);
    }

    #[test]
    fn group_law_is_abelian_and_associative() {
        let m = HyperellipticModel::from_coeffs(7, &[3, 2, 0, 1]).unwrap();
        let pts = points(&m);
        for &a in &pts {
            for &b in &pts {
                assert_eq!(add_points(&m, a, b), add_points(&m, b, a));
                for &c in &pts {
                    let l = add_points(&m, add_points(&m, a, b), c);
                    let r = add_points(&m, a, add_points(&m, b, c));
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn non_monic_cubic() {
        let m = HyperellipticModel::from_coeffs(11, &[1, 0, 3, 2]).unwrap();
        let eg = elliptic_point_group(&m).unwrap();
        assert_eq!(eg.group.order() as usize, points(&m).len());
    }
}
