//! Function-field side: models, places, point groups and Jacobians.

pub mod elliptic;
pub mod group;
pub mod jacobian;
pub mod model;
pub mod places;

pub use elliptic::{elliptic_point_group, EllipticGroup};
pub use group::{Element, FiniteAbelianGroup};
pub use jacobian::{cantor_add, class_number, jacobian_group, two_torsion_classes, Jacobian, MumfordDivisor};
pub use model::{count_reduced_ramified, hasse_weil_condition, semi_reduced_canonical, HyperellipticModel};
pub use places::{classify_places, Classification, Place, PlaceKind, PlaceSystem, Selector};

/// Group element attached to each place of a system: the class of
/// `P - deg(P) P_inf` (or `P - O` on an elliptic curve).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceEmbedding {
    pub images: Vec<Element>,
}

/// Gonality of the function field behind a selector.
pub fn gonality(selector: Selector) -> u32 {
    selector.gonality()
}
