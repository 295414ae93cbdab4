//! Automorphism groups: coordinate-permutation stabilizers, full isometry
//! groups, automorphisms of finite abelian groups and the permutation
//! subgroups induced by curve automorphisms.

pub mod abelian;
pub mod induced;
pub mod isometry;
pub mod perm;
pub mod stabilizer;

pub use abelian::{abelian_automorphism_group, aut_order_formula, AbelianAutGroup};
pub use induced::{
    elliptic_subgroup_check, hyperelliptic_subgroup_check, mobius_induced_perms, EllipticSubgroupReport,
    HyperellipticSubgroupReport, MobiusGroup,
};
pub use isometry::{
    factor_product, isometry_group_order, perm_report, IsometryReport, ReportGenerators, DEFAULT_MAX_ISOMETRY_RANK,
};
pub use perm::{schreier_sims_order, Permutation, PermutationGroup};
pub use stabilizer::{generating_shell, perm_stabilizer, stabilizes, DEFAULT_MAX_PERM_DIM};
