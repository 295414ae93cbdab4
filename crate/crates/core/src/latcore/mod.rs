//! Exact integer-lattice engine.

pub mod dual;
pub mod enumerate;
pub mod lattice;
pub mod lll;
pub mod matrix;
pub mod minima;

pub use dual::dual_short_vector_count;
pub use enumerate::{enumerate_short, DEFAULT_ENUM_CAP};
pub use lattice::{CoordinateSolver, GramData, IntegerLattice, Membership};
pub use lll::lll_reduce;
pub use minima::{
    is_well_rounded, kissing_number, minimal_vector_basis, minimal_vectors, minimum2, successive_minima2,
    MinimaProfile, MinimalBasis, RankTracker, DEFAULT_BASIS_BUDGET,
};
