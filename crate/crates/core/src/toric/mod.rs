//! Lattice polytopes, normal fans and the Segre binomial relations.

mod fan;
mod hull;
mod polytope;
mod segre;

pub use fan::{normal_fan_box, Cone, Fan};
pub use polytope::{
    delzant_check, lattice_points, CubeVariant, DelzantFailure, DelzantFailureReason, DelzantVerdict,
    ExponentSet, LatticePolytope,
};
pub use segre::{
    max_residual_over, max_segre_residual, max_segre_residual_with, relation_residual, segre_exponents,
    segre_relations, verify_beta_balance, BinomialRelation,
};

/// Convenience wrapper for [`LatticePolytope::cube`].
pub fn cube(m: usize, variant: CubeVariant) -> crate::Result<LatticePolytope> {
    LatticePolytope::cube(m, variant)
}
