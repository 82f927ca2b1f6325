//! Square-zero extensions, lifting of homomorphisms and deformations over
//! a square-zero extension of the base.

mod extension;

pub use extension::{
    baer_sum, cocycle_combination, cocycle_from_extension, cochains_for, difference_extension, extension_from_cocycle, extension_isomorphism,
    fibered_product, geometric_combination, quotient_model, realize, split_cochain, RealizedExtension, SquareZeroExtension,
};

mod base;
mod classify;
mod lift;

pub use base::{solution_cochain, twisted_solutions, BaseDeformationProblem, DeformationOutcome, ObstructionReport, RelationLift};
pub use lift::{all_lifts, lift_homomorphism, LiftOutcome, LiftProblem};
pub use classify::{check_torsor_action, exal_classify, pairwise_distinct, ExalClassification, TorsorReport};
