//! Cyclic star-transposition Gray codes for (n+1,n+1)-combinations.
//!
//! For any n >= 1 and any shift s coprime to 2n+1 this crate generates an
//! ordering of all bitstrings of length 2n+2 with exactly n+1 ones such
//! that consecutive strings differ in swapping the first bit with a
//! complementary later bit, the ordering is cyclic, and the sequence of
//! swap positions splits into 2n+1 blocks each obtained from the first by
//! adding s modulo 2n+1. Generation takes O(n) time per combination and
//! O(n) memory; an independent brute-force oracle verifies orderings.

pub mod arcs;
pub mod bits;
pub mod engine;
pub mod error;
pub mod factor;
pub mod flipseq;
pub mod oracle;
pub mod switching;
pub mod trees;

pub use arcs::{
    arc_of, build_tree, circular_property, plane_classes, Arc, ArcDirection, SpecialTrees,
};
pub use bits::{ell, is_dyck, necklace_of, rotate, tree_of, BitString, MidString, Necklace};
pub use engine::{Direction, Emission, GenState, StepKind};
pub use error::Error;
pub use factor::{enumerate_factor, f_apply, f_inv, kappa, periodic_path, PeriodicPath};
pub use flipseq::{
    classify_relation, flip_path, glue, gluing_cycle, mov, rev, shift_of, translate, FlipPath,
    FlipSequence, GluingCycle, GluingPair, Relation, ShiftedFlip,
};
pub use oracle::{
    brute_centroids, brute_kappa, brute_lambda, exhaustive_hamilton_check, verify_ordering,
    VerifyReport, Violation,
};
pub use switching::{
    catalan_mod, make_switch, orbit, plan_switches, usable_wrt, Conformality, Switch, SwitchKind,
    SwitchPlan,
};
pub use trees::{
    canon_plane, classify_leaf, lambda_of, potential_and_centroids, subtrees_at, CentroidInfo,
    DyckWord, LeafClass, PlaneTree, RootedTree,
};
