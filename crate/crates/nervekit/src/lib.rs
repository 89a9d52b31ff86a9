//! nervekit: a verification engine for finite higher-categorical structures.
//!
//! The crate represents finite truncated simplicial sets and finite
//! bicategories with explicit tables, computes simplicial kernels, horns,
//! coskeleta, skeleta, and the shift (décalage) construction, builds nerves
//! of bicategories and action bicategories, and machine-checks horn-filling,
//! coherence, and 2-torsor properties by exhaustive enumeration over finite
//! data. All values are immutable after construction and every operation is
//! a pure function of its inputs.

pub mod action;
pub mod bicategory;
pub mod category;
pub mod functors;
pub mod monotone;
pub mod nerve;
pub mod report;
pub mod simplicial;
pub mod torsor;

pub use action::{
    action_bicategory, canonical_projection, check_equivariant_functor,
    check_equivariant_transformation, self_action, tangent_projection, validate_action,
    validate_fibered_action, ActionOneCell, ActionTwoCell, BicatAction, EquivariantFunctor,
    EquivariantTransformation, FiberedAction,
};
pub use bicategory::{
    build_ordinal, build_two_group, compose_cells, is_bigroupoid, locally_discrete,
    span_bicategory, validate_bicategory, validate_homomorphism, CellKind, FiniteBicategory,
    StrictHomomorphism,
};
pub use category::{
    cyclic_group_category, one_object_category, ordinal_category, validate_category,
    FiniteCategory,
};
pub use functors::{
    augmented_cosk0, augmented_constant, build_contraction, coskeleton, coskeleton_unit, decalage,
    decalage_map, decalage_transpose, decalage_transpose_inverse, skeleton, truncate,
    DecalageBundle,
};
pub use monotone::{factorize_monotone, FactorizationWord, MonotoneMap};
pub use nerve::{
    duskin_nerve, is_coskeletal_in_degree, nerve_map, three_simplex_identity, NerveSimplex2,
};
pub use report::{EngineError, Result, VerificationReport, Violation};
pub use torsor::{
    build_pullback_torsor, build_trivial_torsor, check_torsor_axioms, cocycle_check,
    is_exact_fibration, is_simplicial_action, quotient_action_candidate, verify_glenn_torsor,
    TorsorCandidate,
};
pub use simplicial::{
    boundary_complex, classify, constant_complex, enumerate_simplicial_maps, horn_complex,
    horn_set, is_aspherical, is_aspherical_augmented, kan_status, simplicial_kernel,
    standard_simplex, tuple_id, validate_augmented, validate_simplicial, validate_simplicial_map,
    AugmentedSimplexTable, Classification, ClassifyReport, Contraction, HornSet, Id, KanStatus,
    KernelSet, Policy, SimplexTable, SimplicialMap,
};
