//! Exact computations with finite-dimensional associative dialgebras: axiom
//! checking, actions and crossed modules, tetramultiplier spaces, the actor
//! crossed module, semidirect products and centers.

pub mod action;
pub mod actor;
pub mod cli;
pub mod definition;
pub mod dialgebra;
pub mod error;
pub mod fixtures;
pub mod identity;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod tetra;

pub use action::{check_action, check_crossed_module, check_xmod_hom, induced_action_via, semidirect_dialgebra, Action, CrossedModule};
pub use actor::{
    action_data_to_hom, canonical_morphism, center, check_conditions, check_xmod_action_data, hom_to_action_data,
    semidirect_xmod, verify_center_is_kernel, ConditionReport, XModActionData,
};
pub use dialgebra::{annihilator, check_axioms, from_associative, is_ideal, is_perfect, product_span, Dialgebra};
pub use error::{Error, Result};
pub use identity::{generate_mixed_identities, Axiom, IdentityTemplate, Op, Sort};
pub use linalg::{Matrix, SubspaceBasis};
pub use report::{AxiomReport, Status, Violation};
pub use scalar::{Field, Rational, Zp};
pub use tensor::Bilinear;
pub use tetra::{
    build_actor, delta, octuple_act, tetra_dl_space, tetra_product, tetra_space, xmod_tetra_product, xmod_tetra_space,
    Actor, QuadKind, Side, SpaceKind, TetraSpace, Tetramultiplier, XModTetramultiplier,
};
