//! Exact handle-calculus computations for 4-manifolds.
//!
//! The crate has three layers:
//!
//! * free-group words, finitely presented groups, integer Smith normal form,
//!   Tietze moves and finite-quotient hom counting ([`word`],
//!   [`presentation`], [`snf`], [`tietze`], [`finite_group`]);
//! * handle decompositions at two levels of detail: the purely algebraic
//!   [`handlebody::HandleBody4`] and the diagram-level [`link::FramedLink`]
//!   with its verified move engine ([`handlebody`], [`link`],
//!   [`signature`]);
//! * builders realizing surface bundles over surfaces, fiber sums and the
//!   CaCiMe surface, plus the integer identity checks that certify the
//!   results ([`bundles`]).
//!
//! All arithmetic is exact: unbounded integers everywhere, rationals for the
//! signature diagonalization, no floating point.

pub mod bundles;
pub mod error;
pub mod finite_group;
pub mod handlebody;
pub mod link;
pub mod matrix;
pub mod presentation;
pub mod signature;
pub mod snf;
pub mod tietze;
pub mod word;

pub use bundles::{
    build_bundle, build_cacime, build_cacime_default, characteristic_identities_check,
    default_tau2, fiber_sum, homology_model_check, multiplicativity_check, puncture_fiber,
    surface_presentation, BundleSpec, ChernData, SurfaceGroupData,
};
pub use error::{Error, Result};
pub use finite_group::{count_homs, FiniteGroupTable};
pub use handlebody::{ClosedInvariantReport, HandleBody4, Provenance};
pub use link::{Circle, FramedLink};
pub use matrix::IntMatrix;
pub use presentation::Presentation;
pub use snf::{smith_normal_form, AbelianInvariants, SmithNormalForm};
pub use tietze::{tietze_apply, TietzeMove};
pub use word::{commutator, FreeEndomorphism, Letter, Word};
