//! Symbolic computation with truncated involutive globular categories.
//!
//! Start from a finite [`GlobularSet`] presentation, build terms of the free
//! self-dual reflexive globular magma with a [`Magma`], decide equality in the
//! free strict involutive category with [`congruence::eq`], materialize
//! contraction cells with [`contraction::contract`], and check monad and
//! algebra laws against the concrete models in [`models`].

pub mod algebra;
pub mod congruence;
pub mod contraction;
pub mod duality;
pub mod error;
pub mod exec;
pub mod globular;
pub mod magma;
pub mod models;
pub mod monad;
pub mod oracle;
pub mod report;
pub mod rewrite;
pub mod sample;
pub mod syntax;
pub mod term;

pub use algebra::FiniteInvolutiveCategory;
pub use congruence::{canonical, eq, pi, AxiomPair, AxiomTag, CanonicalForm, DEFAULT_BOUND};
pub use duality::{DualityIndex, DualityWord};
pub use error::{Error, Result};
pub use exec::Execution;
pub use globular::{load_presentation, CellId, GlobularMorphism, GlobularSet, Side};
pub use magma::Magma;
pub use report::Report;
pub use rewrite::reduce;
pub use term::{Kind, Leaf, Term};
