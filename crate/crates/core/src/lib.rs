//! Polynomial invariants of products of affine groups over finite fields.
//!
//! `G^n` acts on `F_q[x_1, ..., x_n]` by `x_i -> a_i x_i + b_i`. This crate computes
//! minimal generating sets of the fixed-point subrings, decides when they are
//! polynomial rings, works with the associated product-one sequences, and counts
//! homogeneous bivariate invariants, with brute-force oracles in [`oracle`] to check
//! all of it at small sizes.

pub mod action;
pub mod error;
pub mod gf;
pub mod homog;
pub mod invariant;
pub mod mpoly;
pub mod oracle;
pub mod prodone;
pub mod upoly;

pub use action::{apply, canonical_decomposition, reduce_to_type, GroupElem, TypeInfo};
pub use error::{Error, Result};
pub use gf::{Field, FieldCtx, FieldElem};
pub use invariant::{generating_set, is_free, nstar_bounds, GeneratorSet};
pub use mpoly::{Monomial, MultiPoly};
pub use upoly::UniPoly;
