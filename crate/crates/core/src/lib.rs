//! Quasi-cocycles and uniformly Lipschitz affine actions of the free group
//! F₂ on ℓ¹, computed on finite balls of its Cayley tree.
//!
//! The crate is organised bottom-up: [`group`] for words and the tree,
//! [`sparse`] and [`scalar`] for finitely supported vectors, [`brooks`] and
//! [`quasitree`] for quasi-cocycles, [`derivation`] for the affine actions
//! they induce, [`proper`] for growth and properness, and [`harness`] for
//! configuration-driven experiment suites.

pub mod brooks;
pub mod cocycle;
pub mod derivation;
pub mod error;
pub mod group;
pub mod harness;
pub mod opnorm;
pub mod par;
pub mod proper;
pub mod quasitree;
pub mod scalar;
pub mod sparse;

pub use error::{Error, Result};
pub use group::GroupWord;
pub use scalar::{Mode, Rational, Scalar};
pub use sparse::SparseVec;
