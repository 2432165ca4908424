//! Exact finite-precision p-adic Lie theory.
//!
//! Everything lives in `Z/p^N` for a fixed [`PadicContext`]: Lie lattices
//! given by structure constants, the Hausdorff series and the Lazard group
//! law, semidirect pro-p groups `Z_p ⋉ Z_p^(d-1)`, and canonical forms for
//! multiplicative similarity of 2x2 matrices.

pub mod bch;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod padic;

pub use classify::{classify, classify_mod, similar, SimilarityDescriptor};
pub use error::{Error, Result};
pub use group::{GroupElement, SemidirectGroup, SubgroupData};
pub use lie::{Filtration, Lattice};
pub use linalg::{mat_exp, mat_log, mat_pow_padic, PMatrix, Span};
pub use padic::{find_nonresidue, PadicContext, PadicScalar, RationalCoeff};
