//! `Z_p`-Lie lattices given by structure constants.

pub mod free_nilpotent;
pub mod lattice;
pub mod series;
pub mod structure;

pub use free_nilpotent::{lyndon_words, FreeNilpotent};
pub use lattice::{BracketEntry, Lattice, LatticeRepr};
pub use series::{Filtration, PotencyReport, PotencyStep};
pub use structure::TwoDimInvariant;
