//! The Hausdorff series and the Lazard correspondence.

pub mod group;
pub mod matrix_group;
pub mod table;

pub use group::{bch_commutator, bch_mul, bch_neg, bch_pow, Bch, FiniteLieRing, LieRing};
pub use matrix_group::{lie_from_matrix_group, LieOperations};
pub use table::{hausdorff_table, parse_word, word_string, BchTable, BchTableRepr, BchTerm, BchTermRepr, Letter};
