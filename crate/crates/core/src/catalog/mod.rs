//! Constructors for the named lattices and groups, the isomorphism test for
//! soluble three-dimensional lattices, and the verification fixtures.

mod examples;
mod fixtures;
mod iso;
mod manifest;
mod soluble;

pub use examples::{
    dim_p_matrix, levi_check, make_example_dim_p, make_insoluble, make_levi_example, make_p2_group,
    make_p3_pair, DimPExample, Insoluble, LeviReport, P3Pair, Sign,
};
pub use fixtures::{verify_fixture, Check, FixtureConfig, VerifyReport, FIXTURES};
pub use iso::{ideal_action, invariant_3dim, IdealAction, iso_test_3dim, Invariant3, IsoOutcome};
pub use manifest::{manifest, CatalogEntry, EntryKind};
pub use soluble::{
    group_from_action, lattice_from_action, make_2dim, make_soluble, soluble_grid, ActionKind,
    SolubleFamily, SolublePair,
};
