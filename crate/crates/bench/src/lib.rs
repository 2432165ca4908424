//! Inputs shared by the criterion benches in `benches/`.

use lazard_core::catalog::{make_soluble, soluble_grid, ActionKind, SolublePair};
use lazard_core::lie::FreeNilpotent;
use lazard_core::{Lattice, PMatrix, PadicContext, Span};

pub fn ctx(precision: u32) -> PadicContext {
    PadicContext::new(5, precision).expect("5 is prime")
}

/// Every 2x2 matrix of the soluble grid, as actions `A`.
pub fn grid_actions(ctx: &PadicContext) -> Vec<PMatrix> {
    soluble_grid(ctx)
        .into_iter()
        .map(|f| f.matrix(ctx).expect("grid families are valid"))
        .collect()
}

pub fn grid_pairs(ctx: &PadicContext) -> Vec<SolublePair> {
    soluble_grid(ctx)
        .into_iter()
        .map(|f| make_soluble(ctx, f, ActionKind::Exp).expect("grid families are valid"))
        .collect()
}

/// Free nilpotent of class 4 on three generators (32-dimensional).
pub fn free_class4(ctx: &PadicContext) -> Lattice {
    FreeNilpotent::new(ctx, 3, 4).lattice
}

/// A deterministic spread of residues: `k * step + offset mod p^N`.
pub fn spread(ctx: &PadicContext, n: usize, step: u64, offset: u64) -> Vec<u64> {
    (0..n as u64)
        .map(|k| ((k as u128 * step as u128 + offset as u128) % ctx.modulus() as u128) as u64)
        .collect()
}

pub fn dense_span(ctx: &PadicContext, dim: usize) -> Span {
    let gens: Vec<Vec<u64>> = (0..dim as u64).map(|i| spread(ctx, dim, 7 * i + 3, 5 * i * i)).collect();
    Span::from_generators(ctx, dim, gens)
}
