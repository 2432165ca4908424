//! Lie sum and bracket recovered from a matrix group.
//!
//! The primary route goes through `log` and `exp`. The cross-check evaluates
//! the limit formulas
//! `x + y = lim (x^(p^n) y^(p^n))^(p^-n)` and
//! `[x, y] = lim [x^(p^n), y^(p^n)]^(p^-2n)`
//! at finite `n`, taking the `p^n`-th root as `exp(log(P) / p^n)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{mat_exp, mat_log, PMatrix};
use crate::padic::PadicContext;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieOperations {
    /// `exp(log g + log h)`
    #[serde(skip)]
    pub sum: PMatrix,
    /// `exp([log g, log h])`
    #[serde(skip)]
    pub bracket: PMatrix,
    #[serde(skip)]
    pub log_sum: PMatrix,
    #[serde(skip)]
    pub log_bracket: PMatrix,
    /// least `n` from which the sum approximants agree with `sum`
    pub sum_stable_at: u32,
    /// least `n` from which the bracket approximants agree with `bracket`
    pub bracket_stable_at: u32,
}

pub fn lie_from_matrix_group(g: &PMatrix, h: &PMatrix) -> Result<LieOperations> {
    let ctx = *g.ctx();
    ctx.check_compatible(h.ctx())?;
    let x = mat_log(g)?;
    let y = mat_log(h)?;
    let log_sum = x.add(&y)?;
    let log_bracket = x.commutator(&y)?;
    let sum = mat_exp(&log_sum)?;
    let bracket = mat_exp(&log_bracket)?;

    let n_max = ctx.precision();
    let mut sum_approx = Vec::with_capacity(n_max as usize);
    let mut bracket_approx = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        sum_approx.push(sum_approximant(g, h, n)?);
        bracket_approx.push(bracket_approximant(g, h, n)?);
    }
    let sum_stable_at = stable_from(&sum_approx, &sum).ok_or_else(|| {
        Error::CrossCheckMismatch(format!("sum limit at n = {n_max} differs from exp(log g + log h)"))
    })?;
    let bracket_stable_at = stable_from(&bracket_approx, &bracket).ok_or_else(|| {
        Error::CrossCheckMismatch(format!(
            "bracket limit at n = {n_max} differs from exp([log g, log h])"
        ))
    })?;
    Ok(LieOperations {
        sum,
        bracket,
        log_sum,
        log_bracket,
        sum_stable_at,
        bracket_stable_at,
    })
}

fn stable_from(approx: &[PMatrix], target: &PMatrix) -> Option<u32> {
    if approx.last() != Some(target) {
        return None;
    }
    let first_bad = approx.iter().rposition(|a| a != target);
    Some(first_bad.map_or(1, |i| i as u32 + 2))
}

fn wide(ctx: &PadicContext, extra: u32) -> Result<PadicContext> {
    ctx.with_precision(ctx.precision() + extra).map_err(|_| {
        Error::ConvergenceViolated(format!("{extra} extra digits exceed the modulus for {ctx}"))
    })
}

/// `exp(log(P) / p^k)` where `P` lives `k` digits above the target context.
fn root(pw: &PMatrix, k: u32, target: &PadicContext) -> Result<PMatrix> {
    let l = mat_log(pw)?;
    let wctx = *l.ctx();
    let data = l
        .entries()
        .iter()
        .map(|&e| {
            if e != 0 && wctx.valuation(e) < k {
                Err(Error::CrossCheckMismatch(format!(
                    "log of the approximant is not divisible by p^{k}"
                )))
            } else {
                Ok(wctx.div_p_pow(e, k) % target.modulus())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    mat_exp(&PMatrix::from_residues(target, l.rows(), l.cols(), data))
}

fn sum_approximant(g: &PMatrix, h: &PMatrix, n: u32) -> Result<PMatrix> {
    let ctx = *g.ctx();
    let w = wide(&ctx, n)?;
    let e = ctx.p().pow(n);
    let prod = g.to_context(&w).pow(e).mul(&h.to_context(&w).pow(e))?;
    root(&prod, n, &ctx)
}

fn bracket_approximant(g: &PMatrix, h: &PMatrix, n: u32) -> Result<PMatrix> {
    let ctx = *g.ctx();
    let w = wide(&ctx, 2 * n)?;
    let e = ctx.p().pow(n);
    let a = g.to_context(&w).pow(e);
    let b = h.to_context(&w).pow(e);
    let comm = a.inverse()?.mul(&b.inverse()?)?.mul(&a)?.mul(&b)?;
    root(&comm, 2 * n, &ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 4).unwrap()
    }

    #[test]
    fn inverse_pair_sums_to_zero() {
        let c = ctx();
        let g = PMatrix::from_rows(&c, &[[1, 5], [0, 1]]);
        let h = g.inverse().unwrap();
        let ops = lie_from_matrix_group(&g, &h).unwrap();
        assert!(ops.log_sum.is_zero());
        assert!(ops.sum.is_identity());
    }

    #[test]
    fn commuting_pair() {
        let c = ctx();
        let g = PMatrix::from_rows(&c, &[[1, 5, 0], [0, 1, 0], [0, 0, 1]]);
        let h = PMatrix::from_rows(&c, &[[1, 0, 0], [0, 1, 0], [0, 0, 6]]);
        let ops = lie_from_matrix_group(&g, &h).unwrap();
        assert_eq!(ops.sum, g.mul(&h).unwrap());
        assert!(ops.log_bracket.is_zero());
    }

    #[test]
    fn unipotent_pair_routes_agree() {
        let c = ctx();
        let g = PMatrix::from_rows(&c, &[[1, 1], [0, 1]]);
        let h = PMatrix::from_rows(&c, &[[6, 0], [5, 1]]);
        let ops = lie_from_matrix_group(&g, &h).unwrap();
        assert!(ops.sum_stable_at <= c.precision());
        assert!(ops.bracket_stable_at <= c.precision());
    }
}
