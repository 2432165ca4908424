//! Matrix exponential, logarithm and `Z_p`-powers at finite precision.
//!
//! Both series are summed in a context with extra guard digits so that the
//! divisions by `n!` (resp. `n`) are exact, then truncated back to `p^N`.

use crate::error::{Error, Result};
use crate::linalg::matrix::PMatrix;
use crate::padic::{PadicContext, PadicScalar};

fn vp(p: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn vp_factorial(p: u64, n: u64) -> u32 {
    let mut v = 0;
    let mut q = n / p;
    while q > 0 {
        v += q as u32;
        q /= p;
    }
    v
}

/// Least `n0` such that `f(m) >= N` for every `m >= n0`, where `f` is the
/// guaranteed valuation of the `m`-th term. `tail_from` is an index past
/// which the analytic lower bound already exceeds `N`.
fn truncation(n: u32, tail_from: u64, f: impl Fn(u64) -> i64) -> u64 {
    (0..tail_from)
        .rev()
        .find(|&m| f(m) < n as i64)
        .map_or(0, |m| m + 1)
}

/// Index past which `(m-1)/2 - (m-1)/(p-1) >= N`.
fn analytic_tail(p: u64, n: u32) -> u64 {
    // (m-1)(p-3) >= 2N(p-1)
    let need = 2 * n as u64 * (p - 1);
    need.div_ceil(p - 3) + 2
}

/// Number of terms summed by [`mat_exp`] for the given prime and precision.
pub fn exp_terms(p: u64, n: u32) -> u64 {
    truncation(n, analytic_tail(p, n), |m| (m / 2) as i64 - vp_factorial(p, m) as i64)
}

/// Number of terms summed by [`mat_log`] (indices `1..log_terms`).
pub fn log_terms(p: u64, n: u32) -> u64 {
    truncation(n, analytic_tail(p, n), |m| {
        if m == 0 {
            i64::MIN
        } else {
            (m / 2) as i64 - vp(p, m) as i64
        }
    })
    .max(1)
}

fn check_admissible(e: &PMatrix, what: &str) -> Result<()> {
    let c = e.ctx();
    if c.p() < 5 {
        return Err(Error::ConvergenceViolated(format!(
            "{what} needs p >= 5, got p = {}",
            c.p()
        )));
    }
    if !e.is_square() {
        return Err(Error::DimensionMismatch(format!("{what} of a non-square matrix")));
    }
    let sq = e.mul(e)?;
    if sq.entries().iter().any(|&x| x % c.p() != 0) {
        return Err(Error::ConvergenceViolated(format!(
            "{what}: square of the argument is not divisible by p"
        )));
    }
    Ok(())
}

fn guarded(ctx: &PadicContext, guard: u32) -> Result<PadicContext> {
    ctx.with_precision(ctx.precision() + guard).map_err(|_| {
        Error::ConvergenceViolated(format!("guard digits overflow the modulus for {ctx}"))
    })
}

/// `sum_{n < n0} A^n / n!` for `A^2 = 0 mod p`, `p >= 5`.
pub fn mat_exp(a: &PMatrix) -> Result<PMatrix> {
    check_admissible(a, "mat_exp")?;
    let c = *a.ctx();
    let p = c.p();
    let terms = exp_terms(p, c.precision());
    let guard = vp_factorial(p, terms.saturating_sub(1));
    let wide = guarded(&c, guard)?;
    let aw = a.to_context(&wide);
    let mut acc = PMatrix::identity(&c, a.rows());
    let mut power = PMatrix::identity(&wide, a.rows());
    let mut unit_fact: u64 = 1 % c.modulus();
    for m in 1..terms {
        power = power.mul(&aw)?;
        let v = vp_factorial(p, m);
        let mut k = m;
        while k % p == 0 {
            k /= p;
        }
        unit_fact = c.mul(unit_fact, k % c.modulus());
        let inv = c.inv(unit_fact).expect("unit");
        let term = divide_exact(&power, v, &c).scale(inv);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `sum_{n >= 1} (-1)^(n-1) (M - I)^n / n` for `(M - I)^2 = 0 mod p`, `p >= 5`.
pub fn mat_log(m: &PMatrix) -> Result<PMatrix> {
    let c = *m.ctx();
    if !m.is_square() {
        return Err(Error::DimensionMismatch("mat_log of a non-square matrix".into()));
    }
    let e = m.sub(&PMatrix::identity(&c, m.rows()))?;
    check_admissible(&e, "mat_log")?;
    let p = c.p();
    let terms = log_terms(p, c.precision());
    let guard = (1..terms).map(|k| vp(p, k)).max().unwrap_or(0);
    let wide = guarded(&c, guard)?;
    let ew = e.to_context(&wide);
    let mut acc = PMatrix::zeros(&c, m.rows(), m.rows());
    let mut power = PMatrix::identity(&wide, m.rows());
    for k in 1..terms {
        power = power.mul(&ew)?;
        let v = vp(p, k);
        let mut unit = k;
        while unit % p == 0 {
            unit /= p;
        }
        let inv = c.inv(unit % c.modulus()).expect("unit");
        let mut term = divide_exact(&power, v, &c).scale(inv);
        if k % 2 == 0 {
            term = term.neg();
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Divide every entry of a wide-context matrix by `p^v` and truncate.
fn divide_exact(m: &PMatrix, v: u32, target: &PadicContext) -> PMatrix {
    let wide = m.ctx();
    let data = m
        .entries()
        .iter()
        .map(|&x| {
            debug_assert!(wide.valuation(x) >= v || x == 0);
            wide.div_p_pow(x, v) % target.modulus()
        })
        .collect();
    PMatrix::from_residues(target, m.rows(), m.cols(), data)
}

/// Least `k` with `M^(p^k) = I` at precision, if `M` is unipotent mod `p`.
pub fn pro_p_order(m: &PMatrix) -> Result<u32> {
    let c = m.ctx();
    if !m.is_square() {
        return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
    }
    let n = m.rows();
    let e = m.sub(&PMatrix::identity(c, n))?;
    let nil = e.pow(n as u64);
    if nil.entries().iter().any(|&x| x % c.p() != 0) {
        return Err(Error::NotProP("M - I is not nilpotent mod p".into()));
    }
    // (M - I)^n = 0 mod p, so M^(p^k) = I once p^k >= n and then each
    // further p-th power gains a digit (two once p^k > n); N + n rounds bound it.
    let bound = c.precision() + n as u32 + 2;
    let mut power = m.clone();
    for k in 0..=bound {
        if power.is_identity() {
            return Ok(k);
        }
        power = power.pow(c.p());
    }
    Err(Error::NotProP(format!(
        "M^(p^k) did not reach the identity for k <= {bound}"
    )))
}

/// `M^lambda` for a `p`-adic exponent, `M` unipotent mod `p`.
pub fn mat_pow_padic(m: &PMatrix, lambda: &PadicScalar) -> Result<PMatrix> {
    m.ctx().check_compatible(lambda.ctx())?;
    let k = pro_p_order(m)?;
    let c = m.ctx();
    let e = if k <= c.precision() {
        lambda.value() % (c.p() as u128).pow(k) as u64
    } else {
        // the order exceeds the precision of lambda; the representative in
        // [0, p^N) is the best available and the caller's exponent is only
        // determined mod p^N anyway
        lambda.value()
    };
    Ok(m.pow(e))
}

/// `M^n` for a signed integer exponent.
pub fn mat_pow_int(m: &PMatrix, n: i128) -> Result<PMatrix> {
    if n >= 0 {
        Ok(m.pow(n as u64))
    } else {
        Ok(m.inverse()?.pow(n.unsigned_abs() as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> PadicContext {
        PadicContext::new(5, n).unwrap()
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let c = ctx(4);
        assert!(mat_exp(&PMatrix::zeros(&c, 2, 2)).unwrap().is_identity());
    }

    #[test]
    fn exp_of_square_zero() {
        let c = ctx(4);
        let a = PMatrix::from_rows(&c, &[[0, 0], [7, 0]]);
        let expected = PMatrix::identity(&c, 2).add(&a).unwrap();
        assert_eq!(mat_exp(&a).unwrap(), expected);
        assert_eq!(mat_log(&expected).unwrap(), a);
    }

    #[test]
    fn log_of_identity() {
        let c = ctx(4);
        assert!(mat_log(&PMatrix::identity(&c, 3)).unwrap().is_zero());
    }

    #[test]
    fn scalar_exp_matches_series_by_hand() {
        // exp(5) mod 5^3: 1 + 5 + 25/2 + 125/6 + ... = 1 + 5 + 25*63 mod 125
        let c = ctx(3);
        let a = PMatrix::from_rows(&c, &[[5]]);
        let expected = c.reduce_int(1 + 5 + 25 * 63);
        assert_eq!(mat_exp(&a).unwrap().get(0, 0), expected);
    }

    #[test]
    fn requires_p_at_least_five() {
        let c = PadicContext::new(3, 4).unwrap();
        let a = PMatrix::zeros(&c, 2, 2);
        assert!(matches!(mat_exp(&a), Err(Error::ConvergenceViolated(_))));
    }

    #[test]
    fn rejects_non_nilpotent_mod_p() {
        let c = ctx(3);
        let a = PMatrix::from_rows(&c, &[[1, 0], [0, 0]]);
        assert!(matches!(mat_exp(&a), Err(Error::ConvergenceViolated(_))));
    }

    #[test]
    fn padic_powers() {
        let c = ctx(3);
        let m = PMatrix::from_rows(&c, &[[1, 1], [0, 1]]);
        assert_eq!(mat_pow_padic(&m, &c.scalar(1)).unwrap(), m);
        assert!(mat_pow_padic(&m, &c.scalar(0)).unwrap().is_identity());
        let inv = mat_pow_padic(&m, &c.scalar(-1)).unwrap();
        assert!(inv.mul(&m).unwrap().is_identity());
        assert_eq!(pro_p_order(&m).unwrap(), 3);
    }

    #[test]
    fn non_unipotent_is_rejected() {
        let c = ctx(3);
        let m = PMatrix::from_rows(&c, &[[2, 0], [0, 1]]);
        assert!(matches!(pro_p_order(&m), Err(Error::NotProP(_))));
    }
}
