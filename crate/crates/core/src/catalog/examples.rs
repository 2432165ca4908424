//! Named examples: the order `p^3` pair, the dimension-`p` counterexamples,
//! the insoluble three-dimensional lattices, the Levi example and the
//! two-dimensional pro-2 groups.

use serde::{Deserialize, Serialize};

use crate::bch::FiniteLieRing;
use crate::catalog::soluble::lattice_from_action;
use crate::error::{Error, Result};
use crate::group::SemidirectGroup;
use crate::lie::Lattice;
use crate::linalg::{PMatrix, Span};
use crate::padic::PadicContext;

/// The two nilpotent Lie rings of order `p^3` that are not abelian.
#[derive(Clone, Debug)]
pub struct P3Pair {
    /// `p x = p^2 y = 0`, `[y, x] = p y`
    pub l1: FiniteLieRing,
    /// `[x, y] = z` central, exponent `p`
    pub l2: FiniteLieRing,
}

pub fn make_p3_pair(p: u64) -> Result<P3Pair> {
    if p < 5 {
        return Err(Error::BadParameter("the order p^3 pair needs p >= 5".into()));
    }
    let pi = p as i128;
    let l1 = FiniteLieRing::new(p, vec![1, 2], &["x", "y"], &[(1, 0, vec![0, pi])])?;
    let l2 = FiniteLieRing::new(p, vec![1, 1, 1], &["x", "y", "z"], &[(0, 1, vec![0, 0, 1])])?;
    Ok(P3Pair { l1, l2 })
}

/// Fiber matrix `E` with `e_i E = e_(i+1)` and `e_(p-1) E = p e_1`.
pub fn dim_p_matrix(ctx: &PadicContext) -> PMatrix {
    let n = ctx.p() as usize - 1;
    let mut e = PMatrix::zeros(ctx, n, n);
    for i in 0..n - 1 {
        e.set(i, i + 1, 1);
    }
    e.set(n - 1, 0, ctx.p() % ctx.modulus());
    e
}

/// The group `Z_p ⋉ Z_p^(p-1)` acting by `1 + E` and the lattice with
/// `[y_i, x] = y_i E`, both of dimension `p`.
#[derive(Clone, Debug)]
pub struct DimPExample {
    pub group: SemidirectGroup,
    pub lattice: Lattice,
}

pub fn make_example_dim_p(ctx: &PadicContext) -> Result<DimPExample> {
    if ctx.p() < 5 {
        return Err(Error::BadParameter("the dimension-p example needs p >= 5".into()));
    }
    let e = dim_p_matrix(ctx);
    let m = PMatrix::identity(ctx, e.rows()).add(&e)?;
    Ok(DimPExample {
        group: SemidirectGroup::new(m)?,
        lattice: lattice_from_action(&e)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Insoluble {
    /// `[x,y] = h, [x,h] = -2p x, [y,h] = 2p y`
    Sl2Tri,
    /// `[x,y] = p z, [x,z] = p ρ y, [y,z] = -x`
    Sl1Delta,
}

pub fn make_insoluble(ctx: &PadicContext, which: Insoluble) -> Result<Lattice> {
    if ctx.p() < 5 {
        return Err(Error::BadParameter("the insoluble lattices need p >= 5".into()));
    }
    let p = ctx.p() as i128;
    match which {
        Insoluble::Sl2Tri => Lattice::from_brackets(
            ctx,
            &["x", "y", "h"],
            &[
                (0, 1, vec![0, 0, 1]),
                (0, 2, vec![-2 * p, 0, 0]),
                (1, 2, vec![0, 2 * p, 0]),
            ],
        ),
        Insoluble::Sl1Delta => {
            let rho = ctx.rho().expect("odd prime context") as i128;
            Lattice::from_brackets(
                ctx,
                &["x", "y", "z"],
                &[
                    (0, 1, vec![0, 0, p]),
                    (0, 2, vec![0, p * rho, 0]),
                    (1, 2, vec![-1, 0, 0]),
                ],
            )
        }
    }
}

/// The five-dimensional powerful lattice with basis `x, y, h, a, b` inside
/// `gl_3(Z_p)` whose radical `Z_p a + Z_p b` has no complement.
pub fn make_levi_example(ctx: &PadicContext, k: u32) -> Result<Lattice> {
    if k < 2 {
        return Err(Error::BadParameter("k must be at least 2".into()));
    }
    if ctx.p() < 5 {
        return Err(Error::BadParameter("the Levi example needs p >= 5".into()));
    }
    let q = ctx.p_pow(k) as i128;
    let p = ctx.p() as i128;
    Lattice::from_brackets(
        ctx,
        &["x", "y", "h", "a", "b"],
        &[
            (0, 1, vec![0, 0, q, 0, 0]),
            (0, 2, vec![-2 * q, 0, 0, 3 * p, 0]),
            (0, 3, vec![0, 0, 0, 0, -q]),
            (1, 2, vec![0, 2 * q, 0, 0, 0]),
            (1, 4, vec![0, 0, 0, -q, 0]),
            (2, 3, vec![0, 0, 0, -q, 0]),
            (2, 4, vec![0, 0, 0, 0, q]),
        ],
    )
}

/// Outcome of the no-complement check over lifts `h + r_1`, `x + r_2` with
/// `r_1, r_2` running through `R / p^k R`.
#[derive(Clone, Debug, Serialize)]
pub struct LeviReport {
    pub powerful: bool,
    pub radical_is_ab: bool,
    pub lifts_checked: u64,
    /// `[h~, x~] ≡ [h, x] mod p^k R` for every lift
    pub bracket_congruence: bool,
    /// `[h, x] - 2 p^k x~ ∈ R` for every lift
    pub defect_in_radical: bool,
    /// `[h~, x~] - 2 p^k x~ ∉ p^k R` for every lift
    pub defect_persists: bool,
}

impl LeviReport {
    pub fn passed(&self) -> bool {
        self.powerful
            && self.radical_is_ab
            && self.bracket_congruence
            && self.defect_in_radical
            && self.defect_persists
    }
}

pub fn levi_check(l: &Lattice, k: u32) -> Result<LeviReport> {
    let c = *l.ctx();
    let full = l.full_span();
    let powerful = l.is_powerful();
    let e = |i: usize| crate::linalg::unit_vector(5, i);
    let r_span = Span::from_generators(&c, 5, [e(3), e(4)]);
    let radical_is_ab = l.soluble_radical()? == r_span;
    let pk_r = r_span.scale(k);
    let (x, h) = (e(0), e(2));
    let hx = l.bracket(&h, &x);
    let two_pk = c.mul(2, c.p_pow(k));
    let q = c.p().pow(k);
    let mut report = LeviReport {
        powerful,
        radical_is_ab,
        lifts_checked: 0,
        bracket_congruence: true,
        defect_in_radical: true,
        defect_persists: true,
    };
    let lift = |base: &[u64], alpha: u64, beta: u64| {
        let mut v = base.to_vec();
        v[3] = c.add(v[3], alpha);
        v[4] = c.add(v[4], beta);
        v
    };
    let sub = |u: &[u64], v: &[u64]| -> Vec<u64> { u.iter().zip(v).map(|(&a, &b)| c.sub(a, b)).collect() };
    for a2 in 0..q {
        for b2 in 0..q {
            let xt = lift(&x, a2, b2);
            let shifted: Vec<u64> = xt.iter().map(|&v| c.mul(two_pk, v)).collect();
            if !r_span.member(&sub(&hx, &shifted)) {
                report.defect_in_radical = false;
            }
            for a1 in 0..q {
                for b1 in 0..q {
                    let ht = lift(&h, a1, b1);
                    let br = l.bracket(&ht, &xt);
                    report.lifts_checked += 1;
                    if !pk_r.member(&sub(&br, &hx)) {
                        report.bracket_congruence = false;
                    }
                    if pk_r.member(&sub(&br, &shifted)) {
                        report.defect_persists = false;
                    }
                }
            }
        }
    }
    debug_assert!(full.contains(&r_span));
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// `G_+(s)`: `x` acts on `y` by `1 + 2^s`; `G_-(s)`: by `-1 - 2^s`.
/// `s = None` stands for `2^∞ = 0`.
pub fn make_p2_group(precision: u32, sign: Sign, s: Option<u32>) -> Result<SemidirectGroup> {
    let ctx = PadicContext::dyadic(precision)?;
    if s.is_some_and(|s| s < 2) {
        return Err(Error::BadParameter("s must be at least 2".into()));
    }
    let t = s.map_or(0, |s| ctx.p_pow(s) as i128);
    let m = match sign {
        Sign::Plus => 1 + t,
        Sign::Minus => -1 - t,
    };
    SemidirectGroup::new(PMatrix::from_rows(&ctx, &[[m]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_p_power_is_p() {
        let c = PadicContext::new(5, 4).unwrap();
        let e = dim_p_matrix(&c);
        let id = PMatrix::identity(&c, 4);
        assert_eq!(e.pow(4), id.scale(5));
    }

    #[test]
    fn examples_validate() {
        let c = PadicContext::new(5, 6).unwrap();
        make_example_dim_p(&c).unwrap();
        make_insoluble(&c, Insoluble::Sl2Tri).unwrap();
        make_insoluble(&c, Insoluble::Sl1Delta).unwrap();
        make_levi_example(&c, 2).unwrap();
        make_p3_pair(5).unwrap();
        assert!(make_levi_example(&c, 1).is_err());
    }

    #[test]
    fn levi_small_grid() {
        let c = PadicContext::new(5, 16).unwrap();
        let l = make_levi_example(&c, 2).unwrap();
        let rep = levi_check(&l, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.lifts_checked, 5u64.pow(8));
    }

    #[test]
    fn p2_torsion() {
        let plus = make_p2_group(8, Sign::Plus, Some(3)).unwrap();
        assert_eq!(plus.abelianization_torsion().unwrap(), 3);
        let minus = make_p2_group(8, Sign::Minus, Some(3)).unwrap();
        assert_eq!(minus.abelianization_torsion().unwrap(), 1);
        let flat = make_p2_group(8, Sign::Plus, None).unwrap();
        assert!(flat.action().is_identity());
        assert!(make_p2_group(8, Sign::Plus, Some(1)).is_err());
    }
}
