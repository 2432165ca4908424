//! Multiplicative similarity in `gl_2(Z_p)`: `A ~ u B^-1 A B` for a unit `u`
//! and an invertible `B`.
//!
//! A matrix that is not scalar modulo `p` is determined up to conjugacy by
//! its characteristic polynomial, so after normalizing the unit the class is
//! read off from trace and determinant.

mod orbit;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::PMatrix;
use crate::padic::{is_square_mod_p, PadicContext};

pub use orbit::{brute_force_orbit, Orbit, OrbitPartition};

/// A residue `value mod p^precision`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Residue {
    #[serde(skip)]
    pub p: u64,
    pub value: u64,
    pub precision: u32,
}

impl Residue {
    fn new(ctx: &PadicContext, value: u64, precision: u32) -> Self {
        let m = ctx.p().pow(precision);
        Self {
            p: ctx.p(),
            value: value % m,
            precision,
        }
    }

    /// Equality modulo `p^min(precisions)`.
    pub fn agrees(&self, other: &Self) -> bool {
        let m = self.p.pow(self.precision.min(other.precision));
        self.p == other.p && self.value % m == other.value % m
    }
}

/// Normal form of a multiplicative-similarity class: the class of `p^s A_0`
/// for a core matrix `A_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SimilarityDescriptor {
    Zero,
    /// `p^s ((0,0),(1,0))`
    Nilpotent { s: u32 },
    /// `p^s I`
    Scalar { s: u32 },
    /// `p^s (I + p^r ((0,d),(1,0)))`, `r >= 1`
    ScalarPlus { s: u32, r: u32, d: Residue },
    /// `p^s ((0,d),(1,p^r))`
    TraceCore { s: u32, r: u32, d: Residue },
    /// `p^s ((0,p^r),(1,0))` or `p^s ((0,ρp^r),(1,0))`
    ZeroTrace { s: u32, r: u32, square: bool },
}

impl SimilarityDescriptor {
    pub fn s(&self) -> Option<u32> {
        match *self {
            Self::Zero => None,
            Self::Nilpotent { s }
            | Self::Scalar { s }
            | Self::ScalarPlus { s, .. }
            | Self::TraceCore { s, .. }
            | Self::ZeroTrace { s, .. } => Some(s),
        }
    }

    pub fn r(&self) -> Option<u32> {
        match *self {
            Self::ScalarPlus { r, .. } | Self::TraceCore { r, .. } | Self::ZeroTrace { r, .. } => Some(r),
            _ => None,
        }
    }

    /// Equality with `d` compared at the common precision.
    pub fn same_class(&self, other: &Self) -> bool {
        use SimilarityDescriptor::*;
        match (self, other) {
            (ScalarPlus { s, r, d }, ScalarPlus { s: s2, r: r2, d: d2 })
            | (TraceCore { s, r, d }, TraceCore { s: s2, r: r2, d: d2 }) => {
                s == s2 && r == r2 && d.agrees(d2)
            }
            _ => self == other,
        }
    }

    /// The normal-form matrix, with `d` lifted to `[0, p^precision)` and the
    /// non-square case using the context's `ρ`.
    pub fn canonical_matrix(&self, ctx: &PadicContext) -> PMatrix {
        let p = |k: u32| ctx.p_pow(k) as i128;
        let scaled = |s: u32, rows: [[i128; 2]; 2]| {
            let m = PMatrix::from_rows(ctx, &rows);
            m.scale(ctx.p_pow(s))
        };
        match *self {
            Self::Zero => PMatrix::zeros(ctx, 2, 2),
            Self::Nilpotent { s } => scaled(s, [[0, 0], [1, 0]]),
            Self::Scalar { s } => scaled(s, [[1, 0], [0, 1]]),
            Self::ScalarPlus { s, r, d } => {
                scaled(s, [[1, p(r) * d.value as i128], [p(r), 1]])
            }
            Self::TraceCore { s, r, d } => scaled(s, [[0, d.value as i128], [1, p(r)]]),
            Self::ZeroTrace { s, r, square } => {
                let eps = if square { 1 } else { ctx.rho().unwrap_or(1) as i128 };
                scaled(s, [[0, eps * p(r)], [1, 0]])
            }
        }
    }
}

impl fmt::Display for SimilarityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dd = |d: &Residue| format!("d={} (mod {}^{})", d.value, d.p, d.precision);
        match self {
            Self::Zero => write!(f, "zero"),
            Self::Nilpotent { s } => write!(f, "nilpotent s={s}"),
            Self::Scalar { s } => write!(f, "scalar s={s}"),
            Self::ScalarPlus { s, r, d } => write!(f, "scalarplus s={s} r={r} {}", dd(d)),
            Self::TraceCore { s, r, d } => write!(f, "tracecore s={s} r={r} {}", dd(d)),
            Self::ZeroTrace { s, r, square } => {
                let res = if *square { "square" } else { "nonsquare" };
                write!(f, "zerotrace s={s} r={r} {res}")
            }
        }
    }
}

fn check_input(a: &PMatrix) -> Result<()> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a 2x2 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.ctx().p() < 3 {
        return Err(Error::BadParameter("the classifier needs an odd prime".into()));
    }
    Ok(())
}

/// Classify at precision, refusing when `s` (plus `r`) leaves fewer than two
/// digits of the core matrix.
pub fn classify(a: &PMatrix) -> Result<SimilarityDescriptor> {
    let desc = classify_mod(a)?;
    let n = a.ctx().precision();
    if let Some(s) = desc.s() {
        let used = s + desc.r().unwrap_or(0);
        if used + 1 >= n {
            return Err(Error::PrecisionExhausted(format!(
                "{desc} uses {used} of {n} digits"
            )));
        }
    }
    Ok(desc)
}

/// Classify treating the entries as exact residues mod `p^N`; always
/// succeeds on odd-prime 2x2 input.
pub fn classify_mod(a: &PMatrix) -> Result<SimilarityDescriptor> {
    check_input(a)?;
    let c = *a.ctx();
    let n = c.precision();
    let entries = a.entries();
    let Some(s) = entries.iter().filter(|&&x| x != 0).map(|&x| c.valuation(x)).min() else {
        return Ok(SimilarityDescriptor::Zero);
    };
    let m = n - s;
    let cm = c.with_precision(m)?;
    let a0: Vec<u64> = entries.iter().map(|&x| c.div_p_pow(x, s) % cm.modulus()).collect();
    let (a00, a01, a10, a11) = (a0[0], a0[1], a0[2], a0[3]);
    let diff = cm.sub(a00, a11);
    let tr = cm.add(a00, a11);
    let det = cm.sub(cm.mul(a00, a11), cm.mul(a01, a10));

    let scalar_depth = [a01, a10, diff].iter().map(|&x| cm.valuation(x)).min().expect("three");
    if scalar_depth >= m {
        return Ok(SimilarityDescriptor::Scalar { s });
    }
    if scalar_depth >= 1 {
        // scalar mod p^r, not mod p^(r+1): normalize to trace 2
        let r = scalar_depth;
        let u = cm.inv(tr).expect("trace is a unit for odd p");
        let u = cm.mul(u, 2);
        let cr = cm.with_precision(m - r)?;
        let x: Vec<u64> = [a00, a01, a10, a11]
            .iter()
            .map(|&e| cm.mul(u, e))
            .collect();
        let a2: Vec<u64> = [cm.sub(x[0], 1), x[1], x[2], cm.sub(x[3], 1)]
            .iter()
            .map(|&e| cm.div_p_pow(e, r) % cr.modulus())
            .collect();
        let det2 = cr.sub(cr.mul(a2[0], a2[3]), cr.mul(a2[1], a2[2]));
        let d = Residue::new(&c, cr.neg(det2), m - r);
        return Ok(SimilarityDescriptor::ScalarPlus { s, r, d });
    }
    if tr != 0 {
        let r = cm.valuation(tr);
        let unit = cm.div_p_pow(tr, r);
        let u = cm.inv(unit).expect("unit part");
        let d = cm.neg(cm.mul(cm.mul(u, u), det));
        let vd = cm.valuation(d);
        let precision = m.min((m - r).saturating_add(vd));
        let d = Residue::new(&c, d, precision);
        return Ok(SimilarityDescriptor::TraceCore { s, r, d });
    }
    if det == 0 {
        return Ok(SimilarityDescriptor::Nilpotent { s });
    }
    let r = cm.valuation(det);
    let w = cm.neg(cm.div_p_pow(det, r)) % c.p();
    Ok(SimilarityDescriptor::ZeroTrace {
        s,
        r,
        square: is_square_mod_p(w, c.p()),
    })
}

/// Descriptor equality at common precision.
pub fn similar(a: &PMatrix, b: &PMatrix) -> Result<bool> {
    a.ctx().check_compatible(b.ctx())?;
    Ok(classify(a)?.same_class(&classify(b)?))
}

/// `A^2 ≡ 0 mod p`, the residual-nilpotence criterion for the attached lattice.
pub fn is_residually_nilpotent(a: &PMatrix) -> bool {
    let sq = a.mul(a).expect("square matrix");
    sq.entries().iter().all(|&x| x % a.ctx().p() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> PadicContext {
        PadicContext::new(5, n).unwrap()
    }

    fn m(c: &PadicContext, rows: [[i128; 2]; 2]) -> PMatrix {
        PMatrix::from_rows(c, &rows)
    }

    #[test]
    fn basic_cases() {
        let c = ctx(3);
        assert_eq!(classify(&m(&c, [[0, 0], [0, 0]])).unwrap(), SimilarityDescriptor::Zero);
        assert_eq!(
            classify(&m(&c, [[0, 0], [5, 0]])).unwrap(),
            SimilarityDescriptor::Nilpotent { s: 1 }
        );
        assert_eq!(
            classify(&m(&c, [[2, 0], [0, 2]])).unwrap(),
            SimilarityDescriptor::Scalar { s: 0 }
        );
    }

    #[test]
    fn trace_core_example() {
        // trace 2, det 1; u = 1/2 gives d = -1/4 = 31 mod 125
        let c = ctx(3);
        let d = classify(&m(&c, [[1, 1], [0, 1]])).unwrap();
        assert_eq!(d.to_string(), "tracecore s=0 r=0 d=31 (mod 5^3)");
    }

    #[test]
    fn scalar_plus() {
        let c = ctx(5);
        let a = m(&c, [[1, 5 * 3], [5, 1]]);
        let d = classify(&a).unwrap();
        assert_eq!(d.to_string(), "scalarplus s=0 r=1 d=3 (mod 5^4)");
        assert!(d.same_class(&classify(&d.canonical_matrix(&c)).unwrap()));
    }

    #[test]
    fn zero_trace_residues() {
        let c = ctx(4);
        let sq = classify(&m(&c, [[0, 5], [1, 0]])).unwrap();
        assert_eq!(sq, SimilarityDescriptor::ZeroTrace { s: 0, r: 1, square: true });
        let non = classify(&m(&c, [[0, 10], [1, 0]])).unwrap();
        assert_eq!(non.to_string(), "zerotrace s=0 r=1 nonsquare");
    }

    #[test]
    fn precision_guard() {
        let c = ctx(3);
        assert!(matches!(
            classify(&m(&c, [[0, 0], [25, 0]])),
            Err(Error::PrecisionExhausted(_))
        ));
        assert!(classify_mod(&m(&c, [[0, 0], [25, 0]])).is_ok());
    }

    #[test]
    fn distinct_s_are_not_similar() {
        let c = ctx(4);
        assert!(!similar(&m(&c, [[0, 0], [1, 0]]), &m(&c, [[0, 0], [5, 0]])).unwrap());
    }

    #[test]
    fn canonical_matrices_are_fixed_points() {
        let c = ctx(6);
        let d = Residue::new(&c, 7, 6);
        for desc in [
            SimilarityDescriptor::Nilpotent { s: 1 },
            SimilarityDescriptor::Scalar { s: 2 },
            SimilarityDescriptor::TraceCore { s: 1, r: 0, d },
            SimilarityDescriptor::ZeroTrace { s: 0, r: 2, square: false },
        ] {
            let got = classify(&desc.canonical_matrix(&c)).unwrap();
            assert!(got.same_class(&desc), "{desc} -> {got}");
        }
    }

    #[test]
    fn rejects_p_two() {
        let c = PadicContext::dyadic(4).unwrap();
        assert!(classify(&PMatrix::identity(&c, 2)).is_err());
    }
}
