//! Residue arithmetic in `Z/p^N`, the finite-precision model of `Z_p`.
//!
//! A [`PadicContext`] fixes the prime, the precision exponent `N` and a
//! quadratic non-residue `rho`. Scalars carry their context and refuse to
//! combine with scalars from a different one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus we accept; products are formed in `u128`.
const MAX_MODULUS: u128 = 1 << 62;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest positive integer whose residue mod `p` is not a square.
pub fn find_nonresidue(p: u64) -> u64 {
    assert!(p > 2 && is_prime(p), "find_nonresidue needs an odd prime");
    (2..p)
        .find(|&a| !is_square_mod_p(a, p))
        .expect("every odd prime has a non-residue")
}

/// Euler's criterion; `a` must be prime to `p`.
pub fn is_square_mod_p(a: u64, p: u64) -> bool {
    let a = a % p;
    if a == 0 {
        return true;
    }
    if p == 2 {
        return true;
    }
    pow_mod(a, (p - 1) / 2, p) == 1
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// The ambient ring `Z/p^N` together with a fixed non-residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    precision: u32,
    modulus: u64,
    rho: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct ContextRepr {
    p: u64,
    precision: u32,
}

impl Serialize for PadicContext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ContextRepr {
            p: self.p,
            precision: self.precision,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PadicContext {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ContextRepr::deserialize(d)?;
        let ctx = if repr.p == 2 {
            PadicContext::dyadic(repr.precision)
        } else {
            PadicContext::new(repr.p, repr.precision)
        };
        ctx.map_err(serde::de::Error::custom)
    }
}

impl PadicContext {
    /// Context for an odd prime with the smallest non-residue as `rho`.
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not an odd prime")));
        }
        Self::build(p, precision, Some(find_nonresidue(p)))
    }

    /// Context with an explicit non-residue.
    pub fn with_rho(p: u64, precision: u32, rho: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not an odd prime")));
        }
        if rho.is_multiple_of(p) || is_square_mod_p(rho, p) {
            return Err(Error::InvalidContext(format!(
                "rho = {rho} is not a non-residue mod {p}"
            )));
        }
        Self::build(p, precision, Some(rho))
    }

    /// The `p = 2` context used only by the dyadic catalog constructors.
    pub fn dyadic(precision: u32) -> Result<Self> {
        Self::build(2, precision, None)
    }

    fn build(p: u64, precision: u32, rho: Option<u64>) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidContext("precision must be at least 1".into()));
        }
        let mut m: u128 = 1;
        for _ in 0..precision {
            m *= p as u128;
            if m > MAX_MODULUS {
                return Err(Error::InvalidContext(format!(
                    "{p}^{precision} exceeds the supported modulus"
                )));
            }
        }
        let modulus = m as u64;
        Ok(Self {
            p,
            precision,
            modulus,
            rho: rho.map(|r| r % modulus),
        })
    }

    /// Same prime and non-residue, different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Self::build(self.p, precision, self.rho)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rho(&self) -> Option<u64> {
        self.rho
    }

    /// Arithmetic compatibility: same prime and same precision.
    pub fn compatible(&self, other: &Self) -> bool {
        self.p == other.p && self.precision == other.precision
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    // Raw residue arithmetic. Inputs are assumed reduced.

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.modulus as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.modulus - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.modulus)
    }

    /// Residue of an arbitrary signed integer.
    pub fn reduce_int(&self, x: i128) -> u64 {
        x.rem_euclid(self.modulus as i128) as u64
    }

    /// `p^k` as a residue; zero once `k >= N`.
    pub fn p_pow(&self, k: u32) -> u64 {
        if k >= self.precision {
            0
        } else {
            (self.p as u128).pow(k) as u64
        }
    }

    /// Largest `e <= N` with `p^e | a`.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.precision;
        }
        let mut v = 0;
        let mut x = a;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    /// Inverse of a unit by the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_int(t0))
    }

    /// Exact division by `p^k`, valid when `p^k` divides the representative.
    /// The quotient is only meaningful modulo `p^(N-k)`.
    pub fn div_p_pow(&self, a: u64, k: u32) -> u64 {
        if k == 0 {
            return a;
        }
        let pk = (self.p as u128).pow(k) as u64;
        debug_assert_eq!(a % pk, 0, "{a} not divisible by p^{k}");
        a / pk
    }

    /// Write `a = p^v * u` and return the unit part `u` (as a residue).
    pub fn unit_part(&self, a: u64) -> u64 {
        let v = self.valuation(a);
        if v >= self.precision {
            return 0;
        }
        self.div_p_pow(a, v)
    }

    /// Representative in the balanced range, used for display of signs.
    pub fn signed(&self, a: u64) -> i128 {
        if a > self.modulus / 2 {
            a as i128 - self.modulus as i128
        } else {
            a as i128
        }
    }

    pub fn scalar(&self, value: i128) -> PadicScalar {
        PadicScalar {
            ctx: *self,
            value: self.reduce_int(value),
        }
    }

    pub fn zero(&self) -> PadicScalar {
        self.scalar(0)
    }

    pub fn one(&self) -> PadicScalar {
        self.scalar(1)
    }
}

impl fmt::Display for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.precision)
    }
}

/// An element of `Z/p^N`, tagged with its context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    ctx: PadicContext,
    value: u64,
}

impl PadicScalar {
    pub fn new(ctx: &PadicContext, value: i128) -> Self {
        ctx.scalar(value)
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    /// Canonical representative in `[0, p^N)`.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn valuation(&self) -> u32 {
        self.ctx.valuation(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        self.ctx.is_unit(self.value)
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        self.ctx
            .inv(self.value)
            .map(|value| Self {
                ctx: self.ctx,
                value,
            })
            .ok_or(Error::NotAUnit(self.value))
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            ctx: self.ctx,
            value: self.ctx.pow(self.value, e),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.ctx.check_compatible(&rhs.ctx)?;
        Ok(Self {
            ctx: self.ctx,
            value: self.ctx.add(self.value, rhs.value),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.ctx.check_compatible(&rhs.ctx)?;
        Ok(Self {
            ctx: self.ctx,
            value: self.ctx.sub(self.value, rhs.value),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.ctx.check_compatible(&rhs.ctx)?;
        Ok(Self {
            ctx: self.ctx,
            value: self.ctx.mul(self.value, rhs.value),
        })
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for PadicScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.value)
    }
}

// Operator forms panic on a context mismatch, like integer overflow does in
// debug builds; use the `checked_*` methods to get an `Err` instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: PadicScalar) -> PadicScalar {
                self.$checked(&rhs).expect("scalar context mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar {
            ctx: self.ctx,
            value: self.ctx.neg(self.value),
        }
    }
}

/// A rational number, reducible into `Z/p^N` when its denominator is prime
/// to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalCoeff(Ratio<i64>);

impl RationalCoeff {
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        Self(Ratio::new(numerator, denominator))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        Self(r)
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    /// Always positive after normalisation.
    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn one() -> Self {
        Self(Ratio::one())
    }

    /// `numerator * denominator^{-1} mod p^N`.
    pub fn reduce(&self, ctx: &PadicContext) -> Result<PadicScalar> {
        let den = self.denominator();
        if (den as u64).is_multiple_of(ctx.p()) {
            return Err(Error::DenominatorDivisibleByP(den));
        }
        let num = ctx.scalar(self.numerator() as i128);
        let inv = ctx.scalar(den as i128).unit_inverse()?;
        Ok(num * inv)
    }
}

impl Add for RationalCoeff {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Mul for RationalCoeff {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Neg for RationalCoeff {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl fmt::Display for RationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let c = ctx(5, 2);
        assert_eq!(RationalCoeff::new(1, 2).reduce(&c).unwrap().value(), 13);
        assert_eq!(RationalCoeff::new(0, 1).reduce(&c).unwrap().value(), 0);
        assert_eq!(
            RationalCoeff::new(1, 5).reduce(&c),
            Err(Error::DenominatorDivisibleByP(5))
        );
        // sign lives in the numerator after normalisation
        assert_eq!(
            RationalCoeff::new(1, -12).reduce(&c).unwrap(),
            -RationalCoeff::new(1, 12).reduce(&c).unwrap()
        );
    }

    #[test]
    fn valuation_examples() {
        let c = ctx(5, 4);
        assert_eq!(c.scalar(25).valuation(), 2);
        assert_eq!(c.scalar(0).valuation(), 4);
        assert_eq!(c.scalar(3).valuation(), 0);
    }

    #[test]
    fn unit_inverse_examples() {
        let c = ctx(5, 2);
        assert_eq!(c.scalar(2).unit_inverse().unwrap().value(), 13);
        assert_eq!(c.scalar(1).unit_inverse().unwrap().value(), 1);
        assert_eq!(c.scalar(5).unit_inverse(), Err(Error::NotAUnit(5)));
    }

    #[test]
    fn nonresidues() {
        assert_eq!(find_nonresidue(5), 2);
        assert_eq!(find_nonresidue(7), 3);
        assert_eq!(find_nonresidue(3), 2);
        assert_eq!(find_nonresidue(11), 2);
    }

    #[test]
    fn context_validation() {
        assert!(PadicContext::new(4, 2).is_err());
        assert!(PadicContext::new(2, 2).is_err());
        assert!(PadicContext::new(5, 0).is_err());
        assert!(PadicContext::new(5, 40).is_err());
        assert!(PadicContext::with_rho(5, 2, 4).is_err());
        assert_eq!(PadicContext::with_rho(5, 2, 3).unwrap().rho(), Some(3));
        assert_eq!(PadicContext::dyadic(3).unwrap().modulus(), 8);
    }

    #[test]
    fn cross_context_is_an_error() {
        let a = ctx(5, 2).scalar(3);
        let b = ctx(5, 3).scalar(3);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::ContextMismatch { .. })
        ));
        let c = ctx(7, 2).scalar(3);
        assert!(a.checked_mul(&c).is_err());
    }

    #[test]
    fn context_json() {
        let c = ctx(5, 3);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"p":5,"precision":3}"#);
        let back: PadicContext = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&c.scalar(-1)).unwrap(), "124");
    }
}
