//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lazard_core::{PMatrix, PadicContext};
use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Ratio<i128>;

/// Truncated free associative algebra on `X = 0`, `Y = 1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    pub terms: BTreeMap<Vec<u8>, Q>,
}

impl Poly {
    pub fn letter(l: u8) -> Self {
        Self::monomial(vec![l], Q::from_integer(1))
    }

    pub fn monomial(w: Vec<u8>, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, c);
        Self { terms }
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new(), Q::from_integer(1))
    }

    pub fn add_scaled(&mut self, other: &Self, c: Q) {
        for (w, v) in &other.terms {
            let e = self.terms.entry(w.clone()).or_insert_with(|| Q::from_integer(0));
            *e += *v * c;
        }
        self.terms.retain(|_, v| *v != Q::from_integer(0));
    }

    pub fn mul(&self, other: &Self, max_weight: usize) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.len() + b.len() > max_weight {
                    continue;
                }
                let mut w = a.clone();
                w.extend(b);
                out.add_scaled(&Self::monomial(w, *x * *y), Q::from_integer(1));
            }
        }
        out
    }

    pub fn exp(&self, max_weight: usize) -> Self {
        let mut out = Self::one();
        let mut pow = Self::one();
        let mut fact: i128 = 1;
        for k in 1..=max_weight {
            pow = pow.mul(self, max_weight);
            fact *= k as i128;
            out.add_scaled(&pow, Q::new(1, fact));
        }
        out
    }

    /// `log(1 + z)` for `z` without constant term.
    pub fn log1p(z: &Self, max_weight: usize) -> Self {
        let mut out = Self::default();
        let mut pow = Self::one();
        for k in 1..=max_weight {
            pow = pow.mul(z, max_weight);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&pow, Q::new(sign, k as i128));
        }
        out
    }

    /// The left-normed commutator `[w_1, ..., w_m]` expanded.
    pub fn left_normed(word: &[u8]) -> Self {
        let mut acc = Self::letter(word[0]);
        for &l in &word[1..] {
            let x = Self::letter(l);
            let mut next = acc.mul(&x, usize::MAX);
            next.add_scaled(&x.mul(&acc, usize::MAX), Q::from_integer(-1));
            acc = next;
        }
        acc
    }
}

/// `log(exp X exp Y)` truncated at `max_weight`.
pub fn hausdorff_oracle(max_weight: usize) -> Poly {
    let ex = Poly::letter(0).exp(max_weight);
    let ey = Poly::letter(1).exp(max_weight);
    let mut z = ex.mul(&ey, max_weight);
    z.add_scaled(&Poly::one(), Q::from_integer(-1));
    Poly::log1p(&z, max_weight)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, ctx: &PadicContext, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..ctx.modulus())).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, ctx: &PadicContext, rows: usize, cols: usize) -> PMatrix {
    PMatrix::from_residues(ctx, rows, cols, random_vector(rng, ctx, rows * cols))
}

pub fn random_invertible(rng: &mut ChaCha8Rng, ctx: &PadicContext, n: usize) -> PMatrix {
    loop {
        let b = random_matrix(rng, ctx, n, n);
        if b.is_invertible() {
            return b;
        }
    }
}

pub fn random_unit(rng: &mut ChaCha8Rng, ctx: &PadicContext) -> u64 {
    loop {
        let u = rng.gen_range(1..ctx.modulus());
        if u % ctx.p() != 0 {
            return u;
        }
    }
}

/// Multiset of element orders `k` (order `p^k`), with `power(e, n) = e^n`
/// supplied by the caller.
pub fn order_multiset(elements: &[Vec<u64>], mut power: impl FnMut(&[u64], u64) -> Vec<u64>, p: u64) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for e in elements {
        let mut k = 0;
        let mut n = 1;
        while power(e, n).iter().any(|&a| a != 0) {
            n *= p;
            k += 1;
        }
        *out.entry(k).or_insert(0) += 1;
    }
    out
}
