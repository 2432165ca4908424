//! The Lazard group law `x * y = Φ(x, y)` on nilpotent Lie rings of class
//! below `p`.

use std::collections::HashMap;

use crate::bch::table::{hausdorff_table, BchTable, Letter};
use crate::error::{Error, Result};
use crate::lie::Lattice;
use crate::linalg::{unit_vector, Span};
use crate::padic::{PadicContext, PadicScalar};

/// A Lie ring whose additive group is a quotient of `(Z/p^N)^d`.
pub trait LieRing {
    fn ctx(&self) -> &PadicContext;
    fn dim(&self) -> usize;
    fn bracket(&self, u: &[u64], v: &[u64]) -> Vec<u64>;
    /// Canonical coordinates of a vector.
    fn normalize(&self, v: Vec<u64>) -> Vec<u64>;
    /// `c` with `γ_{c+1} = 0`, or `None` if the series stalls above zero.
    fn nilpotency_class(&self) -> Option<usize>;
    /// Length of the lower central series before it stalls or vanishes.
    fn lower_central_length(&self) -> usize;

    fn add(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let c = self.ctx();
        self.normalize(u.iter().zip(v).map(|(&a, &b)| c.add(a, b)).collect())
    }

    fn scale(&self, u: &[u64], k: u64) -> Vec<u64> {
        let c = self.ctx();
        self.normalize(u.iter().map(|&a| c.mul(a, k)).collect())
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.dim()]
    }
}

impl LieRing for Lattice {
    fn ctx(&self) -> &PadicContext {
        Lattice::ctx(self)
    }

    fn dim(&self) -> usize {
        Lattice::dim(self)
    }

    fn bracket(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        Lattice::bracket(self, u, v)
    }

    fn normalize(&self, v: Vec<u64>) -> Vec<u64> {
        v
    }

    fn nilpotency_class(&self) -> Option<usize> {
        Lattice::nilpotency_class(self)
    }

    fn lower_central_length(&self) -> usize {
        self.lower_central().len()
    }
}

/// A finite Lie ring `⊕ Z/p^(e_i)` with integer structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieRing {
    ctx: PadicContext,
    exponents: Vec<u32>,
    labels: Vec<String>,
    consts: Vec<u64>,
}

impl FiniteLieRing {
    /// `exponents[i]` is the additive order exponent of basis vector `i`;
    /// brackets are given for `i < j` or `i > j` and completed by antisymmetry.
    pub fn new(
        p: u64,
        exponents: Vec<u32>,
        labels: &[&str],
        brackets: &[(usize, usize, Vec<i128>)],
    ) -> Result<Self> {
        let d = exponents.len();
        if labels.len() != d {
            return Err(Error::DimensionMismatch("labels and exponents differ in length".into()));
        }
        let top = exponents.iter().copied().max().unwrap_or(1).max(1);
        let ctx = PadicContext::new(p, top)?;
        // reuse lattice validation for antisymmetry and Jacobi at the top precision
        let lat = Lattice::from_brackets(&ctx, labels, brackets)?;
        let mut consts = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                consts.extend_from_slice(lat.structure_vector(i, j));
            }
        }
        let ring = Self {
            ctx,
            exponents,
            labels: labels.iter().map(|s| s.to_string()).collect(),
            consts,
        };
        ring.check_well_defined()?;
        Ok(ring)
    }

    fn check_well_defined(&self) -> Result<()> {
        let d = self.exponents.len();
        for i in 0..d {
            let mut rel = vec![0; d];
            rel[i] = self.ctx.p_pow(self.exponents[i]);
            for j in 0..d {
                let b = self.bracket(&rel, &unit_vector(d, j));
                if b.iter().any(|&x| x != 0) {
                    return Err(Error::BadParameter(format!(
                        "bracket is not defined modulo the order of {}",
                        self.labels[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `log_p` of the order of the ring.
    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Every element, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &e in &self.exponents {
            let m = (self.ctx.p() as u128).pow(e) as u64;
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn relations(&self) -> Span {
        let d = self.exponents.len();
        Span::from_generators(
            &self.ctx,
            d,
            (0..d).map(|i| {
                let mut v = vec![0; d];
                v[i] = self.ctx.p_pow(self.exponents[i]);
                v
            }),
        )
    }

    fn gamma_terms(&self) -> Vec<Span> {
        let d = self.exponents.len();
        let rel = self.relations();
        let full = Span::full(&self.ctx, d);
        let mut out = vec![full];
        loop {
            let last = out.last().expect("nonempty");
            if rel.contains(last) {
                break;
            }
            let gens = last
                .basis()
                .iter()
                .flat_map(|g| (0..d).map(move |j| (g, j)))
                .map(|(g, j)| self.bracket(g, &unit_vector(d, j)));
            let next = rel.extend(gens);
            if next == *last {
                break;
            }
            out.push(next);
        }
        out
    }
}

impl LieRing for FiniteLieRing {
    fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    fn dim(&self) -> usize {
        self.exponents.len()
    }

    fn bracket(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let d = self.exponents.len();
        let c = &self.ctx;
        let mut acc = vec![0u64; d];
        for i in 0..d {
            for j in 0..d {
                if i == j || u[i] == 0 || v[j] == 0 {
                    continue;
                }
                let f = c.mul(u[i], v[j]);
                for (k, a) in acc.iter_mut().enumerate() {
                    let s = self.consts[(i * d + j) * d + k];
                    if s != 0 {
                        *a = c.add(*a, c.mul(f, s));
                    }
                }
            }
        }
        self.normalize(acc)
    }

    fn normalize(&self, v: Vec<u64>) -> Vec<u64> {
        v.into_iter()
            .zip(&self.exponents)
            .map(|(x, &e)| x % (self.ctx.p() as u128).pow(e) as u64)
            .collect()
    }

    fn nilpotency_class(&self) -> Option<usize> {
        let g = self.gamma_terms();
        let rel = self.relations();
        g.last().filter(|s| rel.contains(s)).map(|_| g.len() - 1)
    }

    fn lower_central_length(&self) -> usize {
        self.gamma_terms().len()
    }
}

/// The group law of a Lie ring of class below `p`, with the Hausdorff
/// coefficients reduced into the ring's context.
pub struct Bch<'a, R: LieRing> {
    ring: &'a R,
    table: BchTable,
    coeffs: Vec<u64>,
}

impl<'a, R: LieRing> Bch<'a, R> {
    pub fn new(ring: &'a R) -> Result<Self> {
        let p = ring.ctx().p();
        let class = match ring.nilpotency_class() {
            Some(c) if (c as u64) < p => c,
            Some(c) => return Err(Error::ClassTooLarge { class: c, p }),
            None => {
                return Err(Error::ClassTooLarge {
                    class: ring.lower_central_length(),
                    p,
                })
            }
        };
        let table = hausdorff_table(class.max(1));
        let coeffs = table
            .terms()
            .iter()
            .map(|t| t.coeff.reduce(ring.ctx()).map(|s| s.value()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ring, table, coeffs })
    }

    pub fn table(&self) -> &BchTable {
        &self.table
    }

    pub fn ring(&self) -> &R {
        self.ring
    }

    /// `Φ(u, v)`.
    pub fn mul(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let r = self.ring;
        let u = r.normalize(u.to_vec());
        let v = r.normalize(v.to_vec());
        let mut memo: HashMap<Vec<Letter>, Vec<u64>> = HashMap::new();
        let mut acc = r.zero();
        for (term, &c) in self.table.terms().iter().zip(&self.coeffs) {
            let val = eval_word(r, &term.word, &u, &v, &mut memo);
            acc = r.add(&acc, &r.scale(&val, c));
        }
        acc
    }

    pub fn neg(&self, u: &[u64]) -> Vec<u64> {
        let c = self.ring.ctx();
        self.ring.normalize(u.iter().map(|&x| c.neg(x)).collect())
    }

    /// `u^λ = λ u`.
    pub fn pow(&self, u: &[u64], lambda: &PadicScalar) -> Vec<u64> {
        self.ring.scale(u, lambda.value())
    }

    /// `u^-1 v^-1 u v`.
    pub fn commutator(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let uv = self.mul(u, v);
        self.mul(&self.neg(u), &self.mul(&self.neg(v), &uv))
    }

    /// Order of an element of a finite ring: least `p^k` with `p^k u = 0`.
    pub fn order_exponent(&self, u: &[u64]) -> u32 {
        let c = self.ring.ctx();
        let mut k = 0;
        let mut x = self.ring.normalize(u.to_vec());
        while x.iter().any(|&a| a != 0) {
            x = self.ring.scale(&x, c.p());
            k += 1;
        }
        k
    }
}

fn eval_word<R: LieRing>(
    r: &R,
    word: &[Letter],
    u: &[u64],
    v: &[u64],
    memo: &mut HashMap<Vec<Letter>, Vec<u64>>,
) -> Vec<u64> {
    let letter = |l: Letter| match l {
        Letter::X => u.to_vec(),
        Letter::Y => v.to_vec(),
    };
    if word.len() == 1 {
        return letter(word[0]);
    }
    if let Some(hit) = memo.get(word) {
        return hit.clone();
    }
    let head = eval_word(r, &word[..word.len() - 1], u, v, memo);
    let val = if head.iter().all(|&x| x == 0) {
        head
    } else {
        r.bracket(&head, &letter(word[word.len() - 1]))
    };
    memo.insert(word.to_vec(), val.clone());
    val
}

/// `Φ(u, v)` on a lattice.
pub fn bch_mul(l: &Lattice, u: &[u64], v: &[u64]) -> Result<Vec<u64>> {
    Ok(Bch::new(l)?.mul(u, v))
}

pub fn bch_neg(l: &Lattice, u: &[u64]) -> Vec<u64> {
    u.iter().map(|&x| l.ctx().neg(x)).collect()
}

pub fn bch_pow(l: &Lattice, u: &[u64], lambda: &PadicScalar) -> Vec<u64> {
    u.iter().map(|&x| l.ctx().mul(x, lambda.value())).collect()
}

pub fn bch_commutator(l: &Lattice, u: &[u64], v: &[u64]) -> Result<Vec<u64>> {
    Ok(Bch::new(l)?.commutator(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg(n: u32) -> Lattice {
        let c = PadicContext::new(5, n).unwrap();
        Lattice::from_brackets(&c, &["x", "y", "z"], &[(0, 1, vec![0, 0, 1])]).unwrap()
    }

    #[test]
    fn abelian_product_is_sum() {
        let c = PadicContext::new(5, 3).unwrap();
        let l = Lattice::abelian(&c, &["a", "b"]);
        assert_eq!(bch_mul(&l, &[1, 2], &[3, 4]).unwrap(), vec![4, 6]);
        assert_eq!(bch_commutator(&l, &[1, 2], &[3, 4]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn heisenberg_product() {
        let l = heisenberg(2);
        assert_eq!(bch_mul(&l, &[1, 0, 0], &[0, 1, 0]).unwrap(), vec![1, 1, 13]);
        assert_eq!(bch_commutator(&l, &[1, 0, 0], &[0, 1, 0]).unwrap(), vec![0, 0, 1]);
        let u = [3, 7, 11];
        assert_eq!(bch_mul(&l, &u, &bch_neg(&l, &u)).unwrap(), vec![0, 0, 0]);
        assert_eq!(bch_commutator(&l, &u, &u).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn class_too_large() {
        let c = PadicContext::new(5, 3).unwrap();
        // [y, x] = y never becomes zero
        let l = Lattice::from_brackets(&c, &["x", "y"], &[(1, 0, vec![0, 1])]).unwrap();
        assert!(matches!(Bch::new(&l), Err(Error::ClassTooLarge { .. })));
    }

    #[test]
    fn finite_ring_orders() {
        // px = p^2 y = 0, [y, x] = p y
        let r = FiniteLieRing::new(5, vec![1, 2], &["x", "y"], &[(1, 0, vec![0, 5])]).unwrap();
        assert_eq!(r.elements().len(), 125);
        assert_eq!(r.nilpotency_class(), Some(2));
        let g = Bch::new(&r).unwrap();
        assert_eq!(g.order_exponent(&[1, 0]), 1);
        assert_eq!(g.order_exponent(&[0, 1]), 2);
    }

    #[test]
    fn ill_defined_finite_ring_is_rejected() {
        // [y, x] = y with px = 0 is not defined mod p on x
        let r = FiniteLieRing::new(5, vec![1, 2], &["x", "y"], &[(1, 0, vec![0, 1])]);
        assert!(matches!(r, Err(Error::BadParameter(_))));
    }
}
