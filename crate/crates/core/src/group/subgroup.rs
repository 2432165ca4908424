//! Closed subgroups of `Z_p ⋉ Z_p^(d-1)` in split form.
//!
//! A subgroup `K` is stored as the valuation `a` of its image in `H = Z_p`,
//! a witness `w ∈ K` whose `H`-coordinate is exactly `p^a`, and the fiber
//! span `S = K ∩ N`. Then `K = <w> S`, with `S` invariant under `M^(p^a)`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupElement, SemidirectGroup};
use crate::linalg::{PMatrix, Span};

#[derive(Clone, Debug)]
pub struct SubgroupData {
    /// valuation of the `H`-projection; `None` when `K` lies in the fiber
    pub h_val: Option<u32>,
    pub witness: Option<GroupElement>,
    pub fiber: Span,
    /// For `p`-th power subgroups: whether the set of `p`-th powers is
    /// already the whole subgroup, when the subgroup was small enough to
    /// enumerate.
    pub powers_are_subgroup: Option<bool>,
}

impl SubgroupData {
    pub fn is_trivial(&self) -> bool {
        self.h_val.is_none() && self.fiber.is_zero()
    }

    /// `log_p |K|` in the quotient modulo `p^N`.
    pub fn log_order(&self) -> u32 {
        let n = self.fiber.ctx().precision();
        self.h_val.map_or(0, |e| n - e) + self.fiber.log_size()
    }

    /// Witness followed by the fiber basis.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut g: Vec<GroupElement> = self.witness.iter().cloned().collect();
        g.extend(self.fiber.basis().iter().map(|v| GroupElement::new(0, v.clone())));
        g
    }
}

impl fmt::Display for SubgroupData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.h_val, &self.witness) {
            (Some(e), Some(w)) => write!(f, "<w={w}, a={e}> * {}", self.fiber),
            _ => write!(f, "{}", self.fiber),
        }
    }
}

impl SemidirectGroup {
    fn closure_budget(&self) -> usize {
        (self.ctx().precision() as usize + 1) * (self.fiber_dim() + 1) + 4
    }

    pub fn trivial_subgroup(&self) -> SubgroupData {
        SubgroupData {
            h_val: None,
            witness: None,
            fiber: Span::zero(self.ctx(), self.fiber_dim()),
            powers_are_subgroup: None,
        }
    }

    pub fn whole(&self) -> SubgroupData {
        SubgroupData {
            h_val: Some(0),
            witness: Some(self.standard_generators()[0].clone()),
            fiber: Span::full(self.ctx(), self.fiber_dim()),
            powers_are_subgroup: None,
        }
    }

    /// `(w^c)^-1 g` lands in the fiber when `p^e | a(g)`.
    fn fiber_part(&self, g: &GroupElement, w: &GroupElement, e: u32) -> GroupElement {
        let c = self.ctx();
        let k = c.div_p_pow(g.a, e);
        let h = self.mul(g, &self.pow_int(w, -(k as i128)));
        debug_assert_eq!(h.a, 0);
        h
    }

    /// Smallest closed subgroup containing `gens`.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Result<SubgroupData> {
        let c = *self.ctx();
        let f = self.fiber_dim();
        let best = gens
            .iter()
            .filter(|g| g.a != 0)
            .min_by_key(|g| (c.valuation(g.a), (*g).clone()));
        let mut fiber_gens: Vec<Vec<u64>> = Vec::new();
        let (h_val, witness) = match best {
            None => {
                fiber_gens.extend(gens.iter().map(|g| g.v.clone()));
                (None, None)
            }
            Some(g) => {
                let e = c.valuation(g.a);
                let u = c.inv(c.unit_part(g.a)).expect("unit part");
                let w = self.pow_int(g, u as i128);
                debug_assert_eq!(w.a, c.p_pow(e));
                for h in gens {
                    fiber_gens.push(self.fiber_part(h, &w, e).v);
                }
                let period = c.p().pow(c.precision() - e);
                fiber_gens.push(self.pow_int(&w, period as i128).v);
                (Some(e), Some(w))
            }
        };
        let mut fiber = Span::from_generators(&c, f, fiber_gens);
        if let Some(e) = h_val {
            let q = self.action_power(c.p_pow(e));
            fiber = self.close_under(&fiber, &q)?;
        }
        let witness = witness.map(|w| self.reduce_witness(w, &fiber));
        Ok(SubgroupData {
            h_val,
            witness,
            fiber,
            powers_are_subgroup: None,
        })
    }

    /// Canonical witness: reduce the fiber coordinate against the span.
    fn reduce_witness(&self, w: GroupElement, fiber: &Span) -> GroupElement {
        let c = self.ctx();
        let mut v = w.v;
        for (row, &(col, e)) in fiber.basis().iter().zip(fiber.pivots()) {
            let q = if e == 0 { v[col] } else { v[col] / c.p_pow(e) };
            if q != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = c.sub(*x, c.mul(q, r));
                }
            }
        }
        GroupElement::new(w.a, v)
    }

    fn close_under(&self, s: &Span, q: &PMatrix) -> Result<Span> {
        let mut cur = s.clone();
        for _ in 0..self.closure_budget() {
            let next = cur.sum(&cur.image_row(q)?)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::ClosureBudget(self.closure_budget()))
    }

    pub fn contains(&self, k: &SubgroupData, g: &GroupElement) -> bool {
        if g.a == 0 {
            return k.fiber.member(&g.v);
        }
        let (Some(e), Some(w)) = (k.h_val, &k.witness) else {
            return false;
        };
        if self.ctx().valuation(g.a) < e {
            return false;
        }
        k.fiber.member(&self.fiber_part(g, w, e).v)
    }

    pub fn is_subgroup_of(&self, k1: &SubgroupData, k2: &SubgroupData) -> bool {
        k1.generators().iter().all(|g| self.contains(k2, g))
    }

    pub fn same_subgroup(&self, k1: &SubgroupData, k2: &SubgroupData) -> bool {
        k1.h_val == k2.h_val && k1.fiber == k2.fiber && self.is_subgroup_of(k1, k2)
    }

    pub fn join(&self, k1: &SubgroupData, k2: &SubgroupData) -> Result<SubgroupData> {
        let mut g = k1.generators();
        g.extend(k2.generators());
        self.generated_subgroup(&g)
    }

    fn conjugates_by_generators(&self, k: &SubgroupData) -> Vec<GroupElement> {
        let std = self.standard_generators();
        k.generators()
            .iter()
            .flat_map(|g| std.iter().map(move |s| (g, s)))
            .map(|(g, s)| self.conjugate(g, s))
            .collect()
    }

    pub fn is_normal(&self, k: &SubgroupData) -> bool {
        self.conjugates_by_generators(k)
            .iter()
            .all(|g| self.contains(k, g))
    }

    pub fn normal_closure(&self, k: &SubgroupData) -> Result<SubgroupData> {
        let mut cur = k.clone();
        for _ in 0..self.closure_budget() {
            let mut gens = cur.generators();
            gens.extend(self.conjugates_by_generators(&cur));
            let next = self.generated_subgroup(&gens)?;
            if self.same_subgroup(&next, &cur) {
                return Ok(next);
            }
            cur = next;
        }
        Err(Error::ClosureBudget(self.closure_budget()))
    }

    /// `[K1, K2]` for normal subgroups: the normal closure of commutators of
    /// generators.
    pub fn commutator_subgroup(&self, k1: &SubgroupData, k2: &SubgroupData) -> Result<SubgroupData> {
        let g1 = k1.generators();
        let g2 = k2.generators();
        let comms: Vec<GroupElement> = g1
            .iter()
            .flat_map(|a| g2.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        let base = self.generated_subgroup(&comms)?;
        self.normal_closure(&base)
    }

    /// `K^p = <k^p : k in K>`.
    ///
    /// With `K = <w> S` and `Q = M^(p^a)`, every `p`-th power is
    /// `(w^λ)^p (s T_λ)` where `T_λ = sum_{j<p} Q^(jλ)`; `T_λ` is a polynomial
    /// of degree below `K0` in `λ` when `(Q - 1)^K0 = 0`, so `λ < K0` suffices.
    pub fn p_power_subgroup(&self, k: &SubgroupData) -> Result<SubgroupData> {
        let c = *self.ctx();
        let p = c.p();
        let mut out = match (k.h_val, &k.witness) {
            (Some(e), Some(w)) => {
                let q = self.action_power(c.p_pow(e));
                let k0 = nilpotency_index(&q);
                let mut gens = vec![self.pow_int(w, p as i128)];
                for lambda in 0..k0 {
                    let t = self.geometric_sum(&q.pow(lambda as u64), p as u128);
                    gens.extend(
                        k.fiber
                            .basis()
                            .iter()
                            .map(|s| GroupElement::new(0, t.apply_row(s))),
                    );
                }
                self.generated_subgroup(&gens)?
            }
            _ => SubgroupData {
                h_val: None,
                witness: None,
                fiber: k.fiber.scale(1),
                powers_are_subgroup: None,
            },
        };
        out.powers_are_subgroup = self.powers_fill(k, &out);
        Ok(out)
    }

    /// Enumerate `K` when it has at most `2^14` elements and compare the set
    /// of `p`-th powers with `K^p`.
    fn powers_fill(&self, k: &SubgroupData, kp: &SubgroupData) -> Option<bool> {
        let c = self.ctx();
        let log = k.log_order();
        if (c.p() as f64).powi(log as i32) > 16384.0 {
            return None;
        }
        let fiber_elems = span_elements(&k.fiber);
        let mut powers = HashSet::new();
        let h_steps = match k.h_val {
            Some(e) => c.p().pow(c.precision() - e),
            None => 1,
        };
        for t in 0..h_steps {
            let base = match &k.witness {
                Some(w) => self.pow_int(w, t as i128),
                None => self.identity(),
            };
            for s in &fiber_elems {
                let g = self.mul(&base, &GroupElement::new(0, s.clone()));
                powers.insert(self.pow_int(&g, c.p() as i128));
            }
        }
        let size = (c.p() as u128).pow(kp.log_order());
        Some(powers.len() as u128 == size)
    }
}

/// Least `k` with `(Q - 1)^k = 0` at precision.
fn nilpotency_index(q: &PMatrix) -> usize {
    let e = q.sub(&PMatrix::identity(q.ctx(), q.rows())).expect("square");
    let mut pw = PMatrix::identity(q.ctx(), q.rows());
    let bound = q.rows() * q.ctx().precision() as usize + 1;
    for k in 0..=bound {
        if pw.is_zero() {
            return k;
        }
        pw = pw.mul(&e).expect("square");
    }
    bound
}

/// Every element of a span, each exactly once.
pub fn span_elements(s: &Span) -> Vec<Vec<u64>> {
    let c = s.ctx();
    let n = c.precision();
    let mut out = vec![vec![0u64; s.dim()]];
    for (row, &(_, e)) in s.basis().iter().zip(s.pivots()) {
        let count = c.p().pow(n - e);
        let mut next = Vec::with_capacity(out.len() * count as usize);
        for v in &out {
            for t in 0..count {
                next.push(
                    v.iter()
                        .zip(row)
                        .map(|(&x, &r)| c.add(x, c.mul(t % c.modulus(), r)))
                        .collect(),
                );
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicContext;

    fn heisenberg_group() -> SemidirectGroup {
        // fiber (y, z), x acts by y -> y + z
        let c = PadicContext::new(5, 3).unwrap();
        SemidirectGroup::new(PMatrix::from_rows(&c, &[[1, 1], [0, 1]])).unwrap()
    }

    #[test]
    fn trivial_and_whole() {
        let g = heisenberg_group();
        assert!(g.generated_subgroup(&[]).unwrap().is_trivial());
        let all = g.generated_subgroup(&g.standard_generators()).unwrap();
        assert!(g.same_subgroup(&all, &g.whole()));
        assert_eq!(all.log_order(), 9);
    }

    #[test]
    fn h_line_in_direct_product() {
        let c = PadicContext::new(5, 3).unwrap();
        let g = SemidirectGroup::new(PMatrix::identity(&c, 2)).unwrap();
        let k = g.generated_subgroup(&[g.element(1, &[0, 0])]).unwrap();
        assert_eq!(k.h_val, Some(0));
        assert!(k.fiber.is_zero());
        assert_eq!(k.log_order(), 3);
    }

    #[test]
    fn normal_closure_of_fiber_line() {
        let g = heisenberg_group();
        let y = g.generated_subgroup(&[g.element(0, &[1, 0])]).unwrap();
        assert!(!g.is_normal(&y));
        let n = g.normal_closure(&y).unwrap();
        assert!(g.is_normal(&n));
        assert_eq!(n.fiber, Span::full(g.ctx(), 2));
    }

    #[test]
    fn commutator_of_whole_group() {
        let g = heisenberg_group();
        let d = g.commutator_subgroup(&g.whole(), &g.whole()).unwrap();
        assert_eq!(d.fiber, Span::from_int_generators(g.ctx(), 2, &[vec![0, 1]]));
        assert!(d.h_val.is_none());
    }

    #[test]
    fn p_powers_in_abelian_group() {
        let c = PadicContext::new(3, 2).unwrap();
        let g = SemidirectGroup::new(PMatrix::identity(&c, 1)).unwrap();
        let gp = g.p_power_subgroup(&g.whole()).unwrap();
        assert_eq!(gp.h_val, Some(1));
        assert_eq!(gp.fiber, Span::full(&c, 1).scale(1));
        assert_eq!(gp.powers_are_subgroup, Some(true));
    }

    #[test]
    fn span_enumeration_counts() {
        let c = PadicContext::new(3, 2).unwrap();
        let s = Span::from_int_generators(&c, 2, &[vec![1, 0], vec![0, 3]]);
        let e = span_elements(&s);
        assert_eq!(e.len(), 27);
        let set: HashSet<_> = e.iter().collect();
        assert_eq!(set.len(), 27);
        assert!(e.iter().all(|v| s.member(v)));
    }
}
