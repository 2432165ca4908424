//! Central series, the lower p-series and potent filtrations.
//!
//! Every term is a span at precision `N`. The "rational" variants saturate
//! each term, which is how nilpotency and solubility of `Q_p ⊗ L` are read
//! off at finite precision.

use serde::Serialize;

use crate::lie::Lattice;
use crate::linalg::Span;

/// A descending chain of spans `N_1 ⊇ N_2 ⊇ ...` in a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub terms: Vec<Span>,
}

impl Filtration {
    pub fn new(terms: Vec<Span>) -> Self {
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_descending(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].contains(&w[1]))
    }
}

/// Outcome of one step `i` of a potency check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PotencyStep {
    /// 1-based index of `N_i`.
    pub index: usize,
    /// `[N_i, L] ⊆ N_{i+1}`
    pub commutator: bool,
    /// `[N_i, L, ..., L] ⊆ p N_{i+1}` with `p - 1` copies of `L`
    pub engel: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PotencyReport {
    pub precision: u32,
    pub steps: Vec<PotencyStep>,
    /// the last term is zero at precision
    pub terminal: bool,
}

impl PotencyReport {
    pub fn passed(&self) -> bool {
        self.terminal && self.steps.iter().all(|s| s.commutator && s.engel)
    }

    /// Index of the first failing step, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.steps
            .iter()
            .find(|s| !(s.commutator && s.engel))
            .map(|s| s.index)
    }
}

impl Lattice {
    /// `[S, L, ..., L]` with `k` copies of `L`.
    pub fn iterated_bracket(&self, s: &Span, k: usize) -> Span {
        let full = self.full_span();
        (0..k).fold(s.clone(), |acc, _| self.bracket_span(&acc, &full))
    }

    /// `γ_1 = L, γ_{i+1} = [γ_i, L]`, ending at the first zero or repeated term.
    pub fn lower_central(&self) -> Vec<Span> {
        let full = self.full_span();
        iterate(full.clone(), |s| self.bracket_span(s, &full))
    }

    /// Lower central series with each term saturated.
    pub fn rational_lower_central(&self) -> Vec<Span> {
        let full = self.full_span();
        iterate(full.clone(), |s| self.bracket_span(s, &full).saturate())
    }

    /// Nilpotency class at precision: `c` with `γ_{c+1} = 0`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let g = self.lower_central();
        g.last().filter(|s| s.is_zero()).map(|_| g.len() - 1)
    }

    /// Whether `Q_p ⊗ L` is nilpotent, judged on saturated terms.
    pub fn is_rationally_nilpotent(&self) -> bool {
        self.rational_lower_central().last().is_some_and(Span::is_zero)
    }

    /// `D_1 = L, D_{i+1} = [D_i, D_i]`.
    pub fn derived_series(&self) -> Vec<Span> {
        iterate(self.full_span(), |s| self.bracket_span(s, s))
    }

    /// Derived series with each term saturated.
    pub fn rational_derived_series(&self) -> Vec<Span> {
        iterate(self.full_span(), |s| self.bracket_span(s, s).saturate())
    }

    /// Whether `Q_p ⊗ L` is soluble, judged on saturated terms.
    pub fn is_soluble(&self) -> bool {
        self.rational_derived_series().last().is_some_and(Span::is_zero)
    }

    /// `L_1 = L, L_{i+1} = p L_i + [L_i, L]`, down to zero at precision.
    pub fn lower_p_series(&self) -> Filtration {
        let full = self.full_span();
        let terms = iterate(full.clone(), |s| {
            s.scale(1).sum(&self.bracket_span(s, &full)).expect("same ambient")
        });
        Filtration::new(terms)
    }

    /// Check `[N_i, L] ⊆ N_{i+1}` and `[N_i, L, ..., L] ⊆ p N_{i+1}` at
    /// every step, and that the chain ends in zero.
    pub fn verify_potent_filtration(&self, f: &Filtration) -> PotencyReport {
        let p = self.ctx().p() as usize;
        let full = self.full_span();
        let steps = f
            .terms
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let (ni, next) = (&w[0], &w[1]);
                PotencyStep {
                    index: i + 1,
                    commutator: next.contains(&self.bracket_span(ni, &full)),
                    engel: next.scale(1).contains(&self.iterated_bracket(ni, p - 1)),
                }
            })
            .collect();
        PotencyReport {
            precision: self.ctx().precision(),
            steps,
            terminal: f.terms.last().is_none_or(Span::is_zero),
        }
    }

    /// `[L, L, ..., L] ⊆ p (p L + [L, L])` with `p` copies of `L`.
    pub fn saturable_sufficient(&self) -> bool {
        let full = self.full_span();
        let gamma_p = self.iterated_bracket(&full, self.ctx().p() as usize - 1);
        let l2 = full.scale(1).sum(&self.bracket_span(&full, &full)).expect("same ambient");
        l2.scale(1).contains(&gamma_p)
    }

    /// `[L, L] ⊆ p L`.
    pub fn is_powerful(&self) -> bool {
        let full = self.full_span();
        full.scale(1).contains(&self.bracket_span(&full, &full))
    }
}

fn iterate(start: Span, step: impl Fn(&Span) -> Span) -> Vec<Span> {
    let mut out = vec![start];
    loop {
        let last = out.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = step(last);
        if next == *last {
            break;
        }
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicContext;

    fn heisenberg(n: u32) -> Lattice {
        let c = PadicContext::new(5, n).unwrap();
        Lattice::from_brackets(&c, &["x", "y", "z"], &[(0, 1, vec![0, 0, 1])]).unwrap()
    }

    #[test]
    fn abelian_series() {
        let c = PadicContext::new(5, 3).unwrap();
        let l = Lattice::abelian(&c, &["a", "b"]);
        let g = l.lower_central();
        assert!(g[1].is_zero());
        let lp = l.lower_p_series();
        for (i, t) in lp.terms.iter().enumerate() {
            assert_eq!(*t, l.full_span().scale(i as u32));
        }
        assert!(l.verify_potent_filtration(&lp).passed());
        assert!(l.saturable_sufficient());
    }

    #[test]
    fn heisenberg_series() {
        let l = heisenberg(3);
        let z = Span::from_int_generators(l.ctx(), 3, &[vec![0, 0, 1]]);
        let g = l.lower_central();
        assert_eq!(g.len(), 3);
        assert_eq!(g[1], z);
        assert!(g[2].is_zero());
        assert_eq!(l.nilpotency_class(), Some(2));
        let lp = l.lower_p_series();
        assert_eq!(lp.terms[1], l.full_span().scale(1).sum(&z).unwrap());
        assert!(l.verify_potent_filtration(&lp).passed());
        let d = l.derived_series();
        assert_eq!(d[1], z);
        assert!(d[2].is_zero());
    }

    #[test]
    fn two_dim_lower_p_series() {
        let c = PadicContext::new(5, 4).unwrap();
        // [y, x] = p y
        let l = Lattice::from_brackets(&c, &["x", "y"], &[(1, 0, vec![0, 5])]).unwrap();
        assert_eq!(l.lower_p_series().terms[1], l.full_span().scale(1));
    }
}
