use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, SemidirectGroup, SubgroupData};
use crate::lie::{PotencyReport, PotencyStep};

/// Outcome of testing `γ_p(G) ⊆ Φ(G)^p`.
#[derive(Clone, Debug, Serialize)]
pub struct GammaPReport {
    pub holds: bool,
    pub gamma_p_log_order: u32,
    pub phi_p_log_order: u32,
    /// generators of `γ_p(G)` outside `Φ(G)^p`
    pub failing: Vec<GroupElement>,
}

impl SemidirectGroup {
    /// `γ_1 = G, γ_{i+1} = [γ_i, G]` until trivial or stable.
    pub fn gamma_series(&self) -> Result<Vec<SubgroupData>> {
        let whole = self.whole();
        self.iterate_series(whole.clone(), |k| self.commutator_subgroup(k, &whole))
    }

    /// `γ_k(G)`, 1-based; trivial past the end of the series.
    pub fn gamma(&self, k: usize) -> Result<SubgroupData> {
        let whole = self.whole();
        let mut cur = whole.clone();
        for _ in 1..k {
            if cur.is_trivial() {
                break;
            }
            cur = self.commutator_subgroup(&cur, &whole)?;
        }
        Ok(cur)
    }

    /// `G_1 = G, G_{i+1} = [G_i, G] G_i^p`.
    pub fn lower_p_series(&self) -> Result<Vec<SubgroupData>> {
        let whole = self.whole();
        self.iterate_series(whole.clone(), |k| {
            let c = self.commutator_subgroup(k, &whole)?;
            let pw = self.p_power_subgroup(k)?;
            self.join(&c, &pw)
        })
    }

    fn iterate_series(
        &self,
        start: SubgroupData,
        step: impl Fn(&SubgroupData) -> Result<SubgroupData>,
    ) -> Result<Vec<SubgroupData>> {
        let mut out = vec![start];
        loop {
            let last = out.last().expect("nonempty");
            if last.is_trivial() {
                return Ok(out);
            }
            let next = step(last)?;
            if self.same_subgroup(&next, last) {
                return Ok(out);
            }
            out.push(next);
        }
    }

    /// `Φ(G) = G^p [G, G]`.
    pub fn frattini(&self) -> Result<SubgroupData> {
        let p = self.ctx().p() as i128;
        let mut gens: Vec<GroupElement> = self
            .standard_generators()
            .iter()
            .map(|g| self.pow_int(g, p))
            .collect();
        let whole = self.whole();
        gens.extend(self.commutator_subgroup(&whole, &whole)?.generators());
        let k = self.generated_subgroup(&gens)?;
        self.normal_closure(&k)
    }

    pub fn frattini_p_power(&self) -> Result<SubgroupData> {
        self.p_power_subgroup(&self.frattini()?)
    }

    pub fn check_gamma_p_in_phi_p(&self) -> Result<GammaPReport> {
        let gamma_p = self.gamma(self.ctx().p() as usize)?;
        let phi_p = self.frattini_p_power()?;
        let failing: Vec<GroupElement> = gamma_p
            .generators()
            .into_iter()
            .filter(|g| !self.contains(&phi_p, g))
            .collect();
        Ok(GammaPReport {
            holds: failing.is_empty(),
            gamma_p_log_order: gamma_p.log_order(),
            phi_p_log_order: phi_p.log_order(),
            failing,
        })
    }

    /// `log_p` of the torsion of `G / [G, G]`.
    pub fn abelianization_torsion(&self) -> Result<u32> {
        let whole = self.whole();
        let d = self.commutator_subgroup(&whole, &whole)?;
        d.fiber.saturate().index(&d.fiber)
    }

    /// Check that each `N_i` is normal, `[N_i, G] ⊆ N_{i+1}`,
    /// `[N_i, G, ..., G] ⊆ N_{i+1}^p` with `p - 1` copies of `G`, and that
    /// the chain ends trivially.
    pub fn verify_potent_filtration(&self, chain: &[SubgroupData]) -> Result<PotencyReport> {
        for (i, k) in chain.iter().enumerate() {
            if !self.is_normal(k) {
                return Err(Error::NotNormal(format!("term {} of the filtration", i + 1)));
            }
        }
        let whole = self.whole();
        let p = self.ctx().p() as usize;
        let mut steps = Vec::new();
        for (i, w) in chain.windows(2).enumerate() {
            let (ni, next) = (&w[0], &w[1]);
            let comm = self.commutator_subgroup(ni, &whole)?;
            let mut engel = ni.clone();
            for _ in 0..p - 1 {
                if engel.is_trivial() {
                    break;
                }
                engel = self.commutator_subgroup(&engel, &whole)?;
            }
            let next_p = self.p_power_subgroup(next)?;
            steps.push(PotencyStep {
                index: i + 1,
                commutator: self.is_subgroup_of(&comm, next),
                engel: self.is_subgroup_of(&engel, &next_p),
            });
        }
        Ok(PotencyReport {
            precision: self.ctx().precision(),
            steps,
            terminal: chain.last().is_none_or(SubgroupData::is_trivial),
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::group::SemidirectGroup;
    use crate::linalg::PMatrix;
    use crate::padic::PadicContext;

    #[test]
    fn heisenberg_gamma_series() {
        let c = PadicContext::new(5, 3).unwrap();
        let g = SemidirectGroup::new(PMatrix::from_rows(&c, &[[1, 1], [0, 1]])).unwrap();
        let gs = g.gamma_series().unwrap();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[1].log_order(), 3);
        assert!(gs[2].is_trivial());
        assert_eq!(g.abelianization_torsion().unwrap(), 0);
    }

    #[test]
    fn abelian_group_is_potent() {
        let c = PadicContext::new(5, 3).unwrap();
        let g = SemidirectGroup::new(PMatrix::identity(&c, 2)).unwrap();
        let series = g.lower_p_series().unwrap();
        assert_eq!(series.len(), 4);
        let rep = g.verify_potent_filtration(&series).unwrap();
        assert!(rep.passed());
        assert!(g.check_gamma_p_in_phi_p().unwrap().holds);
    }

    #[test]
    fn torsion_of_scaled_action() {
        // x acts by y -> y + 5z, so [G, G] = 5 Z_p z
        let c = PadicContext::new(5, 4).unwrap();
        let g = SemidirectGroup::new(PMatrix::from_rows(&c, &[[1, 5], [0, 1]])).unwrap();
        assert_eq!(g.abelianization_torsion().unwrap(), 1);
    }
}
