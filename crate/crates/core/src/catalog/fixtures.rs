//! Named verification fixtures driven from the command line.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bch::{Bch, FiniteLieRing};
use crate::catalog::examples::{
    dim_p_matrix, levi_check, make_example_dim_p, make_insoluble, make_levi_example, make_p2_group,
    make_p3_pair, Insoluble, Sign,
};
use crate::catalog::iso::iso_test_3dim;
use crate::catalog::soluble::{make_2dim, make_soluble, soluble_grid, ActionKind};
use crate::error::{Error, Result};
use crate::lie::TwoDimInvariant;
use crate::linalg::PMatrix;
use crate::padic::PadicContext;

pub const FIXTURES: &[&str] = &[
    "two-dim",
    "soluble-grid",
    "p3-pair",
    "dim-p",
    "insoluble",
    "levi",
    "p2-groups",
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub fixture: String,
    pub p: u64,
    pub precision: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fixture {} (p={}, N={})", self.fixture, self.p, self.precision)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {mark} {}", c.name)?;
            } else {
                writeln!(f, "  {mark} {}: {}", c.name, c.detail)?;
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Settings for a fixture run; `precision` falls back to a per-fixture default.
#[derive(Clone, Copy, Debug)]
pub struct FixtureConfig {
    pub p: u64,
    pub precision: Option<u32>,
    pub rho: Option<u64>,
}

impl FixtureConfig {
    fn ctx(&self, default_n: u32) -> Result<PadicContext> {
        let n = self.precision.unwrap_or(default_n);
        match self.rho {
            Some(rho) => PadicContext::with_rho(self.p, n, rho),
            None => PadicContext::new(self.p, n),
        }
    }
}

pub fn verify_fixture(name: &str, cfg: &FixtureConfig) -> Result<VerifyReport> {
    match name {
        "two-dim" => two_dim(&cfg.ctx(8)?),
        "soluble-grid" => soluble_grid_fixture(&cfg.ctx(6)?),
        "p3-pair" => p3_pair(&cfg.ctx(3)?),
        "dim-p" => dim_p(&cfg.ctx(6)?),
        "insoluble" => insoluble(&cfg.ctx(6)?),
        "levi" => levi(&cfg.ctx(16)?),
        "p2-groups" => p2_groups(cfg.precision.unwrap_or(10)),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

fn report(name: &str, ctx: &PadicContext) -> VerifyReport {
    VerifyReport {
        fixture: name.into(),
        p: ctx.p(),
        precision: ctx.precision(),
        checks: Vec::new(),
    }
}

fn two_dim(ctx: &PadicContext) -> Result<VerifyReport> {
    let mut rep = report("two-dim", ctx);
    for s in 1..=3u32 {
        let pair = make_2dim(ctx, s)?;
        let inv = pair.lattice.two_dim_invariant()?;
        rep.check(format!("s(G({s})) = {s}"), inv == TwoDimInvariant::S(s), format!("{inv:?}"));
        let g = &pair.group;
        let (x, y) = (g.element(1, &[0]), g.element(0, &[1]));
        let pw = ctx.p().pow(s) as i128;
        rep.check(
            format!("[y,x] = y^(p^{s}) in G({s})"),
            g.commutator(&y, &x) == g.pow_int(&y, pw),
            "",
        );
    }
    Ok(rep)
}

fn soluble_grid_fixture(ctx: &PadicContext) -> Result<VerifyReport> {
    let mut rep = report("soluble-grid", ctx);
    let grid = soluble_grid(ctx);
    for fam in &grid {
        let pair = make_soluble(ctx, *fam, ActionKind::Linear)?;
        let l = &pair.lattice;
        let g = &pair.group;
        let sat = l.saturable_sufficient();
        let lat_potent = l.verify_potent_filtration(&l.lower_p_series()).passed();
        let gp = g.check_gamma_p_in_phi_p()?;
        let grp_potent = g.verify_potent_filtration(&g.lower_p_series()?)?.passed();
        rep.check(
            format!("{fam} saturable"),
            sat && lat_potent && gp.holds && grp_potent,
            format!("lattice {sat}/{lat_potent}, group {}/{grp_potent}", gp.holds),
        );
    }
    // invariants of the ideal action lose up to 8 digits on this grid
    let iso_ctx = ctx.with_precision(ctx.precision() + 8)?;
    let lattices = grid
        .iter()
        .map(|f| make_soluble(&iso_ctx, *f, ActionKind::Linear).map(|p| (f, p.lattice)))
        .collect::<Result<Vec<_>>>()?;
    let mut clashes = Vec::new();
    for (i, (f1, l1)) in lattices.iter().enumerate() {
        for (f2, l2) in &lattices[i + 1..] {
            if iso_test_3dim(l1, l2)?.isomorphic {
                clashes.push(format!("{f1} ~ {f2}"));
            }
        }
    }
    rep.check(
        format!("{} entries pairwise non-isomorphic at N={}", lattices.len(), iso_ctx.precision()),
        clashes.is_empty(),
        clashes.join(", "),
    );
    Ok(rep)
}

fn order_profile(ring: &FiniteLieRing) -> Result<BTreeMap<u32, usize>> {
    let g = Bch::new(ring)?;
    let mut prof = BTreeMap::new();
    for e in ring.elements() {
        *prof.entry(g.order_exponent(&e)).or_insert(0) += 1;
    }
    Ok(prof)
}

fn pw(g: &Bch<'_, FiniteLieRing>, u: &[u64], n: u64) -> Vec<u64> {
    let mut acc = vec![0; u.len()];
    for _ in 0..n {
        acc = g.mul(&acc, u);
    }
    acc
}

fn p3_pair(ctx: &PadicContext) -> Result<VerifyReport> {
    let p = ctx.p();
    let mut rep = report("p3-pair", ctx);
    let pair = make_p3_pair(p)?;
    let g1 = Bch::new(&pair.l1)?;
    let (x, y) = (vec![1, 0], vec![0, 1]);
    rep.check("L1: x^p = 1", pw(&g1, &x, p).iter().all(|&a| a == 0), "");
    rep.check("L1: y^(p^2) = 1, y^p != 1", pw(&g1, &y, p * p).iter().all(|&a| a == 0) && pw(&g1, &y, p).iter().any(|&a| a != 0), "");
    rep.check("L1: [y,x] = y^p", g1.commutator(&y, &x) == pw(&g1, &y, p), "");
    let g2 = Bch::new(&pair.l2)?;
    let exp_p = pair.l2.elements().iter().all(|e| pw(&g2, e, p).iter().all(|&a| a == 0));
    rep.check("L2: exponent p", exp_p, "");
    let (x2, y2) = (vec![1, 0, 0], vec![0, 1, 0]);
    let c = g2.commutator(&x2, &y2);
    let central = pair
        .l2
        .elements()
        .iter()
        .all(|e| g2.mul(&c, e) == g2.mul(e, &c));
    rep.check("L2: [x,y] central and nontrivial", central && c.iter().any(|&a| a != 0), "");
    let prof1 = order_profile(&pair.l1)?;
    let prof2 = order_profile(&pair.l2)?;
    rep.check(
        "element orders differ",
        prof1 != prof2,
        format!("L1 {prof1:?}, L2 {prof2:?}"),
    );
    Ok(rep)
}

fn dim_p(ctx: &PadicContext) -> Result<VerifyReport> {
    let mut rep = report("dim-p", ctx);
    let ex = make_example_dim_p(ctx)?;
    let e = dim_p_matrix(ctx);
    let n = e.rows();
    rep.check(
        "(M - 1)^(p-1) = p",
        e.pow(n as u64) == PMatrix::identity(ctx, n).scale(ctx.p()),
        "",
    );
    let gp = ex.group.check_gamma_p_in_phi_p()?;
    rep.check(
        "group: gamma_p not inside Phi^p",
        !gp.holds,
        format!("|gamma_p| = p^{}, |Phi^p| = p^{}", gp.gamma_p_log_order, gp.phi_p_log_order),
    );
    let series = ex.group.lower_p_series()?;
    let pot = ex.group.verify_potent_filtration(&series)?;
    rep.check(
        "group: lower p-series fails at step 1",
        pot.first_failure() == Some(1),
        format!("first failure {:?}", pot.first_failure()),
    );
    rep.check(
        "lattice: saturability criterion fails",
        !ex.lattice.saturable_sufficient(),
        "",
    );
    Ok(rep)
}

fn insoluble(ctx: &PadicContext) -> Result<VerifyReport> {
    let mut rep = report("insoluble", ctx);
    for which in [Insoluble::Sl2Tri, Insoluble::Sl1Delta] {
        let l = make_insoluble(ctx, which)?;
        let name = format!("{which:?}").to_lowercase();
        rep.check(format!("{name}: Jacobi"), l.revalidate().is_ok(), "");
        let derived = l.rational_derived_series();
        rep.check(
            format!("{name}: derived series stays nonzero"),
            !derived.last().is_some_and(|s| s.is_zero()),
            format!("{} terms", derived.len()),
        );
        rep.check(format!("{name}: saturable"), l.saturable_sufficient(), "");
    }
    Ok(rep)
}

fn levi(ctx: &PadicContext) -> Result<VerifyReport> {
    let mut rep = report("levi", ctx);
    let k = 2;
    let l = make_levi_example(ctx, k)?;
    let r = levi_check(&l, k)?;
    rep.check("[L,L] inside pL", r.powerful, "");
    rep.check("radical = <a, b>", r.radical_is_ab, "");
    rep.check("[h~,x~] = [h,x] mod p^k R", r.bracket_congruence, format!("{} lifts", r.lifts_checked));
    rep.check("[h,x] - 2p^k x~ in R", r.defect_in_radical, "");
    rep.check("defect never in p^k R", r.defect_persists, "");
    Ok(rep)
}

fn p2_groups(precision: u32) -> Result<VerifyReport> {
    let mut rep = VerifyReport {
        fixture: "p2-groups".into(),
        p: 2,
        precision,
        checks: Vec::new(),
    };
    for s in 2..=4u32 {
        let plus = make_p2_group(precision, Sign::Plus, Some(s))?;
        let t = plus.abelianization_torsion()?;
        rep.check(format!("G+({s}) torsion 2^{s}"), t == s, format!("2^{t}"));
        let minus = make_p2_group(precision, Sign::Minus, Some(s))?;
        let t = minus.abelianization_torsion()?;
        rep.check(format!("G-({s}) torsion 2"), t == 1, format!("2^{t}"));
    }
    let flat = make_p2_group(precision, Sign::Plus, None)?;
    rep.check("G+(inf) abelian", flat.action().is_identity(), "");
    Ok(rep)
}
