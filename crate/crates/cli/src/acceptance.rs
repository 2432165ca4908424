use std::collections::HashMap;
use std::time::Instant;

use lazard_core::bch::hausdorff_table;
use lazard_core::catalog::{
    iso_test_3dim, make_soluble, soluble_grid, verify_fixture, ActionKind, FixtureConfig, FIXTURES,
};
use lazard_core::classify::OrbitPartition;
use lazard_core::{classify_mod, GroupElement, PMatrix, PadicContext, Result};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::Cli;
use crate::commands::{context, Report};

struct Line {
    name: String,
    passed: bool,
    detail: String,
    secs: f64,
}

fn timed(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Line {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    Line {
        name: name.to_string(),
        passed,
        detail,
        secs: start.elapsed().as_secs_f64(),
    }
}

fn residues(rng: &mut ChaCha8Rng, ctx: &PadicContext, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(0..ctx.modulus())).collect()
}

fn invertible(rng: &mut ChaCha8Rng, ctx: &PadicContext, n: usize) -> PMatrix {
    loop {
        let m = PMatrix::from_residues(ctx, n, n, residues(rng, ctx, n * n));
        if m.is_invertible() {
            return m;
        }
    }
}

fn classifier_invariance(rng: &mut ChaCha8Rng, ctx: &PadicContext) -> Result<(bool, String)> {
    let trials = 200;
    for _ in 0..trials {
        let a = PMatrix::from_residues(ctx, 2, 2, residues(rng, ctx, 4));
        let b = invertible(rng, ctx, 2);
        let u = loop {
            let u = rng.gen_range(1..ctx.modulus());
            if ctx.is_unit(u) {
                break u;
            }
        };
        let conj = b.inverse()?.mul(&a)?.mul(&b)?.scale(u);
        let (d1, d2) = (classify_mod(&a)?, classify_mod(&conj)?);
        if !d1.same_class(&d2) {
            return Ok((false, format!("{a} gives {d1} but its conjugate gives {d2}")));
        }
    }
    Ok((true, format!("{trials} conjugate pairs agree at {ctx}")))
}

fn orbits_mod_9() -> Result<(bool, String)> {
    let ctx = PadicContext::new(3, 2)?;
    let part = OrbitPartition::build(3, 2)?;
    let mut owner = HashMap::new();
    for a in part.matrices() {
        let desc = classify_mod(&PMatrix::from_residues(&ctx, 2, 2, a.to_vec()))?;
        let id = part.orbit_id(&a);
        if *owner.entry(id).or_insert(desc) != desc {
            return Ok((false, format!("orbit {id} carries two descriptors")));
        }
    }
    let mut labels: Vec<String> = owner.values().map(|d| d.to_string()).collect();
    labels.sort();
    labels.dedup();
    let ok = labels.len() == part.orbit_count();
    Ok((ok, format!("{} orbits, {} descriptors", part.orbit_count(), labels.len())))
}

fn iso_basis_change(rng: &mut ChaCha8Rng, ctx: &PadicContext) -> Result<(bool, String)> {
    let grid = soluble_grid(ctx);
    let picks = 8.min(grid.len());
    for _ in 0..picks {
        let fam = grid[rng.gen_range(0..grid.len())];
        let l = make_soluble(ctx, fam, ActionKind::Linear)?.lattice;
        let moved = l.change_basis(&invertible(rng, ctx, 3))?;
        if !iso_test_3dim(&l, &moved)?.isomorphic {
            return Ok((false, format!("{fam} is not recognized after a change of basis")));
        }
    }
    Ok((true, format!("{picks} grid lattices at {ctx}")))
}

fn group_axioms(rng: &mut ChaCha8Rng, ctx: &PadicContext) -> Result<(bool, String)> {
    let grid = soluble_grid(ctx);
    let trials = 50;
    for _ in 0..trials {
        let fam = grid[rng.gen_range(0..grid.len())];
        let g = make_soluble(ctx, fam, ActionKind::Exp)?.group;
        let mut elem = || GroupElement::new(rng.gen_range(0..ctx.modulus()), residues(rng, ctx, 2));
        let (x, y, z) = (elem(), elem(), elem());
        let assoc = g.mul(&g.mul(&x, &y), &z) == g.mul(&x, &g.mul(&y, &z));
        let inverse = g.mul(&x, &g.inv(&x)) == g.identity();
        let model = g.matrix_model(&g.mul(&x, &y)) == g.matrix_model(&x).mul(&g.matrix_model(&y))?;
        if !(assoc && inverse && model) {
            return Ok((false, format!("{fam}: group law fails on {x}, {y}, {z}")));
        }
    }
    Ok((true, format!("{trials} random triples")))
}

fn hausdorff_coefficients() -> Result<(bool, String)> {
    let t = hausdorff_table(4);
    let expected = [
        ("X", Ratio::new(1, 1)),
        ("Y", Ratio::new(1, 1)),
        ("XY", Ratio::new(1, 2)),
        ("XYY", Ratio::new(1, 12)),
        ("XYX", Ratio::new(-1, 12)),
    ];
    for (w, c) in expected {
        if t.coefficient(w) != c {
            return Ok((false, format!("coefficient of {w} is {}, expected {c}", t.coefficient(w))));
        }
    }
    Ok((true, t.to_string()))
}

pub fn run(cli: &Cli) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let cfg = FixtureConfig {
        p: cli.p,
        precision: cli.precision,
        rho: cli.rho,
    };
    let mut lines = Vec::new();
    for name in FIXTURES {
        lines.push(timed(&format!("fixture {name}"), || {
            let rep = verify_fixture(name, &cfg)?;
            let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            let detail = if failed.is_empty() {
                format!("{} checks", rep.checks.len())
            } else {
                format!("failed: {}", failed.join("; "))
            };
            Ok((rep.passed(), detail))
        }));
    }
    let ctx6 = context(cli, 6)?;
    let ctx14 = context(cli, 14)?;
    lines.push(timed("classifier invariance", || classifier_invariance(&mut rng, &ctx6)));
    lines.push(timed("orbits mod 9", orbits_mod_9));
    lines.push(timed("iso under change of basis", || iso_basis_change(&mut rng, &ctx14)));
    lines.push(timed("semidirect group axioms", || group_axioms(&mut rng, &ctx6)));
    lines.push(timed("hausdorff coefficients", hausdorff_coefficients));

    let passed = lines.iter().all(|l| l.passed);
    let text = lines
        .iter()
        .map(|l| {
            let mark = if l.passed { "PASS" } else { "FAIL" };
            format!("{mark} {} [{:.2}s]: {}", l.name, l.secs, l.detail)
        })
        .collect::<Vec<_>>()
        .join("\n");
    let json: Vec<Value> = lines
        .iter()
        .map(|l| json!({ "name": l.name, "passed": l.passed, "detail": l.detail }))
        .collect();
    Ok(Report {
        text,
        json: json!({ "seed": cli.seed, "passed": passed, "checks": json }),
        passed,
    })
}
