use std::fs;
use std::path::Path;

use lazard_core::bch::{hausdorff_table, Bch, FiniteLieRing, LieRing};
use lazard_core::catalog::{
    iso_test_3dim, make_2dim, make_example_dim_p, make_insoluble, make_levi_example, make_p2_group,
    make_p3_pair, make_soluble, manifest, verify_fixture, ActionKind, FixtureConfig, Insoluble, Sign,
    SolubleFamily, FIXTURES,
};
use lazard_core::lie::LatticeRepr;
use lazard_core::linalg::MatrixRepr;
use lazard_core::{classify, classify_mod, Error, Lattice, PMatrix, PadicContext, Result};
use serde_json::{json, Value};

use crate::args::{BchOp, Cli, Command, Kind};

/// What a command produced: text for the terminal, JSON for `-o`/`--json`,
/// and whether every check passed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, passed: true }
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Classify { matrix, exact } => cmd_classify(cli, matrix, *exact),
        Command::Verify { fixture } => cmd_verify(cli, fixture),
        Command::Fixtures => Ok(Report::ok(FIXTURES.join("\n"), json!(FIXTURES))),
        Command::Iso { a, b } => cmd_iso(cli, a, b),
        Command::Construct { name, s, r, d, k, kind } => cmd_construct(cli, name, s.as_deref(), *r, *d, *k, *kind),
        Command::Bch { op } => cmd_bch(cli, op),
        Command::Manifest => {
            let entries = manifest();
            let text = entries
                .iter()
                .map(|e| format!("{:<10} {:<7} {:<40} {}", e.name, format!("{:?}", e.kind).to_lowercase(), e.parameters, e.provenance))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::ok(text, serde_json::to_value(&entries).expect("serializable")))
        }
        Command::Acceptance => crate::acceptance::run(cli),
    }
}

pub fn context(cli: &Cli, default_n: u32) -> Result<PadicContext> {
    let n = cli.precision.unwrap_or(default_n);
    match cli.rho {
        Some(rho) => PadicContext::with_rho(cli.p, n, rho),
        None => PadicContext::new(cli.p, n),
    }
}

fn parse_ints(s: &str) -> Result<Vec<i128>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i128>()
                .map_err(|_| Error::Parse(format!("`{t}` is not an integer")))
        })
        .collect()
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn cmd_classify(cli: &Cli, input: &str, exact: bool) -> Result<Report> {
    let ctx = context(cli, 6)?;
    let m = if Path::new(input).is_file() {
        let repr: MatrixRepr = serde_json::from_value(read_json(Path::new(input))?)
            .map_err(|e| Error::Parse(format!("{input}: {e}")))?;
        repr.into_matrix(&ctx)?
    } else {
        let entries = parse_ints(input)?;
        if entries.len() != 4 {
            return Err(Error::Parse(format!("expected 4 entries, got {}", entries.len())));
        }
        PMatrix::from_rows(&ctx, &[[entries[0], entries[1]], [entries[2], entries[3]]])
    };
    let desc = if exact { classify_mod(&m)? } else { classify(&m)? };
    let json = json!({
        "p": ctx.p(),
        "precision": ctx.precision(),
        "descriptor": desc,
        "text": desc.to_string(),
    });
    Ok(Report::ok(desc.to_string(), json))
}

fn cmd_verify(cli: &Cli, fixture: &str) -> Result<Report> {
    let cfg = FixtureConfig {
        p: cli.p,
        precision: cli.precision,
        rho: cli.rho,
    };
    let rep = verify_fixture(fixture, &cfg)?;
    Ok(Report {
        text: rep.to_string(),
        json: serde_json::to_value(&rep).expect("serializable"),
        passed: rep.passed(),
    })
}

/// A lattice file, either a bare lattice or a `construct` output.
fn load_lattice(cli: &Cli, path: &Path) -> Result<Lattice> {
    let mut value = read_json(path)?;
    if let Some(inner) = value.get_mut("lattice") {
        value = inner.take();
    }
    let repr: LatticeRepr =
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match cli.rho {
        Some(rho) => {
            let ctx = PadicContext::with_rho(repr.p, repr.precision, rho)?;
            repr.into_lattice_with(&ctx)
        }
        None => repr.into_lattice(),
    }
}

fn cmd_iso(cli: &Cli, a: &Path, b: &Path) -> Result<Report> {
    let (la, lb) = (load_lattice(cli, a)?, load_lattice(cli, b)?);
    let out = iso_test_3dim(&la, &lb)?;
    let text = format!("{}\n  {}: {}\n  {}: {}", out.isomorphic, a.display(), out.left, b.display(), out.right);
    Ok(Report::ok(text, serde_json::to_value(&out).expect("serializable")))
}

fn parse_s(s: Option<&str>) -> Result<Option<u32>> {
    match s {
        None | Some("inf") => Ok(None),
        Some(t) => t
            .parse()
            .map(Some)
            .map_err(|_| Error::Parse(format!("--s expects an integer or `inf`, got `{t}`"))),
    }
}

fn ring_json(r: &FiniteLieRing) -> Value {
    let d = r.labels().len();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let mut ei = vec![0; d];
            let mut ej = vec![0; d];
            ei[i] = 1;
            ej[j] = 1;
            let c = r.bracket(&ei, &ej);
            if c.iter().any(|&x| x != 0) {
                let c: Vec<i128> = c.iter().map(|&x| r.ctx().signed(x)).collect();
                brackets.push(json!({ "i": i, "j": j, "c": c }));
            }
        }
    }
    json!({ "p": r.ctx().p(), "exponents": r.exponents(), "labels": r.labels(), "brackets": brackets })
}

fn cmd_construct(
    cli: &Cli,
    name: &str,
    s: Option<&str>,
    r: Option<u32>,
    d: Option<i128>,
    k: u32,
    kind: Kind,
) -> Result<Report> {
    let kind = match kind {
        Kind::Linear => ActionKind::Linear,
        Kind::Exp => ActionKind::Exp,
    };
    let ctx = || context(cli, 8);
    let need_s = || parse_s(s)?.ok_or_else(|| Error::BadParameter(format!("{name} needs --s")));
    let (text, json) = match name {
        "two-dim" => {
            let pair = make_2dim(&ctx()?, need_s()?)?;
            pair_output(name, &pair.lattice, Some(&pair.group))
        }
        "p3-pair" => {
            let pair = make_p3_pair(cli.p)?;
            let text = format!(
                "L1 exponents {:?}: [y,x] = p y\nL2 exponents {:?}: [x,y] = z",
                pair.l1.exponents(),
                pair.l2.exponents()
            );
            (text, json!({ "name": name, "l1": ring_json(&pair.l1), "l2": ring_json(&pair.l2) }))
        }
        "dim-p" => {
            let ex = make_example_dim_p(&ctx()?)?;
            pair_output(name, &ex.lattice, Some(&ex.group))
        }
        "sl2tri" | "sl1delta" => {
            let which = if name == "sl2tri" { Insoluble::Sl2Tri } else { Insoluble::Sl1Delta };
            pair_output(name, &make_insoluble(&ctx()?, which)?, None)
        }
        "levi" => {
            let c = context(cli, 16)?;
            pair_output(name, &make_levi_example(&c, k)?, None)
        }
        "p2-plus" | "p2-minus" => {
            let sign = if name == "p2-plus" { Sign::Plus } else { Sign::Minus };
            let g = make_p2_group(cli.precision.unwrap_or(10), sign, parse_s(s)?)?;
            let text = format!("x acts on y by {}", g.action());
            (text, json!({ "name": name, "group": g.to_repr() }))
        }
        fam if fam.to_ascii_uppercase().starts_with('G') => {
            let family = SolubleFamily::from_parts(fam, parse_s(s)?, r, d)?;
            let pair = make_soluble(&ctx()?, family, kind)?;
            let (text, mut json) = pair_output(&family.to_string(), &pair.lattice, Some(&pair.group));
            json["action"] = json!(MatrixRepr::from_matrix(&pair.action));
            (text, json)
        }
        other => return Err(Error::BadParameter(format!("unknown catalog entry `{other}`"))),
    };
    Ok(Report::ok(text, json))
}

fn pair_output(name: &str, l: &Lattice, g: Option<&lazard_core::SemidirectGroup>) -> (String, Value) {
    let mut text = format!("{name}\nlattice: {l}");
    let mut json = json!({ "name": name, "lattice": l.to_repr() });
    if let Some(g) = g {
        text.push_str(&format!("\ngroup: x acts on the fiber by {}", g.action()));
        json["group"] = json!(g.to_repr());
    }
    (text, json)
}

/// A label, or comma-separated coordinates.
fn parse_vector(l: &Lattice, s: &str) -> Result<Vec<u64>> {
    if let Some(v) = l.basis_vector(s) {
        return Ok(v);
    }
    let ints = parse_ints(s)?;
    if ints.len() != l.dim() {
        return Err(Error::Parse(format!("`{s}` is neither a label nor a vector of length {}", l.dim())));
    }
    Ok(ints.iter().map(|&x| l.ctx().reduce_int(x)).collect())
}

fn render(l: &Lattice, v: &[u64]) -> String {
    let xs: Vec<String> = v.iter().map(|&x| l.ctx().signed(x).to_string()).collect();
    format!("({})", xs.join(","))
}

fn cmd_bch(cli: &Cli, op: &BchOp) -> Result<Report> {
    match op {
        BchOp::Table { weight } => {
            if *weight == 0 || *weight > 8 {
                return Err(Error::BadParameter("weight must be between 1 and 8".into()));
            }
            let t = hausdorff_table(*weight);
            Ok(Report::ok(t.to_string(), json!(t.to_repr())))
        }
        BchOp::Mul { lattice, u, v } | BchOp::Commutator { lattice, u, v } => {
            let l = load_lattice(cli, lattice)?;
            let (a, b) = (parse_vector(&l, u)?, parse_vector(&l, v)?);
            let g = Bch::new(&l)?;
            let w = match op {
                BchOp::Mul { .. } => g.mul(&a, &b),
                _ => g.commutator(&a, &b),
            };
            let signed: Vec<i128> = w.iter().map(|&x| l.ctx().signed(x)).collect();
            Ok(Report::ok(render(&l, &w), json!({ "result": signed })))
        }
    }
}
