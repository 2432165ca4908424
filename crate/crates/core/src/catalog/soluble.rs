//! Soluble lattices `Z_p x ⋉ Z_p^n` and their groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::is_residually_nilpotent;
use crate::error::{Error, Result};
use crate::group::SemidirectGroup;
use crate::lie::Lattice;
use crate::linalg::{mat_exp, PMatrix};
use crate::padic::PadicContext;

/// The lattice `x, y_1, ..., y_n` with `[y_i, x] = sum_j A_ij y_j` and an
/// abelian fiber.
pub fn lattice_from_action(a: &PMatrix) -> Result<Lattice> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch("action matrix must be square".into()));
    }
    let mut labels = vec!["x".to_string()];
    if n == 1 {
        labels.push("y".into());
    } else {
        labels.extend((1..=n).map(|i| format!("y{i}")));
    }
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let c = a.ctx();
    let brackets: Vec<(usize, usize, Vec<i128>)> = (0..n)
        .map(|i| {
            let mut v = vec![0i128];
            v.extend(a.row(i).iter().map(|&e| c.signed(e)));
            (i + 1, 0, v)
        })
        .collect();
    Lattice::from_brackets(c, &label_refs, &brackets)
}

/// How the generator of `H` acts on the fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    /// `M = I + A`
    #[default]
    Linear,
    /// `M = exp(A)`
    Exp,
}

pub fn group_from_action(a: &PMatrix, kind: ActionKind) -> Result<SemidirectGroup> {
    let id = PMatrix::identity(a.ctx(), a.rows());
    let m = match kind {
        ActionKind::Linear => id.add(a)?,
        ActionKind::Exp => mat_exp(a)?,
    };
    SemidirectGroup::new(m)
}

/// A lattice together with the matching semidirect group.
#[derive(Clone, Debug)]
pub struct SolublePair {
    pub action: PMatrix,
    pub lattice: Lattice,
    pub group: SemidirectGroup,
}

impl SolublePair {
    pub fn from_action(a: PMatrix, kind: ActionKind) -> Result<Self> {
        let lattice = lattice_from_action(&a)?;
        let group = group_from_action(&a, kind)?;
        Ok(Self { action: a, lattice, group })
    }
}

/// `[y, x] = p^s y`, with group action `M = 1 + p^s`.
pub fn make_2dim(ctx: &PadicContext, s: u32) -> Result<SolublePair> {
    if s == 0 {
        return Err(Error::BadParameter(
            "s must be at least 1 for a residually nilpotent lattice".into(),
        ));
    }
    if s >= ctx.precision() {
        return Err(Error::BadParameter(format!("s = {s} vanishes at precision {}", ctx.precision())));
    }
    let a = PMatrix::from_residues(ctx, 1, 1, vec![ctx.p_pow(s)]);
    SolublePair::from_action(a, ActionKind::Linear)
}

/// The families of three-dimensional soluble torsion-free groups for `p > 3`,
/// written as `H ⋉ Z_p^2` with `[y_i, x] = y^(row i of A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SolubleFamily {
    /// Heisenberg-type `[x, y] = z^(p^s)`; `s = None` is the abelian group.
    G0 { s: Option<u32> },
    G1 { s: u32 },
    G2 { s: u32, r: u32, d: i128 },
    G3 { s: u32, r: u32, d: i128 },
    G4 { s: u32, r: u32 },
    /// as `G4` with the non-residue `ρ`
    G5 { s: u32, r: u32 },
}

impl fmt::Display for SolubleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::G0 { s: None } => write!(f, "G0(inf)"),
            Self::G0 { s: Some(s) } => write!(f, "G0({s})"),
            Self::G1 { s } => write!(f, "G1({s})"),
            Self::G2 { s, r, d } => write!(f, "G2({s},{r},{d})"),
            Self::G3 { s, r, d } => write!(f, "G3({s},{r},{d})"),
            Self::G4 { s, r } => write!(f, "G4({s},{r})"),
            Self::G5 { s, r } => write!(f, "G5({s},{r})"),
        }
    }
}

impl SolubleFamily {
    /// Parse `name` (`G0`..`G5`) with parameters; `s = None` only for `G0`.
    pub fn from_parts(name: &str, s: Option<u32>, r: Option<u32>, d: Option<i128>) -> Result<Self> {
        let need = |v: Option<u32>, what: &str| {
            v.ok_or_else(|| Error::BadParameter(format!("{name} needs {what}")))
        };
        let needd = || d.ok_or_else(|| Error::BadParameter(format!("{name} needs d")));
        Ok(match name.to_ascii_uppercase().as_str() {
            "G0" => Self::G0 { s },
            "G1" => Self::G1 { s: need(s, "s")? },
            "G2" => Self::G2 { s: need(s, "s")?, r: need(r, "r")?, d: needd()? },
            "G3" => Self::G3 { s: need(s, "s")?, r: need(r, "r")?, d: needd()? },
            "G4" => Self::G4 { s: need(s, "s")?, r: need(r, "r")? },
            "G5" => Self::G5 { s: need(s, "s")?, r: need(r, "r")? },
            other => return Err(Error::BadParameter(format!("unknown family `{other}`"))),
        })
    }

    fn check_parameters(&self, ctx: &PadicContext) -> Result<()> {
        let bad = |msg: String| Err(Error::BadParameter(format!("{self}: {msg}")));
        match *self {
            Self::G0 { .. } => Ok(()),
            Self::G1 { s } if s < 1 => bad("needs s >= 1".into()),
            Self::G2 { s, r, .. } if s < 1 || r < 1 => bad("needs s, r >= 1".into()),
            Self::G3 { s, r, d } if s < 1 && !(r >= 1 && ctx.valuation(ctx.reduce_int(d)) >= 1) => {
                bad("needs s >= 1, or r >= 1 and p | d".into())
            }
            Self::G4 { s, r } | Self::G5 { s, r } if s + r < 1 => bad("needs s + r >= 1".into()),
            _ => Ok(()),
        }
    }

    /// The fiber matrix `A`, rows read from the relations `[y_i, x]`.
    pub fn matrix(&self, ctx: &PadicContext) -> Result<PMatrix> {
        if ctx.p() <= 3 {
            return Err(Error::BadParameter("the soluble families need p > 3".into()));
        }
        self.check_parameters(ctx)?;
        let p = |k: u32| ctx.p_pow(k) as i128;
        let rho = ctx.rho().expect("odd prime context") as i128;
        let rows: [[i128; 2]; 2] = match *self {
            Self::G0 { s: None } => [[0, 0], [0, 0]],
            Self::G0 { s: Some(s) } => [[0, -p(s)], [0, 0]],
            Self::G1 { s } => [[p(s), 0], [0, p(s)]],
            Self::G2 { s, r, d } => [[p(s), p(s + r) * d], [p(s + r), p(s)]],
            Self::G3 { s, r, d } => [[0, p(s) * d], [p(s), p(s + r)]],
            Self::G4 { s, r } => [[0, p(s + r)], [p(s), 0]],
            Self::G5 { s, r } => [[0, p(s + r) * rho], [p(s), 0]],
        };
        let a = PMatrix::from_rows(ctx, &rows);
        if !is_residually_nilpotent(&a) {
            return Err(Error::ResidualNilpotenceViolated);
        }
        Ok(a)
    }

    pub fn labels(&self) -> [&'static str; 3] {
        match self {
            Self::G0 { .. } => ["x", "y", "z"],
            _ => ["x", "y1", "y2"],
        }
    }
}

pub fn make_soluble(ctx: &PadicContext, family: SolubleFamily, kind: ActionKind) -> Result<SolublePair> {
    let a = family.matrix(ctx)?;
    let mut pair = SolublePair::from_action(a, kind)?;
    pair.lattice = pair.lattice.with_labels(&family.labels());
    Ok(pair)
}

/// Every family member with `s, r ∈ {0, 1, 2}` and `d ∈ {0, 1, ρ, p}` that
/// satisfies the family's constraints.
pub fn soluble_grid(ctx: &PadicContext) -> Vec<SolubleFamily> {
    let rho = ctx.rho().unwrap_or(0) as i128;
    let p = ctx.p() as i128;
    let ds = [0, 1, rho, p];
    let mut out = vec![SolubleFamily::G0 { s: None }];
    for s in 0..=2 {
        out.push(SolubleFamily::G0 { s: Some(s) });
    }
    for s in 0..=2 {
        out.push(SolubleFamily::G1 { s });
    }
    for s in 0..=2 {
        for r in 0..=2 {
            for &d in &ds {
                out.push(SolubleFamily::G2 { s, r, d });
                out.push(SolubleFamily::G3 { s, r, d });
            }
        }
    }
    for s in 0..=2 {
        for r in 0..=2 {
            out.push(SolubleFamily::G4 { s, r });
            out.push(SolubleFamily::G5 { s, r });
        }
    }
    out.sort_by_key(|f| f.to_string());
    out.dedup();
    out.retain(|f| f.check_parameters(ctx).is_ok());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, SimilarityDescriptor};
    use crate::lie::TwoDimInvariant;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 6).unwrap()
    }

    #[test]
    fn two_dim_relation_and_invariant() {
        let c = ctx();
        let pair = make_2dim(&c, 2).unwrap();
        assert_eq!(pair.lattice.two_dim_invariant().unwrap(), TwoDimInvariant::S(2));
        let g = &pair.group;
        let x = g.element(1, &[0]);
        let y = g.element(0, &[1]);
        assert_eq!(g.commutator(&y, &x), g.pow_int(&y, 25));
        assert!(make_2dim(&c, 0).is_err());
    }

    #[test]
    fn g1_is_scalar() {
        let c = ctx();
        let a = SolubleFamily::G1 { s: 2 }.matrix(&c).unwrap();
        assert_eq!(classify(&a).unwrap(), SimilarityDescriptor::Scalar { s: 2 });
    }

    #[test]
    fn constraints_are_enforced() {
        let c = ctx();
        assert!(SolubleFamily::G1 { s: 0 }.matrix(&c).is_err());
        assert!(SolubleFamily::G3 { s: 0, r: 1, d: 1 }.matrix(&c).is_err());
        assert!(SolubleFamily::G3 { s: 0, r: 1, d: 5 }.matrix(&c).is_ok());
        assert!(SolubleFamily::G4 { s: 0, r: 0 }.matrix(&c).is_err());
    }

    #[test]
    fn grid_size() {
        // G0: 4, G1: 2, G2: 16, G3: 24 + 4, G4/G5: 8 each
        assert_eq!(soluble_grid(&ctx()).len(), 66);
    }

    #[test]
    fn heisenberg_labels() {
        let c = ctx();
        let pair = make_soluble(&c, SolubleFamily::G0 { s: Some(1) }, ActionKind::Linear).unwrap();
        let l = &pair.lattice;
        let (x, y, z) = (
            l.basis_vector("x").unwrap(),
            l.basis_vector("y").unwrap(),
            l.basis_vector("z").unwrap(),
        );
        assert_eq!(l.bracket(&x, &y), z.iter().map(|&v| v * 5).collect::<Vec<_>>());
    }
}
