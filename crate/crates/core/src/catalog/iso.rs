use std::fmt;

use serde::Serialize;

use crate::classify::{classify, SimilarityDescriptor};
use crate::error::{Error, Result};
use crate::lie::Lattice;
use crate::linalg::{unit_vector, PMatrix, Smith};

/// Isomorphism invariant of a soluble three-dimensional lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Invariant3 {
    Abelian,
    /// `[L, L]` has index `p^s` in its isolator
    Heisenberg { s: u32 },
    /// class of the action on the unique two-dimensional abelian ideal
    Soluble { descriptor: SimilarityDescriptor },
}

impl Invariant3 {
    pub fn same(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Soluble { descriptor: a }, Self::Soluble { descriptor: b }) => a.same_class(b),
            _ => self == other,
        }
    }
}

impl fmt::Display for Invariant3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Abelian => write!(f, "abelian"),
            Self::Heisenberg { s } => write!(f, "heisenberg s={s}"),
            Self::Soluble { descriptor } => write!(f, "soluble {descriptor}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoOutcome {
    pub isomorphic: bool,
    pub left: Invariant3,
    pub right: Invariant3,
}

/// The action of a complement on `I = C_L([L, L])`, in a basis of `I`.
///
/// `I` is the saturated kernel of `v -> ([v, g])_g` over a basis of the
/// isolator of `[L, L]`. Saturating `[L, L]` costs its largest elementary
/// divisor exponent `f_1` and the kernel costs the largest Smith exponent
/// `f_2` of the bracket map, so the matrix is determined modulo
/// `p^(N - f_1 - f_2)`.
#[derive(Clone, Debug)]
pub struct IdealAction {
    /// the matrix, in a context of the determined precision
    pub matrix: PMatrix,
    pub precision: u32,
}

pub fn ideal_action(l: &Lattice) -> Result<IdealAction> {
    let c = *l.ctx();
    let full = l.full_span();
    let derived = l.bracket_span(&full, &full);
    let mid = c.with_precision(c.precision() - derived.saturation_loss())?;
    let l = l.to_context(&mid)?;
    let sat = derived.saturate().to_context(&mid);
    let gens = sat.basis();
    let mut m = PMatrix::zeros(&mid, 3, 3 * gens.len());
    for i in 0..3 {
        let e = unit_vector(3, i);
        for (g, sv) in gens.iter().enumerate() {
            for (k, x) in l.bracket(&e, sv).into_iter().enumerate() {
                m.set(i, g * 3 + k, x);
            }
        }
    }
    let bracket_smith = Smith::new(&m);
    let f = bracket_smith.exponents().into_iter().max().unwrap_or(0);
    let kernel = bracket_smith.saturated_left_kernel();
    let ideal = PMatrix::from_row_vectors(&mid, 3, &kernel);
    let smith = Smith::new(&ideal);
    if smith.exponents() != [0, 0] {
        return Err(Error::PrecisionExhausted(format!(
            "centralizer of [L, L] is not a saturated rank-2 span (exponents {:?})",
            smith.exponents()
        )));
    }
    let precision = mid.precision() - f;
    let low = c.with_precision(precision)?;
    let v_inv = smith.v_inverse();
    let complement = v_inv.row(2).to_vec();
    let mut a = PMatrix::zeros(&low, 2, 2);
    for i in 0..2 {
        let w = l.bracket(v_inv.row(i), &complement);
        let coords = smith.v().apply_row(&w);
        if !coords[2].is_multiple_of(low.modulus()) {
            return Err(Error::PrecisionExhausted("the ideal is not invariant at precision".into()));
        }
        a.set(i, 0, coords[0] % low.modulus());
        a.set(i, 1, coords[1] % low.modulus());
    }
    Ok(IdealAction { matrix: a, precision })
}

pub fn invariant_3dim(l: &Lattice) -> Result<Invariant3> {
    if l.dim() != 3 {
        return Err(Error::NotDim3(l.dim()));
    }
    let full = l.full_span();
    let derived = l.bracket_span(&full, &full);
    if derived.is_zero() {
        return Ok(Invariant3::Abelian);
    }
    if l.is_rationally_nilpotent() {
        let s = derived.saturate().index(&derived)?;
        return Ok(Invariant3::Heisenberg { s });
    }
    if !l.is_soluble() {
        return Err(Error::NotSoluble);
    }
    let descriptor = classify(&ideal_action(l)?.matrix)?;
    Ok(Invariant3::Soluble { descriptor })
}

/// Compare two soluble three-dimensional lattices by their invariants.
pub fn iso_test_3dim(l1: &Lattice, l2: &Lattice) -> Result<IsoOutcome> {
    l1.ctx().check_compatible(l2.ctx())?;
    let left = invariant_3dim(l1)?;
    let right = invariant_3dim(l2)?;
    Ok(IsoOutcome {
        isomorphic: left.same(&right),
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_insoluble, make_soluble, ActionKind, Insoluble, SolubleFamily};
    use crate::padic::PadicContext;

    #[test]
    fn self_and_distinct() {
        let c = PadicContext::new(5, 8).unwrap();
        let g4 = make_soluble(&c, SolubleFamily::G4 { s: 0, r: 1 }, ActionKind::Linear).unwrap();
        let g5 = make_soluble(&c, SolubleFamily::G5 { s: 0, r: 1 }, ActionKind::Linear).unwrap();
        assert!(iso_test_3dim(&g4.lattice, &g4.lattice).unwrap().isomorphic);
        assert!(!iso_test_3dim(&g4.lattice, &g5.lattice).unwrap().isomorphic);
    }

    #[test]
    fn basis_change_invariance() {
        let c = PadicContext::new(5, 8).unwrap();
        let g = make_soluble(&c, SolubleFamily::G3 { s: 1, r: 2, d: 2 }, ActionKind::Linear).unwrap();
        let b = PMatrix::from_rows(&c, &[[2, 1, 7], [0, 1, 3], [5, 4, 1]]);
        let moved = g.lattice.change_basis(&b).unwrap();
        assert!(iso_test_3dim(&g.lattice, &moved).unwrap().isomorphic);
    }

    #[test]
    fn rejects_insoluble_and_wrong_dim() {
        let c = PadicContext::new(5, 8).unwrap();
        let sl = make_insoluble(&c, Insoluble::Sl2Tri).unwrap();
        assert_eq!(invariant_3dim(&sl), Err(Error::NotSoluble));
        let two = Lattice::abelian(&c, &["a", "b"]);
        assert_eq!(invariant_3dim(&two), Err(Error::NotDim3(2)));
    }

    #[test]
    fn heisenberg_levels() {
        let c = PadicContext::new(5, 8).unwrap();
        let h = make_soluble(&c, SolubleFamily::G0 { s: Some(2) }, ActionKind::Linear).unwrap();
        assert_eq!(invariant_3dim(&h.lattice).unwrap(), Invariant3::Heisenberg { s: 2 });
    }
}
