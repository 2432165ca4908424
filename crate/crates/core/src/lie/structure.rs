//! Centralizers, isolators, the soluble radical and the rank-2 invariant.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::Lattice;
use crate::linalg::{saturated_left_kernel, PMatrix, Smith, Span};

/// Isomorphism invariant of a rank-2 lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoDimInvariant {
    Abelian,
    S(u32),
}

impl fmt::Display for TwoDimInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Abelian => write!(f, "abelian"),
            Self::S(s) => write!(f, "s={s}"),
        }
    }
}

impl Lattice {
    /// `{v : [v, s] = 0}` for every generator `s` of `S`, taken as a saturated
    /// kernel so that vectors killed only by truncation do not count.
    pub fn centralizer(&self, s: &Span) -> Span {
        let d = self.dim();
        let gens = s.basis();
        if gens.is_empty() {
            return self.full_span();
        }
        let mut m = PMatrix::zeros(self.ctx(), d, d * gens.len());
        for i in 0..d {
            let e = crate::linalg::unit_vector(d, i);
            for (g, sv) in gens.iter().enumerate() {
                for (k, x) in self.bracket(&e, sv).into_iter().enumerate() {
                    m.set(i, g * d + k, x);
                }
            }
        }
        saturated_left_kernel(&m)
    }

    /// Centre of the lattice.
    pub fn center(&self) -> Span {
        self.centralizer(&self.full_span())
    }

    /// `log_p |C_L([L,L]) : [L,L]|`, or abelian.
    pub fn two_dim_invariant(&self) -> Result<TwoDimInvariant> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "two_dim_invariant needs rank 2, got {}",
                self.dim()
            )));
        }
        let full = self.full_span();
        let derived = self.bracket_span(&full, &full);
        if derived.is_zero() {
            return Ok(TwoDimInvariant::Abelian);
        }
        // a nonabelian rank-2 lattice centralizes exactly the line through [L, L]
        let c = derived.saturate();
        let s = c.index(&derived)?;
        if s >= self.ctx().precision() {
            return Err(Error::PrecisionExhausted(format!("invariant s = {s} reaches N")));
        }
        Ok(TwoDimInvariant::S(s))
    }

    pub fn is_sublattice(&self, s: &Span) -> bool {
        s.contains(&self.bracket_span(s, s))
    }

    pub fn is_ideal(&self, s: &Span) -> bool {
        s.contains(&self.bracket_span(s, &self.full_span()))
    }

    /// Smallest sublattice span containing `S`.
    pub fn sublattice_closure(&self, s: &Span) -> Span {
        let mut cur = s.clone();
        loop {
            let next = cur.sum(&self.bracket_span(&cur, &cur)).expect("same ambient");
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Isolator of a sublattice: its saturation in `L`. The saturation is
    /// only determined modulo `p^(N - f)`, so bracket closure is checked there.
    pub fn isolator(&self, s: &Span) -> Result<Span> {
        if !self.is_sublattice(s) {
            return Err(Error::NotASublattice);
        }
        let sat = s.saturate();
        let low = self.ctx().with_precision(self.ctx().precision() - s.saturation_loss())?;
        if !self.to_context(&low)?.is_sublattice(&sat.to_context(&low)) {
            return Err(Error::PrecisionExhausted(
                "saturation is not bracket-closed at this precision".into(),
            ));
        }
        Ok(sat)
    }

    /// The soluble radical: vectors Killing-orthogonal to `[L, L]`, taken as
    /// a saturated kernel.
    pub fn soluble_radical(&self) -> Result<Span> {
        let n = self.ctx().precision();
        if self.ctx().p() < 5 {
            return Err(Error::BadParameter("soluble_radical needs p >= 5".into()));
        }
        let full = self.full_span();
        let derived = self.bracket_span(&full, &full);
        let gens = derived.basis();
        if gens.is_empty() {
            return Ok(full);
        }
        let kf = self.killing_matrix();
        let g = PMatrix::from_row_vectors(self.ctx(), self.dim(), gens);
        let pairing = kf.mul(&g.transpose())?;
        let smith = Smith::new(&pairing);
        if let Some(&f) = smith.exponents().iter().max() {
            if 2 * f >= n {
                return Err(Error::PrecisionExhausted(format!(
                    "Killing pairing has an elementary divisor p^{f} at precision {n}"
                )));
            }
        }
        let rad = Span::from_generators(self.ctx(), self.dim(), smith.saturated_left_kernel());
        rad.intersect(&full)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicContext;

    fn two_dim(s: u32, n: u32) -> Lattice {
        let c = PadicContext::new(5, n).unwrap();
        Lattice::from_brackets(&c, &["x", "y"], &[(1, 0, vec![0, 5i128.pow(s)])]).unwrap()
    }

    #[test]
    fn centralizers() {
        let c = PadicContext::new(5, 4).unwrap();
        let h = Lattice::from_brackets(&c, &["x", "y", "z"], &[(0, 1, vec![0, 0, 1])]).unwrap();
        assert_eq!(h.centralizer(&h.zero_span()), h.full_span());
        let z = Span::from_int_generators(&c, 3, &[vec![0, 0, 1]]);
        assert_eq!(h.centralizer(&z), h.full_span());
        assert_eq!(h.center(), z);

        let l = two_dim(2, 6);
        let derived = l.bracket_span(&l.full_span(), &l.full_span());
        let y = Span::from_int_generators(l.ctx(), 2, &[vec![0, 1]]);
        assert_eq!(l.centralizer(&derived), y);
    }

    #[test]
    fn two_dim_invariants() {
        assert_eq!(two_dim(1, 5).two_dim_invariant().unwrap(), TwoDimInvariant::S(1));
        assert_eq!(two_dim(0, 5).two_dim_invariant().unwrap(), TwoDimInvariant::S(0));
        let c = PadicContext::new(5, 5).unwrap();
        let ab = Lattice::abelian(&c, &["x", "y"]);
        assert_eq!(ab.two_dim_invariant().unwrap(), TwoDimInvariant::Abelian);
        // [L,L] = p^3 y only acts as p^6 = 0 mod p^5, but its index is exact
        assert_eq!(two_dim(3, 5).two_dim_invariant().unwrap(), TwoDimInvariant::S(3));
        let moved = two_dim(3, 5)
            .change_basis(&PMatrix::from_rows(&PadicContext::new(5, 5).unwrap(), &[[2, 7], [1, 4]]))
            .unwrap();
        assert_eq!(moved.two_dim_invariant().unwrap(), TwoDimInvariant::S(3));
    }

    #[test]
    fn isolators() {
        let c = PadicContext::new(5, 4).unwrap();
        let h = Lattice::from_brackets(&c, &["x", "y", "z"], &[(0, 1, vec![0, 0, 1])]).unwrap();
        assert_eq!(h.isolator(&h.full_span().scale(1)).unwrap(), h.full_span());
        let s = Span::from_int_generators(&c, 3, &[vec![5, 0, 0], vec![0, 1, 0]]);
        assert_eq!(h.isolator(&s), Err(Error::NotASublattice));
        let closed = h.sublattice_closure(&s);
        assert_eq!(h.isolator(&closed).unwrap(), h.full_span());
    }

    #[test]
    fn radical_of_soluble_is_everything() {
        let l = two_dim(1, 8);
        assert_eq!(l.soluble_radical().unwrap(), l.full_span());
    }
}
