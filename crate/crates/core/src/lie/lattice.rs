use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{PMatrix, Span};
use crate::padic::PadicContext;

/// A `Z_p`-Lie lattice of rank `d` given by structure constants mod `p^N`:
/// `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ctx: PadicContext,
    dim: usize,
    labels: Vec<String>,
    // consts[(i * d + j) * d + k] = c_ij^k
    consts: Vec<u64>,
}

/// One nonzero bracket `[b_i, b_j] = c`, as used by the JSON format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub c: Vec<i128>,
}

impl Lattice {
    /// Validate a full table `consts[i][j][k]`.
    pub fn new(ctx: &PadicContext, labels: Vec<String>, consts: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let d = labels.len();
        if consts.len() != d || consts.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(Error::DimensionMismatch(format!(
                "structure constants do not form a {d}x{d}x{d} table"
            )));
        }
        let mut flat = Vec::with_capacity(d * d * d);
        for row in &consts {
            for c in row {
                flat.extend(c.iter().map(|&x| x % ctx.modulus()));
            }
        }
        let l = Self {
            ctx: *ctx,
            dim: d,
            labels,
            consts: flat,
        };
        l.validate()?;
        Ok(l)
    }

    /// Build from the nonzero brackets with `i < j` or `i > j`; the other
    /// order is filled in by antisymmetry.
    pub fn from_brackets(ctx: &PadicContext, labels: &[&str], brackets: &[(usize, usize, Vec<i128>)]) -> Result<Self> {
        let d = labels.len();
        let mut given = vec![None::<Vec<u64>>; d * d];
        for (i, j, c) in brackets {
            let (i, j) = (*i, *j);
            if i >= d || j >= d || c.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i},{j}) does not fit dimension {d}"
                )));
            }
            let v: Vec<u64> = c.iter().map(|&x| ctx.reduce_int(x)).collect();
            if i == j {
                if let Some(k) = v.iter().position(|&x| x != 0) {
                    return Err(Error::AntisymmetryViolated { i, j, k });
                }
                continue;
            }
            let neg: Vec<u64> = v.iter().map(|&x| ctx.neg(x)).collect();
            for (slot, val) in [(i * d + j, v), (j * d + i, neg)] {
                match &given[slot] {
                    Some(old) if *old != val => {
                        let k = old.iter().zip(&val).position(|(a, b)| a != b).unwrap_or(0);
                        return Err(Error::AntisymmetryViolated { i, j, k });
                    }
                    _ => given[slot] = Some(val),
                }
            }
        }
        let consts = given
            .into_iter()
            .flat_map(|c| c.unwrap_or_else(|| vec![0; d]))
            .collect();
        let l = Self {
            ctx: *ctx,
            dim: d,
            labels: labels.iter().map(|s| s.to_string()).collect(),
            consts,
        };
        l.validate()?;
        Ok(l)
    }

    pub fn abelian(ctx: &PadicContext, labels: &[&str]) -> Self {
        Self::from_brackets(ctx, labels, &[]).expect("abelian constants are valid")
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        let c = &self.ctx;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let a = self.c(i, j, k);
                    let b = self.c(j, i, k);
                    if c.add(a, b) != 0 || (i == j && a != 0) {
                        return Err(Error::AntisymmetryViolated { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    if !self.jacobi_holds(i, j, k) {
                        return Err(Error::JacobiViolated(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on one basis triple.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let e = |t| crate::linalg::unit_vector(self.dim, t);
        let (x, y, z) = (e(i), e(j), e(k));
        let t1 = self.bracket(&self.bracket(&x, &y), &z);
        let t2 = self.bracket(&self.bracket(&y, &z), &x);
        let t3 = self.bracket(&self.bracket(&z, &x), &y);
        (0..self.dim).all(|t| self.ctx.add(self.ctx.add(t1[t], t2[t]), t3[t]) == 0)
    }

    /// Re-run antisymmetry and Jacobi checks on all basis triples.
    pub fn revalidate(&self) -> Result<()> {
        self.validate()
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Basis vector by label.
    pub fn basis_vector(&self, label: &str) -> Option<Vec<u64>> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| crate::linalg::unit_vector(self.dim, i))
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> u64 {
        self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// `[b_i, b_j]` as a coordinate vector.
    pub fn structure_vector(&self, i: usize, j: usize) -> &[u64] {
        let start = (i * self.dim + j) * self.dim;
        &self.consts[start..start + self.dim]
    }

    pub fn bracket(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let d = self.dim;
        assert!(u.len() == d && v.len() == d, "vector outside the ambient module");
        let m = self.ctx.modulus() as u128;
        let mut acc = vec![0u128; d];
        for i in 0..d {
            if u[i] == 0 {
                continue;
            }
            for j in 0..d {
                if v[j] == 0 || i == j {
                    continue;
                }
                let f = (u[i] as u128 * v[j] as u128) % m;
                for (k, a) in acc.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if c != 0 {
                        *a = (*a + f * c as u128) % m;
                    }
                }
            }
        }
        acc.into_iter().map(|x| x as u64).collect()
    }

    /// Span of all brackets of canonical generators.
    pub fn bracket_span(&self, s: &Span, t: &Span) -> Span {
        let gens: Vec<Vec<u64>> = s
            .basis()
            .iter()
            .flat_map(|a| t.basis().iter().map(move |b| (a, b)))
            .map(|(a, b)| self.bracket(a, b))
            .collect();
        Span::from_generators(&self.ctx, self.dim, gens)
    }

    pub fn full_span(&self) -> Span {
        Span::full(&self.ctx, self.dim)
    }

    pub fn zero_span(&self) -> Span {
        Span::zero(&self.ctx, self.dim)
    }

    /// Matrix of `w -> [w, u]` acting on row vectors.
    pub fn ad_right(&self, u: &[u64]) -> PMatrix {
        let rows: Vec<Vec<u64>> = (0..self.dim)
            .map(|i| self.bracket(&crate::linalg::unit_vector(self.dim, i), u))
            .collect();
        PMatrix::from_row_vectors(&self.ctx, self.dim, &rows)
    }

    /// Killing form `tr(ad b_i ad b_j)` on the standard basis.
    pub fn killing_matrix(&self) -> PMatrix {
        let ads: Vec<PMatrix> = (0..self.dim)
            .map(|i| self.ad_right(&crate::linalg::unit_vector(self.dim, i)))
            .collect();
        let mut k = PMatrix::zeros(&self.ctx, self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let t = ads[i].mul(&ads[j]).expect("square").trace();
                k.set(i, j, t);
                k.set(j, i, t);
            }
        }
        k
    }

    /// Structure constants in the basis given by the rows of `b`
    /// (`b'_i = sum_j b_ij b_j`). `b` must be invertible.
    pub fn change_basis(&self, b: &PMatrix) -> Result<Self> {
        let d = self.dim;
        if b.rows() != d || b.cols() != d {
            return Err(Error::DimensionMismatch("basis change of wrong size".into()));
        }
        let b_inv = b.inverse()?;
        let rows = b.row_vectors();
        let mut consts = vec![vec![vec![0u64; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let w = self.bracket(&rows[i], &rows[j]);
                consts[i][j] = b_inv.apply_row(&w);
            }
        }
        Self::new(&self.ctx, self.labels.clone(), consts)
    }

    /// The same constants at a different precision of the same prime.
    pub fn to_context(&self, ctx: &PadicContext) -> Result<Self> {
        if ctx.p() != self.ctx.p() {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: ctx.to_string(),
            });
        }
        let consts = self.consts.iter().map(|&x| x % ctx.modulus()).collect();
        let l = Self {
            ctx: *ctx,
            dim: self.dim,
            labels: self.labels.clone(),
            consts,
        };
        l.validate()?;
        Ok(l)
    }

    /// Direct sum with the second summand's basis appended.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.ctx.check_compatible(&other.ctx)?;
        let d = self.dim + other.dim;
        let mut consts = vec![vec![vec![0u64; d]; d]; d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                consts[i][j][..self.dim].copy_from_slice(self.structure_vector(i, j));
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                consts[self.dim + i][self.dim + j][self.dim..]
                    .copy_from_slice(other.structure_vector(i, j));
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        Self::new(&self.ctx, labels, consts)
    }

    pub fn to_repr(&self) -> LatticeRepr {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.structure_vector(i, j);
                if v.iter().any(|&x| x != 0) {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        c: v.iter().map(|&x| self.ctx.signed(x)).collect(),
                    });
                }
            }
        }
        LatticeRepr {
            p: self.ctx.p(),
            precision: self.ctx.precision(),
            dim: self.dim,
            labels: self.labels.clone(),
            brackets,
        }
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({}; {})", self.ctx, self)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.structure_vector(i, j);
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(k, &x)| format!("{}{}", self.ctx.signed(x), self.labels[k]))
                    .collect();
                if !terms.is_empty() {
                    parts.push(format!("[{},{}]={}", self.labels[i], self.labels[j], terms.join("+")));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "abelian on {}", self.labels.join(","))
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// JSON form of a lattice; omitted pairs bracket to zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRepr {
    pub p: u64,
    pub precision: u32,
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

impl LatticeRepr {
    pub fn into_lattice(self) -> Result<Lattice> {
        let ctx = PadicContext::new(self.p, self.precision)?;
        self.into_lattice_with(&ctx)
    }

    /// Load against an explicit context (for a custom `rho`).
    pub fn into_lattice_with(self, ctx: &PadicContext) -> Result<Lattice> {
        if ctx.p() != self.p || ctx.precision() != self.precision {
            return Err(Error::ContextMismatch {
                left: ctx.to_string(),
                right: format!("Z/{}^{}", self.p, self.precision),
            });
        }
        let labels: Vec<String> = if self.labels.is_empty() {
            (0..self.dim).map(|i| format!("b{i}")).collect()
        } else if self.labels.len() == self.dim {
            self.labels
        } else {
            return Err(Error::Parse(format!(
                "{} labels for dimension {}",
                self.labels.len(),
                self.dim
            )));
        };
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let brackets: Vec<(usize, usize, Vec<i128>)> =
            self.brackets.into_iter().map(|b| (b.i, b.j, b.c)).collect();
        Lattice::from_brackets(ctx, &refs, &brackets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg(ctx: &PadicContext) -> Lattice {
        Lattice::from_brackets(ctx, &["x", "y", "z"], &[(0, 1, vec![0, 0, 1])]).unwrap()
    }

    #[test]
    fn abelian_is_valid() {
        let c = PadicContext::new(5, 3).unwrap();
        let l = Lattice::abelian(&c, &["a", "b"]);
        assert_eq!(l.bracket(&[1, 2], &[3, 4]), vec![0, 0]);
    }

    #[test]
    fn heisenberg_bracket() {
        let c = PadicContext::new(5, 3).unwrap();
        let l = heisenberg(&c);
        assert_eq!(l.bracket(&[1, 0, 0], &[0, 1, 0]), vec![0, 0, 1]);
        assert_eq!(l.bracket(&[0, 1, 0], &[1, 0, 0]), vec![0, 0, c.modulus() - 1]);
        assert_eq!(l.bracket(&[3, 1, 4], &[3, 1, 4]), vec![0, 0, 0]);
    }

    #[test]
    fn jacobi_violation_is_reported() {
        let c = PadicContext::new(5, 3).unwrap();
        let err = Lattice::from_brackets(
            &c,
            &["x", "y", "z"],
            &[(0, 1, vec![0, 0, 1]), (0, 2, vec![1, 0, 0])],
        )
        .unwrap_err();
        assert_eq!(err, Error::JacobiViolated(0, 1, 2));
    }

    #[test]
    fn inconsistent_antisymmetry_is_reported() {
        let c = PadicContext::new(5, 3).unwrap();
        let err = Lattice::from_brackets(
            &c,
            &["x", "y"],
            &[(0, 1, vec![1, 0]), (1, 0, vec![1, 0])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::AntisymmetryViolated { .. }));
    }

    #[test]
    fn json_roundtrip() {
        let c = PadicContext::new(5, 3).unwrap();
        let l = heisenberg(&c);
        let s = serde_json::to_string(&l.to_repr()).unwrap();
        assert_eq!(
            s,
            r#"{"p":5,"precision":3,"dim":3,"labels":["x","y","z"],"brackets":[{"i":0,"j":1,"c":[0,0,1]}]}"#
        );
        let back: LatticeRepr = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_lattice().unwrap(), l);
    }

    #[test]
    fn basis_change_preserves_validity() {
        let c = PadicContext::new(5, 3).unwrap();
        let l = heisenberg(&c);
        let b = PMatrix::from_rows(&c, &[[1, 1, 0], [0, 1, 0], [2, 0, 1]]);
        let m = l.change_basis(&b).unwrap();
        // [x + y, y] = z and z is the third new basis vector minus 2x
        let z_new = m.bracket(&[1, 0, 0], &[0, 1, 0]);
        let back = b.apply_row(&z_new);
        assert_eq!(back, vec![0, 0, 1]);
    }
}
