//! Submodules of `(Z/p^N)^d`.
//!
//! Spans are kept in Howell form: rows with strictly increasing pivot
//! columns, pivots equal to `p^e`, entries above a pivot reduced modulo it,
//! and closed under the "multiply by `p^(N-e)`" operation so that the rows
//! below any pivot span everything in the module vanishing up to that column.
//! Over the chain ring `Z/p^N` this form is unique, so spans compare by
//! their bases.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::matrix::PMatrix;
use crate::padic::PadicContext;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Span {
    ctx: PadicContext,
    dim: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<(usize, u32)>,
}

impl Span {
    pub fn zero(ctx: &PadicContext, dim: usize) -> Self {
        Self {
            ctx: *ctx,
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ctx: &PadicContext, dim: usize) -> Self {
        let gens: Vec<Vec<u64>> = (0..dim).map(|i| unit_vector(dim, i)).collect();
        Self::from_generators(ctx, dim, gens)
    }

    /// Canonical span of arbitrary residue vectors.
    pub fn from_generators<I>(ctx: &PadicContext, dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let rows: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), dim, "generator of wrong length");
                v.into_iter().map(|x| x % ctx.modulus()).collect()
            })
            .collect();
        let (basis, pivots) = howell(ctx, dim, rows);
        Self {
            ctx: *ctx,
            dim,
            basis,
            pivots,
        }
    }

    /// Span of signed integer vectors.
    pub fn from_int_generators(ctx: &PadicContext, dim: usize, gens: &[Vec<i128>]) -> Self {
        Self::from_generators(
            ctx,
            dim,
            gens.iter()
                .map(|g| g.iter().map(|&x| ctx.reduce_int(x)).collect()),
        )
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// `(column, valuation)` of each canonical row.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Re-run the canonical form; spans are always canonical, so this is the
    /// identity on values and exists for symmetry with generator input.
    pub fn canonicalize(&self) -> Self {
        Self::from_generators(&self.ctx, self.dim, self.basis.clone())
    }

    /// `log_p |S|`.
    pub fn log_size(&self) -> u32 {
        let n = self.ctx.precision();
        self.pivots.iter().map(|&(_, e)| n - e).sum()
    }

    pub fn member(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let c = &self.ctx;
        let mut v: Vec<u64> = v.iter().map(|&x| x % c.modulus()).collect();
        for (row, &(col, e)) in self.basis.iter().zip(&self.pivots) {
            let x = v[col];
            if x == 0 {
                continue;
            }
            if c.valuation(x) < e {
                return false;
            }
            let q = c.div_p_pow(x, e);
            sub_multiple(c, &mut v, row, q);
        }
        v.iter().all(|&x| x == 0)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        self.ctx.check_compatible(&other.ctx)?;
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx)
            && self.dim == other.dim
            && other.basis.iter().all(|v| self.member(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::from_generators(
            &self.ctx,
            self.dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// Add generators to a span.
    pub fn extend<I: IntoIterator<Item = Vec<u64>>>(&self, gens: I) -> Self {
        Self::from_generators(
            &self.ctx,
            self.dim,
            self.basis.iter().cloned().chain(gens),
        )
    }

    /// `{A v : v in S}` with `v` read as a column vector.
    pub fn image(&self, a: &PMatrix) -> Result<Self> {
        self.ctx.check_compatible(a.ctx())?;
        if a.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {} columns on ambient {}",
                a.cols(),
                self.dim
            )));
        }
        Ok(Self::from_generators(
            &self.ctx,
            a.rows(),
            self.basis.iter().map(|v| a.apply_col(v)),
        ))
    }

    /// `{v A : v in S}` with `v` read as a row vector.
    pub fn image_row(&self, a: &PMatrix) -> Result<Self> {
        self.ctx.check_compatible(a.ctx())?;
        if a.rows() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {} rows on ambient {}",
                a.rows(),
                self.dim
            )));
        }
        Ok(Self::from_generators(
            &self.ctx,
            a.cols(),
            self.basis.iter().map(|v| a.apply_row(v)),
        ))
    }

    /// `p^k S`.
    pub fn scale(&self, k: u32) -> Self {
        let f = self.ctx.p_pow(k);
        Self::from_generators(
            &self.ctx,
            self.dim,
            self.basis
                .iter()
                .map(|v| v.iter().map(|&x| self.ctx.mul(x, f)).collect()),
        )
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let d = self.dim;
        let mut rows = Vec::with_capacity(self.basis.len() + other.basis.len());
        for v in &self.basis {
            let mut r = v.clone();
            r.extend_from_slice(v);
            rows.push(r);
        }
        for v in &other.basis {
            let mut r = v.clone();
            r.extend(std::iter::repeat_n(0, d));
            rows.push(r);
        }
        let (basis, pivots) = howell(&self.ctx, 2 * d, rows);
        let gens = basis
            .into_iter()
            .zip(pivots)
            .filter(|(_, (col, _))| *col >= d)
            .map(|(r, _)| r[d..].to_vec());
        Ok(Self::from_generators(&self.ctx, d, gens))
    }

    /// `log_p |self : other|`, or [`Error::NotContained`].
    pub fn index(&self, other: &Self) -> Result<u32> {
        self.check_ambient(other)?;
        if !self.contains(other) {
            return Err(Error::NotContained);
        }
        Ok(self.log_size() - other.log_size())
    }

    /// Smith form data of the canonical basis.
    pub fn smith(&self) -> Smith {
        let m = PMatrix::from_row_vectors(&self.ctx, self.dim, &self.basis);
        Smith::new(&m)
    }

    /// Elementary divisor exponents `f_1 <= f_2 <= ...` (nonzero ones only).
    pub fn elementary_divisors(&self) -> Vec<u32> {
        let mut f = self.smith().exponents();
        f.sort_unstable();
        f
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.smith().exponents().len()
    }

    /// `{v : p^k v in S for some k}`: the isolator of `S` in the ambient module.
    pub fn saturate(&self) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let smith = self.smith();
        let vinv = smith.v_inverse();
        let gens = smith
            .diagonal()
            .iter()
            .enumerate()
            .filter(|(_, &f)| f.is_some())
            .map(|(i, _)| vinv.row(i).to_vec())
            .collect::<Vec<_>>();
        Self::from_generators(&self.ctx, self.dim, gens)
    }

    /// The span reduced to a context of the same prime and lower precision.
    pub fn to_context(&self, ctx: &PadicContext) -> Self {
        assert_eq!(ctx.p(), self.ctx.p());
        let m = ctx.modulus();
        Self::from_generators(ctx, self.dim, self.basis.iter().map(|r| r.iter().map(|&x| x % m).collect()))
    }

    /// Largest nonzero elementary divisor exponent: [`Span::saturate`] is
    /// determined modulo `p^(N - f)` only.
    pub fn saturation_loss(&self) -> u32 {
        self.elementary_divisors().last().copied().unwrap_or(0)
    }

    pub fn is_saturated(&self) -> bool {
        *self == self.saturate()
    }

    /// Membership of every element of `self` in the same-ambient span `other`.
    pub fn is_subspan_of(&self, other: &Self) -> bool {
        other.contains(self)
    }

    /// Smallest `k` with `p^k` times every element of the ambient module in
    /// `self`, if the span has full rank; `None` otherwise.
    pub fn exponent_of_cokernel(&self) -> Option<u32> {
        let f = self.elementary_divisors();
        if f.len() < self.dim {
            None
        } else {
            f.last().copied().or(Some(0))
        }
    }
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Span[{}; d={}; ", self.ctx, self.dim)?;
        f.debug_list().entries(&self.basis).finish()?;
        write!(f, "]")
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let xs: Vec<String> = r.iter().map(|&x| self.ctx.signed(x).to_string()).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// JSON form: a generator list, canonicalised on load.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpanRepr {
    pub dim: usize,
    pub generators: Vec<Vec<i128>>,
}

impl SpanRepr {
    pub fn from_span(s: &Span) -> Self {
        Self {
            dim: s.dim,
            generators: s
                .basis
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect(),
        }
    }

    pub fn into_span(self, ctx: &PadicContext) -> Result<Span> {
        if let Some(g) = self.generators.iter().find(|g| g.len() != self.dim) {
            return Err(Error::Parse(format!(
                "generator of length {} in ambient {}",
                g.len(),
                self.dim
            )));
        }
        Ok(Span::from_int_generators(ctx, self.dim, &self.generators))
    }
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn sub_multiple(c: &PadicContext, v: &mut [u64], row: &[u64], q: u64) {
    if q == 0 {
        return;
    }
    for (x, &r) in v.iter_mut().zip(row) {
        if r != 0 {
            *x = c.sub(*x, c.mul(q, r));
        }
    }
}

type Pivots = Vec<(usize, u32)>;

fn howell(c: &PadicContext, dim: usize, rows: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Pivots) {
    let n = c.precision();
    let mut pending: Vec<Vec<u64>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Pivots = Vec::new();

    for col in 0..dim {
        let best = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r[col] != 0)
            .min_by_key(|(i, r)| (c.valuation(r[col]), *i))
            .map(|(i, _)| i);
        let Some(best) = best else { continue };
        let mut piv = pending.swap_remove(best);
        let e = c.valuation(piv[col]);
        let u = c.inv(c.unit_part(piv[col])).expect("unit part is a unit");
        for x in piv.iter_mut() {
            *x = c.mul(*x, u);
        }
        let pe = c.p_pow(e);
        debug_assert_eq!(piv[col], pe);
        for r in pending.iter_mut() {
            if r[col] != 0 {
                let q = c.div_p_pow(r[col], e);
                sub_multiple(c, r, &piv, q);
                debug_assert_eq!(r[col], 0);
            }
        }
        if e > 0 {
            let f = c.p_pow(n - e);
            let closure: Vec<u64> = piv.iter().map(|&x| c.mul(x, f)).collect();
            pending.push(closure);
        }
        pending.retain(|r| r.iter().any(|&x| x != 0));
        out.push(piv);
        pivots.push((col, e));
    }
    debug_assert!(pending.is_empty());

    // reduce entries above each pivot into [0, p^e)
    for i in 0..out.len() {
        let (col, e) = pivots[i];
        let pe = c.p_pow(e);
        for j in 0..i {
            let x = out[j][col];
            let q = if e == 0 { x } else { x / pe };
            if q != 0 {
                let (head, tail) = out.split_at_mut(i);
                sub_multiple(c, &mut head[j], &tail[0], q);
            }
        }
    }
    (out, pivots)
}

/// Smith normal form `U G V = D` over `Z/p^N`, with `V^{-1}` tracked.
#[derive(Clone, Debug)]
pub struct Smith {
    u: PMatrix,
    v: PMatrix,
    v_inv: PMatrix,
    diag: Vec<Option<u32>>,
}

impl Smith {
    pub fn new(g: &PMatrix) -> Self {
        let c = *g.ctx();
        let (r, m) = (g.rows(), g.cols());
        let mut a = g.clone();
        let mut u = PMatrix::identity(&c, r);
        let mut v = PMatrix::identity(&c, m);
        let mut v_inv = PMatrix::identity(&c, m);
        let mut diag = Vec::new();
        for k in 0..r.min(m) {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in k..r {
                for j in k..m {
                    let x = a.get(i, j);
                    if x != 0 {
                        let val = c.valuation(x);
                        if best.is_none_or(|(b, _, _)| val < b) {
                            best = Some((val, i, j));
                        }
                    }
                }
            }
            let Some((e, bi, bj)) = best else { break };
            a.swap_rows(k, bi);
            u.swap_rows(k, bi);
            if bj != k {
                swap_cols(&mut a, k, bj);
                swap_cols(&mut v, k, bj);
                v_inv.swap_rows(k, bj);
            }
            let w = c.inv(c.unit_part(a.get(k, k))).expect("unit");
            a.scale_row(k, w);
            u.scale_row(k, w);
            for i in k + 1..r {
                let x = a.get(i, k);
                if x != 0 {
                    let q = c.div_p_pow(x, e);
                    a.add_row_multiple(i, k, c.neg(q));
                    u.add_row_multiple(i, k, c.neg(q));
                }
            }
            for j in k + 1..m {
                let x = a.get(k, j);
                if x != 0 {
                    let q = c.div_p_pow(x, e);
                    // col_j -= q col_k on A and V; row_k += q row_j on V^{-1}
                    add_col_multiple(&mut a, j, k, c.neg(q));
                    add_col_multiple(&mut v, j, k, c.neg(q));
                    v_inv.add_row_multiple(k, j, q);
                }
            }
            diag.push(Some(e));
        }
        while diag.len() < r.min(m) {
            diag.push(None);
        }
        Self { u, v, v_inv, diag }
    }

    pub fn u(&self) -> &PMatrix {
        &self.u
    }

    pub fn v(&self) -> &PMatrix {
        &self.v
    }

    pub fn v_inverse(&self) -> &PMatrix {
        &self.v_inv
    }

    /// Diagonal exponents; `None` marks a zero diagonal entry.
    pub fn diagonal(&self) -> &[Option<u32>] {
        &self.diag
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.diag.iter().flatten().copied().collect()
    }

    /// Rows `x` of `U` with `x G = 0` exactly: the saturated left kernel.
    pub fn saturated_left_kernel(&self) -> Vec<Vec<u64>> {
        (0..self.u.rows())
            .filter(|&i| self.diag.get(i).is_none_or(|d| d.is_none()))
            .map(|i| self.u.row(i).to_vec())
            .collect()
    }
}

fn swap_cols(a: &mut PMatrix, i: usize, j: usize) {
    for r in 0..a.rows() {
        let (x, y) = (a.get(r, i), a.get(r, j));
        a.set(r, i, y);
        a.set(r, j, x);
    }
}

/// col_i += f * col_j
fn add_col_multiple(a: &mut PMatrix, i: usize, j: usize, f: u64) {
    let c = *a.ctx();
    for r in 0..a.rows() {
        let x = c.add(a.get(r, i), c.mul(f, a.get(r, j)));
        a.set(r, i, x);
    }
}

/// All `x` with `x C = 0` at precision (row vectors), as a span.
pub fn left_kernel(c_mat: &PMatrix) -> Span {
    let ctx = *c_mat.ctx();
    let (r, m) = (c_mat.rows(), c_mat.cols());
    let rows: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut row = c_mat.row(i).to_vec();
            row.extend(unit_vector(r, i));
            row
        })
        .collect();
    let (basis, pivots) = howell(&ctx, m + r, rows);
    let gens = basis
        .into_iter()
        .zip(pivots)
        .filter(|(_, (col, _))| *col >= m)
        .map(|(row, _)| row[m..].to_vec());
    Span::from_generators(&ctx, r, gens)
}

/// The saturated left kernel of `C`: vectors killed by `C` in the
/// characteristic-zero sense, read off a Smith form.
pub fn saturated_left_kernel(c_mat: &PMatrix) -> Span {
    let smith = Smith::new(c_mat);
    Span::from_generators(c_mat.ctx(), c_mat.rows(), smith.saturated_left_kernel())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 3).unwrap()
    }

    fn span(gens: &[Vec<i128>]) -> Span {
        let d = gens.first().map_or(2, |g| g.len());
        Span::from_int_generators(&ctx(), d, gens)
    }

    #[test]
    fn diagonal_span_pivots() {
        let s = span(&[vec![5, 0], vec![0, 1]]);
        assert_eq!(s.pivots(), &[(0, 1), (1, 0)]);
    }

    #[test]
    fn duplicate_rows_collapse() {
        let s = span(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(s.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn zero_generator_gives_empty_basis() {
        assert!(span(&[vec![0, 0]]).is_zero());
    }

    #[test]
    fn membership() {
        let c = ctx();
        assert!(span(&[vec![1, 0]]).member(&[5, 0]));
        assert!(!span(&[vec![5, 0]]).member(&[1, 0]));
        assert!(span(&[vec![5, 0]]).member(&[0, 0]));
        // closure rows make p^(N-e) multiples visible
        let s = span(&[vec![5, 1]]);
        assert!(s.member(&[0, c.reduce_int(25)]));
    }

    #[test]
    fn index_and_not_contained() {
        let c = ctx();
        let full = Span::full(&c, 2);
        let p = full.scale(1);
        assert_eq!(full.index(&p).unwrap(), 2);
        assert_eq!(p.index(&full), Err(Error::NotContained));
    }

    #[test]
    fn column_image() {
        let c = ctx();
        let a = PMatrix::from_rows(&c, &[[0, 0], [1, 0]]);
        let img = Span::full(&c, 2).image(&a).unwrap();
        assert_eq!(img, span(&[vec![0, 1]]));
    }

    #[test]
    fn intersection() {
        let a = span(&[vec![1, 0]]);
        let b = span(&[vec![0, 1]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        let c = span(&[vec![1, 1]]);
        let d = span(&[vec![5, 0], vec![0, 5]]);
        assert_eq!(c.intersect(&d).unwrap(), span(&[vec![5, 5]]));
    }

    #[test]
    fn saturation() {
        let c = ctx();
        assert_eq!(span(&[vec![5, 0], vec![0, 1]]).saturate(), Span::full(&c, 2));
        assert_eq!(span(&[vec![5, 10]]).saturate(), span(&[vec![1, 2]]));
        assert_eq!(Span::full(&c, 2).saturate(), Span::full(&c, 2));
    }

    #[test]
    fn kernels() {
        let c = ctx();
        // x (5, 0)^T = 0 has the full precision kernel <(25)> but saturated kernel 0
        let m = PMatrix::from_rows(&c, &[[5], [0]]);
        assert_eq!(left_kernel(&m), span(&[vec![25, 0], vec![0, 1]]));
        assert_eq!(saturated_left_kernel(&m), span(&[vec![0, 1]]));
    }

    #[test]
    fn smith_reconstructs() {
        let c = ctx();
        let g = PMatrix::from_rows(&c, &[[5, 10, 0], [2, 3, 25], [7, 13, 25]]);
        let s = Smith::new(&g);
        let d = s.u().mul(&g).unwrap().mul(s.v()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d.get(i, j), 0);
                }
            }
        }
        assert!(s.v().mul(s.v_inverse()).unwrap().is_identity());
    }
}
