use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicScalar};

/// A dense matrix over `Z/p^N`, stored row-major as canonical residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMatrix {
    ctx: PadicContext,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PMatrix {
    pub fn zeros(ctx: &PadicContext, rows: usize, cols: usize) -> Self {
        Self {
            ctx: *ctx,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ctx: &PadicContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ctx.modulus();
        }
        m
    }

    /// Build from signed integer rows; entries are reduced mod `p^N`.
    pub fn from_rows<R: AsRef<[i128]>>(ctx: &PadicContext, rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&x| ctx.reduce_int(x)));
        }
        Self {
            ctx: *ctx,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Build from residues that are already reduced.
    pub fn from_residues(ctx: &PadicContext, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < ctx.modulus()));
        Self {
            ctx: *ctx,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose rows are the given residue vectors.
    pub fn from_row_vectors(ctx: &PadicContext, cols: usize, vectors: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        Self::from_residues(ctx, vectors.len(), cols, data)
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value % self.ctx.modulus();
    }

    pub fn entry(&self, i: usize, j: usize) -> PadicScalar {
        self.ctx.scalar(self.get(i, j) as i128)
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.ctx, self.rows)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        self.ctx.check_compatible(&other.ctx)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.add(a, b))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.sub(a, b))
            .collect();
        Ok(Self { data, ..*self })
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|&a| self.ctx.neg(a)).collect();
        Self { data, ..*self }
    }

    pub fn scale(&self, c: u64) -> Self {
        let data = self.data.iter().map(|&a| self.ctx.mul(a, c)).collect();
        Self { data, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_compatible(&other.ctx)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.ctx.modulus() as u128;
        let mut data = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u128 * other.get(k, j) as u128;
                    // keep the accumulator bounded; entries are below 2^62
                    if acc >= 1 << 126 {
                        acc %= m;
                    }
                }
                data[i * other.cols + j] = (acc % m) as u64;
            }
        }
        Ok(Self {
            ctx: self.ctx,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.ctx, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("square");
            }
        }
        acc
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let m = self.ctx.modulus() as u128;
        (0..self.cols)
            .map(|j| {
                let acc = v.iter().enumerate().fold(0u128, |acc, (i, &x)| {
                    (acc + x as u128 * self.get(i, j) as u128) % m
                });
                acc as u64
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let m = self.ctx.modulus() as u128;
        (0..self.rows)
            .map(|i| {
                let acc = self.row(i).iter().zip(v).fold(0u128, |acc, (&a, &x)| {
                    (acc + a as u128 * x as u128) % m
                });
                acc as u64
            })
            .collect()
    }

    /// Minimum valuation over all entries; `N` for the zero matrix.
    pub fn valuation(&self) -> u32 {
        self.data
            .iter()
            .map(|&x| self.ctx.valuation(x))
            .min()
            .unwrap_or(self.ctx.precision())
    }

    pub fn trace(&self) -> u64 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.ctx.add(acc, self.get(i, i)))
    }

    /// Determinant of a 2x2 matrix.
    pub fn det2(&self) -> u64 {
        assert!(self.rows == 2 && self.cols == 2, "det2 needs a 2x2 matrix");
        let c = &self.ctx;
        c.sub(
            c.mul(self.get(0, 0), self.get(1, 1)),
            c.mul(self.get(0, 1), self.get(1, 0)),
        )
    }

    /// Inverse by Gauss-Jordan elimination on unit pivots. A matrix over
    /// the local ring `Z/p^N` is invertible iff it is invertible mod `p`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let c = self.ctx;
        let mut a = self.clone();
        let mut inv = Self::identity(&c, n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| c.is_unit(a.get(r, col)))
                .ok_or_else(|| Error::NotAUnit(a.get(col, col)))?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let u = c.inv(a.get(col, col)).expect("unit pivot");
            a.scale_row(col, u);
            inv.scale_row(col, u);
            for r in 0..n {
                if r != col {
                    let f = a.get(r, col);
                    if f != 0 {
                        a.add_row_multiple(r, col, c.neg(f));
                        inv.add_row_multiple(r, col, c.neg(f));
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.inverse().is_ok()
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for k in 0..self.cols {
                self.data.swap(i * self.cols + k, j * self.cols + k);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, f: u64) {
        for k in 0..self.cols {
            let idx = i * self.cols + k;
            self.data[idx] = self.ctx.mul(self.data[idx], f);
        }
    }

    /// row_i += f * row_j
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, f: u64) {
        for k in 0..self.cols {
            let v = self.ctx.mul(self.data[j * self.cols + k], f);
            let idx = i * self.cols + k;
            self.data[idx] = self.ctx.add(self.data[idx], v);
        }
    }

    /// The same residues viewed in another precision of the same prime:
    /// truncated when lowering, lifted by representative when raising.
    pub fn to_context(&self, ctx: &PadicContext) -> Self {
        assert_eq!(ctx.p(), self.ctx.p());
        let data = self.data.iter().map(|&x| x % ctx.modulus()).collect();
        Self {
            ctx: *ctx,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut m = Self::zeros(&self.ctx, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }
}

impl fmt::Display for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|&x| self.ctx.signed(x).to_string())
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-major JSON form `{"rows": r, "entries": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixRepr {
    pub rows: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
    pub entries: Vec<i128>,
}

impl MatrixRepr {
    pub fn from_matrix(m: &PMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: None,
            entries: m.entries().iter().map(|&x| x as i128).collect(),
        }
    }

    pub fn into_matrix(self, ctx: &PadicContext) -> Result<PMatrix> {
        if self.rows == 0 {
            return Err(Error::Parse("matrix with zero rows".into()));
        }
        let cols = self.cols.unwrap_or(self.entries.len() / self.rows);
        if cols * self.rows != self.entries.len() {
            return Err(Error::Parse(format!(
                "{} entries do not fill {} rows",
                self.entries.len(),
                self.rows
            )));
        }
        let data = self.entries.iter().map(|&x| ctx.reduce_int(x)).collect();
        Ok(PMatrix::from_residues(ctx, self.rows, cols, data))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(5, 3).unwrap()
    }

    #[test]
    fn inverse_roundtrip() {
        let c = ctx();
        let a = PMatrix::from_rows(&c, &[[2, 5, 1], [0, 1, 7], [3, 3, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn singular_mod_p_is_not_invertible() {
        let c = ctx();
        let a = PMatrix::from_rows(&c, &[[1, 2], [5, 10]]);
        assert!(a.inverse().is_err());
    }

    #[test]
    fn row_and_column_action() {
        let c = ctx();
        let a = PMatrix::from_rows(&c, &[[0, 0], [1, 0]]);
        assert_eq!(a.apply_row(&[0, 1]), vec![1, 0]);
        assert_eq!(a.apply_col(&[1, 0]), vec![0, 1]);
    }

    #[test]
    fn json_shape() {
        let c = ctx();
        let a = PMatrix::from_rows(&c, &[[1, -1], [0, 2]]);
        let s = serde_json::to_string(&MatrixRepr::from_matrix(&a)).unwrap();
        assert_eq!(s, r#"{"rows":2,"entries":[1,124,0,2]}"#);
        let back: MatrixRepr = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_matrix(&c).unwrap(), a);
    }
}
