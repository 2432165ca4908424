use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pro_p_order, unit_vector, PMatrix};
use crate::padic::{PadicContext, PadicScalar};

/// `Z_p ⋉ Z_p^(d-1)` modulo `p^N`, where the generator of `Z_p` acts on
/// row vectors of the fiber by `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectGroup {
    ctx: PadicContext,
    m: PMatrix,
    order: u32,
}

/// `(a, v)` with `a` the `H`-coordinate and `v` the fiber coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: u64,
    pub v: Vec<u64>,
}

impl GroupElement {
    pub fn new(a: u64, v: Vec<u64>) -> Self {
        Self { a, v }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", self.a, v.join(","))
    }
}

impl SemidirectGroup {
    /// Validates that `M` is invertible and unipotent mod `p`, and that
    /// `(1, v)^(p^N)` is trivial, so that exponents may be read mod `p^N`.
    pub fn new(m: PMatrix) -> Result<Self> {
        let ctx = *m.ctx();
        if !m.is_square() {
            return Err(Error::DimensionMismatch("action matrix must be square".into()));
        }
        if !m.is_invertible() {
            return Err(Error::NotProP("action matrix is not invertible".into()));
        }
        let order = pro_p_order(&m)?;
        if order > ctx.precision() {
            return Err(Error::NotProP(format!(
                "M^(p^N) is not the identity at precision N = {}",
                ctx.precision()
            )));
        }
        let g = Self { ctx, m, order };
        let pn = g.ctx.p().pow(g.ctx.precision());
        let xn = g.geometric_sum(&g.m, pn as u128);
        if !xn.is_zero() {
            return Err(Error::NotProP("(1, v)^(p^N) is not trivial at precision".into()));
        }
        Ok(g)
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn action(&self) -> &PMatrix {
        &self.m
    }

    pub fn fiber_dim(&self) -> usize {
        self.m.rows()
    }

    /// Total dimension `d`.
    pub fn dim(&self) -> usize {
        self.fiber_dim() + 1
    }

    /// Least `k` with `M^(p^k) = I`.
    pub fn action_order(&self) -> u32 {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, vec![0; self.fiber_dim()])
    }

    /// `x` and `y_1, ..., y_(d-1)`.
    pub fn standard_generators(&self) -> Vec<GroupElement> {
        let d = self.fiber_dim();
        let mut g = vec![GroupElement::new(1, vec![0; d])];
        g.extend((0..d).map(|i| GroupElement::new(0, unit_vector(d, i))));
        g
    }

    pub fn element(&self, a: i128, v: &[i128]) -> GroupElement {
        assert_eq!(v.len(), self.fiber_dim());
        GroupElement::new(
            self.ctx.reduce_int(a),
            v.iter().map(|&x| self.ctx.reduce_int(x)).collect(),
        )
    }

    /// `M^a` for an `H`-coordinate.
    pub fn action_power(&self, a: u64) -> PMatrix {
        let e = a % (self.ctx.p() as u128).pow(self.order) as u64;
        self.m.pow(e)
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let c = &self.ctx;
        let moved = self.action_power(h.a).apply_row(&g.v);
        GroupElement::new(
            c.add(g.a, h.a),
            moved.iter().zip(&h.v).map(|(&x, &y)| c.add(x, y)).collect(),
        )
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        let c = &self.ctx;
        let na = c.neg(g.a);
        let moved = self.action_power(na).apply_row(&g.v);
        GroupElement::new(na, moved.iter().map(|&x| c.neg(x)).collect())
    }

    /// `g^-1 h^-1 g h`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let gh = self.mul(g, h);
        self.mul(&self.inv(g), &self.mul(&self.inv(h), &gh))
    }

    /// `h^-1 g h`.
    pub fn conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul(&self.inv(h), &self.mul(g, h))
    }

    /// `sum_{j < n} Q^j` by binary splitting.
    pub fn geometric_sum(&self, q: &PMatrix, n: u128) -> PMatrix {
        fn rec(q: &PMatrix, n: u128) -> (PMatrix, PMatrix) {
            let d = q.rows();
            if n == 0 {
                return (PMatrix::zeros(q.ctx(), d, d), PMatrix::identity(q.ctx(), d));
            }
            if n.is_multiple_of(2) {
                let (s, pw) = rec(q, n / 2);
                let id = PMatrix::identity(q.ctx(), d);
                let s2 = s.mul(&id.add(&pw).expect("square")).expect("square");
                (s2, pw.mul(&pw).expect("square"))
            } else {
                let (s, pw) = rec(q, n - 1);
                (s.add(&pw).expect("square"), pw.mul(q).expect("square"))
            }
        }
        rec(q, n).0
    }

    /// `g^n` for a non-negative integer or, with negative `n`, a power of
    /// the inverse.
    pub fn pow_int(&self, g: &GroupElement, n: i128) -> GroupElement {
        if n < 0 {
            return self.pow_int(&self.inv(g), -n);
        }
        let c = &self.ctx;
        let q = self.action_power(g.a);
        let s = self.geometric_sum(&q, n as u128);
        GroupElement::new(c.mul(g.a, c.reduce_int(n)), s.apply_row(&g.v))
    }

    /// `g^λ` for a `p`-adic exponent (well defined since the quotient has
    /// exponent dividing `p^N`).
    pub fn pow(&self, g: &GroupElement, lambda: &PadicScalar) -> GroupElement {
        self.pow_int(g, lambda.value() as i128)
    }

    /// Faithful `d x d` matrix model: `(a, v) -> [[M^a, 0], [v, 1]]`.
    pub fn matrix_model(&self, g: &GroupElement) -> PMatrix {
        let f = self.fiber_dim();
        let ma = self.action_power(g.a);
        let mut out = PMatrix::zeros(&self.ctx, f + 1, f + 1);
        for i in 0..f {
            for j in 0..f {
                out.set(i, j, ma.get(i, j));
            }
            out.set(f, i, g.v[i]);
        }
        out.set(f, f, 1);
        out
    }

    pub fn to_repr(&self) -> GroupRepr {
        GroupRepr {
            p: self.ctx.p(),
            precision: self.ctx.precision(),
            fiber_dim: self.fiber_dim(),
            action: self
                .m
                .row_vectors()
                .into_iter()
                .map(|r| r.into_iter().map(|x| self.ctx.signed(x)).collect())
                .collect(),
        }
    }
}

/// JSON form of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRepr {
    pub p: u64,
    pub precision: u32,
    pub fiber_dim: usize,
    pub action: Vec<Vec<i128>>,
}

impl GroupRepr {
    pub fn into_group(self) -> Result<SemidirectGroup> {
        let ctx = if self.p == 2 {
            PadicContext::dyadic(self.precision)?
        } else {
            PadicContext::new(self.p, self.precision)?
        };
        if self.action.len() != self.fiber_dim || self.action.iter().any(|r| r.len() != self.fiber_dim) {
            return Err(Error::Parse(format!(
                "action is not a {0}x{0} matrix",
                self.fiber_dim
            )));
        }
        SemidirectGroup::new(PMatrix::from_rows(&ctx, &self.action))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group() -> SemidirectGroup {
        let c = PadicContext::new(5, 3).unwrap();
        SemidirectGroup::new(PMatrix::from_rows(&c, &[[1, 0], [5, 1]])).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let g = group();
        let e = g.identity();
        let x = g.element(3, &[7, 2]);
        assert_eq!(g.mul(&e, &x), x);
        assert_eq!(g.mul(&x, &e), x);
        assert_eq!(g.mul(&x, &g.inv(&x)), e);
    }

    #[test]
    fn h_and_fiber_fail_to_commute_by_the_action() {
        let g = group();
        let h = g.element(1, &[0, 0]);
        let v = g.element(0, &[0, 1]);
        let hv = g.mul(&h, &v);
        let vh = g.mul(&v, &h);
        // v(M - 1) = (0, 1)(M - 1) = (5, 0)
        assert_eq!(hv.a, vh.a);
        assert_eq!(g.ctx().sub(vh.v[0], hv.v[0]), 5);
    }

    #[test]
    fn powers() {
        let g = group();
        let x = g.element(2, &[1, 3]);
        assert_eq!(g.pow_int(&x, 0), g.identity());
        let mut acc = g.identity();
        for n in 0..12 {
            assert_eq!(g.pow_int(&x, n), acc);
            acc = g.mul(&acc, &x);
        }
        let y = g.element(0, &[1, 3]);
        assert_eq!(g.pow_int(&y, 5), g.element(0, &[5, 15]));
        assert_eq!(g.pow_int(&x, -1), g.inv(&x));
    }

    #[test]
    fn matrix_model_is_a_homomorphism() {
        let g = group();
        let a = g.element(2, &[1, 3]);
        let b = g.element(7, &[4, 0]);
        let lhs = g.matrix_model(&g.mul(&a, &b));
        let rhs = g.matrix_model(&a).mul(&g.matrix_model(&b)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_non_unipotent_action() {
        let c = PadicContext::new(5, 3).unwrap();
        let m = PMatrix::from_rows(&c, &[[2, 0], [0, 1]]);
        assert!(matches!(SemidirectGroup::new(m), Err(Error::NotProP(_))));
    }
}
