//! Exhaustive multiplicative-similarity orbits in `M_2(Z/p^k)`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest `p^(4k)` we are willing to enumerate.
const MAX_SPACE: u64 = 1 << 22;

type Mat = [u64; 4];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// lexicographically least member, entries row-major
    pub representative: Mat,
    pub size: usize,
}

struct Action {
    q: u64,
    units: Vec<u64>,
    /// conjugators `(B, B^-1)` generating `GL_2(Z/q)`
    conjugators: Vec<(Mat, Mat)>,
}

impl Action {
    fn new(p: u64, k: u32) -> Result<Self> {
        if !crate::padic::is_prime(p) || k == 0 {
            return Err(Error::BadParameter(format!("need a prime and k >= 1, got p={p} k={k}")));
        }
        let q = p.checked_pow(k).filter(|q| q.checked_pow(4).is_some_and(|s| s <= MAX_SPACE));
        let q = q.ok_or_else(|| Error::ScaleTooLarge(format!("{p}^(4*{k}) matrices")))?;
        let units: Vec<u64> = (1..q).filter(|u| u % p != 0).collect();
        let inv = |u: u64| (1..q).find(|v| u * v % q == 1).expect("unit");
        let mut conjugators = vec![([1, 1, 0, 1], [1, q - 1, 0, 1]), ([1, 0, 1, 1], [1, 0, q - 1, 1])];
        conjugators.extend(units.iter().map(|&u| ([u, 0, 0, 1], [inv(u), 0, 0, 1])));
        Ok(Self { q, units, conjugators })
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let q = self.q;
        [
            (a[0] * b[0] + a[1] * b[2]) % q,
            (a[0] * b[1] + a[1] * b[3]) % q,
            (a[2] * b[0] + a[3] * b[2]) % q,
            (a[2] * b[1] + a[3] * b[3]) % q,
        ]
    }

    fn neighbours(&self, a: &Mat) -> impl Iterator<Item = Mat> + '_ {
        let a = *a;
        let scaled = self.units.iter().map(move |&u| a.map(|x| x * u % self.q));
        let conj = self
            .conjugators
            .iter()
            .map(move |(b, bi)| self.mul(bi, &self.mul(&a, b)));
        scaled.chain(conj)
    }

    fn index(&self, a: &Mat) -> usize {
        a.iter().fold(0u64, |acc, &x| acc * self.q + x) as usize
    }

    fn decode(&self, mut i: usize) -> Mat {
        let q = self.q as usize;
        let mut out = [0u64; 4];
        for slot in out.iter_mut().rev() {
            *slot = (i % q) as u64;
            i /= q;
        }
        out
    }

    fn reduce(&self, a: &Mat) -> Mat {
        a.map(|x| x % self.q)
    }

    /// Breadth-first closure; returns every member.
    fn closure(&self, start: Mat, seen: &mut [bool]) -> Vec<Mat> {
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        seen[self.index(&start)] = true;
        while let Some(a) = queue.pop_front() {
            for b in self.neighbours(&a) {
                let i = self.index(&b);
                if !seen[i] {
                    seen[i] = true;
                    members.push(b);
                    queue.push_back(b);
                }
            }
        }
        members
    }
}

/// The orbit of `a` (entries row-major, taken mod `p^k`) under
/// `A -> u B^-1 A B`.
pub fn brute_force_orbit(p: u64, k: u32, a: Mat) -> Result<Orbit> {
    let act = Action::new(p, k)?;
    let mut seen = vec![false; (act.q as usize).pow(4)];
    let members = act.closure(act.reduce(&a), &mut seen);
    Ok(Orbit {
        representative: *members.iter().min().expect("nonempty"),
        size: members.len(),
    })
}

/// The full orbit decomposition of `M_2(Z/p^k)`.
pub struct OrbitPartition {
    act: Action,
    rep: Vec<u32>,
    sizes: Vec<(Mat, usize)>,
}

impl OrbitPartition {
    pub fn build(p: u64, k: u32) -> Result<Self> {
        let act = Action::new(p, k)?;
        let total = (act.q as usize).pow(4);
        let mut seen = vec![false; total];
        let mut rep = vec![u32::MAX; total];
        let mut sizes = Vec::new();
        for i in 0..total {
            if seen[i] {
                continue;
            }
            let members = act.closure(act.decode(i), &mut seen);
            let id = sizes.len() as u32;
            for m in &members {
                rep[act.index(m)] = id;
            }
            sizes.push((*members.iter().min().expect("nonempty"), members.len()));
        }
        Ok(Self { act, rep, sizes })
    }

    pub fn orbit_count(&self) -> usize {
        self.sizes.len()
    }

    /// Orbit id of a matrix.
    pub fn orbit_id(&self, a: &Mat) -> usize {
        self.rep[self.act.index(&self.act.reduce(a))] as usize
    }

    pub fn orbit(&self, a: &Mat) -> Orbit {
        let (representative, size) = self.sizes[self.orbit_id(a)];
        Orbit { representative, size }
    }

    /// Every matrix of the space, in index order.
    pub fn matrices(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.rep.len()).map(|i| self.act.decode(i))
    }
}
