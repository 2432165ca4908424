//! Free nilpotent Lie rings on the Lyndon basis, used as test beds for the
//! Hausdorff series.

use std::collections::BTreeMap;

use crate::lie::Lattice;
use crate::padic::PadicContext;

type Word = Vec<u8>;
type Poly = BTreeMap<Word, i128>;

/// Lyndon words over `g` letters of length at most `max_len`, ordered by
/// length and then lexicographically.
pub fn lyndon_words(g: u8, max_len: usize) -> Vec<Word> {
    // Duval's generation in lexicographic order
    let mut out = Vec::new();
    if g == 0 || max_len == 0 {
        return out;
    }
    let mut w: Word = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(g - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn is_lyndon(w: &[u8]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w)
}

/// Standard factorisation `w = u v` with `v` the longest proper Lyndon suffix.
fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("length >= 2");
    (&w[..i], &w[i..])
}

fn mul(a: &Poly, b: &Poly, max_len: usize) -> Poly {
    let mut out = Poly::new();
    for (u, &x) in a {
        for (v, &y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = u.clone();
            w.extend_from_slice(v);
            *out.entry(w).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn commutator(a: &Poly, b: &Poly, max_len: usize) -> Poly {
    let mut out = mul(a, b, max_len);
    for (w, c) in mul(b, a, max_len) {
        *out.entry(w).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The free nilpotent Lie ring of class `class` on `g` generators, reduced
/// into `ctx`. Basis labels are the Lyndon words (`X`, `Y`, `XY`, `XXY`, ...).
pub struct FreeNilpotent {
    pub lattice: Lattice,
    pub words: Vec<Vec<u8>>,
}

impl FreeNilpotent {
    pub fn new(ctx: &PadicContext, g: u8, class: usize) -> Self {
        let words = lyndon_words(g, class);
        let index: BTreeMap<Word, usize> =
            words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut polys: Vec<Poly> = Vec::with_capacity(words.len());
        for w in &words {
            let p = if w.len() == 1 {
                Poly::from([(w.clone(), 1)])
            } else {
                let (u, v) = standard_factorization(w);
                commutator(&polys[index[u]], &polys[index[v]], class)
            };
            polys.push(p);
        }
        let d = words.len();
        let decompose = |mut f: Poly| -> Vec<i128> {
            let mut coords = vec![0i128; d];
            while let Some((w, &c)) = f.iter().next() {
                let w = w.clone();
                let i = *index.get(&w).expect("leading word of a Lie element is Lyndon");
                coords[i] += c;
                for (u, x) in &polys[i] {
                    *f.entry(u.clone()).or_insert(0) -= c * x;
                }
                f.retain(|_, c| *c != 0);
            }
            coords
        };
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let b = commutator(&polys[i], &polys[j], class);
                if !b.is_empty() {
                    brackets.push((i, j, decompose(b)));
                }
            }
        }
        let labels: Vec<String> = words
            .iter()
            .map(|w| w.iter().map(|&c| letter(c)).collect())
            .collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let lattice = Lattice::from_brackets(ctx, &refs, &brackets)
            .expect("free nilpotent constants satisfy Jacobi");
        Self { lattice, words }
    }

    /// Basis vector of the `i`-th generator.
    pub fn generator(&self, i: u8) -> Vec<u64> {
        crate::linalg::unit_vector(self.lattice.dim(), i as usize)
    }
}

fn letter(c: u8) -> char {
    const LETTERS: &[u8] = b"XYZUVW";
    LETTERS.get(c as usize).map_or('?', |&b| b as char)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_dimensions() {
        // necklace counts for two letters: 2, 1, 2, 3, 6, 9
        let w = lyndon_words(2, 6);
        let counts: Vec<usize> = (1..=6).map(|n| w.iter().filter(|x| x.len() == n).count()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn class_two_is_heisenberg() {
        let c = PadicContext::new(5, 3).unwrap();
        let f = FreeNilpotent::new(&c, 2, 2);
        assert_eq!(f.lattice.dim(), 3);
        assert_eq!(f.lattice.bracket(&f.generator(0), &f.generator(1)), vec![0, 0, 1]);
    }

    #[test]
    fn class_five_is_nilpotent_of_class_five() {
        let c = PadicContext::new(7, 3).unwrap();
        let f = FreeNilpotent::new(&c, 2, 5);
        assert_eq!(f.lattice.dim(), 14);
        assert_eq!(f.lattice.nilpotency_class(), Some(5));
    }
}
