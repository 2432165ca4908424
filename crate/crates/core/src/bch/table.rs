//! The Hausdorff series `log(exp X exp Y)` on left-normed bracket words.
//!
//! Terms are generated from Dynkin's formula, whose summands are
//! right-nested brackets, and rewritten onto left-normed words
//! `[w_1, w_2, ..., w_m]` beginning with `XY`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::RationalCoeff;

/// A letter of a bracket word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'X',
            Letter::Y => 'Y',
        }
    }
}

pub fn word_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.as_char()).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| match c {
            'X' | 'x' => Ok(Letter::X),
            'Y' | 'y' => Ok(Letter::Y),
            other => Err(Error::Parse(format!("bad letter `{other}` in bracket word"))),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchTerm {
    pub coeff: RationalCoeff,
    /// left-normed bracket `[w_1, ..., w_m]`
    pub word: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BchTable {
    weight: usize,
    terms: Vec<BchTerm>,
}

impl BchTable {
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Terms ordered by weight, then word (`X < Y`).
    pub fn terms(&self) -> &[BchTerm] {
        &self.terms
    }

    /// Coefficient of a left-normed word, zero if absent.
    pub fn coefficient(&self, word: &str) -> Ratio<i64> {
        let w = parse_word(word).unwrap_or_default();
        self.terms
            .iter()
            .find(|t| t.word == w)
            .map_or_else(Ratio::zero, |t| t.coeff.ratio())
    }

    pub fn to_repr(&self) -> BchTableRepr {
        BchTableRepr {
            weight: self.weight,
            terms: self
                .terms
                .iter()
                .map(|t| BchTermRepr {
                    num: t.coeff.numerator(),
                    den: t.coeff.denominator(),
                    word: word_string(&t.word),
                })
                .collect(),
        }
    }
}

impl fmt::Display for BchTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let r = t.coeff.ratio();
            let negative = *r.numer() < 0;
            let sign = match (i, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = if negative { -r } else { r };
            let word = if t.word.len() == 1 {
                word_string(&t.word)
            } else {
                let letters: Vec<String> = t.word.iter().map(|l| l.as_char().to_string()).collect();
                format!("[{}]", letters.join(","))
            };
            if mag.is_one() {
                write!(f, "{sign}{word}")?;
            } else {
                write!(f, "{sign}{mag} {word}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchTermRepr {
    pub num: i64,
    pub den: i64,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BchTableRepr {
    pub weight: usize,
    pub terms: Vec<BchTermRepr>,
}

impl BchTableRepr {
    pub fn into_table(self) -> Result<BchTable> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            if t.den == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            let word = parse_word(&t.word)?;
            if word.is_empty() || word.len() > self.weight {
                return Err(Error::Parse(format!("word `{}` outside the weight", t.word)));
            }
            terms.push(BchTerm {
                coeff: RationalCoeff::new(t.num, t.den),
                word,
            });
        }
        Ok(BchTable {
            weight: self.weight,
            terms,
        })
    }
}

type Q = Ratio<i128>;

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Append every sequence of `(r, s)` pairs, none `(0, 0)`, summing to `remaining`.
fn compositions(remaining: usize, slots: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if slots == 0 {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if remaining < slots {
        return;
    }
    for total in 1..=remaining - (slots - 1) {
        for r in 0..=total {
            cur.push((r, total - r));
            compositions(remaining - total, slots - 1, cur, out);
            cur.pop();
        }
    }
}

/// Coefficients of `log(exp X exp Y)` on left-normed words up to weight `w`.
pub fn hausdorff_table(w: usize) -> BchTable {
    assert!(w >= 1, "weight must be at least 1");
    let mut acc: BTreeMap<(usize, Vec<Letter>), Q> = BTreeMap::new();
    for m in 1..=w {
        for n in 1..=m {
            let mut seqs = Vec::new();
            compositions(m, n, &mut Vec::new(), &mut seqs);
            for seq in seqs {
                let mut den: i128 = (n * m) as i128;
                let mut word = Vec::with_capacity(m);
                for &(r, s) in &seq {
                    den *= factorial(r) * factorial(s);
                    word.extend(std::iter::repeat_n(Letter::X, r));
                    word.extend(std::iter::repeat_n(Letter::Y, s));
                }
                let sign = if n % 2 == 1 { 1 } else { -1 };
                let coeff = Q::new(sign, den);
                // right-nested [w1,[w2,...,[w_{m-1},w_m]]] = (-1)^(m-1) [w_m,...,w_1]
                word.reverse();
                let coeff = if m % 2 == 1 { coeff } else { -coeff };
                if let Some((norm_word, s)) = normalize_left(word) {
                    let e = acc.entry((m, norm_word)).or_insert_with(Q::zero);
                    *e += coeff * Q::from_integer(s);
                }
            }
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((_, word), c)| BchTerm {
            coeff: RationalCoeff::from_ratio(Ratio::new(
                i64::try_from(*c.numer()).expect("coefficient fits i64"),
                i64::try_from(*c.denom()).expect("coefficient fits i64"),
            )),
            word,
        })
        .collect();
    BchTable { weight: w, terms }
}

/// Rewrite a left-normed word so that it begins with `XY`; `None` if the
/// bracket vanishes by `[a, a] = 0`.
fn normalize_left(mut w: Vec<Letter>) -> Option<(Vec<Letter>, i128)> {
    if w.len() < 2 {
        return Some((w, 1));
    }
    if w[0] == w[1] {
        return None;
    }
    if w[0] == Letter::Y {
        w.swap(0, 1);
        return Some((w, -1));
    }
    Some((w, 1))
}
