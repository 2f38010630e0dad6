//! Walks over a Brauer G-set, their homotopy normal form, and the word
//! problem of the fundamental groupoid.
//!
//! A walk is a word in the letters `g`, `g^{-1}`, `tau` anchored at a source
//! half-edge; `tau` may only be applied at half-edges of `U`. Composition
//! notation `(e_n|d_n ... d_1|e_0)` reads right-to-left; the textual form
//! used here is `e0 g tau g^-1 ...`, read left-to-right with the source
//! first, so `letters[0]` is the first letter applied.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gset::{BrauerGSet, HalfEdge};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    G,
    GInv,
    Tau,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::G => Letter::GInv,
            Letter::GInv => Letter::G,
            Letter::Tau => Letter::Tau,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Letter::G => "g",
            Letter::GInv => "g^-1",
            Letter::Tau => "tau",
        }
    }
}

/// A validated walk: source half-edge plus letters in application order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    source: HalfEdge,
    letters: Vec<Letter>,
    target: HalfEdge,
}

impl fmt::Debug for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Walk(h{} ", self.source.0)?;
        for l in &self.letters {
            write!(f, "{} ", l.token())?;
        }
        write!(f, "-> h{})", self.target.0)
    }
}

/// Applies one letter at `at`, or explains why it cannot be applied.
pub fn step(gset: &BrauerGSet, at: HalfEdge, letter: Letter) -> Result<HalfEdge, Error> {
    match letter {
        Letter::G => Ok(gset.g(at)),
        Letter::GInv => Ok(gset.g_inv(at)),
        Letter::Tau => gset
            .tau(at)
            .ok_or_else(|| Error::InvalidWalk(format!("tau applied at {} outside U", gset.name(at)))),
    }
}

impl Walk {
    pub fn new(gset: &BrauerGSet, source: HalfEdge, letters: Vec<Letter>) -> Result<Walk, Error> {
        let mut at = source;
        for &l in &letters {
            at = step(gset, at, l)?;
        }
        Ok(Walk { source, letters, target: at })
    }

    pub fn trivial(source: HalfEdge) -> Walk {
        Walk { source, letters: Vec::new(), target: source }
    }

    /// The walk `(g^k.e | g^k | e)` (or its inverse for negative `k`).
    pub fn g_power(gset: &BrauerGSet, source: HalfEdge, k: i64) -> Walk {
        let letter = if k >= 0 { Letter::G } else { Letter::GInv };
        let letters = vec![letter; k.unsigned_abs() as usize];
        Walk::new(gset, source, letters).expect("g letters are always applicable")
    }

    pub fn source(&self) -> HalfEdge {
        self.source
    }

    pub fn target(&self) -> HalfEdge {
        self.target
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` after `first`: requires `first.target() == self.source()`.
    pub fn after(&self, gset: &BrauerGSet, first: &Walk) -> Result<Walk, Error> {
        if first.target != self.source {
            return Err(Error::InvalidWalk(format!(
                "cannot compose: first ends at {} but second starts at {}",
                gset.name(first.target),
                gset.name(self.source)
            )));
        }
        let mut letters = first.letters.clone();
        letters.extend_from_slice(&self.letters);
        Ok(Walk { source: first.source, letters, target: self.target })
    }

    pub fn inverse(&self) -> Walk {
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Walk { source: self.target, letters, target: self.source }
    }

    /// Applies the letter word of this walk starting from a different
    /// half-edge (used for equivariance arguments and lifting checks).
    pub fn apply_from(&self, gset: &BrauerGSet, start: HalfEdge) -> Result<HalfEdge, Error> {
        let mut at = start;
        for &l in &self.letters {
            at = step(gset, at, l)?;
        }
        Ok(at)
    }

    pub fn to_text(&self, gset: &BrauerGSet) -> String {
        let mut out = gset.name(self.source).to_string();
        for l in &self.letters {
            out.push(' ');
            out.push_str(l.token());
        }
        out
    }

    /// Parses the textual form `e0 g tau g^-1 ...`.
    pub fn parse(gset: &BrauerGSet, text: &str) -> Result<Walk, Error> {
        let mut parts = text.split_whitespace();
        let src = parts
            .next()
            .ok_or_else(|| Error::InvalidWalk("empty walk text".into()))?;
        let source = gset
            .lookup(src)
            .ok_or_else(|| Error::InvalidWalk(format!("unknown half-edge {src:?}")))?;
        let mut letters = Vec::new();
        for tok in parts {
            let l = match tok {
                "g" => Letter::G,
                "g^-1" | "g-1" | "G^-1" => Letter::GInv,
                "tau" | "t" => Letter::Tau,
                other => return Err(Error::InvalidWalk(format!("unknown letter {other:?}"))),
            };
            letters.push(l);
        }
        Walk::new(gset, source, letters)
    }
}

/// A special walk `g^{i_k} tau g^{i_{k-1}} tau ... tau g^{i_0}` anchored at a
/// source half-edge, with `0 <= i_0 < d(e_0)`, `0 <= i_k < d(e_k)` and
/// `0 < i_j < d(e_j)` in between.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SpecialWalk {
    pub source: HalfEdge,
    /// `i_0, ..., i_k` (one more entry than the number of `tau` letters).
    pub exponents: Vec<u32>,
}

impl SpecialWalk {
    pub fn trivial(source: HalfEdge) -> SpecialWalk {
        SpecialWalk { source, exponents: vec![0] }
    }

    /// Base half-edges `e_0, ..., e_k` of the runs.
    pub fn run_bases(&self, gset: &BrauerGSet) -> Vec<HalfEdge> {
        let mut bases = vec![self.source];
        for (j, &i) in self.exponents.iter().enumerate() {
            if j + 1 < self.exponents.len() {
                let top = gset.g_pow(*bases.last().unwrap(), i as i64);
                bases.push(gset.tau(top).expect("special walk tau step inside U"));
            }
        }
        bases
    }

    pub fn target(&self, gset: &BrauerGSet) -> HalfEdge {
        let bases = self.run_bases(gset);
        gset.g_pow(*bases.last().unwrap(), *self.exponents.last().unwrap() as i64)
    }

    pub fn is_valid(&self, gset: &BrauerGSet) -> bool {
        if self.exponents.is_empty() {
            return false;
        }
        let k = self.exponents.len() - 1;
        let mut at = self.source;
        for (j, &i) in self.exponents.iter().enumerate() {
            let d = gset.degree(at);
            let lower_ok = if j == 0 || j == k { i < d } else { i > 0 && i < d };
            if !lower_ok {
                return false;
            }
            let top = gset.g_pow(at, i as i64);
            if j < k {
                match gset.tau(top) {
                    Some(next) => at = next,
                    None => return false,
                }
            }
        }
        true
    }

    pub fn to_walk(&self, gset: &BrauerGSet) -> Walk {
        let mut letters = Vec::new();
        for (j, &i) in self.exponents.iter().enumerate() {
            if j > 0 {
                letters.push(Letter::Tau);
            }
            letters.extend(std::iter::repeat(Letter::G).take(i as usize));
        }
        Walk::new(gset, self.source, letters).expect("special walk is a walk")
    }

    /// Number of `tau` letters.
    pub fn tau_count(&self) -> usize {
        self.exponents.len() - 1
    }
}

/// The unique factorization `w ~ (t(w)|g^{n d(t(w))}|t(v)) . v` of a walk:
/// a special walk and an integer power of the Nakayama loop at the target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub special: SpecialWalk,
    pub power: i64,
}

impl NormalForm {
    /// Expands back to an ordinary walk with the same source and target.
    pub fn to_walk(&self, gset: &BrauerGSet) -> Walk {
        let v = self.special.to_walk(gset);
        let t = v.target();
        let loop_len = self.power * gset.degree(t) as i64;
        Walk::g_power(gset, t, loop_len).after(gset, &v).expect("composable by construction")
    }
}

/// Computes the homotopy normal form of a walk by lifting it into the
/// universal cover indexed by (special walk, integer) pairs. One pass over
/// the letters; each letter updates the leading exponent, pushes or strips a
/// `tau` run, or bumps the integer when the leading run wraps past the
/// degree.
pub fn walk_normal_form(gset: &BrauerGSet, walk: &Walk) -> NormalForm {
    let mut exps: Vec<u32> = vec![0];
    let mut bases: Vec<HalfEdge> = vec![walk.source()];
    let mut power: i64 = 0;
    for &letter in walk.letters() {
        let base = *bases.last().unwrap();
        let d = gset.degree(base);
        let top = *exps.last().unwrap();
        match letter {
            Letter::G => {
                if top + 1 < d {
                    *exps.last_mut().unwrap() = top + 1;
                } else {
                    *exps.last_mut().unwrap() = 0;
                    power += 1;
                }
            }
            Letter::GInv => {
                if top > 0 {
                    *exps.last_mut().unwrap() = top - 1;
                } else {
                    *exps.last_mut().unwrap() = d - 1;
                    power -= 1;
                }
            }
            Letter::Tau => {
                if top == 0 && exps.len() > 1 {
                    exps.pop();
                    bases.pop();
                } else {
                    let at = gset.g_pow(base, top as i64);
                    let next = gset.tau(at).expect("walk validated at construction");
                    exps.push(0);
                    bases.push(next);
                }
            }
        }
    }
    NormalForm { special: SpecialWalk { source: walk.source(), exponents: exps }, power }
}

/// Two walks with a common source are homotopic iff their normal forms agree.
pub fn walks_homotopic(gset: &BrauerGSet, w1: &Walk, w2: &Walk) -> Result<bool, Error> {
    if w1.source() != w2.source() {
        return Err(Error::InvalidWalk(format!(
            "sources differ: {} vs {}",
            gset.name(w1.source()),
            gset.name(w2.source())
        )));
    }
    let n1 = walk_normal_form(gset, w1);
    let n2 = walk_normal_form(gset, w2);
    Ok(n1 == n2)
}
