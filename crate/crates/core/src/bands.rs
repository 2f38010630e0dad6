//! Bands of a Brauer G-set: periodic lines whose period alternates positive
//! and negative `g`-runs separated by `tau`, counted up to translation and
//! inversion.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::{classify_rep_type, RepType};
use crate::error::Error;
use crate::gset::{BrauerGSet, HalfEdge};

/// One period of a band: runs `(x_i, s_i)` meaning "from `x_i` apply
/// `g^{s_i}` then `tau`". Signs alternate strictly and `0 < |s_i| < d(x_i)`;
/// the composite returns to `x_0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BandWord {
    pub runs: Vec<(HalfEdge, i32)>,
}

impl BandWord {
    pub fn new(gset: &BrauerGSet, runs: Vec<(HalfEdge, i32)>) -> Result<BandWord, Error> {
        let word = BandWord { runs };
        word.check(gset)?;
        Ok(word)
    }

    fn check(&self, gset: &BrauerGSet) -> Result<(), Error> {
        if self.runs.is_empty() || self.runs.len() % 2 != 0 {
            return Err(Error::Domain("a band period needs an even, positive run count".into()));
        }
        for window in 0..self.runs.len() {
            let (x, s) = self.runs[window];
            let (y, t) = self.runs[(window + 1) % self.runs.len()];
            if s == 0 || s.unsigned_abs() >= gset.degree(x) {
                return Err(Error::Domain(format!(
                    "run exponent {s} out of range at {}",
                    gset.name(x)
                )));
            }
            if s.signum() == t.signum() {
                return Err(Error::Domain("run signs must alternate".into()));
            }
            let top = gset.g_pow(x, s as i64);
            let next = gset
                .tau(top)
                .ok_or_else(|| Error::Domain(format!("tau undefined at {}", gset.name(top))))?;
            if next != y {
                return Err(Error::Domain(format!(
                    "period does not close: expected {} after {}",
                    gset.name(y),
                    gset.name(x)
                )));
            }
        }
        Ok(())
    }

    /// Period of the inverse line.
    pub fn inverse(&self, gset: &BrauerGSet) -> BandWord {
        let m = self.runs.len();
        let runs = (0..m)
            .map(|i| {
                let (x, _) = self.runs[(m - i) % m];
                let (_, s) = self.runs[(m - 1 - i + m) % m];
                (gset.tau(x).expect("band half-edges lie in U"), -s)
            })
            .collect();
        BandWord { runs }
    }

    fn rotations(&self) -> impl Iterator<Item = BandWord> + '_ {
        (0..self.runs.len()).map(move |k| {
            let mut runs = self.runs[k..].to_vec();
            runs.extend_from_slice(&self.runs[..k]);
            BandWord { runs }
        })
    }

    /// A period is primitive when it is not a proper power of a shorter one.
    pub fn is_primitive(&self) -> bool {
        let m = self.runs.len();
        for p in 1..m {
            if m % p == 0 && (0..m).all(|i| self.runs[i] == self.runs[(i + p) % m]) {
                return false;
            }
        }
        true
    }
}

/// Canonical representative of a band class: the least rotation of the
/// period or of its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BandClass {
    /// `(half-edge index, signed exponent)` pairs of the canonical period.
    pub runs: Vec<(usize, i32)>,
}

impl BandClass {
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn describe(&self, gset: &BrauerGSet) -> String {
        self.runs
            .iter()
            .map(|&(h, s)| format!("{}:{s:+}", gset.name(HalfEdge(h))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Least representative over all rotations of the word and of its inverse.
pub fn canonical_band(gset: &BrauerGSet, word: &BandWord) -> Result<BandClass, Error> {
    word.check(gset)?;
    let inv = word.inverse(gset);
    let best = word
        .rotations()
        .chain(inv.rotations())
        .map(|w| w.runs)
        .min()
        .expect("nonempty period");
    Ok(BandClass { runs: best.into_iter().map(|(h, s)| (h.0, s)).collect() })
}

/// All band classes whose period has at most `max_runs` runs (each run is
/// one `g`-power followed by one `tau`), sorted canonically.
pub fn enumerate_bands(gset: &BrauerGSet, max_runs: usize) -> Vec<BandClass> {
    let mut found: BTreeSet<BandClass> = BTreeSet::new();
    // depth-first over run sequences anchored at their least positive-run
    // start; signs alternate starting positive
    for start in gset.half_edges() {
        if !gset.in_u(start) {
            continue;
        }
        let mut runs: Vec<(HalfEdge, i32)> = Vec::new();
        dfs_bands(gset, start, start, true, max_runs, &mut runs, &mut found);
    }
    found.into_iter().collect()
}

fn dfs_bands(
    gset: &BrauerGSet,
    start: HalfEdge,
    at: HalfEdge,
    positive: bool,
    max_runs: usize,
    runs: &mut Vec<(HalfEdge, i32)>,
    found: &mut BTreeSet<BandClass>,
) {
    if runs.len() == max_runs {
        return;
    }
    let d = gset.degree(at) as i32;
    for magnitude in 1..d {
        let s = if positive { magnitude } else { -magnitude };
        let top = gset.g_pow(at, s as i64);
        if !gset.in_u(top) {
            continue;
        }
        let next = gset.tau(top).expect("tau total on U");
        // prune: keep the anchor minimal among positive-run starts
        if !positive && next < start {
            continue;
        }
        runs.push((at, s));
        if next == start && runs.len() % 2 == 0 {
            let word = BandWord { runs: runs.clone() };
            if word.is_primitive() {
                let class = canonical_band(gset, &word).expect("constructed period is valid");
                found.insert(class);
            }
        }
        if next >= start || positive {
            dfs_bands(gset, start, next, !positive, max_runs, runs, found);
        }
        runs.pop();
    }
}

/// Transition states `(half-edge of U, about to rise)` and their edges.
fn state_graph(gset: &BrauerGSet) -> (Vec<(HalfEdge, bool)>, Vec<Vec<(usize, i32)>>) {
    let mut states = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    for h in gset.half_edges() {
        if gset.in_u(h) {
            for positive in [true, false] {
                index.insert((h, positive), states.len());
                states.push((h, positive));
            }
        }
    }
    let mut edges = vec![Vec::new(); states.len()];
    for (i, &(x, positive)) in states.iter().enumerate() {
        let d = gset.degree(x) as i32;
        for magnitude in 1..d {
            let s = if positive { magnitude } else { -magnitude };
            let top = gset.g_pow(x, s as i64);
            if !gset.in_u(top) {
                continue;
            }
            let next = gset.tau(top).expect("tau total on U");
            edges[i].push((index[&(next, !positive)], s));
        }
    }
    (states, edges)
}

/// Whether the set has any band at all: a cycle in the transition graph.
pub fn has_band(gset: &BrauerGSet) -> bool {
    let (states, edges) = state_graph(gset);
    // iterative three-color depth-first search
    let mut color = vec![0u8; states.len()];
    for start in 0..states.len() {
        if color[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < edges[v].len() {
                let (w, _) = edges[v][*next];
                *next += 1;
                match color[w] {
                    0 => {
                        color[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                color[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// Complete band-class list of a set with finitely many classes. Distinct
/// cycles of the transition graph cannot share a state (a shared state
/// would compose them into infinitely many classes), so each nontrivial
/// strongly connected component is a single cycle.
pub fn finite_band_classes(gset: &BrauerGSet) -> Result<Vec<BandClass>, Error> {
    let (states, edges) = state_graph(gset);
    let n = states.len();
    // Kosaraju: order by finish time, then collect on the reverse graph
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < edges[v].len() {
                let (w, _) = edges[v][*next];
                *next += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut redges = vec![Vec::new(); n];
    for (v, outs) in edges.iter().enumerate() {
        for &(w, _) in outs {
            redges[w].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comp_count = 0usize;
    for &start in order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = comp_count;
        while let Some(v) = stack.pop() {
            for &w in &redges[v] {
                if comp[w] == usize::MAX {
                    comp[w] = comp_count;
                    stack.push(w);
                }
            }
        }
        comp_count += 1;
    }
    let mut classes = BTreeSet::new();
    let mut done = vec![false; comp_count];
    for v in 0..n {
        if done[comp[v]] {
            continue;
        }
        let internal: Vec<(usize, i32)> =
            edges[v].iter().copied().filter(|&(w, _)| comp[w] == comp[v]).collect();
        if internal.is_empty() {
            continue;
        }
        done[comp[v]] = true;
        if internal.len() > 1 {
            return Err(Error::Domain(
                "transition cycles overlap: infinitely many band classes".into(),
            ));
        }
        // follow the unique internal successor around the cycle
        let mut runs = Vec::new();
        let mut at = v;
        loop {
            let step = edges[at]
                .iter()
                .copied()
                .filter(|&(w, _)| comp[w] == comp[at])
                .collect::<Vec<_>>();
            if step.len() != 1 {
                return Err(Error::Domain(
                    "transition cycles overlap: infinitely many band classes".into(),
                ));
            }
            runs.push((states[at].0, step[0].1));
            at = step[0].0;
            if at == v {
                break;
            }
        }
        let word = BandWord { runs };
        debug_assert!(word.check(gset).is_ok());
        classes.insert(canonical_band(gset, &word)?);
    }
    Ok(classes.into_iter().collect())
}

/// Number of band classes, exact: zero for representation-finite input,
/// a positive count for domestic input (complete enumeration at the bound
/// `sum(d(e) - 1)`), infinite otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BandCount {
    Finite(usize),
    Infinite,
}

/// Bound on the run count of any band of a set with finitely many classes:
/// a period repeating a `(half-edge, exponent)` rise state splits into two
/// shorter bands, so finitely many classes force all-distinct rises.
pub fn domestic_run_bound(gset: &BrauerGSet) -> usize {
    gset.half_edges().map(|h| gset.degree(h) as usize - 1).sum()
}

pub fn band_count(gset: &BrauerGSet) -> Result<BandCount, Error> {
    match classify_rep_type(gset)? {
        RepType::RepFinite { .. } => {
            debug_assert!(!has_band(gset));
            Ok(BandCount::Finite(0))
        }
        RepType::Domestic(_) => {
            let classes = finite_band_classes(gset)?;
            debug_assert!(classes
                .iter()
                .all(|c| c.run_count() <= domestic_run_bound(gset)));
            Ok(BandCount::Finite(classes.len()))
        }
        RepType::NonDomesticTame => Ok(BandCount::Infinite),
    }
}
