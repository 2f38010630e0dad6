//! Coverings of Brauer G-sets and the constructions built on them:
//! quotients by finite automorphism groups, the doubling of the involution,
//! reduced forms, truncated universal-cover balls, unfolding of an
//! exceptional tree, and the explicit families defining domestic algebras.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::gset::{BrauerGSet, HalfEdge, RawGSet};
use crate::walk::Walk;

/// Default closure bound for generated automorphism groups.
pub const GROUP_BOUND: usize = 100_000;

/// A validated covering `f: source -> target`: g-equivariant, reflects `U`
/// membership, commutes with `tau` on `U`, and preserves degrees.
#[derive(Clone, Debug)]
pub struct CoveringMap {
    source: BrauerGSet,
    target: BrauerGSet,
    map: Vec<usize>,
}

impl CoveringMap {
    pub fn new(source: BrauerGSet, target: BrauerGSet, map: Vec<usize>) -> Result<Self, Error> {
        let cov = CoveringMap { source, target, map };
        cov.check()?;
        Ok(cov)
    }

    pub fn by_names(
        source: BrauerGSet,
        target: BrauerGSet,
        map: &BTreeMap<String, String>,
    ) -> Result<Self, Error> {
        let mut index_map = vec![usize::MAX; source.len()];
        for (k, v) in map {
            let h = source
                .lookup(k)
                .ok_or_else(|| Error::NotCovering(format!("unknown source half-edge {k:?}")))?;
            let t = target
                .lookup(v)
                .ok_or_else(|| Error::NotCovering(format!("unknown target half-edge {v:?}")))?;
            index_map[h.0] = t.0;
        }
        if index_map.iter().any(|&i| i == usize::MAX) {
            return Err(Error::NotCovering("map is not total on the source".into()));
        }
        CoveringMap::new(source, target, index_map)
    }

    pub fn identity(gset: BrauerGSet) -> CoveringMap {
        let map = (0..gset.len()).collect();
        CoveringMap { source: gset.clone(), target: gset, map }
    }

    fn check(&self) -> Result<(), Error> {
        let s = &self.source;
        let t = &self.target;
        if self.map.len() != s.len() {
            return Err(Error::NotCovering("map is not total on the source".into()));
        }
        for h in s.half_edges() {
            let fh = HalfEdge(self.map[h.0]);
            if self.map[s.g(h).0] != t.g(fh).0 {
                return Err(Error::NotCovering(format!(
                    "not g-equivariant at {}",
                    s.name(h)
                )));
            }
            if s.in_u(h) != t.in_u(fh) {
                return Err(Error::NotCovering(format!(
                    "U membership not reflected at {}",
                    s.name(h)
                )));
            }
            if let Some(tau_h) = s.tau(h) {
                if Some(HalfEdge(self.map[tau_h.0])) != t.tau(fh) {
                    return Err(Error::NotCovering(format!(
                        "not tau-equivariant at {}",
                        s.name(h)
                    )));
                }
            }
            if s.degree(h) != t.degree(fh) {
                return Err(Error::NotCovering(format!(
                    "degree not preserved at {}",
                    s.name(h)
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &BrauerGSet {
        &self.source
    }

    pub fn target(&self) -> &BrauerGSet {
        &self.target
    }

    pub fn apply(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(self.map[h.0])
    }

    pub fn fiber(&self, t: HalfEdge) -> Vec<HalfEdge> {
        (0..self.map.len()).filter(|&i| self.map[i] == t.0).map(HalfEdge).collect()
    }

    /// All fibers of a connected source have the same size.
    pub fn sheet_count(&self) -> Result<usize, Error> {
        let mut counts = vec![0usize; self.target.len()];
        for &i in &self.map {
            counts[i] += 1;
        }
        let first = counts[0];
        if counts.iter().any(|&c| c != first) {
            return Err(Error::NotCovering("fiber sizes differ".into()));
        }
        Ok(first)
    }

    /// The unique lift of a target walk starting at `start` in the fiber of
    /// the walk's source.
    pub fn lift_walk(&self, walk: &Walk, start: HalfEdge) -> Result<Walk, Error> {
        if self.map[start.0] != walk.source().0 {
            return Err(Error::Domain(format!(
                "{} does not lie over {}",
                self.source.name(start),
                self.target.name(walk.source())
            )));
        }
        let lift = Walk::new(&self.source, start, walk.letters().to_vec())?;
        debug_assert_eq!(self.map[lift.target().0], walk.target().0);
        Ok(lift)
    }
}

/// A bijective map of Brauer G-sets commuting with `g`, `tau`, `U` and `d`
/// (a covering with one sheet in both directions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    map: Vec<usize>,
}

impl Isomorphism {
    pub fn new(source: &BrauerGSet, target: &BrauerGSet, map: Vec<usize>) -> Result<Self, Error> {
        if map.len() != source.len() || source.len() != target.len() {
            return Err(Error::NotCovering("isomorphism must be a bijection".into()));
        }
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || seen[i] {
                return Err(Error::NotCovering("isomorphism must be a bijection".into()));
            }
            seen[i] = true;
        }
        CoveringMap::new(source.clone(), target.clone(), map.clone())?;
        Ok(Isomorphism { map })
    }

    pub fn identity(gset: &BrauerGSet) -> Isomorphism {
        Isomorphism { map: (0..gset.len()).collect() }
    }

    pub fn by_names(
        source: &BrauerGSet,
        target: &BrauerGSet,
        pairs: &[(&str, &str)],
    ) -> Result<Self, Error> {
        let mut map = vec![usize::MAX; source.len()];
        for (k, v) in pairs {
            let h = source
                .lookup(k)
                .ok_or_else(|| Error::NotCovering(format!("unknown half-edge {k:?}")))?;
            let t = target
                .lookup(v)
                .ok_or_else(|| Error::NotCovering(format!("unknown half-edge {v:?}")))?;
            map[h.0] = t.0;
        }
        if map.iter().any(|&i| i == usize::MAX) {
            return Err(Error::NotCovering("map is not total".into()));
        }
        Isomorphism::new(source, target, map)
    }

    pub fn apply(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(self.map[h.0])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

/// Closure of a set of automorphisms under composition, bounded.
fn group_closure(gens: &[Vec<usize>], n: usize, bound: usize) -> Result<Vec<Vec<usize>>, Error> {
    let identity: Vec<usize> = (0..n).collect();
    let mut elements = vec![identity.clone()];
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(identity);
    let mut frontier = 0usize;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for gen in gens {
            let composed: Vec<usize> = current.iter().map(|&x| gen[x]).collect();
            if seen.insert(composed.clone()) {
                if elements.len() >= bound {
                    return Err(Error::GroupBound(bound));
                }
                elements.push(composed);
            }
        }
    }
    Ok(elements)
}

/// Quotient of `gset` by the group generated by the given automorphisms.
/// Classes are named after their lexicographically least member, so the
/// quotient by the trivial group is `gset` itself.
pub fn quotient(
    gset: &BrauerGSet,
    generators: &[Isomorphism],
    bound: Option<usize>,
) -> Result<(BrauerGSet, CoveringMap), Error> {
    for gen in generators {
        Isomorphism::new(gset, gset, gen.as_slice().to_vec())
            .map_err(|_| Error::NotCovering("generator is not an automorphism".into()))?;
    }
    let gens: Vec<Vec<usize>> = generators.iter().map(|i| i.as_slice().to_vec()).collect();
    let elements = group_closure(&gens, gset.len(), bound.unwrap_or(GROUP_BOUND))?;

    // orbit representative: least index in the orbit
    let mut repr = vec![usize::MAX; gset.len()];
    for h in 0..gset.len() {
        if repr[h] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = elements.iter().map(|e| e[h]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let least = orbit[0];
        for x in orbit {
            repr[x] = least;
        }
    }

    let mut raw = RawGSet::default();
    for h in 0..gset.len() {
        if repr[h] != h {
            continue;
        }
        let hh = HalfEdge(h);
        let name = gset.name(hh).to_string();
        raw.half_edges.push(name.clone());
        raw.g.insert(name.clone(), gset.name(HalfEdge(repr[gset.g(hh).0])).to_string());
        raw.degree.insert(name.clone(), gset.degree(hh));
        if let Some(t) = gset.tau(hh) {
            raw.u.push(name.clone());
            raw.tau.insert(name, gset.name(HalfEdge(repr[t.0])).to_string());
        }
    }
    let q = BrauerGSet::new(raw)?;
    let map: Vec<usize> = (0..gset.len())
        .map(|h| q.lookup(gset.name(HalfEdge(repr[h]))).unwrap().0)
        .collect();
    let cov = CoveringMap::new(gset.clone(), q.clone(), map)?;
    Ok((q, cov))
}

/// Quotient by the cyclic group generated by the Nakayama automorphism.
pub fn quotient_by_nakayama(gset: &BrauerGSet) -> Result<(BrauerGSet, CoveringMap), Error> {
    let sigma: Vec<usize> = gset.half_edges().map(|h| gset.sigma(h).0).collect();
    let iso = Isomorphism::new(gset, gset, sigma)?;
    quotient(gset, &[iso], None)
}

/// Whether the generated group meets each edge of `gset` in at most one
/// half-edge per orbit.
pub fn is_admissible(
    gset: &BrauerGSet,
    generators: &[Isomorphism],
    bound: Option<usize>,
) -> Result<bool, Error> {
    let gens: Vec<Vec<usize>> = generators.iter().map(|i| i.as_slice().to_vec()).collect();
    let elements = group_closure(&gens, gset.len(), bound.unwrap_or(GROUP_BOUND))?;
    for (a, b) in gset.edges() {
        if elements.iter().any(|e| e[a.0] == b.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Admissibility of the Nakayama subgroup.
pub fn nakayama_is_admissible(gset: &BrauerGSet) -> Result<bool, Error> {
    let sigma: Vec<usize> = gset.half_edges().map(|h| gset.sigma(h).0).collect();
    let iso = Isomorphism::new(gset, gset, sigma)?;
    is_admissible(gset, &[iso], None)
}

fn hat_name(name: &str, copy: usize) -> String {
    format!("{name}#{copy}")
}

/// Doubles the half-edge set: `tau` swaps the two copies exactly at its
/// former fixed points, so the result has no double half-edges. Returns the
/// doubled set and the 2-sheeted projection.
pub fn hat(gset: &BrauerGSet) -> Result<(BrauerGSet, CoveringMap), Error> {
    let mut raw = RawGSet::default();
    for copy in 1..=2usize {
        for h in gset.half_edges() {
            let name = hat_name(gset.name(h), copy);
            raw.half_edges.push(name.clone());
            raw.g.insert(name.clone(), hat_name(gset.name(gset.g(h)), copy));
            raw.degree.insert(name.clone(), gset.degree(h));
            if let Some(t) = gset.tau(h) {
                raw.u.push(name.clone());
                let image = if t == h {
                    hat_name(gset.name(h), 3 - copy)
                } else {
                    hat_name(gset.name(t), copy)
                };
                raw.tau.insert(name, image);
            }
        }
    }
    let hatted = BrauerGSet::new(raw)?;
    let map: Vec<usize> = hatted
        .half_edges()
        .map(|h| {
            let name = hatted.name(h);
            let base = &name[..name.len() - 2];
            gset.lookup(base).unwrap().0
        })
        .collect();
    let cov = CoveringMap::new(hatted.clone(), gset.clone(), map)?;
    Ok((hatted, cov))
}

/// The copy-swapping automorphism of `hat(gset)`.
pub fn hat_swap(hatted: &BrauerGSet) -> Result<Isomorphism, Error> {
    let map: Vec<usize> = hatted
        .half_edges()
        .map(|h| {
            let name = hatted.name(h);
            let (base, copy) = name.split_at(name.len() - 2);
            let other = if copy == "#1" { 2 } else { 1 };
            hatted.lookup(&hat_name(base, other)).unwrap().0
        })
        .collect();
    Isomorphism::new(hatted, hatted, map)
}

/// The reduced form of a finite fms-BG: the Nakayama quotient when that is
/// admissible, otherwise the doubling of the quotient. Always a Brauer graph
/// (no doubles, integral f-degree).
pub fn reduced_form(gset: &BrauerGSet) -> Result<BrauerGSet, Error> {
    if !gset.is_fms_bg() {
        return Err(Error::NotFmsBg);
    }
    let (b, _) = quotient_by_nakayama(gset)?;
    let reduced = if b.doubles().is_empty() { b } else { hat(&b)?.0 };
    debug_assert!(reduced.is_modified_bg() && reduced.doubles().is_empty());
    Ok(reduced)
}

/// A truncated ball of the special-walk universal cover: all special walks
/// from `base` with at most `radius` tau letters. `eval` sends each ball
/// half-edge to the target of its walk; the covering axioms hold at the
/// interior (walks with fewer than `radius` tau letters).
#[derive(Clone, Debug)]
pub struct SpecialBall {
    pub ball: BrauerGSet,
    pub eval: Vec<HalfEdge>,
    pub interior: Vec<bool>,
    /// Exponent sequences per ball half-edge, parallel to `eval`.
    pub walks: Vec<Vec<u32>>,
}

fn ball_walk_name(exponents: &[u32]) -> String {
    let parts: Vec<String> = exponents.iter().map(|e| format!("{e:03}")).collect();
    format!("s{}", parts.join("."))
}

fn enumerate_special_walks(
    gset: &BrauerGSet,
    base: HalfEdge,
    max_taus: usize,
    cap: Option<usize>,
) -> Result<Vec<(Vec<u32>, HalfEdge)>, Error> {
    // walks are generated by runs: extend the final run through every legal
    // exponent, then branch through tau
    let mut out: Vec<(Vec<u32>, HalfEdge)> = Vec::new();
    // stack entries: (exponents so far, base of final run)
    let mut stack: Vec<(Vec<u32>, HalfEdge)> = vec![(vec![0], base)];
    while let Some((exps, run_base)) = stack.pop() {
        let taus = exps.len() - 1;
        let d = gset.degree(run_base);
        let top = *exps.last().unwrap();
        // record this walk
        let target = gset.g_pow(run_base, top as i64);
        out.push((exps.clone(), target));
        if let Some(cap) = cap {
            if out.len() > cap {
                return Err(Error::Domain(format!(
                    "special-walk closure exceeded {cap} elements"
                )));
            }
        }
        // extend the run
        if top + 1 < d {
            let mut next = exps.clone();
            *next.last_mut().unwrap() = top + 1;
            stack.push((next, run_base));
        }
        // branch through tau: interior runs must have positive exponent
        let interior_ok = taus == 0 || top > 0;
        if taus < max_taus && interior_ok {
            if let Some(next_base) = gset.tau(target) {
                let mut next = exps.clone();
                next.push(0);
                stack.push((next, next_base));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Builds the radius-bounded ball of special walks from `base`.
pub fn special_ball(gset: &BrauerGSet, base: HalfEdge, radius: usize) -> Result<SpecialBall, Error> {
    let walks = enumerate_special_walks(gset, base, radius, None)?;
    build_ball(gset, radius, walks)
}

fn build_ball(
    gset: &BrauerGSet,
    radius: usize,
    walks: Vec<(Vec<u32>, HalfEdge)>,
) -> Result<SpecialBall, Error> {
    let index: BTreeMap<&[u32], usize> =
        walks.iter().enumerate().map(|(i, (w, _))| (w.as_slice(), i)).collect();
    let mut raw = RawGSet::default();
    for (exps, target) in &walks {
        let name = ball_walk_name(exps);
        raw.half_edges.push(name.clone());
        // g-action: bump the leading exponent modulo the degree of its orbit
        let run_base_degree = gset.degree(*target);
        let mut bumped = exps.clone();
        let top = *bumped.last().unwrap();
        if top + 1 < run_base_degree {
            *bumped.last_mut().unwrap() = top + 1;
        } else {
            *bumped.last_mut().unwrap() = 0;
        }
        debug_assert!(index.contains_key(bumped.as_slice()));
        raw.g.insert(name.clone(), ball_walk_name(&bumped));
        raw.degree.insert(name.clone(), run_base_degree);
        // tau: prepend a tau (or strip the leading zero run)
        if gset.in_u(*target) {
            let top = *exps.last().unwrap();
            let image = if top == 0 && exps.len() > 1 {
                Some(exps[..exps.len() - 1].to_vec())
            } else {
                let mut pushed = exps.clone();
                pushed.push(0);
                if index.contains_key(pushed.as_slice()) {
                    Some(pushed)
                } else {
                    None // prepending leaves the ball: boundary half-edge
                }
            };
            if let Some(image) = image {
                raw.u.push(name.clone());
                raw.tau.insert(name, ball_walk_name(&image));
            }
        }
    }
    let ball = BrauerGSet::new(raw)?;
    let mut eval = vec![HalfEdge(0); ball.len()];
    let mut interior = vec![false; ball.len()];
    let mut ball_walks = vec![Vec::new(); ball.len()];
    for (exps, target) in &walks {
        let h = ball.lookup(&ball_walk_name(exps)).unwrap();
        eval[h.0] = *target;
        interior[h.0] = exps.len() - 1 < radius;
        ball_walks[h.0] = exps.clone();
    }
    Ok(SpecialBall { ball, eval, interior, walks: ball_walks })
}

/// Counts vertices of f-degree greater than one.
pub fn exceptional_vertices(gset: &BrauerGSet) -> Vec<usize> {
    (0..gset.vertex_count())
        .filter(|&v| gset.f_degree(v) > num_rational::Ratio::from_integer(1))
        .collect()
}

/// A Brauer graph whose underlying diagram is a tree with at most one
/// vertex of f-degree above one.
pub fn is_brauer_tree(gset: &BrauerGSet) -> bool {
    gset.is_modified_bg()
        && gset.doubles().is_empty()
        && gset.is_connected()
        && gset.edges().len() + 1 == gset.vertex_count()
        && exceptional_vertices(gset).len() <= 1
}

/// Unrolls a Brauer tree with one exceptional vertex of f-degree `m` into
/// the f-degree-trivial Brauer tree of `m * edges` edges, by saturating the
/// special-walk ball at a half-edge `h` of the exceptional vertex. Returns
/// the unrolled tree and the `m`-sheeted evaluation covering.
pub fn unfold_exceptional_tree(
    tree: &BrauerGSet,
    h: HalfEdge,
) -> Result<(BrauerGSet, CoveringMap), Error> {
    if !is_brauer_tree(tree) {
        return Err(Error::Domain(
            "input must be a Brauer tree with at most one exceptional vertex".into(),
        ));
    }
    let exceptional = exceptional_vertices(tree);
    let m = match exceptional.as_slice() {
        [] => 1u64,
        [v] => {
            if tree.vertex_of(h) != *v {
                return Err(Error::Domain(
                    "base half-edge must lie at the exceptional vertex".into(),
                ));
            }
            *tree.f_degree(*v).numer()
        }
        _ => unreachable!(),
    };
    let expected = (m as usize) * tree.len();
    let walks = enumerate_special_walks(tree, h, usize::MAX, Some(expected))?;
    if walks.len() != expected {
        return Err(Error::Domain(format!(
            "unfolding closed at {} half-edges, expected {expected}",
            walks.len()
        )));
    }
    let unrolled = build_ball(tree, usize::MAX, walks)?;
    debug_assert!(is_brauer_tree(&unrolled.ball) && unrolled.ball.f_degree_trivial());
    let map = unrolled.eval.iter().map(|h| h.0).collect();
    let cov = CoveringMap::new(unrolled.ball.clone(), tree.clone(), map)?;
    Ok((unrolled.ball, cov))
}

/// Finds an isomorphism by anchored backtracking over connected components;
/// the result is the first candidate in lexicographic anchor order.
pub fn are_isomorphic(e1: &BrauerGSet, e2: &BrauerGSet) -> Option<Isomorphism> {
    if e1.len() != e2.len() {
        return None;
    }
    let comps1 = e1.connected_components();
    let comps2 = e2.connected_components();
    if comps1.len() != comps2.len() {
        return None;
    }
    let mut map = vec![usize::MAX; e1.len()];
    let mut used = vec![false; e2.len()];
    let mut taken = vec![false; comps2.len()];
    if match_components(e1, e2, &comps1, &comps2, 0, &mut taken, &mut map, &mut used) {
        Some(Isomorphism::new(e1, e2, map).expect("propagation yields an isomorphism"))
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn match_components(
    e1: &BrauerGSet,
    e2: &BrauerGSet,
    comps1: &[Vec<HalfEdge>],
    comps2: &[Vec<HalfEdge>],
    at: usize,
    taken: &mut Vec<bool>,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if at == comps1.len() {
        return true;
    }
    let anchor = anchor_of(e1, &comps1[at]);
    for (j, comp2) in comps2.iter().enumerate() {
        if taken[j] || comp2.len() != comps1[at].len() {
            continue;
        }
        for &candidate in comp2 {
            if signature(e1, anchor) != signature(e2, candidate) {
                continue;
            }
            let saved_map = map.clone();
            let saved_used = used.clone();
            if propagate(e1, e2, anchor, candidate, map, used) {
                taken[j] = true;
                if match_components(e1, e2, comps1, comps2, at + 1, taken, map, used) {
                    return true;
                }
                taken[j] = false;
            }
            *map = saved_map;
            *used = saved_used;
        }
    }
    false
}

fn signature(gset: &BrauerGSet, h: HalfEdge) -> (u32, usize, bool, bool) {
    (
        gset.degree(h),
        gset.vertex_size(gset.vertex_of(h)),
        gset.in_u(h),
        gset.tau(h) == Some(h),
    )
}

/// Anchor on the scarcest signature, ties broken lexicographically.
fn anchor_of(gset: &BrauerGSet, comp: &[HalfEdge]) -> HalfEdge {
    let mut counts: BTreeMap<(u32, usize, bool, bool), usize> = BTreeMap::new();
    for &h in comp {
        *counts.entry(signature(gset, h)).or_default() += 1;
    }
    *comp
        .iter()
        .min_by_key(|&&h| (counts[&signature(gset, h)], h))
        .expect("components are nonempty")
}

/// Extends `anchor -> candidate` over the component by g/tau steps.
fn propagate(
    e1: &BrauerGSet,
    e2: &BrauerGSet,
    anchor: HalfEdge,
    candidate: HalfEdge,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let mut stack = vec![(anchor, candidate)];
    let mut assigned = Vec::new();
    let mut ok = true;
    'outer: while let Some((x, y)) = stack.pop() {
        if map[x.0] != usize::MAX {
            if map[x.0] != y.0 {
                ok = false;
                break;
            }
            continue;
        }
        if used[y.0]
            || e1.degree(x) != e2.degree(y)
            || e1.in_u(x) != e2.in_u(y)
        {
            ok = false;
            break 'outer;
        }
        map[x.0] = y.0;
        used[y.0] = true;
        assigned.push((x, y));
        stack.push((e1.g(x), e2.g(y)));
        stack.push((e1.g_inv(x), e2.g_inv(y)));
        match (e1.tau(x), e2.tau(y)) {
            (Some(tx), Some(ty)) => stack.push((tx, ty)),
            (None, None) => {}
            _ => {
                ok = false;
                break;
            }
        }
    }
    if !ok {
        for (x, y) in assigned {
            map[x.0] = usize::MAX;
            used[y.0] = false;
        }
    }
    ok
}

/// Which of the three domestic families to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomesticCase {
    /// Tree with two double half-edges, trivial f-degree; Nakayama order `2r`.
    One,
    /// Tree with exactly two vertices of f-degree 2; Nakayama order `2r - 1`.
    Two,
    /// Unicyclic with trivial f-degree; Nakayama order `r`, twist `l`.
    Three,
}

fn domestic_name(base: &str, j: usize) -> String {
    format!("{base}@{j:02}")
}

/// Indices along the `g tau` walk from `from`: position of every half-edge
/// in its `<g tau>`-orbit.
fn g_tau_indices(gset: &BrauerGSet, from: HalfEdge) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    let mut at = from;
    let mut j = 0usize;
    loop {
        out.insert(at.0, j);
        at = gset.g(gset.tau(at).expect("U = E here"));
        j += 1;
        if at == from {
            break;
        }
    }
    out
}

/// Per-vertex marker: the half-edge with least walk index, preferring the
/// `outer` index set when the vertex meets it.
fn vertex_markers(
    gset: &BrauerGSet,
    primary: &BTreeMap<usize, usize>,
    secondary: Option<&BTreeMap<usize, usize>>,
) -> Vec<usize> {
    (0..gset.vertex_count())
        .map(|v| {
            let orbit = &gset.vertices()[v];
            if let Some(&h) = orbit
                .iter()
                .filter(|h| primary.contains_key(*h))
                .min_by_key(|h| primary[*h])
            {
                h
            } else {
                let sec = secondary.expect("vertex missed by the primary walk");
                *orbit
                    .iter()
                    .filter(|h| sec.contains_key(*h))
                    .min_by_key(|h| sec[*h])
                    .expect("every vertex meets one of the two walks")
            }
        })
        .collect()
}

/// Diagram edges that survive iterated leaf stripping: the unique cycle of a
/// unicyclic diagram.
pub fn cycle_edges(gset: &BrauerGSet) -> Vec<(HalfEdge, HalfEdge)> {
    let edges = gset.edges();
    let mut alive = vec![true; edges.len()];
    loop {
        let mut deg = vec![0usize; gset.vertex_count()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if alive[i] {
                deg[gset.vertex_of(a)] += 1;
                deg[gset.vertex_of(b)] += 1;
            }
        }
        let mut changed = false;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if alive[i] && (deg[gset.vertex_of(a)] == 1 || deg[gset.vertex_of(b)] == 1) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    edges.into_iter().zip(alive).filter_map(|(e, k)| k.then_some(e)).collect()
}

/// Builds the explicit fms-BG family member over the base `b_set` for the
/// given domestic case. `r` is the parameter of the Nakayama order (`2r`,
/// `2r - 1`, `r` for cases 1, 2, 3); case 3 also takes the twist
/// `1 <= l <= r`.
pub fn construct_domestic(
    base: &BrauerGSet,
    case: DomesticCase,
    r: usize,
    l: Option<usize>,
) -> Result<BrauerGSet, Error> {
    if r == 0 {
        return Err(Error::Domain("r must be positive".into()));
    }
    if !base.is_connected() {
        return Err(Error::NotConnected);
    }
    if !base.is_modified_bg() {
        return Err(Error::NotModifiedBg);
    }
    let n = base.vertex_count();
    let k = base.edges().len();
    let dbl = base.doubles().len();
    match case {
        DomesticCase::One => {
            if dbl != 2 || k + 1 != n || !base.f_degree_trivial() {
                return Err(Error::Domain(
                    "case 1 needs l = 2, k - n + 1 = 0 and trivial f-degree".into(),
                ));
            }
            let b = HalfEdge(0);
            let indices = g_tau_indices(base, b);
            if indices.len() != base.len() {
                return Err(Error::Domain("g tau walk does not reach every half-edge".into()));
            }
            let markers = vertex_markers(base, &indices, None);
            let sheets = 2 * r;
            build_twisted(base, sheets, &markers, |_, _| 1, |c, j| {
                let t = base.tau(HalfEdge(c)).unwrap().0;
                if t == c {
                    (c, (j + r) % sheets)
                } else {
                    (t, j)
                }
            })
        }
        DomesticCase::Two => {
            let exceptional = exceptional_vertices(base);
            let two_deg_ok = exceptional.len() == 2
                && exceptional
                    .iter()
                    .all(|&v| base.f_degree(v) == num_rational::Ratio::from_integer(2));
            if dbl != 0 || k + 1 != n || !two_deg_ok {
                return Err(Error::Domain(
                    "case 2 needs l = 0, k - n + 1 = 0 and exactly two f-degree-2 vertices".into(),
                ));
            }
            let b = HalfEdge(0);
            let indices = g_tau_indices(base, b);
            if indices.len() != base.len() {
                return Err(Error::Domain("g tau walk does not reach every half-edge".into()));
            }
            let markers = vertex_markers(base, &indices, None);
            let sheets = 2 * r - 1;
            build_twisted(
                base,
                sheets,
                &markers,
                |v, _| if exceptional.contains(&v) { r } else { 1 },
                |c, j| (base.tau(HalfEdge(c)).unwrap().0, j),
            )
        }
        DomesticCase::Three => {
            let l = l.ok_or_else(|| Error::Domain("case 3 needs the twist parameter l".into()))?;
            if l == 0 || l > r {
                return Err(Error::Domain("case 3 needs 1 <= l <= r".into()));
            }
            if dbl != 0 || k != n || !base.f_degree_trivial() {
                return Err(Error::Domain(
                    "case 3 needs l = 0, k - n + 1 = 1 and trivial f-degree".into(),
                ));
            }
            let cycle = cycle_edges(base);
            if cycle.is_empty() {
                return Err(Error::Domain("no cycle found".into()));
            }
            let b = cycle.iter().flat_map(|&(a, c)| [a, c]).min().unwrap();
            let outer = g_tau_indices(base, b);
            let tb = base.tau(b).unwrap();
            if outer.contains_key(&tb.0) {
                return Err(Error::Domain(
                    "base half-edge and its partner share a g tau orbit".into(),
                ));
            }
            let inner = g_tau_indices(base, tb);
            if outer.len() + inner.len() != base.len() {
                return Err(Error::Domain("expected exactly two g tau orbits".into()));
            }
            let markers = vertex_markers(base, &outer, Some(&inner));
            build_twisted(base, r, &markers, |_, _| 1, |c, j| {
                let t = base.tau(HalfEdge(c)).unwrap().0;
                if c == b.0 {
                    (t, (j + l) % r)
                } else if c == tb.0 {
                    (t, (j + r - l) % r)
                } else {
                    (t, j)
                }
            })
        }
    }
}

/// Shared scaffolding of the three families: `base x Z/sheets` with the
/// `g`-action incremented by a per-vertex weight at the marked half-edge and
/// `tau` given by the case closure.
fn build_twisted(
    base: &BrauerGSet,
    sheets: usize,
    markers: &[usize],
    weight: impl Fn(usize, usize) -> usize,
    tau: impl Fn(usize, usize) -> (usize, usize),
) -> Result<BrauerGSet, Error> {
    let mut raw = RawGSet::default();
    for c in base.half_edges() {
        for j in 0..sheets {
            let name = domestic_name(base.name(c), j);
            raw.half_edges.push(name.clone());
            let gc = base.g(c);
            let gv = base.vertex_of(gc);
            let j_next = if markers[gv] == gc.0 { (j + weight(gv, j)) % sheets } else { j };
            raw.g.insert(name.clone(), domestic_name(base.name(gc), j_next));
            raw.degree.insert(name.clone(), base.degree(c));
            raw.u.push(name.clone());
            let (tc, tj) = tau(c.0, j);
            raw.tau.insert(name, domestic_name(base.name(HalfEdge(tc)), tj));
        }
    }
    let result = BrauerGSet::new(raw)?;
    if !result.is_fms_bg() {
        return Err(Error::Domain("construction did not produce an fms-BG".into()));
    }
    Ok(result)
}
