//! Stable Auslander-Reiten data: exceptional tube ranks via the half-edge
//! permutation, the domestic component census, Brauer relations and
//! configurations of the translation quiver of type A, descriptors of the
//! representation-finite AR-quivers, and their residue presentations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Arrow, Flavor, Relation};
use crate::classify::{classify_rep_type, shape_stats, RepType, RfSubcase};
use crate::constructions::{
    exceptional_vertices, hat, quotient_by_nakayama, unfold_exceptional_tree,
};
use crate::error::Error;
use crate::gset::{gcd, BrauerGSet, HalfEdge};

/// The permutation `e -> sigma^{-1} (g tau)^2 (e)` whose orbits index the
/// exceptional tubes.
pub fn dtr_half_edge_permutation(gset: &BrauerGSet) -> Result<Vec<HalfEdge>, Error> {
    if !gset.is_fms_bg() {
        return Err(Error::NotFmsBg);
    }
    Ok(gset
        .half_edges()
        .map(|e| {
            let x = gset.g(gset.tau(e).unwrap());
            let x = gset.g(gset.tau(x).unwrap());
            gset.sigma_inv(x)
        })
        .collect())
}

/// Orbit-length multiset of the tube permutation: rank -> number of tubes.
pub fn exceptional_tubes(gset: &BrauerGSet) -> Result<BTreeMap<u64, usize>, Error> {
    if classify_rep_type(gset)?.is_rep_finite() {
        return Err(Error::Domain(
            "exceptional tubes exist only for representation-infinite algebras".into(),
        ));
    }
    let perm = dtr_half_edge_permutation(gset)?;
    let mut seen = vec![false; gset.len()];
    let mut ranks: BTreeMap<u64, usize> = BTreeMap::new();
    for start in 0..gset.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut at = start;
        loop {
            seen[at] = true;
            len += 1;
            at = perm[at].0;
            if at == start {
                break;
            }
        }
        *ranks.entry(len).or_default() += 1;
    }
    Ok(ranks)
}

/// Census of the stable AR-quiver of a domestic algebra: the exceptional
/// tubes by rank, the Euclidean components by type, and the homogeneous
/// family. Rank-one tubes are listed explicitly even though they have the
/// same shape as the homogeneous family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ARSummary {
    /// (rank, count), ascending rank.
    pub tube_ranks: Vec<(u64, usize)>,
    /// (p, q, count) for components of shape Z A-tilde_{p,q}.
    pub za_tilde: Vec<(u64, u64, usize)>,
    /// Infinitely many rank-one band tubes are always present.
    pub homogeneous: bool,
}

/// Component census by the domestic case formulas.
pub fn stable_ar_summary(gset: &BrauerGSet) -> Result<ARSummary, Error> {
    let RepType::Domestic(params) = classify_rep_type(gset)? else {
        return Err(Error::Domain("the stable summary is defined for domestic input".into()));
    };
    let (b, _) = quotient_by_nakayama(gset)?;
    let stats = shape_stats(&b)?;
    let n = stats.vertex_count as u64;
    let r = params.r;
    let summary = match params.case {
        1 => ARSummary {
            tube_ranks: vec![(n, 4 * r as usize)],
            za_tilde: vec![(n, n, 2 * r as usize)],
            homogeneous: true,
        },
        2 => ARSummary {
            tube_ranks: vec![(n - 1, 4 * r as usize - 2)],
            za_tilde: vec![(n - 1, n - 1, 2 * r as usize - 1)],
            homogeneous: true,
        },
        _ => {
            let c3 = params.case3.as_ref().expect("case 3 carries parameters");
            let (m, p, q, l) = (c3.m, c3.p, c3.q, c3.l);
            let d = if m % 2 == 1 { gcd(r, m + 2 * l) } else { gcd(2 * r, m + 2 * l) };
            let rank_a = r * (m + 2 * p) / d;
            let rank_b = r * (m + 2 * q) / d;
            let mut tube_ranks: BTreeMap<u64, usize> = BTreeMap::new();
            *tube_ranks.entry(rank_a).or_default() += d as usize;
            *tube_ranks.entry(rank_b).or_default() += d as usize;
            ARSummary {
                tube_ranks: tube_ranks.into_iter().collect(),
                za_tilde: vec![(rank_a.max(rank_b), rank_a.min(rank_b), d as usize)],
                homogeneous: true,
            }
        }
    };
    Ok(summary)
}

/// A non-crossing equivalence relation on the n-th roots of unity, with the
/// anticlockwise successor permutation inside classes.
#[derive(Clone, Debug, Serialize)]
pub struct BrauerRelation {
    pub order: usize,
    pub successor: Vec<usize>,
    /// Cycles of the successor, each sorted, ordered by least element.
    pub classes: Vec<Vec<usize>>,
}

/// Walks the boundary of a trivial-f-degree Brauer tree from `e` and reads
/// off the Brauer relation on its edges.
pub fn brauer_relation(tree: &BrauerGSet, e: HalfEdge) -> Result<BrauerRelation, Error> {
    if !crate::constructions::is_brauer_tree(tree) || !tree.f_degree_trivial() {
        return Err(Error::Domain("input must be a Brauer tree with trivial f-degree".into()));
    }
    let n = tree.edges().len();
    // boundary walk x -> tau(g(x)) visits all 2n half-edges
    let mut boundary = vec![e];
    let mut at = tree.tau(tree.g(e)).unwrap();
    while at != e {
        boundary.push(at);
        at = tree.tau(tree.g(at)).unwrap();
    }
    if boundary.len() != 2 * n {
        return Err(Error::Domain("boundary walk did not close over every half-edge".into()));
    }
    let edge_key = |h: HalfEdge| h.min(tree.tau(h).unwrap());
    let labels: Vec<HalfEdge> = (0..n).map(|m| edge_key(boundary[2 * m])).collect();
    {
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::Domain("even boundary positions missed an edge".into()));
        }
    }
    let successor: Vec<usize> = (0..n)
        .map(|k| {
            let target = edge_key(tree.g(boundary[2 * k]));
            labels.iter().position(|&l| l == target).expect("edge labels are complete")
        })
        .collect();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut class = Vec::new();
        let mut k = start;
        loop {
            seen[k] = true;
            class.push(k);
            k = successor[k];
            if k == start {
                break;
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    let rel = BrauerRelation { order: n, successor, classes };
    if !rel.is_non_crossing() {
        return Err(Error::Domain("classes cross on the circle".into()));
    }
    Ok(rel)
}

impl BrauerRelation {
    /// Convex hulls of distinct classes are disjoint: no two classes
    /// interleave around the circle.
    pub fn is_non_crossing(&self) -> bool {
        let mut owner = vec![0usize; self.order];
        for (c, class) in self.classes.iter().enumerate() {
            for &k in class {
                owner[k] = c;
            }
        }
        for a in 0..self.classes.len() {
            for b in a + 1..self.classes.len() {
                // count blocks of a/b alternation around the circle
                let members: Vec<usize> =
                    (0..self.order).filter(|&k| owner[k] == a || owner[k] == b).collect();
                let mut switches = 0;
                for i in 0..members.len() {
                    let here = owner[members[i]];
                    let next = owner[members[(i + 1) % members.len()]];
                    if here != next {
                        switches += 1;
                    }
                }
                if switches > 2 {
                    return false;
                }
            }
        }
        true
    }
}

/// A periodic configuration of the stable translation quiver of type A_n,
/// stored as the unique height over each going-up diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub order: usize,
    /// `heights[i] = j` with `(i, j)` the configuration point over column i.
    pub heights: Vec<u64>,
}

impl Configuration {
    pub fn contains(&self, i: i64, j: u64) -> bool {
        self.heights[i.rem_euclid(self.order as i64) as usize] == j
    }

    /// `beta(p) = p + j` for the point `(p, j)` on the going-up diagonal.
    pub fn beta(&self, p: i64) -> i64 {
        p + self.heights[p.rem_euclid(self.order as i64) as usize] as i64
    }

    /// `alpha(p) = n + x + 1` for the point `(x, y)` on the going-down
    /// diagonal through `p`.
    pub fn alpha(&self, p: i64) -> i64 {
        let n = self.order as i64;
        let mut found = None;
        for y in 1..=n {
            let x = p - y;
            if self.contains(x, y as u64) {
                debug_assert!(found.is_none(), "two configuration points on one down diagonal");
                found = Some(x);
            }
        }
        let x = found.expect("one configuration point per down diagonal");
        n + x + 1
    }
}

/// Heights from a Brauer relation: `(i, j)` is marked iff the successor of
/// root `i` is root `i + j`.
pub fn configuration(rel: &BrauerRelation) -> Configuration {
    let n = rel.order;
    let heights = (0..n)
        .map(|i| {
            let j = (rel.successor[i] + n - i) % n;
            if j == 0 {
                n as u64
            } else {
                j as u64
            }
        })
        .collect();
    Configuration { order: n, heights }
}

/// The acting group of the descriptor: a power of the translation, or a
/// translation composed with the reflection of the type-A diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DescriptorGroup {
    Translation(u64),
    TranslationReflection(u64),
}

/// The AR-quiver of a representation-finite algebra, described as the
/// configuration-marked translation quiver of type A_n modulo a group.
#[derive(Clone, Debug, Serialize)]
pub struct ARQuiverDescriptor {
    pub n: usize,
    pub config: Configuration,
    pub group: DescriptorGroup,
    /// For the reflection case: the number of edges of the Nakayama
    /// quotient (the reflection is `(i, j) -> (i + j - p - 1, n + 1 - j)`).
    pub reflection_offset: Option<u64>,
}

impl ARQuiverDescriptor {
    /// Stable vertices per fundamental domain (excluding the inserted
    /// projective vertices): the count of non-projective indecomposables.
    pub fn stable_vertex_count(&self) -> u64 {
        let t = match self.group {
            DescriptorGroup::Translation(s) => s,
            DescriptorGroup::TranslationReflection(t) => t,
        };
        self.n as u64 * t
    }

    pub fn text(&self) -> String {
        match self.group {
            DescriptorGroup::Translation(s) => format!("(ZA_{})_C / <tau^{}>", self.n, s),
            DescriptorGroup::TranslationReflection(t) => {
                format!("(ZA_{})_C / <tau^{} phi>", self.n, t)
            }
        }
    }
}

/// Builds the descriptor of the AR-quiver of a representation-finite
/// fms-BG algebra from the Nakayama quotient, the unfolded tree, and the
/// monodromy of the quotient covering.
pub fn rf_ar_descriptor(gset: &BrauerGSet) -> Result<ARQuiverDescriptor, Error> {
    let rep = classify_rep_type(gset)?;
    let RepType::RepFinite { subcase, exceptional_multiplicity, .. } = rep else {
        return Err(Error::Domain("descriptor defined for representation-finite input".into()));
    };
    let (b, cov) = quotient_by_nakayama(gset)?;
    match subcase {
        RfSubcase::TreeQuotient => {
            let m = exceptional_multiplicity.unwrap_or(1);
            let h = match exceptional_vertices(&b).first() {
                Some(&v) => HalfEdge(b.vertices()[v][0]),
                None => HalfEdge(0),
            };
            let (tree, unfold_cov) = unfold_exceptional_tree(&b, h)?;
            let n = tree.edges().len();
            // the anchor over h is the trivial special walk
            let anchor = tree
                .half_edges()
                .find(|&x| unfold_cov.apply(x) == h && tree.name(x) == "s000")
                .ok_or_else(|| Error::Domain("anchor walk missing from the unfolding".into()))?;
            let rel = brauer_relation(&tree, anchor)?;
            let config = configuration(&rel);
            // monodromy of the vertex loop at h on the fiber of E -> B
            let orbit_len = b.vertex_size(b.vertex_of(h)) as i64;
            let fiber = cov.fiber(h);
            let e0 = fiber[0];
            let mut r = 0u64;
            let mut at = e0;
            loop {
                at = gset.g_pow(at, orbit_len);
                r += 1;
                if at == e0 {
                    break;
                }
            }
            debug_assert_eq!(r, gset.nakayama().1);
            // stability of the configuration under shifting by n / m
            let period = n as u64 / m;
            for i in 0..n {
                if config.heights[i] != config.heights[(i + period as usize) % n] {
                    return Err(Error::Domain("configuration is not stable under n/m".into()));
                }
            }
            Ok(ARQuiverDescriptor {
                n,
                config,
                group: DescriptorGroup::Translation(n as u64 * r / m),
                reflection_offset: None,
            })
        }
        RfSubcase::DoubleQuotient => {
            let h = b.doubles()[0];
            let (tree, _) = hat(&b)?;
            let n = tree.edges().len();
            let p = b.edges().len() as u64;
            debug_assert_eq!(n as u64, 2 * p + 1);
            let anchor = tree
                .lookup(&format!("{}#1", b.name(h)))
                .ok_or_else(|| Error::Domain("first copy of the double is missing".into()))?;
            let rel = brauer_relation(&tree, anchor)?;
            let config = configuration(&rel);
            // r from the stabilizer generator x^r y of the fiber anchor
            let fiber = cov.fiber(h);
            let e0 = fiber[0];
            let mut r = 0u64;
            let mut at = gset.tau(e0).unwrap();
            loop {
                at = gset.sigma(at);
                r += 1;
                if at == e0 {
                    break;
                }
            }
            // phi-symmetry of the configuration
            for i in 0..n as i64 {
                let j = config.heights[i as usize];
                let (pi, pj) = (i + j as i64 - p as i64 - 1, n as u64 + 1 - j);
                if !config.contains(pi, pj) {
                    return Err(Error::Domain("configuration is not reflection symmetric".into()));
                }
            }
            Ok(ARQuiverDescriptor {
                n,
                config,
                group: DescriptorGroup::TranslationReflection(n as u64 * r),
                reflection_offset: Some(p),
            })
        }
    }
}

/// Residue quiver and relations of the descriptor: the doubled translation
/// quiver on the integers modulo the descriptor group, with the two zero
/// compositions per vertex and the equality of the alpha and beta paths up
/// to the shift by n.
pub fn riedtmann_presentation(desc: &ARQuiverDescriptor) -> Result<AlgebraPresentation, Error> {
    let n = desc.n as i64;
    let alpha = |x: i64| desc.config.alpha(x);
    let beta = |x: i64| desc.config.beta(x);
    let (period, class_of): (i64, Box<dyn Fn(i64, bool) -> (usize, bool)>) = match desc.group {
        DescriptorGroup::Translation(s) => {
            let s = s as i64;
            (s, Box::new(move |x: i64, is_alpha: bool| (x.rem_euclid(s) as usize, is_alpha)))
        }
        DescriptorGroup::TranslationReflection(t) => {
            let t = t as i64;
            let p = desc.reflection_offset.expect("reflection carries its offset") as i64;
            let heights = desc.config.heights.clone();
            let order = desc.config.order as i64;
            // v(x) = x - y(x) + p + 1 for the down-diagonal point (x - y, y)
            let v = move |x: i64| -> i64 {
                for y in 1..=order {
                    let col = (x - y).rem_euclid(order) as usize;
                    if heights[col] == y as u64 {
                        return x - y + p + 1;
                    }
                }
                unreachable!("one configuration point per down diagonal")
            };
            let h = move |x: i64| v(x) + t;
            // freeness of the generated group on the vertices
            for x in 0..2 * t {
                if h(x).rem_euclid(2 * t) == x {
                    return Err(Error::Domain("descriptor group does not act freely".into()));
                }
            }
            // vertex classes: {x, h(x)} modulo the translation h^2 = 2t
            let modulus = 2 * t;
            let mut repr: Vec<i64> = (0..modulus).collect();
            for x in 0..modulus {
                let y = h(x).rem_euclid(modulus);
                let (a, b) = (repr[x as usize].min(repr[y as usize]), ());
                let _ = b;
                let rx = repr[x as usize];
                let ry = repr[y as usize];
                let least = rx.min(ry);
                for r in repr.iter_mut() {
                    if *r == rx || *r == ry {
                        *r = least;
                    }
                }
                let _ = a;
            }
            let mut reps: Vec<i64> = repr.clone();
            reps.sort_unstable();
            reps.dedup();
            let class_fn = move |x: i64, is_alpha: bool| -> (usize, bool) {
                let xm = x.rem_euclid(modulus);
                let hx = h(xm).rem_euclid(modulus);
                // the group swaps alpha and beta while moving x to h(x);
                // normalize to the least representative
                let (canon_x, canon_alpha) = if repr[xm as usize] == xm && xm <= hx {
                    (xm, is_alpha)
                } else if repr[hx as usize] == hx {
                    (hx, !is_alpha)
                } else {
                    (repr[xm as usize], is_alpha)
                };
                let slot = reps.binary_search(&canon_x).expect("representative registered");
                (slot, canon_alpha)
            };
            (modulus, Box::new(class_fn))
        }
    };
    // vertex classes and names
    let mut vertex_class: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vertices: Vec<String> = Vec::new();
    for x in 0..period {
        let (slot, _) = class_of(x, true);
        vertex_class.entry(slot).or_insert_with(|| {
            vertices.push(format!("{slot}"));
            vertices.len() - 1
        });
    }
    let vertex_of = |x: i64| -> usize {
        let (slot, _) = class_of(x, true);
        vertex_class[&slot]
    };
    // arrow classes
    let mut arrow_class: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    for x in 0..period {
        for is_alpha in [true, false] {
            let key = class_of(x, is_alpha);
            if arrow_class.contains_key(&key) {
                continue;
            }
            let target = if is_alpha { alpha(x) } else { beta(x) };
            let name = if key.1 { format!("a{}", key.0) } else { format!("b{}", key.0) };
            arrow_class.insert(key, arrows.len());
            arrows.push(Arrow { name, source: vertex_of(x), target: vertex_of(target) });
        }
    }
    let arrow_at = |x: i64, is_alpha: bool| -> usize { arrow_class[&class_of(x, is_alpha)] };
    // relations per vertex representative
    let mut relations = Vec::new();
    let mut seen_vertex = vec![false; vertices.len()];
    for x in 0..period {
        let v = vertex_of(x);
        if seen_vertex[v] {
            continue;
        }
        seen_vertex[v] = true;
        relations.push(Relation::Zero(vec![arrow_at(x, true), arrow_at(alpha(x), false)]));
        relations.push(Relation::Zero(vec![arrow_at(x, false), arrow_at(beta(x), true)]));
        let mut a_path = Vec::new();
        let mut at = x;
        while at != x + n {
            a_path.push(arrow_at(at, true));
            at = alpha(at);
            debug_assert!(at <= x + n);
        }
        let mut b_path = Vec::new();
        let mut at = x;
        while at != x + n {
            b_path.push(arrow_at(at, false));
            at = beta(at);
            debug_assert!(at <= x + n);
        }
        relations.push(Relation::Equal(a_path, b_path));
    }
    let mut pres = AlgebraPresentation {
        flavor: Flavor::Riedtmann,
        vertices,
        arrows,
        relations,
        degenerate: false,
    };
    crate::algebra::eliminate_unit_equalities(&mut pres);
    Ok(pres)
}
