//! Brauer G-sets: a finite half-edge set with an action of the infinite
//! cyclic group `<g>`, a partial involution `tau` on a subset `U`, and a
//! degree function constant on `<g>`-orbits.
//!
//! All orderings (half-edge indices, vertex lists, edge lists) follow the
//! lexicographic order of the half-edge identifiers, so every operation on
//! these values is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Index of a half-edge inside a [`BrauerGSet`]. Indices enumerate the
/// identifiers in lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge(pub usize);

impl fmt::Debug for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

/// Raw, name-based description of a Brauer G-set prior to validation.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RawGSet {
    pub half_edges: Vec<String>,
    /// `g`-action by identifier.
    pub g: BTreeMap<String, String>,
    /// Subset on which `tau` is defined.
    pub u: Vec<String>,
    /// Involution on `u` (fixed points allowed).
    pub tau: BTreeMap<String, String>,
    /// Degree per half-edge, positive.
    pub degree: BTreeMap<String, u32>,
}

/// One structural defect of a raw description: the named mapping refers to
/// identifiers that do not exist, is not total, or is not bijective where it
/// should be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Malformed {
    pub field: &'static str,
    pub detail: String,
}

/// One violated Brauer-G-set axiom together with a witness half-edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    /// `"mf1"`, `"mf2"`, `"tau-involution"`, `"tau-range"`, `"degree-positive"`.
    pub axiom: &'static str,
    pub witness: String,
    pub detail: String,
}

/// Result of [`BrauerGSet::validate_raw`]: empty iff the input is a Brauer
/// G-set. Malformed input is reported separately from axiom violations.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub malformed: Vec<Malformed>,
    pub violations: Vec<AxiomViolation>,
    pub is_brauer_g_set: bool,
    /// `U = E` and `tau` fixed-point free.
    pub is_fms_bg: bool,
    /// `U = E` and every f-degree integral.
    pub is_modified_bg: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.malformed.is_empty() && self.violations.is_empty()
    }
}

/// A validated Brauer G-set `(E, U, tau, d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BrauerGSet {
    names: Vec<String>,
    g: Vec<usize>,
    g_inv: Vec<usize>,
    in_u: Vec<bool>,
    tau: Vec<Option<usize>>,
    degree: Vec<u32>,
    vertex_of: Vec<usize>,
    vertices: Vec<Vec<usize>>,
}

impl fmt::Debug for BrauerGSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BrauerGSet{{")?;
        for h in 0..self.names.len() {
            if h > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: g->{}", self.names[h], self.names[self.g[h]])?;
            if let Some(t) = self.tau[h] {
                write!(f, " tau->{}", self.names[t])?;
            }
            write!(f, " d={}", self.degree[h])?;
        }
        write!(f, "}}")
    }
}

impl BrauerGSet {
    /// Validates a raw description without constructing anything.
    pub fn validate_raw(raw: &RawGSet) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut names: Vec<String> = raw.half_edges.clone();
        names.sort();
        let dup = names.windows(2).find(|w| w[0] == w[1]);
        if let Some(w) = dup {
            report.malformed.push(Malformed {
                field: "half_edges",
                detail: format!("duplicate identifier {:?}", w[0]),
            });
        }
        if names.is_empty() {
            report.malformed.push(Malformed {
                field: "half_edges",
                detail: "empty half-edge set".into(),
            });
        }
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let check_key = |field: &'static str, key: &str, report: &mut ValidationReport| {
            if !index.contains_key(key) {
                report.malformed.push(Malformed {
                    field,
                    detail: format!("unknown identifier {key:?}"),
                });
                false
            } else {
                true
            }
        };
        for (k, v) in &raw.g {
            check_key("g", k, &mut report);
            check_key("g", v, &mut report);
        }
        for u in &raw.u {
            check_key("U", u, &mut report);
        }
        for (k, v) in &raw.tau {
            check_key("tau", k, &mut report);
            check_key("tau", v, &mut report);
        }
        for k in raw.degree.keys() {
            check_key("degree", k, &mut report);
        }
        for n in &names {
            if !raw.g.contains_key(n.as_str()) {
                report.malformed.push(Malformed {
                    field: "g",
                    detail: format!("no image for {n:?}"),
                });
            }
            if !raw.degree.contains_key(n.as_str()) {
                report.malformed.push(Malformed {
                    field: "degree",
                    detail: format!("no degree for {n:?}"),
                });
            }
        }
        let u_set: BTreeSet<&str> = raw.u.iter().map(|s| s.as_str()).collect();
        for u in &u_set {
            if !raw.tau.contains_key(*u) && index.contains_key(*u) {
                report.malformed.push(Malformed {
                    field: "tau",
                    detail: format!("no image for {u:?}"),
                });
            }
        }
        for k in raw.tau.keys() {
            if !u_set.contains(k.as_str()) {
                report.malformed.push(Malformed {
                    field: "tau",
                    detail: format!("{k:?} is outside U"),
                });
            }
        }
        if !report.malformed.is_empty() {
            return report;
        }
        // g must be a bijection
        let mut seen = vec![false; names.len()];
        for v in raw.g.values() {
            let i = index[v.as_str()];
            if seen[i] {
                report.malformed.push(Malformed {
                    field: "g",
                    detail: format!("{v:?} hit twice; g is not a bijection"),
                });
            }
            seen[i] = true;
        }
        if !report.malformed.is_empty() {
            return report;
        }

        let g: Vec<usize> = names.iter().map(|n| index[raw.g[n.as_str()].as_str()]).collect();
        let degree: Vec<u32> = names.iter().map(|n| raw.degree[n.as_str()]).collect();
        let in_u: Vec<bool> = names.iter().map(|n| u_set.contains(n.as_str())).collect();
        let tau: Vec<Option<usize>> = names
            .iter()
            .map(|n| raw.tau.get(n.as_str()).map(|v| index[v.as_str()]))
            .collect();

        for h in 0..names.len() {
            if degree[h] == 0 {
                report.violations.push(AxiomViolation {
                    axiom: "degree-positive",
                    witness: names[h].clone(),
                    detail: "degree must be a positive integer".into(),
                });
            }
        }
        for h in 0..names.len() {
            if let Some(t) = tau[h] {
                if !in_u[t] {
                    report.violations.push(AxiomViolation {
                        axiom: "tau-range",
                        witness: names[h].clone(),
                        detail: format!("tau({}) = {} is outside U", names[h], names[t]),
                    });
                } else if tau[t] != Some(h) {
                    report.violations.push(AxiomViolation {
                        axiom: "tau-involution",
                        witness: names[h].clone(),
                        detail: format!("tau(tau({})) != {}", names[h], names[h]),
                    });
                }
            }
        }
        // (mf1): degree constant on <g>-orbits
        for h in 0..names.len() {
            let i = g[h];
            if degree[i] != degree[h] {
                report.violations.push(AxiomViolation {
                    axiom: "mf1",
                    witness: names[h].clone(),
                    detail: format!(
                        "d({}) = {} but d(g.{}) = {}",
                        names[h], degree[h], names[h], degree[i]
                    ),
                });
            }
        }
        if report.violations.iter().any(|v| v.axiom != "mf2") {
            // sigma is not well defined yet; stop before (mf2).
            return report;
        }
        // (mf2): sigma(U) = U and tau.sigma = sigma.tau on U
        let sigma = |h: usize| -> usize {
            let mut x = h;
            for _ in 0..degree[h] {
                x = g[x];
            }
            x
        };
        for h in 0..names.len() {
            if in_u[h] {
                let s = sigma(h);
                if !in_u[s] {
                    report.violations.push(AxiomViolation {
                        axiom: "mf2",
                        witness: names[h].clone(),
                        detail: format!("sigma({}) = {} left U", names[h], names[s]),
                    });
                } else if tau[s] != Some(sigma(tau[h].unwrap())) {
                    report.violations.push(AxiomViolation {
                        axiom: "mf2",
                        witness: names[h].clone(),
                        detail: format!("tau(sigma({})) != sigma(tau({}))", names[h], names[h]),
                    });
                }
            }
        }
        if report.is_valid() {
            report.is_brauer_g_set = true;
            let all_u = in_u.iter().all(|&b| b);
            let fixed_point_free = (0..names.len()).all(|h| tau[h] != Some(h));
            report.is_fms_bg = all_u && fixed_point_free;
            // integral f-degree: |orbit| divides d on each orbit
            let mut integral = true;
            let mut seen = vec![false; names.len()];
            for h in 0..names.len() {
                if seen[h] {
                    continue;
                }
                let mut size = 0u32;
                let mut x = h;
                loop {
                    seen[x] = true;
                    size += 1;
                    x = g[x];
                    if x == h {
                        break;
                    }
                }
                if degree[h] % size != 0 {
                    integral = false;
                }
            }
            report.is_modified_bg = all_u && integral;
        }
        report
    }

    /// Builds a validated Brauer G-set; fails with the full report otherwise.
    pub fn new(raw: RawGSet) -> Result<Self, Error> {
        let report = Self::validate_raw(&raw);
        if !report.is_valid() {
            return Err(Error::Invalid(Box::new(report)));
        }
        let mut names = raw.half_edges;
        names.sort();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let g: Vec<usize> = names.iter().map(|n| index[raw.g[n.as_str()].as_str()]).collect();
        let mut g_inv = vec![0usize; names.len()];
        for (h, &i) in g.iter().enumerate() {
            g_inv[i] = h;
        }
        let u_set: BTreeSet<&str> = raw.u.iter().map(|s| s.as_str()).collect();
        let in_u: Vec<bool> = names.iter().map(|n| u_set.contains(n.as_str())).collect();
        let tau: Vec<Option<usize>> = names
            .iter()
            .map(|n| raw.tau.get(n.as_str()).map(|v| index[v.as_str()]))
            .collect();
        let degree: Vec<u32> = names.iter().map(|n| raw.degree[n.as_str()]).collect();
        let mut vertex_of = vec![usize::MAX; names.len()];
        let mut vertices = Vec::new();
        for h in 0..names.len() {
            if vertex_of[h] != usize::MAX {
                continue;
            }
            let id = vertices.len();
            let mut orbit = Vec::new();
            let mut x = h;
            loop {
                vertex_of[x] = id;
                orbit.push(x);
                x = g[x];
                if x == h {
                    break;
                }
            }
            orbit.sort();
            vertices.push(orbit);
        }
        Ok(BrauerGSet { names, g, g_inv, in_u, tau, degree, vertex_of, vertices })
    }

    /// Convenience constructor from slices; identifiers are taken as given.
    pub fn from_parts(
        half_edges: &[&str],
        g: &[(&str, &str)],
        u: &[&str],
        tau: &[(&str, &str)],
        degree: &[(&str, u32)],
    ) -> Result<Self, Error> {
        let raw = RawGSet {
            half_edges: half_edges.iter().map(|s| s.to_string()).collect(),
            g: g.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            u: u.iter().map(|s| s.to_string()).collect(),
            tau: tau.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            degree: degree.iter().map(|(a, d)| (a.to_string(), *d)).collect(),
        };
        Self::new(raw)
    }

    pub fn to_raw(&self) -> RawGSet {
        RawGSet {
            half_edges: self.names.clone(),
            g: (0..self.len())
                .map(|h| (self.names[h].clone(), self.names[self.g[h]].clone()))
                .collect(),
            u: (0..self.len()).filter(|&h| self.in_u[h]).map(|h| self.names[h].clone()).collect(),
            tau: (0..self.len())
                .filter_map(|h| self.tau[h].map(|t| (self.names[h].clone(), self.names[t].clone())))
                .collect(),
            degree: (0..self.len()).map(|h| (self.names[h].clone(), self.degree[h])).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> {
        (0..self.names.len()).map(HalfEdge)
    }

    pub fn name(&self, h: HalfEdge) -> &str {
        &self.names[h.0]
    }

    pub fn lookup(&self, name: &str) -> Option<HalfEdge> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok().map(HalfEdge)
    }

    pub fn g(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(self.g[h.0])
    }

    pub fn g_inv(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge(self.g_inv[h.0])
    }

    pub fn g_pow(&self, h: HalfEdge, k: i64) -> HalfEdge {
        let n = self.vertices[self.vertex_of[h.0]].len() as i64;
        let k = k.rem_euclid(n);
        let mut x = h;
        for _ in 0..k {
            x = self.g(x);
        }
        x
    }

    pub fn in_u(&self, h: HalfEdge) -> bool {
        self.in_u[h.0]
    }

    pub fn tau(&self, h: HalfEdge) -> Option<HalfEdge> {
        self.tau[h.0].map(HalfEdge)
    }

    pub fn degree(&self, h: HalfEdge) -> u32 {
        self.degree[h.0]
    }

    /// The Nakayama automorphism `sigma: e -> g^{d(e)}.e`.
    pub fn sigma(&self, h: HalfEdge) -> HalfEdge {
        self.g_pow(h, self.degree[h.0] as i64)
    }

    pub fn sigma_inv(&self, h: HalfEdge) -> HalfEdge {
        self.g_pow(h, -(self.degree[h.0] as i64))
    }

    /// `sigma` as a permutation vector together with its multiplicative order.
    pub fn nakayama(&self) -> (Vec<HalfEdge>, u64) {
        let perm: Vec<HalfEdge> = self.half_edges().map(|h| self.sigma(h)).collect();
        let order = permutation_order(&perm.iter().map(|h| h.0).collect::<Vec<_>>());
        (perm, order)
    }

    /// Vertices are `<g>`-orbits, listed by their least half-edge.
    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.vertex_of[h.0]
    }

    pub fn vertex_size(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// The degree shared by all half-edges of vertex `v`.
    pub fn vertex_degree(&self, v: usize) -> u32 {
        self.degree[self.vertices[v][0]]
    }

    /// Exact f-degree `d / |v|` of vertex `v`.
    pub fn f_degree(&self, v: usize) -> Ratio<u64> {
        Ratio::new(self.vertex_degree(v) as u64, self.vertex_size(v) as u64)
    }

    pub fn f_degree_trivial(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.f_degree(v) == Ratio::from_integer(1))
    }

    pub fn f_degree_integral(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.f_degree(v).is_integer())
    }

    pub fn is_fms_bg(&self) -> bool {
        self.in_u.iter().all(|&b| b) && self.half_edges().all(|h| self.tau(h) != Some(h))
    }

    pub fn is_modified_bg(&self) -> bool {
        self.in_u.iter().all(|&b| b) && self.f_degree_integral()
    }

    /// Edges: unordered `tau`-pairs `{e, tau(e)}` with `e != tau(e)`,
    /// listed as `(min, max)` sorted by the first member.
    pub fn edges(&self) -> Vec<(HalfEdge, HalfEdge)> {
        let mut out = Vec::new();
        for h in self.half_edges() {
            if let Some(t) = self.tau(h) {
                if h < t {
                    out.push((h, t));
                }
            }
        }
        out
    }

    /// Fixed points of `tau`.
    pub fn doubles(&self) -> Vec<HalfEdge> {
        self.half_edges().filter(|&h| self.tau(h) == Some(h)).collect()
    }

    /// Partition of the half-edges under reachability by `g`, `g^{-1}`, `tau`
    /// steps; components sorted by least member.
    pub fn connected_components(&self) -> Vec<Vec<HalfEdge>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut comps: Vec<Vec<HalfEdge>> = Vec::new();
        for h in 0..self.len() {
            if comp[h] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![h];
            let mut members = Vec::new();
            comp[h] = id;
            while let Some(x) = stack.pop() {
                members.push(HalfEdge(x));
                let push = |y: usize, comp: &mut Vec<usize>, stack: &mut Vec<usize>| {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                };
                push(self.g[x], &mut comp, &mut stack);
                push(self.g_inv[x], &mut comp, &mut stack);
                if let Some(t) = self.tau[x] {
                    push(t, &mut comp, &mut stack);
                }
            }
            members.sort();
            comps.push(members);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Removes the complement of `U` and re-induces the `g`-action and the
    /// degrees (first-return construction). The fundamental groupoid on `U`
    /// is unchanged. Fails when `U` is empty.
    pub fn restrict_to_u(&self) -> Result<BrauerGSet, Error> {
        if self.in_u.iter().all(|&b| b) {
            return Ok(self.clone());
        }
        if !self.in_u.iter().any(|&b| b) {
            return Err(Error::Domain("cannot restrict: U is empty".into()));
        }
        let kept: Vec<usize> = (0..self.len()).filter(|&h| self.in_u[h]).collect();
        let mut raw = RawGSet::default();
        for &h in &kept {
            let name = self.names[h].clone();
            raw.half_edges.push(name.clone());
            // first return to U under g
            let mut x = self.g[h];
            while !self.in_u[x] {
                x = self.g[x];
            }
            raw.g.insert(name.clone(), self.names[x].clone());
            // degree drops by the number of skipped half-edges
            let mut skipped = 0u32;
            let mut y = h;
            for _ in 1..self.degree[h] {
                y = self.g[y];
                if !self.in_u[y] {
                    skipped += 1;
                }
            }
            raw.degree.insert(name.clone(), self.degree[h] - skipped);
            raw.u.push(name.clone());
            raw.tau.insert(name.clone(), self.names[self.tau[h].unwrap()].clone());
        }
        BrauerGSet::new(raw)
    }
}

/// Multiplicative order of a permutation given as an image vector.
pub fn permutation_order(perm: &[usize]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        loop {
            seen[x] = true;
            len += 1;
            x = perm[x];
            if x == start {
                break;
            }
        }
        order = lcm(order, len);
    }
    order
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Per-vertex and global counts of a Brauer G-set.
#[derive(Clone, Debug, Serialize)]
pub struct VertexStats {
    /// One entry per vertex: (least half-edge name, orbit size, degree, f-degree).
    pub vertices: Vec<VertexInfo>,
    pub edges: Vec<(String, String)>,
    pub double_half_edges: Vec<String>,
    /// n
    pub vertex_count: usize,
    /// k
    pub edge_count: usize,
    /// l
    pub double_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexInfo {
    pub least: String,
    pub size: usize,
    pub degree: u32,
    pub f_degree_num: u64,
    pub f_degree_den: u64,
}

impl BrauerGSet {
    pub fn vertex_stats(&self) -> VertexStats {
        let vertices = (0..self.vertex_count())
            .map(|v| {
                let f = self.f_degree(v);
                VertexInfo {
                    least: self.names[self.vertices[v][0]].clone(),
                    size: self.vertex_size(v),
                    degree: self.vertex_degree(v),
                    f_degree_num: *f.numer(),
                    f_degree_den: *f.denom(),
                }
            })
            .collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .iter()
            .map(|&(a, b)| (self.names[a.0].clone(), self.names[b.0].clone()))
            .collect();
        let doubles: Vec<String> =
            self.doubles().iter().map(|&h| self.names[h.0].clone()).collect();
        let u_size = self.in_u.iter().filter(|&&b| b).count();
        debug_assert_eq!(2 * edges.len() + doubles.len(), u_size);
        VertexStats {
            vertex_count: self.vertex_count(),
            edge_count: edges.len(),
            double_count: doubles.len(),
            vertices,
            edges,
            double_half_edges: doubles,
        }
    }
}
