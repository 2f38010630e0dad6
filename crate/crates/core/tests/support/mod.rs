//! Corpus generation for the acceptance suite: exhaustive small fms-BGs up
//! to isomorphism, seeded random instances, tree and unicyclic bases, and
//! cyclic covers of representation-finite quotients.
// shared across test targets; not every target uses every helper

use std::collections::BTreeSet;

use bgk_core::build::{GraphSpec, Slot};
use bgk_core::gset::{BrauerGSet, HalfEdge, RawGSet};

/// Deterministic xorshift generator for the random corpus.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Raw labeled candidate: canonical g-action (consecutive blocks, cyclic
/// inside), an involution, and per-orbit degrees.
struct Candidate {
    orbit_sizes: Vec<usize>,
    orbit_start: Vec<usize>,
    orbit_of: Vec<usize>,
    tau: Vec<usize>,
    degrees: Vec<u32>, // per orbit
}

impl Candidate {
    fn g(&self, i: usize) -> usize {
        let o = self.orbit_of[i];
        let start = self.orbit_start[o];
        start + (i - start + 1) % self.orbit_sizes[o]
    }

    fn g_pow(&self, i: usize, k: usize) -> usize {
        let o = self.orbit_of[i];
        let start = self.orbit_start[o];
        start + (i - start + k) % self.orbit_sizes[o]
    }

    fn sigma(&self, i: usize) -> usize {
        self.g_pow(i, self.degrees[self.orbit_of[i]] as usize)
    }

    fn mf2_holds(&self) -> bool {
        (0..self.tau.len()).all(|i| self.tau[self.sigma(i)] == self.sigma(self.tau[i]))
    }

    fn connected(&self) -> bool {
        let orbits = self.orbit_sizes.len();
        let mut parent: Vec<usize> = (0..orbits).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for i in 0..self.tau.len() {
            let a = find(&mut parent, self.orbit_of[i]);
            let b = find(&mut parent, self.orbit_of[self.tau[i]]);
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..orbits).all(|o| find(&mut parent, o) == root)
    }

    fn to_gset(&self) -> BrauerGSet {
        let n = self.tau.len();
        let names: Vec<String> = (0..n).map(|i| format!("h{i:02}")).collect();
        let mut raw = RawGSet {
            half_edges: names.clone(),
            ..Default::default()
        };
        for i in 0..n {
            raw.g.insert(names[i].clone(), names[self.g(i)].clone());
            raw.u.push(names[i].clone());
            raw.tau.insert(names[i].clone(), names[self.tau[i]].clone());
            raw.degree.insert(names[i].clone(), self.degrees[self.orbit_of[i]]);
        }
        BrauerGSet::new(raw).expect("generated candidates satisfy the axioms")
    }

    /// Canonical key up to isomorphism: minimal breadth-first relabeling
    /// over all anchors.
    fn canonical_key(&self) -> Vec<u32> {
        let n = self.tau.len();
        let mut best: Option<Vec<u32>> = None;
        let mut g_inv = vec![0usize; n];
        for i in 0..n {
            g_inv[self.g(i)] = i;
        }
        for anchor in 0..n {
            let mut order = vec![usize::MAX; n];
            let mut bfs = std::collections::VecDeque::from([anchor]);
            order[anchor] = 0;
            let mut next_id = 1usize;
            let mut visit = Vec::with_capacity(n);
            visit.push(anchor);
            while let Some(x) = bfs.pop_front() {
                for y in [self.g(x), g_inv[x], self.tau[x]] {
                    if order[y] == usize::MAX {
                        order[y] = next_id;
                        next_id += 1;
                        bfs.push_back(y);
                        visit.push(y);
                    }
                }
            }
            let mut key = Vec::with_capacity(3 * n);
            for &x in &visit {
                key.push(order[self.g(x)] as u32);
                key.push(order[self.tau[x]] as u32);
                key.push(self.degrees[self.orbit_of[x]]);
            }
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
        best.expect("nonempty candidate")
    }
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            acc.push(part);
            rec(n - part, part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn involutions_without_fixed_points(n: usize) -> Vec<Vec<usize>> {
    fn rec(free: &mut Vec<usize>, tau: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if free.is_empty() {
            out.push(tau.clone());
            return;
        }
        let a = free[0];
        for idx in 1..free.len() {
            let b = free[idx];
            let mut rest: Vec<usize> = free.clone();
            rest.remove(idx);
            rest.remove(0);
            tau[a] = b;
            tau[b] = a;
            rec(&mut rest, tau, out);
        }
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        rec(&mut (0..n).collect(), &mut vec![0; n], &mut out);
    }
    out
}

/// Every connected fms-BG with at most `max_half_edges` half-edges and all
/// degrees at most `max_degree`, one per isomorphism class.
pub fn exhaustive_fms_corpus(max_half_edges: usize, max_degree: u32) -> Vec<BrauerGSet> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut out = Vec::new();
    for n in (2..=max_half_edges).step_by(2) {
        for sizes in partitions(n) {
            let mut orbit_start = Vec::new();
            let mut orbit_of = vec![0usize; n];
            let mut start = 0usize;
            for (o, &s) in sizes.iter().enumerate() {
                orbit_start.push(start);
                for i in start..start + s {
                    orbit_of[i] = o;
                }
                start += s;
            }
            for tau in involutions_without_fixed_points(n) {
                let mut candidate = Candidate {
                    orbit_sizes: sizes.clone(),
                    orbit_start: orbit_start.clone(),
                    orbit_of: orbit_of.clone(),
                    tau,
                    degrees: vec![1; sizes.len()],
                };
                if !candidate.connected() {
                    continue;
                }
                // residues determine (mf2); extend residues to degrees
                let mut residues = vec![0usize; sizes.len()];
                loop {
                    for (o, r) in residues.iter().enumerate() {
                        candidate.degrees[o] =
                            if *r == 0 { sizes[o] as u32 } else { *r as u32 };
                    }
                    if candidate.mf2_holds() {
                        // all degree tuples congruent to these residues
                        let options: Vec<Vec<u32>> = (0..sizes.len())
                            .map(|o| {
                                let step = sizes[o] as u32;
                                let first = if residues[o] == 0 { step } else { residues[o] as u32 };
                                (0..)
                                    .map(|k| first + k * step)
                                    .take_while(|&d| d <= max_degree)
                                    .collect()
                            })
                            .collect();
                        if options.iter().all(|v| !v.is_empty()) {
                            let mut pick = vec![0usize; sizes.len()];
                            loop {
                                for (o, &p) in pick.iter().enumerate() {
                                    candidate.degrees[o] = options[o][p];
                                }
                                if seen.insert(candidate.canonical_key()) {
                                    out.push(candidate.to_gset());
                                }
                                // advance the mixed-radix counter
                                let mut o = 0;
                                loop {
                                    if o == sizes.len() {
                                        break;
                                    }
                                    pick[o] += 1;
                                    if pick[o] < options[o].len() {
                                        break;
                                    }
                                    pick[o] = 0;
                                    o += 1;
                                }
                                if o == sizes.len() {
                                    break;
                                }
                            }
                        }
                    }
                    // next residue tuple
                    let mut o = 0;
                    loop {
                        if o == sizes.len() {
                            break;
                        }
                        residues[o] += 1;
                        if residues[o] < sizes[o] {
                            break;
                        }
                        residues[o] = 0;
                        o += 1;
                    }
                    if o == sizes.len() {
                        break;
                    }
                }
            }
        }
    }
    out
}

/// Seeded random connected fms-BGs, sizes above the exhaustive range.
pub fn random_fms_corpus(
    count: usize,
    seed: u64,
    min_half_edges: usize,
    max_half_edges: usize,
    max_degree: u32,
) -> Vec<BrauerGSet> {
    let mut rng = XorShift(seed);
    let mut out = Vec::new();
    'outer: while out.len() < count {
        let n = 2 * (min_half_edges / 2 + rng.below(max_half_edges / 2 - min_half_edges / 2 + 1));
        // random orbit partition
        let mut sizes = Vec::new();
        let mut left = n;
        while left > 0 {
            let s = 1 + rng.below(left);
            sizes.push(s);
            left -= s;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut orbit_start = Vec::new();
        let mut orbit_of = vec![0usize; n];
        let mut start = 0usize;
        for (o, &s) in sizes.iter().enumerate() {
            orbit_start.push(start);
            for i in start..start + s {
                orbit_of[i] = o;
            }
            start += s;
        }
        // random fixed-point-free involution
        let mut free: Vec<usize> = (0..n).collect();
        let mut tau = vec![0usize; n];
        while !free.is_empty() {
            let a = free.remove(0);
            let b = free.remove(rng.below(free.len()));
            tau[a] = b;
            tau[b] = a;
        }
        let mut candidate =
            Candidate { orbit_sizes: sizes.clone(), orbit_start, orbit_of, tau, degrees: vec![] };
        candidate.degrees = (0..sizes.len())
            .map(|o| {
                let step = sizes[o] as u32;
                let max_k = max_degree / step;
                if max_k == 0 {
                    0
                } else {
                    let r = rng.below(sizes[o]) as u32;
                    let base = if r == 0 { step } else { r };
                    let headroom = (max_degree - base) / step;
                    base + step * (rng.below(headroom as usize + 1) as u32)
                }
            })
            .collect();
        if candidate.degrees.iter().any(|&d| d == 0) {
            continue 'outer;
        }
        if candidate.connected() && candidate.mf2_holds() {
            out.push(candidate.to_gset());
        }
    }
    out
}

/// All labeled trees on `vertices` nodes (Pruefer decoding); a single
/// isolated vertex for `vertices == 1`.
pub fn labeled_trees(vertices: usize) -> Vec<Vec<(usize, usize)>> {
    if vertices == 1 {
        return vec![vec![]];
    }
    if vertices == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = vertices - 2;
    let mut out = Vec::new();
    let mut code = vec![0usize; len];
    loop {
        out.push(pruefer_decode(&code, vertices));
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            code[i] += 1;
            if code[i] < vertices {
                break;
            }
            code[i] = 0;
            i += 1;
        }
    }
}

fn pruefer_decode(code: &[usize], vertices: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; vertices];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::new();
    let mut used = vec![false; vertices];
    for &c in code {
        let leaf = (0..vertices).find(|&v| degree[v] == 1 && !used[v]).unwrap();
        edges.push((leaf.min(c), leaf.max(c)));
        used[leaf] = true;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..vertices).filter(|&v| !used[v] && degree[v] >= 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn dedupe(gsets: Vec<BrauerGSet>) -> Vec<BrauerGSet> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in gsets {
        let key = iso_key(&g);
        if seen.insert(key) {
            out.push(g);
        }
    }
    out
}

/// Isomorphism-invariant key of a connected Brauer G-set.
pub fn iso_key(gset: &BrauerGSet) -> Vec<u32> {
    let n = gset.len();
    let mut best: Option<Vec<u32>> = None;
    for anchor in gset.half_edges() {
        let mut order = vec![usize::MAX; n];
        let mut bfs = std::collections::VecDeque::from([anchor]);
        order[anchor.0] = 0;
        let mut next_id = 1usize;
        let mut visit = vec![anchor];
        while let Some(x) = bfs.pop_front() {
            let mut neighbors = vec![gset.g(x), gset.g_inv(x)];
            if let Some(t) = gset.tau(x) {
                neighbors.push(t);
            }
            for y in neighbors {
                if order[y.0] == usize::MAX {
                    order[y.0] = next_id;
                    next_id += 1;
                    bfs.push_back(y);
                    visit.push(y);
                }
            }
        }
        if visit.len() != n {
            continue; // disconnected: key by anchor component only
        }
        let mut key = Vec::with_capacity(3 * n);
        for &x in &visit {
            key.push(order[gset.g(x).0] as u32);
            key.push(gset.tau(x).map(|t| order[t.0] as u32 + 1).unwrap_or(0));
            key.push(gset.degree(x));
        }
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("nonempty set")
}

/// Trees with two double half-edges attached, trivial f-degree: the case-1
/// base shapes with at most `max_vertices` vertices, up to isomorphism.
pub fn case1_bases(max_vertices: usize) -> Vec<BrauerGSet> {
    let mut out = Vec::new();
    for v in 1..=max_vertices {
        for edges in labeled_trees(v) {
            for d1 in 0..v {
                for d2 in d1..v {
                    let spec = GraphSpec {
                        vertex_count: v,
                        edges: edges.clone(),
                        doubles: vec![d1, d2],
                        f_degree: vec![1; v],
                        order: None,
                    };
                    out.push(spec.build().expect("tree with doubles builds"));
                }
            }
        }
    }
    dedupe(out)
}

/// Trees with exactly two vertices of f-degree 2: the case-2 base shapes.
pub fn case2_bases(max_vertices: usize) -> Vec<BrauerGSet> {
    let mut out = Vec::new();
    for v in 2..=max_vertices {
        for edges in labeled_trees(v) {
            for i0 in 0..v {
                for i1 in i0 + 1..v {
                    let mut f = vec![1u32; v];
                    f[i0] = 2;
                    f[i1] = 2;
                    let spec = GraphSpec {
                        vertex_count: v,
                        edges: edges.clone(),
                        doubles: vec![],
                        f_degree: f,
                        order: None,
                    };
                    out.push(spec.build().expect("tree builds"));
                }
            }
        }
    }
    dedupe(out)
}

/// Unicyclic trivial-f-degree bases: a cycle of length `m` with pendant
/// edges placed on either side of the cycle at the first vertex, realizing
/// every split `(outside, inside)` with both parts at most `max_side`.
pub fn case3_bases(max_cycle: u64, max_side: u64) -> Vec<(BrauerGSet, (u64, u64, u64))> {
    let mut out = Vec::new();
    for m in 1..=max_cycle as usize {
        for s1 in 0..=max_side as usize {
            for s2 in 0..=max_side as usize {
                let base = build_unicyclic(m, s1, s2);
                let stats = bgk_core::classify::shape_stats(&base).expect("modified BG");
                let uni = stats.unicyclic.expect("unicyclic by construction");
                out.push((base, (uni.cycle_len, uni.outside, uni.inside)));
            }
        }
    }
    out
}

/// Cycle of length `m`; `s1` pendant edges inserted on one side of vertex 0
/// and `s2` on the other.
fn build_unicyclic(m: usize, s1: usize, s2: usize) -> BrauerGSet {
    let mut edges = Vec::new();
    if m == 1 {
        edges.push((0, 0));
    } else {
        for i in 0..m {
            edges.push((i, (i + 1) % m));
        }
    }
    let pendant_base = m;
    for p in 0..s1 + s2 {
        edges.push((0, pendant_base + p));
    }
    // cyclic order at vertex 0: incoming cycle end, side-one pendants,
    // outgoing cycle end, side-two pendants
    let mut order0 = Vec::new();
    if m == 1 {
        order0.push(Slot::EdgeEnd(0, 0));
        for p in 0..s1 {
            order0.push(Slot::EdgeEnd(m + p, 0));
        }
        order0.push(Slot::EdgeEnd(0, 1));
        for p in 0..s2 {
            order0.push(Slot::EdgeEnd(m + s1 + p, 0));
        }
    } else {
        order0.push(Slot::EdgeEnd(m - 1, 1));
        for p in 0..s1 {
            order0.push(Slot::EdgeEnd(m + p, 0));
        }
        order0.push(Slot::EdgeEnd(0, 0));
        for p in 0..s2 {
            order0.push(Slot::EdgeEnd(m + s1 + p, 0));
        }
    }
    let vertex_count = m + s1 + s2;
    let mut order = vec![order0];
    for v in 1..m {
        order.push(vec![Slot::EdgeEnd(v - 1, 1), Slot::EdgeEnd(v, 0)]);
    }
    for p in 0..s1 + s2 {
        order.push(vec![Slot::EdgeEnd(m + p, 1)]);
    }
    GraphSpec {
        vertex_count,
        edges,
        doubles: vec![],
        f_degree: vec![1; vertex_count],
        order: Some(order),
    }
    .build()
    .expect("unicyclic base builds")
}

/// Cyclic cover of a modified BG with one marked half-edge per vertex and a
/// per-vertex weight added to the sheet index at the marker.
pub fn cyclic_cover(
    base: &BrauerGSet,
    sheets: usize,
    weight: impl Fn(usize) -> usize,
    tau_shift: impl Fn(HalfEdge) -> usize,
) -> BrauerGSet {
    let markers: Vec<usize> = (0..base.vertex_count()).map(|v| base.vertices()[v][0]).collect();
    let name = |c: HalfEdge, j: usize| format!("{}@{j:02}", base.name(c));
    let mut raw = RawGSet::default();
    for c in base.half_edges() {
        for j in 0..sheets {
            let this = name(c, j);
            raw.half_edges.push(this.clone());
            let gc = base.g(c);
            let vg = base.vertex_of(gc);
            let jn = if markers[vg] == gc.0 { (j + weight(vg)) % sheets } else { j };
            raw.g.insert(this.clone(), name(gc, jn));
            raw.degree.insert(this.clone(), base.degree(c));
            raw.u.push(this.clone());
            let t = base.tau(c).expect("modified BG");
            raw.tau.insert(this, name(t, (j + tau_shift(c)) % sheets));
        }
    }
    BrauerGSet::new(raw).expect("cover construction is valid")
}

/// Representation-finite cover of a Brauer tree with one exceptional vertex
/// of f-degree `m`: sheets `r` with `gcd(m, r) = 1`, unit weights except the
/// inverse of `m` at the exceptional vertex.
pub fn cover_case_a(base: &BrauerGSet, r: usize) -> BrauerGSet {
    let exceptional = bgk_core::constructions::exceptional_vertices(base);
    let m = exceptional.first().map(|&v| *base.f_degree(v).numer() as usize).unwrap_or(1);
    let m_inv = (1..=r).find(|k| (k * m) % r == 1 % r).expect("m invertible modulo r");
    cyclic_cover(
        base,
        r,
        |v| if exceptional.contains(&v) { m_inv } else { 1 },
        |_| 0,
    )
}

/// Representation-finite cover of a trivial-f-degree tree with one double
/// half-edge: sheets `2r`, the double paired across a half turn.
pub fn cover_case_b(base: &BrauerGSet, r: usize) -> BrauerGSet {
    let doubles = base.doubles();
    assert_eq!(doubles.len(), 1);
    let double = doubles[0];
    cyclic_cover(base, 2 * r, |_| 1, |c| if c == double { r } else { 0 })
}

/// Tree-with-one-double bases for the case (b) pipeline.
pub fn one_double_bases(max_edges: usize) -> Vec<BrauerGSet> {
    let mut out = Vec::new();
    for v in 1..=max_edges + 1 {
        if v - 1 > max_edges {
            continue;
        }
        for edges in labeled_trees(v) {
            for d in 0..v {
                let spec = GraphSpec {
                    vertex_count: v,
                    edges: edges.clone(),
                    doubles: vec![d],
                    f_degree: vec![1; v],
                    order: None,
                };
                out.push(spec.build().expect("tree with a double builds"));
            }
        }
    }
    dedupe(out)
}

/// Brauer trees with at most `max_edges` edges and one vertex of f-degree
/// `m` (every vertex choice), up to isomorphism.
pub fn exceptional_trees(max_edges: usize, m: u32) -> Vec<BrauerGSet> {
    let mut out = Vec::new();
    for v in 2..=max_edges + 1 {
        for edges in labeled_trees(v) {
            let choices: Vec<usize> = if m == 1 { vec![0] } else { (0..v).collect() };
            for c in choices {
                let mut f = vec![1u32; v];
                f[c] = m;
                let spec = GraphSpec {
                    vertex_count: v,
                    edges: edges.clone(),
                    doubles: vec![],
                    f_degree: f,
                    order: None,
                };
                out.push(spec.build().expect("tree builds"));
            }
        }
    }
    dedupe(out)
}

/// Edge map from a covering's domain half-edges to arrow letters: rises map
/// to direct runs, falls to inverse runs.
pub fn band_to_string_letters(
    ctx: &bgk_core::algebra::StringContext,
    runs: &[(usize, i32)],
) -> (usize, Vec<(usize, bool)>) {
    let gset = &ctx.gset;
    let mut letters = Vec::new();
    let first = HalfEdge(runs[0].0);
    let source = ctx.polygon_of[first.0];
    for &(h, s) in runs {
        let h = HalfEdge(h);
        if s > 0 {
            for i in 0..s {
                let at = gset.g_pow(h, i as i64);
                letters.push((ctx.arrow_of[at.0].expect("positive degree"), true));
            }
        } else {
            for i in 1..=(-s) {
                let at = gset.g_pow(h, -(i as i64));
                letters.push((ctx.arrow_of[at.0].expect("positive degree"), false));
            }
        }
    }
    (source, letters)
}
