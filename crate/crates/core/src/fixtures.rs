//! Small named Brauer G-sets used throughout the tests and shipped with the
//! command-line tool.

use crate::build::GraphSpec;
use crate::gset::BrauerGSet;

/// One vertex `{e, e'}`, `tau = id` on both, degree 2: a modified Brauer
/// graph with two double half-edges.
pub fn ex1() -> BrauerGSet {
    BrauerGSet::from_parts(
        &["e", "e'"],
        &[("e", "e'"), ("e'", "e")],
        &["e", "e'"],
        &[("e", "e"), ("e'", "e'")],
        &[("e", 2), ("e'", 2)],
    )
    .unwrap()
}

/// One vertex of size 4 with `U = {e, e', e1}`: one edge `{e, e'}`, one
/// double `e1`, and the half-edge `e2` outside `U`; degree 4 throughout.
pub fn ex2() -> BrauerGSet {
    BrauerGSet::from_parts(
        &["e", "e'", "e1", "e2"],
        &[("e", "e1"), ("e1", "e'"), ("e'", "e2"), ("e2", "e")],
        &["e", "e'", "e1"],
        &[("e", "e'"), ("e'", "e"), ("e1", "e1")],
        &[("e", 4), ("e'", 4), ("e1", 4), ("e2", 4)],
    )
    .unwrap()
}

/// The fms-BG of the weakly symmetric example: one vertex of size 4, two
/// interleaved loops, f-degree 1/2. Its quotient by the Nakayama
/// automorphism is [`ex1`].
pub fn weakly_symmetric() -> BrauerGSet {
    BrauerGSet::from_parts(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        &["a", "b", "c", "d"],
        &[("a", "c"), ("c", "a"), ("b", "d"), ("d", "b")],
        &[("a", 2), ("b", 2), ("c", 2), ("d", 2)],
    )
    .unwrap()
}

/// Two vertices joined by a double edge (cycle of length 2), trivial
/// f-degree: the reduced form of [`weakly_symmetric`].
pub fn two_cycle() -> BrauerGSet {
    GraphSpec::f_degree_trivial(2, vec![(0, 1), (0, 1)]).build().unwrap()
}

/// A single loop at one vertex, trivial f-degree (odd cycle of length 1).
pub fn loop_bg() -> BrauerGSet {
    GraphSpec::f_degree_trivial(1, vec![(0, 0)]).build().unwrap()
}

/// Brauer tree with one edge and degrees `(m, 1)`.
pub fn one_edge_tree(m: u32) -> BrauerGSet {
    GraphSpec {
        vertex_count: 2,
        edges: vec![(0, 1)],
        doubles: vec![],
        f_degree: vec![m, 1],
        order: None,
    }
    .build()
    .unwrap()
}

/// Star Brauer tree with `k` edges and trivial f-degree.
pub fn star_tree(k: usize) -> BrauerGSet {
    let edges = (0..k).map(|i| (0, i + 1)).collect();
    GraphSpec::f_degree_trivial(k + 1, edges).build().unwrap()
}

/// The modified BG with one vertex of f-degree `m` carrying one edge and
/// `n` double half-edges.
pub fn one_vertex_with_doubles(m: u32, n: usize) -> BrauerGSet {
    GraphSpec {
        vertex_count: 1,
        edges: vec![(0, 0)],
        doubles: vec![0; n],
        f_degree: vec![m],
        order: None,
    }
    .build()
    .unwrap()
}

/// A Nakayama fms-BG: an `n`-cycle of edges where every half-edge has
/// degree 1 (Loewy length 2 algebra).
pub fn nakayama_degree_one(n: usize) -> BrauerGSet {
    let mut half_edges = Vec::new();
    let mut g = Vec::new();
    let mut tau = Vec::new();
    let mut degree = Vec::new();
    let names: Vec<(String, String)> =
        (0..n).map(|i| (format!("p{i}"), format!("q{i}"))).collect();
    for i in 0..n {
        let (p, q) = &names[i];
        let (pn, qn) = &names[(i + 1) % n];
        half_edges.push(p.clone());
        half_edges.push(q.clone());
        g.push((p.clone(), pn.clone()));
        g.push((q.clone(), qn.clone()));
        tau.push((p.clone(), q.clone()));
        tau.push((q.clone(), p.clone()));
        degree.push((p.clone(), 1));
        degree.push((q.clone(), 1));
    }
    let hs: Vec<&str> = half_edges.iter().map(|s| s.as_str()).collect();
    let gp: Vec<(&str, &str)> = g.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let tp: Vec<(&str, &str)> = tau.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let dp: Vec<(&str, u32)> = degree.iter().map(|(a, d)| (a.as_str(), *d)).collect();
    BrauerGSet::from_parts(&hs, &gp, &hs, &tp, &dp).unwrap()
}

/// Every named fixture, for property-style sweeps.
pub fn all() -> Vec<BrauerGSet> {
    vec![
        ex1(),
        ex2(),
        weakly_symmetric(),
        two_cycle(),
        loop_bg(),
        one_edge_tree(1),
        one_edge_tree(3),
        star_tree(3),
        one_vertex_with_doubles(2, 2),
        nakayama_degree_one(2),
    ]
}
