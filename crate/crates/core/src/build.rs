//! Construction of modified Brauer graphs from an ordinary multigraph with
//! chosen cyclic orders, f-degrees and double half-edges. Every output has
//! `U = E` and integral f-degree, hence Nakayama automorphism `id`.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::gset::{BrauerGSet, RawGSet};

/// One attachment slot around a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// End `side` (0 or 1) of edge `index`.
    EdgeEnd(usize, u8),
    /// Double half-edge `index`.
    Double(usize),
}

/// A multigraph with cyclic orders: the combinatorial data behind a modified
/// Brauer graph. Loops and parallel edges are allowed.
#[derive(Clone, Debug)]
pub struct GraphSpec {
    pub vertex_count: usize,
    /// Endpoints of each edge (vertex indices).
    pub edges: Vec<(usize, usize)>,
    /// Vertex carrying each double half-edge.
    pub doubles: Vec<usize>,
    /// f-degree per vertex (>= 1).
    pub f_degree: Vec<u32>,
    /// Cyclic order of slots per vertex; when absent, edge ends come first in
    /// edge order followed by doubles in index order.
    pub order: Option<Vec<Vec<Slot>>>,
}

impl GraphSpec {
    pub fn f_degree_trivial(vertex_count: usize, edges: Vec<(usize, usize)>) -> GraphSpec {
        GraphSpec {
            vertex_count,
            edges,
            doubles: Vec::new(),
            f_degree: vec![1; vertex_count],
            order: None,
        }
    }

    fn default_order(&self) -> Vec<Vec<Slot>> {
        let mut order = vec![Vec::new(); self.vertex_count];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            order[a].push(Slot::EdgeEnd(i, 0));
            order[b].push(Slot::EdgeEnd(i, 1));
        }
        for (i, &v) in self.doubles.iter().enumerate() {
            order[v].push(Slot::Double(i));
        }
        order
    }

    /// Builds the modified Brauer graph. Half-edge names are `VV.PP`
    /// (vertex index, position in the cyclic order), so lexicographic order
    /// matches positional order.
    pub fn build(&self) -> Result<BrauerGSet, Error> {
        if self.f_degree.len() != self.vertex_count {
            return Err(Error::Domain("f_degree length != vertex_count".into()));
        }
        if self.f_degree.iter().any(|&f| f == 0) {
            return Err(Error::Domain("f-degrees must be positive".into()));
        }
        let order = match &self.order {
            Some(o) => o.clone(),
            None => self.default_order(),
        };
        if order.len() != self.vertex_count {
            return Err(Error::Domain("order length != vertex_count".into()));
        }
        let mut slot_name: BTreeMap<(usize, u8), String> = BTreeMap::new();
        let mut double_name: BTreeMap<usize, String> = BTreeMap::new();
        let mut raw = RawGSet::default();
        for (v, slots) in order.iter().enumerate() {
            if slots.is_empty() {
                return Err(Error::Domain(format!("vertex {v} has no incident half-edges")));
            }
            let size = slots.len() as u32;
            for (p, slot) in slots.iter().enumerate() {
                let name = format!("{v:02}.{p:02}");
                match *slot {
                    Slot::EdgeEnd(i, side) => {
                        let (a, b) = self.edges[i];
                        let here = if side == 0 { a } else { b };
                        if here != v {
                            return Err(Error::Domain(format!(
                                "edge {i} side {side} listed at vertex {v}, expected {here}"
                            )));
                        }
                        slot_name.insert((i, side), name.clone());
                    }
                    Slot::Double(i) => {
                        if self.doubles[i] != v {
                            return Err(Error::Domain(format!(
                                "double {i} listed at vertex {v}, expected {}",
                                self.doubles[i]
                            )));
                        }
                        double_name.insert(i, name.clone());
                    }
                }
                let next = format!("{v:02}.{:02}", (p + 1) % slots.len());
                raw.half_edges.push(name.clone());
                raw.u.push(name.clone());
                raw.g.insert(name.clone(), next);
                raw.degree.insert(name, self.f_degree[v] * size);
            }
        }
        for i in 0..self.edges.len() {
            let a = slot_name
                .get(&(i, 0))
                .ok_or_else(|| Error::Domain(format!("edge {i} end 0 missing from order")))?;
            let b = slot_name
                .get(&(i, 1))
                .ok_or_else(|| Error::Domain(format!("edge {i} end 1 missing from order")))?;
            raw.tau.insert(a.clone(), b.clone());
            raw.tau.insert(b.clone(), a.clone());
        }
        for i in 0..self.doubles.len() {
            let d = double_name
                .get(&i)
                .ok_or_else(|| Error::Domain(format!("double {i} missing from order")))?;
            raw.tau.insert(d.clone(), d.clone());
        }
        BrauerGSet::new(raw)
    }
}
