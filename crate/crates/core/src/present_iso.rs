//! Isomorphism of quivers with relations: a bijection of vertices and
//! arrows carrying each relation ideal onto the other. Ideal membership is
//! decided by exact rational elimination over the clean-path spaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{AlgebraPresentation, Relation};

struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
    monomials: Vec<Vec<usize>>,
    equalities: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Quiver {
    fn of(pres: &AlgebraPresentation) -> Quiver {
        let arrows = pres.arrows.iter().map(|a| (a.source, a.target)).collect();
        let mut monomials = Vec::new();
        let mut equalities = Vec::new();
        for r in &pres.relations {
            match r {
                Relation::Zero(p) => monomials.push(p.clone()),
                Relation::Equal(p, q) => equalities.push((p.clone(), q.clone())),
            }
        }
        Quiver { vertex_count: pres.vertices.len(), arrows, monomials, equalities }
    }

    fn clean(&self, path: &[usize]) -> bool {
        !self
            .monomials
            .iter()
            .any(|m| path.len() >= m.len() && path.windows(m.len()).any(|w| w == m.as_slice()))
    }

    fn path_endpoints(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = *path.first()?;
        let mut at = self.arrows[first].0;
        let start = at;
        for &a in path {
            if self.arrows[a].0 != at {
                return None;
            }
            at = self.arrows[a].1;
        }
        Some((start, at))
    }
}

/// Echelon store of rational row vectors.
struct RowSpan {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    fn new(cols: usize) -> RowSpan {
        RowSpan { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    fn reduce(&self, v: &mut [BigRational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for j in 0..self.cols {
                    let delta = &c * &row[j];
                    v[j] -= delta;
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<BigRational>) {
        self.reduce(&mut v);
        if let Some(p) = (0..self.cols).find(|&j| !v[j].is_zero()) {
            let inv = v[p].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            self.rows.push(v);
            self.pivots.push(p);
        }
    }

    fn contains(&self, mut v: Vec<BigRational>) -> bool {
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }
}

/// Paths avoiding the monomials, up to the length bound, indexed for the
/// linear algebra.
struct PathSpace {
    index: BTreeMap<Vec<usize>, usize>,
    len: usize,
}

impl PathSpace {
    fn build(q: &Quiver, max_len: usize) -> PathSpace {
        let mut index = BTreeMap::new();
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for a in 0..q.arrows.len() {
            let path = vec![a];
            if q.clean(&path) {
                index.insert(path.clone(), 0);
                frontier.push(path);
            }
        }
        for _ in 1..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                let end = q.arrows[*p.last().unwrap()].1;
                for a in 0..q.arrows.len() {
                    if q.arrows[a].0 != end {
                        continue;
                    }
                    let mut ext = p.clone();
                    ext.push(a);
                    if q.clean(&ext) {
                        index.insert(ext.clone(), 0);
                        next.push(ext);
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        let len = index.len();
        for (i, v) in index.values_mut().enumerate() {
            *v = i;
        }
        PathSpace { index, len }
    }

    fn vector_of(&self, q: &Quiver, terms: &[(Vec<usize>, i64)]) -> Option<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.len];
        for (path, coeff) in terms {
            if !q.clean(path) {
                continue; // absorbed by the monomial part of the ideal
            }
            let &i = self.index.get(path)?;
            v[i] += BigRational::from(BigInt::from(*coeff));
        }
        Some(v)
    }
}

/// Span of all padded equality relations within the clean-path space.
fn ideal_span(q: &Quiver, space: &PathSpace, max_len: usize) -> RowSpan {
    let mut span = RowSpan::new(space.len);
    for (p, qq) in &q.equalities {
        let (src, dst) = match q.path_endpoints(p) {
            Some(x) => x,
            None => continue,
        };
        let longest = p.len().max(qq.len());
        // all clean u into src and v out of dst with room under the bound
        let mut prefixes: Vec<Vec<usize>> = vec![vec![]];
        for (path, _) in space.index.iter() {
            if q.arrows[*path.last().unwrap()].1 == src && path.len() + longest <= max_len {
                prefixes.push(path.clone());
            }
        }
        let mut suffixes: Vec<Vec<usize>> = vec![vec![]];
        for (path, _) in space.index.iter() {
            if q.arrows[path[0]].0 == dst && path.len() + longest <= max_len {
                suffixes.push(path.clone());
            }
        }
        for u in &prefixes {
            for v in &suffixes {
                if u.len() + longest + v.len() > max_len {
                    continue;
                }
                let mut lhs = u.clone();
                lhs.extend_from_slice(p);
                lhs.extend_from_slice(v);
                let mut rhs = u.clone();
                rhs.extend_from_slice(qq);
                rhs.extend_from_slice(v);
                if let Some(vector) =
                    space.vector_of(q, &[(lhs, 1), (rhs, -1)])
                {
                    span.insert(vector);
                }
            }
        }
    }
    span
}

/// Checks that the mapped relations of `from` land in the ideal of `to`.
fn relations_carry_over(
    from: &Quiver,
    to: &Quiver,
    amap: &[usize],
    to_space: &PathSpace,
    to_span: &RowSpan,
) -> bool {
    let map_path = |p: &[usize]| -> Vec<usize> { p.iter().map(|&a| amap[a]).collect() };
    for m in &from.monomials {
        let image = map_path(m);
        if !to.clean(&image) {
            continue;
        }
        match to_space.vector_of(to, &[(image, 1)]) {
            Some(v) => {
                if !to_span.contains(v) {
                    return false;
                }
            }
            None => return false,
        }
    }
    for (p, qq) in &from.equalities {
        let terms = [(map_path(p), 1), (map_path(qq), -1)];
        match to_space.vector_of(to, &terms) {
            Some(v) => {
                if !to_span.contains(v) {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}

fn ideal_equal_under(p1: &AlgebraPresentation, p2: &AlgebraPresentation, amap: &[usize]) -> bool {
    let q1 = Quiver::of(p1);
    let q2 = Quiver::of(p2);
    let longest = p1
        .relations
        .iter()
        .chain(&p2.relations)
        .map(|r| match r {
            Relation::Zero(p) => p.len(),
            Relation::Equal(p, q) => p.len().max(q.len()),
        })
        .max()
        .unwrap_or(1);
    let bound = longest + 2;
    let space1 = PathSpace::build(&q1, bound);
    let space2 = PathSpace::build(&q2, bound);
    let span1 = ideal_span(&q1, &space1, bound);
    let span2 = ideal_span(&q2, &space2, bound);
    let mut inverse = vec![usize::MAX; amap.len()];
    for (a, &b) in amap.iter().enumerate() {
        inverse[b] = a;
    }
    relations_carry_over(&q1, &q2, amap, &space2, &span2)
        && relations_carry_over(&q2, &q1, &inverse, &space1, &span1)
}

/// Searches for a quiver isomorphism carrying the relation ideal of one
/// presentation onto the other.
pub fn presentations_isomorphic(p1: &AlgebraPresentation, p2: &AlgebraPresentation) -> bool {
    if p1.vertices.len() != p2.vertices.len() || p1.arrows.len() != p2.arrows.len() {
        return false;
    }
    let q1 = Quiver::of(p1);
    let q2 = Quiver::of(p2);
    let degs = |q: &Quiver| -> Vec<(usize, usize)> {
        let mut d = vec![(0usize, 0usize); q.vertex_count];
        for &(s, t) in &q.arrows {
            d[s].0 += 1;
            d[t].1 += 1;
        }
        d
    };
    let d1 = degs(&q1);
    let d2 = degs(&q2);
    {
        let mut m1 = d1.clone();
        let mut m2 = d2.clone();
        m1.sort_unstable();
        m2.sort_unstable();
        if m1 != m2 {
            return false;
        }
    }
    let mut vmap = vec![usize::MAX; q1.vertex_count];
    let mut vused = vec![false; q2.vertex_count];
    let mut amap = vec![usize::MAX; q1.arrows.len()];
    let mut aused = vec![false; q2.arrows.len()];
    search(p1, p2, &q1, &q2, &d1, &d2, 0, &mut vmap, &mut vused, &mut amap, &mut aused)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p1: &AlgebraPresentation,
    p2: &AlgebraPresentation,
    q1: &Quiver,
    q2: &Quiver,
    d1: &[(usize, usize)],
    d2: &[(usize, usize)],
    next_arrow: usize,
    vmap: &mut Vec<usize>,
    vused: &mut Vec<bool>,
    amap: &mut Vec<usize>,
    aused: &mut Vec<bool>,
) -> bool {
    if next_arrow == q1.arrows.len() {
        return ideal_equal_under(p1, p2, amap);
    }
    let (s, t) = q1.arrows[next_arrow];
    for b in 0..q2.arrows.len() {
        if aused[b] {
            continue;
        }
        let (bs, bt) = q2.arrows[b];
        // endpoint compatibility, assigning vertices as needed
        let mut assigned = Vec::new();
        let mut ok = true;
        for (v, bv) in [(s, bs), (t, bt)] {
            if vmap[v] == usize::MAX {
                if vused[bv] || d1[v] != d2[bv] {
                    ok = false;
                    break;
                }
                vmap[v] = bv;
                vused[bv] = true;
                assigned.push((v, bv));
            } else if vmap[v] != bv {
                ok = false;
                break;
            }
        }
        if ok {
            amap[next_arrow] = b;
            aused[b] = true;
            if search(p1, p2, q1, q2, d1, d2, next_arrow + 1, vmap, vused, amap, aused) {
                return true;
            }
            amap[next_arrow] = usize::MAX;
            aused[b] = false;
        }
        for (v, bv) in assigned {
            vmap[v] = usize::MAX;
            vused[bv] = false;
        }
    }
    false
}
