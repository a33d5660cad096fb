//! Level-wise generation of chordless paths and geodesics, chordless cycles
//! and triangles.

use std::collections::{BTreeMap, BTreeSet};

use super::Graph;

/// A path as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub vertices: Vec<usize>,
}

impl Path {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("paths are nonempty")
    }

    /// Vertices strictly between the endpoints.
    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn is_chordless(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        (0..vs.len()).all(|i| (i + 2..vs.len()).all(|j| !g.adjacent(vs[i], vs[j])))
    }
}

/// A cycle, identified by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    /// Sorted vertex set.
    pub vertices: Vec<usize>,
    /// Sorted edge indices.
    pub edges: Vec<usize>,
}

impl Cycle {
    /// Builds a cycle from vertices in cyclic order.
    pub fn from_order(g: &Graph, order: &[usize]) -> Cycle {
        let mut edges: Vec<usize> = (0..order.len())
            .map(|i| {
                g.edge_index(order[i], order[(i + 1) % order.len()])
                    .expect("consecutive cycle vertices are adjacent")
            })
            .collect();
        edges.sort_unstable();
        let mut vertices = order.to_vec();
        vertices.sort_unstable();
        Cycle { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Grows all directed paths level by level; `extend(path, w)` decides whether
/// appending `w` keeps the path in the generated class. Returns every level
/// from length 1 on, both directions included.
fn grow(g: &Graph, extend: impl Fn(&[usize], usize) -> bool) -> Vec<Vec<Vec<usize>>> {
    let mut level: Vec<Vec<usize>> = Vec::new();
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            level.push(vec![u, v]);
        }
    }
    let mut levels = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for path in &level {
            let last = *path.last().expect("paths are nonempty");
            for &w in g.neighbors(last) {
                if !path.contains(&w) && extend(path, w) {
                    let mut longer = path.clone();
                    longer.push(w);
                    next.push(longer);
                }
            }
        }
        levels.push(std::mem::replace(&mut level, next));
    }
    levels
}

fn canonical(levels: Vec<Vec<Vec<usize>>>) -> Vec<Path> {
    levels
        .into_iter()
        .flatten()
        .filter(|p| p.last() > p.first())
        .map(|vertices| Path { vertices })
        .collect()
}

/// Every chordless path with at least one edge, once, stored with its last
/// vertex above its first; ordered by length.
pub fn all_chordless_paths(g: &Graph) -> Vec<Path> {
    canonical(grow(g, |path, w| {
        path[..path.len() - 1].iter().all(|&u| !g.adjacent(u, w))
    }))
}

/// Every shortest path with at least one edge, in the same canonical form.
pub fn all_geodesics(g: &Graph) -> Vec<Path> {
    let dist = g.distance_matrix();
    canonical(grow(g, |path, w| dist[path[0]][w] == Some(path.len())))
}

/// Groups canonical paths by `(first, last)`.
pub fn paths_by_endpoints(paths: &[Path]) -> BTreeMap<(usize, usize), Vec<Path>> {
    let mut map: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for p in paths {
        map.entry((p.first(), p.last())).or_default().push(p.clone());
    }
    map
}

/// Pairs `(P, w)` of a chordless path and a vertex `w ∉ P` adjacent to both
/// ends of `P` and to nothing inside it; `P + w` is then a chordless cycle.
pub fn chordless_closings(g: &Graph) -> Vec<(Path, usize)> {
    let mut out = Vec::new();
    for path in all_chordless_paths(g) {
        let (a, b) = (path.first(), path.last());
        for &w in g.neighbors(a) {
            if g.adjacent(w, b)
                && !path.vertices.contains(&w)
                && path.interior().iter().all(|&u| !g.adjacent(u, w))
            {
                out.push((path.clone(), w));
            }
        }
    }
    out
}

/// Every chordless cycle once, sorted by length and then vertex set.
pub fn all_chordless_cycles(g: &Graph) -> Vec<Cycle> {
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for (path, w) in chordless_closings(g) {
        let mut order = path.vertices.clone();
        order.push(w);
        let cycle = Cycle::from_order(g, &order);
        if seen.insert(cycle.vertices.clone()) {
            cycles.push(cycle);
        }
    }
    cycles.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.vertices.cmp(&y.vertices)));
    cycles
}

/// Every triangle once: scanning vertices in order, adjacent pairs among the
/// later neighbors of each vertex.
pub fn all_triangles(g: &Graph) -> Vec<Cycle> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                if g.adjacent(a, b) {
                    out.push(Cycle::from_order(g, &[v, a, b]));
                }
            }
        }
    }
    out
}
