//! Simple undirected graphs with ordered vertex labels and indexed edges.
//!
//! Vertices are numbered `0..n` in canonical label order: numeric order when
//! every label is an unsigned integer, lexicographic order otherwise. Edges
//! `(u, v)` with `u < v` are indexed in lexicographic order of that pair.

mod paths;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::packings::Partition;

pub use paths::{
    all_chordless_cycles, all_chordless_paths, all_geodesics, all_triangles, chordless_closings,
    paths_by_endpoints, Cycle, Path,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("vertex index {index} out of range for {count} vertices")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<bool>>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_ids: HashMap<(usize, usize), usize>,
}

/// Which part of a graph [`Graph::connected_components`] looks at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restriction {
    All,
    /// The induced subgraph on these vertices; blocks cover only them.
    Vertices(Vec<usize>),
    /// The spanning subgraph with these edge indices.
    Edges(Vec<usize>),
}

fn label_order(a: &str, b: &str, numeric: bool) -> Ordering {
    if numeric {
        let x: u64 = a.parse().expect("numeric label");
        let y: u64 = b.parse().expect("numeric label");
        x.cmp(&y)
    } else {
        a.cmp(b)
    }
}

impl Graph {
    /// Builds a graph from labels and labeled edges; labels are reordered
    /// canonically.
    pub fn from_labeled(
        vertices: impl IntoIterator<Item = String>,
        edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for label in vertices {
            if !seen.insert(label.clone()) {
                return Err(GraphError::DuplicateVertex(label));
            }
            labels.push(label);
        }
        let numeric = labels.iter().all(|l| l.parse::<u64>().is_ok());
        labels.sort_by(|a, b| label_order(a, b, numeric));
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let u = *index.get(a.as_str()).ok_or_else(|| GraphError::UnknownLabel(a.clone()))?;
            let v = *index.get(b.as_str()).ok_or_else(|| GraphError::UnknownLabel(b.clone()))?;
            pairs.push((u, v));
        }
        Graph::build(labels, &pairs)
    }

    /// Vertices `0..n` labeled `1..=n`.
    pub fn with_vertices(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for &(u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(GraphError::VertexOutOfRange { index, count: n });
                }
            }
        }
        Graph::build((1..=n).map(|i| i.to_string()).collect(), edges)
    }

    fn build(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut adjacency = vec![vec![false; n]; n];
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop(labels[u].clone()));
            }
            if adjacency[u][v] {
                return Err(GraphError::DuplicateEdge(labels[u].clone(), labels[v].clone()));
            }
            adjacency[u][v] = true;
            adjacency[v][u] = true;
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        let neighbors = (0..n)
            .map(|u| (0..n).filter(|&v| adjacency[u][v]).collect())
            .collect();
        let edge_ids = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(Graph {
            labels,
            adjacency,
            neighbors,
            edges,
            edge_ids,
        })
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::with_vertices(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::with_vertices(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::with_vertices(n, &edges).expect("complete edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u][v]
    }

    /// Neighbors in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edge_label(&self, e: usize) -> String {
        let (u, v) = self.edges[e];
        format!("{}-{}", self.labels[u], self.labels[v])
    }

    /// Same labels, adjacency inverted.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.adjacency[u][v])
            .collect();
        Graph::build(self.labels.clone(), &pairs).expect("complement edges are valid")
    }

    /// Hop distances; `None` for pairs in different components.
    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.vertex_count()).map(|s| self.distances_from(s)).collect()
    }

    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn connected_components(&self, restriction: &Restriction) -> Partition {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        let union = |parent: &mut Vec<usize>, (u, v): (usize, usize)| {
            let (a, b) = (find(parent, u), find(parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        };
        let members: Vec<usize> = match restriction {
            Restriction::All => {
                for &e in &self.edges {
                    union(&mut parent, e);
                }
                (0..n).collect()
            }
            Restriction::Vertices(vs) => {
                let inside: BTreeSet<usize> = vs.iter().copied().collect();
                for &(u, v) in &self.edges {
                    if inside.contains(&u) && inside.contains(&v) {
                        union(&mut parent, (u, v));
                    }
                }
                inside.into_iter().collect()
            }
            Restriction::Edges(es) => {
                for &e in es {
                    union(&mut parent, self.edges[e]);
                }
                (0..n).collect()
            }
        };
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in members {
            let root = find(&mut parent, v);
            blocks.entry(root).or_default().push(v);
        }
        Partition::from_blocks(blocks.into_values().collect())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components(&Restriction::All).len() <= 1
    }

    /// Component index of every vertex.
    pub fn component_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.vertex_count()];
        for (i, block) in self.connected_components(&Restriction::All).blocks().iter().enumerate() {
            for &v in block {
                of[v] = i;
            }
        }
        of
    }
}

/// Graph text: one edge `u v` per line, a lone label declares a vertex, `#`
/// starts a comment.
impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut vertices: Vec<String> = Vec::new();
        let mut known = BTreeSet::new();
        let mut edges = Vec::new();
        let mut seen_edges: BTreeMap<(String, String), usize> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |message: String| GraphError::Parse {
                line: line_no,
                message,
            };
            match fields.as_slice() {
                [v] => {
                    if known.insert(v.to_string()) {
                        vertices.push(v.to_string());
                    }
                }
                [u, v] => {
                    if u == v {
                        return Err(parse_err(format!("self-loop at `{u}`")));
                    }
                    let key = if u < v {
                        (u.to_string(), v.to_string())
                    } else {
                        (v.to_string(), u.to_string())
                    };
                    if let Some(first) = seen_edges.insert(key, line_no) {
                        return Err(parse_err(format!(
                            "edge {{{u}, {v}}} already given on line {first}"
                        )));
                    }
                    for w in [u, v] {
                        if known.insert(w.to_string()) {
                            vertices.push(w.to_string());
                        }
                    }
                    edges.push((u.to_string(), v.to_string()));
                }
                _ => {
                    return Err(parse_err(format!(
                        "expected `u v` or a single vertex, found {} fields",
                        fields.len()
                    )))
                }
            }
        }
        Graph::from_labeled(vertices, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.vertex_count() {
            if self.degree(v) == 0 {
                writeln!(f, "{}", self.labels[v])?;
            }
        }
        for &(u, v) in &self.edges {
            writeln!(f, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }
}
