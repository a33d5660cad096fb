//! Clique packings and connected-set packings as closed edge sets.
//!
//! A partition whose blocks induce cliques (a Cli-Pac) or connected
//! subgraphs (a Conn-Pac) is recorded by its internal edges `E(Π)`. Both
//! families are enumerated as rows over the edge indices of the graph; the
//! components of `(V, Y)` recover the partition from a member `Y`.

mod partition;

use thiserror::Error;

use crate::graph::{all_chordless_cycles, all_triangles, Graph, Restriction};
use crate::horn::engine::Constraint;
use crate::horn::{run_engine, Implication};
use crate::rows::RowFamily;

pub use partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingError {
    #[error("block {0:?} does not induce a connected subgraph")]
    DisconnectedBlock(Vec<usize>),
    #[error("the graph is not connected")]
    DisconnectedGraph,
    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("partition text: {0}")]
    Parse(String),
    #[error("{0} vertices are too many for bipartition enumeration (limit {1})")]
    TooLarge(usize, usize),
    #[error("no finest connected packing coarser than the given partition exists")]
    NoFinestCoarser,
}

/// Constraints describing the closed edge sets of clique packings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliPacConstraints {
    /// Edge triples of triangles: at least two of them in `Y` forces all three.
    pub type1: Vec<[usize; 3]>,
    /// Adjacent edge pairs whose outer ends are nonadjacent: never both in `Y`.
    pub type2: Vec<[usize; 2]>,
}

pub fn clipac_constraints(g: &Graph) -> CliPacConstraints {
    let type1 = all_triangles(g)
        .into_iter()
        .map(|t| [t.edges[0], t.edges[1], t.edges[2]])
        .collect();
    let mut type2 = Vec::new();
    for b in 0..g.vertex_count() {
        let around = g.neighbors(b);
        for (i, &a) in around.iter().enumerate() {
            for &c in &around[i + 1..] {
                if !g.adjacent(a, c) {
                    let x = g.edge_index(a, b).expect("edge present");
                    let y = g.edge_index(b, c).expect("edge present");
                    type2.push([x.min(y), x.max(y)]);
                }
            }
        }
    }
    type2.sort_unstable();
    CliPacConstraints { type1, type2 }
}

/// Closed edge sets of clique packings, over edge indices.
pub fn enumerate_clipacs(g: &Graph) -> RowFamily {
    let cons = clipac_constraints(g);
    let mut keyed: Vec<(Vec<usize>, Constraint)> = Vec::new();
    for pair in &cons.type2 {
        keyed.push((pair.to_vec(), Constraint::Noncover(pair.to_vec())));
    }
    for &[a, b, c] in &cons.type1 {
        for (premise, conclusion) in [([a, b], c), ([a, c], b), ([b, c], a)] {
            keyed.push((
                vec![a, b, c],
                Constraint::Implication {
                    premise: premise.to_vec(),
                    conclusion: vec![conclusion],
                },
            ));
        }
    }
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    let constraints: Vec<Constraint> = keyed.into_iter().map(|(_, c)| c).collect();
    run_engine(g.edge_count(), &constraints)
}

/// `(C ∖ {e}) → {e}` for every chordless cycle `C` and edge `e ∈ C`.
pub fn connpac_implications(g: &Graph) -> Vec<Implication> {
    let mut out = Vec::new();
    for cycle in all_chordless_cycles(g) {
        for &e in &cycle.edges {
            let premise = cycle.edges.iter().copied().filter(|&f| f != e).collect();
            out.push(Implication::new(premise, vec![e]));
        }
    }
    out
}

/// Closed edge sets of connected-set packings (the flats of the graphic
/// matroid), over edge indices.
pub fn enumerate_connpacs(g: &Graph) -> RowFamily {
    let constraints: Vec<Constraint> = connpac_implications(g)
        .into_iter()
        .map(|imp| Constraint::Implication {
            premise: imp.premise,
            conclusion: imp.conclusion,
        })
        .collect();
    run_engine(g.edge_count(), &constraints)
}

/// `E(Π)`: edges inside blocks. Every block must induce a connected subgraph.
pub fn edge_set_of_partition(g: &Graph, p: &Partition) -> Result<Vec<usize>, PackingError> {
    if p.vertex_count() != g.vertex_count() {
        return Err(PackingError::NotAPartition(format!(
            "{} vertices partitioned, graph has {}",
            p.vertex_count(),
            g.vertex_count()
        )));
    }
    for block in p.blocks() {
        if g.connected_components(&Restriction::Vertices(block.clone())).len() > 1 {
            return Err(PackingError::DisconnectedBlock(block.clone()));
        }
    }
    Ok(internal_edges(g, p))
}

fn internal_edges(g: &Graph, p: &Partition) -> Vec<usize> {
    let of = p.block_of();
    (0..g.edge_count())
        .filter(|&e| {
            let (u, v) = g.edge(e);
            of[u] == of[v]
        })
        .collect()
}

/// Components of `(V, K)`.
pub fn partition_of_edge_set(g: &Graph, edges: &[usize]) -> Partition {
    g.connected_components(&Restriction::Edges(edges.to_vec()))
}

/// Smallest closed edge set containing `edges`.
pub fn edge_closure(g: &Graph, edges: &[usize]) -> Vec<usize> {
    internal_edges(g, &partition_of_edge_set(g, edges))
}

/// The coarsest connected packing finer than both inputs.
pub fn meet_connpacs(g: &Graph, a: &Partition, b: &Partition) -> Result<Partition, PackingError> {
    let ea = edge_set_of_partition(g, a)?;
    let eb = edge_set_of_partition(g, b)?;
    let common: Vec<usize> = ea.into_iter().filter(|e| eb.binary_search(e).is_ok()).collect();
    Ok(partition_of_edge_set(g, &common))
}

const BIPARTITION_LIMIT: usize = 24;

/// Vertex hyperplanes: bipartitions of `V` into two connected sides.
pub fn vertex_hyperplanes(g: &Graph) -> Result<Vec<Partition>, PackingError> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(PackingError::DisconnectedGraph);
    }
    if n > BIPARTITION_LIMIT {
        return Err(PackingError::TooLarge(n, BIPARTITION_LIMIT));
    }
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    // Vertex 0 always sits on the first side.
    for mask in 1u64..(1u64 << (n - 1)) {
        let second: Vec<usize> = (1..n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        let first: Vec<usize> = (0..n).filter(|v| !second.contains(v)).collect();
        let connected = |side: &Vec<usize>| {
            g.connected_components(&Restriction::Vertices(side.clone())).len() == 1
        };
        if connected(&first) && connected(&second) {
            out.push(Partition::from_blocks(vec![first, second]));
        }
    }
    Ok(out)
}

/// Minimal cutsets: the edges crossing each vertex hyperplane.
pub fn minimal_cutsets(g: &Graph) -> Result<Vec<Vec<usize>>, PackingError> {
    Ok(vertex_hyperplanes(g)?
        .iter()
        .map(|h| {
            let of = h.block_of();
            (0..g.edge_count())
                .filter(|&e| {
                    let (u, v) = g.edge(e);
                    of[u] != of[v]
                })
                .collect()
        })
        .collect())
}

/// Edge hyperplanes: complements of the minimal cutsets.
pub fn edge_hyperplanes(g: &Graph) -> Result<Vec<Vec<usize>>, PackingError> {
    Ok(vertex_hyperplanes(g)?
        .iter()
        .map(|h| internal_edges(g, h))
        .collect())
}

/// The finest connected packing coarser than `pi0`, as the meet of all
/// vertex hyperplanes coarser than `pi0` (`{V}` when there are none).
///
/// Such a finest packing need not exist: on the 4-cycle `1-2-3-4`, both
/// `{1,2,3}|{4}` and `{1,3,4}|{2}` are minimal above `{1,3}|{2}|{4}`. The
/// meet then fails to be coarser than `pi0` and
/// [`PackingError::NoFinestCoarser`] is returned.
pub fn nearest_coarser_connpac(g: &Graph, pi0: &Partition) -> Result<Partition, PackingError> {
    if pi0.vertex_count() != g.vertex_count() {
        return Err(PackingError::NotAPartition(format!(
            "{} vertices partitioned, graph has {}",
            pi0.vertex_count(),
            g.vertex_count()
        )));
    }
    let mut flat: Vec<usize> = (0..g.edge_count()).collect();
    for h in vertex_hyperplanes(g)? {
        if pi0.is_finer_than(&h) {
            let he = internal_edges(g, &h);
            flat.retain(|e| he.binary_search(e).is_ok());
        }
    }
    let meet = partition_of_edge_set(g, &flat);
    if pi0.is_finer_than(&meet) {
        Ok(meet)
    } else {
        Err(PackingError::NoFinestCoarser)
    }
}
