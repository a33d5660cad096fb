#![allow(dead_code)]

use proptest::prelude::*;
use wildcard_enum::{Bitstring, Graph};

/// Graphs on `1..=max_n` vertices with independent edge coin flips.
pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, flips)| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if flips[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::with_vertices(n, &edges).unwrap()
        })
}

pub fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("connected", Graph::is_connected)
}

/// The subgraph induced by `members`, renumbered in order.
pub fn induced(g: &Graph, members: &[usize]) -> Graph {
    let mut edges = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        for (j, &v) in members.iter().enumerate().skip(i + 1) {
            if g.adjacent(u, v) {
                edges.push((i, j));
            }
        }
    }
    Graph::with_vertices(members.len(), &edges).unwrap()
}

pub fn all_bitstrings(width: usize) -> impl Iterator<Item = Bitstring> {
    (0..1u64 << width).map(move |m| Bitstring::from_mask(width, m))
}
