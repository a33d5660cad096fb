//! Brute-force reference filters.
//!
//! Everything here walks the full powerset (or all set partitions) and
//! decides membership straight from the definitions. Nothing in this module
//! calls the engines or the path and cycle generators of [`crate::graph`];
//! only adjacency and labels are read from the graph.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::families::FamilyKind;
use crate::graph::Graph;
use crate::packings::Partition;
use crate::rows::{Bitstring, RowError, RowFamily};

pub const MAX_BRUTE_WIDTH: usize = 24;
pub const MAX_SUBSET_VERTICES: usize = 20;
pub const MAX_PARTITION_VERTICES: usize = 10;
pub const MAX_PATHS: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large for the oracle: {what} is {size}, limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error(transparent)]
    Row(#[from] RowError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PackingKind {
    CliPac,
    ConnPac,
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        return Err(OracleError::TooLarge { what, size, limit });
    }
    Ok(())
}

/// All bitstrings of the given width satisfying `pred`, sorted.
pub fn brute_models(
    width: usize,
    mut pred: impl FnMut(&[bool]) -> bool,
) -> Result<Vec<Bitstring>, OracleError> {
    guard("width", width, MAX_BRUTE_WIDTH)?;
    let mut out: Vec<Bitstring> = (0..1u64 << width)
        .map(|m| Bitstring::from_mask(width, m))
        .filter(|x| pred(&x.0))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Outcome of comparing an expanded family with a reference list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    pub family_size: usize,
    pub reference_size: usize,
    /// Smallest member of the family absent from the reference.
    pub extra: Option<Bitstring>,
    /// Smallest member of the reference absent from the family.
    pub missing: Option<Bitstring>,
    /// Some bitstring lies in two rows of the family.
    pub overlapping: bool,
}

impl Comparison {
    pub fn witness(&self) -> Option<&Bitstring> {
        self.extra.as_ref().or(self.missing.as_ref())
    }
}

pub fn compare_family(
    fam: &RowFamily,
    reference: &[Bitstring],
    cap: usize,
) -> Result<Comparison, RowError> {
    let mut raw = Vec::new();
    for row in fam.rows() {
        raw.extend(row.expand(cap)?);
    }
    let raw_len = raw.len();
    raw.sort_unstable();
    raw.dedup();
    let overlapping = raw.len() != raw_len;
    let mut reference = reference.to_vec();
    reference.sort_unstable();
    reference.dedup();
    let extra = raw.iter().find(|x| reference.binary_search(x).is_err()).cloned();
    let missing = reference.iter().find(|x| raw.binary_search(x).is_err()).cloned();
    Ok(Comparison {
        equal: extra.is_none() && missing.is_none(),
        family_size: raw.len(),
        reference_size: reference.len(),
        extra,
        missing,
        overlapping,
    })
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| {
            (0..g.vertex_count())
                .filter(|&u| g.adjacent(u, v))
                .fold(0u32, |m, u| m | 1 << u)
        })
        .collect()
}

fn members(x: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| x >> i & 1 == 1)
}

/// Vertices of `within` reachable from `s` inside `within`.
fn reach(adj: &[u32], within: u32, s: usize) -> u32 {
    let mut seen = 1u32 << s;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in members(frontier) {
            next |= adj[v] & within;
        }
        frontier = next & !seen;
        seen |= frontier;
    }
    seen
}

fn is_connected(adj: &[u32], x: u32) -> bool {
    x == 0 || reach(adj, x, x.trailing_zeros() as usize) == x
}

fn induced_edges(adj: &[u32], x: u32) -> u32 {
    members(x).map(|v| (adj[v] & x).count_ones()).sum::<u32>() / 2
}

fn component_count(adj: &[u32], x: u32) -> u32 {
    let mut left = x;
    let mut count = 0;
    while left != 0 {
        left &= !reach(adj, x, left.trailing_zeros() as usize);
        count += 1;
    }
    count
}

fn is_forest(adj: &[u32], x: u32) -> bool {
    induced_edges(adj, x) + component_count(adj, x) == x.count_ones()
}

fn is_bipartite(adj: &[u32], x: u32) -> bool {
    let mut color: [Option<bool>; 32] = [None; 32];
    for s in members(x) {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let c = color[v].unwrap();
            for u in members(adj[v] & x) {
                match color[u] {
                    None => {
                        color[u] = Some(!c);
                        stack.push(u);
                    }
                    Some(cu) if cu == c => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

fn is_triangle_free(adj: &[u32], x: u32) -> bool {
    members(x).all(|v| members(adj[v] & x).all(|u| adj[u] & adj[v] & x == 0))
}

fn max_degree(adj: &[u32], x: u32) -> u32 {
    members(x).map(|v| (adj[v] & x).count_ones()).max().unwrap_or(0)
}

fn is_clique(adj: &[u32], x: u32) -> bool {
    members(x).all(|v| adj[v] & x == x & !(1 << v))
}

/// Every simple cycle of length at least 3, each listed once as a vertex
/// sequence starting at its least vertex with the second vertex smaller than
/// the last.
pub fn all_cycles(g: &Graph) -> Result<Vec<Vec<usize>>, OracleError> {
    guard("vertex count", g.vertex_count(), MAX_SUBSET_VERTICES)?;
    let adj = neighbor_masks(g);
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        let mut path = vec![s];
        extend_cycles(&adj, s, 1 << s, &mut path, &mut out)?;
    }
    Ok(out)
}

fn extend_cycles(
    adj: &[u32],
    s: usize,
    used: u32,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), OracleError> {
    let v = *path.last().unwrap();
    if path.len() >= 3 && adj[v] >> s & 1 == 1 && path[1] < v {
        out.push(path.clone());
        guard("cycle count", out.len(), MAX_PATHS)?;
    }
    for u in members(adj[v] & !used) {
        if u > s {
            path.push(u);
            extend_cycles(adj, s, used | 1 << u, path, out)?;
            path.pop();
        }
    }
    Ok(())
}

fn cycle_is_chordless(adj: &[u32], cycle: &[usize]) -> bool {
    let mask = cycle.iter().fold(0u32, |m, &v| m | 1 << v);
    induced_edges(adj, mask) as usize == cycle.len()
}

/// Simple paths between `s < t`, as (vertex mask, edge count, chordless).
type PathTable = BTreeMap<(usize, usize), Vec<(u32, usize, bool)>>;

fn path_table(adj: &[u32], n: usize) -> Result<PathTable, OracleError> {
    let mut table = PathTable::new();
    let mut total = 0;
    for s in 0..n {
        let mut stack = vec![(s, 1u32 << s, 0usize)];
        while let Some((v, used, len)) = stack.pop() {
            if v > s {
                let chordless = induced_edges(adj, used) as usize == len;
                table.entry((s, v)).or_default().push((used, len, chordless));
                total += 1;
                guard("path count", total, MAX_PATHS)?;
            }
            for u in members(adj[v] & !used) {
                stack.push((u, used | 1 << u, len + 1));
            }
        }
    }
    Ok(table)
}

fn pairwise(x: u32, mut ok: impl FnMut(usize, usize) -> bool) -> bool {
    members(x).all(|s| members(x).filter(|&t| t > s).all(|t| ok(s, t)))
}

/// All vertex subsets `X` for which `G[X]` belongs to `kind`, sorted.
pub fn oracle_subsets(g: &Graph, kind: FamilyKind) -> Result<Vec<Bitstring>, OracleError> {
    let n = g.vertex_count();
    guard("vertex count", n, MAX_SUBSET_VERTICES)?;
    let adj = neighbor_masks(g);
    let table = match kind {
        FamilyKind::Metric | FamilyKind::GeConvex | FamilyKind::MoConvex => path_table(&adj, n)?,
        _ => PathTable::new(),
    };
    let long_chordless: Vec<u32> = if kind == FamilyKind::Chordal {
        all_cycles(g)?
            .into_iter()
            .filter(|c| c.len() >= 4 && cycle_is_chordless(&adj, c))
            .map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v))
            .collect()
    } else {
        Vec::new()
    };
    let geodesic_len = |s: usize, t: usize| {
        table
            .get(&(s, t))
            .and_then(|ps| ps.iter().map(|&(_, len, _)| len).min())
    };
    let admits = |x: u32| -> bool {
        match kind {
            FamilyKind::Connected => is_connected(&adj, x),
            FamilyKind::Metric => pairwise(x, |s, t| {
                let Some(d) = geodesic_len(s, t) else { return false };
                table[&(s, t)].iter().any(|&(m, len, _)| len == d && m & !x == 0)
            }),
            FamilyKind::GeConvex => pairwise(x, |s, t| {
                let Some(d) = geodesic_len(s, t) else { return false };
                table[&(s, t)].iter().all(|&(m, len, _)| len != d || m & !x == 0)
            }),
            FamilyKind::MoConvex => pairwise(x, |s, t| {
                table.contains_key(&(s, t))
                    && table[&(s, t)].iter().all(|&(m, _, chordless)| !chordless || m & !x == 0)
            }),
            FamilyKind::CycleFree => is_forest(&adj, x),
            FamilyKind::Chordal => long_chordless.iter().all(|&c| c & !x != 0),
            FamilyKind::Bipartite => is_bipartite(&adj, x),
            FamilyKind::TriangleFree => is_triangle_free(&adj, x),
            FamilyKind::ChordlessSets => max_degree(&adj, x) <= 2,
            FamilyKind::IsolatingMatchings => max_degree(&adj, x) <= 1,
            FamilyKind::Anticliques => max_degree(&adj, x) == 0,
            FamilyKind::Cliques => is_clique(&adj, x),
        }
    };
    let mut out: Vec<Bitstring> = (0..1u32 << n)
        .filter(|&x| admits(x))
        .map(|x| Bitstring::from_mask(n, x as u64))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Set partitions of the vertex set whose blocks are all cliques
/// ([`PackingKind::CliPac`]) or all induce connected subgraphs
/// ([`PackingKind::ConnPac`]).
pub fn oracle_partitions(g: &Graph, kind: PackingKind) -> Result<Vec<Partition>, OracleError> {
    let n = g.vertex_count();
    guard("vertex count", n, MAX_PARTITION_VERTICES)?;
    let adj = neighbor_masks(g);
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::from_blocks(Vec::new()));
        return Ok(out);
    }
    // Restricted growth strings: a[0] = 0, a[i] ≤ 1 + max(a[..i]).
    let mut a = vec![0usize; n];
    loop {
        let blocks = a.iter().copied().max().unwrap() + 1;
        let masks: Vec<u32> = (0..blocks)
            .map(|b| (0..n).filter(|&v| a[v] == b).fold(0u32, |m, v| m | 1 << v))
            .collect();
        let ok = masks.iter().all(|&m| match kind {
            PackingKind::CliPac => is_clique(&adj, m),
            PackingKind::ConnPac => is_connected(&adj, m),
        });
        if ok {
            out.push(Partition::from_blocks(
                masks.iter().map(|&m| members(m).collect()).collect(),
            ));
        }
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out);
            }
            let prefix_max = a[..i].iter().copied().max().unwrap();
            if a[i] <= prefix_max {
                a[i] += 1;
                a[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
            i -= 1;
        }
    }
}
