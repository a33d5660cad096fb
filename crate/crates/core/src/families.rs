//! Enumerators for vertex sets inducing subgraphs of a given class.
//!
//! Every enumerator returns a disjoint [`RowFamily`] over the vertex
//! positions `0..n`; the empty set belongs to every family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{all_chordless_cycles, all_chordless_paths, all_geodesics, paths_by_endpoints, Graph, Path};
use crate::horn::engine::Constraint;
use crate::horn::{enumerate_capped, enumerate_with_existential, run_engine, Cap, ExistentialClause, HornCnf};
use crate::rows::RowFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    Connected,
    Metric,
    GeConvex,
    MoConvex,
    CycleFree,
    Chordal,
    Bipartite,
    TriangleFree,
    ChordlessSets,
    Anticliques,
    Cliques,
    IsolatingMatchings,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 12] = [
        FamilyKind::Connected,
        FamilyKind::Metric,
        FamilyKind::GeConvex,
        FamilyKind::MoConvex,
        FamilyKind::CycleFree,
        FamilyKind::Chordal,
        FamilyKind::Bipartite,
        FamilyKind::TriangleFree,
        FamilyKind::ChordlessSets,
        FamilyKind::Anticliques,
        FamilyKind::Cliques,
        FamilyKind::IsolatingMatchings,
    ];

    pub fn token(self) -> &'static str {
        match self {
            FamilyKind::Connected => "connected",
            FamilyKind::Metric => "metric",
            FamilyKind::GeConvex => "geconvex",
            FamilyKind::MoConvex => "moconvex",
            FamilyKind::CycleFree => "forest",
            FamilyKind::Chordal => "chordal",
            FamilyKind::Bipartite => "bipartite",
            FamilyKind::TriangleFree => "trianglefree",
            FamilyKind::ChordlessSets => "chordless",
            FamilyKind::Anticliques => "anticliques",
            FamilyKind::Cliques => "cliques",
            FamilyKind::IsolatingMatchings => "isomatchings",
        }
    }

    /// Whether the family is closed under taking subsets.
    pub fn is_set_ideal(self) -> bool {
        matches!(
            self,
            FamilyKind::CycleFree
                | FamilyKind::Chordal
                | FamilyKind::Bipartite
                | FamilyKind::TriangleFree
                | FamilyKind::ChordlessSets
                | FamilyKind::Anticliques
                | FamilyKind::Cliques
                | FamilyKind::IsolatingMatchings
        )
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Which chordless cycles a vertex set must avoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    /// All of them: forests.
    Any,
    /// Length at least 4: chordal graphs.
    Long,
    /// Odd length: bipartite graphs.
    Odd,
    /// Length 3: triangle-free graphs.
    Triangle,
}

impl CycleClass {
    fn admits(self, len: usize) -> bool {
        match self {
            CycleClass::Any => true,
            CycleClass::Long => len >= 4,
            CycleClass::Odd => len % 2 == 1,
            CycleClass::Triangle => len == 3,
        }
    }
}

pub fn enumerate(g: &Graph, kind: FamilyKind) -> RowFamily {
    match kind {
        FamilyKind::Connected => enumerate_connected(g),
        FamilyKind::Metric => enumerate_metric(g),
        FamilyKind::GeConvex => enumerate_geconvex(g),
        FamilyKind::MoConvex => enumerate_moconvex(g),
        FamilyKind::CycleFree => enumerate_cycle_restricted(g, CycleClass::Any),
        FamilyKind::Chordal => enumerate_cycle_restricted(g, CycleClass::Long),
        FamilyKind::Bipartite => enumerate_cycle_restricted(g, CycleClass::Odd),
        FamilyKind::TriangleFree => enumerate_cycle_restricted(g, CycleClass::Triangle),
        FamilyKind::ChordlessSets => enumerate_chordless_sets(g),
        FamilyKind::Anticliques => enumerate_anticliques(g),
        FamilyKind::Cliques => enumerate_cliques(g),
        FamilyKind::IsolatingMatchings => enumerate_isolating_matchings(g),
    }
}

/// Nonadjacent pairs `s < t`, each with the paths joining them (empty when
/// they lie in different components).
fn guarded_pairs(g: &Graph, paths: &[Path]) -> Vec<((usize, usize), Vec<Path>)> {
    let mut by_ends = paths_by_endpoints(paths);
    let n = g.vertex_count();
    let mut out = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            if !g.adjacent(s, t) {
                out.push(((s, t), by_ends.remove(&(s, t)).unwrap_or_default()));
            }
        }
    }
    out
}

fn convex(g: &Graph, paths: &[Path]) -> RowFamily {
    let constraints: Vec<Constraint> = guarded_pairs(g, paths)
        .into_iter()
        .map(|((s, t), between)| {
            if between.is_empty() {
                return Constraint::Noncover(vec![s, t]);
            }
            let mut conclusion: Vec<usize> = between
                .iter()
                .flat_map(|p| p.interior().iter().copied())
                .collect();
            conclusion.sort_unstable();
            conclusion.dedup();
            Constraint::Implication {
                premise: vec![s, t],
                conclusion,
            }
        })
        .collect();
    run_engine(g.vertex_count(), &constraints)
}

/// Sets containing every chordless path between any two of their members.
pub fn enumerate_moconvex(g: &Graph) -> RowFamily {
    convex(g, &all_chordless_paths(g))
}

/// Sets containing every geodesic between any two of their members.
pub fn enumerate_geconvex(g: &Graph) -> RowFamily {
    convex(g, &all_geodesics(g))
}

fn existential(g: &Graph, paths: &[Path]) -> RowFamily {
    let clauses: Vec<ExistentialClause> = guarded_pairs(g, paths)
        .into_iter()
        .map(|(guard, between)| ExistentialClause {
            guard,
            terms: between.iter().map(|p| p.interior().to_vec()).collect(),
        })
        .collect();
    let empty = HornCnf::new(g.vertex_count(), Vec::new()).expect("empty formula");
    enumerate_with_existential(&empty, &clauses).expect("clauses built from graph paths are valid")
}

/// Sets inducing connected subgraphs.
pub fn enumerate_connected(g: &Graph) -> RowFamily {
    existential(g, &all_chordless_paths(g))
}

/// Sets containing some geodesic between any two of their members.
pub fn enumerate_metric(g: &Graph) -> RowFamily {
    existential(g, &all_geodesics(g))
}

/// Sets containing no chordless cycle of the given class.
pub fn enumerate_cycle_restricted(g: &Graph, class: CycleClass) -> RowFamily {
    let constraints: Vec<Constraint> = all_chordless_cycles(g)
        .into_iter()
        .filter(|c| class.admits(c.len()))
        .map(|c| Constraint::Noncover(c.vertices))
        .collect();
    run_engine(g.vertex_count(), &constraints)
}

fn neighborhood_caps(g: &Graph, cap: usize) -> Vec<Cap> {
    (0..g.vertex_count())
        .filter(|&v| g.degree(v) > cap)
        .map(|v| Cap {
            anchor: v,
            body: g.neighbors(v).to_vec(),
            cap,
        })
        .collect()
}

fn capped(g: &Graph, cap: usize) -> RowFamily {
    enumerate_capped(g.vertex_count(), &neighborhood_caps(g, cap))
        .expect("neighborhood caps are valid")
}

/// Sets whose induced components are chordless paths or chordless cycles.
pub fn enumerate_chordless_sets(g: &Graph) -> RowFamily {
    capped(g, 2)
}

/// Sets inducing isolated edges and isolated vertices only.
pub fn enumerate_isolating_matchings(g: &Graph) -> RowFamily {
    capped(g, 1)
}

/// Independent sets.
pub fn enumerate_anticliques(g: &Graph) -> RowFamily {
    capped(g, 0)
}

pub fn enumerate_cliques(g: &Graph) -> RowFamily {
    enumerate_anticliques(&g.complement())
}
