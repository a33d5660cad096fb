//! Compressed enumeration of set families with wildcard rows.
//!
//! A [`WildcardRow`] denotes a (possibly exponentially large) set of
//! bitstrings through fixed cells, don't-care cells and wildcard groups such as
//! "at least one 0 here" or "if the anchor is 1, at most two 1's on the rest".
//! The engines in [`horn`] impose constraints one at a time on a LIFO stack of
//! rows and emit a [`RowFamily`] of pairwise disjoint rows whose union is the
//! exact model set.
//!
//! On top of the engines sit graph-level enumerators:
//!
//! - [`families`]: vertex sets inducing connected, metric, convex, forest,
//!   chordal, bipartite, triangle-free or chordless subgraphs, anticliques,
//!   cliques and isolating matchings.
//! - [`packings`]: clique packings and connected-set packings (the flats of the
//!   graphic matroid), hyperplanes and nearest coarser packings.
//!
//! [`oracle`] holds brute-force reference filters that never call engine code.

pub mod families;
pub mod graph;
pub mod horn;
pub mod oracle;
pub mod packings;
pub mod rows;

pub use graph::{Graph, GraphError};
pub use horn::{
    ExistentialClause, HornClause, HornCnf, HornError, HornModels, Implication, SetFamily,
};
pub use packings::{PackingError, Partition};
pub use rows::{Bitstring, CellKind, GroupKind, RowError, RowFamily, WildcardRow};
