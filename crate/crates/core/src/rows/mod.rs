//! Wildcard rows: representation, cardinality, membership and expansion.
//!
//! A row of width `w` is a vector of cells. Fixed cells are `0` or `1`, a
//! don't-care cell is `2`, and every other cell belongs to exactly one
//! wildcard group. A group constrains its member positions jointly:
//!
//! | kind                | token | meaning                                   | size of denotation  |
//! |---------------------|-------|-------------------------------------------|---------------------|
//! | `AtLeastOneZero`    | `n`   | at least one 0 here                       | 2^k − 1             |
//! | `AtLeastTwoZeros`   | `N`   | at least two 0's here                     | 2^k − 1 − k         |
//! | `AtMostOneOne`      | `e`   | at most one 1 here                        | 1 + k               |
//! | `AtMostTwoOnes`     | `E`   | at most two 1's here                      | 1 + k + C(k,2)      |
//! | `ExactlyOneZero`    | `g`   | exactly one 0 here                        | k                   |
//! | anchored, `c` body  | `a/c` | anchor 1 ⇒ body all 0                     | 2^k + 1             |
//! | anchored, `f` body  | `a/f` | anchor 1 ⇒ at most one 1 in body          | 2^k + 1 + k         |
//! | anchored, `F` body  | `a/F` | anchor 1 ⇒ at most two 1's in body        | 2^k + 1 + k + C(k,2)|
//!
//! Groups occupy disjoint positions, so the cardinality of a row is the
//! product of the per-group factors and a factor 2 per don't-care cell.

mod algebra;
mod text;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use algebra::Shape;
pub use text::{parse_rows, JsonGroup, JsonRow};

/// Per-row group identifier.
pub type GroupId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RowError {
    #[error("malformed row: {0}")]
    Malformed(String),
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("expansion refused: cardinality {cardinality} exceeds cap {cap}")]
    CapExceeded { cardinality: BigUint, cap: usize },
    #[error("family is not marked disjoint; summing row sizes would overcount")]
    DisjointnessUnclaimed,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A subset of `0..width` as a characteristic vector.
///
/// Ordering is lexicographic with `0 < 1`, position 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitstring(pub Vec<bool>);

impl Bitstring {
    pub fn zeros(width: usize) -> Self {
        Bitstring(vec![false; width])
    }

    pub fn from_positions(width: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = vec![false; width];
        for p in positions {
            bits[p] = true;
        }
        Bitstring(bits)
    }

    /// Low `width` bits of `mask`, bit `i` giving position `i`.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        Bitstring((0..width).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, p: usize) -> bool {
        self.0[p]
    }

    pub fn ones(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_subset_of(&self, other: &Bitstring) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| !a || b)
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellKind {
    Zero,
    One,
    DontCare,
    Member(GroupId),
}

/// Body predicate of an anchored group, active only when the anchor is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AnchoredBody {
    /// `c`: all zero.
    AllZero,
    /// `f` (a-ε): at most one 1.
    AtMostOneOne,
    /// `F` (a-ε(2)): at most two 1's.
    AtMostTwoOnes,
}

impl AnchoredBody {
    pub fn cap(self) -> usize {
        match self {
            AnchoredBody::AllZero => 0,
            AnchoredBody::AtMostOneOne => 1,
            AnchoredBody::AtMostTwoOnes => 2,
        }
    }

    pub fn from_cap(cap: usize) -> Option<Self> {
        match cap {
            0 => Some(AnchoredBody::AllZero),
            1 => Some(AnchoredBody::AtMostOneOne),
            2 => Some(AnchoredBody::AtMostTwoOnes),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    AtLeastOneZero,
    AtLeastTwoZeros,
    AtMostOneOne,
    AtMostTwoOnes,
    ExactlyOneZero,
    Anchored { anchor: usize, body: AnchoredBody },
}

impl GroupKind {
    fn min_members(self) -> usize {
        match self {
            GroupKind::AtLeastOneZero => 2,
            GroupKind::AtLeastTwoZeros => 3,
            GroupKind::AtMostOneOne => 2,
            GroupKind::AtMostTwoOnes => 3,
            GroupKind::ExactlyOneZero => 2,
            GroupKind::Anchored { .. } => 1,
        }
    }

    pub fn anchor(self) -> Option<usize> {
        match self {
            GroupKind::Anchored { anchor, .. } => Some(anchor),
            _ => None,
        }
    }

    /// Whether a group of this kind over `members` ones and `zeros` zeros,
    /// with the anchor (if any) set to `anchor_one`, is satisfied.
    fn holds(self, ones: usize, zeros: usize, anchor_one: bool) -> bool {
        match self {
            GroupKind::AtLeastOneZero => zeros >= 1,
            GroupKind::AtLeastTwoZeros => zeros >= 2,
            GroupKind::AtMostOneOne => ones <= 1,
            GroupKind::AtMostTwoOnes => ones <= 2,
            GroupKind::ExactlyOneZero => zeros == 1,
            GroupKind::Anchored { body, .. } => !anchor_one || ones <= body.cap(),
        }
    }

    /// Number of assignments of a group with `k` member positions (the anchor
    /// is counted on top of `k`).
    fn factor(self, k: usize) -> BigUint {
        let k_big = BigUint::from(k);
        let pow = BigUint::one() << k;
        let pairs = BigUint::from(k * k.saturating_sub(1) / 2);
        match self {
            GroupKind::AtLeastOneZero => pow - 1u32,
            GroupKind::AtLeastTwoZeros => pow - 1u32 - k_big,
            GroupKind::AtMostOneOne => k_big + 1u32,
            GroupKind::AtMostTwoOnes => k_big + 1u32 + pairs,
            GroupKind::ExactlyOneZero => k_big,
            GroupKind::Anchored { body, .. } => match body {
                AnchoredBody::AllZero => pow + 1u32,
                AnchoredBody::AtMostOneOne => pow + 1u32 + k_big,
                AnchoredBody::AtMostTwoOnes => pow + 1u32 + k_big + pairs,
            },
        }
    }
}

/// A wildcard group; for anchored groups `members` is the body only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    pub kind: GroupKind,
    pub members: Vec<usize>,
}

impl Group {
    /// All positions the group occupies, anchor included.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.kind.anchor().into_iter().chain(self.members.iter().copied())
    }
}

/// A compressed set of bitstrings of a fixed width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildcardRow {
    pub(crate) cells: Vec<CellKind>,
    pub(crate) groups: BTreeMap<GroupId, Group>,
}

impl WildcardRow {
    /// The full powerset row `(2,2,…,2)`.
    pub fn full(width: usize) -> Self {
        WildcardRow {
            cells: vec![CellKind::DontCare; width],
            groups: BTreeMap::new(),
        }
    }

    /// Builds a row from cells and a group table, checking every structural
    /// invariant.
    pub fn new(
        cells: Vec<CellKind>,
        groups: impl IntoIterator<Item = (GroupId, Group)>,
    ) -> Result<Self, RowError> {
        let mut groups: BTreeMap<GroupId, Group> = groups.into_iter().collect();
        for g in groups.values_mut() {
            g.members.sort_unstable();
        }
        let row = WildcardRow { cells, groups };
        row.validate()?;
        Ok(row)
    }

    pub fn validate(&self) -> Result<(), RowError> {
        let width = self.width();
        for (&id, group) in &self.groups {
            if group.members.len() < group.kind.min_members() {
                return Err(RowError::Malformed(format!(
                    "group {id} of kind {:?} has {} members, needs at least {}",
                    group.kind,
                    group.members.len(),
                    group.kind.min_members()
                )));
            }
            if group.members.windows(2).any(|w| w[0] == w[1]) {
                return Err(RowError::Malformed(format!("group {id} repeats a member")));
            }
            if let Some(anchor) = group.kind.anchor() {
                if group.members.contains(&anchor) {
                    return Err(RowError::Malformed(format!(
                        "anchor {anchor} of group {id} is also in its body"
                    )));
                }
            }
            for p in group.positions() {
                if p >= width {
                    return Err(RowError::Malformed(format!(
                        "group {id} references position {p} beyond width {width}"
                    )));
                }
                if self.cells[p] != CellKind::Member(id) {
                    return Err(RowError::Malformed(format!(
                        "position {p} is listed in group {id} but its cell is {:?}",
                        self.cells[p]
                    )));
                }
            }
        }
        for (p, cell) in self.cells.iter().enumerate() {
            if let CellKind::Member(id) = *cell {
                let listed = self
                    .groups
                    .get(&id)
                    .is_some_and(|g| g.positions().any(|q| q == p));
                if !listed {
                    return Err(RowError::Malformed(format!(
                        "position {p} refers to group {id}, which does not list it"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[CellKind] {
        &self.cells
    }

    pub fn cell(&self, p: usize) -> CellKind {
        self.cells[p]
    }

    pub fn groups(&self) -> impl Iterator<Item = (GroupId, &Group)> {
        self.groups.iter().map(|(&id, g)| (id, g))
    }

    pub fn group(&self, id: GroupId) -> Option<&Group> {
        self.groups.get(&id)
    }

    /// Positions fixed to 1.
    pub fn ones(&self) -> Vec<usize> {
        self.positions_where(|c| c == CellKind::One)
    }

    /// Positions fixed to 0.
    pub fn zeros(&self) -> Vec<usize> {
        self.positions_where(|c| c == CellKind::Zero)
    }

    /// Positions that are neither 0 nor 1.
    pub fn unfixed(&self) -> Vec<usize> {
        self.positions_where(|c| !matches!(c, CellKind::Zero | CellKind::One))
    }

    fn positions_where(&self, pred: impl Fn(CellKind) -> bool) -> Vec<usize> {
        (0..self.width()).filter(|&p| pred(self.cells[p])).collect()
    }

    /// True when only `0`, `1`, `2` and `n` cells occur.
    pub fn is_012n(&self) -> bool {
        self.groups
            .values()
            .all(|g| g.kind == GroupKind::AtLeastOneZero)
    }

    /// Number of bitstrings the row denotes.
    pub fn cardinality(&self) -> BigUint {
        let twos = self
            .cells
            .iter()
            .filter(|&&c| c == CellKind::DontCare)
            .count();
        self.groups
            .values()
            .fold(BigUint::one() << twos, |acc, g| {
                acc * g.kind.factor(g.members.len())
            })
    }

    pub fn contains(&self, x: &Bitstring) -> Result<bool, RowError> {
        if x.width() != self.width() {
            return Err(RowError::WidthMismatch {
                expected: self.width(),
                found: x.width(),
            });
        }
        for (p, cell) in self.cells.iter().enumerate() {
            match cell {
                CellKind::Zero if x.get(p) => return Ok(false),
                CellKind::One if !x.get(p) => return Ok(false),
                _ => {}
            }
        }
        Ok(self.groups.values().all(|g| {
            let ones = g.members.iter().filter(|&&p| x.get(p)).count();
            let anchor_one = g.kind.anchor().is_some_and(|a| x.get(a));
            g.kind.holds(ones, g.members.len() - ones, anchor_one)
        }))
    }

    /// All members in lexicographic order, refusing when there are more than
    /// `cap` of them.
    pub fn expand(&self, cap: usize) -> Result<Vec<Bitstring>, RowError> {
        let cardinality = self.cardinality();
        if cardinality > BigUint::from(cap) {
            return Err(RowError::CapExceeded { cardinality, cap });
        }
        let mut out = Vec::new();
        let mut state = ExpandState::new(self);
        let mut bits = vec![false; self.width()];
        state.descend(self, 0, &mut bits, &mut out);
        Ok(out)
    }

    /// Renumbers groups `1, 2, …` in order of their first position.
    pub fn canonicalize(&self) -> WildcardRow {
        let mut order: Vec<(usize, GroupId)> = self
            .groups
            .iter()
            .map(|(&id, g)| (g.positions().min().unwrap_or(usize::MAX), id))
            .collect();
        order.sort_unstable();
        let rename: BTreeMap<GroupId, GroupId> = order
            .iter()
            .enumerate()
            .map(|(i, &(_, id))| (id, i as GroupId + 1))
            .collect();
        self.renamed(&rename)
    }

    /// Applies a group-id renaming; ids missing from `rename` are kept.
    pub fn renamed(&self, rename: &BTreeMap<GroupId, GroupId>) -> WildcardRow {
        let map = |id: GroupId| rename.get(&id).copied().unwrap_or(id);
        WildcardRow {
            cells: self
                .cells
                .iter()
                .map(|&c| match c {
                    CellKind::Member(id) => CellKind::Member(map(id)),
                    other => other,
                })
                .collect(),
            groups: self
                .groups
                .iter()
                .map(|(&id, g)| (map(id), g.clone()))
                .collect(),
        }
    }

    pub(crate) fn fresh_group_id(&self) -> GroupId {
        self.groups.keys().next_back().map_or(1, |&id| id + 1)
    }
}

/// Per-group bookkeeping for the lexicographic expansion walk.
struct ExpandState {
    ones: BTreeMap<GroupId, usize>,
    zeros: BTreeMap<GroupId, usize>,
    remaining: BTreeMap<GroupId, usize>,
    anchor_value: BTreeMap<GroupId, Option<bool>>,
}

impl ExpandState {
    fn new(row: &WildcardRow) -> Self {
        ExpandState {
            ones: row.groups.keys().map(|&id| (id, 0)).collect(),
            zeros: row.groups.keys().map(|&id| (id, 0)).collect(),
            remaining: row
                .groups
                .iter()
                .map(|(&id, g)| (id, g.members.len()))
                .collect(),
            anchor_value: row.groups.keys().map(|&id| (id, None)).collect(),
        }
    }

    /// Whether the partial assignment of group `id` extends to a member.
    fn feasible(&self, row: &WildcardRow, id: GroupId) -> bool {
        let kind = row.groups[&id].kind;
        let (ones, zeros, rest) = (self.ones[&id], self.zeros[&id], self.remaining[&id]);
        match kind {
            GroupKind::AtLeastOneZero => zeros + rest >= 1,
            GroupKind::AtLeastTwoZeros => zeros + rest >= 2,
            GroupKind::AtMostOneOne => ones <= 1,
            GroupKind::AtMostTwoOnes => ones <= 2,
            GroupKind::ExactlyOneZero => zeros <= 1 && zeros + rest >= 1,
            GroupKind::Anchored { body, .. } => {
                self.anchor_value[&id] != Some(true) || ones <= body.cap()
            }
        }
    }

    fn assign(&mut self, row: &WildcardRow, id: GroupId, p: usize, value: bool, undo: bool) {
        if row.groups[&id].kind.anchor() == Some(p) {
            self.anchor_value.insert(id, if undo { None } else { Some(value) });
            return;
        }
        let counter = if value { &mut self.ones } else { &mut self.zeros };
        let rest = self.remaining.get_mut(&id).expect("group present");
        if undo {
            *counter.get_mut(&id).expect("group present") -= 1;
            *rest += 1;
        } else {
            *counter.get_mut(&id).expect("group present") += 1;
            *rest -= 1;
        }
    }

    fn descend(&mut self, row: &WildcardRow, p: usize, bits: &mut Vec<bool>, out: &mut Vec<Bitstring>) {
        if p == row.width() {
            out.push(Bitstring(bits.clone()));
            return;
        }
        let choices: &[bool] = match row.cells[p] {
            CellKind::Zero => &[false],
            CellKind::One => &[true],
            _ => &[false, true],
        };
        for &value in choices {
            bits[p] = value;
            match row.cells[p] {
                CellKind::Member(id) => {
                    self.assign(row, id, p, value, false);
                    if self.feasible(row, id) {
                        self.descend(row, p + 1, bits, out);
                    }
                    self.assign(row, id, p, value, true);
                }
                _ => self.descend(row, p + 1, bits, out),
            }
        }
        bits[p] = false;
    }
}

/// An ordered list of rows of a common width.
///
/// `disjoint` records the claim that no bitstring lies in two rows; the
/// engines set it, hand-built families must opt in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFamily {
    width: usize,
    rows: Vec<WildcardRow>,
    disjoint: bool,
}

impl RowFamily {
    pub fn new(width: usize, rows: Vec<WildcardRow>, disjoint: bool) -> Result<Self, RowError> {
        if let Some(bad) = rows.iter().find(|r| r.width() != width) {
            return Err(RowError::WidthMismatch {
                expected: width,
                found: bad.width(),
            });
        }
        Ok(RowFamily {
            width,
            rows,
            disjoint,
        })
    }

    pub fn empty(width: usize) -> Self {
        RowFamily {
            width,
            rows: Vec::new(),
            disjoint: true,
        }
    }

    pub(crate) fn from_engine(width: usize, rows: Vec<WildcardRow>) -> Self {
        RowFamily {
            width,
            rows,
            disjoint: true,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[WildcardRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<WildcardRow> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_disjoint_claimed(&self) -> bool {
        self.disjoint
    }

    /// Sum of row cardinalities; only meaningful for disjoint families.
    pub fn cardinality(&self) -> Result<BigUint, RowError> {
        if !self.disjoint {
            return Err(RowError::DisjointnessUnclaimed);
        }
        Ok(self.rows.iter().map(WildcardRow::cardinality).sum())
    }

    pub fn contains(&self, x: &Bitstring) -> Result<bool, RowError> {
        for row in &self.rows {
            if row.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Sorted, deduplicated union of all rows.
    pub fn expand(&self, cap: usize) -> Result<Vec<Bitstring>, RowError> {
        let total: BigUint = self.rows.iter().map(WildcardRow::cardinality).sum();
        if total > BigUint::from(cap) {
            return Err(RowError::CapExceeded {
                cardinality: total,
                cap,
            });
        }
        let mut out = Vec::new();
        for row in &self.rows {
            out.extend(row.expand(cap)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Exact pairwise disjointness. Pure 012n families are decided
    /// symbolically; anything else is expanded under `cap`.
    pub fn pairwise_disjoint(&self, cap: usize) -> Result<bool, RowError> {
        if self.rows.iter().all(WildcardRow::is_012n) {
            for (i, a) in self.rows.iter().enumerate() {
                for b in &self.rows[i + 1..] {
                    if rows_012n_intersect(a, b) {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        let total: BigUint = self.rows.iter().map(WildcardRow::cardinality).sum();
        if total > BigUint::from(cap) {
            return Err(RowError::CapExceeded {
                cardinality: total,
                cap,
            });
        }
        let mut seen = HashSet::new();
        for row in &self.rows {
            for x in row.expand(cap)? {
                if !seen.insert(x) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Two 012n rows share a member iff their fixed cells agree and every
/// n-group of either row keeps a position not forced to 1 by the other.
/// Setting all remaining free positions to 0 then gives a common member.
fn rows_012n_intersect(a: &WildcardRow, b: &WildcardRow) -> bool {
    let forced_one = |p: usize| a.cells[p] == CellKind::One || b.cells[p] == CellKind::One;
    for p in 0..a.width() {
        let fixed = |c: CellKind| match c {
            CellKind::Zero => Some(false),
            CellKind::One => Some(true),
            _ => None,
        };
        if let (Some(x), Some(y)) = (fixed(a.cells[p]), fixed(b.cells[p])) {
            if x != y {
                return false;
            }
        }
    }
    a.groups
        .values()
        .chain(b.groups.values())
        .all(|g| g.members.iter().any(|&p| !forced_one(p)))
}
