//! In-place row surgery used by the engines: fixing a position, installing a
//! normalized group, and bounding the number of ones a row admits on a set.

use super::{AnchoredBody, CellKind, Group, GroupId, GroupKind, WildcardRow};

/// A group predicate before normalization. Degenerate cases (a group that
/// admits everything, or forces its members) collapse to fixed cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    /// At least `z` zeros, `z ≤ 2`.
    AtLeastZeros(usize),
    /// At most `c` ones, `c ≤ 2`.
    AtMostOnes(usize),
    ExactlyOneZero,
    /// Anchor 1 ⇒ at most `cap` ones in the body.
    Anchored { anchor: usize, cap: usize },
}

fn fixed(value: bool) -> CellKind {
    if value {
        CellKind::One
    } else {
        CellKind::Zero
    }
}

impl WildcardRow {
    fn set_all(&mut self, positions: &[usize], cell: CellKind) {
        for &p in positions {
            self.cells[p] = cell;
        }
    }

    fn add_group(&mut self, id: Option<GroupId>, kind: GroupKind, members: Vec<usize>) {
        let id = id
            .filter(|id| !self.groups.contains_key(id))
            .unwrap_or_else(|| self.fresh_group_id());
        if let Some(anchor) = kind.anchor() {
            self.cells[anchor] = CellKind::Member(id);
        }
        self.set_all(&members, CellKind::Member(id));
        self.groups.insert(id, Group { kind, members });
    }

    /// Places `shape` on `members`, whose current cells are overwritten.
    /// Returns false if the shape cannot be satisfied.
    pub(crate) fn install(&mut self, shape: Shape, members: Vec<usize>) -> bool {
        self.install_as(None, shape, members)
    }

    /// Like [`Self::install`], reusing `id` for a new group when it is free.
    fn install_as(&mut self, id: Option<GroupId>, shape: Shape, mut members: Vec<usize>) -> bool {
        members.sort_unstable();
        let m = members.len();
        match shape {
            Shape::AtLeastZeros(0) => self.set_all(&members, CellKind::DontCare),
            Shape::AtLeastZeros(z) if m < z => return false,
            Shape::AtLeastZeros(z) if m == z => self.set_all(&members, CellKind::Zero),
            Shape::AtLeastZeros(1) => self.add_group(id, GroupKind::AtLeastOneZero, members),
            Shape::AtLeastZeros(2) => self.add_group(id, GroupKind::AtLeastTwoZeros, members),
            Shape::AtLeastZeros(z) => unreachable!("no wildcard for at least {z} zeros"),
            Shape::AtMostOnes(0) => self.set_all(&members, CellKind::Zero),
            Shape::AtMostOnes(c) if m <= c => self.set_all(&members, CellKind::DontCare),
            Shape::AtMostOnes(1) => self.add_group(id, GroupKind::AtMostOneOne, members),
            Shape::AtMostOnes(2) => self.add_group(id, GroupKind::AtMostTwoOnes, members),
            Shape::AtMostOnes(c) => unreachable!("no wildcard for at most {c} ones"),
            Shape::ExactlyOneZero if m == 0 => return false,
            Shape::ExactlyOneZero if m == 1 => self.set_all(&members, CellKind::Zero),
            Shape::ExactlyOneZero => self.add_group(id, GroupKind::ExactlyOneZero, members),
            Shape::Anchored { anchor, cap } => {
                if m == 0 || m <= cap {
                    self.cells[anchor] = CellKind::DontCare;
                    self.set_all(&members, CellKind::DontCare);
                } else {
                    let body = AnchoredBody::from_cap(cap).expect("anchored cap at most 2");
                    self.add_group(id, GroupKind::Anchored { anchor, body }, members);
                }
            }
        }
        true
    }

    /// Restricts the row to members with position `p` equal to `value`.
    /// Returns false (leaving the row unspecified) when that set is empty.
    pub(crate) fn force(&mut self, p: usize, value: bool) -> bool {
        let id = match self.cells[p] {
            CellKind::Zero => return !value,
            CellKind::One => return value,
            CellKind::DontCare => {
                self.cells[p] = fixed(value);
                return true;
            }
            CellKind::Member(id) => id,
        };
        let group = self.groups.remove(&id).expect("member cell refers to a group");
        self.cells[p] = fixed(value);
        let rest: Vec<usize> = group.members.iter().copied().filter(|&q| q != p).collect();
        match group.kind {
            GroupKind::Anchored { anchor, body } if anchor == p => {
                if value {
                    self.install_as(Some(id), Shape::AtMostOnes(body.cap()), rest)
                } else {
                    self.set_all(&rest, CellKind::DontCare);
                    true
                }
            }
            GroupKind::Anchored { anchor, body } => {
                let cap = body.cap();
                if !value {
                    self.install_as(Some(id), Shape::Anchored { anchor, cap }, rest)
                } else if cap == 0 {
                    self.cells[anchor] = CellKind::Zero;
                    self.set_all(&rest, CellKind::DontCare);
                    true
                } else {
                    self.install_as(Some(id), Shape::Anchored { anchor, cap: cap - 1 }, rest)
                }
            }
            GroupKind::AtLeastOneZero => {
                if value {
                    self.install_as(Some(id), Shape::AtLeastZeros(1), rest)
                } else {
                    self.set_all(&rest, CellKind::DontCare);
                    true
                }
            }
            GroupKind::AtLeastTwoZeros => {
                self.install_as(Some(id), Shape::AtLeastZeros(if value { 2 } else { 1 }), rest)
            }
            GroupKind::AtMostOneOne => {
                self.install_as(Some(id), Shape::AtMostOnes(if value { 0 } else { 1 }), rest)
            }
            GroupKind::AtMostTwoOnes => {
                self.install_as(Some(id), Shape::AtMostOnes(if value { 1 } else { 2 }), rest)
            }
            GroupKind::ExactlyOneZero => {
                if value {
                    self.install_as(Some(id), Shape::ExactlyOneZero, rest)
                } else {
                    self.set_all(&rest, CellKind::One);
                    true
                }
            }
        }
    }

    pub(crate) fn forced(&self, p: usize, value: bool) -> Option<WildcardRow> {
        let mut row = self.clone();
        row.force(p, value).then_some(row)
    }

    pub(crate) fn forced_all(&self, positions: &[usize], value: bool) -> Option<WildcardRow> {
        let mut row = self.clone();
        positions
            .iter()
            .all(|&p| row.force(p, value))
            .then_some(row)
    }

    /// Whether some member has every position of `set` equal to 1.
    pub(crate) fn admits_all_ones(&self, set: &[usize]) -> bool {
        if set.iter().any(|&p| self.cells[p] == CellKind::Zero) {
            return false;
        }
        self.forced_all(set, true).is_some()
    }

    /// Fewest ones any member has.
    pub(crate) fn min_ones(&self) -> usize {
        let fixed = self.cells.iter().filter(|&&c| c == CellKind::One).count();
        let grouped: usize = self
            .groups
            .values()
            .map(|g| match g.kind {
                GroupKind::ExactlyOneZero => g.members.len() - 1,
                _ => 0,
            })
            .sum();
        fixed + grouped
    }

    /// Largest number of ones any member has inside `set`.
    pub(crate) fn max_ones_within(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.width()];
        for &p in set {
            inside[p] = true;
        }
        let mut total = set
            .iter()
            .filter(|&&p| matches!(self.cells[p], CellKind::One | CellKind::DontCare))
            .count();
        for group in self.groups.values() {
            let k = group.members.len();
            let i = group.members.iter().filter(|&&p| inside[p]).count();
            total += match group.kind {
                GroupKind::AtLeastOneZero | GroupKind::ExactlyOneZero => {
                    if i == k {
                        i - 1
                    } else {
                        i
                    }
                }
                GroupKind::AtLeastTwoZeros => i.min(k - 2),
                GroupKind::AtMostOneOne => i.min(1),
                GroupKind::AtMostTwoOnes => i.min(2),
                GroupKind::Anchored { anchor, body } => {
                    let anchor_inside = usize::from(inside[anchor]);
                    i.max(anchor_inside + i.min(body.cap()))
                }
            };
        }
        total
    }
}
