//! The LIFO imposition engine shared by every enumerator.
//!
//! Each stack entry is a row plus the index of its pending constraint. The
//! top row is popped, skipped past every constraint its members already
//! satisfy, and either emitted as final or replaced by sons that partition
//! the members satisfying the pending constraint. Sons are pushed so that the
//! first son is processed next.

use crate::rows::{CellKind, GroupKind, Shape, WildcardRow};

use super::ExistentialClause;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Constraint {
    /// `A ⊄ X`.
    Noncover(Vec<usize>),
    /// `A ⊆ X ⇒ B ⊆ X`.
    Implication {
        premise: Vec<usize>,
        conclusion: Vec<usize>,
    },
    /// `anchor ∈ X ⇒ |X ∩ body| ≤ cap`.
    Cap {
        anchor: usize,
        body: Vec<usize>,
        cap: usize,
    },
    Existential(ExistentialClause),
}

impl Constraint {
    /// Whether every member of `row` satisfies the constraint.
    pub(crate) fn holds_on(&self, row: &WildcardRow) -> bool {
        match self {
            Constraint::Noncover(a) => !row.admits_all_ones(a),
            Constraint::Implication {
                premise,
                conclusion,
            } => match row.forced_all(premise, true) {
                None => true,
                Some(r) => conclusion.iter().all(|&p| r.cell(p) == CellKind::One),
            },
            Constraint::Cap { anchor, body, cap } => match row.forced(*anchor, true) {
                None => true,
                Some(r) => r.max_ones_within(body) <= *cap,
            },
            Constraint::Existential(clause) => {
                let (s, t) = clause.guard;
                match row.forced_all(&[s, t], true) {
                    None => true,
                    Some(r) => clause
                        .terms
                        .iter()
                        .any(|term| term.iter().all(|&p| r.cell(p) == CellKind::One)),
                }
            }
        }
    }

    /// Disjoint rows whose union is the set of members of `row` satisfying
    /// the constraint.
    pub(crate) fn split(&self, row: &WildcardRow) -> Vec<WildcardRow> {
        match self {
            Constraint::Noncover(a) => avoid_all_ones(row, a),
            Constraint::Implication {
                premise,
                conclusion,
            } => {
                let mut sons = avoid_all_ones(row, premise);
                let both: Vec<usize> = premise.iter().chain(conclusion).copied().collect();
                sons.extend(row.forced_all(&both, true));
                sons
            }
            Constraint::Cap { anchor, body, cap } => {
                let mut sons = Vec::new();
                cap_sons(row.clone(), *anchor, body, *cap, &mut sons);
                sons
            }
            Constraint::Existential(clause) => existential_sons(row, clause),
        }
    }
}

/// Runs the stack engine from `start`. Rows for which `prune` answers true
/// are dropped when they reach the top of the stack.
pub(crate) fn run(
    start: WildcardRow,
    constraints: &[Constraint],
    mut prune: impl FnMut(&WildcardRow) -> bool,
) -> Vec<WildcardRow> {
    let mut stack = vec![(start, 0usize)];
    let mut finals = Vec::new();
    while let Some((row, mut pc)) = stack.pop() {
        if prune(&row) {
            continue;
        }
        while pc < constraints.len() && constraints[pc].holds_on(&row) {
            pc += 1;
        }
        if pc == constraints.len() {
            finals.push(row);
            continue;
        }
        let sons = constraints[pc].split(&row);
        stack.extend(sons.into_iter().rev().map(|son| (son, pc + 1)));
    }
    finals
}

enum Unit {
    /// Positions of `a` inside one n-group.
    Group(Vec<usize>),
    /// A single position inside a group of another kind.
    Single(usize),
}

/// Splits `row` into disjoint rows covering its members `X` with `a ⊄ X`.
///
/// The positions of `a` that are not fixed to 1 are cut into units: the part
/// of `a` inside each n-group, single positions of other groups, and the
/// don't-care positions. Son `i` has units `1..i` all ones and unit `i` not
/// all ones; the don't-care unit comes last and receives a fresh n-group.
pub(crate) fn avoid_all_ones(row: &WildcardRow, a: &[usize]) -> Vec<WildcardRow> {
    if !row.admits_all_ones(a) {
        return vec![row.clone()];
    }
    let mut grouped: Vec<(usize, Unit)> = Vec::new();
    let mut by_group: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
    let mut free = Vec::new();
    let mut sorted: Vec<usize> = a.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &p in &sorted {
        match row.cell(p) {
            CellKind::DontCare => free.push(p),
            CellKind::Member(id) => {
                if row.groups[&id].kind == GroupKind::AtLeastOneZero {
                    by_group.entry(id).or_default().push(p);
                } else {
                    grouped.push((p, Unit::Single(p)));
                }
            }
            CellKind::One | CellKind::Zero => {}
        }
    }
    grouped.extend(by_group.into_values().map(|ps| (ps[0], Unit::Group(ps))));
    grouped.sort_by_key(|(first, _)| *first);

    let mut sons = Vec::new();
    let mut base = row.clone();
    for (_, unit) in &grouped {
        let positions = match unit {
            Unit::Group(ps) => {
                let mut son = base.clone();
                let CellKind::Member(id) = son.cell(ps[0]) else {
                    unreachable!("unit positions stay in their group until forced")
                };
                let group = son.groups.remove(&id).expect("group present");
                for &q in &group.members {
                    son.cells[q] = CellKind::DontCare;
                }
                son.install(Shape::AtLeastZeros(1), ps.clone());
                sons.push(son);
                ps.clone()
            }
            Unit::Single(p) => {
                sons.extend(base.forced(*p, false));
                vec![*p]
            }
        };
        match base.forced_all(&positions, true) {
            Some(next) => base = next,
            None => return sons,
        }
    }
    if !free.is_empty() {
        base.install(Shape::AtLeastZeros(1), free);
        sons.push(base);
    }
    sons
}

/// Members of `row` with `anchor ∈ X ⇒ |X ∩ body| ≤ cap`, as disjoint rows.
/// Whenever the anchor is free and the open body cells are don't-cares, a
/// single anchored group is installed.
fn cap_sons(row: WildcardRow, anchor: usize, body: &[usize], cap: usize, out: &mut Vec<WildcardRow>) {
    match row.cell(anchor) {
        CellKind::Zero => out.push(row),
        CellKind::One => at_most_ones(row, body, cap, out),
        CellKind::Member(_) => {
            out.extend(row.forced(anchor, false));
            if let Some(on) = row.forced(anchor, true) {
                at_most_ones(on, body, cap, out);
            }
        }
        CellKind::DontCare => {
            let ones = body.iter().filter(|&&p| row.cell(p) == CellKind::One).count();
            let open: Vec<usize> = open_positions(&row, body);
            if ones + row.max_ones_within(&open) <= cap {
                out.push(row);
            } else if ones > cap {
                out.extend(row.forced(anchor, false));
            } else if let Some(&p) = open.iter().find(|&&p| row.cell(p) != CellKind::DontCare) {
                for value in [false, true] {
                    if let Some(son) = row.forced(p, value) {
                        cap_sons(son, anchor, body, cap, out);
                    }
                }
            } else {
                let mut son = row;
                son.install(
                    Shape::Anchored {
                        anchor,
                        cap: cap - ones,
                    },
                    open,
                );
                out.push(son);
            }
        }
    }
}

/// Members of `row` with at most `cap` ones on `set`, as disjoint rows.
fn at_most_ones(row: WildcardRow, set: &[usize], cap: usize, out: &mut Vec<WildcardRow>) {
    let ones = set.iter().filter(|&&p| row.cell(p) == CellKind::One).count();
    if ones > cap {
        return;
    }
    let room = cap - ones;
    let open = open_positions(&row, set);
    if row.max_ones_within(&open) <= room {
        out.push(row);
    } else if room == 0 {
        out.extend(row.forced_all(&open, false));
    } else if let Some(&p) = open.iter().find(|&&p| row.cell(p) != CellKind::DontCare) {
        for value in [false, true] {
            if let Some(son) = row.forced(p, value) {
                at_most_ones(son, set, cap, out);
            }
        }
    } else {
        let mut son = row;
        son.install(Shape::AtMostOnes(room), open);
        out.push(son);
    }
}

fn open_positions(row: &WildcardRow, set: &[usize]) -> Vec<usize> {
    set.iter()
        .copied()
        .filter(|&p| !matches!(row.cell(p), CellKind::Zero | CellKind::One))
        .collect()
}

/// Orthogonal expansion of `s ∧ t ⇒ T₁ ∨ … ∨ T_m`: the branches `s = 0`,
/// `s = 1, t = 0`, and for each `j` the rows with `s = t = 1`, every earlier
/// term not all ones and `T_j` all ones.
fn existential_sons(row: &WildcardRow, clause: &ExistentialClause) -> Vec<WildcardRow> {
    let (s, t) = clause.guard;
    let mut sons: Vec<WildcardRow> = row.forced(s, false).into_iter().collect();
    if let Some(on) = row.forced(s, true) {
        sons.extend(on.forced(t, false));
    }
    let Some(both) = row.forced_all(&[s, t], true) else {
        return sons;
    };
    let mut avoiding = vec![both];
    for term in &clause.terms {
        sons.extend(avoiding.iter().filter_map(|r| r.forced_all(term, true)));
        avoiding = avoiding
            .iter()
            .flat_map(|r| avoid_all_ones(r, term))
            .collect();
        if avoiding.is_empty() {
            break;
        }
    }
    sons
}
