//! Constraint imposition engines over a LIFO stack of wildcard rows.
//!
//! Positions are 0-based throughout; the DIMACS-like text format is 1-based.
//!
//! - [`enumerate_noncovers`]: all `X` with `A ⊄ X` for every `A` of a
//!   [`SetFamily`].
//! - [`enumerate_closed`]: all `X` closed under a list of [`Implication`]s.
//! - [`enumerate_horn_models`]: the models of a [`HornCnf`]; negative clauses
//!   become noncovers and pure Horn clauses implications.
//! - [`enumerate_capped`]: anchored caps `v ∈ X ⇒ |X ∩ B| ≤ c`.
//! - [`enumerate_with_existential`]: Horn models that also satisfy clauses
//!   `s ∧ t ⇒ T₁ ∨ … ∨ T_m` with conjunctive terms.
//! - [`enumerate_min_ones`]: models with at least `k` ones, with look-ahead
//!   pruning of hopeless rows.

mod dimacs;
pub(crate) mod engine;
mod lookahead;
mod sat;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rows::{RowFamily, WildcardRow};
use engine::Constraint;

pub use lookahead::{enumerate_min_ones, good_sons, restrict_min_ones};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HornError {
    #[error("position {position} out of range for width {width}")]
    PositionOutOfRange { position: usize, width: usize },
    #[error("clause {clause} uses position {position} both negated and positive")]
    Tautology { clause: usize, position: usize },
    #[error("anchor {anchor} lies in its own body")]
    AnchorInBody { anchor: usize },
    #[error("cap {cap} exceeds 2")]
    CapTooLarge { cap: usize },
    #[error("existential term contains a guard position {position}")]
    TermContainsGuard { position: usize },
    #[error("look-ahead depth must be at least 1")]
    ZeroLookAhead,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn check_positions<'a>(
    width: usize,
    positions: impl IntoIterator<Item = &'a usize>,
) -> Result<(), HornError> {
    for &position in positions {
        if position >= width {
            return Err(HornError::PositionOutOfRange { position, width });
        }
    }
    Ok(())
}

fn sorted_set(positions: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = positions.iter().copied().collect();
    set.into_iter().collect()
}

/// Sets `A₁, …, A_h` over `0..width`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    width: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(width: usize, sets: Vec<Vec<usize>>) -> Result<Self, HornError> {
        for set in &sets {
            check_positions(width, set)?;
        }
        Ok(SetFamily { width, sets })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Sorted sets with duplicates and supersets of other sets removed,
    /// keeping first-occurrence order.
    pub fn normalized(&self) -> Vec<Vec<usize>> {
        let sets: Vec<Vec<usize>> = self.sets.iter().map(|s| sorted_set(s)).collect();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for (i, set) in sets.iter().enumerate() {
            let redundant = sets.iter().enumerate().any(|(j, other)| {
                j != i && is_subset(other, set) && (other.len() < set.len() || j < i)
            });
            if !redundant {
                kept.push(set.clone());
            }
        }
        kept
    }
}

fn is_subset(small: &[usize], large: &[usize]) -> bool {
    small.iter().all(|p| large.binary_search(p).is_ok())
}

/// `premise ⊆ X ⇒ conclusion ⊆ X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub premise: Vec<usize>,
    pub conclusion: Vec<usize>,
}

impl Implication {
    pub fn new(premise: Vec<usize>, conclusion: Vec<usize>) -> Self {
        Implication {
            premise,
            conclusion,
        }
    }
}

/// A disjunction of negated positions and at most one positive position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornClause {
    pub negatives: Vec<usize>,
    pub positive: Option<usize>,
}

impl HornClause {
    pub fn negative(negatives: Vec<usize>) -> Self {
        HornClause {
            negatives,
            positive: None,
        }
    }

    pub fn implication(negatives: Vec<usize>, positive: usize) -> Self {
        HornClause {
            negatives,
            positive: Some(positive),
        }
    }

    pub fn unit(positive: usize) -> Self {
        HornClause::implication(Vec::new(), positive)
    }

    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        self.negatives.iter().any(|&p| !x[p]) || self.positive.is_some_and(|p| x[p])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HornCnf {
    width: usize,
    clauses: Vec<HornClause>,
}

impl HornCnf {
    pub fn new(width: usize, clauses: Vec<HornClause>) -> Result<Self, HornError> {
        for (i, clause) in clauses.iter().enumerate() {
            check_positions(width, clause.negatives.iter().chain(&clause.positive))?;
            if let Some(p) = clause.positive {
                if clause.negatives.contains(&p) {
                    return Err(HornError::Tautology {
                        clause: i,
                        position: p,
                    });
                }
            }
        }
        Ok(HornCnf { width, clauses })
    }

    /// The CNF whose models are the noncovers of `family`.
    pub fn from_set_family(family: &SetFamily) -> Self {
        let clauses = family
            .sets()
            .iter()
            .map(|s| HornClause::negative(s.clone()))
            .collect();
        HornCnf {
            width: family.width(),
            clauses,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn clauses(&self) -> &[HornClause] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.is_satisfied_by(x))
    }

    pub fn satisfiable(&self) -> bool {
        horn_satisfiable(self)
    }

    /// Fixes `ones` to 1 and returns the residual satisfiability.
    pub fn satisfiable_with_ones(&self, ones: &[usize]) -> bool {
        let mut flat = self.flat();
        flat.extend(ones.iter().map(|&p| (Vec::new(), Some(p))));
        sat::least_model(self.width, &flat).is_some()
    }

    pub(crate) fn flat(&self) -> Vec<sat::FlatClause> {
        self.clauses
            .iter()
            .map(|c| (c.negatives.clone(), c.positive))
            .collect()
    }

    /// Engine constraints: negative clauses as noncovers (normalized), pure
    /// clauses grouped by premise into implications.
    pub(crate) fn constraints(&self) -> Vec<Constraint> {
        let mut negatives = Vec::new();
        let mut by_premise: BTreeMap<Vec<usize>, (usize, BTreeSet<usize>)> = BTreeMap::new();
        for (i, clause) in self.clauses.iter().enumerate() {
            match clause.positive {
                None => negatives.push(clause.negatives.clone()),
                Some(p) => {
                    by_premise
                        .entry(sorted_set(&clause.negatives))
                        .or_insert_with(|| (i, BTreeSet::new()))
                        .1
                        .insert(p);
                }
            }
        }
        let family = SetFamily {
            width: self.width,
            sets: negatives,
        };
        let mut ordered: Vec<(usize, Constraint)> = Vec::new();
        for set in family.normalized() {
            let first = self
                .clauses
                .iter()
                .position(|c| c.positive.is_none() && sorted_set(&c.negatives) == set)
                .unwrap_or(0);
            ordered.push((first, Constraint::Noncover(set)));
        }
        for (premise, (first, conclusion)) in by_premise {
            ordered.push((
                first,
                Constraint::Implication {
                    premise,
                    conclusion: conclusion.into_iter().collect(),
                },
            ));
        }
        ordered.sort_by_key(|(first, _)| *first);
        ordered.into_iter().map(|(_, c)| c).collect()
    }
}

/// `s ∧ t ⇒ T₁ ∨ … ∨ T_m`, each term a conjunction of positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistentialClause {
    pub guard: (usize, usize),
    pub terms: Vec<Vec<usize>>,
}

impl ExistentialClause {
    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        let (s, t) = self.guard;
        !(x[s] && x[t]) || self.terms.iter().any(|term| term.iter().all(|&p| x[p]))
    }
}

/// `anchor ∈ X ⇒ |X ∩ body| ≤ cap`, with `cap ≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cap {
    pub anchor: usize,
    pub body: Vec<usize>,
    pub cap: usize,
}

impl Cap {
    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        !x[self.anchor] || self.body.iter().filter(|&&p| x[p]).count() <= self.cap
    }
}

/// Output of the Horn enumerators: the model rows and whether the formula
/// was satisfiable at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornModels {
    pub family: RowFamily,
    pub satisfiable: bool,
}

pub fn enumerate_noncovers(family: &SetFamily) -> RowFamily {
    let constraints: Vec<Constraint> = family
        .normalized()
        .into_iter()
        .map(Constraint::Noncover)
        .collect();
    run_engine(family.width(), &constraints)
}

pub fn enumerate_closed(width: usize, implications: &[Implication]) -> Result<RowFamily, HornError> {
    let mut constraints = Vec::new();
    for imp in implications {
        check_positions(width, imp.premise.iter().chain(&imp.conclusion))?;
        let premise = sorted_set(&imp.premise);
        let conclusion: Vec<usize> = sorted_set(&imp.conclusion)
            .into_iter()
            .filter(|p| premise.binary_search(p).is_err())
            .collect();
        if conclusion.is_empty() {
            continue;
        }
        let constraint = Constraint::Implication {
            premise,
            conclusion,
        };
        if !constraints.contains(&constraint) {
            constraints.push(constraint);
        }
    }
    Ok(run_engine(width, &constraints))
}

pub fn horn_satisfiable(cnf: &HornCnf) -> bool {
    sat::least_model(cnf.width(), &cnf.flat()).is_some()
}

pub fn enumerate_horn_models(cnf: &HornCnf) -> HornModels {
    if !horn_satisfiable(cnf) {
        return HornModels {
            family: RowFamily::empty(cnf.width()),
            satisfiable: false,
        };
    }
    HornModels {
        family: run_engine(cnf.width(), &cnf.constraints()),
        satisfiable: true,
    }
}

pub fn enumerate_capped(width: usize, caps: &[Cap]) -> Result<RowFamily, HornError> {
    let mut constraints = Vec::new();
    for cap in caps {
        check_positions(width, std::iter::once(&cap.anchor).chain(&cap.body))?;
        if cap.cap > 2 {
            return Err(HornError::CapTooLarge { cap: cap.cap });
        }
        let body = sorted_set(&cap.body);
        if body.contains(&cap.anchor) {
            return Err(HornError::AnchorInBody { anchor: cap.anchor });
        }
        if body.len() <= cap.cap {
            continue;
        }
        constraints.push(Constraint::Cap {
            anchor: cap.anchor,
            body,
            cap: cap.cap,
        });
    }
    Ok(run_engine(width, &constraints))
}

/// Horn models that also satisfy every existential clause. An unsatisfiable
/// Horn part yields the empty family.
pub fn enumerate_with_existential(
    horn: &HornCnf,
    clauses: &[ExistentialClause],
) -> Result<RowFamily, HornError> {
    let width = horn.width();
    for clause in clauses {
        let (s, t) = clause.guard;
        check_positions(width, [s, t].iter().chain(clause.terms.iter().flatten()))?;
        if let Some(&position) = clause.terms.iter().flatten().find(|&&p| p == s || p == t) {
            return Err(HornError::TermContainsGuard { position });
        }
    }
    if !horn_satisfiable(horn) {
        return Ok(RowFamily::empty(width));
    }
    let mut constraints = horn.constraints();
    constraints.extend(clauses.iter().cloned().map(Constraint::Existential));
    Ok(run_engine(width, &constraints))
}

pub(crate) fn run_engine(width: usize, constraints: &[Constraint]) -> RowFamily {
    let rows = engine::run(WildcardRow::full(width), constraints, |_| false);
    RowFamily::from_engine(width, rows)
}
