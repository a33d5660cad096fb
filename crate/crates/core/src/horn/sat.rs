//! Horn satisfiability by forward chaining (unit propagation from the
//! positive unit clauses), linear in the total clause length.

use std::collections::VecDeque;

/// A Horn clause in flat form: negated positions and an optional positive one.
pub(crate) type FlatClause = (Vec<usize>, Option<usize>);

/// The least model of a Horn formula, or `None` when it is unsatisfiable.
pub(crate) fn least_model(width: usize, clauses: &[FlatClause]) -> Option<Vec<bool>> {
    let mut value = vec![false; width];
    let mut pending: Vec<usize> = Vec::with_capacity(clauses.len());
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); width];
    let mut queue = VecDeque::new();

    for (c, (neg, _)) in clauses.iter().enumerate() {
        let mut neg = neg.clone();
        neg.sort_unstable();
        neg.dedup();
        for &p in &neg {
            watchers[p].push(c);
        }
        pending.push(neg.len());
    }
    for (c, (_, pos)) in clauses.iter().enumerate() {
        if pending[c] == 0 && !fire(*pos, &mut value, &mut queue) {
            return None;
        }
    }
    while let Some(p) = queue.pop_front() {
        for &c in &watchers[p] {
            pending[c] -= 1;
            if pending[c] == 0 && !fire(clauses[c].1, &mut value, &mut queue) {
                return None;
            }
        }
    }
    Some(value)
}

fn fire(pos: Option<usize>, value: &mut [bool], queue: &mut VecDeque<usize>) -> bool {
    match pos {
        None => false,
        Some(p) => {
            if !value[p] {
                value[p] = true;
                queue.push_back(p);
            }
            true
        }
    }
}
