//! Models with at least `k` ones.
//!
//! While the Horn engine runs, a row `r` that still lacks ones is tested by
//! looking `t` steps ahead: each `t`-subset `S` of its open positions gives a
//! candidate son with `ones(r) ∪ S` fixed to 1, and `r` is dropped when no
//! candidate son meets the formula. The test is only a pruning device; the
//! final rows are cut down to their members with at least `k` ones by an
//! exact split.

use crate::rows::{CellKind, GroupKind, RowFamily, WildcardRow};

use super::{engine, horn_satisfiable, sat, HornCnf, HornError, HornModels};

/// The `t`-subsets `S` of the open positions of `row`, in lexicographic
/// order, such that the formula restricted to `row` stays satisfiable with
/// `S` fixed to 1.
///
/// Fixed cells and n-groups of `row` enter as Horn clauses; groups of other
/// kinds are dropped, which only relaxes the test.
pub fn good_sons(cnf: &HornCnf, row: &WildcardRow, t: usize) -> Vec<Vec<usize>> {
    let mut base = cnf.flat();
    for (p, cell) in row.cells().iter().enumerate() {
        match cell {
            CellKind::One => base.push((Vec::new(), Some(p))),
            CellKind::Zero => base.push((vec![p], None)),
            _ => {}
        }
    }
    for (_, group) in row.groups() {
        if group.kind == GroupKind::AtLeastOneZero {
            base.push((group.members.clone(), None));
        }
    }
    let open = row.unfixed();
    let mut good = Vec::new();
    for_each_subset(&open, t, &mut |subset| {
        let mut clauses = base.clone();
        clauses.extend(subset.iter().map(|&p| (Vec::new(), Some(p))));
        if sat::least_model(row.width(), &clauses).is_some() {
            good.push(subset.to_vec());
        }
    });
    good
}

fn for_each_subset(items: &[usize], t: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], t: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if chosen.len() == t {
            visit(chosen);
            return;
        }
        let need = t - chosen.len();
        for i in 0..items.len() {
            if items.len() - i < need {
                break;
            }
            chosen.push(items[i]);
            rec(&items[i + 1..], t, chosen, visit);
            chosen.pop();
        }
    }
    rec(items, t, &mut Vec::with_capacity(t), visit);
}

/// Disjoint rows whose union is `{y ∈ Mod(cnf) : |ones(y)| ≥ k}`.
pub fn enumerate_min_ones(cnf: &HornCnf, k: usize, t: usize) -> Result<HornModels, HornError> {
    if t == 0 {
        return Err(HornError::ZeroLookAhead);
    }
    let width = cnf.width();
    if !horn_satisfiable(cnf) {
        return Ok(HornModels {
            family: RowFamily::empty(width),
            satisfiable: false,
        });
    }
    let all: Vec<usize> = (0..width).collect();
    let prune = |row: &WildcardRow| {
        let ones = row.ones().len();
        if ones >= k {
            return false;
        }
        if row.max_ones_within(&all) < k {
            return true;
        }
        let step = t.min(k - ones);
        good_sons(cnf, row, step).is_empty()
    };
    let finals = engine::run(WildcardRow::full(width), &cnf.constraints(), prune);
    let mut rows = Vec::new();
    for row in finals {
        at_least_ones(row, k, &all, &mut rows);
    }
    Ok(HornModels {
        family: RowFamily::from_engine(width, rows),
        satisfiable: true,
    })
}

/// Members of `fam` with at least `k` ones. Each row is split on its own,
/// so a disjoint family stays disjoint.
pub fn restrict_min_ones(fam: &RowFamily, k: usize) -> RowFamily {
    let all: Vec<usize> = (0..fam.width()).collect();
    let mut rows = Vec::new();
    for row in fam.rows() {
        at_least_ones(row.clone(), k, &all, &mut rows);
    }
    RowFamily::new(fam.width(), rows, fam.is_disjoint_claimed())
        .expect("sons of valid rows are valid")
}

/// Members of `row` with at least `k` ones, as disjoint rows.
fn at_least_ones(row: WildcardRow, k: usize, all: &[usize], out: &mut Vec<WildcardRow>) {
    if row.min_ones() >= k {
        out.push(row);
        return;
    }
    if row.max_ones_within(all) < k {
        return;
    }
    let p = row.unfixed()[0];
    for value in [true, false] {
        if let Some(son) = row.forced(p, value) {
            at_least_ones(son, k, all, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::horn::{enumerate_horn_models, HornClause};
    use crate::oracle;

    /// F over x1..x7 from the look-ahead discussion, 0-based.
    fn lookahead_formula() -> HornCnf {
        HornCnf::new(
            7,
            vec![
                HornClause::implication(vec![0], 1),
                HornClause::negative(vec![1, 2, 5]),
                HornClause::implication(vec![3, 6], 2),
                HornClause::implication(vec![4], 0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn post_hoc_size_filter() {
        let fam = enumerate_horn_models(&lookahead_formula()).family;
        for k in 0..=7 {
            let kept = restrict_min_ones(&fam, k);
            let brute = oracle::brute_models(7, |x| {
                lookahead_formula().is_satisfied_by(x) && x.iter().filter(|&&b| b).count() >= k
            })
            .unwrap();
            assert!(oracle::compare_family(&kept, &brute, 1 << 10).unwrap().equal, "k={k}");
        }
    }

    #[test]
    fn good_pairs_of_the_example_row() {
        let r: WildcardRow = "2 2 2 2 0 1 1".parse().unwrap();
        let good = good_sons(&lookahead_formula(), &r, 2);
        // Checked by hand: only {1,2} and {3,4} (1-based) survive.
        assert_eq!(good, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn min_ones_matches_brute_force() {
        let f = lookahead_formula();
        for k in 0..=7 {
            for t in 1..=3 {
                let got = enumerate_min_ones(&f, k, t).unwrap();
                assert!(got.family.pairwise_disjoint(1 << 10).unwrap());
                let brute = oracle::brute_models(7, |x| {
                    f.is_satisfied_by(x) && x.iter().filter(|&&b| b).count() >= k
                })
                .unwrap();
                assert!(
                    oracle::compare_family(&got.family, &brute, 1 << 10).unwrap().equal,
                    "k = {k}, t = {t}"
                );
            }
        }
    }

    #[test]
    fn zero_threshold_is_plain_enumeration() {
        let f = lookahead_formula();
        let plain = enumerate_horn_models(&f).family;
        let min0 = enumerate_min_ones(&f, 0, 1).unwrap().family;
        assert_eq!(min0.expand(256).unwrap(), plain.expand(256).unwrap());
    }

    #[test]
    fn full_threshold_on_empty_formula() {
        let empty = HornCnf::new(3, vec![]).unwrap();
        let fam = enumerate_min_ones(&empty, 3, 1).unwrap().family;
        assert_eq!(fam.cardinality().unwrap(), BigUint::from(1u32));
        assert_eq!(fam.expand(8).unwrap()[0].to_string(), "111");
        assert_eq!(enumerate_min_ones(&empty, 1, 0), Err(HornError::ZeroLookAhead));
    }

    #[test]
    fn subsets_in_lexicographic_order() {
        let mut seen = Vec::new();
        for_each_subset(&[1, 3, 5, 7], 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![vec![1, 3], vec![1, 5], vec![1, 7], vec![3, 5], vec![3, 7], vec![5, 7]]
        );
    }
}
