mod common;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use wildcard_enum::rows::JsonRow;
use wildcard_enum::{Bitstring, RowFamily, WildcardRow};

use common::all_bitstrings;

const LETTERS: [&str; 8] = ["n", "N", "e", "E", "g", "ac", "af", "aF"];

/// Random token vectors: each position is 0, 1, 2 or a slot of one of up to
/// four groups. Slots too small for their kind fall back to `2`.
fn tokens() -> impl Strategy<Value = Vec<String>> {
    (1usize..=14).prop_flat_map(tokens_of_width)
}

fn tokens_of_width(w: usize) -> impl Strategy<Value = Vec<String>> {
    (
        proptest::collection::vec(0usize..7, w),
        proptest::collection::vec(0usize..LETTERS.len(), 4),
    )
        .prop_map(|(slots, kinds)| {
            let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (p, &s) in slots.iter().enumerate() {
                if s >= 3 {
                    members.entry(s - 3).or_default().push(p);
                }
            }
            let mut out: Vec<String> = slots
                .iter()
                .map(|&s| if s < 3 { s.to_string() } else { "2".into() })
                .collect();
            for (slot, ps) in members {
                let letter = LETTERS[kinds[slot]];
                let id = slot + 1;
                let min = match letter {
                    "N" | "E" => 3,
                    _ => 2,
                };
                if ps.len() < min {
                    continue;
                }
                if let Some(body) = letter.strip_prefix('a') {
                    out[ps[0]] = format!("a{id}");
                    for &p in &ps[1..] {
                        out[p] = format!("{body}{id}");
                    }
                } else {
                    for &p in &ps {
                        out[p] = format!("{letter}{id}");
                    }
                }
            }
            out
        })
}

/// Membership decided straight from the token letters.
fn denotes(tokens: &[String], x: &Bitstring) -> bool {
    let mut groups: BTreeMap<String, Vec<(char, bool)>> = BTreeMap::new();
    for (p, t) in tokens.iter().enumerate() {
        match t.as_str() {
            "0" if x.get(p) => return false,
            "1" if !x.get(p) => return false,
            "0" | "1" | "2" => {}
            _ => {
                let letter = t.chars().next().unwrap();
                groups.entry(t[1..].to_string()).or_default().push((letter, x.get(p)));
            }
        }
    }
    groups.values().all(|cells| {
        let ones = cells.iter().filter(|c| c.1 && c.0 != 'a').count();
        let zeros = cells.iter().filter(|c| !c.1 && c.0 != 'a').count();
        let anchor = cells.iter().any(|c| c.0 == 'a' && c.1);
        match cells.iter().find(|c| c.0 != 'a').unwrap().0 {
            'n' => zeros >= 1,
            'N' => zeros >= 2,
            'e' => ones <= 1,
            'E' => ones <= 2,
            'g' => zeros == 1,
            'c' => !anchor || ones == 0,
            'f' => !anchor || ones <= 1,
            'F' => !anchor || ones <= 2,
            other => panic!("unexpected letter {other}"),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn expansion_matches_definitions(tokens in tokens()) {
        let row = WildcardRow::from_tokens(&tokens).unwrap();
        let w = row.width();
        let expanded = row.expand(1 << 20).unwrap();
        prop_assert_eq!(row.cardinality(), BigUint::from(expanded.len()));
        let by_definition: Vec<Bitstring> = all_bitstrings(w).filter(|x| denotes(&tokens, x)).collect();
        let mut sorted = by_definition.clone();
        sorted.sort();
        prop_assert_eq!(&expanded, &sorted);
        for x in all_bitstrings(w) {
            prop_assert_eq!(row.contains(&x).unwrap(), expanded.binary_search(&x).is_ok());
        }
    }

    #[test]
    fn text_and_json_round_trip(tokens in tokens()) {
        let row = WildcardRow::from_tokens(&tokens).unwrap();
        prop_assert_eq!(row.tokens(), tokens);
        let reparsed: WildcardRow = row.to_string().parse().unwrap();
        prop_assert_eq!(&reparsed, &row);
        let json = serde_json::to_string(&JsonRow::from(&row)).unwrap();
        let back: JsonRow = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(WildcardRow::try_from(&back).unwrap(), row);
    }

    #[test]
    fn group_ids_are_names_only(tokens in tokens(), shift in 1usize..50) {
        let row = WildcardRow::from_tokens(&tokens).unwrap();
        let renamed: Vec<String> = tokens
            .iter()
            .map(|t| match t.as_str() {
                "0" | "1" | "2" => t.clone(),
                _ => {
                    let (letter, id) = t.split_at(1);
                    format!("{letter}{}", id.parse::<usize>().unwrap() + shift)
                }
            })
            .collect();
        let other = WildcardRow::from_tokens(&renamed).unwrap();
        prop_assert_eq!(other.expand(1 << 20).unwrap(), row.expand(1 << 20).unwrap());
        prop_assert_eq!(other.canonicalize(), row.canonicalize());
    }

    #[test]
    fn pair_disjointness_and_membership(
        (a, b) in (1usize..=12).prop_flat_map(|w| (tokens_of_width(w), tokens_of_width(w)))
    ) {
        let ra = WildcardRow::from_tokens(&a).unwrap();
        let w = ra.width();
        let rb = WildcardRow::from_tokens(&b).unwrap();
        let fam = RowFamily::new(w, vec![ra.clone(), rb.clone()], false).unwrap();
        let disjoint = fam.pairwise_disjoint(1 << 20).unwrap();
        let ea = ra.expand(1 << 20).unwrap();
        let eb = rb.expand(1 << 20).unwrap();
        prop_assert_eq!(disjoint, !ea.iter().any(|x| eb.binary_search(x).is_ok()));
        let union = fam.expand(1 << 20).unwrap();
        for x in all_bitstrings(w) {
            prop_assert_eq!(fam.contains(&x).unwrap(), union.binary_search(&x).is_ok());
        }
    }
}

#[test]
fn malformed_rows_are_rejected() {
    for bad in ["n1 2", "a1 2", "N1 N1", "x 2", "1 3", "c1 c1"] {
        assert!(bad.parse::<WildcardRow>().is_err(), "{bad}");
    }
}

#[test]
fn table_one_cardinalities() {
    let sizes = [
        ("2 0 2 2 2 2 2 2 2", 256u32),
        ("n1 1 2 n1 2 2 2 2 0", 96),
        ("n1 1 n3 n1 n2 n3 2 n2 1", 54),
        ("1 1 2 1 0 2 2 2 0", 16),
        ("1 1 n2 1 0 n2 n1 n1 1", 9),
    ];
    let mut total = BigUint::from(0u32);
    for (s, n) in sizes {
        let row: WildcardRow = s.parse().unwrap();
        assert_eq!(row.cardinality(), BigUint::from(n), "{s}");
        total += row.cardinality();
    }
    assert_eq!(total, BigUint::from(431u32));
}
