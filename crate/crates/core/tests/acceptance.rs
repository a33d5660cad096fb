//! Acceptance criteria, each checked at exact tolerance. Prints one line per
//! criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wildcard_enum::families::{self, CycleClass, FamilyKind};
use wildcard_enum::graph::all_chordless_cycles;
use wildcard_enum::horn::{enumerate_horn_models, enumerate_min_ones, enumerate_noncovers, good_sons};
use wildcard_enum::oracle::{self, PackingKind};
use wildcard_enum::packings::{self, Partition};
use wildcard_enum::{Bitstring, Graph, HornClause, HornCnf, RowFamily, SetFamily, WildcardRow};

const CAP: usize = 1 << 20;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expand(fam: &RowFamily) -> Vec<Bitstring> {
    fam.expand(CAP).expect("within cap")
}

fn same_as_oracle(fam: &RowFamily, reference: &[Bitstring], what: &str) -> Result<(), String> {
    let cmp = oracle::compare_family(fam, reference, CAP).map_err(|e| e.to_string())?;
    ensure(cmp.equal && !cmp.overlapping, || {
        format!(
            "{what}: engine {} vs oracle {}, witness {:?}, overlapping {}",
            cmp.family_size,
            cmp.reference_size,
            cmp.witness().map(|w| w.to_string()),
            cmp.overlapping
        )
    })
}

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn one_based(sets: &[&[usize]]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|&p| p - 1).collect()).collect()
}

/// The four sets whose noncovers have 431 members.
fn table_one_sets() -> Vec<Vec<usize>> {
    one_based(&[&[1, 2, 4, 5], &[1, 2, 4, 7, 8, 9], &[2, 5, 8, 9], &[2, 3, 6, 9]])
}

fn criterion_1() -> Outcome {
    let sets = table_one_sets();
    let fam = enumerate_noncovers(&SetFamily::new(9, sets.clone()).unwrap());
    let total = fam.cardinality().unwrap();
    ensure(total == BigUint::from(431u32), || format!("total {total}"))?;
    ensure(fam.pairwise_disjoint(CAP).unwrap(), || "rows overlap".into())?;
    let brute = oracle::brute_models(9, |x| sets.iter().all(|a| a.iter().any(|&p| !x[p]))).unwrap();
    same_as_oracle(&fam, &brute, "noncovers")?;
    Ok(format!("{} rows, total {total}, brute force {}", fam.len(), brute.len()))
}

fn criterion_2() -> Outcome {
    let cnf: HornCnf = fixture("eq1.horn").parse().map_err(|e| format!("{e}"))?;
    let explicit = HornCnf::new(
        9,
        table_one_sets().into_iter().map(HornClause::negative).collect(),
    )
    .unwrap();
    ensure(cnf == explicit, || "fixture differs from the four negative clauses".into())?;
    let models = enumerate_horn_models(&cnf);
    ensure(models.satisfiable, || "reported unsatisfiable".into())?;
    let noncovers = enumerate_noncovers(&SetFamily::new(9, table_one_sets()).unwrap());
    let a = expand(&models.family);
    let b = expand(&noncovers);
    ensure(a == b, || format!("{} Horn models vs {} noncovers", a.len(), b.len()))?;
    ensure(a.len() == 431, || format!("{} models", a.len()))?;
    Ok(format!("{} models, identical to the noncover set", a.len()))
}

fn criterion_3() -> Outcome {
    let g: Graph = fixture("g3.graph").parse().map_err(|e| format!("{e}"))?;
    let expected: BTreeSet<Vec<usize>> = one_based(&[
        &[1, 2, 4, 5],
        &[1, 2, 4, 7, 8, 9],
        &[2, 5, 8, 9],
        &[2, 3, 6, 9],
        &[4, 5, 7],
        &[5, 7, 8],
    ])
    .into_iter()
    .collect();
    let cycles = all_chordless_cycles(&g);
    let found: BTreeSet<Vec<usize>> = cycles.iter().map(|c| c.vertices.clone()).collect();
    assert!(
        cycles.len() == 6 && found == expected,
        "fixture gate: the 9-vertex graph does not have the six expected chordless cycles: {found:?}"
    );
    let fam = families::enumerate_cycle_restricted(&g, CycleClass::Long);
    let total = fam.cardinality().unwrap();
    ensure(total == BigUint::from(431u32), || format!("total {total}"))?;
    let big = Bitstring::from_positions(9, [0, 2, 3, 4, 5, 6, 7, 8]);
    ensure(fam.contains(&big).unwrap(), || "{1,3,4,5,6,7,8,9} missing".into())?;
    let long: Vec<&Vec<usize>> = found.iter().filter(|c| c.len() >= 4).collect();
    let members = expand(&fam);
    ensure(
        members.iter().all(|x| long.iter().all(|c| c.iter().any(|&p| !x.get(p)))),
        || "a member contains a long chordless cycle".into(),
    )?;
    let brute = oracle::oracle_subsets(&g, FamilyKind::Chordal).map_err(|e| e.to_string())?;
    same_as_oracle(&fam, &brute, "chordal")?;
    Ok(format!("gate ok (6 cycles), total {total}, contains {{1,3,4,5,6,7,8,9}}"))
}

fn criterion_4() -> Outcome {
    // r s t u v w x y
    // 0 1 2 3 4 5 6 7
    let triangles: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 2, 3],
        vec![0, 2, 6],
        vec![0, 3, 6],
        vec![0, 6, 7],
        vec![1, 2, 3],
        vec![2, 3, 4],
        vec![2, 3, 5],
        vec![2, 3, 6],
        vec![2, 4, 5],
        vec![2, 5, 6],
        vec![3, 4, 5],
        vec![3, 5, 6],
    ];
    ensure(triangles.len() == 14, || "fixture must list 14 triangles".into())?;
    let fam = enumerate_noncovers(&SetFamily::new(8, triangles.clone()).unwrap());
    let total = fam.cardinality().unwrap();
    ensure(total == BigUint::from(110u32), || format!("total {total}"))?;
    let brute =
        oracle::brute_models(8, |x| triangles.iter().all(|t| t.iter().any(|&p| !x[p]))).unwrap();
    same_as_oracle(&fam, &brute, "triangle noncovers")?;
    Ok(format!("total {total}, brute force {}", brute.len()))
}

/// The look-ahead formula over x1..x7, 0-based.
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

fn criterion_5a() -> Outcome {
    let cnf = lookahead_formula();
    let r: WildcardRow = "2 2 2 2 0 1 1".parse().unwrap();
    let good = good_sons(&cnf, &r, 2);
    let shown: Vec<String> = good
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    ensure(good.len() == 3, || {
        format!(
            "required 3 good pairs, found {} ({}); every pair mixing {{1,2}} with {{3,4}}, {{1,4}} included, leaves an unsatisfiable residual formula",
            good.len(),
            shown.join(" ")
        )
    })?;
    Ok(format!("3 good pairs: {}", shown.join(" ")))
}

fn criterion_5b() -> Outcome {
    let cnf = lookahead_formula();
    let k = 4;
    let got = enumerate_min_ones(&cnf, k, 2).map_err(|e| e.to_string())?;
    ensure(got.satisfiable, || "reported unsatisfiable".into())?;
    let brute = oracle::brute_models(7, |x| {
        cnf.is_satisfied_by(x) && x.iter().filter(|&&b| b).count() >= k
    })
    .unwrap();
    same_as_oracle(&got.family, &brute, "Mod(F, >=4)")?;
    let r: WildcardRow = "2 2 2 2 0 1 1".parse().unwrap();
    let in_r: Vec<&Bitstring> = brute.iter().filter(|x| r.contains(x).unwrap()).collect();
    Ok(format!(
        "union equals brute-force Mod(F, >=4) ({} members, {} inside r)",
        brute.len(),
        in_r.len()
    ))
}

fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

fn packing_matches_oracle(g: &Graph, kind: PackingKind) -> Result<usize, String> {
    let fam = match kind {
        PackingKind::CliPac => packings::enumerate_clipacs(g),
        PackingKind::ConnPac => packings::enumerate_connpacs(g),
    };
    let parts = oracle::oracle_partitions(g, kind).map_err(|e| e.to_string())?;
    let reference: Vec<Bitstring> = parts
        .iter()
        .map(|p| {
            Bitstring::from_positions(g.edge_count(), packings::edge_set_of_partition(g, p).unwrap())
        })
        .collect();
    same_as_oracle(&fam, &reference, &format!("{kind:?}"))?;
    Ok(parts.len())
}

fn criterion_6() -> Outcome {
    for n in 3..=10 {
        let total = packings::enumerate_connpacs(&Graph::path(n)).cardinality().unwrap();
        ensure(total == BigUint::from(1u64 << (n - 1)), || format!("path {n}: {total}"))?;
    }
    let expected_bell = [5u64, 15, 52, 203];
    for (n, &b) in (3..=6).zip(&expected_bell) {
        ensure(bell(n) == b, || format!("Bell({n}) reference"))?;
        let total = packings::enumerate_clipacs(&Graph::complete(n)).cardinality().unwrap();
        ensure(total == BigUint::from(b), || format!("K{n}: {total}"))?;
    }
    let c4 = Graph::cycle(4);
    let conn = packing_matches_oracle(&c4, PackingKind::ConnPac)?;
    let cli = packing_matches_oracle(&c4, PackingKind::CliPac)?;
    ensure(conn == 12 && cli == 7, || format!("4-cycle: {conn} / {cli}"))?;
    Ok("paths 2^(n-1) for n=3..10, K_n Bell for n=3..6, 4-cycle 12/7".into())
}

fn criterion_7() -> Outcome {
    let mut fib = vec![0u64, 1, 1];
    while fib.len() < 20 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    for p in 1..=15 {
        let g = Graph::path(p);
        let fam = families::enumerate_anticliques(&g);
        let total = fam.cardinality().unwrap();
        ensure(total == BigUint::from(fib[p + 2]), || format!("p={p}: {total} vs {}", fib[p + 2]))?;
        let brute = oracle::oracle_subsets(&g, FamilyKind::Anticliques).map_err(|e| e.to_string())?;
        same_as_oracle(&fam, &brute, &format!("anticliques p={p}"))?;
    }
    Ok("F(p+2) for p=1..15, equal to the oracle".into())
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.15..0.75);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::with_vertices(n, &edges).unwrap()
}

fn random_connected_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let g = random_graph(rng, max_n);
        if g.is_connected() {
            return g;
        }
    }
}

fn cycle_edges(g: &Graph, order: &[usize]) -> Vec<usize> {
    (0..order.len())
        .map(|i| {
            let (u, v) = (order[i], order[(i + 1) % order.len()]);
            g.edge_index(u.min(v), u.max(v)).unwrap()
        })
        .collect()
}

fn subset(a: &[Bitstring], b: &[Bitstring]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let graphs = 120;
    let mut meets = 0;
    for i in 0..graphs {
        let g = random_graph(&mut rng, 8);
        let tag = |what: &str| format!("graph {i} ({} vertices, edges {:?}): {what}", g.vertex_count(), g.edges());

        let mut expanded = std::collections::BTreeMap::new();
        for kind in FamilyKind::ALL {
            let fam = families::enumerate(&g, kind);
            ensure(fam.pairwise_disjoint(CAP).unwrap(), || tag(&format!("{kind} rows overlap")))?;
            let brute = oracle::oracle_subsets(&g, kind).map_err(|e| e.to_string())?;
            same_as_oracle(&fam, &brute, &tag(kind.token()))?;
            expanded.insert(kind, expand(&fam));
        }
        let chain = [FamilyKind::MoConvex, FamilyKind::GeConvex, FamilyKind::Metric, FamilyKind::Connected];
        for w in chain.windows(2) {
            ensure(subset(&expanded[&w[0]], &expanded[&w[1]]), || {
                tag(&format!("{} not inside {}", w[0], w[1]))
            })?;
        }

        for kind in [PackingKind::CliPac, PackingKind::ConnPac] {
            let fam = match kind {
                PackingKind::CliPac => packings::enumerate_clipacs(&g),
                PackingKind::ConnPac => packings::enumerate_connpacs(&g),
            };
            ensure(fam.pairwise_disjoint(CAP).unwrap(), || tag(&format!("{kind:?} rows overlap")))?;
            packing_matches_oracle(&g, kind).map_err(|e| tag(&e))?;
        }

        let clcs: Vec<Vec<usize>> = all_chordless_cycles(&g).into_iter().map(|c| c.edges).collect();
        let cycles: Vec<Vec<usize>> = oracle::all_cycles(&g)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|c| cycle_edges(&g, c))
            .collect();
        let outside = |c: &[usize], k: &Bitstring| c.iter().filter(|&&e| !k.get(e)).count();
        for k in expand(&packings::enumerate_connpacs(&g)) {
            ensure(clcs.iter().all(|c| outside(c, &k) != 1), || tag(&format!("closed {k} misses one clc edge")))?;
            ensure(cycles.iter().all(|c| outside(c, &k) != 1), || tag(&format!("closed {k} misses one cycle edge")))?;
        }

        let conn = oracle::oracle_partitions(&g, PackingKind::ConnPac).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            let a = &conn[rng.gen_range(0..conn.len())];
            let b = &conn[rng.gen_range(0..conn.len())];
            let m = packings::meet_connpacs(&g, a, b).map_err(|e| tag(&e.to_string()))?;
            ensure(conn.contains(&m), || tag("meet is not a connected packing"))?;
            ensure(m.is_finer_than(a) && m.is_finer_than(b), || tag("meet is not finer than both"))?;
            let below: Vec<&Partition> =
                conn.iter().filter(|p| p.is_finer_than(a) && p.is_finer_than(b)).collect();
            ensure(below.iter().all(|p| p.is_finer_than(&m)), || tag("meet is not the coarsest"))?;
            meets += 1;
        }
    }
    Ok(format!(
        "{graphs} random graphs, 12 families + 2 packings vs oracle, chain, disjointness, cycle conditions, {meets} meets"
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for n in 2..=8 {
        // random tree: attach each vertex to an earlier one
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let tree = Graph::with_vertices(n, &edges).unwrap();
        let mut cuts = packings::minimal_cutsets(&tree).map_err(|e| e.to_string())?;
        cuts.sort();
        let singles: Vec<Vec<usize>> = (0..tree.edge_count()).map(|e| vec![e]).collect();
        ensure(cuts == singles, || format!("tree {edges:?}: {cuts:?}"))?;
    }
    for n in 3..=8 {
        let c = Graph::cycle(n);
        let mut cuts = packings::minimal_cutsets(&c).map_err(|e| e.to_string())?;
        cuts.sort();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                pairs.push(vec![a, b]);
            }
        }
        ensure(cuts == pairs, || format!("{n}-cycle: {} cutsets", cuts.len()))?;
    }
    let mut checked = 0;
    for _ in 0..40 {
        let g = random_connected_graph(&mut rng, 7);
        let m = g.edge_count();
        let hyper: Vec<Vec<usize>> = packings::edge_hyperplanes(&g).map_err(|e| e.to_string())?;
        for k in expand(&packings::enumerate_connpacs(&g)) {
            if k.count_ones() == m {
                continue;
            }
            let mut meet = Bitstring::from_positions(m, 0..m);
            for h in &hyper {
                let hb = Bitstring::from_positions(m, h.iter().copied());
                if k.is_subset_of(&hb) {
                    meet = Bitstring(meet.0.iter().zip(&hb.0).map(|(&a, &b)| a && b).collect());
                }
            }
            ensure(meet == k, || format!("edges {:?}: flat {k} is not a meet of hyperplanes", g.edges()))?;
            checked += 1;
        }
    }
    Ok(format!("trees n=2..8, cycles n=3..8, {checked} flats as hyperplane meets"))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1", "noncovers of the four-set fixture", criterion_1),
        ("2", "Horn models equal the noncovers", criterion_2),
        ("3", "chordal sets of the 9-vertex graph", criterion_3),
        ("4", "triangle-free sets over 8 positions", criterion_4),
        ("5a", "look-ahead good pair count", criterion_5a),
        ("5b", "look-ahead union equals Mod(F, >=k)", criterion_5b),
        ("6", "packing closed forms", criterion_6),
        ("7", "Fibonacci law for path anticliques", criterion_7),
        ("8", "random graph property corpus", criterion_8),
        ("9", "hyperplanes and minimal cutsets", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, run) in criteria {
        let outcome = match panic::catch_unwind(AssertUnwindSafe(run)) {
            Ok(outcome) => outcome,
            Err(payload) => Err(payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        match outcome {
            Ok(detail) => println!("criterion {id} [{name}]: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} [{name}]: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
