//! Release checklist for the solvers. Every test here pits a fast algorithm
//! against an independent brute-force route (or an exhaustively checked
//! algebraic law) and prints one PASS line with the measured scope, so a
//! full run documents exactly what was verified. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::sync::OnceLock;
use std::time::Instant;

use qcr::calculus::{rels, Calculus, RelSet};
use qcr::gen::{gen_random, gen_random_igsp, GenSpec, LabelDist, LabelSpace};
use qcr::ia::{solve_a3, solve_igsp, SandwichInput};
use qcr::oracle::{oracle_ia, oracle_igsp, oracle_rcc8, rcc8_scenarios, OracleBudget};
use qcr::rcc8::{restrict_odot, solve_rcc8, solve_under_order, OrderedPartition, PruneMode};
use qcr::redundancy::{generate_max_prime, is_nonredundant, nrd_value, BoundKind};
use qcr::report::{bench_csv, BenchRow};
use qcr::Qcn;

fn a3_spec(n: usize, density: f64) -> GenSpec {
    GenSpec { space: LabelSpace::A3, num_vars: n, density, dist: LabelDist::UniformNonEmpty }
}

fn rcc8_spec(n: usize, density: f64) -> GenSpec {
    GenSpec { space: LabelSpace::Rcc8, num_vars: n, density, dist: LabelDist::UniformNonEmpty }
}

/// Every nonempty union of the three fragment blocks.
fn a3_labels() -> Vec<RelSet> {
    let blocks = rels::ia::A3_BLOCKS;
    (1u8..8)
        .map(|mask| {
            let mut acc = Calculus::ia13().empty();
            for (i, b) in blocks.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    acc = acc.union(*b);
                }
            }
            acc
        })
        .collect()
}

#[test]
fn criterion_1_fragment_exhaustive_oracle_agreement() {
    let start = Instant::now();
    let labels = a3_labels();
    let budget = OracleBudget::ia_default();
    let mut checked = 0u32;
    for &l01 in &labels {
        for &l02 in &labels {
            for &l12 in &labels {
                let mut q = Qcn::new(Calculus::ia13(), &["x", "y", "z"]).unwrap();
                q.set_label(0, 1, l01);
                q.set_label(0, 2, l02);
                q.set_label(1, 2, l12);
                let fast = solve_a3(&q).unwrap().satisfiable;
                let slow = oracle_ia(&q, &budget).unwrap();
                assert_eq!(fast, slow, "disagreement on labels {l01} {l02} {l12}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 343);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, budget is 10 s");
    println!("criterion 1: PASS (343 three-variable fragment networks agree with the oracle, {elapsed:.2?})");
}

#[test]
fn criterion_2_fragment_randomized_agreement() {
    let start = Instant::now();
    let spec = a3_spec(5, 0.5);
    let budget = OracleBudget::ia_default();
    for seed in 0..1000 {
        let q = gen_random(&spec, seed);
        let fast = solve_a3(&q).unwrap().satisfiable;
        let slow = oracle_ia(&q, &budget).unwrap();
        assert_eq!(fast, slow, "disagreement at seed {seed}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, budget is 2 min");
    println!("criterion 2: PASS (1000 seeded five-variable instances agree with the oracle, {elapsed:.2?})");
}

#[test]
fn criterion_3_fragment_scaling_state_bound() {
    let n = 11;
    let bound = 4u64.pow(n as u32);
    let spec = a3_spec(n, 0.5);
    let mut rows = Vec::new();
    for seed in 0..3 {
        let q = gen_random(&spec, seed);
        let start = Instant::now();
        let out = solve_a3(&q).unwrap();
        let elapsed = start.elapsed();
        assert!(
            out.stats.enqueued <= bound,
            "seed {seed} enqueued {} states, bound is 4^{n} = {bound}",
            out.stats.enqueued
        );
        assert!(elapsed.as_secs_f64() < 60.0, "seed {seed} took {elapsed:?}, budget is 60 s");
        rows.push(BenchRow {
            calculus: "ia3".into(),
            seed,
            n,
            density: 0.5,
            satisfiable: out.satisfiable,
            millis: elapsed.as_millis(),
            work: out.stats.enqueued,
        });
    }
    print!("{}", bench_csv(&rows));
    println!("criterion 3: PASS (3 eleven-variable instances stayed within 4^11 = {bound} enqueued states)");
}

#[test]
fn criterion_4_sandwich_oracle_agreement() {
    let start = Instant::now();
    let budget = OracleBudget::ia_default();
    let mut checked = 0u32;
    for n in 2..=5 {
        for seed in 0..50 {
            let input = gen_random_igsp(n, seed);
            let fast = solve_igsp(&input).unwrap();
            let slow = oracle_igsp(&input, &budget).unwrap();
            assert_eq!(fast.satisfiable, slow, "disagreement at n={n} seed={seed}");
            checked += 1;
        }
    }
    assert_eq!(checked, 200);

    // The four-cycle is the textbook non-interval graph; it needs its chord.
    let cycle = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let bare = SandwichInput::new(4, cycle, []).unwrap();
    assert!(!solve_igsp(&bare).unwrap().satisfiable);
    assert!(!oracle_igsp(&bare, &budget).unwrap());

    let chorded = SandwichInput::new(4, cycle, [(0, 2)]).unwrap();
    let out = solve_igsp(&chorded).unwrap();
    assert!(out.satisfiable);
    assert!(oracle_igsp(&chorded, &budget).unwrap());
    assert!(
        out.realized_edges.unwrap().contains(&(0, 2)),
        "the chord must be picked up from the optional set"
    );
    let elapsed = start.elapsed();
    println!("criterion 4: PASS (200 seeded sandwich splits agree with the oracle; four-cycle fixtures hold, {elapsed:.2?})");
}

/// One solved-and-oracled RCC-8 instance, shared between criteria 5 and 6 so
/// the 3000-instance sweep runs once.
struct Rcc8Verdicts {
    n: usize,
    density: f64,
    seed: u64,
    full: bool,
    safe: bool,
    oracle: bool,
}

fn rcc8_sweep() -> &'static [Rcc8Verdicts] {
    static SWEEP: OnceLock<Vec<Rcc8Verdicts>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let budget = OracleBudget::rcc8_default();
        let mut out = Vec::with_capacity(3000);
        for n in 3..=5 {
            for &density in &[0.3, 0.7] {
                for seed in 0..500 {
                    let q = gen_random(&rcc8_spec(n, density), seed);
                    let full = solve_rcc8(&q, PruneMode::Full).unwrap();
                    let safe = solve_rcc8(&q, PruneMode::Safe).unwrap();
                    let oracle = oracle_rcc8(&q, &budget).unwrap();
                    out.push(Rcc8Verdicts {
                        n,
                        density,
                        seed,
                        full: full.satisfiable,
                        safe: safe.satisfiable,
                        oracle,
                    });
                }
            }
        }
        out
    })
}

/// The six-region example network: three regions a1, a2, a3 overlapping
/// pairwise, each a tangential part of its bi, with one cyclic shift of the
/// cross pairs pinned to the inverse direction.
fn six_region_example() -> Qcn {
    use rels::rcc8::{PO, TPP, TPP_I};
    let calc = Calculus::rcc8();
    let mut q = Qcn::new(calc, &["a1", "a2", "a3", "b1", "b2", "b3"]).unwrap();
    let a = [0, 1, 2];
    let b = [3, 4, 5];
    for i in 0..3 {
        q.set_label(a[i], b[i], TPP.union(TPP_I));
    }
    q.set_label(a[0], b[2], TPP_I);
    q.set_label(a[1], b[0], TPP_I);
    q.set_label(a[2], b[1], TPP_I);
    for i in 0..3 {
        for j in i + 1..3 {
            q.set_label(a[i], a[j], PO);
        }
    }
    q
}

#[test]
fn criterion_5_rcc8_oracle_agreement() {
    let start = Instant::now();
    let sweep = rcc8_sweep();
    assert_eq!(sweep.len(), 3000);
    for v in sweep {
        assert_eq!(
            v.full, v.oracle,
            "full pruning disagrees with the oracle at n={} density={} seed={}",
            v.n, v.density, v.seed
        );
        assert_eq!(
            v.safe, v.oracle,
            "safe pruning disagrees with the oracle at n={} density={} seed={}",
            v.n, v.density, v.seed
        );
    }

    let q = six_region_example();
    let out = solve_rcc8(&q, PruneMode::Full).unwrap();
    assert!(out.satisfiable, "the six-region example is satisfiable");
    let cert = out.certificate.expect("satisfiable runs carry a certificate");
    assert!(cert.refines(&q), "certificate refines the input");
    assert!(cert.is_closed(), "certificate is algebraically closed");
    assert!(!cert.has_empty_edge());
    for x in 0..cert.num_vars() {
        for y in x + 1..cert.num_vars() {
            assert!(cert.label(x, y).is_basic(), "certificate is atomic at ({x},{y})");
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 5: PASS (3000 seeded RCC-8 instances agree with the oracle in both prune modes; six-region example SAT with closed atomic certificate, {elapsed:.2?})");
}

#[test]
fn criterion_6_prune_safety_differential() {
    let sweep = rcc8_sweep();
    assert_eq!(sweep.len(), 3000);
    for v in sweep {
        assert_eq!(
            v.full, v.safe,
            "prune modes disagree at n={} density={} seed={}",
            v.n, v.density, v.seed
        );
    }
    println!("criterion 6: PASS (full and safe pruning returned identical verdicts on all 3000 instances)");
}

/// The classified relations with their expected closed-form row.
fn classified_table() -> Vec<(RelSet, &'static str, fn(u64) -> u64, BoundKind)> {
    use BoundKind::{Exact, LowerBound};
    let complete = |n: u64| n * (n - 1) / 2;
    let bipartite = |n: u64| (n / 2) * n.div_ceil(2);
    let hub = |n: u64| 2 * n - 4;
    let star = |n: u64| n - 1;

    let mut rows: Vec<(RelSet, &'static str, fn(u64) -> u64, BoundKind)> = Vec::new();
    {
        use rels::rcc8::*;
        for (r, name) in [(DR, "DR"), (EC, "EC"), (DC, "DC"), (PO, "PO")] {
            rows.push((r, name, complete, Exact));
        }
        for (r, name) in [(PP, "PP"), (PP_I, "PP-"), (NTPP, "NTPP"), (NTPP_I, "NTPP-")] {
            rows.push((r, name, bipartite, Exact));
        }
        for (r, name) in [(TPP, "TPP"), (TPP_I, "TPP-")] {
            rows.push((r, name, bipartite, LowerBound));
        }
        rows.push((EQ, "EQ", star, Exact));
    }
    {
        use rels::ia::*;
        for (r, name) in [
            (P, "p"),
            (PI, "p-"),
            (SUB, "sub"),
            (SUB_I, "sub-"),
            (S, "s"),
            (SI, "s-"),
            (F, "f"),
            (FI, "f-"),
            (D, "d"),
            (DI, "d-"),
        ] {
            rows.push((r, name, bipartite, Exact));
        }
        for (r, name) in [(O, "o"), (OI, "o-"), (ALPHA, "alpha"), (ALPHA_I, "alpha-"), (CAP, "cap")] {
            rows.push((r, name, bipartite, LowerBound));
        }
        for (r, name) in [(M, "m"), (MI, "m-")] {
            rows.push((r, name, hub, Exact));
        }
        rows.push((E, "e", star, Exact));
    }
    rows
}

#[test]
fn criterion_7_nonredundancy_closed_forms_and_certification() {
    let start = Instant::now();
    let table = classified_table();

    // Counts match the closed forms for every classified relation.
    for (rel, name, formula, kind) in &table {
        for n in 3..=8usize {
            let expected = formula(n as u64);
            let v = nrd_value(*rel, n).unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
            assert_eq!(v.count, expected, "{name} at n={n}");
            assert_eq!(v.kind, *kind, "{name} at n={n}");
            let wit = generate_max_prime(*rel, n).unwrap();
            let mut constrained = 0u64;
            for x in 0..wit.num_vars() {
                for y in x + 1..wit.num_vars() {
                    if wit.label(x, y) != wit.calc().full() {
                        constrained += 1;
                    }
                }
            }
            assert_eq!(constrained, expected, "{name} witness size at n={n}");
        }
    }

    // Every constraint of every witness is certified non-redundant.
    let ia_budget = OracleBudget::ia_default();
    let rcc8_budget = OracleBudget::rcc8_default();
    let mut certified = 0u64;
    for (rel, name, _, _) in &table {
        let budget = if rel.calc() == Calculus::rcc8().id() { &rcc8_budget } else { &ia_budget };
        for n in 3..=6usize {
            let wit = generate_max_prime(*rel, n).unwrap();
            for x in 0..wit.num_vars() {
                for y in x + 1..wit.num_vars() {
                    if wit.label(x, y) == wit.calc().full() {
                        continue;
                    }
                    assert!(
                        is_nonredundant(&wit, x, y, budget).unwrap(),
                        "{name} n={n}: constraint ({x},{y}) is redundant"
                    );
                    certified += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 7: PASS ({} relations match their closed forms for n in 3..=8; {certified} witness constraints certified non-redundant for n in 3..=6, {elapsed:.2?})", table.len());
}

#[test]
fn criterion_8_algebra_validation() {
    Calculus::ia13().check_coherence().expect("interval algebra coherence");
    Calculus::rcc8().check_coherence().expect("RCC-8 coherence");
    Calculus::rcc8().check_diamond_laws().expect("RCC-8 order monotonicity");
    println!("criterion 8: PASS (coherence laws hold on all 13x13 and 8x8 entries; both order monotonicity properties hold on the RCC-8 table)");
}

#[test]
fn criterion_9_order_solver_pointwise_minimality() {
    let start = Instant::now();
    let calc = Calculus::rcc8();
    let d = calc.diamond_sequence().unwrap();
    let budget = OracleBudget::rcc8_default();
    let order = OrderedPartition::empty(3)
        .then(&[0])
        .and_then(|t| t.then(&[1]))
        .and_then(|t| t.then(&[2]))
        .unwrap();
    let spec = rcc8_spec(3, 1.0);
    let mut solvable = 0u32;
    for seed in 0..2000 {
        let f = gen_random(&spec, seed);
        let state = solve_under_order(&f, &order);
        let g = restrict_odot(&f, &order);
        let scen = rcc8_scenarios(&g, &budget).unwrap();
        if scen.is_empty() {
            assert!(state.no_instance, "seed {seed}: no model exists but the solver found one");
            continue;
        }
        assert!(!state.no_instance, "seed {seed}: a model exists but the solver gave up");
        solvable += 1;
        for (k, (x, y)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            let min = d
                .iter()
                .copied()
                .find(|&r| scen.iter().any(|m| m[k] == r))
                .unwrap_or_else(|| panic!("seed {seed}: no scenario uses an order relation at ({x},{y})"));
            assert_eq!(
                state.net.label(x, y),
                calc.basic(min),
                "seed {seed}: pair ({x},{y}) is not the earliest achievable relation"
            );
        }
    }
    let elapsed = start.elapsed();
    println!("criterion 9: PASS (2000 seeded three-variable networks under a fixed strict order; {solvable} solvable, all outputs pointwise minimal, {elapsed:.2?})");
}
