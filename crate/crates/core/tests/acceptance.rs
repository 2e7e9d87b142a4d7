//! Acceptance criteria 1 to 9. Each test prints one `criterion N: PASS|FAIL`
//! line before asserting, so `cargo test --test acceptance -- --nocapture`
//! gives the full report.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{connected_graphs_up_to_iso, graph_of, max_degree, random_graph, route_embedding, small_case};
use udg_steiner::cliquegrid::{cell_graph, compute_representation, validate_representation};
use udg_steiner::fpt::{contract_components, dreyfus_wagner, gate, solve_fpt, terminal_components};
use udg_steiner::gadgets::{
    cvc_brute, cvc_gadget, grid_tiling_brute, grid_tiling_gadget, separation_checks, GridTilingInstance,
};
use udg_steiner::geometry::{build_intersection_graph, Disk, DiskInstance};
use udg_steiner::instance_gen::random_instance;
use udg_steiner::oracle::{brute_force_decide, brute_force_min, verify_tree};
use udg_steiner::pathdecomp::validate_pathdecomp_within;
use udg_steiner::subexp::{enumerate_good_family, label_count, label_cpd, solve_subexp};
use udg_steiner::{fpt, oracle, Outcome};

const C1_INSTANCES: u64 = 500;
const C2_GRAPHS: u64 = 200;
const C2_TOLERANCE: usize = 0;
const C3_INSTANCES: u64 = 200;
const C3_MAX_CELL_DEGREE: usize = 24;
const C4_INSTANCES_PER_TARGET: u64 = 17;
const C4_TARGETS: [usize; 3] = [4, 9, 16];
const C4_STRIP_FACTOR: usize = 6;
const C4_NICE_FACTOR: usize = 7;
const C6_MAX_N: usize = 5;
const C6_ROUTING_SEEDS: u64 = 50;
const C7_INSTANCES: u64 = 24;
const C8_FPT_N: usize = 2000;
const C8_FPT_MAX_Q: usize = 12;
const C8_FPT_BUDGET: Duration = Duration::from_secs(60);
const C8_SUBEXP_N: usize = 40;
const C8_SUBEXP_BUDGET: Duration = Duration::from_secs(600);
const C9_REPEATS: usize = 3;

fn report(id: u32, ok: bool, detail: &str) {
    println!("criterion {id}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
}

#[test]
fn criterion_1_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut yes = 0;
    for seed in 0..C1_INSTANCES {
        let inst = small_case(1000 + seed);
        let g = graph_of(&inst);
        let repr = compute_representation(&inst).unwrap();
        let truth = brute_force_decide(&g, inst.k).unwrap().answer.is_yes();
        yes += truth as usize;
        for (name, out) in [
            ("fpt", solve_fpt(&g, &repr, inst.k)),
            ("subexp", solve_subexp(&g, &repr, inst.k)),
        ] {
            match out {
                Err(e) => failures.push(format!("{name} seed {seed}: {e}")),
                Ok(o) if o.answer.is_yes() != truth => failures.push(format!("{name} seed {seed}: wrong answer")),
                Ok(o) => {
                    if let Some(tree) = o.answer.tree() {
                        if let Err(d) = verify_tree(&g, inst.k, tree) {
                            failures.push(format!("{name} seed {seed}: {d}"));
                        }
                    }
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(
        1,
        ok,
        &format!("{C1_INSTANCES} instances, {yes} yes, {} failures", failures.len()),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_2_dreyfus_wagner_optimal() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..C2_GRAPHS {
        let n = rng.gen_range(2..=12);
        let t = rng.gen_range(1..=n.min(5));
        let p = rng.gen_range(0.15..0.6);
        let g = random_graph(n, p, t, seed);
        let dw = dreyfus_wagner(&g, &g.terminals()).unwrap();
        let best = brute_force_min(&g).unwrap();
        let expected = best.map(|s| s + t - 1);
        let got = dw.tree.as_ref().map(Vec::len);
        let matches = match (expected, got) {
            (Some(e), Some(x)) => e.abs_diff(x) <= C2_TOLERANCE,
            (None, None) => true,
            _ => false,
        };
        if !matches {
            failures.push(format!("seed {seed}: expected {expected:?} edges, got {got:?}"));
        }
    }
    let ok = failures.is_empty();
    report(2, ok, &format!("{C2_GRAPHS} graphs, tolerance {C2_TOLERANCE}"));
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_3_representation() {
    let mut failures = Vec::new();
    let mut worst = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..C3_INSTANCES {
        let n = rng.gen_range(1..=300);
        let radius = rng.gen_range(1..=20);
        let box_side = rng.gen_range(0..=400);
        let inst = random_instance(n, 1, 0, box_side, radius, seed).unwrap();
        let g = graph_of(&inst);
        let repr = compute_representation(&inst).unwrap();
        let rep = validate_representation(&g, &repr);
        if !rep.is_valid() {
            failures.push(format!("seed {seed}: {rep:?}"));
        }
        let deg = cell_graph(&g, &repr).unwrap().max_degree();
        worst = worst.max(deg);
        if deg > C3_MAX_CELL_DEGREE {
            failures.push(format!("seed {seed}: cell degree {deg}"));
        }
    }
    let ok = failures.is_empty();
    report(
        3,
        ok,
        &format!("{C3_INSTANCES} instances, max cell degree {worst} <= {C3_MAX_CELL_DEGREE}"),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_4_decomposition_width() {
    let mut failures = Vec::new();
    let mut members_checked = 0usize;
    let mut instances = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for target in C4_TARGETS {
        for seed in 0..C4_INSTANCES_PER_TARGET {
            let t = rng.gen_range(1..=target.min(6));
            let k = target - t;
            let n = rng.gen_range(t.max(8)..=24);
            let inst = random_instance(n, t, k, 60, rng.gen_range(4..=9), seed).unwrap();
            let g = graph_of(&inst);
            let repr = compute_representation(&inst).unwrap();
            let l = label_count(t, k);
            instances += 1;
            let members_by_cell = repr.members();
            for label in 0..l {
                let w = label_cpd(&repr, &members_by_cell, l, label).unwrap().width_cells();
                if w > C4_STRIP_FACTOR * l {
                    failures.push(format!("t+k={target} seed {seed} label {label}: strip bag {w}"));
                }
            }
            let family = enumerate_good_family(&g, &repr, k).unwrap();
            for m in &family {
                members_checked += 1;
                let widest = m.ncpd.nodes.iter().map(|n| n.cells.len()).max().unwrap_or(0);
                let nice = m.ncpd.width_cells(&repr);
                if widest > C4_STRIP_FACTOR * l || nice > C4_NICE_FACTOR * l {
                    failures.push(format!("t+k={target} seed {seed}: bag {widest}, nice {nice}"));
                }
                if m.ncpd.check_structure().is_err() || !validate_pathdecomp_within(&g, &m.host, &repr, &*m.ncpd) {
                    failures.push(format!("t+k={target} seed {seed}: malformed decomposition"));
                }
            }
        }
    }
    let ok = failures.is_empty() && instances >= 50;
    report(
        4,
        ok,
        &format!("{instances} instances, {members_checked} members, factors {C4_STRIP_FACTOR}/{C4_NICE_FACTOR}"),
    );
    assert!(ok, "{failures:?}");
}

/// Terminals at `6i` and Steiner disks at `6i + 3`, radius 2: a path with
/// `count` terminal components that needs `count - 1` Steiner vertices.
fn alternating_path(count: usize, k: usize) -> DiskInstance {
    let mut disks = Vec::new();
    for i in 0..count {
        disks.push(Disk::new(disks.len() as u64, 6 * i as i128, 0, 2, true));
        if i + 1 < count {
            disks.push(Disk::new(disks.len() as u64, 6 * i as i128 + 3, 0, 2, false));
        }
    }
    DiskInstance::new(1, disks, k).unwrap()
}

#[test]
fn criterion_5_gate_soundness() {
    let mut failures = Vec::new();
    let mut decided = 0;
    for seed in 0..C1_INSTANCES {
        let inst = small_case(1000 + seed);
        let g = graph_of(&inst);
        let q = terminal_components(&g).len();
        if let Some(claim) = gate(q, inst.k) {
            decided += 1;
            if claim != brute_force_decide(&g, inst.k).unwrap().answer.is_yes() {
                failures.push(format!("seed {seed}: q {q} k {}", inst.k));
            }
        }
    }
    let inst = alternating_path(25, 1);
    let g = build_intersection_graph(&inst);
    let q = contract_components(&g).q();
    let gated = gate(q, 1) == Some(false);
    let oracle_no = !brute_force_decide(&g, 1).unwrap().answer.is_yes();
    let fpt_no = !fpt::solve_fpt_unchecked(&g, 1).unwrap().answer.is_yes();
    if q != 25 || !gated || !oracle_no || !fpt_no {
        failures.push(format!("constructed instance: q {q}, gated {gated}, oracle no {oracle_no}"));
    }
    let ok = failures.is_empty();
    report(
        5,
        ok,
        &format!("gate decided {decided} corpus instances; q = 25, k = 1 instance rejected"),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_6_cvc_reduction() {
    let mut failures = Vec::new();
    let mut skipped = Vec::new();
    let mut graphs = 0;
    for (idx, h) in connected_graphs_up_to_iso(C6_MAX_N).into_iter().enumerate() {
        let (n, m) = (h.n(), h.edge_count());
        if max_degree(&h) > 4 || (n >= 3 && m > 3 * n - 6) {
            continue;
        }
        if m == 0 {
            // no edges to build paths from, so there is no gadget to ask
            skipped.push(format!("n={n} m=0"));
            continue;
        }
        graphs += 1;
        let Some(emb) = (0..C6_ROUTING_SEEDS).find_map(|s| route_embedding(&h, s)) else {
            failures.push(format!("graph {idx} (n={n} m={m}): no embedding found"));
            continue;
        };
        for k in 0..=n {
            let (inst, budget, _) = cvc_gadget(&emb, k).unwrap();
            let g = build_intersection_graph(&inst);
            let expected = cvc_brute(&h, k);
            let got = brute_force_decide(&g, budget).unwrap().answer.is_yes();
            if got != expected {
                failures.push(format!(
                    "graph {idx} (n={n} m={m}) k={k}: cvc {expected}, gadget {got} at budget {budget}"
                ));
            }
        }
    }
    let ok = failures.is_empty();
    report(
        6,
        ok,
        &format!(
            "{graphs} graphs, skipped {skipped:?}, {} disagreements {failures:?}",
            failures.len()
        ),
    );
    assert!(ok, "{failures:?}");
}

fn random_grid_tiling(seed: u64) -> GridTilingInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: u32 = rng.gen_range(2..=3);
    let mut pairs = Vec::new();
    for x in 1..=2 {
        for y in 1..=2 {
            for _ in 0..rng.gen_range(1..=3) {
                pairs.push(((x, y), (rng.gen_range(1..=n), rng.gen_range(1..=n))));
            }
        }
    }
    GridTilingInstance::new(n, 2, pairs).unwrap()
}

#[test]
fn criterion_7_grid_tiling_reduction() {
    let mut failures = Vec::new();
    let mut counts = BTreeMap::new();
    for seed in 0..C7_INSTANCES {
        let gt = random_grid_tiling(seed);
        let expected = grid_tiling_brute(&gt);
        *counts.entry(expected).or_insert(0) += 1;
        let (inst, budget, _) = grid_tiling_gadget(&gt).unwrap();
        assert_eq!(budget, 4);
        let got = brute_force_decide(&build_intersection_graph(&inst), budget)
            .unwrap()
            .answer
            .is_yes();
        if got != expected {
            failures.push(format!("seed {seed}: brute {expected}, gadget {got}"));
        }
    }
    for n in 1..=3 {
        if let Err(e) = separation_checks(n) {
            failures.push(format!("separation at n={n}: {e}"));
        }
    }
    let mixed = counts.len() == 2;
    let ok = failures.is_empty() && mixed;
    report(
        7,
        ok,
        &format!(
            "{C7_INSTANCES} instances, {} solvable, {} unsolvable",
            counts.get(&true).unwrap_or(&0),
            counts.get(&false).unwrap_or(&0)
        ),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_8_scaling() {
    let mut failures = Vec::new();

    let inst = random_instance(C8_FPT_N, C8_FPT_MAX_Q, 400, 450, 10, 8).unwrap();
    let g = graph_of(&inst);
    let repr = compute_representation(&inst).unwrap();
    let q = terminal_components(&g).len();
    let start = Instant::now();
    let out = solve_fpt(&g, &repr, inst.k).unwrap();
    let fpt_time = start.elapsed();
    if q > C8_FPT_MAX_Q || fpt_time > C8_FPT_BUDGET {
        failures.push(format!("fpt: q {q}, {fpt_time:?}"));
    }
    if let Some(tree) = out.answer.tree() {
        if verify_tree(&g, inst.k, tree).is_err() {
            failures.push("fpt witness rejected".into());
        }
    }

    let mut subexp_time = Duration::ZERO;
    let mut subexp_yes = 0;
    let cases = [(4, 5, 50, 6, 0), (4, 5, 40, 5, 2), (4, 5, 60, 8, 3), (2, 7, 50, 6, 1), (6, 3, 40, 5, 4)];
    for (t, k, box_side, radius, seed) in cases {
        let inst = random_instance(C8_SUBEXP_N, t, k, box_side, radius, seed).unwrap();
        let g = graph_of(&inst);
        let repr = compute_representation(&inst).unwrap();
        let start = Instant::now();
        let sub = solve_subexp(&g, &repr, inst.k).unwrap();
        let took = start.elapsed();
        subexp_time = subexp_time.max(took);
        subexp_yes += sub.answer.is_yes() as usize;
        if took > C8_SUBEXP_BUDGET {
            failures.push(format!("subexp seed {seed}: {took:?}"));
        }
        if sub.answer.is_yes() != fpt::solve_dw(&g, inst.k).unwrap().answer.is_yes() {
            failures.push(format!("subexp seed {seed} disagrees with Dreyfus-Wagner"));
        }
    }

    let ok = failures.is_empty();
    report(
        8,
        ok,
        &format!(
            "fpt n={C8_FPT_N} q={q} yes={} in {fpt_time:.2?} (< {C8_FPT_BUDGET:?}); subexp n={C8_SUBEXP_N} t+k=9 {subexp_yes}/{} yes, slowest {subexp_time:.2?} (< {C8_SUBEXP_BUDGET:?})",
            out.answer.is_yes(),
            cases.len()
        ),
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_9_determinism() {
    type Solver = fn(&DiskInstance) -> Outcome;
    let solvers: [(&str, Solver); 4] = [
        ("oracle", |i| oracle::brute_force_decide(&graph_of(i), i.k).unwrap()),
        ("dw", |i| fpt::solve_dw(&graph_of(i), i.k).unwrap()),
        ("fpt", |i| solve_fpt(&graph_of(i), &compute_representation(i).unwrap(), i.k).unwrap()),
        ("subexp", |i| solve_subexp(&graph_of(i), &compute_representation(i).unwrap(), i.k).unwrap()),
    ];
    let mut failures = Vec::new();
    let mut runs = 0;
    for seed in 0..40 {
        let inst = small_case(9000 + seed);
        for (name, solve) in &solvers {
            let first = solve(&inst);
            for _ in 1..C9_REPEATS {
                runs += 1;
                if solve(&inst) != first {
                    failures.push(format!("{name} seed {seed}"));
                }
            }
        }
    }
    let ok = failures.is_empty();
    report(9, ok, &format!("{runs} repeated runs, {C9_REPEATS} per solver and instance"));
    assert!(ok, "{failures:?}");
}
