//! Contracts terminal components and runs Dreyfus-Wagner on a large instance.

use std::time::Instant;

use udg_steiner::cliquegrid::compute_representation;
use udg_steiner::fpt::{contract_components, solve_fpt};
use udg_steiner::geometry::build_intersection_graph;
use udg_steiner::instance_gen::random_instance;
use udg_steiner::oracle::verify_tree;

fn main() -> udg_steiner::Result<()> {
    let inst = random_instance(2000, 12, 400, 450, 10, 8)?;
    let g = build_intersection_graph(&inst);
    let repr = compute_representation(&inst)?;
    let contracted = contract_components(&g);
    println!(
        "n = {}, edges = {}, terminal components q = {}",
        g.n(),
        g.edge_count(),
        contracted.q()
    );
    let start = Instant::now();
    let out = solve_fpt(&g, &repr, inst.k)?;
    println!("{:.2?}, {} table entries", start.elapsed(), out.states);
    if let Some(tree) = out.answer.tree() {
        println!(
            "yes: {} Steiner vertices, {} edges, verify {:?}",
            tree.steiner_count(),
            tree.edges.len(),
            verify_tree(&g, inst.k, tree)
        );
    } else {
        println!("no");
    }
    Ok(())
}
