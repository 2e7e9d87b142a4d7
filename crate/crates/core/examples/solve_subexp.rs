//! Decides a random instance with the subexponential solver and checks the witness.

use std::time::Instant;

use udg_steiner::cliquegrid::compute_representation;
use udg_steiner::geometry::build_intersection_graph;
use udg_steiner::instance_gen::random_instance;
use udg_steiner::oracle::verify_tree;
use udg_steiner::subexp::solve_subexp;

fn main() -> udg_steiner::Result<()> {
    for seed in 0..5 {
        let inst = random_instance(40, 4, 5, 50, 6, seed)?;
        let g = build_intersection_graph(&inst);
        let repr = compute_representation(&inst)?;
        let start = Instant::now();
        let out = solve_subexp(&g, &repr, inst.k)?;
        let took = start.elapsed();
        match out.answer.tree() {
            Some(tree) => println!(
                "seed {seed}: yes with {} Steiner vertices ({:?}), {} states, {took:.1?}",
                tree.steiner_count(),
                verify_tree(&g, inst.k, tree),
                out.states
            ),
            None => println!("seed {seed}: no, {} states, {took:.1?}", out.states),
        }
    }
    Ok(())
}
