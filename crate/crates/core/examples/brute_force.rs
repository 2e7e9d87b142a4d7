//! The exhaustive oracle: decision, minimum and tree checking.

use udg_steiner::geometry::build_intersection_graph;
use udg_steiner::instance_gen::random_instance;
use udg_steiner::oracle::{brute_force_decide, brute_force_min, verify_tree};
use udg_steiner::SteinerTree;

fn main() -> udg_steiner::Result<()> {
    let inst = random_instance(12, 4, 2, 50, 9, 3)?;
    let g = build_intersection_graph(&inst);
    println!("minimum Steiner vertices: {:?}", brute_force_min(&g)?);
    for k in 0..=4 {
        let out = brute_force_decide(&g, k)?;
        println!("k = {k}: {} after {} subsets", if out.answer.is_yes() { "yes" } else { "no" }, out.states);
    }
    // a hand-made bogus tree
    let bogus = SteinerTree { edges: vec![(0, 1)], steiner: vec![] };
    println!("bogus tree: {:?}", verify_tree(&g, 4, &bogus));
    Ok(())
}
