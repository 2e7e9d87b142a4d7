mod common;

use common::{graph_of, small_case};
use udg_steiner::cliquegrid::compute_representation;
use udg_steiner::fpt::solve_fpt;
use udg_steiner::oracle::{brute_force_decide, verify_tree};
use udg_steiner::subexp::solve_subexp;

#[test]
fn fpt_and_subexp_match_oracle() {
    let mut yes = 0;
    for seed in 0..300 {
        let inst = small_case(seed);
        let g = graph_of(&inst);
        let repr = compute_representation(&inst).unwrap();
        let truth = brute_force_decide(&g, inst.k).unwrap().answer.is_yes();
        yes += truth as usize;
        for (name, out) in [
            ("fpt", solve_fpt(&g, &repr, inst.k).unwrap()),
            ("subexp", solve_subexp(&g, &repr, inst.k).unwrap()),
        ] {
            assert_eq!(out.answer.is_yes(), truth, "{name} disagrees on seed {seed}");
            if let Some(tree) = out.answer.tree() {
                assert_eq!(verify_tree(&g, inst.k, tree), Ok(()), "{name} witness on seed {seed}");
            }
        }
    }
    assert!(yes > 50 && yes < 250, "yes count {yes}");
}
