//! Connected vertex cover of a triangle through the disk gadget.

use udg_steiner::gadgets::{cvc_brute, cvc_gadget, RectilinearEmbedding};
use udg_steiner::geometry::build_intersection_graph;
use udg_steiner::oracle::brute_force_decide;

const TRIANGLE: &str = "\
embedding 3 3
v 0 0 0
v 1 8 0
v 2 0 8
e 0 1 0 0 8 0
e 0 2 0 0 0 8
e 1 2 8 0 8 8 0 8
";

fn main() -> udg_steiner::Result<()> {
    let emb = RectilinearEmbedding::parse(TRIANGLE)?;
    let h = emb.source_graph();
    for k in 0..=3 {
        // the builder already checked the disk graph against the intended adjacency
        let (inst, budget, _) = cvc_gadget(&emb, k)?;
        let g = build_intersection_graph(&inst);
        let st = brute_force_decide(&g, budget)?.answer.is_yes();
        println!(
            "k = {k}: cvc {}, gadget {} disks ({} terminals) at budget {budget}: {st}",
            cvc_brute(&h, k),
            inst.n(),
            inst.terminal_count()
        );
    }
    Ok(())
}
