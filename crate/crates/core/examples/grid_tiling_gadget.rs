//! Grid tiling instances turned into disk instances with budget k^2.

use udg_steiner::gadgets::{grid_tiling_brute, grid_tiling_gadget, GridTilingInstance};
use udg_steiner::geometry::build_intersection_graph;
use udg_steiner::oracle::brute_force_decide;

fn main() -> udg_steiner::Result<()> {
    let solvable = GridTilingInstance::parse("gt 3 2\n1 1 2 2\n1 1 3 1\n1 2 2 1\n2 1 1 3\n2 1 2 2\n2 2 1 1\n")?;
    let stuck = GridTilingInstance::parse("gt 3 2\n1 1 1 1\n1 2 1 1\n2 1 3 1\n2 2 1 1\n")?;
    for (name, gt) in [("solvable", solvable), ("stuck", stuck)] {
        let (inst, budget, _) = grid_tiling_gadget(&gt)?;
        let g = build_intersection_graph(&inst);
        println!(
            "{name}: brute {}, gadget {} disks, {} edges, unit {}: {}",
            grid_tiling_brute(&gt),
            inst.n(),
            g.edge_count(),
            inst.scale,
            brute_force_decide(&g, budget)?.answer.is_yes()
        );
    }
    Ok(())
}
