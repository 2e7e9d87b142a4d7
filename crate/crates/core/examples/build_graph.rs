//! Builds a unit disk graph from disks and prints its adjacency.

use udg_steiner::geometry::{build_intersection_graph, Disk, DiskInstance};

fn main() -> udg_steiner::Result<()> {
    // a plus sign of radius-2 disks around a Steiner centre
    let disks = vec![
        Disk::new(0, 0, 0, 2, false),
        Disk::new(1, 4, 0, 2, true),
        Disk::new(2, -4, 0, 2, true),
        Disk::new(3, 0, 4, 2, true),
        Disk::new(4, 0, -4, 2, true),
        Disk::new(5, 9, 0, 2, false),
    ];
    let inst = DiskInstance::new(1, disks, 1)?;
    let g = build_intersection_graph(&inst);
    println!("{} disks, {} edges, terminals {:?}", g.n(), g.edge_count(), g.terminals());
    for v in 0..g.n() {
        println!("  {} -> {:?}", inst.disks[v].id, g.neighbors(v));
    }
    Ok(())
}
