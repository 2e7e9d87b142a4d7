//! Clique-grid representation, cell graph and the decompositions behind the
//! subexponential solver.

use udg_steiner::cliquegrid::{cell_graph, compute_representation, validate_representation};
use udg_steiner::geometry::build_intersection_graph;
use udg_steiner::instance_gen::random_instance;
use udg_steiner::pathdecomp::validate_pathdecomp_within;
use udg_steiner::subexp::{enumerate_good_family, label_count, label_cpd};

fn main() -> udg_steiner::Result<()> {
    let inst = random_instance(30, 4, 5, 80, 8, 11)?;
    let g = build_intersection_graph(&inst);
    let repr = compute_representation(&inst)?;
    println!("grid {} x {}, cell side {}", repr.p, repr.p_prime, repr.cell_side);
    println!("valid representation: {}", validate_representation(&g, &repr).is_valid());
    println!("max cell degree: {}", cell_graph(&g, &repr)?.max_degree());

    let l = label_count(inst.terminal_count(), inst.k);
    let members = repr.members();
    for label in 0..l {
        let cpd = label_cpd(&repr, &members, l, label)?;
        println!("label {label}: {} bags, widest {} cells", cpd.bags.len(), cpd.width_cells());
    }

    let family = enumerate_good_family(&g, &repr, inst.k)?;
    let worst = family.iter().map(|m| m.ncpd.width_cells(&repr)).max().unwrap_or(0);
    let valid = family
        .iter()
        .all(|m| validate_pathdecomp_within(&g, &m.host, &repr, &*m.ncpd));
    println!("{} members, widest nice bag {worst} cells, all valid: {valid}", family.len());
    if let Some(m) = family.iter().find(|m| !m.y_steiner.is_empty()) {
        println!("\nfirst member with a guess:\n{}", m.ncpd.dump());
    }
    Ok(())
}
