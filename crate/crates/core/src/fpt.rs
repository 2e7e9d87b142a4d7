//! Solver in `2^O(k) poly(n)` time.
//!
//! Each component of `G[R]` is contracted to a single super-terminal. In a
//! clique-grid graph a solution with `k` Steiner vertices touches at most
//! `24k` terminal components, so more components than that is an immediate
//! no. Otherwise Dreyfus-Wagner finds a minimum-edge tree over the
//! super-terminals and the tree is expanded back into `G`.

use crate::cliquegrid::{validate_representation, CliqueGridRepr};
use crate::error::{Error, Result};
use crate::graph::{prune_steiner_leaves, DisjointSets, Graph, SteinerTree};
use crate::{Answer, Outcome};

/// Number of cells a cell can see, hence the terminal components one
/// Steiner vertex can reach.
pub const NEIGHBOR_CELLS: usize = 24;

/// Largest Dreyfus-Wagner table, in entries.
pub const MAX_TABLE: usize = 1 << 26;

/// A component of `G[R]` and a BFS spanning tree of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalComponent {
    pub vertices: Vec<usize>,
    pub tree: Vec<(usize, usize)>,
}

/// Components of `G[R]`, listed by smallest member.
pub fn terminal_components(g: &Graph) -> Vec<TerminalComponent> {
    let mask: Vec<bool> = (0..g.n()).map(|v| g.is_terminal(v)).collect();
    let comps = g.components_within(&mask);
    let forest = g.bfs_forest_within(&mask);
    let mut owner = vec![usize::MAX; g.n()];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            owner[v] = ci;
        }
    }
    let mut out: Vec<TerminalComponent> = comps
        .into_iter()
        .map(|vertices| TerminalComponent {
            vertices,
            tree: Vec::new(),
        })
        .collect();
    for (u, v) in forest {
        out[owner[u]].tree.push((u, v));
    }
    out
}

/// The component-contracted graph.
///
/// Vertices `0..s` are the non-terminals of `G` in increasing order, and
/// `s + i` is the super-terminal of component `i`.
#[derive(Clone, Debug)]
pub struct ContractedGraph {
    pub graph: Graph,
    pub steiner_vertices: Vec<usize>,
    pub components: Vec<TerminalComponent>,
}

impl ContractedGraph {
    pub fn q(&self) -> usize {
        self.components.len()
    }

    pub fn super_terminal(&self, i: usize) -> usize {
        self.steiner_vertices.len() + i
    }

    pub fn super_terminals(&self) -> Vec<usize> {
        (0..self.q()).map(|i| self.super_terminal(i)).collect()
    }
}

pub fn contract_components(g: &Graph) -> ContractedGraph {
    let components = terminal_components(g);
    let steiner_vertices = g.non_terminals();
    let s = steiner_vertices.len();
    // image of each G-vertex in the contracted graph
    let mut image = vec![0usize; g.n()];
    for (idx, &v) in steiner_vertices.iter().enumerate() {
        image[v] = idx;
    }
    for (ci, comp) in components.iter().enumerate() {
        for &v in &comp.vertices {
            image[v] = s + ci;
        }
    }
    let mut graph = Graph::new(s + components.len());
    for ci in 0..components.len() {
        graph.set_terminal(s + ci, true);
    }
    for (u, v) in g.edges() {
        let (a, b) = (image[u], image[v]);
        if a != b {
            graph.add_edge(a, b);
        }
    }
    ContractedGraph {
        graph,
        steiner_vertices,
        components,
    }
}

/// Output of [`dreyfus_wagner`]: a minimum-edge tree, or `None` when the
/// terminals are not connected, plus the table size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DreyfusWagner {
    pub tree: Option<Vec<(usize, usize)>>,
    pub states: u64,
}

const INF: u32 = u32::MAX / 4;

/// Largest terminal count whose table fits [`MAX_TABLE`] for `n` vertices.
pub fn terminal_limit(n: usize) -> usize {
    let mut t = 0;
    while (1usize << (t + 1)).saturating_mul(n.max(1)) <= MAX_TABLE {
        t += 1;
    }
    t
}

/// Minimum-edge tree spanning `terminals` under unit edge costs.
pub fn dreyfus_wagner(g: &Graph, terminals: &[usize]) -> Result<DreyfusWagner> {
    let n = g.n();
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    let t = terms.len();
    if t <= 1 {
        return Ok(DreyfusWagner {
            tree: Some(Vec::new()),
            states: 0,
        });
    }
    let limit = terminal_limit(n);
    if t > limit {
        return Err(Error::TooManyTerminals(t, limit));
    }
    let full = (1usize << t) - 1;
    let mut dp = vec![INF; (full + 1) * n];

    for (i, &term) in terms.iter().enumerate() {
        let row = &mut dp[(1 << i) * n..(1 << i) * n + n];
        row[term] = 0;
        grow(g, row);
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let (before, rest) = dp.split_at_mut(mask * n);
        let row = &mut rest[..n];
        // submasks containing the lowest bit, so each split is tried once
        let mut sub = (mask - 1) & mask;
        while sub > 0 {
            if sub & low != 0 {
                let a = &before[sub * n..sub * n + n];
                let b = &before[(mask ^ sub) * n..(mask ^ sub) * n + n];
                for v in 0..n {
                    let c = a[v] + b[v];
                    if c < row[v] {
                        row[v] = c;
                    }
                }
            }
            sub = (sub - 1) & mask;
        }
        grow(g, row);
    }
    let states = ((full + 1) * n) as u64;
    let root = terms[0];
    if dp[full * n + root] >= INF {
        return Ok(DreyfusWagner { tree: None, states });
    }
    let mut edges = Vec::new();
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        let cost = dp[mask * n + v];
        if cost == 0 {
            continue;
        }
        if let Some(&u) = g.neighbors(v).iter().find(|&&u| dp[mask * n + u] + 1 == cost) {
            edges.push((u, v));
            stack.push((mask, u));
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let mut sub = (mask - 1) & mask;
        loop {
            assert!(sub > 0, "Dreyfus-Wagner table has no predecessor");
            if sub & low != 0 && dp[sub * n + v] + dp[(mask ^ sub) * n + v] == cost {
                stack.push((sub, v));
                stack.push((mask ^ sub, v));
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    Ok(DreyfusWagner {
        tree: Some(tidy(g, &terms, edges)),
        states,
    })
}

/// `row[v] = min_u row[u] + dist(u, v)`, a BFS seeded with varying distances.
fn grow(g: &Graph, row: &mut [u32]) {
    let mut seeds: Vec<(u32, usize)> = row
        .iter()
        .enumerate()
        .filter(|(_, &d)| d < INF)
        .map(|(v, &d)| (d, v))
        .collect();
    seeds.sort_unstable();
    let mut seeds = seeds.into_iter().peekable();
    let mut queue = std::collections::VecDeque::new();
    let mut done = vec![false; row.len()];
    loop {
        // pop whichever front is closer
        let from_queue = match (queue.front(), seeds.peek()) {
            (Some(&(dq, _)), Some(&(ds, _))) => dq <= ds,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        let (d, v) = if from_queue {
            queue.pop_front().unwrap()
        } else {
            seeds.next().unwrap()
        };
        if done[v] || d > row[v] {
            continue;
        }
        done[v] = true;
        for &w in g.neighbors(v) {
            if d + 1 < row[w] {
                row[w] = d + 1;
                queue.push_back((d + 1, w));
            }
        }
    }
}

/// Deduplicates a union of tree pieces into one tree spanning `terms`.
fn tidy(g: &Graph, terms: &[usize], mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut ds = DisjointSets::new(g.n());
    edges.retain(|&(u, v)| ds.union(u, v));
    debug_assert!(terms.iter().all(|&x| ds.same(x, terms[0])));
    let keep: std::collections::BTreeSet<usize> = terms.iter().copied().collect();
    prune_leaves_outside(edges, &keep)
}

fn prune_leaves_outside(
    mut edges: Vec<(usize, usize)>,
    keep: &std::collections::BTreeSet<usize>,
) -> Vec<(usize, usize)> {
    loop {
        let mut degree = std::collections::HashMap::<usize, usize>::new();
        for &(u, v) in &edges {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let before = edges.len();
        edges.retain(|&(u, v)| {
            let leaf = |x: usize| degree[&x] == 1 && !keep.contains(&x);
            !(leaf(u) || leaf(v))
        });
        if edges.len() == before {
            return edges;
        }
    }
}

/// Plain Dreyfus-Wagner on `g` and its own terminal set, no contraction.
pub fn solve_dw(g: &Graph, k: usize) -> Result<Outcome> {
    let terms = g.terminals();
    let dw = dreyfus_wagner(g, &terms)?;
    let answer = match dw.tree {
        Some(edges) => {
            let tree = SteinerTree::from_edges(g, edges);
            if tree.steiner_count() <= k {
                Answer::Yes(tree)
            } else {
                Answer::No
            }
        }
        None => Answer::No,
    };
    Ok(Outcome {
        answer,
        states: dw.states,
    })
}

/// Decides the instance on a validated clique-grid graph.
pub fn solve_fpt(g: &Graph, repr: &CliqueGridRepr, k: usize) -> Result<Outcome> {
    let report = validate_representation(g, repr);
    if !report.is_valid() {
        return Err(Error::InvalidRepresentation(format!("{report:?}")));
    }
    solve_fpt_unchecked(g, k)
}

/// The gate outcome for `q` terminal components and budget `k`, if it decides.
pub fn gate(q: usize, k: usize) -> Option<bool> {
    if k == 0 {
        Some(q <= 1)
    } else if q > NEIGHBOR_CELLS * k {
        Some(false)
    } else {
        None
    }
}

/// [`solve_fpt`] without re-validating the representation.
pub fn solve_fpt_unchecked(g: &Graph, k: usize) -> Result<Outcome> {
    let components = terminal_components(g);
    let q = components.len();
    match gate(q, k) {
        Some(false) => {
            return Ok(Outcome {
                answer: Answer::No,
                states: 0,
            })
        }
        Some(true) => {
            let edges = components.iter().flat_map(|c| c.tree.iter().copied());
            return Ok(Outcome {
                answer: Answer::Yes(SteinerTree::from_edges(g, edges)),
                states: 0,
            });
        }
        None => {}
    }
    let cg = contract_components(g);
    let dw = dreyfus_wagner(&cg.graph, &cg.super_terminals())?;
    let Some(star_edges) = dw.tree else {
        return Ok(Outcome {
            answer: Answer::No,
            states: dw.states,
        });
    };
    // a tree has one vertex more than edges; super-terminals are not Steiner
    let steiner = star_edges.len() + 1 - q;
    if steiner > k {
        return Ok(Outcome {
            answer: Answer::No,
            states: dw.states,
        });
    }
    let tree = expand(g, &cg, &star_edges);
    Ok(Outcome {
        answer: Answer::Yes(tree),
        states: dw.states,
    })
}

/// Replaces every super-terminal by its component tree and every edge into a
/// super-terminal by the smallest concrete edge into that component.
fn expand(g: &Graph, cg: &ContractedGraph, star_edges: &[(usize, usize)]) -> SteinerTree {
    let s = cg.steiner_vertices.len();
    let mut in_comp = vec![usize::MAX; g.n()];
    for (ci, comp) in cg.components.iter().enumerate() {
        for &v in &comp.vertices {
            in_comp[v] = ci;
        }
    }
    let mut ds = DisjointSets::new(g.n());
    let mut edges = Vec::new();
    for comp in &cg.components {
        for &(u, v) in &comp.tree {
            ds.union(u, v);
            edges.push((u, v));
        }
    }
    for &(a, b) in star_edges {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let edge = if b < s {
            (cg.steiner_vertices[a], cg.steiner_vertices[b])
        } else {
            // a < b and super-terminals are never adjacent, so a is Steiner
            let v = cg.steiner_vertices[a];
            let ci = b - s;
            let u = *g
                .neighbors(v)
                .iter()
                .find(|&&u| in_comp[u] == ci)
                .expect("contracted edge has a concrete witness");
            (v, u)
        };
        if ds.union(edge.0, edge.1) {
            edges.push(edge);
        }
    }
    SteinerTree::from_edges(g, prune_steiner_leaves(g, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_force_decide, verify_tree};

    #[test]
    fn components_of_terminal_sets() {
        let clique = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)], &[0, 1, 2]);
        let comps = terminal_components(&clique);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].tree.len(), 2);

        let independent = Graph::from_edges(4, &[(0, 3), (1, 3), (2, 3)], &[0, 1, 2]);
        let comps = terminal_components(&independent);
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.tree.is_empty()));

        let mixed = Graph::from_edges(3, &[(0, 1)], &[0, 1, 2]);
        assert_eq!(terminal_components(&mixed).len(), 2);
    }

    #[test]
    fn contraction_of_path() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)], &[0, 2]);
        let cg = contract_components(&g);
        // steiner 1 -> 0, c_0 -> 1, c_1 -> 2
        assert_eq!(cg.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(cg.super_terminals(), vec![1, 2]);
    }

    #[test]
    fn contraction_has_no_multi_edges() {
        // Steiner 0 sees terminals 1 and 2, which are adjacent
        let g = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)], &[1, 2]);
        let cg = contract_components(&g);
        assert_eq!(cg.graph.edge_count(), 1);
    }

    #[test]
    fn dw_star_and_cycle() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], &[1, 2, 3]);
        let dw = dreyfus_wagner(&star, &[1, 2, 3]).unwrap();
        assert_eq!(dw.tree.unwrap().len(), 3);

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[0, 2]);
        let tree = dreyfus_wagner(&c4, &[0, 2]).unwrap().tree.unwrap();
        assert_eq!(tree.len(), 2);
        assert_eq!(SteinerTree::from_edges(&c4, tree).steiner_count(), 1);
    }

    #[test]
    fn dw_reports_infeasible() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)], &[0, 3]);
        assert_eq!(dreyfus_wagner(&g, &[0, 3]).unwrap().tree, None);
    }

    #[test]
    fn gate_rejects_many_components() {
        assert_eq!(gate(25, 1), Some(false));
        assert_eq!(gate(24, 1), None);
        assert_eq!(gate(1, 0), Some(true));
        assert_eq!(gate(2, 0), Some(false));
    }

    #[test]
    fn connected_terminals_need_no_steiner() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)], &[0, 1, 2]);
        let out = solve_fpt_unchecked(&g, 2).unwrap();
        let tree = out.answer.tree().unwrap();
        assert!(tree.steiner.is_empty());
        assert_eq!(verify_tree(&g, 2, tree), Ok(()));
    }

    #[test]
    fn expansion_keeps_component_trees() {
        // two terminal edges {0,1} and {3,4} joined through Steiner 2
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)], &[0, 1, 3, 4]);
        let out = solve_fpt_unchecked(&g, 1).unwrap();
        let tree = out.answer.tree().unwrap();
        assert_eq!(verify_tree(&g, 1, tree), Ok(()));
        assert!(tree.edges.contains(&(0, 1)));
        assert!(tree.edges.contains(&(3, 4)));
        assert_eq!(
            out.answer.is_yes(),
            brute_force_decide(&g, 1).unwrap().answer.is_yes()
        );
    }

    #[test]
    fn terminal_limit_respects_table() {
        let t = terminal_limit(2000);
        assert!((1usize << t) * 2000 <= MAX_TABLE);
        assert!((1usize << (t + 1)) * 2000 > MAX_TABLE);
    }
}
