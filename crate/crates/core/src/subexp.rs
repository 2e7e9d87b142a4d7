//! Solver in `n^O(sqrt(t+k))` time for clique-grid graphs.
//!
//! Column pairs `{2i-1, 2i}` get label `i mod L` with `L = ceil(sqrt(t+k))`.
//! Some optimal tree has at most `L` vertices in the columns of some label.
//! For each label we guess those vertices (`Y`), delete every other
//! non-terminal of the labelled columns, and are left with strips at most
//! `2L` columns wide. Three-row windows of the strips form a path
//! decomposition, which is made nice with `Y` added to every bag, and a
//! dynamic program over connectivity partitions decides whether exactly `k'`
//! Steiner vertices can connect everything.
//!
//! Every partition state is kept with a back-pointer, so a yes comes with the
//! vertex set that produced it and hence a witness tree.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use itertools::Itertools;

use crate::cliquegrid::{validate_representation, Cell, CliqueGridRepr};
use crate::error::{Error, Result};
use crate::graph::{Graph, SteinerTree};
use crate::pathdecomp::{make_nice, strip_cpd, validate_pathdecomp_within, Cpd, Ncpd, NodeKind, Strip};
use crate::{Answer, Outcome};

/// Most Steiner vertices a minimal tree places in one cell.
pub const CELL_CAP: usize = 24;

/// `ceil(sqrt(t + k))`, at least one.
pub fn label_count(t: usize, k: usize) -> usize {
    let s = t + k;
    let mut l = 1;
    while l * l < s {
        l += 1;
    }
    l
}

/// Label of column `j` (1-based) among `l` labels.
pub fn column_label(j: u32, l: usize) -> usize {
    (j as usize).div_ceil(2) % l
}

/// Strip decomposition left after removing the columns of `label`: the
/// three-row windows of every maximal run of other columns, laid end to end.
pub fn label_cpd(
    repr: &CliqueGridRepr,
    members: &BTreeMap<Cell, Vec<usize>>,
    l: usize,
    label: usize,
) -> Result<Cpd> {
    let labelled = |j: u32| column_label(j, l) == label;
    let mut cpds = Vec::new();
    let mut run: Option<(u32, u32)> = None;
    for j in 1..=repr.p_prime + 1 {
        if j <= repr.p_prime && !labelled(j) {
            run = Some(run.map_or((j, j), |(a, _)| (a, j)));
        } else if let Some((a, b)) = run.take() {
            let cells = members
                .keys()
                .filter(|c| (a..=b).contains(&c.j))
                .copied()
                .collect();
            let strip = Strip {
                first_column: a,
                last_column: b,
                cells,
            };
            cpds.push(strip_cpd(&strip, 2 * l as u32)?);
        }
    }
    Ok(Cpd::concat(cpds))
}

/// One instance of the good family.
#[derive(Clone, Debug)]
pub struct GoodFamilyMember {
    pub label: usize,
    /// Vertices of `H`.
    pub host: Vec<bool>,
    /// Guessed Steiner vertices plus the terminals of the labelled columns.
    pub y_set: Vec<usize>,
    /// The guessed Steiner part of `y_set`.
    pub y_steiner: Vec<usize>,
    pub ncpd: Arc<Ncpd>,
    /// Exact number of Steiner vertices asked for.
    pub k_exact: usize,
}

/// A member without its exact budget; every `k'` from `|Y'|` to `k` shares it.
#[derive(Clone, Debug)]
struct Group {
    label: usize,
    host: Vec<bool>,
    y_set: Vec<usize>,
    y_steiner: Vec<usize>,
    ncpd: Arc<Ncpd>,
}

struct LabelClass {
    label: usize,
    terminals: Vec<usize>,
    non_terminals: Vec<usize>,
    cpd: Cpd,
}

/// Label classes of an instance, with the strip decomposition of each.
struct Family<'g> {
    g: &'g Graph,
    k: usize,
    l: usize,
    classes: Vec<LabelClass>,
}

impl<'g> Family<'g> {
    fn new(g: &'g Graph, repr: &CliqueGridRepr, k: usize) -> Result<Self> {
        let l = label_count(g.terminals().len(), k);
        let members = repr.members();
        let mut classes = Vec::with_capacity(l);
        for label in 0..l {
            let labelled = |j: u32| column_label(j, l) == label;
            let (terminals, non_terminals): (Vec<usize>, Vec<usize>) = (0..g.n())
                .filter(|&v| labelled(repr.cell_of(v).j))
                .partition(|&v| g.is_terminal(v));
            let cpd = label_cpd(repr, &members, l, label)?;
            classes.push(LabelClass {
                label,
                terminals,
                non_terminals,
                cpd,
            });
        }
        Ok(Family { g, k, l, classes })
    }

    /// Calls `f` on every distinct `(H, Y)` in label order, guesses by size
    /// then lexicographically. `f` returns `true` to stop.
    fn for_each_group(&self, mut f: impl FnMut(Group) -> Result<bool>) -> Result<()> {
        let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
        for class in &self.classes {
            if class.terminals.len() > self.l {
                continue;
            }
            let room = (self.l - class.terminals.len()).min(self.k);
            for size in 0..=room.min(class.non_terminals.len()) {
                for guess in class.non_terminals.iter().copied().combinations(size) {
                    let mut host = vec![true; self.g.n()];
                    let mut deleted = Vec::new();
                    for &v in &class.non_terminals {
                        if !guess.contains(&v) {
                            host[v] = false;
                            deleted.push(v);
                        }
                    }
                    let mut y_set: Vec<usize> =
                        class.terminals.iter().chain(&guess).copied().collect();
                    y_set.sort_unstable();
                    if !seen.insert((y_set.clone(), deleted)) {
                        continue;
                    }
                    let ncpd = Arc::new(make_nice(&class.cpd, &y_set));
                    let group = Group {
                        label: class.label,
                        host,
                        y_set,
                        y_steiner: guess,
                        ncpd,
                    };
                    if f(group)? {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }
}

/// All members of the good family, one per group and exact budget.
pub fn enumerate_good_family(
    g: &Graph,
    repr: &CliqueGridRepr,
    k: usize,
) -> Result<Vec<GoodFamilyMember>> {
    let family = Family::new(g, repr, k)?;
    let mut out = Vec::new();
    family.for_each_group(|group| {
        for k_exact in group.y_steiner.len()..=k {
            out.push(GoodFamilyMember {
                label: group.label,
                host: group.host.clone(),
                y_set: group.y_set.clone(),
                y_steiner: group.y_steiner.clone(),
                ncpd: Arc::clone(&group.ncpd),
                k_exact,
            });
        }
        Ok(false)
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    /// Connectivity classes of the selected bag vertices, sorted inside and
    /// ordered by smallest member.
    parts: Vec<Vec<usize>>,
    used: usize,
    /// The only component was completed and dropped from the bag.
    closed: bool,
}

struct Node {
    key: Key,
    prev: usize,
    pick: Vec<usize>,
}

struct DpRun {
    layers: Vec<Vec<Node>>,
    /// Exact Steiner count reached at the root, mapped to the first state reaching it.
    accepted: BTreeMap<usize, usize>,
    states: u64,
}

impl DpRun {
    /// Guessed plus introduced Steiner vertices along the path to `root`.
    fn steiner_set(&self, y_steiner: &[usize], root: usize) -> Vec<usize> {
        let mut set: Vec<usize> = y_steiner.to_vec();
        let mut idx = root;
        for layer in self.layers.iter().rev() {
            let node = &layer[idx];
            set.extend_from_slice(&node.pick);
            idx = node.prev;
        }
        set.sort_unstable();
        set
    }
}

fn merge(g: &Graph, parts: &[Vec<usize>], sel: &[usize]) -> Vec<Vec<usize>> {
    let mut joined: Vec<usize> = sel.to_vec();
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(parts.len() + 1);
    for part in parts {
        let touches = part
            .iter()
            .any(|&x| sel.iter().any(|&s| g.has_edge(x, s)));
        if touches {
            joined.extend_from_slice(part);
        } else {
            out.push(part.clone());
        }
    }
    joined.sort_unstable();
    out.push(joined);
    out.sort_unstable_by_key(|p| p[0]);
    out
}

/// Partition DP over the nice decomposition of one group. States using more
/// than `bound` Steiner vertices are discarded.
fn run_dp(
    g: &Graph,
    members: &BTreeMap<Cell, Vec<usize>>,
    host: &[bool],
    ncpd: &Ncpd,
    y_steiner: &[usize],
    bound: usize,
) -> DpRun {
    let mut states = 0u64;
    let mut layers: Vec<Vec<Node>> = Vec::with_capacity(ncpd.nodes.len());
    if y_steiner.len() <= bound {
        let mut mask = vec![false; g.n()];
        for &v in &ncpd.y_set {
            mask[v] = true;
        }
        layers.push(vec![Node {
            key: Key {
                parts: g.components_within(&mask),
                used: y_steiner.len(),
                closed: false,
            },
            prev: 0,
            pick: Vec::new(),
        }]);
    } else {
        layers.push(Vec::new());
    }
    states += layers[0].len() as u64;
    for node in &ncpd.nodes[1..] {
        let prev_layer = layers.last().unwrap();
        let mut next: Vec<Node> = Vec::new();
        let mut index: HashMap<Key, usize> = HashMap::new();
        let mut push = |key: Key, prev: usize, pick: Vec<usize>, next: &mut Vec<Node>| {
            if !index.contains_key(&key) {
                index.insert(key.clone(), next.len());
                next.push(Node { key, prev, pick });
            }
        };
        match node.kind {
            NodeKind::Leaf => unreachable!("structure was checked"),
            NodeKind::Introduce(cell) => {
                let vs: Vec<usize> = members
                    .get(&cell)
                    .into_iter()
                    .flatten()
                    .copied()
                    .filter(|&v| host[v])
                    .collect();
                let (terms, others): (Vec<usize>, Vec<usize>) =
                    vs.iter().partition(|&&v| g.is_terminal(v));
                for (pi, state) in prev_layer.iter().enumerate() {
                    let room = (bound - state.key.used).min(CELL_CAP).min(others.len());
                    for size in 0..=room {
                        for pick in others.iter().copied().combinations(size) {
                            let mut sel: Vec<usize> = terms.iter().chain(&pick).copied().collect();
                            if sel.is_empty() {
                                push(state.key.clone(), pi, pick, &mut next);
                                continue;
                            }
                            if state.key.closed {
                                continue;
                            }
                            sel.sort_unstable();
                            let key = Key {
                                parts: merge(g, &state.key.parts, &sel),
                                used: state.key.used + size,
                                closed: false,
                            };
                            push(key, pi, pick, &mut next);
                        }
                    }
                }
            }
            NodeKind::Forget(cell) => {
                let gone: BTreeSet<usize> = members.get(&cell).into_iter().flatten().copied().collect();
                for (pi, state) in prev_layer.iter().enumerate() {
                    let mut parts = Vec::with_capacity(state.key.parts.len());
                    let mut vanished = false;
                    for part in &state.key.parts {
                        let kept: Vec<usize> =
                            part.iter().copied().filter(|v| !gone.contains(v)).collect();
                        if kept.is_empty() {
                            vanished = true;
                        } else {
                            parts.push(kept);
                        }
                    }
                    let mut closed = state.key.closed;
                    if vanished {
                        if !parts.is_empty() {
                            // a finished component can never reach the rest
                            continue;
                        }
                        closed = true;
                    }
                    let key = Key {
                        parts,
                        used: state.key.used,
                        closed,
                    };
                    push(key, pi, Vec::new(), &mut next);
                }
            }
        }
        states += next.len() as u64;
        layers.push(next);
    }
    let mut accepted = BTreeMap::new();
    for (idx, state) in layers.last().unwrap().iter().enumerate() {
        let key = &state.key;
        let done = (key.parts.len() == 1 && !key.closed) || (key.closed && key.parts.is_empty());
        if done {
            accepted.entry(key.used).or_insert(idx);
        }
    }
    DpRun {
        layers,
        accepted,
        states,
    }
}

fn check_member(g: &Graph, repr: &CliqueGridRepr, member: &GoodFamilyMember) -> Result<()> {
    member.ncpd.check_structure()?;
    if member.host.len() != g.n() {
        return Err(Error::MalformedDecomposition("host mask has the wrong length".into()));
    }
    if g.terminals().iter().any(|&t| !member.host[t]) {
        return Err(Error::MalformedDecomposition("host misses a terminal".into()));
    }
    if member.y_steiner.iter().any(|v| !member.ncpd.y_set.contains(v)) {
        return Err(Error::MalformedDecomposition("guessed vertex outside Y".into()));
    }
    if !validate_pathdecomp_within(g, &member.host, repr, &*member.ncpd) {
        return Err(Error::MalformedDecomposition(
            "bags do not form a path decomposition of the host".into(),
        ));
    }
    Ok(())
}

/// Decides whether the member's host has a tree spanning `R ∪ Y` that uses
/// exactly `k_exact` Steiner vertices, at most [`CELL_CAP`] per cell.
pub fn solve_exact_on_ncpd(
    g: &Graph,
    repr: &CliqueGridRepr,
    member: &GoodFamilyMember,
) -> Result<Outcome> {
    check_member(g, repr, member)?;
    let members = repr.members();
    let run = run_dp(
        g,
        &members,
        &member.host,
        &member.ncpd,
        &member.y_steiner,
        member.k_exact,
    );
    let answer = match run.accepted.get(&member.k_exact) {
        Some(&root) => {
            let steiner = run.steiner_set(&member.y_steiner, root);
            Answer::Yes(SteinerTree::spanning_all(g, &steiner).expect("accepted set connects R"))
        }
        None => Answer::No,
    };
    Ok(Outcome {
        answer,
        states: run.states,
    })
}

/// Decides whether at most `k` Steiner vertices suffice.
pub fn solve_subexp(g: &Graph, repr: &CliqueGridRepr, k: usize) -> Result<Outcome> {
    let report = validate_representation(g, repr);
    if !report.is_valid() {
        return Err(Error::InvalidRepresentation(format!("{report:?}")));
    }
    if g.terminals().len() <= 1 {
        return Ok(Outcome {
            answer: Answer::Yes(SteinerTree {
                edges: Vec::new(),
                steiner: Vec::new(),
            }),
            states: 0,
        });
    }
    let family = Family::new(g, repr, k)?;
    let members = repr.members();
    let mut states = 0u64;
    let mut found = None;
    family.for_each_group(|group| {
        let run = run_dp(g, &members, &group.host, &group.ncpd, &group.y_steiner, k);
        states += run.states;
        if let Some((_, &root)) = run.accepted.iter().next() {
            found = Some(run.steiner_set(&group.y_steiner, root));
            return Ok(true);
        }
        Ok(false)
    })?;
    let answer = match found {
        Some(steiner) => {
            let tree = SteinerTree::spanning(g, &steiner).expect("accepted set connects R");
            Answer::Yes(normalize_cross_edges(g, repr, &tree))
        }
        None => Answer::No,
    };
    Ok(Outcome { answer, states })
}

/// Rewires the tree until no two of its edges join the same pair of cells.
///
/// With two edges `uu'` and `vv'` between cells `A` and `B` (`u, v` in `A`),
/// dropping `uu'` splits the tree; `vv'` lies on one side and the cell
/// cliques supply `uv` or `u'v'` to rejoin. The vertex set is unchanged, and
/// afterwards each cell has at most one tree edge per neighbouring cell.
pub fn normalize_cross_edges(g: &Graph, repr: &CliqueGridRepr, tree: &SteinerTree) -> SteinerTree {
    let mut edges = tree.edges.clone();
    'outer: loop {
        let mut by_pair: HashMap<(Cell, Cell), usize> = HashMap::new();
        for (idx, &(a, b)) in edges.iter().enumerate() {
            let (ca, cb) = (repr.cell_of(a), repr.cell_of(b));
            if ca == cb {
                continue;
            }
            // orient so the first vertex lies in the smaller cell
            let pair = if ca < cb { (ca, cb) } else { (cb, ca) };
            if let Some(&other) = by_pair.get(&pair) {
                let orient = |(x, y): (usize, usize)| {
                    if repr.cell_of(x) == pair.0 {
                        (x, y)
                    } else {
                        (y, x)
                    }
                };
                let (u, u2) = orient(edges[other]);
                let (v, v2) = orient(edges[idx]);
                edges.remove(other);
                let side = reach(g.n(), &edges, u);
                let extra = if side[v] { (u2, v2) } else { (u, v) };
                debug_assert!(g.has_edge(extra.0, extra.1));
                edges.push(extra);
                continue 'outer;
            }
            by_pair.insert(pair, idx);
        }
        break;
    }
    let mut out = SteinerTree::from_edges(g, edges);
    out.steiner = tree.steiner.clone();
    out
}

fn reach(n: usize, edges: &[(usize, usize)], from: usize) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Tree edges leaving `cell`.
pub fn cross_edges_at(repr: &CliqueGridRepr, tree: &SteinerTree, cell: Cell) -> usize {
    tree.edges
        .iter()
        .filter(|&&(a, b)| {
            let (ca, cb) = (repr.cell_of(a), repr.cell_of(b));
            ca != cb && (ca == cell || cb == cell)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliquegrid::compute_representation;
    use crate::geometry::{build_intersection_graph, Disk, DiskInstance};
    use crate::oracle::verify_tree;

    fn row_instance(xs: &[i128], terminals: &[usize], k: usize) -> (Graph, CliqueGridRepr) {
        let disks = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| Disk::new(i as u64, x, 0, 2, terminals.contains(&i)))
            .collect();
        let inst = DiskInstance::new(1, disks, k).unwrap();
        (build_intersection_graph(&inst), compute_representation(&inst).unwrap())
    }

    #[test]
    fn labels_of_nine() {
        assert_eq!(label_count(5, 4), 3);
        let labels: Vec<usize> = (1..=6).map(|j| column_label(j, 3)).collect();
        assert_eq!(labels, vec![1, 1, 2, 2, 0, 0]);
        assert_eq!(label_count(1, 0), 1);
        assert_eq!(label_count(10, 0), 4);
    }

    #[test]
    fn middle_disk_is_a_cut_vertex() {
        let (g, repr) = row_instance(&[0, 3, 6], &[0, 2], 1);
        assert!(!solve_subexp(&g, &repr, 0).unwrap().answer.is_yes());
        let out = solve_subexp(&g, &repr, 1).unwrap();
        let tree = out.answer.tree().unwrap();
        assert_eq!(tree.steiner, vec![1]);
        assert_eq!(verify_tree(&g, 1, tree), Ok(()));
    }

    #[test]
    fn connected_terminals_are_free() {
        let (g, repr) = row_instance(&[0, 3, 6], &[0, 1, 2], 2);
        let out = solve_subexp(&g, &repr, 2).unwrap();
        assert!(out.answer.tree().unwrap().steiner.is_empty());
    }

    #[test]
    fn exact_member_semantics() {
        // two adjacent terminals: exact 0 yes; with t-s-t: exact 0 no, exact 1 yes
        let (g, repr) = row_instance(&[0, 3], &[0, 1], 0);
        let family = enumerate_good_family(&g, &repr, 0).unwrap();
        assert!(family
            .iter()
            .any(|m| solve_exact_on_ncpd(&g, &repr, m).unwrap().answer.is_yes()));

        let (g, repr) = row_instance(&[0, 3, 6], &[0, 2], 1);
        let family = enumerate_good_family(&g, &repr, 1).unwrap();
        let yes_at = |k: usize| {
            family
                .iter()
                .filter(|m| m.k_exact == k)
                .any(|m| solve_exact_on_ncpd(&g, &repr, m).unwrap().answer.is_yes())
        };
        assert!(!yes_at(0));
        assert!(yes_at(1));
    }

    #[test]
    fn malformed_member_is_rejected() {
        let (g, repr) = row_instance(&[0, 3, 6], &[0, 2], 1);
        let mut member = enumerate_good_family(&g, &repr, 1).unwrap().remove(0);
        let mut ncpd = (*member.ncpd).clone();
        ncpd.nodes.pop();
        member.ncpd = Arc::new(ncpd);
        assert!(solve_exact_on_ncpd(&g, &repr, &member).is_err());
    }

    #[test]
    fn normalization_removes_parallel_cell_edges() {
        // cells A = {0, 1} and B = {2, 3}, both cliques, complete between them
        let g = Graph::from_edges(
            4,
            &[(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)],
            &[0, 1, 2, 3],
        );
        let repr = CliqueGridRepr::from_cells(vec![
            Cell::new(1, 1),
            Cell::new(1, 1),
            Cell::new(2, 1),
            Cell::new(2, 1),
        ])
        .unwrap();
        let tree = SteinerTree::from_edges(&g, [(0, 2), (1, 3), (0, 3)]);
        let fixed = normalize_cross_edges(&g, &repr, &tree);
        assert_eq!(verify_tree(&g, 0, &fixed), Ok(()));
        assert_eq!(cross_edges_at(&repr, &fixed, Cell::new(1, 1)), 1);
    }
}
