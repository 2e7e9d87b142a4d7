//! Path decompositions whose bags are unions of whole cells.
//!
//! A [`Cpd`] is a plain sequence of cell bags. An [`Ncpd`] is its nice form:
//! leaf, then single-cell introduce and forget steps, ending at an empty cell
//! bag. An optional vertex set `Y` rides along in every bag, so the first and
//! last bags of an `Ncpd` are exactly `Y`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::cliquegrid::{Cell, CliqueGridRepr};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type CellBag = BTreeSet<Cell>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cpd {
    pub bags: Vec<CellBag>,
}

impl Cpd {
    pub fn width_cells(&self) -> usize {
        self.bags.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Bags of several decompositions laid end to end.
    pub fn concat(parts: impl IntoIterator<Item = Cpd>) -> Cpd {
        Cpd {
            bags: parts.into_iter().flat_map(|c| c.bags).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(Cell),
    Forget(Cell),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcpdNode {
    pub kind: NodeKind,
    /// Cells of the bag; `Y` is implicit.
    pub cells: CellBag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ncpd {
    pub nodes: Vec<NcpdNode>,
    /// Vertices added to every bag, sorted.
    pub y_set: Vec<usize>,
}

impl Ncpd {
    /// Cells per bag plus the number of distinct cells holding `Y`.
    pub fn width_cells(&self, repr: &CliqueGridRepr) -> usize {
        let y_cells: BTreeSet<Cell> = self.y_set.iter().map(|&v| repr.cell_of(v)).collect();
        self.nodes.iter().map(|n| n.cells.len()).max().unwrap_or(0) + y_cells.len()
    }

    pub fn count_kind(&self, pred: impl Fn(&NodeKind) -> bool) -> usize {
        self.nodes.iter().filter(|n| pred(&n.kind)).count()
    }

    /// Checks the nice structure: a single leaf with an empty cell bag first,
    /// every later node a one-cell introduce or forget of its predecessor,
    /// each cell introduced and forgotten exactly once, and an empty final
    /// cell bag (the bag is then exactly `Y`).
    pub fn check_structure(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedDecomposition(msg));
        let Some(first) = self.nodes.first() else {
            return bad("no nodes".into());
        };
        if first.kind != NodeKind::Leaf || !first.cells.is_empty() {
            return bad("first node must be a leaf with no cells".into());
        }
        let mut introduced = BTreeSet::new();
        let mut forgotten = BTreeSet::new();
        for (idx, pair) in self.nodes.windows(2).enumerate() {
            let (prev, node) = (&pair[0], &pair[1]);
            match node.kind {
                NodeKind::Leaf => return bad(format!("node {} is a second leaf", idx + 1)),
                NodeKind::Introduce(c) => {
                    let mut expect = prev.cells.clone();
                    if !expect.insert(c) || expect != node.cells || !introduced.insert(c) {
                        return bad(format!("node {} is not a valid introduce of {c:?}", idx + 1));
                    }
                }
                NodeKind::Forget(c) => {
                    let mut expect = prev.cells.clone();
                    if !expect.remove(&c) || expect != node.cells || !forgotten.insert(c) {
                        return bad(format!("node {} is not a valid forget of {c:?}", idx + 1));
                    }
                }
            }
        }
        if !self.nodes.last().unwrap().cells.is_empty() {
            return bad("last bag must contain only Y".into());
        }
        if introduced != forgotten {
            return bad("introduced and forgotten cells differ".into());
        }
        Ok(())
    }

    /// One `<kind> [cell] : <bag cells>` line per node.
    pub fn dump(&self) -> String {
        let fmt_cell = |c: &Cell| format!("{}:{}", c.i, c.j);
        let mut s = String::new();
        for node in &self.nodes {
            let head = match node.kind {
                NodeKind::Leaf => "leaf".to_string(),
                NodeKind::Introduce(c) => format!("introduce {}", fmt_cell(&c)),
                NodeKind::Forget(c) => format!("forget {}", fmt_cell(&c)),
            };
            let cells: Vec<String> = node.cells.iter().map(fmt_cell).collect();
            let _ = writeln!(s, "{head} : {}", cells.join(" "));
        }
        s
    }
}

/// Anything whose bags can be expanded to vertex sets.
pub trait Decomposition {
    fn vertex_bags(&self, repr: &CliqueGridRepr) -> Vec<Vec<usize>>;
}

fn expand(cells: &CellBag, members: &BTreeMap<Cell, Vec<usize>>, extra: &[usize]) -> Vec<usize> {
    let mut vs: Vec<usize> = cells
        .iter()
        .flat_map(|c| members.get(c).into_iter().flatten().copied())
        .chain(extra.iter().copied())
        .collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

impl Decomposition for Cpd {
    fn vertex_bags(&self, repr: &CliqueGridRepr) -> Vec<Vec<usize>> {
        let members = repr.members();
        self.bags.iter().map(|b| expand(b, &members, &[])).collect()
    }
}

impl Decomposition for Ncpd {
    fn vertex_bags(&self, repr: &CliqueGridRepr) -> Vec<Vec<usize>> {
        let members = repr.members();
        self.nodes
            .iter()
            .map(|n| expand(&n.cells, &members, &self.y_set))
            .collect()
    }
}

/// One vertical strip of the grid: the nonempty cells among a run of columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub first_column: u32,
    pub last_column: u32,
    pub cells: CellBag,
}

impl Strip {
    pub fn column_count(&self) -> u32 {
        self.last_column + 1 - self.first_column
    }
}

/// Bags of three consecutive rows over all strip columns. Windows that hold
/// no nonempty cell are skipped; no vertex lives in them.
pub fn strip_cpd(strip: &Strip, max_columns: u32) -> Result<Cpd> {
    if strip.column_count() > max_columns {
        return Err(Error::StripTooWide {
            columns: strip.column_count(),
            limit: max_columns,
        });
    }
    let (Some(lo), Some(hi)) = (
        strip.cells.iter().map(|c| c.i).min(),
        strip.cells.iter().map(|c| c.i).max(),
    ) else {
        return Ok(Cpd::default());
    };
    let last_start = hi.saturating_sub(2).max(lo);
    let bags = (lo..=last_start)
        .map(|r| {
            strip
                .cells
                .iter()
                .filter(|c| (r..=r + 2).contains(&c.i))
                .copied()
                .collect::<CellBag>()
        })
        .filter(|b| !b.is_empty())
        .collect();
    Ok(Cpd { bags })
}

/// Sweeps the CPD: between consecutive bags, forget the cells that leave, then
/// introduce the cells that enter. Starts from a leaf and forgets down to `Y`.
pub fn make_nice(cpd: &Cpd, y: &[usize]) -> Ncpd {
    let mut y_set = y.to_vec();
    y_set.sort_unstable();
    y_set.dedup();
    let mut nodes = vec![NcpdNode {
        kind: NodeKind::Leaf,
        cells: CellBag::new(),
    }];
    let mut current = CellBag::new();
    let empty = CellBag::new();
    for bag in cpd.bags.iter().chain(std::iter::once(&empty)) {
        let leaving: Vec<Cell> = current.difference(bag).copied().collect();
        for c in leaving {
            current.remove(&c);
            nodes.push(NcpdNode {
                kind: NodeKind::Forget(c),
                cells: current.clone(),
            });
        }
        let entering: Vec<Cell> = bag.difference(&current).copied().collect();
        for c in entering {
            current.insert(c);
            nodes.push(NcpdNode {
                kind: NodeKind::Introduce(c),
                cells: current.clone(),
            });
        }
    }
    Ncpd { nodes, y_set }
}

/// Path-decomposition axioms for `g` after expanding cells to vertices:
/// vertex coverage, edge coverage and contiguity of every vertex's bags.
pub fn validate_pathdecomp(g: &Graph, repr: &CliqueGridRepr, pd: &impl Decomposition) -> bool {
    validate_pathdecomp_within(g, &vec![true; g.n()], repr, pd)
}

/// Like [`validate_pathdecomp`] for the induced subgraph `g[mask]`. Bags
/// holding a vertex outside `mask` make the decomposition invalid.
pub fn validate_pathdecomp_within(
    g: &Graph,
    mask: &[bool],
    repr: &CliqueGridRepr,
    pd: &impl Decomposition,
) -> bool {
    if repr.len() != g.n() || mask.len() != g.n() {
        return false;
    }
    let bags = pd.vertex_bags(repr);
    let mut first = vec![usize::MAX; g.n()];
    let mut last = vec![0usize; g.n()];
    let mut count = vec![0usize; g.n()];
    for (idx, bag) in bags.iter().enumerate() {
        for &v in bag {
            if !mask[v] {
                return false;
            }
            first[v] = first[v].min(idx);
            last[v] = idx;
            count[v] += 1;
        }
    }
    for v in (0..g.n()).filter(|&v| mask[v]) {
        if count[v] == 0 || last[v] - first[v] + 1 != count[v] {
            return false;
        }
    }
    g.edges().filter(|&(u, v)| mask[u] && mask[v]).all(|(u, v)| {
        let lo = first[u].max(first[v]);
        let hi = last[u].min(last[v]);
        lo <= hi
    })
}
