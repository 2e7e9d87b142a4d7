//! Clique-grid representations and cell graphs.
//!
//! A representation maps every vertex to a grid cell `(i, j)` so that each
//! cell's vertices form a clique and every edge spans at most two rows and two
//! columns. For disks of common radius `r`, cells of side `r` work: the cell
//! diagonal `r*sqrt(2)` is below the adjacency threshold `2r`, and an edge of
//! length at most `2r` moves the floor index by at most two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::DiskInstance;
use crate::graph::Graph;

/// A grid cell, 1-based. `i` indexes rows (from x), `j` indexes columns (from y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: u32,
    pub j: u32,
}

impl Cell {
    pub const fn new(i: u32, j: u32) -> Self {
        Cell { i, j }
    }

    /// Both index differences are at most two.
    pub fn near(self, other: Cell) -> bool {
        self.i.abs_diff(other.i) <= 2 && self.j.abs_diff(other.j) <= 2
    }
}

/// The map `f: V -> [p] x [p']`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueGridRepr {
    pub p: u32,
    pub p_prime: u32,
    /// Cell side in scaled units; zero for representations not derived from geometry.
    pub cell_side: i128,
    cells: Vec<Cell>,
}

impl CliqueGridRepr {
    /// Wraps an explicit assignment; `p` and `p'` become the tight extents.
    pub fn from_cells(cells: Vec<Cell>) -> Result<Self> {
        if cells.iter().any(|c| c.i == 0 || c.j == 0) {
            return Err(Error::InvalidRepresentation("cell indices are 1-based".into()));
        }
        let p = cells.iter().map(|c| c.i).max().unwrap_or(1);
        let p_prime = cells.iter().map(|c| c.j).max().unwrap_or(1);
        Ok(CliqueGridRepr {
            p,
            p_prime,
            cell_side: 0,
            cells,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_of(&self, v: usize) -> Cell {
        self.cells[v]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `f^{-1}(cell)` for every nonempty cell, members sorted.
    pub fn members(&self) -> BTreeMap<Cell, Vec<usize>> {
        let mut out: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
        for (v, &c) in self.cells.iter().enumerate() {
            out.entry(c).or_default().push(v);
        }
        out
    }

    /// Vertices in column `j`, i.e. `f^{-1}(*, j)`.
    pub fn column(&self, j: u32) -> Vec<usize> {
        (0..self.cells.len()).filter(|&v| self.cells[v].j == j).collect()
    }

    /// Text dump, one `<vertex> <i> <j>` line per vertex.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (v, c) in self.cells.iter().enumerate() {
            let _ = writeln!(s, "{v} {} {}", c.i, c.j);
        }
        s
    }

    /// Parses [`CliqueGridRepr::dump`] output. Vertices may appear in any order
    /// but must cover `0..n` exactly once.
    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut rows = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(lineno + 1, format!("bad integer {t:?}"))))
                .collect::<Result<_>>()?;
            if nums.len() != 3 {
                return Err(Error::parse(lineno + 1, "expected `<vertex> <i> <j>`"));
            }
            let cell = Cell::new(nums[1] as u32, nums[2] as u32);
            if rows.insert(nums[0] as usize, cell).is_some() {
                return Err(Error::parse(lineno + 1, format!("vertex {} repeated", nums[0])));
            }
        }
        if rows.keys().copied().ne(0..rows.len()) {
            return Err(Error::InvalidRepresentation("vertices must be 0..n".into()));
        }
        Self::from_cells(rows.into_values().collect())
    }
}

/// Cells of side `r` anchored at the lowest occupied floor index.
pub fn compute_representation(inst: &DiskInstance) -> Result<CliqueGridRepr> {
    let r = match inst.uniform_radius() {
        Some(r) => r,
        None => {
            let first = inst.disks.first().map_or(0, |d| d.radius);
            let other = inst
                .disks
                .iter()
                .map(|d| d.radius)
                .find(|&x| x != first)
                .unwrap_or(first);
            return Err(Error::NonUniformRadii { first, other });
        }
    };
    let floors: Vec<(i128, i128)> = inst
        .disks
        .iter()
        .map(|d| (d.center.x.div_euclid(r), d.center.y.div_euclid(r)))
        .collect();
    let i_min = floors.iter().map(|f| f.0).min().unwrap_or(0);
    let j_min = floors.iter().map(|f| f.1).min().unwrap_or(0);
    let cells: Vec<Cell> = floors
        .iter()
        .map(|&(fi, fj)| {
            let i = u32::try_from(fi - i_min + 1);
            let j = u32::try_from(fj - j_min + 1);
            match (i, j) {
                (Ok(i), Ok(j)) => Ok(Cell::new(i, j)),
                _ => Err(Error::InvalidRepresentation("grid extent exceeds u32".into())),
            }
        })
        .collect::<Result<_>>()?;
    let mut repr = CliqueGridRepr::from_cells(cells)?;
    repr.cell_side = r;
    Ok(repr)
}

/// Violations of the two clique-grid properties. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Set when the representation does not assign exactly one cell per vertex.
    pub size_mismatch: Option<(usize, usize)>,
    /// Cells whose vertices do not form a clique.
    pub non_clique_cells: Vec<Cell>,
    /// Edges spanning more than two rows or columns.
    pub long_edges: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.size_mismatch.is_none() && self.non_clique_cells.is_empty() && self.long_edges.is_empty()
    }
}

pub fn validate_representation(g: &Graph, repr: &CliqueGridRepr) -> ValidationReport {
    let mut report = ValidationReport::default();
    if repr.len() != g.n() {
        report.size_mismatch = Some((g.n(), repr.len()));
        return report;
    }
    for (cell, vs) in repr.members() {
        let clique = vs
            .iter()
            .enumerate()
            .all(|(a, &u)| vs[a + 1..].iter().all(|&v| g.has_edge(u, v)));
        if !clique {
            report.non_clique_cells.push(cell);
        }
    }
    for (u, v) in g.edges() {
        if !repr.cell_of(u).near(repr.cell_of(v)) {
            report.long_edges.push((u, v));
        }
    }
    report
}

/// Quotient of `G` on its nonempty cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellGraph {
    pub adjacency: BTreeMap<Cell, BTreeSet<Cell>>,
}

impl CellGraph {
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn degree(&self, c: Cell) -> usize {
        self.adjacency.get(&c).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(Cell, Cell)> {
        self.adjacency
            .iter()
            .flat_map(|(&a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }
}

pub fn cell_graph(g: &Graph, repr: &CliqueGridRepr) -> Result<CellGraph> {
    let report = validate_representation(g, repr);
    if !report.is_valid() {
        return Err(Error::InvalidRepresentation(format!("{report:?}")));
    }
    let mut adjacency: BTreeMap<Cell, BTreeSet<Cell>> =
        repr.members().into_keys().map(|c| (c, BTreeSet::new())).collect();
    for (u, v) in g.edges() {
        let (a, b) = (repr.cell_of(u), repr.cell_of(v));
        if a != b {
            adjacency.get_mut(&a).unwrap().insert(b);
            adjacency.get_mut(&b).unwrap().insert(a);
        }
    }
    Ok(CellGraph { adjacency })
}
