//! Instance generators for the two hardness reductions, with brute-force
//! solvers for their source problems.
//!
//! * Connected vertex cover on a planar graph of maximum degree 4, given a
//!   rectilinear grid embedding, becomes a unit disk instance with budget
//!   `m + 2k - 1`.
//! * Grid tiling with `>=` becomes a disk instance with three radius classes
//!   and budget `k^2`.
//!
//! Both generators check the adjacency structure they rely on and fail loudly
//! when the geometry does not produce it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::geometry::{build_intersection_graph, Disk, DiskInstance, ScaledPoint};
use crate::graph::Graph;

/// A graph drawn on the integer grid: vertices at lattice points, each edge an
/// axis-parallel polyline from its first to its second endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectilinearEmbedding {
    pub positions: Vec<(i128, i128)>,
    pub edges: Vec<EmbeddedEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedEdge {
    pub u: usize,
    pub v: usize,
    /// Corner points from `u`'s position to `v`'s position, inclusive.
    pub points: Vec<(i128, i128)>,
}

impl EmbeddedEdge {
    pub fn length(&self) -> i128 {
        self.points
            .windows(2)
            .map(|w| (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs())
            .sum()
    }

    /// The point at arc length `s` from `u`.
    fn point_at(&self, mut s: i128) -> (i128, i128) {
        for w in self.points.windows(2) {
            let seg = (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs();
            if s <= seg {
                let dx = (w[1].0 - w[0].0).signum();
                let dy = (w[1].1 - w[0].1).signum();
                return (w[0].0 + dx * s, w[0].1 + dy * s);
            }
            s -= seg;
        }
        *self.points.last().unwrap()
    }

    /// Every lattice point on the path, in order.
    fn lattice_points(&self) -> Vec<(i128, i128)> {
        (0..=self.length()).map(|s| self.point_at(s)).collect()
    }
}

impl RectilinearEmbedding {
    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// The embedded graph itself, without terminals.
    pub fn source_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        Graph::from_edges(self.n(), &edges, &[])
    }

    /// Endpoints match, segments are axis-parallel, paths share no lattice
    /// point except common endpoints, and each path has even length >= 8.
    pub fn validate(&self) -> Result<()> {
        let err = |msg: String| Err(Error::Embedding(msg));
        let mut seen_pairs = BTreeSet::new();
        let mut owner: HashMap<(i128, i128), usize> = HashMap::new();
        for (v, &p) in self.positions.iter().enumerate() {
            if owner.insert(p, usize::MAX - v).is_some() {
                return err(format!("vertex {v} shares a position"));
            }
        }
        for (idx, e) in self.edges.iter().enumerate() {
            if e.u >= self.n() || e.v >= self.n() || e.u == e.v {
                return err(format!("edge {idx} has bad endpoints"));
            }
            if !seen_pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
                return err(format!("edge {idx} repeats a vertex pair"));
            }
            if e.points.len() < 2
                || e.points[0] != self.positions[e.u]
                || *e.points.last().unwrap() != self.positions[e.v]
            {
                return err(format!("path of edge {idx} does not join its endpoints"));
            }
            if e.points.windows(2).any(|w| (w[0].0 != w[1].0) == (w[0].1 != w[1].1)) {
                return err(format!("path of edge {idx} has a non-axis-parallel or empty segment"));
            }
            let length = e.length();
            if length < 8 || length % 2 != 0 {
                return Err(Error::PathParity { edge: idx, length });
            }
            let pts = e.lattice_points();
            for &p in &pts[1..pts.len() - 1] {
                if owner.insert(p, idx).is_some() {
                    return err(format!("path of edge {idx} crosses another path or vertex at {p:?}"));
                }
            }
        }
        Ok(())
    }

    /// `embedding <n> <m>`, then `v <id> <x> <y>` and `e <u> <v> <x0> <y0> ...` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = None;
        let mut positions: BTreeMap<usize, (i128, i128)> = BTreeMap::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = lineno + 1;
            let mut toks = line.split_whitespace();
            let tag = toks.next().unwrap();
            let nums: Vec<i128> = toks
                .map(|t| t.parse().map_err(|_| Error::parse(lineno, format!("bad integer {t:?}"))))
                .collect::<Result<_>>()?;
            let index = |x: i128| {
                usize::try_from(x).map_err(|_| Error::parse(lineno, "negative vertex id"))
            };
            match tag {
                "embedding" if nums.len() == 2 && header.is_none() => {
                    header = Some((index(nums[0])?, index(nums[1])?));
                }
                "v" if nums.len() == 3 => {
                    if positions.insert(index(nums[0])?, (nums[1], nums[2])).is_some() {
                        return Err(Error::parse(lineno, "vertex repeated"));
                    }
                }
                "e" if nums.len() >= 6 && nums.len() % 2 == 0 => {
                    let points = nums[2..].chunks(2).map(|c| (c[0], c[1])).collect();
                    edges.push(EmbeddedEdge {
                        u: index(nums[0])?,
                        v: index(nums[1])?,
                        points,
                    });
                }
                _ => return Err(Error::parse(lineno, format!("unexpected line {line:?}"))),
            }
        }
        let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `embedding <n> <m>` header"))?;
        if positions.keys().copied().ne(0..n) || edges.len() != m {
            return Err(Error::Embedding(format!(
                "header promises {n} vertices and {m} edges, found {} and {}",
                positions.len(),
                edges.len()
            )));
        }
        let emb = RectilinearEmbedding {
            positions: positions.into_values().collect(),
            edges,
        };
        emb.validate()?;
        Ok(emb)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("embedding {} {}\n", self.n(), self.m());
        for (v, p) in self.positions.iter().enumerate() {
            s += &format!("v {v} {} {}\n", p.0, p.1);
        }
        for e in &self.edges {
            let pts = e.points.iter().map(|p| format!("{} {}", p.0, p.1)).join(" ");
            s += &format!("e {} {} {pts}\n", e.u, e.v);
        }
        s
    }
}

/// Where each disk of a connected-vertex-cover gadget came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CvcDiskRole {
    Vertex(usize),
    /// The Steiner disk of `edge` next to endpoint `vertex`.
    Connector { edge: usize, vertex: usize },
    Chain { edge: usize },
}

/// Unit disks of radius 1 with centres spaced 2 apart along every path:
/// vertex disks, one Steiner disk at arc 2 from each end, and terminals at
/// arcs `4, 6, ..., |p| - 4`, i.e. `(|p| - 6) / 2` of them. Returns the
/// instance, its budget `m + 2k - 1`, and the role of every disk.
pub fn cvc_gadget(emb: &RectilinearEmbedding, k: usize) -> Result<(DiskInstance, usize, Vec<CvcDiskRole>)> {
    emb.validate()?;
    let budget = (emb.m() + 2 * k)
        .checked_sub(1)
        .ok_or_else(|| Error::Embedding("the source graph needs at least one edge".into()))?;
    let mut disks = Vec::new();
    let mut roles = Vec::new();
    let mut push = |p: (i128, i128), terminal: bool, role: CvcDiskRole, disks: &mut Vec<Disk>| {
        disks.push(Disk::new(disks.len() as u64, p.0, p.1, 1, terminal));
        roles.push(role);
    };
    for (v, &p) in emb.positions.iter().enumerate() {
        push(p, false, CvcDiskRole::Vertex(v), &mut disks);
    }
    for (idx, e) in emb.edges.iter().enumerate() {
        let len = e.length();
        push(e.point_at(2), false, CvcDiskRole::Connector { edge: idx, vertex: e.u }, &mut disks);
        for s in (4..=len - 4).step_by(2) {
            push(e.point_at(s), true, CvcDiskRole::Chain { edge: idx }, &mut disks);
        }
        push(e.point_at(len - 2), false, CvcDiskRole::Connector { edge: idx, vertex: e.v }, &mut disks);
    }
    let inst = DiskInstance::new(1, disks, budget)?;
    check_cvc_adjacency(&inst, &roles)?;
    Ok((inst, budget, roles))
}

/// The intersection graph must be exactly: consecutive disks along each path,
/// and vertex disks touching their own connectors.
fn check_cvc_adjacency(inst: &DiskInstance, roles: &[CvcDiskRole]) -> Result<()> {
    let g = build_intersection_graph(inst);
    // consecutive disks along a path were pushed consecutively
    let path_of = |r: CvcDiskRole| match r {
        CvcDiskRole::Vertex(_) => None,
        CvcDiskRole::Connector { edge, .. } | CvcDiskRole::Chain { edge } => Some(edge),
    };
    for (a, b) in g.edges() {
        let intended = match (roles[a], roles[b]) {
            (CvcDiskRole::Vertex(v), CvcDiskRole::Connector { vertex, .. })
            | (CvcDiskRole::Connector { vertex, .. }, CvcDiskRole::Vertex(v)) => v == vertex,
            (ra, rb) => path_of(ra).is_some() && path_of(ra) == path_of(rb) && b == a + 1,
        };
        if !intended {
            return Err(Error::Embedding(format!(
                "undesirable adjacency between disks {a} ({:?}) and {b} ({:?})",
                roles[a], roles[b]
            )));
        }
    }
    for a in 0..roles.len() {
        let missing = match roles[a] {
            CvcDiskRole::Connector { vertex, .. } => !g.has_edge(a, vertex),
            _ => false,
        } || (a + 1 < roles.len()
            && path_of(roles[a]).is_some()
            && path_of(roles[a]) == path_of(roles[a + 1])
            && !g.has_edge(a, a + 1));
        if missing {
            return Err(Error::Embedding(format!("disk {a} lost an intended adjacency")));
        }
    }
    Ok(())
}

/// Whether `g` has a connected vertex cover of at most `k` vertices.
pub fn cvc_brute(g: &Graph, k: usize) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0..=k.min(g.n())).any(|size| {
        (0..g.n()).combinations(size).any(|set| {
            let mut inside = vec![false; g.n()];
            for &v in &set {
                inside[v] = true;
            }
            let covers = edges.iter().all(|&(u, v)| inside[u] || inside[v]);
            covers && g.components_within(&inside).len() <= 1
        })
    })
}

/// A `k x k` grid tiling instance with pairs drawn from `[n] x [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridTilingInstance {
    pub n: u32,
    pub k: u32,
    /// `sets[&(x, y)]`, 1-based, each nonempty and sorted.
    pub sets: BTreeMap<(u32, u32), BTreeSet<(u32, u32)>>,
}

impl GridTilingInstance {
    pub fn new(n: u32, k: u32, pairs: impl IntoIterator<Item = ((u32, u32), (u32, u32))>) -> Result<Self> {
        let mut sets: BTreeMap<(u32, u32), BTreeSet<(u32, u32)>> = BTreeMap::new();
        for ((x, y), (a, b)) in pairs {
            let ok = (1..=k).contains(&x) && (1..=k).contains(&y) && (1..=n).contains(&a) && (1..=n).contains(&b);
            if !ok {
                return Err(Error::InvalidInstance(format!("pair ({a},{b}) at cell ({x},{y}) out of range")));
            }
            sets.entry((x, y)).or_default().insert((a, b));
        }
        if n == 0 || k == 0 || sets.len() != (k * k) as usize {
            return Err(Error::InvalidInstance("every cell needs a nonempty set".into()));
        }
        Ok(GridTilingInstance { n, k, sets })
    }

    /// `gt <n> <k>` then `<x> <y> <a> <b>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = None;
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = lineno + 1;
            let toks: Vec<&str> = line.split_whitespace().collect();
            let nums = |ts: &[&str]| -> Result<Vec<u32>> {
                ts.iter()
                    .map(|t| t.parse().map_err(|_| Error::parse(lineno, format!("bad integer {t:?}"))))
                    .collect()
            };
            if toks[0] == "gt" {
                let v = nums(&toks[1..])?;
                if v.len() != 2 || header.is_some() {
                    return Err(Error::parse(lineno, "expected a single `gt <n> <k>` header"));
                }
                header = Some((v[0], v[1]));
            } else {
                let v = nums(&toks)?;
                if v.len() != 4 {
                    return Err(Error::parse(lineno, "expected `<x> <y> <a> <b>`"));
                }
                pairs.push(((v[0], v[1]), (v[2], v[3])));
            }
        }
        let (n, k) = header.ok_or_else(|| Error::parse(0, "missing `gt <n> <k>` header"))?;
        Self::new(n, k, pairs)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gt {} {}\n", self.n, self.k);
        for (&(x, y), set) in &self.sets {
            for &(a, b) in set {
                s += &format!("{x} {y} {a} {b}\n");
            }
        }
        s
    }
}

/// Whether some choice `s[x,y]` satisfies `a[x,y] >= a[x+1,y]` and
/// `b[x,y] >= b[x,y+1]` everywhere.
pub fn grid_tiling_brute(gt: &GridTilingInstance) -> bool {
    let cells: Vec<(u32, u32)> = gt.sets.keys().copied().collect();
    let pos: HashMap<(u32, u32), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    cells
        .iter()
        .map(|c| gt.sets[c].iter().copied())
        .multi_cartesian_product()
        .any(|choice| {
            cells.iter().enumerate().all(|(i, &(x, y))| {
                let (a, b) = choice[i];
                let right = pos.get(&(x + 1, y)).is_none_or(|&j| a >= choice[j].0);
                let up = pos.get(&(x, y + 1)).is_none_or(|&j| b >= choice[j].1);
                right && up
            })
        })
}

/// Exact layout constants for a grid tiling gadget over `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridTilingScale {
    /// Radius of a selection disk; `1` in unscaled units.
    pub unit: i128,
    /// `unit / max(n, 2)^10`, the offset between neighbouring candidate centres.
    pub eps: i128,
    /// `eps / 4`, the radius of cluster and forcing terminals.
    pub delta: i128,
    /// Radius of connector chain disks and their per-axis step.
    pub chain: i128,
}

impl GridTilingScale {
    /// `n = 1` would make `eps` equal to the unit, so the base is at least 2.
    pub fn new(n: u32) -> Result<Self> {
        let eps = 4000i128;
        let unit = (n.max(2) as i128)
            .checked_pow(10)
            .and_then(|p| p.checked_mul(eps))
            .filter(|&u| u < crate::geometry::COORD_LIMIT / 1_000_000)
            .ok_or_else(|| Error::InvalidInstance(format!("n = {n} is too large for exact coordinates")))?;
        Ok(GridTilingScale {
            unit,
            eps,
            delta: eps / 4,
            chain: unit / 100,
        })
    }

    /// Origin of cell `(x, y)`: `(2x + eps x, 2y + eps y)`.
    pub fn cell_origin(&self, x: u32, y: u32) -> ScaledPoint {
        let (x, y) = (x as i128, y as i128);
        ScaledPoint::new(2 * x * self.unit + self.eps * x, 2 * y * self.unit + self.eps * y)
    }

    pub fn selection_centre(&self, x: u32, y: u32, a: u32, b: u32) -> ScaledPoint {
        let o = self.cell_origin(x, y);
        ScaledPoint::new(o.x + self.eps * a as i128, o.y + self.eps * b as i128)
    }

    /// Terminal `a*` of the cluster between cells `(x, y)` and `(x+1, y)`.
    pub fn horizontal_cluster(&self, x: u32, y: u32, a: u32) -> ScaledPoint {
        let o = self.cell_origin(x, y);
        ScaledPoint::new(o.x + self.unit + self.eps * a as i128, o.y)
    }

    /// Terminal `b*` of the cluster between cells `(x, y)` and `(x, y+1)`.
    pub fn vertical_cluster(&self, x: u32, y: u32, b: u32) -> ScaledPoint {
        let o = self.cell_origin(x, y);
        ScaledPoint::new(o.x, o.y + self.unit + self.eps * b as i128)
    }
}

/// Checks, for every `b` in `[n]`, that a selection disk touches the cluster
/// terminal at its own offset and misses the one at the next offset:
/// `unit^2 + (eps b)^2 <= (unit + delta)^2 < (unit + eps)^2 + (eps b)^2`.
pub fn separation_checks(n: u32) -> Result<()> {
    let s = GridTilingScale::new(n)?;
    let reach = (s.unit + s.delta) * (s.unit + s.delta);
    for b in 1..=n as i128 {
        let lateral = (s.eps * b) * (s.eps * b);
        if s.unit * s.unit + lateral > reach {
            return Err(Error::Certificate(format!("offset a not covered at b = {b}")));
        }
        if (s.unit + s.eps) * (s.unit + s.eps) + lateral <= reach {
            return Err(Error::Certificate(format!("offset a + 1 covered at b = {b}")));
        }
    }
    Ok(())
}

/// Role of a disk in a grid tiling gadget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtDiskRole {
    Selection { x: u32, y: u32, a: u32, b: u32 },
    /// Cluster between `(x, y)` and `(x+1, y)`.
    Horizontal { x: u32, y: u32, a: u32 },
    /// Cluster between `(x, y)` and `(x, y+1)`.
    Vertical { x: u32, y: u32, b: u32 },
    Forcing { x: u32, y: u32 },
    /// Connector chain of the 2x2 block whose lower-left cell is `(x, y)`.
    Chain { x: u32, y: u32, end_of: Option<(u32, u32)> },
}

/// Builds the gadget and verifies its adjacency structure. Returns the
/// instance (budget `k^2`), the budget, and the role of every disk.
pub fn grid_tiling_gadget(gt: &GridTilingInstance) -> Result<(DiskInstance, usize, Vec<GtDiskRole>)> {
    let s = GridTilingScale::new(gt.n)?;
    let k = gt.k;
    let mut disks: Vec<Disk> = Vec::new();
    let mut roles = Vec::new();
    let mut push = |p: ScaledPoint, r: i128, terminal: bool, role: GtDiskRole| {
        disks.push(Disk::new(disks.len() as u64, p.x, p.y, r, terminal));
        roles.push(role);
    };
    for (&(x, y), set) in &gt.sets {
        for &(a, b) in set {
            push(s.selection_centre(x, y, a, b), s.unit, false, GtDiskRole::Selection { x, y, a, b });
        }
        let cnt = set.len() as i128;
        let sx: i128 = set.iter().map(|&(a, b)| s.selection_centre(x, y, a, b).x).sum();
        let sy: i128 = set.iter().map(|&(a, b)| s.selection_centre(x, y, a, b).y).sum();
        let centroid = ScaledPoint::new(div_round(sx, cnt), div_round(sy, cnt));
        push(centroid, s.delta, true, GtDiskRole::Forcing { x, y });
    }
    for x in 1..=k {
        for y in 1..=k {
            for c in 1..=gt.n {
                if x < k {
                    push(s.horizontal_cluster(x, y, c), s.delta, true, GtDiskRole::Horizontal { x, y, a: c });
                }
                if y < k {
                    push(s.vertical_cluster(x, y, c), s.delta, true, GtDiskRole::Vertical { x, y, b: c });
                }
            }
        }
    }
    // diagonal chains from the four cells of every 2x2 block to its centre
    let diag = isqrt(s.unit * s.unit / 2);
    for x in 1..k {
        for y in 1..k {
            let lo = s.cell_origin(x, y);
            let hi = s.cell_origin(x + 1, y + 1);
            let hub = ScaledPoint::new((lo.x + hi.x) / 2, (lo.y + hi.y) / 2);
            push(hub, s.chain, true, GtDiskRole::Chain { x, y, end_of: None });
            for (cx, cy) in [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)] {
                let o = s.cell_origin(cx, cy);
                let (sx, sy) = ((hub.x - o.x).signum(), (hub.y - o.y).signum());
                let mut p = ScaledPoint::new(o.x + sx * diag, o.y + sy * diag);
                push(p, s.chain, true, GtDiskRole::Chain { x, y, end_of: Some((cx, cy)) });
                loop {
                    p = ScaledPoint::new(p.x + sx * s.chain, p.y + sy * s.chain);
                    if (hub.x - p.x) * sx <= 0 {
                        break;
                    }
                    push(p, s.chain, true, GtDiskRole::Chain { x, y, end_of: None });
                }
            }
        }
    }
    let budget = (k * k) as usize;
    let inst = DiskInstance::new(s.unit, disks, budget)?;
    check_grid_tiling(&inst, &roles, gt)?;
    Ok((inst, budget, roles))
}

fn div_round(a: i128, b: i128) -> i128 {
    (2 * a + b).div_euclid(2 * b)
}

fn isqrt(v: i128) -> i128 {
    let mut r = (v as f64).sqrt() as i128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Adjacency facts the reduction relies on.
fn check_grid_tiling(
    inst: &DiskInstance,
    roles: &[GtDiskRole],
    gt: &GridTilingInstance,
) -> Result<()> {
    separation_checks(gt.n)?;
    let g = build_intersection_graph(inst);
    let fail = |msg: String| Err(Error::Certificate(msg));
    let selections: Vec<usize> = (0..roles.len())
        .filter(|&i| matches!(roles[i], GtDiskRole::Selection { .. }))
        .collect();
    for (i, &role) in roles.iter().enumerate() {
        match role {
            GtDiskRole::Selection { .. } => {}
            GtDiskRole::Forcing { x, y } => {
                for &j in g.neighbors(i) {
                    if !matches!(roles[j], GtDiskRole::Selection { x: sx, y: sy, .. } if (sx, sy) == (x, y)) {
                        return fail(format!("forcing terminal of ({x},{y}) touches disk {j}"));
                    }
                }
                let own = selections
                    .iter()
                    .filter(|&&j| matches!(roles[j], GtDiskRole::Selection { x: sx, y: sy, .. } if (sx, sy) == (x, y)))
                    .count();
                if g.neighbors(i).len() != own {
                    return fail(format!("forcing terminal of ({x},{y}) misses a candidate"));
                }
            }
            GtDiskRole::Horizontal { x, y, a: c } | GtDiskRole::Vertical { x, y, b: c } => {
                let horizontal = matches!(role, GtDiskRole::Horizontal { .. });
                for &j in &selections {
                    let GtDiskRole::Selection { x: sx, y: sy, a, b } = roles[j] else { unreachable!() };
                    let own = if horizontal { a } else { b };
                    let next = if horizontal { (x + 1, y) } else { (x, y + 1) };
                    let predicted = if (sx, sy) == (x, y) {
                        c <= own
                    } else if (sx, sy) == next {
                        c > own
                    } else {
                        false
                    };
                    if g.has_edge(i, j) != predicted {
                        return fail(format!("cluster disk {i} and candidate {j} break the coverage rule"));
                    }
                }
                if g.neighbors(i).iter().any(|&j| inst.disks[j].terminal) {
                    return fail(format!("cluster disk {i} touches another terminal"));
                }
            }
            GtDiskRole::Chain { end_of, .. } => {
                for &j in g.neighbors(i) {
                    match roles[j] {
                        GtDiskRole::Chain { .. } | GtDiskRole::Selection { .. } => {}
                        other => return fail(format!("chain disk {i} touches {other:?}")),
                    }
                }
                if let Some((cx, cy)) = end_of {
                    let own: Vec<usize> = selections
                        .iter()
                        .copied()
                        .filter(|&j| matches!(roles[j], GtDiskRole::Selection { x, y, .. } if (x, y) == (cx, cy)))
                        .collect();
                    if own.iter().any(|&j| !g.has_edge(i, j)) {
                        return fail(format!("chain end {i} misses a candidate of ({cx},{cy})"));
                    }
                }
            }
        }
    }
    // each block's chains must form one terminal component
    let mut blocks: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for (i, role) in roles.iter().enumerate() {
        if let GtDiskRole::Chain { x, y, .. } = *role {
            blocks.entry((x, y)).or_default().push(i);
        }
    }
    for ((x, y), members) in blocks {
        let mut mask = vec![false; g.n()];
        for &i in &members {
            mask[i] = true;
        }
        if g.components_within(&mask).len() != 1 {
            return fail(format!("chains of block ({x},{y}) are not connected"));
        }
    }
    Ok(())
}
