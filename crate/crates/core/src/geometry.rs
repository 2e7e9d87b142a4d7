//! Integer-exact disk instances and their intersection graphs.
//!
//! Coordinates and radii are integers in units of `1/scale`. Two closed disks
//! intersect iff `|c_u - c_v|^2 <= (r_u + r_v)^2`, evaluated in `i128` with
//! every magnitude bounded by `2^61`, so no intermediate can overflow.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest coordinate or radius magnitude accepted at ingestion.
pub const COORD_LIMIT: i128 = 1 << 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledPoint {
    pub x: i128,
    pub y: i128,
}

impl ScaledPoint {
    pub const fn new(x: i128, y: i128) -> Self {
        ScaledPoint { x, y }
    }
}

pub fn squared_distance(p: ScaledPoint, q: ScaledPoint) -> i128 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    dx * dx + dy * dy
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub id: u64,
    pub center: ScaledPoint,
    pub radius: i128,
    pub terminal: bool,
}

impl Disk {
    pub fn new(id: u64, x: i128, y: i128, radius: i128, terminal: bool) -> Self {
        Disk {
            id,
            center: ScaledPoint::new(x, y),
            radius,
            terminal,
        }
    }

    /// Closed-disk intersection; tangent disks intersect.
    pub fn intersects(&self, other: &Disk) -> bool {
        let reach = self.radius + other.radius;
        squared_distance(self.center, other.center) <= reach * reach
    }
}

/// Disks, terminal flags and the Steiner budget `k`, all under one scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskInstance {
    pub scale: i128,
    pub disks: Vec<Disk>,
    pub k: usize,
}

impl DiskInstance {
    /// Validates and wraps the parts of an instance.
    pub fn new(scale: i128, disks: Vec<Disk>, k: usize) -> Result<Self> {
        let inst = DiskInstance { scale, disks, k };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale <= 0 {
            return Err(Error::InvalidInstance(format!(
                "scale must be positive, got {}",
                self.scale
            )));
        }
        let mut ids = HashSet::with_capacity(self.disks.len());
        for d in &self.disks {
            if !ids.insert(d.id) {
                return Err(Error::InvalidInstance(format!("duplicate disk id {}", d.id)));
            }
            if d.radius <= 0 {
                return Err(Error::InvalidInstance(format!(
                    "disk {} has non-positive radius {}",
                    d.id, d.radius
                )));
            }
            for c in [d.center.x, d.center.y, d.radius] {
                if c.abs() > COORD_LIMIT {
                    return Err(Error::CoordinateRange(c));
                }
            }
        }
        if self.terminal_count() == 0 {
            return Err(Error::InvalidInstance("instance has no terminals".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.disks.len()
    }

    pub fn terminal_count(&self) -> usize {
        self.disks.iter().filter(|d| d.terminal).count()
    }

    /// The common radius when all radii agree.
    pub fn uniform_radius(&self) -> Option<i128> {
        let r = self.disks.first()?.radius;
        self.disks.iter().all(|d| d.radius == r).then_some(r)
    }

    pub fn is_unit_disk(&self) -> bool {
        self.uniform_radius().is_some()
    }

    /// Vertex index of the disk with the given id.
    pub fn index_of(&self, id: u64) -> Option<usize> {
        self.disks.iter().position(|d| d.id == id)
    }
}

/// Intersection graph of the instance; vertex `i` is `inst.disks[i]`.
pub fn build_intersection_graph(inst: &DiskInstance) -> Graph {
    let n = inst.n();
    let mut g = Graph::new(n);
    // sweep over x so only pairs within the largest possible reach are tested
    let max_r = inst.disks.iter().map(|d| d.radius).max().unwrap_or(0);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (inst.disks[i].center.x, i));
    for (a, &u) in order.iter().enumerate() {
        let du = &inst.disks[u];
        let limit = du.center.x + du.radius + max_r;
        for &v in &order[a + 1..] {
            let dv = &inst.disks[v];
            if dv.center.x > limit {
                break;
            }
            if du.intersects(dv) {
                g.add_edge(u, v);
            }
        }
    }
    for (i, d) in inst.disks.iter().enumerate() {
        g.set_terminal(i, d.terminal);
    }
    g
}
