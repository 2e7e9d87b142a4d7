//! Text formats. One record per line, integers only, `#` starts a comment.
//!
//! Instance:
//!
//! ```text
//! udg <scale> <n> <k>
//! <id> <x> <y> <radius> <T|S>
//! ```
//!
//! Solution, with disk ids rather than vertex indices:
//!
//! ```text
//! yes <number of steiner vertices>
//! steiner <id> <id> ...
//! edge <id> <id>
//! ```
//!
//! or the single line `no`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Disk, DiskInstance};
use crate::graph::SteinerTree;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn int<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad integer {tok:?}")))
}

pub fn parse_instance(text: &str) -> Result<DiskInstance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty instance"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "udg" {
        return Err(Error::parse(hl, "expected `udg <scale> <n> <k>`"));
    }
    let scale: i128 = int(hl, toks[1])?;
    let n: usize = int(hl, toks[2])?;
    let k: usize = int(hl, toks[3])?;
    let mut disks = Vec::with_capacity(n);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(Error::parse(ln, "expected `<id> <x> <y> <radius> <T|S>`"));
        }
        let terminal = match toks[4] {
            "T" => true,
            "S" => false,
            other => return Err(Error::parse(ln, format!("flag must be T or S, got {other:?}"))),
        };
        disks.push(Disk::new(
            int(ln, toks[0])?,
            int(ln, toks[1])?,
            int(ln, toks[2])?,
            int(ln, toks[3])?,
            terminal,
        ));
    }
    if disks.len() != n {
        return Err(Error::InvalidInstance(format!(
            "header promises {n} disks, found {}",
            disks.len()
        )));
    }
    DiskInstance::new(scale, disks, k)
}

pub fn write_instance(inst: &DiskInstance) -> String {
    let mut s = format!("udg {} {} {}\n", inst.scale, inst.n(), inst.k);
    for d in &inst.disks {
        let flag = if d.terminal { 'T' } else { 'S' };
        let _ = writeln!(s, "{} {} {} {} {flag}", d.id, d.center.x, d.center.y, d.radius);
    }
    s
}

pub fn read_instance(path: &Path) -> Result<DiskInstance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

/// A solution file's content in disk ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Yes {
        steiner: Vec<u64>,
        edges: Vec<(u64, u64)>,
    },
    No,
}

impl Solution {
    /// Translates a tree on vertex indices to disk ids.
    pub fn from_tree(inst: &DiskInstance, tree: &SteinerTree) -> Self {
        let id = |v: usize| inst.disks[v].id;
        Solution::Yes {
            steiner: tree.steiner.iter().map(|&v| id(v)).collect(),
            edges: tree.edges.iter().map(|&(u, v)| (id(u), id(v))).collect(),
        }
    }

    /// Translates back to vertex indices; unknown ids are an error.
    pub fn to_tree(&self, inst: &DiskInstance) -> Result<Option<SteinerTree>> {
        let Solution::Yes { steiner, edges } = self else {
            return Ok(None);
        };
        let index: std::collections::HashMap<u64, usize> =
            inst.disks.iter().enumerate().map(|(i, d)| (d.id, i)).collect();
        let look = |id: &u64| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidInstance(format!("solution names unknown disk {id}")))
        };
        Ok(Some(SteinerTree {
            steiner: steiner.iter().map(look).collect::<Result<_>>()?,
            edges: edges
                .iter()
                .map(|(u, v)| Ok((look(u)?, look(v)?)))
                .collect::<Result<_>>()?,
        }))
    }
}

pub fn write_solution(sol: &Solution) -> String {
    match sol {
        Solution::No => "no\n".to_string(),
        Solution::Yes { steiner, edges } => {
            let mut s = format!("yes {}\nsteiner", steiner.len());
            for id in steiner {
                let _ = write!(s, " {id}");
            }
            s.push('\n');
            for (u, v) in edges {
                let _ = writeln!(s, "edge {u} {v}");
            }
            s
        }
    }
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty solution"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    match toks.as_slice() {
        ["no"] => {
            if let Some((ln, _)) = lines.next() {
                return Err(Error::parse(ln, "nothing may follow `no`"));
            }
            Ok(Solution::No)
        }
        ["yes", count] => {
            let count: usize = int(hl, count)?;
            let mut steiner = None;
            let mut edges = Vec::new();
            for (ln, line) in lines {
                let toks: Vec<&str> = line.split_whitespace().collect();
                match toks[0] {
                    "steiner" if steiner.is_none() => {
                        steiner = Some(
                            toks[1..]
                                .iter()
                                .map(|t| int(ln, t))
                                .collect::<Result<Vec<u64>>>()?,
                        );
                    }
                    "edge" if toks.len() == 3 => edges.push((int(ln, toks[1])?, int(ln, toks[2])?)),
                    _ => return Err(Error::parse(ln, format!("unexpected line {line:?}"))),
                }
            }
            let steiner = steiner.ok_or_else(|| Error::parse(hl, "missing `steiner` line"))?;
            if steiner.len() != count {
                return Err(Error::parse(hl, "steiner count does not match the header"));
            }
            Ok(Solution::Yes { steiner, edges })
        }
        _ => Err(Error::parse(hl, "expected `yes <count>` or `no`")),
    }
}
