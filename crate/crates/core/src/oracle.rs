//! Ground truth by exhaustive search, and witness verification.
//!
//! Subsets of non-terminals are enumerated by increasing size; the first
//! subset whose union with `R` induces a subgraph connecting all of `R` is the
//! answer. Work is bounded by a subset budget, and exceeding it is an error
//! rather than a guess.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DisjointSets, Graph, SteinerTree};
use crate::{Answer, Outcome};

pub const DEFAULT_BUDGET: u128 = 20_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "UDG_STEINER_ORACLE_BUDGET";

pub fn budget_from_env() -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Dense adjacency rows for fast induced-connectivity checks.
struct BitGraph {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitGraph {
    fn new(g: &Graph) -> Self {
        let words = g.n().div_ceil(64).max(1);
        let rows = (0..g.n())
            .map(|u| {
                let mut row = vec![0u64; words];
                for &v in g.neighbors(u) {
                    row[v / 64] |= 1 << (v % 64);
                }
                row
            })
            .collect();
        BitGraph { words, rows }
    }

    fn empty(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    /// Whether every vertex of `targets` is reachable from `root` inside `allowed`.
    fn connects(&self, allowed: &[u64], root: usize, targets: &[u64]) -> bool {
        let mut reached = self.empty();
        reached[root / 64] |= 1 << (root % 64);
        let mut frontier = reached.clone();
        let mut next = self.empty();
        loop {
            next.iter_mut().for_each(|w| *w = 0);
            for (wi, &word) in frontier.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let v = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (n, r) in next.iter_mut().zip(&self.rows[v]) {
                        *n |= r;
                    }
                }
            }
            let mut grew = false;
            for i in 0..self.words {
                next[i] &= allowed[i] & !reached[i];
                reached[i] |= next[i];
                grew |= next[i] != 0;
            }
            if targets.iter().zip(&reached).all(|(t, r)| t & !r == 0) {
                return true;
            }
            if !grew {
                return false;
            }
            std::mem::swap(&mut frontier, &mut next);
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn subsets_up_to(m: usize, k: usize) -> u128 {
    (0..=k.min(m)).fold(0u128, |acc, s| acc.saturating_add(binomial(m, s)))
}

struct Search<'g> {
    g: &'g Graph,
    bits: BitGraph,
    pool: Vec<usize>,
    terminals: Vec<usize>,
    base: Vec<u64>,
    enumerated: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        let bits = BitGraph::new(g);
        let terminals = g.terminals();
        let mut base = bits.empty();
        for &t in &terminals {
            base[t / 64] |= 1 << (t % 64);
        }
        Search {
            g,
            bits,
            pool: g.non_terminals(),
            terminals,
            base,
            enumerated: 0,
        }
    }

    /// Terminals are connected in `g` at all.
    fn feasible(&self) -> bool {
        let all = vec![u64::MAX; self.bits.words];
        self.terminals.is_empty() || self.bits.connects(&all, self.terminals[0], &self.base)
    }

    /// First subset of exactly `size` pool vertices that connects `R`.
    fn layer(&mut self, size: usize) -> Option<Vec<usize>> {
        let Some(&root) = self.terminals.first() else {
            return Some(Vec::new());
        };
        let m = self.pool.len();
        if size > m {
            return None;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        let mut allowed = self.base.clone();
        loop {
            allowed.copy_from_slice(&self.base);
            for &i in &idx {
                let v = self.pool[i];
                allowed[v / 64] |= 1 << (v % 64);
            }
            self.enumerated += 1;
            if self.bits.connects(&allowed, root, &self.base) {
                return Some(idx.iter().map(|&i| self.pool[i]).collect());
            }
            // next combination in lexicographic order
            let mut pos = size;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                if idx[pos] < m - size + pos {
                    break;
                }
            }
            idx[pos] += 1;
            for j in pos + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn witness(&self, steiner: &[usize]) -> SteinerTree {
        SteinerTree::spanning(self.g, steiner).expect("connecting subset yields a tree")
    }
}

/// Decides whether at most `k` Steiner vertices suffice, using the budget from
/// the environment.
pub fn brute_force_decide(g: &Graph, k: usize) -> Result<Outcome> {
    brute_force_decide_with_budget(g, k, budget_from_env())
}

pub fn brute_force_decide_with_budget(g: &Graph, k: usize, budget: u128) -> Result<Outcome> {
    let mut search = Search::new(g);
    if !search.feasible() {
        return Ok(Outcome {
            answer: Answer::No,
            states: 0,
        });
    }
    let needed = subsets_up_to(search.pool.len(), k);
    if needed > budget {
        return Err(Error::TooLarge { needed, budget });
    }
    for size in 0..=k.min(search.pool.len()) {
        if let Some(set) = search.layer(size) {
            let tree = search.witness(&set);
            return Ok(Outcome {
                answer: Answer::Yes(tree),
                states: search.enumerated,
            });
        }
    }
    Ok(Outcome {
        answer: Answer::No,
        states: search.enumerated,
    })
}

/// Fewest Steiner vertices of any Steiner tree, or `None` when the terminals
/// lie in different components of `g`.
pub fn brute_force_min(g: &Graph) -> Result<Option<usize>> {
    brute_force_min_with_budget(g, budget_from_env())
}

pub fn brute_force_min_with_budget(g: &Graph, budget: u128) -> Result<Option<usize>> {
    let mut search = Search::new(g);
    if !search.feasible() {
        return Ok(None);
    }
    let m = search.pool.len();
    for size in 0..=m {
        let needed = subsets_up_to(m, size);
        if needed > budget {
            return Err(Error::TooLarge { needed, budget });
        }
        if search.layer(size).is_some() {
            return Ok(Some(size));
        }
    }
    unreachable!("the full non-terminal set connects feasible terminals")
}

/// Why a tree was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeDefect {
    NonEdge(usize, usize),
    SteinerMismatch,
    TerminalUncovered(usize),
    Cycle(usize, usize),
    Disconnected,
    TooManySteiner { used: usize, budget: usize },
}

impl fmt::Display for TreeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeDefect::NonEdge(u, v) => write!(f, "non-edge {u}-{v}"),
            TreeDefect::SteinerMismatch => {
                write!(f, "steiner set does not match the tree's non-terminal vertices")
            }
            TreeDefect::TerminalUncovered(t) => write!(f, "terminal uncovered: {t}"),
            TreeDefect::Cycle(u, v) => write!(f, "cycle closed by edge {u}-{v}"),
            TreeDefect::Disconnected => write!(f, "tree is disconnected"),
            TreeDefect::TooManySteiner { used, budget } => {
                write!(f, "{used} steiner vertices exceed the budget {budget}")
            }
        }
    }
}

/// Accepts iff the tree uses only edges of `g`, is acyclic and connected,
/// contains every terminal and has at most `k` Steiner vertices.
pub fn verify_tree(g: &Graph, k: usize, tree: &SteinerTree) -> std::result::Result<(), TreeDefect> {
    for &(u, v) in &tree.edges {
        if !g.has_edge(u, v) {
            return Err(TreeDefect::NonEdge(u, v));
        }
    }
    let vertices = tree.vertices(g);
    let listed: BTreeSet<usize> = tree.steiner.iter().copied().collect();
    let actual: BTreeSet<usize> = vertices.iter().copied().filter(|&v| !g.is_terminal(v)).collect();
    if listed != actual || listed.len() != tree.steiner.len() {
        return Err(TreeDefect::SteinerMismatch);
    }
    if let Some(t) = g.terminals().into_iter().find(|t| !vertices.contains(t)) {
        return Err(TreeDefect::TerminalUncovered(t));
    }
    let mut ds = DisjointSets::new(g.n());
    for &(u, v) in &tree.edges {
        if !ds.union(u, v) {
            return Err(TreeDefect::Cycle(u, v));
        }
    }
    if let Some(&first) = vertices.iter().next() {
        if vertices.iter().any(|&v| !ds.same(first, v)) {
            return Err(TreeDefect::Disconnected);
        }
    }
    if tree.steiner.len() > k {
        return Err(TreeDefect::TooManySteiner {
            used: tree.steiner.len(),
            budget: k,
        });
    }
    Ok(())
}
