//! Undirected simple graphs with a terminal set, and Steiner tree witnesses.

use std::collections::{BTreeSet, VecDeque};

/// Simple undirected graph on vertices `0..n` with a distinguished terminal set.
///
/// Adjacency lists are kept sorted so that edge queries are a binary search and
/// iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    terminal: Vec<bool>,
}

impl Graph {
    /// Graph with `n` isolated non-terminal vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            terminal: vec![false; n],
        }
    }

    /// Builds a graph from an edge list. Self-loops and duplicates are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], terminals: &[usize]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        for &t in terminals {
            g.terminal[t] = true;
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
        }
        if let Err(pos) = self.adj[v].binary_search(&u) {
            self.adj[v].insert(pos, u);
        }
    }

    pub fn set_terminal(&mut self, v: usize, is_terminal: bool) {
        self.terminal[v] = is_terminal;
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_terminal(&self, v: usize) -> bool {
        self.terminal[v]
    }

    /// Terminals in increasing order.
    pub fn terminals(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.terminal[v]).collect()
    }

    pub fn non_terminals(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.terminal[v]).collect()
    }

    /// Connected components of the subgraph induced by `allowed`, each sorted,
    /// listed by smallest member.
    pub fn components_within(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if !allowed[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// BFS spanning forest of the subgraph induced by `allowed`, rooted at the
    /// smallest vertex of each component. Edges are `(parent, child)`.
    pub fn bfs_forest_within(&self, allowed: &[bool]) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.n()];
        let mut edges = Vec::new();
        for s in 0..self.n() {
            if !allowed[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        edges.push((u, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        edges
    }
}

/// A Steiner tree: an edge list in the host graph plus its Steiner vertices.
///
/// The vertex set is the edge endpoints plus the listed Steiner vertices; a
/// host with a single terminal is spanned by the empty tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    pub edges: Vec<(usize, usize)>,
    pub steiner: Vec<usize>,
}

impl SteinerTree {
    /// Normalizes edge orientation and order, and derives the Steiner set from
    /// the edge endpoints.
    pub fn from_edges(g: &Graph, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let steiner: BTreeSet<usize> = edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .filter(|&v| !g.is_terminal(v))
            .collect();
        SteinerTree {
            edges,
            steiner: steiner.into_iter().collect(),
        }
    }

    pub fn steiner_count(&self) -> usize {
        self.steiner.len()
    }

    /// Edge endpoints plus listed Steiner vertices. A tree without edges over a
    /// single-terminal host is that terminal alone.
    pub fn vertices(&self, g: &Graph) -> BTreeSet<usize> {
        let mut vs: BTreeSet<usize> = self.steiner.iter().copied().collect();
        for &(u, v) in &self.edges {
            vs.insert(u);
            vs.insert(v);
        }
        if vs.is_empty() {
            let terminals = g.terminals();
            if terminals.len() == 1 {
                vs.insert(terminals[0]);
            }
        }
        vs
    }

    /// Spanning tree of `g[R ∪ steiner]` with Steiner leaves pruned, or `None`
    /// when that subgraph does not connect all terminals.
    pub fn spanning(g: &Graph, steiner: &[usize]) -> Option<Self> {
        let full = Self::spanning_all(g, steiner)?;
        Some(Self::from_edges(g, prune_steiner_leaves(g, full.edges)))
    }

    /// BFS tree of `g[R ∪ steiner]` keeping every reachable Steiner vertex.
    pub fn spanning_all(g: &Graph, steiner: &[usize]) -> Option<Self> {
        let mut allowed = vec![false; g.n()];
        for v in g.terminals() {
            allowed[v] = true;
        }
        for &s in steiner {
            allowed[s] = true;
        }
        let root = g.terminals().first().copied()?;
        let mut seen = vec![false; g.n()];
        seen[root] = true;
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if allowed[w] && !seen[w] {
                    seen[w] = true;
                    edges.push((u, w));
                    queue.push_back(w);
                }
            }
        }
        if g.terminals().iter().any(|&t| !seen[t]) {
            return None;
        }
        Some(Self::from_edges(g, edges))
    }
}

/// Repeatedly removes edges hanging off non-terminal leaves.
pub fn prune_steiner_leaves(g: &Graph, mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    loop {
        let mut degree = std::collections::HashMap::<usize, usize>::new();
        for &(u, v) in &edges {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let before = edges.len();
        edges.retain(|&(u, v)| {
            let leaf = |x: usize| degree[&x] == 1 && !g.is_terminal(x);
            !(leaf(u) || leaf(v))
        });
        if edges.len() == before {
            return edges;
        }
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
