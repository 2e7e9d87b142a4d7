//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udg_steiner::gadgets::{EmbeddedEdge, RectilinearEmbedding};
use udg_steiner::geometry::{build_intersection_graph, DiskInstance};
use udg_steiner::instance_gen::random_instance;
use udg_steiner::Graph;

/// Random unit disk instance with `n <= 12`, `t <= 5`, `k <= 3`, sized so
/// that answers are a mix of yes and no.
pub fn small_case(seed: u64) -> DiskInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545_f491_4f6c_dd1d));
    let n = rng.gen_range(3..=12);
    let t = rng.gen_range(1..=n.min(5));
    let k = rng.gen_range(0..=3);
    let box_side = rng.gen_range(30..=70);
    let radius = rng.gen_range(6..=14);
    random_instance(n, t, k, box_side, radius, seed).unwrap()
}

pub fn graph_of(inst: &DiskInstance) -> Graph {
    build_intersection_graph(inst)
}

/// Random graph on `n` vertices with edge probability `p` and `t` terminals.
pub fn random_graph(n: usize, p: f64, t: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let terms: Vec<usize> = rand::seq::index::sample(&mut rng, n, t).into_iter().collect();
    Graph::from_edges(n, &edges, &terms)
}

/// Connected graphs on `1..=max_n` vertices, one per isomorphism class.
pub fn connected_graphs_up_to_iso(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = Graph::from_edges(n, &edges, &[]);
            if g.components_within(&vec![true; n]).len() != 1 {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut es: Vec<(usize, usize)> = edges
                        .iter()
                        .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                        .collect();
                    es.sort_unstable();
                    es
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                out.push(g);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn max_degree(g: &Graph) -> usize {
    (0..g.n()).map(|v| g.neighbors(v).len()).max().unwrap_or(0)
}

/// Lays a graph of maximum degree 4 out on the lattice `spacing * Z^2` and
/// routes every edge as a shortest rectilinear path that keeps one free
/// lattice point between itself and anything already placed. Vertex
/// positions are drawn from a seeded shuffle; the first layout for which all
/// edges route is returned.
pub fn route_embedding(g: &Graph, seed: u64) -> Option<RectilinearEmbedding> {
    const STEP: i128 = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (g.n() as f64).sqrt().ceil() as i128 + 1;
    'attempt: for _ in 0..200 {
        let mut slots: Vec<(i128, i128)> = (0..side).flat_map(|x| (0..side).map(move |y| (x, y))).collect();
        for i in (1..slots.len()).rev() {
            slots.swap(i, rng.gen_range(0..=i));
        }
        // lattice units of STEP; vertices 6 units apart
        let positions: Vec<(i128, i128)> = slots[..g.n()].iter().map(|&(x, y)| (x * 6, y * 6)).collect();
        let mut blocked: HashSet<(i128, i128)> = HashSet::new();
        for &p in &positions {
            blocked.insert(p);
        }
        let mut order: Vec<(usize, usize)> = g.edges().collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let vertex_at: HashMap<(i128, i128), usize> = positions.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut edges = Vec::new();
        for (u, v) in order {
            let Some(path) = lattice_route(positions[u], positions[v], &blocked, &vertex_at, side * 6) else {
                continue 'attempt;
            };
            for &p in &path[1..path.len() - 1] {
                blocked.insert(p);
            }
            let scaled: Vec<(i128, i128)> = path.iter().map(|&(x, y)| (x * STEP, y * STEP)).collect();
            edges.push(EmbeddedEdge {
                u,
                v,
                points: corners(&scaled),
            });
        }
        let emb = RectilinearEmbedding {
            positions: positions.iter().map(|&(x, y)| (x * STEP, y * STEP)).collect(),
            edges,
        };
        if emb.validate().is_ok() {
            return Some(emb);
        }
    }
    None
}

fn lattice_route(
    from: (i128, i128),
    to: (i128, i128),
    blocked: &HashSet<(i128, i128)>,
    vertex_at: &HashMap<(i128, i128), usize>,
    extent: i128,
) -> Option<Vec<(i128, i128)>> {
    let dirs = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    // interior points stay off occupied points and their neighbours, and
    // away from vertices other than the two endpoints
    let free = |p: (i128, i128)| {
        if p.0 < -2 || p.1 < -2 || p.0 > extent + 2 || p.1 > extent + 2 {
            return false;
        }
        for dx in -1..=1 {
            for dy in -1..=1 {
                let q = (p.0 + dx, p.1 + dy);
                if q == from || q == to {
                    continue;
                }
                // two paths may leave a shared endpoint in different directions
                let leaving = [from, to].iter().any(|e| {
                    let near = |r: (i128, i128)| (r.0 - e.0).abs() + (r.1 - e.1).abs() == 1;
                    near(p) && near(q)
                });
                if blocked.contains(&q) && (q == p || !leaving) {
                    return false;
                }
            }
        }
        !vertex_at.keys().any(|&w| w != from && w != to && (w.0 - p.0).abs() + (w.1 - p.1).abs() <= 2)
    };
    let mut prev: HashMap<(i128, i128), (i128, i128)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(p) = queue.pop_front() {
        if p == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for d in dirs {
            let q = (p.0 + d.0, p.1 + d.1);
            if prev.contains_key(&q) {
                continue;
            }
            if q == to || free(q) {
                prev.insert(q, p);
                queue.push_back(q);
            }
        }
    }
    None
}

fn corners(path: &[(i128, i128)]) -> Vec<(i128, i128)> {
    let mut out = vec![path[0]];
    for i in 1..path.len() - 1 {
        let a = (path[i].0 - path[i - 1].0, path[i].1 - path[i - 1].1);
        let b = (path[i + 1].0 - path[i].0, path[i + 1].1 - path[i].1);
        if a != b {
            out.push(path[i]);
        }
    }
    out.push(*path.last().unwrap());
    out
}

/// Terminals of `g` as a set, for readable assertions.
pub fn terminal_set(g: &Graph) -> BTreeSet<usize> {
    g.terminals().into_iter().collect()
}
