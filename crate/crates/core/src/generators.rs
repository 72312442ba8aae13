//! Small named graphs and seeded random families used by the verification
//! suites and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn unit(n: usize, directed: bool, edges: &[(usize, usize)]) -> Graph {
    Graph::from_unit_edges(n, directed, edges).expect("generated edges are in range")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    unit(n, false, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    unit(n, false, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    unit(n, false, &edges)
}

/// `K_{1,leaves}` with the center at index 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    unit(leaves + 1, false, &edges)
}

/// Two vertices joined by arcs in both directions.
pub fn two_node_digraph() -> Graph {
    unit(2, true, &[(0, 1), (1, 0)])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`, undirected, with weights uniform in `[0.1, 2)`
/// when `weighted`.
pub fn erdos_renyi(n: usize, p: f64, weighted: bool, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                let w = if weighted { rng.gen_range(0.1..2.0) } else { 1.0 };
                edges.push((i, j, w));
            }
        }
    }
    Graph::from_edges(n, false, &edges).expect("generated edges are in range")
}

/// Connected undirected graph: a random spanning tree plus each remaining
/// pair with probability `p`.
pub fn random_connected(n: usize, p: f64, weighted: bool, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut present = vec![false; n * n];
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let (a, b) = (order[k].min(parent), order[k].max(parent));
        present[a * n + b] = true;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !present[i * n + j] && rng.gen_bool(p) {
                present[i * n + j] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if present[i * n + j] {
                let w = if weighted { rng.gen_range(0.1..2.0) } else { 1.0 };
                edges.push((i, j, w));
            }
        }
    }
    Graph::from_edges(n, false, &edges).expect("generated edges are in range")
}

/// Strongly connected unweighted digraph without self-loops: a random
/// Hamiltonian cycle plus each other arc with probability `p`.
pub fn random_strongly_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut present = vec![false; n * n];
    if n > 1 {
        for k in 0..n {
            present[order[k] * n + order[(k + 1) % n]] = true;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !present[i * n + j] && rng.gen_bool(p) {
                present[i * n + j] = true;
            }
        }
    }
    let arcs: Vec<_> = (0..n * n).filter(|&x| present[x]).map(|x| (x / n, x % n)).collect();
    unit(n, true, &arcs)
}

/// Undirected graph with exactly `m` distinct edges and no isolated
/// vertices when `m >= n`: a random spanning tree, then uniform extra
/// edges.
pub fn random_sparse(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let max_edges = n * n.saturating_sub(1) / 2;
    let target = m.min(max_edges);
    let mut present = std::collections::BTreeSet::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 1..n.min(target + 1) {
        let parent = order[rng.gen_range(0..k)];
        present.insert((order[k].min(parent), order[k].max(parent)));
    }
    while present.len() < target {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            present.insert((i.min(j), i.max(j)));
        }
    }
    let edges: Vec<_> = present.into_iter().collect();
    unit(n, false, &edges)
}
