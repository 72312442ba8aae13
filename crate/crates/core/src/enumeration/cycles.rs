//! Simple cycles (the primes of the hike monoid).
//!
//! Unbounded enumeration uses Johnson's algorithm (1975). With a length cap
//! below `n` the blocking bookkeeping of Johnson's algorithm is no longer
//! sound, so a plain depth-limited backtracking search is used instead.

use crate::graph::{Graph, VertexSubset};

/// A directed simple cycle in canonical rotation (smallest vertex first).
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleCyclePrime {
    vertices: Vec<usize>,
    vertex_set: VertexSubset,
    weight: f64,
}

impl SimpleCyclePrime {
    /// Builds the cycle `v0 -> v1 -> ... -> v0`, checking every arc exists.
    /// Any rotation is accepted.
    pub fn new(g: &Graph, vertices: &[usize]) -> Option<Self> {
        if vertices.is_empty() || vertices.iter().any(|&v| v >= g.n()) {
            return None;
        }
        let set = VertexSubset::new(vertices.iter().copied(), g.n()).ok()?;
        if set.len() != vertices.len() {
            return None;
        }
        let len = vertices.len();
        let mut weight = 1.0;
        for i in 0..len {
            let w = g.weight(vertices[i], vertices[(i + 1) % len]);
            if w == 0.0 {
                return None;
            }
            weight *= w;
        }
        let start = (0..len).min_by_key(|&i| vertices[i]).unwrap();
        let mut canonical = vertices[start..].to_vec();
        canonical.extend_from_slice(&vertices[..start]);
        Some(Self {
            vertices: canonical,
            vertex_set: set,
            weight,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of arcs, which equals the number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> &VertexSubset {
        &self.vertex_set
    }

    /// Product of arc weights.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.vertex_set.is_disjoint(&other.vertex_set)
    }

    pub fn display(&self, g: &Graph) -> String {
        self.vertices
            .iter()
            .map(|&v| g.label(v))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// All directed simple cycles with at most `max_len` arcs, sorted by
/// `(length, vertex sequence)`. Undirected edges give 2-cycles and every
/// longer undirected cycle appears once per orientation.
pub fn simple_cycles(g: &Graph, max_len: usize) -> Vec<SimpleCyclePrime> {
    let mut raw = Vec::new();
    visit_simple_cycles(g, max_len, |c| raw.push(c.to_vec()));
    raw.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    raw.into_iter()
        .map(|c| SimpleCyclePrime::new(g, &c).expect("enumerated cycle is valid"))
        .collect()
}

/// Calls `visit` once per simple cycle (canonical rotation), in search
/// order.
pub fn visit_simple_cycles<F: FnMut(&[usize])>(g: &Graph, max_len: usize, mut visit: F) {
    let n = g.n();
    if max_len == 0 || n == 0 {
        return;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.out_neighbors(v).collect()).collect();
    if max_len >= n {
        Johnson::new(&adj).run(&mut visit);
    } else {
        bounded_search(&adj, max_len, &mut visit);
    }
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
}

impl<'a> Johnson<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Self {
            adj,
            blocked: vec![false; n],
            blocked_by: vec![Vec::new(); n],
            stack: Vec::new(),
            start: 0,
        }
    }

    fn run<F: FnMut(&[usize])>(&mut self, visit: &mut F) {
        for s in 0..self.adj.len() {
            self.start = s;
            for v in s..self.adj.len() {
                self.blocked[v] = false;
                self.blocked_by[v].clear();
            }
            self.circuit(s, visit);
        }
    }

    fn unblock(&mut self, v: usize) {
        self.blocked[v] = false;
        let waiting = std::mem::take(&mut self.blocked_by[v]);
        for w in waiting {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }

    fn circuit<F: FnMut(&[usize])>(&mut self, v: usize, visit: &mut F) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if w < self.start {
                continue;
            }
            if w == self.start {
                visit(&self.stack);
                found = true;
            } else if !self.blocked[w] && self.circuit(w, visit) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if w >= self.start && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }
}

fn bounded_search<F: FnMut(&[usize])>(adj: &[Vec<usize>], max_len: usize, visit: &mut F) {
    fn extend<F: FnMut(&[usize])>(
        adj: &[Vec<usize>],
        max_len: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        visit: &mut F,
    ) {
        let start = path[0];
        let v = *path.last().unwrap();
        for &w in &adj[v] {
            if w == start {
                visit(path);
            } else if w > start && !on_path[w] && path.len() < max_len {
                on_path[w] = true;
                path.push(w);
                extend(adj, max_len, on_path, path, visit);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    let mut on_path = vec![false; adj.len()];
    for s in 0..adj.len() {
        let mut path = vec![s];
        on_path[s] = true;
        extend(adj, max_len, &mut on_path, &mut path, visit);
        on_path[s] = false;
    }
}
