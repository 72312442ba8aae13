//! Simple paths between two vertices.

use crate::graph::Graph;

/// A path visiting distinct vertices. The path from a vertex to itself is
/// the stationary path: no arcs, weight 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplePath {
    pub vertices: Vec<usize>,
    pub weight: f64,
}

impl SimplePath {
    /// Number of arcs traversed.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Every simple path from `i` to `j` following arc directions, by
/// backtracking. `i == j` yields only the stationary path.
pub fn simple_paths(g: &Graph, i: usize, j: usize) -> Vec<SimplePath> {
    let mut out = Vec::new();
    visit_simple_paths(g, i, j, |p, w| {
        out.push(SimplePath {
            vertices: p.to_vec(),
            weight: w,
        })
    });
    out
}

pub fn visit_simple_paths<F: FnMut(&[usize], f64)>(g: &Graph, i: usize, j: usize, mut visit: F) {
    if i == j {
        visit(&[i], 1.0);
        return;
    }
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.out_neighbors(v).collect()).collect();
    let mut on_path = vec![false; g.n()];
    let mut path = vec![i];
    on_path[i] = true;
    walk(g, &adj, j, &mut on_path, &mut path, 1.0, &mut visit);
}

fn walk<F: FnMut(&[usize], f64)>(
    g: &Graph,
    adj: &[Vec<usize>],
    target: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    weight: f64,
    visit: &mut F,
) {
    let v = *path.last().unwrap();
    for &w in &adj[v] {
        if on_path[w] {
            continue;
        }
        let next_weight = weight * g.weight(v, w);
        path.push(w);
        if w == target {
            visit(path, next_weight);
        } else {
            on_path[w] = true;
            walk(g, adj, target, on_path, path, next_weight, visit);
            on_path[w] = false;
        }
        path.pop();
    }
}
