//! Connected vertex subsets by ESU (Wernicke 2006) on the undirected
//! skeleton. Vertex indices serve as the ESU labels, so the order of
//! emission is reproducible.

use crate::graph::{Graph, VertexSubset};

/// Calls `visit` with the sorted members of every connected `k`-subset,
/// each exactly once.
pub fn for_each_connected_subset<F: FnMut(&[usize])>(g: &Graph, k: usize, mut visit: F) {
    let n = g.n();
    if k == 0 || k > n {
        return;
    }
    let skeleton = g.skeleton();
    let mut esu = Esu {
        skeleton: &skeleton,
        k,
        // number of current subgraph members adjacent to (or equal to) v
        near: vec![0u32; n],
        sub: Vec::with_capacity(k),
        sorted: Vec::with_capacity(k),
    };
    for v in 0..n {
        esu.add(v);
        let ext: Vec<usize> = skeleton[v].iter().copied().filter(|&u| u > v).collect();
        esu.extend(v, ext, &mut visit);
        esu.remove(v);
    }
}

pub fn connected_subsets(g: &Graph, k: usize) -> Vec<VertexSubset> {
    let mut out = Vec::new();
    for_each_connected_subset(g, k, |s| out.push(VertexSubset::from_sorted(s.to_vec())));
    out
}

pub fn count_connected_subsets(g: &Graph, k: usize) -> u64 {
    let mut count = 0;
    for_each_connected_subset(g, k, |_| count += 1);
    count
}

struct Esu<'a> {
    skeleton: &'a [Vec<usize>],
    k: usize,
    near: Vec<u32>,
    sub: Vec<usize>,
    sorted: Vec<usize>,
}

impl Esu<'_> {
    fn add(&mut self, w: usize) {
        self.sub.push(w);
        self.near[w] += 1;
        for &u in &self.skeleton[w] {
            self.near[u] += 1;
        }
    }

    fn remove(&mut self, w: usize) {
        self.sub.pop();
        self.near[w] -= 1;
        for &u in &self.skeleton[w] {
            self.near[u] -= 1;
        }
    }

    fn extend<F: FnMut(&[usize])>(&mut self, root: usize, mut ext: Vec<usize>, visit: &mut F) {
        if self.sub.len() == self.k {
            self.sorted.clear();
            self.sorted.extend_from_slice(&self.sub);
            self.sorted.sort_unstable();
            visit(&self.sorted);
            return;
        }
        while let Some(w) = ext.pop() {
            // exclusive neighbours of w: not in, nor adjacent to, the subgraph
            let mut next = ext.clone();
            next.extend(
                self.skeleton[w]
                    .iter()
                    .copied()
                    .filter(|&u| u > root && self.near[u] == 0),
            );
            self.add(w);
            self.extend(root, next, visit);
            self.remove(w);
        }
    }
}
