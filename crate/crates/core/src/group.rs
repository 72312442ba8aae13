//! Everett–Borgatti group centralities: external degree, group closeness and
//! group betweenness. All three use unweighted hop distances on the
//! undirected skeleton, so arc direction and weights are ignored.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSubset};

#[derive(Clone, Debug, PartialEq)]
pub struct GroupCentralityRow {
    pub subset: VertexSubset,
    pub degree: usize,
    /// `f64::INFINITY` when some outside vertex is unreachable.
    pub closeness_sum: f64,
    pub closeness_avg: f64,
    pub betweenness: f64,
}

/// Number of outside vertices adjacent to at least one member.
pub fn group_degree(g: &Graph, h: &VertexSubset) -> usize {
    degree_on(&g.skeleton(), h.members())
}

/// External degree divided by `|V \ H|`; `0` when `H = V`.
pub fn group_degree_normalized(g: &Graph, h: &VertexSubset) -> f64 {
    let outside = g.n() - h.len();
    if outside == 0 {
        return 0.0;
    }
    group_degree(g, h) as f64 / outside as f64
}

/// `(sum, average)` of `min_{u in H} d(u, v)` over `v` outside `H`.
pub fn group_closeness(g: &Graph, h: &VertexSubset) -> (f64, f64) {
    closeness_on(&g.skeleton(), h.members())
}

/// Sum over unordered outside pairs `{u, v}` of the fraction of geodesics
/// meeting `H`.
pub fn group_betweenness(g: &Graph, h: &VertexSubset) -> f64 {
    Geodesics::new(g).group_betweenness(h.members())
}

pub fn group_row(g: &Graph, h: &VertexSubset) -> GroupCentralityRow {
    GroupEvaluator::new(g).row(h)
}

fn degree_on(skeleton: &[Vec<usize>], members: &[usize]) -> usize {
    let mut seen = vec![false; skeleton.len()];
    for &m in members {
        seen[m] = true;
    }
    let mut count = 0;
    for &m in members {
        for &u in &skeleton[m] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
            }
        }
    }
    count
}

fn closeness_on(skeleton: &[Vec<usize>], members: &[usize]) -> (f64, f64) {
    let n = skeleton.len();
    let outside = n - members.len();
    if outside == 0 {
        return (0.0, 0.0);
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    for &m in members {
        dist[m] = 0;
        queue.push_back(m);
    }
    let mut sum = 0usize;
    let mut reached = 0usize;
    while let Some(x) = queue.pop_front() {
        for &y in &skeleton[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                sum += dist[y];
                reached += 1;
                queue.push_back(y);
            }
        }
    }
    if reached < outside {
        return (f64::INFINITY, f64::INFINITY);
    }
    (sum as f64, sum as f64 / outside as f64)
}

/// All-pairs hop distances and geodesic counts, shared by every betweenness
/// query on one graph.
pub struct Geodesics {
    skeleton: Vec<Vec<usize>>,
    dist: Vec<u32>,
    sigma: Vec<f64>,
}

const UNREACHED: u32 = u32::MAX;

impl Geodesics {
    pub fn new(g: &Graph) -> Self {
        let skeleton = g.skeleton();
        let n = skeleton.len();
        let mut dist = vec![UNREACHED; n * n];
        let mut sigma = vec![0.0; n * n];
        let mut scratch = BfsScratch::new(n);
        for s in 0..n {
            scratch.run(&skeleton, s, None);
            dist[s * n..(s + 1) * n].copy_from_slice(&scratch.dist);
            sigma[s * n..(s + 1) * n].copy_from_slice(&scratch.sigma);
        }
        Self { skeleton, dist, sigma }
    }

    pub fn n(&self) -> usize {
        self.skeleton.len()
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<u32> {
        let d = self.dist[u * self.n() + v];
        (d != UNREACHED).then_some(d)
    }

    pub fn geodesic_count(&self, u: usize, v: usize) -> f64 {
        self.sigma[u * self.n() + v]
    }

    pub fn group_betweenness(&self, members: &[usize]) -> f64 {
        self.betweenness_with(members, &mut BfsScratch::new(self.n()))
    }

    fn betweenness_with(&self, members: &[usize], scratch: &mut BfsScratch) -> f64 {
        let n = self.n();
        let mut blocked = vec![false; n];
        for &m in members {
            blocked[m] = true;
        }
        let mut total = 0.0;
        for u in 0..n {
            if blocked[u] {
                continue;
            }
            // geodesics avoiding H are the geodesics of G \ H of unchanged length
            scratch.run(&self.skeleton, u, Some(&blocked));
            for v in (u + 1)..n {
                if blocked[v] {
                    continue;
                }
                let sigma = self.sigma[u * n + v];
                if sigma == 0.0 {
                    continue;
                }
                let avoiding = if scratch.dist[v] == self.dist[u * n + v] {
                    scratch.sigma[v]
                } else {
                    0.0
                };
                total += (sigma - avoiding) / sigma;
            }
        }
        total
    }
}

struct BfsScratch {
    dist: Vec<u32>,
    sigma: Vec<f64>,
    queue: VecDeque<usize>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![UNREACHED; n],
            sigma: vec![0.0; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn run(&mut self, skeleton: &[Vec<usize>], source: usize, blocked: Option<&[bool]>) {
        self.dist.fill(UNREACHED);
        self.sigma.fill(0.0);
        self.dist[source] = 0;
        self.sigma[source] = 1.0;
        self.queue.clear();
        self.queue.push_back(source);
        while let Some(x) = self.queue.pop_front() {
            for &y in &skeleton[x] {
                if blocked.is_some_and(|b| b[y]) {
                    continue;
                }
                if self.dist[y] == UNREACHED {
                    self.dist[y] = self.dist[x] + 1;
                    self.queue.push_back(y);
                }
                if self.dist[y] == self.dist[x] + 1 {
                    self.sigma[y] += self.sigma[x];
                }
            }
        }
    }
}

/// Evaluates rows for many subsets of one graph, reusing the skeleton and
/// the all-pairs geodesic table.
pub struct GroupEvaluator {
    geodesics: Geodesics,
}

impl GroupEvaluator {
    pub fn new(g: &Graph) -> Self {
        Self { geodesics: Geodesics::new(g) }
    }

    pub fn degree(&self, members: &[usize]) -> usize {
        degree_on(&self.geodesics.skeleton, members)
    }

    pub fn closeness(&self, members: &[usize]) -> (f64, f64) {
        closeness_on(&self.geodesics.skeleton, members)
    }

    pub fn betweenness(&self, members: &[usize]) -> f64 {
        self.geodesics.group_betweenness(members)
    }

    pub fn row(&self, h: &VertexSubset) -> GroupCentralityRow {
        let (closeness_sum, closeness_avg) = self.closeness(h.members());
        GroupCentralityRow {
            subset: h.clone(),
            degree: self.degree(h.members()),
            closeness_sum,
            closeness_avg,
            betweenness: self.betweenness(h.members()),
        }
    }
}
