//! Dense weighted (di)graphs, vertex subsets and edge-list ingestion.
//!
//! Undirected graphs are stored as symmetric digraphs: an undirected edge
//! `{i, j}` is the pair of arcs `i -> j` and `j -> i` with equal weight. A
//! missing edge has weight 0. Self-loops are allowed.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An ordered set of vertex indices identifying an induced subgraph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    members: Vec<usize>,
}

impl VertexSubset {
    /// Builds a subset of a graph with `n` vertices. Input order and
    /// repetitions are irrelevant.
    pub fn new<I: IntoIterator<Item = usize>>(members: I, n: usize) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&index) = members.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { index, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { members })
    }

    /// `members` must be strictly increasing.
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(n: usize) -> Self {
        Self { members: (0..n).collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn complement(&self, n: usize) -> Self {
        let mut mask = vec![true; n];
        for &v in &self.members {
            if v < n {
                mask[v] = false;
            }
        }
        Self::from_sorted((0..n).filter(|&v| mask[v]).collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut members: Vec<usize> = self.members.iter().chain(&other.members).copied().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::from_sorted(
            self.members
                .iter()
                .copied()
                .filter(|&v| other.contains(v))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.members.last() {
            Some(&index) if index >= n => Err(Error::VertexOutOfRange { index, n }),
            _ => Ok(()),
        }
    }
}

impl From<VertexSubset> for Vec<usize> {
    fn from(s: VertexSubset) -> Self {
        s.members
    }
}

/// A weighted, optionally directed graph with a dense adjacency matrix.
///
/// `adj[i * n + j]` is the weight of the arc `i -> j`. The graph is
/// immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    directed: bool,
    adj: Vec<f64>,
}

impl Graph {
    /// Builds a graph from a row-major `n x n` adjacency matrix.
    pub fn from_dense(labels: Vec<String>, directed: bool, adj: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if adj.len() != n * n {
            return Err(Error::Invalid(format!(
                "adjacency has {} entries, expected {}",
                adj.len(),
                n * n
            )));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate label `{l}`")));
            }
        }
        if adj.iter().any(|w| !w.is_finite()) {
            return Err(Error::Invalid("non-finite edge weight".into()));
        }
        if !directed {
            for i in 0..n {
                for j in (i + 1)..n {
                    if adj[i * n + j] != adj[j * n + i] {
                        return Err(Error::Invalid(format!(
                            "undirected adjacency is not symmetric at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, directed, adj })
    }

    /// Builds a graph on vertices labelled `0..n` from weighted edges.
    /// Repeated edges accumulate.
    pub fn from_edges(n: usize, directed: bool, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut adj = vec![0.0; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange { index: i.max(j), n });
            }
            adj[i * n + j] += w;
            if !directed && i != j {
                adj[j * n + i] += w;
            }
        }
        Self::from_dense((0..n).map(|i| i.to_string()).collect(), directed, adj)
    }

    /// Same as [`Graph::from_edges`] with every weight 1.
    pub fn from_unit_edges(n: usize, directed: bool, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(i, j)| (i, j, 1.0)).collect();
        Self::from_edges(n, directed, &weighted)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Row-major adjacency matrix.
    pub fn adjacency(&self) -> &[f64] {
        &self.adj
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adj[i * self.n() + j]
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.weight(i, j) != 0.0
    }

    /// True when every weight is `>= 0`; only then is `0 <= c(H) <= 1`
    /// guaranteed.
    pub fn is_nonnegative(&self) -> bool {
        self.adj.iter().all(|&w| w >= 0.0)
    }

    /// True when every present arc has weight exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.adj.iter().all(|&w| w == 0.0 || w == 1.0)
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&w| w != 0.0).count()
    }

    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n();
        self.adj[i * n..(i + 1) * n]
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(j, _)| j)
    }

    /// Adjacency lists of the undirected simple skeleton: arc direction,
    /// weights and self-loops are ignored. Lists are sorted.
    pub fn skeleton(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && (self.has_arc(i, j) || self.has_arc(j, i)))
                    .collect()
            })
            .collect()
    }

    pub fn all_vertices(&self) -> VertexSubset {
        VertexSubset::full(self.n())
    }

    /// Subset from vertex labels; unknown labels are an error naming them.
    pub fn subset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSubset> {
        let index: HashMap<&str, usize> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let members = labels
            .iter()
            .map(|l| {
                index
                    .get(l.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        VertexSubset::new(members, self.n())
    }

    pub fn subset_labels(&self, h: &VertexSubset) -> Vec<&str> {
        h.members().iter().map(|&v| self.label(v)).collect()
    }

    /// The induced subgraph on `h`: rows and columns of `h` are kept.
    pub fn induced_subgraph(&self, h: &VertexSubset) -> Result<Graph> {
        h.check(self.n())?;
        Ok(self.restrict(h.members()))
    }

    /// `G \ H`: the vertices of `h` and every edge touching them are
    /// removed. Deleting every vertex yields the empty graph, whose
    /// identity determinant is 1.
    pub fn delete_vertices(&self, h: &VertexSubset) -> Result<Graph> {
        h.check(self.n())?;
        Ok(self.restrict(h.complement(self.n()).members()))
    }

    fn restrict(&self, keep: &[usize]) -> Graph {
        let n = self.n();
        let m = keep.len();
        let mut adj = Vec::with_capacity(m * m);
        for &i in keep {
            for &j in keep {
                adj.push(self.adj[i * n + j]);
            }
        }
        Graph {
            labels: keep.iter().map(|&v| self.labels[v].clone()).collect(),
            directed: self.directed,
            adj,
        }
    }

    /// Row-major principal submatrix on `keep` (which must be sorted).
    pub fn submatrix(&self, keep: &[usize]) -> Vec<f64> {
        self.restrict(keep).adj
    }

    /// Whether the subgraph induced by `h` is (weakly) connected.
    pub fn is_connected(&self, h: &VertexSubset) -> Result<bool> {
        h.check(self.n())?;
        let members = h.members();
        let Some(&start) = members.first() else {
            return Err(Error::EmptySubset);
        };
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in members {
                if !seen[u] && (self.has_arc(v, u) || self.has_arc(u, v)) {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        Ok(reached == members.len())
    }

    /// Strong connectivity of the whole graph (weak for undirected graphs,
    /// where the two notions coincide).
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for u in 0..n {
                    let arc = if forward { self.has_arc(v, u) } else { self.has_arc(u, v) };
                    if arc && !seen[u] {
                        seen[u] = true;
                        count += 1;
                        stack.push(u);
                    }
                }
            }
            count == n
        };
        reach(true) && reach(false)
    }

    /// Serializes to the edge-list format read by [`load_edge_list`].
    /// Isolated vertices cannot be represented and are dropped.
    pub fn to_edge_list(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        for i in 0..n {
            let start = if self.directed { 0 } else { i };
            for j in start..n {
                let w = self.weight(i, j);
                if w != 0.0 {
                    let _ = writeln!(out, "{},{},{}", self.labels[i], self.labels[j], w);
                }
            }
        }
        out
    }
}

/// Parses an edge list: one `src<sep>dst[<sep>weight]` per line, where the
/// separator is a comma, a tab or whitespace. Blank lines and lines starting
/// with `#` are skipped. Labels are numbered in order of first appearance
/// and repeated edges accumulate their weights.
pub fn load_edge_list(text: &str, directed: bool) -> Result<Graph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();

    let mut intern = |label: &str| -> usize {
        if let Some(&i) = index.get(label) {
            return i;
        }
        labels.push(label.to_string());
        index.insert(label.to_string(), labels.len() - 1);
        labels.len() - 1
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line_no = lineno + 1;
        let fields: Vec<&str> = if line.contains(',') {
            line.split(',').map(str::trim).collect()
        } else if line.contains('\t') {
            line.split('\t').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        if !(2..=3).contains(&fields.len()) || fields.iter().any(|f| f.is_empty()) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `src,dst[,weight]`, got `{line}`"),
            });
        }
        let weight = match fields.get(2) {
            Some(tok) => match tok.parse::<f64>() {
                Ok(w) if w.is_finite() => w,
                _ => {
                    return Err(Error::Weight {
                        line: line_no,
                        token: tok.to_string(),
                    })
                }
            },
            None => 1.0,
        };
        let src = intern(fields[0]);
        let dst = intern(fields[1]);
        edges.push((src, dst, weight));
    }

    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = labels.len();
    let mut adj = vec![0.0; n * n];
    for (i, j, w) in edges {
        adj[i * n + j] += w;
        if !directed && i != j {
            adj[j * n + i] += w;
        }
    }
    Graph::from_dense(labels, directed, adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        load_edge_list("a,b\nb,c", false).unwrap()
    }

    #[test]
    fn path_from_csv() {
        let g = p3();
        assert_eq!(g.n(), 3);
        assert_eq!(g.labels(), ["a", "b", "c"]);
        #[rustfmt::skip]
        let expected = [0.0, 1.0, 0.0,
                        1.0, 0.0, 1.0,
                        0.0, 1.0, 0.0];
        assert_eq!(g.adjacency(), expected);
        assert!(!g.is_directed());
    }

    #[test]
    fn directed_two_cycle() {
        let g = load_edge_list("u,v\nv,u", true).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.adjacency(), [0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn explicit_weight_and_separators() {
        let g = load_edge_list("a,b,2.5", false).unwrap();
        assert_eq!(g.weight(0, 1), 2.5);
        assert_eq!(g.weight(1, 0), 2.5);

        let g = load_edge_list("# comment\n\na\tb\t3\nb c 0.5\n", false).unwrap();
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.weight(0, 1), 3.0);
        assert_eq!(g.weight(2, 1), 0.5);
    }

    #[test]
    fn repeated_edges_accumulate() {
        let g = load_edge_list("a,b\nb,a\na,b,0.5", false).unwrap();
        assert_eq!(g.weight(0, 1), 2.5);
    }

    #[test]
    fn self_loop_counted_once() {
        let g = load_edge_list("a,a", false).unwrap();
        assert_eq!(g.adjacency(), [1.0]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(load_edge_list("", false), Err(Error::EmptyInput)));
        assert!(matches!(load_edge_list("# only\n", false), Err(Error::EmptyInput)));
        assert!(matches!(
            load_edge_list("a,b\nlonely\n", false),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load_edge_list("a,b\na,c,heavy", false),
            Err(Error::Weight { line: 2, .. })
        ));
        assert!(matches!(load_edge_list("a,b,c,d", false), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_edge_list("a,b,inf", false), Err(Error::Weight { .. })));
    }

    #[test]
    fn delete_from_triangle() {
        let k3 = Graph::from_unit_edges(3, false, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = VertexSubset::new([0], 3).unwrap();
        let rest = k3.delete_vertices(&h).unwrap();
        assert_eq!(rest.n(), 2);
        assert_eq!(rest.adjacency(), [0.0, 1.0, 1.0, 0.0]);
        assert_eq!(rest.labels(), ["1", "2"]);
    }

    #[test]
    fn delete_middle_of_path() {
        let g = p3();
        let rest = g.delete_vertices(&VertexSubset::new([1], 3).unwrap()).unwrap();
        assert_eq!(rest.adjacency(), [0.0; 4]);
    }

    #[test]
    fn delete_everything() {
        let g = p3();
        let rest = g.delete_vertices(&g.all_vertices()).unwrap();
        assert_eq!(rest.n(), 0);
        assert!(rest.adjacency().is_empty());
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = Graph::from_unit_edges(4, false, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        let k3 = k4.induced_subgraph(&VertexSubset::new([1, 2, 3], 4).unwrap()).unwrap();
        assert_eq!(k3.adjacency(), [0., 1., 1., 1., 0., 1., 1., 1., 0.]);

        let g = p3();
        let ac = g.induced_subgraph(&VertexSubset::new([0, 2], 3).unwrap()).unwrap();
        assert_eq!(ac.adjacency(), [0.0; 4]);
        assert_eq!(g.induced_subgraph(&g.all_vertices()).unwrap(), g);
    }

    #[test]
    fn out_of_range_rejected() {
        let g = p3();
        assert!(matches!(
            VertexSubset::new([3], 3),
            Err(Error::VertexOutOfRange { index: 3, n: 3 })
        ));
        let bogus = VertexSubset::from_sorted(vec![0, 5]);
        assert!(g.delete_vertices(&bogus).is_err());
        assert!(g.induced_subgraph(&bogus).is_err());
    }

    #[test]
    fn connectivity() {
        let g = p3();
        let s = |v: &[usize]| VertexSubset::new(v.iter().copied(), 3).unwrap();
        assert!(g.is_connected(&s(&[0, 1])).unwrap());
        assert!(!g.is_connected(&s(&[0, 2])).unwrap());
        assert!(g.is_connected(&s(&[2])).unwrap());
        assert!(matches!(g.is_connected(&VertexSubset::empty()), Err(Error::EmptySubset)));

        // weak connectivity for digraphs
        let d = Graph::from_unit_edges(3, true, &[(0, 1), (2, 1)]).unwrap();
        assert!(d.is_connected(&d.all_vertices()).unwrap());
        assert!(!d.is_strongly_connected());
    }

    #[test]
    fn labels_resolve() {
        let g = p3();
        let h = g.subset_from_labels(&["c", "a"]).unwrap();
        assert_eq!(h.members(), [0, 2]);
        assert!(matches!(g.subset_from_labels(&["z"]), Err(Error::UnknownLabel(l)) if l == "z"));
    }

    #[test]
    fn asymmetric_undirected_rejected() {
        let r = Graph::from_dense(vec!["a".into(), "b".into()], false, vec![0.0, 1.0, 0.0, 0.0]);
        assert!(r.is_err());
    }
}
