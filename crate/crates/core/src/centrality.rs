//! The subgraph centrality `c(H) = det(I - A_{G\H} / lambda)`.
//!
//! `lambda` is the Perron root of the whole graph, computed once per
//! [`CentralityContext`] and shared by every subset evaluated against it.
//!
//! Two evaluation routes are available. The direct route factors the
//! `(n - |H|)`-square matrix `I - A_{G\H}/lambda`. The bordered route applies
//! to undirected graphs with a simple Perron root: with `M = I - A/lambda`,
//! unit Perron vector `v` and `B = M + v v^T` (symmetric positive definite,
//! `det B = eta`), Jacobi's complementary-minor identity and the matrix
//! determinant lemma give
//!
//! ```text
//! c(H) = eta * det(C_HH) * v_H^T C_HH^{-1} v_H,      C = B^{-1},
//! ```
//!
//! so after one `O(n^3)` inversion each subset costs `O(|H|^3)`.

use crate::enumeration::{paths::visit_simple_paths, SimpleCyclePrime};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::linalg::det::{determinant_in_place, Lu};
use crate::linalg::spectrum::{perron_vector, Spectrum};

/// Largest number of parts accepted by the inclusion-exclusion routines.
pub const MAX_IE_PARTS: usize = 20;

/// Slack allowed outside `[0, 1]` before a value is reported as suspicious.
pub const RANGE_SLACK: f64 = 1e-9;

/// Below this size the direct route is always used.
const BORDERED_MIN_N: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityReport {
    pub subset: VertexSubset,
    /// Fraction of network flows intercepted by the subset; never clamped.
    pub value: f64,
    pub lambda_used: f64,
}

impl CentralityReport {
    pub fn percent(&self) -> f64 {
        self.value * 100.0
    }

    pub fn in_unit_interval(&self, slack: f64) -> bool {
        (-slack..=1.0 + slack).contains(&self.value)
    }
}

/// Which determinant route evaluates `c(H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Bordered,
    /// Cheaper of the two for each subset.
    Auto,
}

struct Bordered {
    eta: f64,
    inverse: Vec<f64>,
    vector: Vec<f64>,
}

/// A graph together with its cached spectrum.
pub struct CentralityContext<'g> {
    graph: &'g Graph,
    spectrum: Spectrum,
    bordered: Option<Bordered>,
    nonnegative: bool,
}

impl<'g> CentralityContext<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        Ok(Self::with_spectrum(graph, Spectrum::compute(graph)?))
    }

    pub fn with_spectrum(graph: &'g Graph, spectrum: Spectrum) -> Self {
        let bordered = if graph.is_directed() || graph.n() < BORDERED_MIN_N {
            None
        } else {
            build_bordered(graph, &spectrum)
        };
        Self {
            graph,
            spectrum,
            bordered,
            nonnegative: graph.is_nonnegative(),
        }
    }

    /// Forces construction of the bordered route when the graph admits it,
    /// whatever its size.
    pub fn with_bordered_route(mut self) -> Self {
        if self.bordered.is_none() && !self.graph.is_directed() {
            self.bordered = build_bordered(self.graph, &self.spectrum);
        }
        self
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn lambda(&self) -> f64 {
        self.spectrum.lambda
    }

    pub fn has_bordered_route(&self) -> bool {
        self.bordered.is_some()
    }

    /// `c(H)` with subset validation and a range diagnostic.
    pub fn subgraph_centrality(&self, h: &VertexSubset) -> Result<CentralityReport> {
        if let Some(&index) = h.members().last() {
            if index >= self.graph.n() {
                return Err(Error::VertexOutOfRange { index, n: self.graph.n() });
            }
        }
        let value = self.value(h.members());
        let report = CentralityReport {
            subset: h.clone(),
            value,
            lambda_used: self.lambda(),
        };
        if self.nonnegative && !report.in_unit_interval(RANGE_SLACK) {
            log::warn!(
                "c(H) = {value} lies outside [0, 1] on a nonnegative graph; lambda = {} may be wrong",
                self.lambda()
            );
        }
        Ok(report)
    }

    /// `c(H)` for sorted, in-range members, by the cheaper route.
    pub fn value(&self, members: &[usize]) -> f64 {
        self.value_by(members, Route::Auto)
    }

    pub fn value_by(&self, members: &[usize], route: Route) -> f64 {
        let n = self.graph.n();
        let k = members.len();
        match (route, &self.bordered) {
            (Route::Bordered, Some(b)) => bordered_value(b, n, members),
            (Route::Auto, Some(b)) if k <= n - k => bordered_value(b, n, members),
            _ => self.direct_value(members),
        }
    }

    fn direct_value(&self, members: &[usize]) -> f64 {
        let g = self.graph;
        let n = g.n();
        let mut keep = Vec::with_capacity(n - members.len());
        let mut it = members.iter().peekable();
        for v in 0..n {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                keep.push(v);
            }
        }
        let m = keep.len();
        let scale = 1.0 / self.lambda();
        let mut work = Vec::with_capacity(m * m);
        for (r, &i) in keep.iter().enumerate() {
            for (c, &j) in keep.iter().enumerate() {
                let diag = if r == c { 1.0 } else { 0.0 };
                work.push(diag - scale * g.weight(i, j));
            }
        }
        determinant_in_place(&mut work, m)
    }

    /// `c(gamma)`: the centrality of the cycle's vertex set.
    pub fn cycle_centrality(&self, gamma: &SimpleCyclePrime) -> Result<CentralityReport> {
        self.subgraph_centrality(gamma.vertex_set())
    }

    /// Perron vector entries (unit norm).
    pub fn eigenvector_centrality(&self) -> Result<Vec<f64>> {
        if !self.graph.is_strongly_connected() {
            return Err(Error::Disconnected);
        }
        self.spectrum.dominant_vector.clone().ok_or(Error::Disconnected)
    }

    /// `eta * (P_lambda)_{ij}` with `P_lambda = v v^T`.
    pub fn projector_entry(&self, i: usize, j: usize) -> Result<f64> {
        let eta = self.eta()?;
        let v = self.eigenvector_centrality()?;
        Ok(eta * v[i] * v[j])
    }

    pub fn eta(&self) -> Result<f64> {
        self.spectrum
            .eta
            .ok_or(Error::NotSimple(self.spectrum.lambda_multiplicity))
    }

    /// `sum_p lambda^{-l(p)} W(p) c(p)` over simple paths `p: i -> j`. On an
    /// undirected graph with simple `lambda` this equals
    /// [`projector_entry`](Self::projector_entry).
    pub fn projector_pathsum(&self, i: usize, j: usize, max_len: usize) -> Result<f64> {
        let n = self.graph.n();
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
        }
        if self.graph.is_directed() {
            return Err(Error::Directed);
        }
        self.eta()?;
        let inv_lambda = 1.0 / self.lambda();
        let mut total = 0.0;
        let mut sorted = Vec::with_capacity(n);
        visit_simple_paths(self.graph, i, j, |path, weight| {
            let len = path.len() - 1;
            if len > max_len {
                return;
            }
            sorted.clear();
            sorted.extend_from_slice(path);
            sorted.sort_unstable();
            total += inv_lambda.powi(len as i32) * weight * self.value(&sorted);
        });
        Ok(total)
    }

    /// `sum_{S nonempty} (-1)^{|S|-1} c(intersection of S)` over the parts.
    pub fn union_centrality_ie(&self, parts: &[VertexSubset]) -> Result<f64> {
        if parts.is_empty() {
            return Err(Error::EmptySubset);
        }
        if parts.len() > MAX_IE_PARTS {
            return Err(Error::TooManyParts { parts: parts.len() });
        }
        for p in parts {
            if !self.graph.is_connected(p)? {
                return Err(Error::Invalid(format!(
                    "part {:?} does not induce a connected subgraph",
                    self.graph.subset_labels(p)
                )));
            }
        }
        let mut total = 0.0;
        for mask in 1u32..(1 << parts.len()) {
            let mut members: Option<VertexSubset> = None;
            for (idx, p) in parts.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    members = Some(match members {
                        None => p.clone(),
                        Some(acc) => acc.intersection(p),
                    });
                }
            }
            let inter = members.unwrap();
            let c = if inter.is_empty() { 0.0 } else { self.value(inter.members()) };
            total += sign(mask.count_ones()) * c;
        }
        Ok(total)
    }

    /// Fraction of flows intercepted by every vertex of `s`: the Moebius
    /// inversion `sum_{T nonempty in s} (-1)^{|T|-1} c(T)`.
    pub fn flow_overlap(&self, s: &VertexSubset) -> Result<f64> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        if s.len() > MAX_IE_PARTS {
            return Err(Error::TooManyParts { parts: s.len() });
        }
        let m = s.members();
        let mut total = 0.0;
        let mut t = Vec::with_capacity(m.len());
        for mask in 1u32..(1 << m.len()) {
            t.clear();
            t.extend(m.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v));
            total += sign(mask.count_ones()) * self.value(&t);
        }
        Ok(total)
    }
}

fn sign(terms: u32) -> f64 {
    if terms % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

fn build_bordered(graph: &Graph, spectrum: &Spectrum) -> Option<Bordered> {
    let eta = spectrum.eta?;
    let n = graph.n();
    let vector = spectrum
        .dominant_vector
        .clone()
        .or_else(|| perron_vector(graph, spectrum.lambda))?;
    let scale = 1.0 / spectrum.lambda;
    let mut b = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let diag = if i == j { 1.0 } else { 0.0 };
            b[i * n + j] = diag - scale * graph.weight(i, j) + vector[i] * vector[j];
        }
    }
    let inverse = Lu::factor(&b, n)?.inverse();
    Some(Bordered { eta, inverse, vector })
}

fn bordered_value(b: &Bordered, n: usize, members: &[usize]) -> f64 {
    let k = members.len();
    if k == 0 {
        return 0.0;
    }
    let mut block = Vec::with_capacity(k * k);
    for &i in members {
        for &j in members {
            block.push(b.inverse[i * n + j]);
        }
    }
    let v_h: Vec<f64> = members.iter().map(|&i| b.vector[i]).collect();
    let Some(lu) = Lu::factor(&block, k) else {
        return 0.0;
    };
    let y = lu.solve(&v_h);
    let quad: f64 = v_h.iter().zip(&y).map(|(a, b)| a * b).sum();
    b.eta * lu.determinant() * quad
}

/// `c(H)` computing the spectrum on the fly.
pub fn subgraph_centrality(g: &Graph, h: &VertexSubset) -> Result<CentralityReport> {
    CentralityContext::new(g)?.subgraph_centrality(h)
}

pub fn cycle_centrality(g: &Graph, gamma: &SimpleCyclePrime) -> Result<CentralityReport> {
    CentralityContext::new(g)?.cycle_centrality(gamma)
}

pub fn eigenvector_centrality(g: &Graph) -> Result<Vec<f64>> {
    CentralityContext::new(g)?.eigenvector_centrality()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize], n: usize) -> VertexSubset {
        VertexSubset::new(v.iter().copied(), n).unwrap()
    }
    fn k3() -> Graph {
        Graph::from_unit_edges(3, false, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }
    fn p3() -> Graph {
        Graph::from_unit_edges(3, false, &[(0, 1), (1, 2)]).unwrap()
    }
    fn c4() -> Graph {
        Graph::from_unit_edges(4, false, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn triangle_vertex() {
        let g = k3();
        let r = subgraph_centrality(&g, &s(&[0], 3)).unwrap();
        assert!((r.value - 0.75).abs() < 1e-14);
        assert!((r.lambda_used - 2.0).abs() < 1e-14);
    }

    #[test]
    fn path_end_vertex() {
        let r = subgraph_centrality(&p3(), &s(&[0], 3)).unwrap();
        assert!((r.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn empty_and_full() {
        for g in [k3(), p3(), c4()] {
            let ctx = CentralityContext::new(&g).unwrap();
            let empty = ctx.subgraph_centrality(&VertexSubset::empty()).unwrap();
            assert!(empty.value.abs() < 1e-9, "{}", empty.value);
            let full = ctx.subgraph_centrality(&g.all_vertices()).unwrap();
            assert_eq!(full.value, 1.0);
        }
    }

    #[test]
    fn cycle_values() {
        let g = c4();
        let ctx = CentralityContext::new(&g).unwrap();
        let two = SimpleCyclePrime::new(&g, &[0, 1]).unwrap();
        assert!((ctx.cycle_centrality(&two).unwrap().value - 0.75).abs() < 1e-14);

        let g = Graph::from_unit_edges(3, true, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
            .unwrap();
        let gamma = SimpleCyclePrime::new(&g, &[0, 1]).unwrap();
        assert!((cycle_centrality(&g, &gamma).unwrap().value - 1.0).abs() < 1e-14);

        let lp = Graph::from_unit_edges(1, true, &[(0, 0)]).unwrap();
        let gamma = SimpleCyclePrime::new(&lp, &[0]).unwrap();
        assert_eq!(cycle_centrality(&lp, &gamma).unwrap().value, 1.0);
    }

    #[test]
    fn projector_path_sums() {
        let g = p3();
        let ctx = CentralityContext::new(&g).unwrap();
        assert!((ctx.projector_pathsum(1, 1, 2).unwrap() - 1.0).abs() < 1e-12);
        assert!((ctx.projector_pathsum(0, 0, 2).unwrap() - 0.5).abs() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = ctx.projector_pathsum(i, j, 2).unwrap();
                assert!((lhs - ctx.projector_entry(i, j).unwrap()).abs() < 1e-12);
            }
        }
        let g = k3();
        let ctx = CentralityContext::new(&g).unwrap();
        assert!((ctx.projector_pathsum(0, 1, 2).unwrap() - 0.75).abs() < 1e-12);
        assert!((ctx.projector_entry(0, 1).unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn projector_requires_undirected_simple() {
        let d = Graph::from_unit_edges(2, true, &[(0, 1), (1, 0)]).unwrap();
        let ctx = CentralityContext::new(&d).unwrap();
        assert!(matches!(ctx.projector_pathsum(0, 1, 1), Err(Error::Directed)));
        let two = Graph::from_unit_edges(4, false, &[(0, 1), (2, 3)]).unwrap();
        let ctx = CentralityContext::new(&two).unwrap();
        assert!(matches!(ctx.projector_pathsum(0, 1, 3), Err(Error::NotSimple(2))));
    }

    #[test]
    fn inclusion_exclusion_examples() {
        let g = p3();
        let ctx = CentralityContext::new(&g).unwrap();
        let ie = ctx.union_centrality_ie(&[s(&[0], 3), s(&[2], 3)]).unwrap();
        assert!((ie - 1.0).abs() < 1e-12);
        assert!((ctx.value(&[0, 2]) - 1.0).abs() < 1e-12);
        let single = ctx.union_centrality_ie(&[s(&[0, 1], 3)]).unwrap();
        assert!((single - ctx.value(&[0, 1])).abs() < 1e-15);

        // overlapping parts on K3: 1 + 1 - 0.75 against c(V) = 1
        let g = k3();
        let ctx = CentralityContext::new(&g).unwrap();
        let ie = ctx.union_centrality_ie(&[s(&[0, 1], 3), s(&[1, 2], 3)]).unwrap();
        assert!((ie - 1.25).abs() < 1e-12);
    }

    #[test]
    fn inclusion_exclusion_limits() {
        let g = p3();
        let ctx = CentralityContext::new(&g).unwrap();
        assert!(ctx.union_centrality_ie(&[]).is_err());
        let many = vec![s(&[0], 3); 21];
        assert!(matches!(ctx.union_centrality_ie(&many), Err(Error::TooManyParts { parts: 21 })));
        assert!(ctx.union_centrality_ie(&[s(&[0, 2], 3)]).is_err());
    }

    #[test]
    fn flow_overlaps() {
        let g = p3();
        let ctx = CentralityContext::new(&g).unwrap();
        for v in 0..3 {
            assert_eq!(ctx.flow_overlap(&s(&[v], 3)).unwrap(), ctx.value(&[v]));
        }
        assert!(ctx.flow_overlap(&s(&[0, 2], 3)).unwrap().abs() < 1e-12);
        let g = k3();
        let ctx = CentralityContext::new(&g).unwrap();
        assert!((ctx.flow_overlap(&s(&[0, 1], 3)).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bordered_route_matches_direct() {
        // wheel-like weighted graph
        let n = 9;
        let mut edges: Vec<(usize, usize, f64)> =
            (1..n).map(|i| (i, if i + 1 < n { i + 1 } else { 1 }, 1.0 + i as f64 * 0.1)).collect();
        edges.extend((1..n).map(|i| (0, i, 0.5)));
        let g = Graph::from_edges(n, false, &edges).unwrap();
        let ctx = CentralityContext::new(&g).unwrap().with_bordered_route();
        assert!(ctx.has_bordered_route());
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let d = ctx.value_by(&members, Route::Direct);
            let b = ctx.value_by(&members, Route::Bordered);
            assert!((d - b).abs() < 1e-12, "{members:?}: {d} vs {b}");
        }
    }

    #[test]
    fn eigenvector_centrality_matches_perron() {
        let v = eigenvector_centrality(&p3()).unwrap();
        assert!((v[1] - 2f64.sqrt() / 2.0).abs() < 1e-12);
        let split = Graph::from_unit_edges(4, false, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(eigenvector_centrality(&split), Err(Error::Disconnected)));
    }
}
