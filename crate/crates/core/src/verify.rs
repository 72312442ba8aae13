//! Verification suites: the exact hike identities and the centrality
//! identities, run over a built-in family of small graphs and optionally a
//! user graph. Each suite yields CSV-ready rows and a failure count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::centrality::CentralityContext;
use crate::error::{Error, Result};
use crate::generators::{self, rng};
use crate::graph::{Graph, VertexSubset};
use crate::hikes::{
    enumerate_hikes, mobius_det_identity_check, sieve_count_bruteforce, sieve_series,
    walk_asymptotics_check, walk_count_bruteforce, walk_factorization_check,
};
use crate::linalg::{zeta_coefficients, Spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Zeta,
    Sieve,
    Asymptotics,
    Mobius,
    Projector,
    InclusionExclusion,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Zeta,
        Suite::Sieve,
        Suite::Asymptotics,
        Suite::Mobius,
        Suite::Projector,
        Suite::InclusionExclusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Zeta => "zeta",
            Suite::Sieve => "sieve",
            Suite::Asymptotics => "theorem1",
            Suite::Mobius => "mobius",
            Suite::Projector => "projector",
            Suite::InclusionExclusion => "inclusion-exclusion",
        }
    }

    /// Default comparison tolerance; exact suites use zero.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Zeta | Suite::Sieve | Suite::Mobius => 0.0,
            Suite::Asymptotics => 0.01,
            Suite::Projector => 1e-6,
            Suite::InclusionExclusion => 1e-9,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s || (*x == Suite::Asymptotics && s == "asymptotics"))
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub id: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        Self { id: id.into(), graph }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Hike length bound for the exact suites.
    pub max_len: usize,
    /// Largest walk length in the asymptotic suite.
    pub k_max: usize,
    pub tolerance: Option<f64>,
    pub extra: Option<NamedGraph>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_len: 10,
            k_max: 40,
            tolerance: None,
            extra: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub failures: usize,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, header: &[&'static str]) -> Self {
        Self {
            suite,
            header: header.to_vec(),
            rows: Vec::new(),
            failures: 0,
            notes: Vec::new(),
        }
    }

    fn push(&mut self, mut row: Vec<String>, ok: bool) {
        row.push(status(ok).to_string());
        if !ok {
            self.failures += 1;
        }
        self.rows.push(row);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// P3, K3, C4, K4, the two-node digraph and ten random strongly connected
/// digraphs on 3 to 5 vertices.
pub fn hike_suite(seed: u64) -> Vec<NamedGraph> {
    let mut out = vec![
        NamedGraph::new("P3", generators::path(3)),
        NamedGraph::new("K3", generators::complete(3)),
        NamedGraph::new("C4", generators::cycle(4)),
        NamedGraph::new("K4", generators::complete(4)),
        NamedGraph::new("digon", generators::two_node_digraph()),
    ];
    out.extend(random_digraphs(seed));
    out
}

pub fn random_digraphs(seed: u64) -> Vec<NamedGraph> {
    (0..10u64)
        .map(|i| {
            let n = 3 + (i % 3) as usize;
            let g = generators::random_strongly_connected(n, 0.3, &mut rng(seed.wrapping_mul(1000).wrapping_add(i)));
            NamedGraph::new(format!("digraph-n{n}-{i}"), g)
        })
        .collect()
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let tol = cfg.tolerance.unwrap_or(suite.default_tolerance());
    let mut graphs = match suite {
        Suite::Projector => projector_graphs(cfg.seed),
        Suite::InclusionExclusion => ie_graphs(cfg.seed),
        _ => hike_suite(cfg.seed),
    };
    if let Some(extra) = &cfg.extra {
        graphs.push(extra.clone());
    }
    match suite {
        Suite::Zeta => zeta_suite(&graphs, cfg.max_len),
        Suite::Sieve => sieve_suite(&graphs, cfg.max_len),
        Suite::Asymptotics => asymptotics_suite(&graphs, cfg.k_max, tol),
        Suite::Mobius => mobius_suite(&graphs, cfg.max_len),
        Suite::Projector => projector_suite(&graphs, tol),
        Suite::InclusionExclusion => ie_suite(&graphs, cfg.seed, tol),
    }
}

fn fmt_f(x: f64) -> String {
    format!("{x}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_default()
}

fn zeta_suite(graphs: &[NamedGraph], max_len: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Zeta, &["graph", "ell", "enumerated", "zeta", "status"]);
    for ng in graphs {
        if !ng.graph.is_unweighted() {
            r.notes.push(format!("{}: skipped, hikes are enumerated on unweighted graphs only", ng.id));
            continue;
        }
        let e = enumerate_hikes(&ng.graph, max_len)?;
        let zeta = zeta_coefficients(&ng.graph, max_len);
        let zeta = zeta.exact().ok_or(Error::Weighted)?;
        for (l, count) in e.counts().into_iter().enumerate() {
            let ok = BigInt::from(count) == zeta[l];
            r.push(vec![ng.id.clone(), l.to_string(), count.to_string(), zeta[l].to_string()], ok);
        }
    }
    Ok(r)
}

fn sieve_suite(graphs: &[NamedGraph], max_len: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(
        Suite::Sieve,
        &["graph", "gamma", "ell", "brute", "formula", "ratio", "c_gamma", "walks", "status"],
    );
    for ng in graphs {
        let g = &ng.graph;
        if !g.is_unweighted() {
            r.notes.push(format!("{}: skipped, hikes are enumerated on unweighted graphs only", ng.id));
            continue;
        }
        let e = enumerate_hikes(g, max_len)?;
        let zeta = zeta_coefficients(g, max_len);
        let zeta = zeta.exact().ok_or(Error::Weighted)?;
        let ctx = CentralityContext::new(g).ok();
        for gamma in e.table.primes() {
            let formula = sieve_series(g, gamma, max_len)?;
            let c = ctx.as_ref().and_then(|c| c.cycle_centrality(gamma).ok()).map(|r| r.value);
            for (l, f) in formula.iter().enumerate() {
                let brute = sieve_count_bruteforce(&e, gamma, l)?;
                let k = l + gamma.len();
                let (walks, walks_ok) = if k <= max_len {
                    let w = walk_count_bruteforce(&e, gamma, k)?;
                    let ok = w == brute && walk_factorization_check(&e, gamma, k)?;
                    (w.to_string(), ok)
                } else {
                    (String::new(), true)
                };
                let ratio = ratio_string(f, &zeta[l]);
                let ok = brute == *f && walks_ok;
                r.push(
                    vec![
                        ng.id.clone(),
                        gamma.display(g),
                        l.to_string(),
                        brute.to_string(),
                        f.to_string(),
                        ratio,
                        fmt_opt(c),
                        walks,
                    ],
                    ok,
                );
            }
        }
    }
    Ok(r)
}

fn ratio_string(num: &BigInt, den: &BigInt) -> String {
    if den.is_zero() {
        return String::new();
    }
    let q = num_rational::BigRational::new(num.clone(), den.clone());
    q.to_f64().map(fmt_f).unwrap_or_default()
}

fn asymptotics_suite(graphs: &[NamedGraph], k_max: usize, tol: f64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(
        Suite::Asymptotics,
        &["graph", "gamma", "k", "n_gamma", "ratio_cofactor", "ratio_total", "c_gamma", "error", "status"],
    );
    for ng in graphs {
        let g = &ng.graph;
        let spectrum = match Spectrum::compute(g) {
            Ok(s) => s,
            Err(e) => {
                r.notes.push(format!("{}: skipped, {e}", ng.id));
                continue;
            }
        };
        if !g.is_strongly_connected() || spectrum.eta.is_none() || !g.is_unweighted() {
            r.notes.push(format!("{}: skipped, needs an unweighted strongly connected graph with simple lambda", ng.id));
            continue;
        }
        for gamma in crate::enumeration::simple_cycles(g, g.n()) {
            let rep = walk_asymptotics_check(g, &gamma, k_max, None)?;
            let last = rep.rows.iter().rev().find(|x| x.ratio_cofactor.is_some());
            let Some(last) = last else { continue };
            let ok = rep.converged(tol);
            r.push(
                vec![
                    ng.id.clone(),
                    gamma.display(g),
                    last.k.to_string(),
                    last.predicted.to_string(),
                    fmt_opt(last.ratio_cofactor),
                    fmt_opt(last.ratio_total),
                    fmt_f(rep.c_gamma),
                    fmt_opt(rep.final_error),
                ],
                ok,
            );
        }
    }
    Ok(r)
}

fn mobius_suite(graphs: &[NamedGraph], max_len: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Mobius, &["graph", "degree", "assembled", "char_poly", "status"]);
    for ng in graphs {
        let degree = max_len.max(ng.graph.n());
        let rep = match mobius_det_identity_check(&ng.graph, degree) {
            Ok(rep) => rep,
            Err(Error::Weighted) => {
                r.notes.push(format!("{}: skipped, weights are not integers", ng.id));
                continue;
            }
            Err(e) => return Err(e),
        };
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
        r.push(
            vec![ng.id.clone(), degree.to_string(), join(&rep.assembled), join(&rep.char_poly)],
            rep.holds,
        );
    }
    Ok(r)
}

/// P3, K3 and random connected undirected graphs on 3 to 9 vertices, half
/// of them weighted.
pub fn projector_graphs(seed: u64) -> Vec<NamedGraph> {
    let mut out = vec![
        NamedGraph::new("P3", generators::path(3)),
        NamedGraph::new("K3", generators::complete(3)),
    ];
    let mut r = rng(seed ^ 0x9e37_79b9);
    for i in 0..14 {
        let n = 3 + i % 7;
        let weighted = i % 2 == 1;
        let g = generators::random_connected(n, 0.35, weighted, &mut r);
        let kind = if weighted { "w" } else { "u" };
        out.push(NamedGraph::new(format!("connected-{kind}-n{n}-{i}"), g));
    }
    out
}

fn projector_suite(graphs: &[NamedGraph], tol: f64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(
        Suite::Projector,
        &["graph", "i", "j", "pathsum", "eta_projector", "error", "status"],
    );
    for ng in graphs {
        let g = &ng.graph;
        let ctx = match CentralityContext::new(g) {
            Ok(c) if !g.is_directed() && c.eta().is_ok() && c.eigenvector_centrality().is_ok() => c,
            _ => {
                r.notes.push(format!("{}: skipped, needs a connected undirected graph with simple lambda", ng.id));
                continue;
            }
        };
        let n = g.n();
        for i in 0..n {
            for j in i..n {
                let lhs = ctx.projector_pathsum(i, j, n)?;
                let rhs = ctx.projector_entry(i, j)?;
                let err = (lhs - rhs).abs();
                r.push(
                    vec![
                        ng.id.clone(),
                        g.label(i).to_string(),
                        g.label(j).to_string(),
                        fmt_f(lhs),
                        fmt_f(rhs),
                        fmt_f(err),
                    ],
                    err <= tol,
                );
            }
        }
    }
    Ok(r)
}

/// P3, K3 and random connected graphs on 4 to 8 vertices.
pub fn ie_graphs(seed: u64) -> Vec<NamedGraph> {
    let mut out = vec![
        NamedGraph::new("P3", generators::path(3)),
        NamedGraph::new("K3", generators::complete(3)),
    ];
    let mut r = rng(seed ^ 0x5151);
    for i in 0..10 {
        let n = 4 + i % 5;
        out.push(NamedGraph::new(format!("connected-n{n}-{i}"), generators::random_connected(n, 0.3, false, &mut r)));
    }
    out
}

/// Up to `parts` pairwise disjoint connected vertex sets, each grown from a
/// random unused vertex.
pub fn random_disjoint_parts(g: &Graph, parts: usize, rng: &mut impl Rng) -> Vec<VertexSubset> {
    let n = g.n();
    let skeleton = g.skeleton();
    let mut used = vec![false; n];
    let mut out = Vec::new();
    for _ in 0..parts {
        let free: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
        if free.is_empty() {
            break;
        }
        let start = free[rng.gen_range(0..free.len())];
        let target = rng.gen_range(1..=2usize.max(free.len() / parts));
        let mut members = vec![start];
        used[start] = true;
        while members.len() < target {
            let frontier: Vec<usize> = members
                .iter()
                .flat_map(|&m| skeleton[m].iter().copied())
                .filter(|&u| !used[u])
                .collect();
            if frontier.is_empty() {
                break;
            }
            let next = frontier[rng.gen_range(0..frontier.len())];
            used[next] = true;
            members.push(next);
        }
        out.push(VertexSubset::new(members, n).expect("members are in range"));
    }
    out
}

fn ie_suite(graphs: &[NamedGraph], seed: u64, tol: f64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(
        Suite::InclusionExclusion,
        &["graph", "kind", "parts", "ie", "union", "difference", "status"],
    );
    let mut rand = rng(seed ^ 0xa11ce);
    for ng in graphs {
        let g = &ng.graph;
        let Ok(ctx) = CentralityContext::new(g) else {
            r.notes.push(format!("{}: skipped, zero spectral radius", ng.id));
            continue;
        };
        let n = g.n();
        let mut disjoint = vec![random_disjoint_parts(g, 2, &mut rand), random_disjoint_parts(g, 3, &mut rand)];
        if ng.id == "P3" {
            disjoint.push(vec![VertexSubset::new([0], n)?, VertexSubset::new([2], n)?]);
        }
        for parts in disjoint.into_iter().filter(|p| p.len() >= 2) {
            let (row, diff) = ie_row(&ctx, &ng.id, "disjoint", &parts)?;
            r.push(row, diff <= tol);
        }
        // overlapping parts are recorded, not judged
        let overlap = if ng.id == "K3" {
            Some(vec![VertexSubset::new([0, 1], n)?, VertexSubset::new([1, 2], n)?])
        } else {
            let skeleton = g.skeleton();
            (0..n).find(|&v| skeleton[v].len() >= 2).map(|v| {
                let a = VertexSubset::new([v, skeleton[v][0]], n).expect("in range");
                let b = VertexSubset::new([v, skeleton[v][1]], n).expect("in range");
                vec![a, b]
            })
        };
        if let Some(parts) = overlap {
            let (mut row, diff) = ie_row(&ctx, &ng.id, "overlap", &parts)?;
            row.push(if diff <= tol { "AGREE" } else { "DISCREPANCY" }.to_string());
            r.rows.push(row);
        }
    }
    Ok(r)
}

fn ie_row(ctx: &CentralityContext, id: &str, kind: &str, parts: &[VertexSubset]) -> Result<(Vec<String>, f64)> {
    let g = ctx.graph();
    let ie = ctx.union_centrality_ie(parts)?;
    let union = parts.iter().fold(VertexSubset::empty(), |acc, p| acc.union(p));
    let direct = ctx.subgraph_centrality(&union)?.value;
    let diff = (ie - direct).abs();
    let parts_str = parts
        .iter()
        .map(|p| g.subset_labels(p).join(";"))
        .collect::<Vec<_>>()
        .join("|");
    Ok((
        vec![id.to_string(), kind.to_string(), parts_str, fmt_f(ie), fmt_f(direct), fmt_f(diff)],
        diff,
    ))
}
