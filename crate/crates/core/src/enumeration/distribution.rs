//! Centrality of every connected `k`-subset, with group-centrality columns.

use rayon::prelude::*;

use crate::centrality::CentralityContext;
use crate::enumeration::subsets::{count_connected_subsets, for_each_connected_subset};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSubset};
use crate::group::GroupEvaluator;

/// Subsets handed to the worker pool at once.
const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Baselines {
    DegreeOnly,
    All,
}

#[derive(Clone, Debug)]
pub struct DistributionConfig {
    pub k: usize,
    /// Largest number of subsets evaluated before giving up.
    pub budget: u64,
    pub workers: usize,
    pub baselines: Baselines,
}

impl DistributionConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            budget: 5_000_000,
            workers: 1,
            baselines: Baselines::DegreeOnly,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionRow {
    pub subset: VertexSubset,
    pub centrality: f64,
    /// `centrality / max centrality`.
    pub normalized: f64,
    pub degree: usize,
    /// `degree / max degree`.
    pub degree_normalized: f64,
    pub closeness: Option<(f64, f64)>,
    pub betweenness: Option<f64>,
}

/// Rows for every connected `k`-subset in ESU order. Output does not depend
/// on the worker count.
pub fn centrality_distribution(g: &Graph, cfg: &DistributionConfig) -> Result<Vec<DistributionRow>> {
    if cfg.k == 0 || cfg.k > g.n() {
        return Err(Error::Invalid(format!("subset size {} outside 1..={}", cfg.k, g.n())));
    }
    if cfg.workers == 0 {
        return Err(Error::Invalid("worker count must be at least 1".into()));
    }
    let count = count_connected_subsets(g, cfg.k);
    if count > cfg.budget {
        return Err(Error::Budget { count, budget: cfg.budget });
    }
    log::info!("evaluating {count} connected {}-subsets on {} workers", cfg.k, cfg.workers);

    let ctx = CentralityContext::new(g)?;
    let group = GroupEvaluator::new(g);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;

    let evaluate = |members: &[usize]| {
        let centrality = ctx.value(members);
        let degree = group.degree(members);
        let (closeness, betweenness) = match cfg.baselines {
            Baselines::DegreeOnly => (None, None),
            Baselines::All => (Some(group.closeness(members)), Some(group.betweenness(members))),
        };
        DistributionRow {
            subset: VertexSubset::from_sorted(members.to_vec()),
            centrality,
            normalized: 0.0,
            degree,
            degree_normalized: 0.0,
            closeness,
            betweenness,
        }
    };

    let mut rows = Vec::with_capacity(count as usize);
    let mut chunk: Vec<usize> = Vec::with_capacity(CHUNK * cfg.k);
    let flush = |chunk: &mut Vec<usize>, rows: &mut Vec<DistributionRow>| {
        pool.install(|| {
            rows.par_extend(chunk.par_chunks(cfg.k).map(&evaluate));
        });
        chunk.clear();
    };
    for_each_connected_subset(g, cfg.k, |members| {
        chunk.extend_from_slice(members);
        if chunk.len() == CHUNK * cfg.k {
            flush(&mut chunk, &mut rows);
        }
    });
    if !chunk.is_empty() {
        flush(&mut chunk, &mut rows);
    }

    let max_c = rows.iter().map(|r| r.centrality).fold(f64::NEG_INFINITY, f64::max);
    let max_degree = rows.iter().map(|r| r.degree).max().unwrap_or(0);
    for r in &mut rows {
        r.normalized = if max_c > 0.0 { r.centrality / max_c } else { 0.0 };
        r.degree_normalized = if max_degree > 0 {
            r.degree as f64 / max_degree as f64
        } else {
            0.0
        };
    }
    Ok(rows)
}
