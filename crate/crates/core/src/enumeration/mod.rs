//! Enumeration of the combinatorial objects the centrality ranges over.

pub mod cycles;
pub mod distribution;
pub mod paths;
pub mod subsets;

pub use cycles::{simple_cycles, visit_simple_cycles, SimpleCyclePrime};
pub use distribution::{centrality_distribution, Baselines, DistributionConfig, DistributionRow};
pub use paths::{simple_paths, SimplePath};
pub use subsets::{connected_subsets, count_connected_subsets, for_each_connected_subset};
