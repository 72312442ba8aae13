//! Exact combinatorics of hikes: the trace monoid over simple cycles, its
//! Moebius function, and the sieve behind the walk-counting asymptotics.

pub mod monoid;
pub mod sieve;

pub use monoid::{
    enumerate_hikes, enumerate_hikes_with_budget, hike_count_estimate, self_avoiding_hikes, Hike,
    HikeEnumeration, PrimeTable, DEFAULT_HIKE_BUDGET,
};
pub use sieve::{
    error_term_amplitude, mobius_det_identity_check, normalized_hike_counts, sieve_count_bruteforce,
    sieve_count_formula, sieve_series, walk_asymptotics_check, walk_count_bruteforce,
    walk_factorization_check, MobiusIdentityReport, SieveDiagnostics, WalkAsymptoticsReport,
};
