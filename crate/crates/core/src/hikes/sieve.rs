//! The sieve on hikes: counting the hikes `h` of a given length whose right
//! prime divisors all meet a fixed cycle `gamma`, so that `h gamma` is a
//! closed walk ending in `gamma`. Each count is obtained twice, once by
//! filtering an explicit enumeration and once from the series
//! `det(I - z A_{G\gamma}) / det(I - z A)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::centrality::CentralityContext;
use crate::enumeration::SimpleCyclePrime;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hikes::monoid::{self_avoiding_hikes, Hike, HikeEnumeration, PrimeTable};
use crate::linalg::{char_poly, series::product_coefficient, zeta_coefficients, Spectrum};

fn exact_char_poly(g: &Graph) -> Result<Vec<BigInt>> {
    char_poly(g).exact().map(<[BigInt]>::to_vec).ok_or(Error::Weighted)
}

fn exact_zeta(g: &Graph, order: usize) -> Result<Vec<BigInt>> {
    zeta_coefficients(g, order).exact().map(<[BigInt]>::to_vec).ok_or(Error::Weighted)
}

fn letter_of(e: &HikeEnumeration, gamma: &SimpleCyclePrime) -> Result<u32> {
    e.table
        .index_of(gamma)
        .ok_or_else(|| Error::Invalid(format!("cycle {:?} is not a prime of this graph", gamma.vertices())))
}

fn level(e: &HikeEnumeration, len: usize) -> Result<&[Hike]> {
    e.by_length
        .get(len)
        .map(Vec::as_slice)
        .ok_or_else(|| Error::Invalid(format!("hikes enumerated only up to length {}", e.max_len())))
}

/// Whether every right prime divisor of `h` shares a vertex with `gamma`.
fn survives(table: &PrimeTable, h: &Hike, gamma: u32) -> bool {
    table
        .right_prime_divisors(h)
        .iter()
        .all(|&d| !table.commutes(d, gamma))
}

/// Hikes of length `len` with no right prime divisor disjoint from `gamma`.
pub fn sieve_count_bruteforce(e: &HikeEnumeration, gamma: &SimpleCyclePrime, len: usize) -> Result<BigInt> {
    let a = letter_of(e, gamma)?;
    let count = level(e, len)?.iter().filter(|h| survives(&e.table, h, a)).count();
    Ok(BigInt::from(count))
}

/// `[z^len] det(I - z A_{G\gamma}) / det(I - z A)`, exactly.
pub fn sieve_count_formula(g: &Graph, gamma: &SimpleCyclePrime, len: usize) -> Result<BigInt> {
    Ok(sieve_series(g, gamma, len)?.swap_remove(len))
}

/// Coefficients `0..=order` of `det(I - z A_{G\gamma}) / det(I - z A)`.
pub fn sieve_series(g: &Graph, gamma: &SimpleCyclePrime, order: usize) -> Result<Vec<BigInt>> {
    let rest = exact_char_poly(&g.delete_vertices(gamma.vertex_set())?)?;
    let zeta = exact_zeta(g, order)?;
    Ok((0..=order).map(|k| product_coefficient(&rest, &zeta, k)).collect())
}

/// Hikes of length `k` whose only right prime divisor is `gamma`.
pub fn walk_count_bruteforce(e: &HikeEnumeration, gamma: &SimpleCyclePrime, k: usize) -> Result<BigInt> {
    let a = letter_of(e, gamma)?;
    if k < gamma.len() {
        return Ok(BigInt::zero());
    }
    let count = level(e, k)?
        .iter()
        .filter(|h| {
            let d = e.table.right_prime_divisors(h);
            d.len() == 1 && d.contains(&a)
        })
        .count();
    Ok(BigInt::from(count))
}

/// Checks that `h -> h gamma` maps the sieved hikes of length
/// `k - len(gamma)` one-to-one onto the walks of length `k` ending in
/// `gamma`, and that stripping `gamma` inverts it.
pub fn walk_factorization_check(e: &HikeEnumeration, gamma: &SimpleCyclePrime, k: usize) -> Result<bool> {
    let a = letter_of(e, gamma)?;
    if k < gamma.len() {
        return Ok(true);
    }
    let table = &e.table;
    let walks: BTreeSet<&Hike> = level(e, k)?
        .iter()
        .filter(|h| {
            let d = table.right_prime_divisors(h);
            d.len() == 1 && d.contains(&a)
        })
        .collect();
    let sieved: BTreeSet<&Hike> = level(e, k - gamma.len())?
        .iter()
        .filter(|h| survives(table, h, a))
        .collect();
    let letter = table.normalize(&[a]);
    let mut images = BTreeSet::new();
    for h in &sieved {
        let w = table.concat(h, &letter);
        if !walks.contains(&w) {
            return Ok(false);
        }
        images.insert(w);
    }
    if images.len() != walks.len() {
        return Ok(false);
    }
    for w in &walks {
        match table.strip_right_divisor(w, a) {
            Some(h) if sieved.contains(&h) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MobiusIdentityReport {
    /// `sum over self-avoiding d of mu(d) W(d) z^len(d)`.
    pub assembled: Vec<BigInt>,
    pub char_poly: Vec<BigInt>,
    pub holds: bool,
}

/// Compares the Moebius sum over self-avoiding hikes with `det(I - zA)`
/// coefficientwise up to degree `max_len`. Weights must be integers.
pub fn mobius_det_identity_check(g: &Graph, max_len: usize) -> Result<MobiusIdentityReport> {
    let mut cp = exact_char_poly(g)?;
    cp.resize(max_len + 1, BigInt::zero());
    let table = PrimeTable::new(g, max_len.min(g.n()));
    let mut assembled = vec![BigInt::zero(); max_len + 1];
    for d in self_avoiding_hikes(&table, max_len) {
        let mut term = BigInt::from(table.mobius(&d));
        for &a in d.word() {
            term *= BigInt::from(table.prime(a).weight().round() as i64);
        }
        assembled[d.length()] += term;
    }
    let holds = assembled == cp;
    Ok(MobiusIdentityReport { assembled, char_poly: cp, holds })
}

/// One row of the walk-count asymptotics trace for total walk length `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SieveDiagnostics {
    pub k: usize,
    /// Cofactor length `k - len(gamma)`.
    pub ell: usize,
    /// `n_gamma(k)` from the series.
    pub predicted: BigInt,
    /// The same count by enumeration, when hikes of this length are available.
    pub brute: Option<BigInt>,
    pub zeta_ell: BigInt,
    pub zeta_k: BigInt,
    /// `n_gamma(k) / zeta[k - len(gamma)]`; `None` where that coefficient vanishes.
    pub ratio_cofactor: Option<f64>,
    /// `n_gamma(k) / zeta[k]`.
    pub ratio_total: Option<f64>,
    pub c_gamma: f64,
    /// `f(ell) = zeta[ell] / lambda^ell`.
    pub f_ell: f64,
    /// `n_gamma(k) - c(gamma) zeta[ell]`.
    pub residual: f64,
    /// `lambda^{-len(gamma)}`.
    pub prob: f64,
}

#[derive(Clone, Debug)]
pub struct WalkAsymptoticsReport {
    pub rows: Vec<SieveDiagnostics>,
    pub c_gamma: f64,
    /// `|ratio - c(gamma)|` at the largest `k` with a defined ratio.
    pub final_error: Option<f64>,
}

impl WalkAsymptoticsReport {
    pub fn converged(&self, tol: f64) -> bool {
        self.final_error.is_some_and(|e| e <= tol)
    }
}

fn ratio(num: &BigInt, den: &BigInt) -> Option<f64> {
    if den.is_zero() {
        return None;
    }
    BigRational::new(num.clone(), den.clone()).to_f64()
}

/// Exact `n_gamma(k)` for `k <= k_max` against `c(gamma) zeta[k - len(gamma)]`.
/// Rows where the cofactor coefficient vanishes (periodic graphs) carry no
/// ratio. `brute` supplies enumeration counts where available.
pub fn walk_asymptotics_check(
    g: &Graph,
    gamma: &SimpleCyclePrime,
    k_max: usize,
    brute: Option<&HikeEnumeration>,
) -> Result<WalkAsymptoticsReport> {
    let spectrum = Spectrum::compute(g)?;
    let lambda = spectrum.lambda;
    let ctx = CentralityContext::with_spectrum(g, spectrum);
    let c_gamma = ctx.cycle_centrality(gamma)?.value;
    let sieve = sieve_series(g, gamma, k_max)?;
    let zeta = exact_zeta(g, k_max)?;
    let glen = gamma.len();
    let mut rows = Vec::new();
    for k in glen..=k_max {
        let ell = k - glen;
        let predicted = sieve[ell].clone();
        let brute_count = match brute {
            Some(e) if ell <= e.max_len() => Some(sieve_count_bruteforce(e, gamma, ell)?),
            _ => None,
        };
        let zeta_ell = zeta[ell].to_f64().unwrap_or(f64::NAN);
        rows.push(SieveDiagnostics {
            k,
            ell,
            brute: brute_count,
            ratio_cofactor: ratio(&predicted, &zeta[ell]),
            ratio_total: ratio(&predicted, &zeta[k]),
            c_gamma,
            f_ell: zeta_ell / lambda.powi(ell as i32),
            residual: predicted.to_f64().unwrap_or(f64::NAN) - c_gamma * zeta_ell,
            prob: lambda.powi(-(glen as i32)),
            zeta_ell: zeta[ell].clone(),
            zeta_k: zeta[k].clone(),
            predicted,
        });
    }
    let final_error = rows
        .iter()
        .rev()
        .find_map(|r| r.ratio_cofactor)
        .map(|r| (r - c_gamma).abs());
    Ok(WalkAsymptoticsReport { rows, c_gamma, final_error })
}

/// `f(l) = |H_l| / lambda^l` for `l = 0..=order`. On a periodic graph only
/// the residue classes where `|H_l|` is nonzero carry information.
pub fn normalized_hike_counts(g: &Graph, order: usize) -> Result<Vec<f64>> {
    let spectrum = Spectrum::compute(g)?;
    let zeta = exact_zeta(g, order)?;
    let lambda = spectrum.lambda;
    Ok(zeta
        .iter()
        .enumerate()
        .map(|(l, z)| z.to_f64().unwrap_or(f64::NAN) / lambda.powi(l as i32))
        .collect())
}

/// `max over self-avoiding d with len(d) <= ell of |f(ell - len(d)) - f(ell)|`,
/// the error term of the hike-counting sieve.
pub fn error_term_amplitude(g: &Graph, table: &PrimeTable, ell: usize) -> Result<f64> {
    let f = normalized_hike_counts(g, ell)?;
    let mut lengths: BTreeSet<usize> = BTreeSet::new();
    for d in self_avoiding_hikes(table, ell) {
        lengths.insert(d.length());
    }
    Ok(lengths
        .into_iter()
        .map(|l| (f[ell - l] - f[ell]).abs())
        .fold(0.0, f64::max))
}
