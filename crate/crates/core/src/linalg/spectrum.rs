//! Dominant eigenvalue, its multiplicity, `eta` and the Perron vector.
//!
//! Small graphs (`n <= 64`) are handled through the roots of the
//! characteristic polynomial; integer-weighted ones up to
//! [`EXACT_SQUAREFREE_MAX_N`] vertices first get an exact square-free
//! decomposition so repeated eigenvalues are found with their exact
//! multiplicity. Larger graphs use power iteration for `lambda` and
//! Hessenberg-QR eigenvalues for the multiplicity.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::det::{identity_minus_scaled, Lu};
use super::series::{char_poly, poly_from_roots, PowerSeries};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MULTIPLICITY_TOL: f64 = 1e-8;
pub const ROOT_FINDING_MAX_N: usize = 64;
pub const EXACT_SQUAREFREE_MAX_N: usize = 24;

/// Spectral data of a graph needed by the centrality.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Perron root (largest real eigenvalue; equals the spectral radius for
    /// nonnegative weights).
    pub lambda: f64,
    /// Number of eigenvalues (with multiplicity) of modulus `lambda`.
    pub multiplicity: usize,
    /// Algebraic multiplicity of `lambda` itself.
    pub lambda_multiplicity: usize,
    /// `prod_{i>1} (1 - lambda_i / lambda)`; `None` unless `lambda` is simple.
    pub eta: Option<f64>,
    /// Unit Perron vector; `None` unless the graph is strongly connected with
    /// nonnegative weights.
    pub dominant_vector: Option<Vec<f64>>,
    /// Coefficients of `det(I - zA)`.
    pub char_poly: PowerSeries,
    /// All eigenvalues with multiplicity.
    pub eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    pub fn compute(g: &Graph) -> Result<Self> {
        Self::compute_with_tolerance(g, DEFAULT_MULTIPLICITY_TOL)
    }

    pub fn compute_with_tolerance(g: &Graph, tol: f64) -> Result<Self> {
        let n = g.n();
        if !g.is_nonnegative() {
            log::warn!("graph has negative weights; the Perron root may not be dominant");
        }
        if n == 0 || g.adjacency().iter().all(|&w| w == 0.0) {
            return Err(Error::ZeroSpectrum);
        }
        let (cp, lambda, eigenvalues) = if n <= ROOT_FINDING_MAX_N {
            let cp = char_poly(g);
            let roots = roots_with_multiplicity(&cp, n);
            let lambda = perron_root(&roots, tol);
            let eig = roots
                .iter()
                .flat_map(|&(r, m)| std::iter::repeat_n(r, m))
                .collect::<Vec<_>>();
            (cp, lambda, eig)
        } else {
            let eig = qr_eigenvalues(g);
            let lambda = match power_iteration(g, 1e-14, 20_000) {
                Some(l) => l,
                None => {
                    log::info!("power iteration did not converge; using Hessenberg-QR eigenvalues");
                    let plain: Vec<_> = eig.iter().map(|&r| (r, 1)).collect();
                    perron_root(&plain, tol)
                }
            };
            (PowerSeries::Float(poly_from_roots(&eig)), lambda, eig)
        };
        if lambda.is_nan() || lambda <= 0.0 || lambda < 1e-12 * max_abs_weight(g) {
            return Err(Error::ZeroSpectrum);
        }
        let multiplicity = eigenvalues
            .iter()
            .filter(|r| (r.norm() - lambda).abs() <= tol * lambda)
            .count();
        let lambda_multiplicity = eigenvalues
            .iter()
            .filter(|r| (**r - lambda).norm() <= tol * lambda)
            .count();

        let eta = (lambda_multiplicity == 1).then(|| {
            if n <= ROOT_FINDING_MAX_N {
                eta_from_char_poly(&cp, lambda)
            } else {
                eta_from_eigenvalues(&eigenvalues, lambda)
            }
        });
        let dominant_vector = (g.is_nonnegative() && g.is_strongly_connected())
            .then(|| perron_vector(g, lambda))
            .flatten();

        Ok(Spectrum {
            lambda,
            multiplicity,
            lambda_multiplicity,
            eta,
            dominant_vector,
            char_poly: cp,
            eigenvalues,
        })
    }

    /// `Lambda = lambda^g`, the growth constant of the hike counts.
    pub fn growth(&self) -> f64 {
        self.lambda.powi(self.multiplicity as i32)
    }
}

/// Dominant eigenvalue and the number of eigenvalues sharing its modulus.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<(f64, usize)> {
    let s = Spectrum::compute_with_tolerance(g, tol)?;
    Ok((s.lambda, s.multiplicity))
}

/// `eta = -(1/lambda) d/dz det(I - zA)` at `z = 1/lambda`.
pub fn eta(g: &Graph) -> Result<f64> {
    let s = Spectrum::compute(g)?;
    s.eta.ok_or(Error::NotSimple(s.lambda_multiplicity))
}

/// Positive unit Perron vector of a strongly connected nonnegative graph.
pub fn dominant_eigenvector(g: &Graph) -> Result<Vec<f64>> {
    if !g.is_nonnegative() {
        return Err(Error::Invalid("Perron vector requires nonnegative weights".into()));
    }
    if !g.is_strongly_connected() {
        return Err(Error::Disconnected);
    }
    let s = Spectrum::compute(g)?;
    s.dominant_vector.ok_or(Error::Disconnected)
}

pub fn eta_from_char_poly(cp: &PowerSeries, lambda: f64) -> f64 {
    -cp.eval_derivative(1.0 / lambda) / lambda
}

/// `prod_{i>1}(1 - lambda_i/lambda)`, skipping one copy of `lambda`.
pub fn eta_from_eigenvalues(eig: &[Complex64], lambda: f64) -> f64 {
    let skip = eig
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - lambda).norm().total_cmp(&(b.1 - lambda).norm()))
        .map(|(i, _)| i);
    eig.iter()
        .enumerate()
        .filter(|&(i, _)| Some(i) != skip)
        .fold(Complex64::one(), |acc, (_, &r)| acc * (1.0 - r / lambda))
        .re
}

fn max_abs_weight(g: &Graph) -> f64 {
    g.adjacency().iter().fold(0.0_f64, |m, w| m.max(w.abs()))
}

/// The real eigenvalue of largest modulus, preferring the positive one among
/// ties.
fn perron_root(roots: &[(Complex64, usize)], tol: f64) -> f64 {
    let rho = roots.iter().map(|r| r.0.norm()).fold(0.0, f64::max);
    let best = roots
        .iter()
        .filter(|r| r.0.norm() >= rho * (1.0 - tol))
        .max_by(|a, b| a.0.re.total_cmp(&b.0.re))
        .map(|r| r.0)
        .unwrap_or_default();
    if best.re > 0.0 && best.im.abs() <= tol * rho {
        best.re
    } else {
        rho
    }
}

/// Roots of `x^n det(I - A/x)`, each with its multiplicity.
fn roots_with_multiplicity(cp: &PowerSeries, n: usize) -> Vec<(Complex64, usize)> {
    // det(xI - A) ascending in x is the reversed det(I - zA).
    match cp {
        PowerSeries::Exact(c) if n <= EXACT_SQUAREFREE_MAX_N => {
            let ascending: Vec<BigInt> = c.iter().rev().cloned().collect();
            let mut out = Vec::new();
            for (factor, mult) in yun_squarefree(&ascending) {
                let f: Vec<f64> = factor.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect();
                out.extend(polynomial_roots(&f).into_iter().map(|r| (r, mult)));
            }
            out
        }
        _ => {
            let mut ascending: Vec<f64> = cp.to_f64().into_iter().rev().collect();
            let zeros = ascending.iter().take_while(|&&c| c == 0.0).count();
            ascending.drain(..zeros);
            let mut out: Vec<_> = (0..zeros).map(|_| (Complex64::zero(), 1)).collect();
            out.extend(polynomial_roots(&ascending).into_iter().map(|r| (r, 1)));
            out
        }
    }
}

// --- exact polynomial arithmetic over Q, ascending coefficients ---

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn derivative(p: &QPoly) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect();
    trim(&mut d);
    d
}

fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() / &lead;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &factor * bk;
        }
        q[shift] = factor;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn monic(mut p: QPoly) -> QPoly {
    trim(&mut p);
    if let Some(lead) = p.last().cloned() {
        for c in p.iter_mut() {
            *c /= &lead;
        }
    }
    p
}

fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (monic(a.clone()), monic(b.clone()));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = monic(r);
    }
    a
}

/// Yun's square-free decomposition `p = prod a_i^i`; returns the non-trivial
/// `(a_i, i)`.
fn yun_squarefree(p: &[BigInt]) -> Vec<(QPoly, usize)> {
    let p: QPoly = monic(p.iter().cloned().map(BigRational::from_integer).collect());
    if p.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut c = gcd(&p, &derivative(&p));
    let mut w = div_rem(&p, &c).0;
    let mut i = 1;
    while c.len() > 1 {
        let y = gcd(&w, &c);
        let z = div_rem(&w, &y).0;
        if z.len() > 1 {
            out.push((z, i));
        }
        c = div_rem(&c, &y).0;
        w = y;
        i += 1;
    }
    if w.len() > 1 {
        out.push((w, i));
    }
    out
}

// --- floating root finding ---

fn horner(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::zero();
    let mut der = Complex64::zero();
    for &c in p.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

/// All complex roots of a polynomial given by ascending coefficients, by the
/// Aberth-Ehrlich iteration followed by Newton polishing.
pub fn polynomial_roots(ascending: &[f64]) -> Vec<Complex64> {
    let mut p = ascending.to_vec();
    while p.last() == Some(&0.0) {
        p.pop();
    }
    let d = p.len().saturating_sub(1);
    if d == 0 {
        return vec![];
    }
    let lead = p[d];
    p.iter_mut().for_each(|c| *c /= lead);
    if d == 1 {
        return vec![Complex64::new(-p[0], 0.0)];
    }

    // Fujiwara bound on root moduli
    let bound = (1..=d)
        .map(|k| p[d - k].abs().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound * 0.5 } else { 1.0 };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..d {
            let (val, der) = horner(&p, z[k]);
            if val == Complex64::zero() {
                continue;
            }
            let ratio = val / der;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff == Complex64::zero() {
                        Complex64::zero()
                    } else {
                        1.0 / diff
                    }
                })
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }

    for r in z.iter_mut() {
        for _ in 0..3 {
            let (val, der) = horner(&p, *r);
            if der == Complex64::zero() {
                break;
            }
            let next = *r - val / der;
            if !next.is_finite() || horner(&p, next).0.norm() >= val.norm() {
                break;
            }
            *r = next;
        }
        if r.im.abs() <= 1e-14 * (1.0 + r.re.abs()) {
            r.im = 0.0;
        }
    }
    z
}

/// Eigenvalues by nalgebra's Hessenberg-QR (symmetric solver when the
/// adjacency is symmetric).
pub fn qr_eigenvalues(g: &Graph) -> Vec<Complex64> {
    let n = g.n();
    let m = DMatrix::from_row_slice(n, n, g.adjacency());
    let symmetric = (0..n).all(|i| (0..i).all(|j| g.weight(i, j) == g.weight(j, i)));
    if symmetric {
        m.symmetric_eigenvalues()
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect()
    } else {
        m.complex_eigenvalues().iter().copied().collect()
    }
}

/// Power iteration on `A`; `None` when the iterate does not settle (for
/// instance on periodic graphs).
pub fn power_iteration(g: &Graph, tol: f64, max_iter: usize) -> Option<f64> {
    let n = g.n();
    let a = g.adjacency();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    for _ in 0..max_iter {
        for i in 0..n {
            y[i] = a[i * n..(i + 1) * n].iter().zip(&x).map(|(w, v)| w * v).sum();
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let v = y[i] / norm;
            delta = delta.max((v - x[i]).abs());
            x[i] = v;
        }
        if delta < tol {
            return Some(norm);
        }
    }
    None
}

/// Unit eigenvector for a simple eigenvalue `lambda`, by shifted inverse
/// iteration, with the sign chosen so the entries sum to a positive value.
pub(crate) fn perron_vector(g: &Graph, lambda: f64) -> Option<Vec<f64>> {
    let n = g.n();
    let sigma = lambda * (1.0 + 1e-9);
    // (sigma I - A) = sigma (I - A / sigma)
    let shifted = Lu::factor(&identity_minus_scaled(g.adjacency(), n, 1.0 / sigma), n)?;
    let mut x = vec![1.0; n];
    for _ in 0..4 {
        x = shifted.solve(&x);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= norm);
    }
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_unit_edges(3, false, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }
    fn c4() -> Graph {
        Graph::from_unit_edges(4, false, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }
    fn p3() -> Graph {
        Graph::from_unit_edges(3, false, &[(0, 1), (1, 2)]).unwrap()
    }
    fn star() -> Graph {
        Graph::from_unit_edges(4, false, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn triangle_spectrum() {
        let (l, g) = spectral_radius(&k3(), DEFAULT_MULTIPLICITY_TOL).unwrap();
        assert!((l - 2.0).abs() < 1e-14);
        assert_eq!(g, 1);
        assert!((eta(&k3()).unwrap() - 2.25).abs() < 1e-12);
    }

    #[test]
    fn bipartite_spectra_count_both_signs() {
        let (l, g) = spectral_radius(&c4(), DEFAULT_MULTIPLICITY_TOL).unwrap();
        assert!((l - 2.0).abs() < 1e-14);
        assert_eq!(g, 2);
        // -sqrt 2 ties sqrt 2 in modulus, so g = 2 as for C4
        let (l, g) = spectral_radius(&p3(), DEFAULT_MULTIPLICITY_TOL).unwrap();
        assert!((l - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(g, 2);
        assert!((eta(&p3()).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn repeated_eigenvalues_are_exact() {
        let s = Spectrum::compute(&k3()).unwrap();
        let minus_one = s.eigenvalues.iter().filter(|r| (**r + 1.0).norm() < 1e-12).count();
        assert_eq!(minus_one, 2);
        // two disjoint triangles: lambda = 2 is a double root
        let two = Graph::from_unit_edges(6, false, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
            .unwrap();
        let s = Spectrum::compute(&two).unwrap();
        assert_eq!(s.lambda_multiplicity, 2);
        assert!(s.eta.is_none());
        assert!(matches!(eta(&two), Err(Error::NotSimple(2))));
    }

    #[test]
    fn self_loop_eta() {
        let g = Graph::from_unit_edges(1, true, &[(0, 0)]).unwrap();
        let s = Spectrum::compute(&g).unwrap();
        assert_eq!(s.lambda, 1.0);
        assert!((s.eta.unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_spectrum_is_an_error() {
        let g = Graph::from_edges(1, false, &[]).unwrap();
        assert!(matches!(Spectrum::compute(&g), Err(Error::ZeroSpectrum)));
        // nilpotent digraph
        let dag = Graph::from_unit_edges(3, true, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(Spectrum::compute(&dag), Err(Error::ZeroSpectrum)));
    }

    #[test]
    fn perron_vectors() {
        let v = dominant_eigenvector(&k3()).unwrap();
        for x in &v {
            assert!((x - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
        let v = dominant_eigenvector(&p3()).unwrap();
        let expected = [0.5, 2f64.sqrt() / 2.0, 0.5];
        for (x, e) in v.iter().zip(expected) {
            assert!((x - e).abs() < 1e-12, "{v:?}");
        }
        let v = dominant_eigenvector(&star()).unwrap();
        assert!((v[0] - 0.5f64.sqrt()).abs() < 1e-12);
        for x in &v[1..] {
            assert!((x - (1.0 / 6.0f64).sqrt()).abs() < 1e-12);
        }
        let split = Graph::from_unit_edges(4, false, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(dominant_eigenvector(&split), Err(Error::Disconnected)));
    }

    #[test]
    fn eta_routes_agree() {
        let g = Graph::from_edges(
            5,
            false,
            &[(0, 1, 1.5), (1, 2, 0.5), (2, 3, 2.0), (3, 4, 1.0), (4, 0, 0.25), (1, 3, 1.0)],
        )
        .unwrap();
        let s = Spectrum::compute(&g).unwrap();
        let via_roots = eta_from_eigenvalues(&s.eigenvalues, s.lambda);
        assert!((s.eta.unwrap() - via_roots).abs() < 1e-10);
        let via_qr = eta_from_eigenvalues(&qr_eigenvalues(&g), s.lambda);
        assert!((via_qr - via_roots).abs() < 1e-10);
    }

    #[test]
    fn char_poly_vanishes_at_inverse_lambda() {
        for g in [k3(), c4(), p3(), star()] {
            let s = Spectrum::compute(&g).unwrap();
            assert!(s.char_poly.eval(1.0 / s.lambda).abs() < 1e-9);
        }
    }

    #[test]
    fn roots_of_quadratic() {
        let mut r = polynomial_roots(&[-2.0, 0.0, 1.0]);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0].re + 2f64.sqrt()).abs() < 1e-15);
        assert!((r[1].re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn large_graph_path_matches_roots() {
        // a 70-cycle with chords: above the root-finding cut-off
        let n = 70;
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n).step_by(7).map(|i| (i, (i + 2) % n)));
        let g = Graph::from_unit_edges(n, false, &edges).unwrap();
        let s = Spectrum::compute(&g).unwrap();
        let qr_max = qr_eigenvalues(&g).iter().map(|r| r.norm()).fold(0.0, f64::max);
        assert!((s.lambda - qr_max).abs() < 1e-9);
        assert_eq!(s.multiplicity, 1);
        assert!(s.eta.unwrap() > 0.0);
    }

    #[test]
    fn large_periodic_graph_falls_back_to_qr() {
        // odd path: bipartite, power iteration from the uniform vector oscillates
        let n = 81;
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::from_unit_edges(n, false, &edges).unwrap();
        assert!(power_iteration(&g, 1e-14, 20_000).is_none());
        let s = Spectrum::compute(&g).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 82.0).cos();
        assert!((s.lambda - expected).abs() < 1e-9);
        assert_eq!(s.multiplicity, 2);
    }
}
