//! Formal power series in `z`: the characteristic polynomial
//! `det(I - zA)` and the hike zeta function `1 / det(I - zA)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::graph::Graph;

/// Above this size the floating characteristic polynomial is assembled from
/// Hessenberg-QR eigenvalues instead of Faddeev-LeVerrier.
pub const FLOAT_LEVERRIER_MAX_N: usize = 300;

/// Coefficients `c_0..c_L` of a truncated power series, tagged by
/// arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub enum PowerSeries {
    Exact(Vec<BigInt>),
    Float(Vec<f64>),
}

impl PowerSeries {
    pub fn len(&self) -> usize {
        match self {
            PowerSeries::Exact(c) => c.len(),
            PowerSeries::Float(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Truncation order `L` (number of coefficients minus one).
    pub fn order(&self) -> usize {
        self.len().saturating_sub(1)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, PowerSeries::Exact(_))
    }

    pub fn exact(&self) -> Option<&[BigInt]> {
        match self {
            PowerSeries::Exact(c) => Some(c),
            PowerSeries::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            PowerSeries::Exact(c) => c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
            PowerSeries::Float(c) => c.clone(),
        }
    }

    /// Coefficient of `z^k`; zero beyond the stored order.
    pub fn coefficient_f64(&self, k: usize) -> f64 {
        match self {
            PowerSeries::Exact(c) => c.get(k).and_then(|x| x.to_f64()).unwrap_or(0.0),
            PowerSeries::Float(c) => c.get(k).copied().unwrap_or(0.0),
        }
    }

    /// Horner evaluation at a real point.
    pub fn eval(&self, z: f64) -> f64 {
        self.to_f64().iter().rev().fold(0.0, |acc, &c| acc * z + c)
    }

    /// Derivative evaluated at a real point.
    pub fn eval_derivative(&self, z: f64) -> f64 {
        let c = self.to_f64();
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &ck)| acc * z + k as f64 * ck)
    }

    /// Multiplicative inverse truncated at order `order`. The constant term
    /// must be 1 (true for every `det(I - zA)`).
    pub fn inverse(&self, order: usize) -> PowerSeries {
        match self {
            PowerSeries::Exact(c) => PowerSeries::Exact(invert_unit_series(c, order)),
            PowerSeries::Float(c) => {
                assert!(!c.is_empty() && c[0] == 1.0, "series constant term must be 1");
                let mut h = vec![0.0; order + 1];
                h[0] = 1.0;
                for l in 1..=order {
                    let mut acc = 0.0;
                    for i in 1..=l.min(c.len() - 1) {
                        acc -= c[i] * h[l - i];
                    }
                    h[l] = acc;
                }
                PowerSeries::Float(h)
            }
        }
    }
}

/// Exact integer weights when every weight is an integer representable in
/// an `f64` mantissa.
pub fn integer_weights(g: &Graph) -> Option<Vec<BigInt>> {
    const LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53
    g.adjacency()
        .iter()
        .map(|&w| {
            if w.fract() == 0.0 && w.abs() <= LIMIT {
                Some(BigInt::from(w as i64))
            } else {
                None
            }
        })
        .collect()
}

/// Coefficients of `det(I - zA)` (degree `<= n`, constant term 1). Exact
/// when all weights are integers.
pub fn char_poly(g: &Graph) -> PowerSeries {
    let n = g.n();
    if let Some(a) = integer_weights(g) {
        let coeffs = leverrier_i128(g.adjacency(), n).unwrap_or_else(|| leverrier_exact(&a, n));
        return PowerSeries::Exact(coeffs);
    }
    if n > 500 {
        log::warn!("floating characteristic polynomial of a {n}-vertex graph is badly conditioned");
    }
    if n > FLOAT_LEVERRIER_MAX_N {
        return PowerSeries::Float(poly_from_eigenvalues(g));
    }
    PowerSeries::Float(leverrier_f64(g.adjacency(), n))
}

/// `1 / det(I - zA)` to order `order`, in the arithmetic of [`char_poly`].
pub fn zeta_coefficients(g: &Graph, order: usize) -> PowerSeries {
    char_poly(g).inverse(order)
}

/// Solves `sum_{i=0}^{min(l,deg)} c_i h_{l-i} = [l = 0]` for `h`.
pub fn invert_unit_series(c: &[BigInt], order: usize) -> Vec<BigInt> {
    assert!(!c.is_empty() && c[0].is_one(), "series constant term must be 1");
    let mut h: Vec<BigInt> = Vec::with_capacity(order + 1);
    h.push(BigInt::one());
    for l in 1..=order {
        let mut acc = BigInt::zero();
        for i in 1..=l.min(c.len() - 1) {
            if !c[i].is_zero() {
                acc -= &c[i] * &h[l - i];
            }
        }
        h.push(acc);
    }
    h
}

/// Coefficient of `z^k` in the product of two exact series.
pub fn product_coefficient(a: &[BigInt], b: &[BigInt], k: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=k.min(a.len().saturating_sub(1)) {
        if let Some(bj) = b.get(k - i) {
            acc += &a[i] * bj;
        }
    }
    acc
}

/// Faddeev-LeVerrier: `M_1 = I`, `P_k = A M_k`, `c_k = -tr(P_k)/k`,
/// `M_{k+1} = P_k + c_k I`. The `c_k` are the coefficients of
/// `det(I - zA)`.
fn leverrier_exact(a: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    let mut m: Vec<BigInt> = (0..n * n)
        .map(|idx| if idx / n == idx % n { BigInt::one() } else { BigInt::zero() })
        .collect();
    for k in 1..=n {
        let mut p = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let ail = &a[i * n + l];
                if ail.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let mlj = &m[l * n + j];
                    if !mlj.is_zero() {
                        p[i * n + j] += ail * mlj;
                    }
                }
            }
        }
        let trace: BigInt = (0..n).map(|i| &p[i * n + i]).sum();
        let ck = -trace / BigInt::from(k);
        for i in 0..n {
            p[i * n + i] += &ck;
        }
        coeffs.push(ck);
        m = p;
    }
    coeffs
}

/// Checked `i128` fast path for [`leverrier_exact`]; `None` on overflow or
/// non-integer weights.
fn leverrier_i128(a: &[f64], n: usize) -> Option<Vec<BigInt>> {
    let a: Vec<i128> = a
        .iter()
        .map(|&w| (w.fract() == 0.0 && w.abs() < 1e15).then_some(w as i128))
        .collect::<Option<_>>()?;
    let mut coeffs = vec![BigInt::one()];
    let mut m: Vec<i128> = (0..n * n).map(|idx| i128::from(idx / n == idx % n)).collect();
    for k in 1..=n {
        let mut p = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let ail = a[i * n + l];
                if ail == 0 {
                    continue;
                }
                for j in 0..n {
                    let prod = ail.checked_mul(m[l * n + j])?;
                    p[i * n + j] = p[i * n + j].checked_add(prod)?;
                }
            }
        }
        let trace = (0..n).try_fold(0i128, |acc, i| acc.checked_add(p[i * n + i]))?;
        let ck = -trace / k as i128;
        for i in 0..n {
            p[i * n + i] = p[i * n + i].checked_add(ck)?;
        }
        coeffs.push(BigInt::from(ck));
        m = p;
    }
    Some(coeffs)
}

fn leverrier_f64(a: &[f64], n: usize) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    let mut m: Vec<f64> = (0..n * n).map(|idx| f64::from(u8::from(idx / n == idx % n))).collect();
    for k in 1..=n {
        let mut p = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let ail = a[i * n + l];
                if ail == 0.0 {
                    continue;
                }
                for j in 0..n {
                    p[i * n + j] += ail * m[l * n + j];
                }
            }
        }
        let trace: f64 = (0..n).map(|i| p[i * n + i]).sum();
        let ck = -trace / k as f64;
        for i in 0..n {
            p[i * n + i] += ck;
        }
        coeffs.push(ck);
        m = p;
    }
    coeffs
}

fn poly_from_eigenvalues(g: &Graph) -> Vec<f64> {
    poly_from_roots(&super::spectrum::qr_eigenvalues(g))
}

/// `prod_i (1 - r_i z)`, real parts of the coefficients.
pub fn poly_from_roots(eig: &[Complex64]) -> Vec<f64> {
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &lam in eig {
        let mut next = poly.clone();
        next.push(Complex64::new(0.0, 0.0));
        for k in 0..poly.len() {
            next[k + 1] -= lam * poly[k];
        }
        poly = next;
    }
    poly.into_iter().map(|c| c.re).collect()
}
