//! Dense LU kernels on row-major `f64` buffers.

/// Determinant by LU decomposition with partial pivoting. The determinant of
/// the 0x0 matrix is 1; a singular matrix gives 0.
pub fn determinant(m: &[f64], n: usize) -> f64 {
    let mut work = m.to_vec();
    determinant_in_place(&mut work, n)
}

/// As [`determinant`], destroying `m`.
pub fn determinant_in_place(m: &mut [f64], n: usize) -> f64 {
    assert_eq!(m.len(), n * n, "matrix is not {n}x{n}");
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a * n + col].abs().total_cmp(&m[b * n + col].abs()))
            .unwrap();
        let p = m[pivot * n + col];
        if p == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                m.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        det *= p;
        let (upper, lower) = m.split_at_mut((col + 1) * n);
        let pivot_row = &upper[col * n..col * n + n];
        for row in lower.chunks_exact_mut(n) {
            let factor = row[col] / p;
            if factor != 0.0 {
                for k in (col + 1)..n {
                    row[k] -= factor * pivot_row[k];
                }
            }
        }
    }
    det
}

/// `I - s * A` for a row-major `n x n` matrix `A`.
pub fn identity_minus_scaled(a: &[f64], n: usize, s: f64) -> Vec<f64> {
    let mut m: Vec<f64> = a.iter().map(|&x| -s * x).collect();
    for i in 0..n {
        m[i * n + i] += 1.0;
    }
    m
}

/// LU factorization `PM = LU` with partial pivoting, stored in place.
#[derive(Clone, Debug)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    /// `None` when a pivot is exactly zero.
    pub fn factor(m: &[f64], n: usize) -> Option<Lu> {
        assert_eq!(m.len(), n * n, "matrix is not {n}x{n}");
        let mut lu = m.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| lu[a * n + col].abs().total_cmp(&lu[b * n + col].abs()))
                .unwrap();
            let p = lu[pivot * n + col];
            if p == 0.0 {
                return None;
            }
            if pivot != col {
                for k in 0..n {
                    lu.swap(col * n + k, pivot * n + k);
                }
                perm.swap(col, pivot);
                sign = -sign;
            }
            let (upper, lower) = lu.split_at_mut((col + 1) * n);
            let pivot_row = &upper[col * n..col * n + n];
            for row in lower.chunks_exact_mut(n) {
                let factor = row[col] / p;
                row[col] = factor;
                if factor != 0.0 {
                    for k in (col + 1)..n {
                        row[k] -= factor * pivot_row[k];
                    }
                }
            }
        }
        Some(Lu { n, lu, perm, sign })
    }

    pub fn determinant(&self) -> f64 {
        (0..self.n).fold(self.sign, |d, i| d * self.lu[i * self.n + i])
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let acc: f64 = row.iter().zip(&x[..i]).map(|(l, v)| l * v).sum();
            x[i] -= acc;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            let acc: f64 = row.iter().zip(&x[i + 1..]).map(|(u, v)| u * v).sum();
            x[i] = (x[i] - acc) / self.lu[i * n + i];
        }
        x
    }

    pub fn inverse(&self) -> Vec<f64> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            for (i, v) in self.solve(&e).into_iter().enumerate() {
                inv[i * n + j] = v;
            }
        }
        inv
    }
}

/// Solves `M x = b`; `None` for an exactly singular system.
pub fn solve(m: &[f64], n: usize, b: &[f64]) -> Option<Vec<f64>> {
    Lu::factor(m, n).map(|lu| lu.solve(b))
}

/// Inverse of a nonsingular matrix, or `None`.
pub fn inverse(m: &[f64], n: usize) -> Option<Vec<f64>> {
    Lu::factor(m, n).map(|lu| lu.inverse())
}
