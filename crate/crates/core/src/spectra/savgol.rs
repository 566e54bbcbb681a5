//! Savitzky–Golay least-squares convolution.
//!
//! Interior points use the centred window. The first and last `window / 2`
//! points are taken from the polynomial fitted to the first (last) full
//! window, evaluated at the point's own offset, so polynomials of degree
//! `<= degree` pass through unchanged all the way to the ends.

use crate::error::{Error, Result};

/// Precomputed filter for one (window, degree, derivative) triple.
#[derive(Debug, Clone)]
pub struct SavitzkyGolay {
    window: usize,
    /// `coeffs[t]` evaluates the fit of a window at offset `t` within it.
    coeffs: Vec<Vec<f64>>,
}

impl SavitzkyGolay {
    pub fn new(window: usize, degree: usize, deriv: usize) -> Result<Self> {
        if window == 0 || window.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "savgol window must be a positive odd integer, got {window}"
            )));
        }
        if degree >= window {
            return Err(Error::Config(format!(
                "savgol degree {degree} must be smaller than the window {window}"
            )));
        }
        if deriv > 1 {
            return Err(Error::Config(format!(
                "derivative order must be 0 or 1, got {deriv}"
            )));
        }
        let coeffs = (0..window)
            .map(|t| window_coefficients(window, degree, deriv, t))
            .collect();
        Ok(SavitzkyGolay { window, coeffs })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Coefficients applied to a centred window.
    pub fn central_coefficients(&self) -> &[f64] {
        &self.coeffs[self.window / 2]
    }

    pub fn apply(&self, row: &[f64]) -> Result<Vec<f64>> {
        let n = row.len();
        let w = self.window;
        if w > n {
            return Err(Error::Config(format!(
                "savgol window {w} is larger than the spectrum ({n} points)"
            )));
        }
        let half = w / 2;
        let dot = |c: &[f64], xs: &[f64]| c.iter().zip(xs).map(|(a, b)| a * b).sum::<f64>();

        let mut out = vec![0.0; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = if i < half {
                dot(&self.coeffs[i], &row[..w])
            } else if i + half >= n {
                let start = n - w;
                dot(&self.coeffs[i - start], &row[start..])
            } else {
                dot(&self.coeffs[half], &row[i - half..=i + half])
            };
        }
        Ok(out)
    }
}

/// Least-squares weights giving the fitted value (or first derivative, per
/// index step) at offset `t` of a `window`-point frame.
fn window_coefficients(window: usize, degree: usize, deriv: usize, t: usize) -> Vec<f64> {
    let half = (window / 2) as f64;
    let scale = half.max(1.0);
    let m = degree + 1;
    let u = |k: usize| (k as f64 - half) / scale;

    // design[k][j] = u_k^j
    let design: Vec<Vec<f64>> = (0..window)
        .map(|k| {
            let uk = u(k);
            let mut p = 1.0;
            (0..m)
                .map(|_| {
                    let v = p;
                    p *= uk;
                    v
                })
                .collect()
        })
        .collect();

    let mut normal = vec![vec![0.0; m]; m];
    for row in &design {
        for a in 0..m {
            for b in 0..m {
                normal[a][b] += row[a] * row[b];
            }
        }
    }

    let ut = u(t);
    let target: Vec<f64> = (0..m)
        .map(|j| match deriv {
            0 => ut.powi(j as i32),
            _ if j == 0 => 0.0,
            _ => j as f64 * ut.powi(j as i32 - 1) / scale,
        })
        .collect();

    let z = solve_dense(normal, target);
    design
        .iter()
        .map(|row| row.iter().zip(&z).map(|(a, b)| a * b).sum())
        .collect()
}

/// Gaussian elimination with partial pivoting on a small SPD system.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / p;
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}
