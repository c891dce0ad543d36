//! Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! eigenvalues, inverse iteration for eigenvectors.

use thiserror::Error;

/// Bisection steps allowed per eigenvalue.
pub const MAX_ITERATIONS: usize = 200;
/// Relative width at which bisection stops.
pub const RELATIVE_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TridiagError {
    #[error("empty matrix")]
    Empty,
    #[error("off-diagonal length {off} does not match dimension {dim}")]
    Shape { dim: usize, off: usize },
    #[error("non-finite entry in tridiagonal matrix (diagonal {diagonal:?}, off-diagonal {offdiagonal:?})")]
    NonFinite { diagonal: Vec<f64>, offdiagonal: Vec<f64> },
    #[error(
        "eigenvector residual {residual:e} did not converge after {iterations} iterations \
         (diagonal {diagonal:?}, off-diagonal {offdiagonal:?})"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        diagonal: Vec<f64>,
        offdiagonal: Vec<f64>,
    },
}

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<'a> {
    pub diagonal: &'a [f64],
    pub offdiagonal: &'a [f64],
}

impl<'a> SymTridiagonal<'a> {
    pub fn new(diagonal: &'a [f64], offdiagonal: &'a [f64]) -> Result<Self, TridiagError> {
        if diagonal.is_empty() {
            return Err(TridiagError::Empty);
        }
        if offdiagonal.len() + 1 != diagonal.len() {
            return Err(TridiagError::Shape {
                dim: diagonal.len(),
                off: offdiagonal.len(),
            });
        }
        if diagonal.iter().chain(offdiagonal).any(|x| !x.is_finite()) {
            return Err(TridiagError::NonFinite {
                diagonal: diagonal.to_vec(),
                offdiagonal: offdiagonal.to_vec(),
            });
        }
        Ok(SymTridiagonal { diagonal, offdiagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let d = self.diagonal;
        let e = self.offdiagonal;
        let guard = f64::MIN_POSITIVE.sqrt() * (1.0 + x.abs());
        let mut count = 0;
        let mut q = d[0] - x;
        for i in 0..d.len() {
            if i > 0 {
                q = d[i] - x - e[i - 1] * e[i - 1] / q;
            }
            if q == 0.0 {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.dim());
        if self.dim() == 1 {
            return self.diagonal[0];
        }
        let (mut a, mut b) = self.gershgorin();
        let pad = 1e-12 * (1.0 + a.abs().max(b.abs()));
        a -= pad;
        b += pad;
        for _ in 0..MAX_ITERATIONS {
            let mid = 0.5 * (a + b);
            // run down to adjacent doubles; well inside the relative tolerance
            if b - a <= 2.0 * f64::EPSILON * a.abs().max(b.abs()) || mid == a || mid == b {
                break;
            }
            if self.sturm_count(mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.offdiagonal.iter().all(|&e| e == 0.0) {
            let mut values = self.diagonal.to_vec();
            values.sort_by(f64::total_cmp);
            return values;
        }
        (0..self.dim()).map(|k| self.eigenvalue(k)).collect()
    }

    /// `y = T x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut y = self.diagonal[i] * x[i];
                if i > 0 {
                    y += self.offdiagonal[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiagonal[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// `max_i |(T x − λ x)_i|`
    pub fn residual(&self, value: f64, x: &[f64]) -> f64 {
        self.apply(x)
            .iter()
            .zip(x)
            .map(|(y, xi)| (y - value * xi).abs())
            .fold(0.0, f64::max)
    }

    /// `xᵀ T x`
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.apply(x).iter().zip(x).map(|(y, xi)| y * xi).sum()
    }

    /// Unit eigenvector for an eigenvalue `value` by inverse iteration.
    ///
    /// A diagonal matrix (all couplings zero) returns the unit vector of the
    /// first diagonal entry equal to `value`. The sign is fixed so that the
    /// first nonzero component is positive.
    pub fn eigenvector(&self, value: f64) -> Result<Vec<f64>, TridiagError> {
        let n = self.dim();
        let scale = self
            .diagonal
            .iter()
            .chain(self.offdiagonal)
            .fold(0.0f64, |m, x| m.max(x.abs()))
            .max(f64::MIN_POSITIVE);
        let tolerance = 1e-10_f64.min(1e-13 * scale.max(1.0));
        if self.offdiagonal.iter().all(|&e| e == 0.0) {
            let k = self
                .diagonal
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - value).abs().total_cmp(&(b.1 - value).abs()))
                .map(|(k, _)| k)
                .unwrap();
            let mut v = vec![0.0; n];
            v[k] = 1.0;
            return Ok(v);
        }
        // perturb the shift off the exact eigenvalue so the factorization stays finite
        let shift = value + f64::EPSILON * scale;
        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        let mut residual = f64::INFINITY;
        for iteration in 1..=8 {
            x = solve_shifted(self, shift, &x, scale);
            normalize(&mut x);
            residual = self.residual(value, &x);
            if residual <= tolerance && iteration >= 2 {
                fix_sign(&mut x);
                return Ok(x);
            }
        }
        Err(TridiagError::NoConvergence {
            iterations: 8,
            residual,
            diagonal: self.diagonal.to_vec(),
            offdiagonal: self.offdiagonal.to_vec(),
        })
    }

    /// Smallest eigenvalue and its eigenvector.
    pub fn lowest(&self) -> Result<(f64, Vec<f64>), TridiagError> {
        let value = self.eigenvalue(0);
        let vector = self.eigenvector(value)?;
        let refined = self.quadratic_form(&vector);
        debug_assert!((refined - value).abs() <= RELATIVE_TOLERANCE * value.abs().max(1.0));
        Ok((refined, vector))
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}

fn fix_sign(x: &mut [f64]) {
    if let Some(first) = x.iter().copied().find(|v| *v != 0.0) {
        if first < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Solves `(T − σ I) x = b` by Gaussian elimination with partial pivoting.
fn solve_shifted(t: &SymTridiagonal<'_>, sigma: f64, b: &[f64], scale: f64) -> Vec<f64> {
    let n = t.dim();
    let tiny = f64::EPSILON * scale;
    // rows hold (lower, diag, upper, upper2) after elimination
    let mut diag: Vec<f64> = t.diagonal.iter().map(|d| d - sigma).collect();
    let mut upper: Vec<f64> = t.offdiagonal.to_vec();
    upper.push(0.0);
    let mut upper2 = vec![0.0; n];
    let mut rhs = b.to_vec();
    let mut lower: Vec<f64> = t.offdiagonal.to_vec();
    for i in 0..n.saturating_sub(1) {
        let sub = lower[i];
        if sub.abs() > diag[i].abs() {
            // swap rows i and i+1
            let (d0, u0, w0, r0) = (diag[i], upper[i], upper2[i], rhs[i]);
            diag[i] = sub;
            upper[i] = diag[i + 1];
            upper2[i] = upper[i + 1];
            rhs[i] = rhs[i + 1];
            let factor = d0 / sub;
            diag[i + 1] = u0 - factor * upper[i];
            upper[i + 1] = w0 - factor * upper2[i];
            rhs[i + 1] = r0 - factor * rhs[i];
        } else {
            if diag[i] == 0.0 {
                diag[i] = tiny;
            }
            let factor = sub / diag[i];
            diag[i + 1] -= factor * upper[i];
            upper[i + 1] -= factor * upper2[i];
            rhs[i + 1] -= factor * rhs[i];
        }
        lower[i] = 0.0;
    }
    if diag[n - 1] == 0.0 {
        diag[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= upper[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= upper2[i] * x[i + 2];
        }
        x[i] = s / if diag[i] == 0.0 { tiny } else { diag[i] };
    }
    x
}
