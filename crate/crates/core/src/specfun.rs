//! Log-space combinatorics and associated Laguerre polynomials at
//! non-positive arguments.
//!
//! Every series used by the projected state is a sum of strictly positive
//! terms once the Laguerre argument is written as `-eta` with `eta >= 0`, so
//! the kernels here work on natural logarithms and combine terms with a
//! max-shifted log-sum-exp. Nothing needs a sign.

use std::sync::OnceLock;

use thiserror::Error;

/// Number of entries in the cumulative `ln n!` table.
pub const LOG_FACTORIAL_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("Laguerre argument -eta requires eta >= 0, got eta = {0}")]
    NegativeEta(f64),
    #[error("Laguerre parameter alpha = {alpha} is below -n = -{n}")]
    AlphaOutOfRange { n: u64, alpha: i64 },
}

/// Natural logarithm of a strictly positive quantity.
///
/// `LogValue::ZERO` (log of zero, i.e. `-inf`) is allowed as the identity of
/// [`LogValue::add`].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue(f64);

impl LogValue {
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    pub const ONE: LogValue = LogValue(0.0);

    pub fn from_ln(ln: f64) -> Self {
        LogValue(ln)
    }

    pub fn from_value(x: f64) -> Self {
        debug_assert!(x >= 0.0);
        LogValue(x.ln())
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Ratio `self / other` as a plain number.
    pub fn ratio(self, other: LogValue) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        (self.0 - other.0).exp()
    }
}

impl std::ops::Add for LogValue {
    type Output = LogValue;

    /// `ln(a + b)` without leaving log space.
    fn add(self, other: LogValue) -> LogValue {
        let (hi, lo) = if self.0 >= other.0 {
            (self.0, other.0)
        } else {
            (other.0, self.0)
        };
        if hi == f64::NEG_INFINITY {
            return LogValue::ZERO;
        }
        LogValue(hi + (lo - hi).exp().ln_1p())
    }
}

impl std::ops::Mul for LogValue {
    type Output = LogValue;

    // products are sums of logarithms
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: LogValue) -> LogValue {
        LogValue(self.0 + other.0)
    }
}

impl std::ops::Div for LogValue {
    type Output = LogValue;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, other: LogValue) -> LogValue {
        LogValue(self.0 - other.0)
    }
}

/// Sum of positive terms given by their logarithms.
///
/// Terms are shifted by the largest one and accumulated in the order given.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}

fn factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(LOG_FACTORIAL_CAP + 1);
        table.push(0.0);
        let mut acc = 0.0f64;
        for k in 1..=LOG_FACTORIAL_CAP {
            acc += (k as f64).ln();
            table.push(acc);
        }
        table
    })
}

/// `ln(n!)`, exact up to rounding of the cumulative log sum.
pub fn log_factorial(n: u64) -> f64 {
    let table = factorial_table();
    if (n as usize) < table.len() {
        return table[n as usize];
    }
    // beyond the table: keep summing from the last entry
    let mut acc = table[LOG_FACTORIAL_CAP];
    for k in (LOG_FACTORIAL_CAP as u64 + 1)..=n {
        acc += (k as f64).ln();
    }
    acc
}

/// `ln C(n, k)`; `-inf` when `k` lies outside `[0, n]`.
pub fn log_binomial(n: u64, k: i64) -> f64 {
    if k < 0 || k as u64 > n {
        return f64::NEG_INFINITY;
    }
    let k = k as u64;
    log_factorial(n) - log_factorial(k) - log_factorial(n - k)
}

/// `ln L_n^alpha(-eta)` for `eta >= 0` and integer `alpha >= -n`.
///
/// Uses the explicit series `sum_k C(n+alpha, n-k) eta^k / k!`, whose terms
/// are all non-negative at a non-positive argument.
pub fn log_laguerre_neg(n: u64, alpha: i64, eta: f64) -> Result<f64, SpecfunError> {
    Ok(log_sum_exp(&log_laguerre_neg_terms(n, alpha, eta)?))
}

/// `ln` of the series terms `C(n+alpha, n-k) eta^k / k!`, `k = 0..=n`.
fn log_laguerre_neg_terms(n: u64, alpha: i64, eta: f64) -> Result<Vec<f64>, SpecfunError> {
    // rejects NaN as well as negative values
    if eta.is_nan() || eta < 0.0 {
        return Err(SpecfunError::NegativeEta(eta));
    }
    if alpha < -(n as i64) {
        return Err(SpecfunError::AlphaOutOfRange { n, alpha });
    }
    let top = (n as i64 + alpha) as u64;
    let ln_eta = eta.ln();
    Ok((0..=n)
        .map(|k| {
            let power = if k == 0 { 0.0 } else { k as f64 * ln_eta };
            log_binomial(top, (n - k) as i64) + power - log_factorial(k)
        })
        .collect())
}

/// Mean and variance of `m = n - k` when `k` is drawn with probability
/// proportional to the `k`-th series term of `L_n^alpha(-eta)`.
///
/// Term by term, `L_{n-1}^alpha` is `L_n^alpha` weighted by `m/(n+alpha)`
/// and `L_{n-2}^alpha` by `m(m-1)/((n+alpha)(n+alpha-1))`. The ratios
/// `R1 = L_{n-1}/L_n` and `R2 = L_{n-2}/L_n` are therefore the first two
/// factorial moments of `m`, and with `a = n + alpha`
///
/// `a (R1 + (a-1) R2 - a R1²) = Var(m)`.
///
/// The centered sum avoids the cancellation of the left-hand side when the
/// variance is small compared with `a² R1²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexMoments {
    pub mean: f64,
    pub variance: f64,
}

pub fn laguerre_neg_index_moments(n: u64, alpha: i64, eta: f64) -> Result<IndexMoments, SpecfunError> {
    let terms = log_laguerre_neg_terms(n, alpha, eta)?;
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = terms.iter().map(|&t| (t - max).exp()).collect();
    let total: f64 = weights.iter().sum();
    let m = |k: usize| (n - k as u64) as f64;
    let mean = weights.iter().enumerate().map(|(k, w)| m(k) * w).sum::<f64>() / total;
    let variance = weights
        .iter()
        .enumerate()
        .map(|(k, w)| (m(k) - mean).powi(2) * w)
        .sum::<f64>()
        / total;
    Ok(IndexMoments { mean, variance })
}

/// [`log_laguerre_neg`] wrapped as a [`LogValue`]; `n < 0` yields zero,
/// matching the convention `L_{-1} = 0` used by the moment formulas.
pub fn laguerre_neg(n: i64, alpha: i64, eta: f64) -> Result<LogValue, SpecfunError> {
    if n < 0 {
        return Ok(LogValue::ZERO);
    }
    log_laguerre_neg(n as u64, alpha, eta).map(LogValue::from_ln)
}
