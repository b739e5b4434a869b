//! Sums of exponentials approximating `1/x` on `[ε, 1]`.
//!
//! `1/x = ∫_{-∞}^{∞} e^{s} e^{-e^{s} x} ds`; the trapezoidal rule with step `h`
//! gives weights `w_j = h e^{jh}` at rates `t_j = e^{jh}`, and the index range
//! is cut to `A..=B`. With `ℓ₂ = ln(2/δ)`, `A = ⌊-ℓ₂/h⌋` and
//! `B = ⌈ln(ℓ₂/ε)/h⌉`, so each dropped tail contributes at most `δ/2`
//! relative error.

use crate::error::{Error, Result};
use crate::scalar::grid;

/// `N = ⌈C_N · ℓ⌉` with `ℓ = max(ln(1/δ), 1)`.
pub const DEFAULT_C_N: f64 = 1.0;
/// `h = 1 / (C_H · N²)`.
pub const DEFAULT_C_H: f64 = 5.0;
/// Term counts satisfy `count <= TERM_COUNT_CONSTANT · (1 + ln(1/(εδ)))³`.
pub const TERM_COUNT_CONSTANT: f64 = 16.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ExpSumApprox {
    terms: Vec<(f64, f64)>,
    eps: f64,
    delta: f64,
    h: f64,
    n_order: u64,
    j_lo: i64,
    j_hi: i64,
}

impl ExpSumApprox {
    /// Rebuilds the terms from the discretization parameters.
    pub fn from_parts(eps: f64, delta: f64, h: f64, n_order: u64, j_lo: i64, j_hi: i64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::invalid("h", format!("step must be positive, got {h}")));
        }
        if j_hi < j_lo {
            return Err(Error::invalid("j_hi", format!("empty index range {j_lo}..={j_hi}")));
        }
        let terms = (j_lo..=j_hi)
            .map(|j| {
                let t = (j as f64 * h).exp();
                (h * t, t)
            })
            .collect();
        Ok(ExpSumApprox {
            terms,
            eps,
            delta,
            h,
            n_order,
            j_lo,
            j_hi,
        })
    }

    /// `(w_j, t_j)` for `j = j_lo..=j_hi`.
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n_order(&self) -> u64 {
        self.n_order
    }

    pub fn j_lo(&self) -> i64 {
        self.j_lo
    }

    pub fn j_hi(&self) -> i64 {
        self.j_hi
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|(w, _)| w).sum()
    }

    /// `Σ_j w_j e^{-t_j x}`.
    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(w, t)| w * (-t * x).exp()).sum()
    }

    /// `max |x·S(x) - 1|` over `points`.
    pub fn max_relative_error(&self, points: &[f64]) -> f64 {
        points
            .iter()
            .map(|&x| (x * self.eval(x) - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Term-count bound `TERM_COUNT_CONSTANT · (1 + ln(1/(εδ)))³`.
pub fn term_count_bound(eps: f64, delta: f64) -> f64 {
    TERM_COUNT_CONSTANT * (1.0 + (1.0 / (eps * delta)).ln()).powi(3)
}

/// Builds the approximation with explicit constants and certifies it on a
/// log-spaced grid of [`grid::CERT_GRID_POINTS`] points over `[ε, 1]`.
pub fn inverse_expsum_with(eps: f64, delta: f64, c_n: f64, c_h: f64) -> Result<ExpSumApprox> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::invalid("eps", format!("need 0 < eps <= 1, got {eps}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::invalid("delta", format!("need 0 < delta <= 1, got {delta}")));
    }
    if !(c_n > 0.0 && c_h > 0.0) {
        return Err(Error::invalid("c_n", "discretization constants must be positive"));
    }
    let ell = (1.0 / delta).ln().max(1.0);
    let n_order = (c_n * ell).ceil().max(1.0) as u64;
    let h = 1.0 / (c_h * (n_order * n_order) as f64);
    let ell2 = (2.0 / delta).ln();
    let j_lo = (-(1.0 / h) * ell2).floor() as i64;
    let j_hi = ((1.0 / h) * (ell2 / eps).ln()).ceil() as i64;
    let approx = ExpSumApprox::from_parts(eps, delta, h, n_order, j_lo, j_hi)?;

    let points = if eps < 1.0 {
        grid::log_spaced(eps, 1.0, grid::CERT_GRID_POINTS)
    } else {
        vec![1.0]
    };
    let err = approx.max_relative_error(&points);
    if !(err <= delta) {
        return Err(Error::CertificateFailed(format!(
            "sum of exponentials for eps={eps}, delta={delta}: grid relative error {err:.4e} exceeds delta"
        )));
    }
    Ok(approx)
}

pub fn inverse_expsum(eps: f64, delta: f64) -> Result<ExpSumApprox> {
    inverse_expsum_with(eps, delta, DEFAULT_C_N, DEFAULT_C_H)
}
