//! Matrix-function-times-vector primitives built from the scalar approximants.

pub mod exp;
pub mod inverse;
pub mod power;

use crate::error::{Error, Result};
use crate::krylov::lanczos::{lanczos_decomp_op, LanczosOptions};
use crate::linalg::sparse::SymOperator;
use crate::linalg::vector::axpy;

pub use exp::{exp_apply_poly, exp_apply_rational, heat_kernel_apply, rational_degree, ExpOptions, RationalRoute};
pub use inverse::inverse_apply_via_exp;
pub use power::{power_apply, walk_distribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApplyMethod {
    PowerCheb,
    ExpPoly,
    ExpRational,
    InvExpSum,
}

impl ApplyMethod {
    pub fn name(self) -> &'static str {
        match self {
            ApplyMethod::PowerCheb => "power-cheb",
            ApplyMethod::ExpPoly => "exp-poly",
            ApplyMethod::ExpRational => "exp-rational",
            ApplyMethod::InvExpSum => "inv-expsum",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApplyReport {
    pub method: ApplyMethod,
    pub result: Vec<f64>,
    /// Matvecs with the input operator spent by the method itself, including
    /// those inside inner solves.
    pub matvec_count: usize,
    /// Matvecs spent on spectral estimates and sanity checks.
    pub auxiliary_matvecs: usize,
    /// Polynomial degree (power, exp-poly), rational degree, or the largest
    /// per-term degree (inv-expsum).
    pub degree: usize,
    /// Linear solves performed (rational path).
    pub inner_solves: usize,
    /// Total iterations across the inner solves.
    pub inner_iterations: usize,
    /// Number of exponential terms (inv-expsum).
    pub terms: usize,
    /// Error the construction guarantees, relative to `||v||` (or to
    /// `||A^{-1} v||` for inv-expsum).
    pub certified_delta: f64,
    pub target_delta: f64,
    /// False when an inner solve failed to converge or a certificate fell
    /// short of the target.
    pub converged: bool,
    pub warnings: Vec<String>,
}

impl ApplyReport {
    pub(crate) fn new(method: ApplyMethod, result: Vec<f64>, target_delta: f64) -> Self {
        ApplyReport {
            method,
            result,
            matvec_count: 0,
            auxiliary_matvecs: 0,
            degree: 0,
            inner_solves: 0,
            inner_iterations: 0,
            terms: 0,
            certified_delta: 0.0,
            target_delta,
            converged: true,
            warnings: Vec::new(),
        }
    }
}

/// `Σ_j c_j T_j(M) v` by the vector three-term recurrence; `(result, matvecs)`.
pub fn cheb_apply<O: SymOperator>(m: &O, coeffs: &[f64], v: &[f64]) -> (Vec<f64>, usize) {
    let n = v.len();
    let mut out = vec![0.0; n];
    axpy(coeffs[0], v, &mut out);
    if coeffs.len() == 1 {
        return (out, 0);
    }
    let mut prev = v.to_vec();
    let mut cur = m.apply_vec(v);
    axpy(coeffs[1], &cur, &mut out);
    let mut next = vec![0.0; n];
    for &c in &coeffs[2..] {
        m.apply(&cur, &mut next);
        for (x, p) in next.iter_mut().zip(&prev) {
            *x = 2.0 * *x - p;
        }
        axpy(c, &next, &mut out);
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
    }
    (out, coeffs.len() - 1)
}

/// Extreme Ritz values of a short Lanczos run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SpectrumEstimate {
    pub lo: f64,
    pub hi: f64,
    pub matvecs: usize,
}

/// Krylov order of the spectral-norm estimate.
pub const ESTIMATE_ORDER: usize = 30;
/// Inflation applied to the estimated largest eigenvalue.
pub const NORM_SAFETY: f64 = 1.1;

pub(crate) fn estimate_spectrum<O: SymOperator>(a: &O, seed: u64) -> Result<SpectrumEstimate> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::invalid("A", "empty matrix"));
    }
    let k = ESTIMATE_ORDER.min(n - 1);
    let dec = lanczos_decomp_op(a, k, seed, &LanczosOptions::default())?;
    let (vals, _) = dec.ritz();
    Ok(SpectrumEstimate {
        lo: vals[0],
        hi: *vals.last().unwrap(),
        matvecs: dec.matvecs,
    })
}

/// Rejects estimates with a clearly negative Ritz value.
pub(crate) fn require_psd(est: &SpectrumEstimate) -> Result<()> {
    let scale = est.hi.abs().max(est.lo.abs());
    if est.lo < -1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotPositiveSemidefinite { ritz: est.lo });
    }
    Ok(())
}

pub(crate) fn check_delta(delta: f64, upper: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= upper) {
        return Err(Error::invalid("delta", format!("need 0 < delta <= {upper}, got {delta}")));
    }
    Ok(())
}
