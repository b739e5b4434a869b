//! Steepest descent and conjugate gradient for symmetric positive definite
//! systems `A x = v`.
//!
//! Both stop once `||v - A x|| <= δ ||v|| / √κ̂`. Since
//! `||x - x*||_A <= ||r|| / √λ_min` and `||x*||_A >= ||v|| / √λ_max`, this
//! yields `||x - x*||_A <= δ ||x*||_A` whenever `κ̂ >= κ(A)`.

use crate::error::{check_len, Error, Result};
use crate::krylov::lanczos::{lanczos_decomp_op, LanczosOptions};
use crate::linalg::sparse::SymOperator;
use crate::linalg::vector::{axpy, dot, norm2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    GradientDescent,
    ConjugateGradient,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::GradientDescent => "gd",
            SolveMethod::ConjugateGradient => "cg",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub method: SolveMethod,
    pub solution: Vec<f64>,
    pub iterations: usize,
    /// 2-norm residual `||v - A x_t||` after each iteration (recurrence value).
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub target_delta: f64,
    /// Condition-number estimate used in the stopping rule.
    pub kappa: f64,
    /// Absolute residual threshold `δ ||v|| / √κ̂`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Directly recomputed `||v - A x||` for the returned solution.
    pub final_residual: f64,
    /// Matvecs spent estimating `κ` (zero when it was supplied).
    pub estimation_matvecs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Known condition number; estimated by Lanczos when absent.
    pub kappa: Option<f64>,
    pub max_iterations: Option<usize>,
    /// Seed of the Lanczos start vector used for estimation.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            kappa: None,
            max_iterations: None,
            seed: crate::DEFAULT_SEED,
        }
    }
}

impl SolverConfig {
    pub fn with_kappa(kappa: f64) -> Self {
        SolverConfig {
            kappa: Some(kappa),
            ..Default::default()
        }
    }
}

/// Inflation applied to the Ritz-value ratio when `κ` is estimated.
pub const KAPPA_SAFETY: f64 = 10.0;
const ESTIMATION_ORDER: usize = 50;

/// `(κ̂, matvecs)`: ten times the ratio of the extreme Ritz values of a short
/// Lanczos run.
pub fn estimate_kappa<O: SymOperator>(a: &O, seed: u64) -> Result<(f64, usize)> {
    let n = a.dim();
    if n <= 1 {
        return Ok((1.0, 0));
    }
    let k = ESTIMATION_ORDER.min(n - 1);
    let dec = lanczos_decomp_op(a, k, seed, &LanczosOptions::default())?;
    let (vals, _) = dec.ritz();
    let lo = vals[0];
    let hi = *vals.last().unwrap();
    if !(lo > 0.0) {
        return Err(Error::NotPositiveDefinite {
            iteration: 0,
            curvature: lo,
        });
    }
    Ok(((hi / lo * KAPPA_SAFETY).max(1.0), dec.matvecs))
}

fn prepare<O: SymOperator>(a: &O, v: &[f64], delta: f64, cfg: &SolverConfig) -> Result<(f64, usize)> {
    check_len("rhs", v.len(), "matrix dimension", a.dim())?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", format!("need 0 < delta < 1, got {delta}")));
    }
    match cfg.kappa {
        Some(k) if k.is_finite() && k >= 1.0 => Ok((k, 0)),
        Some(k) => Err(Error::invalid("kappa", format!("condition number must be >= 1, got {k}"))),
        None => estimate_kappa(a, cfg.seed),
    }
}

fn finish<O: SymOperator>(
    a: &O,
    v: &[f64],
    method: SolveMethod,
    x: Vec<f64>,
    history: Vec<f64>,
    converged: bool,
    (delta, kappa, tol, max_iterations, estimation_matvecs): (f64, f64, f64, usize, usize),
) -> SolveReport {
    let ax = a.apply_vec(&x);
    let final_residual = v.iter().zip(&ax).map(|(b, y)| (b - y) * (b - y)).sum::<f64>().sqrt();
    SolveReport {
        method,
        solution: x,
        iterations: history.len(),
        residual_history: history,
        converged,
        target_delta: delta,
        kappa,
        tolerance: tol,
        max_iterations,
        final_residual,
        estimation_matvecs,
    }
}

/// Steepest descent with exact line search, `α_t = r^T r / r^T A r`.
pub fn gd_solve<O: SymOperator>(a: &O, v: &[f64], delta: f64, cfg: &SolverConfig) -> Result<SolveReport> {
    let (kappa, est) = prepare(a, v, delta, cfg)?;
    let n = a.dim();
    let vnorm = norm2(v);
    let tol = delta * vnorm / kappa.sqrt();
    let theory = (kappa / 2.0 * (2.0 * kappa.sqrt() / delta).ln()).ceil() as usize;
    let max_iter = cfg.max_iterations.unwrap_or(10 * theory + 10);

    let mut x = vec![0.0; n];
    let mut r = v.to_vec();
    let mut ar = vec![0.0; n];
    let mut history = Vec::new();
    let mut converged = vnorm == 0.0;
    while !converged && history.len() < max_iter {
        a.apply(&r, &mut ar);
        let rr = dot(&r, &r);
        let rar = dot(&r, &ar);
        if !(rar > 0.0) {
            return Err(Error::NotPositiveDefinite {
                iteration: history.len(),
                curvature: rar,
            });
        }
        let alpha = rr / rar;
        axpy(alpha, &r, &mut x);
        axpy(-alpha, &ar, &mut r);
        let res = norm2(&r);
        history.push(res);
        converged = res <= tol;
    }
    Ok(finish(
        a,
        v,
        SolveMethod::GradientDescent,
        x,
        history,
        converged,
        (delta, kappa, tol, max_iter, est),
    ))
}

/// Conjugate gradient (Hestenes–Stiefel form).
pub fn cg_solve<O: SymOperator>(a: &O, v: &[f64], delta: f64, cfg: &SolverConfig) -> Result<SolveReport> {
    let (kappa, est) = prepare(a, v, delta, cfg)?;
    let n = a.dim();
    let vnorm = norm2(v);
    let tol = delta * vnorm / kappa.sqrt();
    let theory = (kappa.sqrt() / 2.0 * (2.0 * kappa.sqrt() / delta).ln()).ceil() as usize;
    let max_iter = cfg.max_iterations.unwrap_or((10 * theory).max(n) + 10);

    let mut x = vec![0.0; n];
    let mut r = v.to_vec();
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let mut history = Vec::new();
    let mut converged = vnorm == 0.0;
    while !converged && history.len() < max_iter {
        if norm2(&p) == 0.0 {
            // breakdown: no direction left to search
            converged = rr.sqrt() <= tol;
            break;
        }
        a.apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::NotPositiveDefinite {
                iteration: history.len(),
                curvature: pap,
            });
        }
        let alpha = rr / pap;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &ap, &mut r);
        let rr_new = dot(&r, &r);
        history.push(rr_new.sqrt());
        converged = rr_new.sqrt() <= tol;
        let beta = rr_new / rr;
        for (pi, ri) in p.iter_mut().zip(&r) {
            *pi = ri + beta * *pi;
        }
        rr = rr_new;
    }
    Ok(finish(
        a,
        v,
        SolveMethod::ConjugateGradient,
        x,
        history,
        converged,
        (delta, kappa, tol, max_iter, est),
    ))
}
