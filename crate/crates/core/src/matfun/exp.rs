//! `exp(-A) v` by a Chebyshev polynomial or by the rational approximant in
//! `(I + A/d)^{-1}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{check_len, Error, Result};
use crate::krylov::solve::{cg_solve, SolverConfig};
use crate::linalg::graph::WeightedGraph;
use crate::linalg::sparse::{Shifted, SymOperator};
use crate::linalg::vector::axpy;
use crate::matfun::{cheb_apply, estimate_spectrum, require_psd, ApplyMethod, ApplyReport, NORM_SAFETY};
use crate::scalar::exp_poly::exp_poly;
use crate::scalar::grid::{uniform, CERT_GRID_POINTS};
use crate::scalar::ssv::{legendre_sum, ssv_default, SsvApprox, SSV_MAX_DEGREE};

/// Which expansion of the rational approximant drives the inner solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RationalRoute {
    /// Legendre recurrence in `Y = I - 2(I + A/d)^{-1}`.
    #[default]
    Legendre,
    /// Powers `(I + A/d)^{-i} v` weighted by the coefficients of `P(u)`.
    Monomial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpOptions {
    /// Known upper bound on `λ_max(A)`; estimated by Lanczos otherwise.
    pub b: Option<f64>,
    /// Forces the rational degree instead of choosing it from `δ`.
    pub degree: Option<usize>,
    pub route: RationalRoute,
    pub seed: u64,
}

impl Default for ExpOptions {
    fn default() -> Self {
        ExpOptions {
            b: None,
            degree: None,
            route: RationalRoute::Legendre,
            seed: crate::DEFAULT_SEED,
        }
    }
}

/// Smallest representable spectral bound handed to the polynomial builder.
const MIN_B: f64 = 1e-12;

fn spectral_bound<O: SymOperator>(a: &O, opts: &ExpOptions, report: &mut ApplyReport) -> Result<f64> {
    match opts.b {
        Some(b) if b.is_finite() && b >= 0.0 => Ok(b),
        Some(b) => Err(Error::invalid("b", format!("spectral bound must be finite and >= 0, got {b}"))),
        None => {
            let est = estimate_spectrum(a, opts.seed)?;
            report.auxiliary_matvecs += est.matvecs;
            require_psd(&est)?;
            Ok(est.hi.max(0.0) * NORM_SAFETY)
        }
    }
}

fn check_exp_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", format!("need 0 < delta < 1, got {delta}")));
    }
    Ok(())
}

/// `w ≈ exp(-A) v` for PSD `A` with `λ_max(A) <= b`, using the degree-reduced
/// Chebyshev approximant on `[0, b]`.
pub fn exp_apply_poly<O: SymOperator>(a: &O, v: &[f64], delta: f64, opts: &ExpOptions) -> Result<ApplyReport> {
    check_len("vector", v.len(), "matrix dimension", a.dim())?;
    check_exp_delta(delta)?;
    let mut report = ApplyReport::new(ApplyMethod::ExpPoly, Vec::new(), delta);
    let b = spectral_bound(a, opts, &mut report)?.max(MIN_B);
    let approx = exp_poly(b, delta)?;
    // x in [0, b] maps to 2x/b - 1 in [-1, 1]
    let reference = Shifted::new(a, 2.0 / b, -1.0);
    let (result, matvecs) = cheb_apply(&reference, approx.series.coeffs(), v);
    report.result = result;
    report.matvec_count = matvecs;
    report.degree = approx.degree();
    report.certified_delta = approx.error_bound;
    Ok(report)
}

/// A rational approximant together with its sup-error on `[0, ∞)`.
#[derive(Debug, Clone)]
pub struct CertifiedSsv {
    pub approx: Arc<SsvApprox>,
    /// `max |approx(x) - e^{-x}|` over a uniform grid in `u = 1/(1 + x/d)`.
    pub sup_error: f64,
}

fn certified_ssv(d: usize) -> Result<CertifiedSsv> {
    static CACHE: OnceLock<Mutex<HashMap<usize, CertifiedSsv>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&d) {
        return Ok(hit.clone());
    }
    let approx = ssv_default(d)?;
    let df = d as f64;
    let sup_error = uniform(0.0, 1.0, CERT_GRID_POINTS)
        .into_iter()
        .map(|u| {
            let exact = if u == 0.0 { 0.0 } else { (-df * (1.0 / u - 1.0)).exp() };
            (legendre_sum(&approx.legendre, 1.0 - 2.0 * u) - exact).abs()
        })
        .fold(0.0, f64::max);
    let entry = CertifiedSsv {
        approx: Arc::new(approx),
        sup_error,
    };
    cache.lock().unwrap().insert(d, entry.clone());
    Ok(entry)
}

/// Rational degree for target `δ`: starts at `⌈1.1 ln(1/δ)⌉ + 1` and grows
/// until the grid error is at most `δ/2`.
pub fn rational_degree(delta: f64) -> Result<(usize, CertifiedSsv)> {
    check_exp_delta(delta)?;
    let mut d = ((1.1 * (1.0 / delta).ln()).ceil() as usize + 1).max(2);
    while d <= SSV_MAX_DEGREE {
        let cert = certified_ssv(d)?;
        if cert.sup_error <= delta / 2.0 {
            return Ok((d, cert));
        }
        d += 1;
    }
    Err(Error::CertificateFailed(format!(
        "no rational degree up to {SSV_MAX_DEGREE} reaches delta/2 = {:.3e}",
        delta / 2.0
    )))
}

/// Solves `(I + A/d) x = rhs` to relative 2-norm residual `tol`.
struct InnerSolver<'a, O: SymOperator> {
    op: Shifted<&'a O>,
    cfg: SolverConfig,
    tol: f64,
    solves: usize,
    iterations: usize,
    matvecs: usize,
    converged: bool,
}

impl<'a, O: SymOperator> InnerSolver<'a, O> {
    fn solve(&mut self, rhs: &[f64]) -> Result<Vec<f64>> {
        // λ_min(I + A/d) >= 1, so ||x - x*|| <= ||r|| <= tol ||rhs||
        let rep = cg_solve(&self.op, rhs, self.tol, &self.cfg)?;
        self.solves += 1;
        self.iterations += rep.iterations;
        self.matvecs += rep.iterations + 1;
        self.converged &= rep.converged;
        Ok(rep.solution)
    }
}

/// `w ≈ exp(-A) v` for PSD `A` through `d` linear solves with `I + A/d`.
///
/// The degree depends only on `δ`; the spectrum enters solely through the
/// inner conjugate-gradient condition number `1 + b/d`. The inner tolerance
/// is `δ / (2 d² Σ|c_k|)` where `c_k` are the coefficients of the chosen
/// route.
pub fn exp_apply_rational<O: SymOperator>(
    a: &O,
    v: &[f64],
    delta: f64,
    opts: &ExpOptions,
) -> Result<ApplyReport> {
    check_len("vector", v.len(), "matrix dimension", a.dim())?;
    check_exp_delta(delta)?;
    let mut report = ApplyReport::new(ApplyMethod::ExpRational, Vec::new(), delta);
    let b = spectral_bound(a, opts, &mut report)?;
    let (d, cert) = match opts.degree {
        Some(d) => (d, certified_ssv(d)?),
        None => rational_degree(delta)?,
    };
    let df = d as f64;
    let coeffs: &[f64] = match opts.route {
        RationalRoute::Legendre => &cert.approx.legendre,
        RationalRoute::Monomial => cert.approx.u_poly.coeffs(),
    };
    let weight: f64 = coeffs.iter().map(|c| c.abs()).sum();
    let mut tol = delta / (2.0 * df * df * weight.max(1.0));
    if tol < 1e-15 {
        report
            .warnings
            .push(format!("inner tolerance {tol:.3e} clamped to 1e-15"));
        tol = 1e-15;
    }
    let mut inner = InnerSolver {
        op: Shifted::new(a, 1.0 / df, 1.0),
        cfg: SolverConfig {
            kappa: Some(1.0 + b / df),
            max_iterations: None,
            seed: opts.seed,
        },
        tol,
        solves: 0,
        iterations: 0,
        matvecs: 0,
        converged: true,
    };

    let n = v.len();
    let mut out = vec![0.0; n];
    match opts.route {
        RationalRoute::Legendre => {
            axpy(coeffs[0], v, &mut out);
            let mut prev = v.to_vec();
            // L_1(Y) v = v - 2 B v
            let bv = inner.solve(v)?;
            let mut cur: Vec<f64> = v.iter().zip(&bv).map(|(x, y)| x - 2.0 * y).collect();
            for (k, &c) in coeffs.iter().enumerate().skip(1) {
                axpy(c, &cur, &mut out);
                if k + 1 == coeffs.len() {
                    break;
                }
                let bc = inner.solve(&cur)?;
                let kf = k as f64;
                let next: Vec<f64> = (0..n)
                    .map(|i| ((2.0 * kf + 1.0) * (cur[i] - 2.0 * bc[i]) - kf * prev[i]) / (kf + 1.0))
                    .collect();
                prev = cur;
                cur = next;
            }
        }
        RationalRoute::Monomial => {
            axpy(coeffs[0], v, &mut out);
            let mut cur = v.to_vec();
            for &c in &coeffs[1..] {
                cur = inner.solve(&cur)?;
                axpy(c, &cur, &mut out);
            }
        }
    }

    report.result = out;
    report.degree = d;
    report.inner_solves = inner.solves;
    report.inner_iterations = inner.iterations;
    report.matvec_count = inner.matvecs;
    report.converged = inner.converged;
    report.certified_delta = cert.sup_error + d as f64 * d as f64 * weight.max(1.0) * tol;
    if !inner.converged {
        report.warnings.push("an inner solve hit its iteration cap".into());
    }
    if report.certified_delta > delta {
        report.converged = false;
        report.warnings.push(format!(
            "certificate {:.3e} exceeds delta {delta:.3e}",
            report.certified_delta
        ));
    }
    Ok(report)
}

/// `exp(-s 𝓛) v` with `𝓛` the normalized Laplacian. Uses the rational route
/// with the bound `λ_max(s 𝓛) <= 2s`.
pub fn heat_kernel_apply(g: &WeightedGraph, v: &[f64], s: f64, delta: f64, seed: u64) -> Result<ApplyReport> {
    check_len("vector", v.len(), "vertex count", g.n())?;
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::invalid("s", format!("time must be finite and >= 0, got {s}")));
    }
    check_exp_delta(delta)?;
    if s == 0.0 {
        return Ok(ApplyReport::new(ApplyMethod::ExpRational, v.to_vec(), delta));
    }
    let lap = g.normalized_laplacian();
    let op = Shifted::scaled(&lap, s);
    let opts = ExpOptions {
        b: Some(2.0 * s),
        seed,
        ..Default::default()
    };
    exp_apply_rational(&op, v, delta, &opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sparse::SparseSymMatrix;
    use crate::linalg::vector::dist;

    fn diag_case() -> (SparseSymMatrix, Vec<f64>, Vec<f64>) {
        let lam: Vec<f64> = (0..12).map(|i| i as f64 * 0.9).collect();
        let v: Vec<f64> = (0..12).map(|i| 1.0 + (i % 3) as f64).collect();
        let exact = lam.iter().zip(&v).map(|(l, x)| (-l).exp() * x).collect();
        (SparseSymMatrix::from_diagonal(&lam).unwrap(), v, exact)
    }

    #[test]
    fn poly_matches_diagonal() {
        let (a, v, exact) = diag_case();
        let r = exp_apply_poly(&a, &v, 1e-8, &ExpOptions::default()).unwrap();
        let vn = crate::linalg::vector::norm2(&v);
        assert!(dist(&r.result, &exact) <= 1e-8 * vn);
        assert_eq!(r.matvec_count, r.degree);
    }

    #[test]
    fn rational_routes_agree() {
        let (a, v, exact) = diag_case();
        let vn = crate::linalg::vector::norm2(&v);
        for route in [RationalRoute::Legendre, RationalRoute::Monomial] {
            let opts = ExpOptions {
                route,
                ..Default::default()
            };
            let r = exp_apply_rational(&a, &v, 1e-6, &opts).unwrap();
            assert!(r.converged);
            assert_eq!(r.inner_solves, r.degree);
            assert!(dist(&r.result, &exact) <= 1e-6 * vn, "{route:?}");
        }
    }

    #[test]
    fn degree_grows_with_accuracy() {
        let (d3, _) = rational_degree(1e-3).unwrap();
        let (d6, _) = rational_degree(1e-6).unwrap();
        assert!(d3 < d6);
    }

    #[test]
    fn rejects_indefinite_when_estimating() {
        let a = SparseSymMatrix::from_diagonal(&[1.0, -3.0, 2.0]).unwrap();
        let err = exp_apply_poly(&a, &[1.0, 1.0, 1.0], 1e-4, &ExpOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NotPositiveSemidefinite { .. }));
    }

    #[test]
    fn heat_at_time_zero() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        let r = heat_kernel_apply(&g, &[0.3, 0.7], 0.0, 1e-6, 1).unwrap();
        assert_eq!(r.result, vec![0.3, 0.7]);
    }
}
