//! `A^{-1} v` as a weighted sum of `exp(-t_j A) v`.

use crate::error::{check_len, Error, Result};
use crate::linalg::sparse::{Shifted, SymOperator};
use crate::linalg::vector::axpy;
use crate::matfun::exp::{exp_apply_poly, ExpOptions};
use crate::matfun::{estimate_spectrum, ApplyMethod, ApplyReport, NORM_SAFETY};
use crate::scalar::expsum::inverse_expsum;

/// `w ≈ A^{-1} v` for `εI ⪯ A ⪯ I`.
///
/// Each term is applied with [`exp_apply_poly`] at tolerance
/// `δ / (2 Σ_j w_j)`, so inner errors add at most `δ/2 ||v|| <= δ/2 ||A^{-1} v||`
/// on top of the `δ` relative error of the sum itself. Spectral assumptions are
/// probed with a short Lanczos run and only warned about.
pub fn inverse_apply_via_exp<O: SymOperator>(
    a: &O,
    v: &[f64],
    eps: f64,
    delta: f64,
    seed: u64,
) -> Result<ApplyReport> {
    check_len("vector", v.len(), "matrix dimension", a.dim())?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::invalid("eps", format!("need 0 < eps <= 1, got {eps}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", format!("need 0 < delta < 1, got {delta}")));
    }
    let sum = inverse_expsum(eps, delta)?;
    let mut report = ApplyReport::new(ApplyMethod::InvExpSum, vec![0.0; v.len()], delta);

    let est = estimate_spectrum(a, seed)?;
    report.auxiliary_matvecs = est.matvecs;
    let mut top = 1.0;
    if est.hi > 1.0 + 1e-10 {
        report
            .warnings
            .push(format!("Ritz value {:.6} exceeds the assumed bound 1", est.hi));
        top = est.hi * NORM_SAFETY;
    }
    if est.lo < eps * (1.0 - 1e-10) {
        report
            .warnings
            .push(format!("Ritz value {:.6e} lies below eps = {eps:.6e}", est.lo));
    }

    let inner_delta = (delta / (2.0 * sum.weight_sum())).min(0.5);
    for &(w, t) in sum.terms() {
        let op = Shifted::scaled(a, t);
        let opts = ExpOptions {
            b: Some(t * top),
            seed,
            ..Default::default()
        };
        let term = exp_apply_poly(&op, v, inner_delta, &opts)?;
        axpy(w, &term.result, &mut report.result);
        report.matvec_count += term.matvec_count;
        report.degree = report.degree.max(term.degree);
    }
    report.terms = sum.len();
    report.certified_delta = 1.5 * delta;
    Ok(report)
}
