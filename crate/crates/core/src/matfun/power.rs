//! `M^s v` through the compressed monomial `p_{s,d}`.

use crate::error::{check_len, Error, Result};
use crate::krylov::lanczos::random_unit_vector;
use crate::linalg::graph::WeightedGraph;
use crate::linalg::sparse::SymOperator;
use crate::linalg::vector::{compensated_sum, norm2};
use crate::matfun::{cheb_apply, check_delta, ApplyMethod, ApplyReport};
use crate::scalar::compression::{compression_degree, folded_walk_law, MAX_POWER};

/// Power iterations used for the warn-only `||M|| <= 1` check.
pub const NORM_CHECK_ITERATIONS: usize = 8;

/// `w ≈ M^s v` for `||M|| <= 1`, with `d = ⌈√(2s ln(2/δ))⌉` (capped at `s`)
/// matvecs.
///
/// The Chebyshev coefficients are divided by their sum, so `p(1) = 1` and
/// fixed points of `M` are preserved exactly. For `|x| <= 1` the normalized
/// polynomial is within `2 P(|D_s| > d)` of `x^s`, which is the reported
/// certificate.
pub fn power_apply<O: SymOperator>(m: &O, v: &[f64], s: u64, delta: f64) -> Result<ApplyReport> {
    check_len("vector", v.len(), "matrix dimension", m.dim())?;
    check_delta(delta, 0.5)?;
    if s > MAX_POWER {
        return Err(Error::invalid("s", format!("exponent {s} exceeds the supported maximum 2^40")));
    }
    let d = compression_degree(s, delta).min(s);
    let (law, tail) = folded_walk_law(s, d);
    let mass = compensated_sum(law.iter().copied());
    let coeffs: Vec<f64> = law.iter().map(|c| c / mass).collect();

    let (result, matvecs) = cheb_apply(m, &coeffs, v);
    let mut report = ApplyReport::new(ApplyMethod::PowerCheb, result, delta);
    report.matvec_count = matvecs;
    report.degree = d as usize;
    report.certified_delta = 2.0 * tail;
    if report.certified_delta > delta {
        report.converged = false;
        report.warnings.push(format!(
            "truncation certificate {:.3e} exceeds delta {delta:.3e}",
            report.certified_delta
        ));
    }

    // warn-only ||M|| <= 1 probe
    if m.dim() > 0 {
        let mut x = random_unit_vector(m.dim(), 0x5eed);
        let mut growth = 0.0;
        for _ in 0..NORM_CHECK_ITERATIONS {
            let y = m.apply_vec(&x);
            growth = norm2(&y);
            if growth == 0.0 {
                break;
            }
            x = y.into_iter().map(|t| t / growth).collect();
        }
        report.auxiliary_matvecs = NORM_CHECK_ITERATIONS;
        if growth > 1.0 + 1e-8 {
            report
                .warnings
                .push(format!("power iteration suggests ||M|| >= {growth:.6} > 1"));
        }
    }
    Ok(report)
}

/// Distribution of the column-stochastic walk `A D^{-1}` after `s` steps from
/// `v0`, via `D^{1/2} W^s D^{-1/2} v0` with `W = D^{-1/2} A D^{-1/2}`.
///
/// The certificate is `cert(W) · ||D^{-1/2} v0|| · max_i √d_i` in the 2-norm.
pub fn walk_distribution(g: &WeightedGraph, v0: &[f64], s: u64, delta: f64) -> Result<ApplyReport> {
    check_len("distribution", v0.len(), "vertex count", g.n())?;
    if let Some(i) = v0.iter().position(|p| !(p.is_finite() && *p >= 0.0)) {
        return Err(Error::invalid("v0", format!("entry {i} is not a nonnegative probability")));
    }
    let total = compensated_sum(v0.iter().copied());
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::invalid("v0", format!("entries sum to {total}, not 1")));
    }
    let sqrt_deg: Vec<f64> = g.degrees().iter().map(|d| d.sqrt()).collect();
    let y: Vec<f64> = v0.iter().zip(&sqrt_deg).map(|(p, s)| p / s).collect();
    let w = g.walk_matrix_sym();
    let mut report = power_apply(&w, &y, s, delta)?;
    for (r, sd) in report.result.iter_mut().zip(&sqrt_deg) {
        *r *= sd;
    }
    let max_sd = sqrt_deg.iter().copied().fold(0.0, f64::max);
    report.certified_delta *= norm2(&y) * max_sd;
    report.target_delta = delta;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sparse::SparseSymMatrix;

    #[test]
    fn identity_keeps_vector() {
        let a = SparseSymMatrix::identity(3);
        let v = [1.0, -2.0, 0.5];
        let r = power_apply(&a, &v, 50, 1e-6).unwrap();
        for (x, y) in r.result.iter().zip(&v) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn swap_matrix_parity() {
        let a = SparseSymMatrix::from_triplets(2, &[(0, 1, 1.0)]).unwrap();
        let even = power_apply(&a, &[1.0, 0.0], 6, 1e-6).unwrap().result;
        let odd = power_apply(&a, &[1.0, 0.0], 7, 1e-6).unwrap().result;
        assert!((even[0] - 1.0).abs() < 1e-6 && even[1].abs() < 1e-6);
        assert!(odd[0].abs() < 1e-6 && (odd[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_power_is_identity() {
        let a = SparseSymMatrix::from_diagonal(&[0.3, 0.1]).unwrap();
        let r = power_apply(&a, &[2.0, 3.0], 0, 1e-3).unwrap();
        assert_eq!(r.result, vec![2.0, 3.0]);
        assert_eq!(r.matvec_count, 0);
    }

    #[test]
    fn warns_on_large_norm() {
        let a = SparseSymMatrix::from_diagonal(&[2.0, 0.1]).unwrap();
        let r = power_apply(&a, &[1.0, 1.0], 4, 1e-3).unwrap();
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn rejects_bad_delta() {
        let a = SparseSymMatrix::identity(2);
        assert!(power_apply(&a, &[1.0, 1.0], 4, 0.75).is_err());
        assert!(power_apply(&a, &[1.0, 1.0], 4, 0.0).is_err());
    }

    #[test]
    fn triangle_uniform_is_stationary() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let u = [1.0 / 3.0; 3];
        for s in [0, 1, 5, 40] {
            let r = walk_distribution(&g, &u, s, 1e-6).unwrap();
            for x in &r.result {
                assert!((x - 1.0 / 3.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_non_distribution() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        assert!(walk_distribution(&g, &[0.5, 0.6], 3, 1e-3).is_err());
        assert!(walk_distribution(&g, &[1.5, -0.5], 3, 1e-3).is_err());
    }
}
