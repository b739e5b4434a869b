//! Polynomial approximation of `e^{-x}` on `[0, b]`.
//!
//! With `λ = b/2` and `x = λ(1 + y)`, `e^{-x} = e^{-λ} e^{-λy}`. Truncating
//! the Taylor series of `e^{-λy}` after `t` terms and replacing each `y^i` by
//! its compressed form `p_{i,d}` yields a degree-`d` Chebyshev series.

use crate::error::{Error, Result};
use crate::linalg::vector::compensated_sum;
use crate::scalar::chebyshev::ChebSeries;
use crate::scalar::compression::folded_walk_law;

#[derive(Debug, Clone)]
pub struct ExpPolyApprox {
    /// Series on `[0, b]`.
    pub series: ChebSeries,
    pub b: f64,
    pub delta: f64,
    pub lambda: f64,
    /// Number of Taylor terms kept beyond the constant.
    pub taylor_terms: u64,
    /// `⌈√(2t ln(4/δ))⌉`; the degree actually used never exceeds it.
    pub formula_degree: u64,
    /// A-posteriori bound on `sup_{[0,b]} |e^{-x} - series(x)|`.
    pub error_bound: f64,
}

impl ExpPolyApprox {
    pub fn degree(&self) -> usize {
        self.series.degree()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.series.eval(x)
    }
}

/// Builds the approximant and shrinks its degree to the smallest value whose
/// rigorous truncation bound `Σ_i |w_i| P(|D_i| > d) + Poisson tail` is at
/// most `δ`.
pub fn exp_poly(b: f64, delta: f64) -> Result<ExpPolyApprox> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::invalid("b", format!("need a finite b > 0, got {b}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::invalid("delta", format!("need 0 < delta <= 1, got {delta}")));
    }
    let lambda = b / 2.0;
    let e2 = std::f64::consts::E * std::f64::consts::E;
    let t = (lambda * e2).max((2.0 / delta).ln()).ceil() as u64;
    let formula_degree = (2.0 * t as f64 * (4.0 / delta).ln()).sqrt().ceil() as u64;
    let dmax = formula_degree.min(t) as usize;

    // |w_i| = e^{-λ} λ^i / i!, accumulated in log space
    let mut weights = Vec::with_capacity(t as usize + 1);
    let mut log_fact = 0.0f64;
    for i in 0..=t {
        if i > 0 {
            log_fact += (i as f64).ln();
        }
        let mag = (-lambda + i as f64 * lambda.ln() - log_fact).exp();
        weights.push(if i % 2 == 0 { mag } else { -mag });
    }
    let poisson_tail = {
        let mut terms = Vec::new();
        let mut lf = log_fact;
        let mut i = t + 1;
        loop {
            lf += (i as f64).ln();
            let term = (-lambda + i as f64 * lambda.ln() - lf).exp();
            if term == 0.0 || term < 1e-30 * terms.first().copied().unwrap_or(term) {
                break;
            }
            terms.push(term);
            i += 1;
        }
        compensated_sum(terms)
    };

    let laws: Vec<(Vec<f64>, f64)> = (0..=t).map(|i| folded_walk_law(i, dmax as u64)).collect();

    // bound[d] = Σ_i |w_i| P(|D_i| > d), built from the top degree down
    let mut tails: Vec<f64> = laws.iter().map(|(_, tail)| *tail).collect();
    let mut bound = vec![0.0; dmax + 1];
    for d in (0..=dmax).rev() {
        bound[d] = compensated_sum(weights.iter().zip(&tails).map(|(w, tl)| w.abs() * tl)) + poisson_tail;
        for (i, (law, _)) in laws.iter().enumerate() {
            if d < law.len() {
                tails[i] += law[d];
            }
        }
    }
    let slack = 64.0 * f64::EPSILON;
    let degree = match (0..=dmax).find(|&d| bound[d] + slack <= delta) {
        Some(d) => d,
        None => {
            return Err(Error::CertificateFailed(format!(
                "exp polynomial for b={b}, delta={delta}: truncation bound {:.3e} at the maximal degree {dmax}",
                bound[dmax]
            )))
        }
    };

    let coeffs: Vec<f64> = (0..=degree)
        .map(|j| {
            compensated_sum(
                weights
                    .iter()
                    .zip(&laws)
                    .map(|(w, (law, _))| if j < law.len() { w * law[j] } else { 0.0 }),
            )
        })
        .collect();

    Ok(ExpPolyApprox {
        series: ChebSeries::new(coeffs, (0.0, b))?,
        b,
        delta,
        lambda,
        taylor_terms: t,
        formula_degree,
        error_bound: bound[degree],
    })
}

/// Chebyshev series on `[0, b]` within `δ` of `e^{-x}`.
pub fn exp_poly_coeffs(b: f64, delta: f64) -> Result<ChebSeries> {
    Ok(exp_poly(b, delta)?.series)
}
