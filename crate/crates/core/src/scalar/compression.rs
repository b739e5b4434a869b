//! Chebyshev compression of monomials.
//!
//! `x^s = E[T_{D_s}(x)]` where `D_s` is a simple ±1 random walk after `s`
//! steps. Folding `T_{-j} = T_j`, the coefficient of `T_j` is
//! `P(|D_s| = j)`, and truncating the walk at `|D_s| <= d` gives `p_{s,d}`.

use crate::error::{Error, Result};
use crate::linalg::vector::compensated_sum;
use crate::scalar::chebyshev::ChebSeries;

/// Largest supported exponent.
pub const MAX_POWER: u64 = 1 << 40;

/// Relative size below which tail terms of the walk law are dropped.
const TAIL_CUTOFF: f64 = 1e-30;

/// Folded law of `|D_s|`: `(law, tail)` where `law[j] = P(|D_s| = j)` for
/// `j <= jmax` and `tail = P(|D_s| > jmax)`.
///
/// Successive binomials come from the ratio
/// `C(s, k+1) / C(s, k) = (s - k) / (k + 1)`, starting at the central term
/// with value 1. The unnormalized masses are then divided by their
/// compensated total, so the full law sums to 1 to working precision.
pub(crate) fn folded_walk_law(s: u64, jmax: u64) -> (Vec<f64>, f64) {
    let jmax = jmax.min(s);
    let mut law = vec![0.0; jmax as usize + 1];
    let mut tail_terms = Vec::new();
    let mut head_terms = Vec::with_capacity(jmax as usize / 2 + 1);

    let mut j = s % 2;
    let mut k = (s + j) / 2;
    let mut r = 1.0f64;
    let mut running = 0.0f64;
    while j <= s {
        let term = if j == 0 { r } else { 2.0 * r };
        running += term;
        if j <= jmax {
            law[j as usize] = term;
            head_terms.push(term);
        } else {
            if term <= running * TAIL_CUTOFF {
                break;
            }
            tail_terms.push(term);
        }
        if k == s {
            break;
        }
        r *= (s - k) as f64 / (k + 1) as f64;
        k += 1;
        j += 2;
    }

    let head = compensated_sum(head_terms.iter().copied());
    let tail = compensated_sum(tail_terms.iter().copied());
    let total = compensated_sum([head, tail]);
    for c in law.iter_mut() {
        *c /= total;
    }
    (law, tail / total)
}

/// Chebyshev coefficients of `p_{s,d}` on `[-1, 1]`.
///
/// The returned series has degree `min(s, d)`; for `d >= s` it is the exact
/// expansion of `x^s`.
pub fn monomial_cheb_coeffs(s: u64, d: u64) -> Result<ChebSeries> {
    if s > MAX_POWER {
        return Err(Error::invalid("s", format!("exponent {s} exceeds the supported maximum 2^40")));
    }
    let (law, _) = folded_walk_law(s, d);
    ChebSeries::reference(law)
}

/// Truncation mass `P(|D_s| > d)`; `2 * P(|D_s| > d)` bounds `|p_{s,d} - x^s|` on `[-1, 1]`.
pub fn compression_tail(s: u64, d: u64) -> f64 {
    folded_walk_law(s, d).1
}

/// `⌈√(2 s ln(2/δ))⌉`, the degree at which `p_{s,d}` is δ-close to `x^s`.
pub fn compression_degree(s: u64, delta: f64) -> u64 {
    if s == 0 {
        return 0;
    }
    (2.0 * s as f64 * (2.0 / delta).ln()).sqrt().ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exact_cases() {
        assert_eq!(monomial_cheb_coeffs(0, 5).unwrap().coeffs(), &[1.0]);
        assert_eq!(monomial_cheb_coeffs(2, 2).unwrap().coeffs(), &[0.5, 0.0, 0.5]);
        assert_eq!(monomial_cheb_coeffs(3, 3).unwrap().coeffs(), &[0.0, 0.75, 0.0, 0.25]);
        assert_eq!(monomial_cheb_coeffs(4, 2).unwrap().coeffs(), &[0.375, 0.0, 0.5]);
    }

    #[test]
    fn tail_of_four_two() {
        assert_eq!(compression_tail(4, 2), 0.125);
        assert_eq!(compression_tail(4, 4), 0.0);
    }

    #[test]
    fn rejects_huge_exponent() {
        assert!(monomial_cheb_coeffs(MAX_POWER + 1, 3).is_err());
    }

    #[test]
    fn large_exponent_mass_is_one() {
        let (law, tail) = folded_walk_law(1_000_000, 5000);
        let total = compensated_sum(law.iter().copied()) + tail;
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn degree_formula() {
        assert_eq!(compression_degree(400, 1e-4), 90);
        assert_eq!(compression_degree(0, 1e-4), 0);
    }
}
