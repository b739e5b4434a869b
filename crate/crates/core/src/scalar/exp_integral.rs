//! Generalized exponential integrals `E_j(x) = ∫_1^∞ w^{-j} e^{-xw} dw`.
//!
//! Internally the scaled form `F_j(x) = e^x E_j(x) = ∫_0^∞ (1+z)^{-j} e^{-xz} dz`
//! is used; it is O(1/x) for every `j` and so keeps magnitudes tame.
//!
//! * `j <= 0`: `F_0 = 1/x` and `F_{-m} = (1 + m F_{-(m-1)}) / x`, from
//!   integration by parts. All terms are positive, so this is exact up to
//!   rounding.
//! * `j >= 1`: the asymptotic series `Σ (-1)^k (j)_k / x^k` when its terms
//!   shrink below the target before they start growing (large `x`), otherwise
//!   the continued fraction
//!   `F_j = 1/(x+j - 1·j/(x+j+2 - 2(j+1)/(x+j+4 - ...)))`
//!   evaluated by the modified Lentz method.

use crate::error::{Error, Result};
use crate::scalar::bigreal::{BigReal, MIN_PRECISION};

/// Extra bits carried internally and dropped when rounding the result.
pub const GUARD_BITS: usize = 32;
/// Documented accuracy slack: results are within `2^{-(prec - SLACK_BITS)}`
/// relative error.
pub const SLACK_BITS: usize = 8;
/// Term budget for the asymptotic series, `4⌈x⌉ + 200`.
fn series_budget(x: f64) -> usize {
    4 * x.ceil() as usize + 200
}
const MAX_CF_TERMS: usize = 2_000_000;

fn scaled_nonpositive(m: u64, x: &BigReal) -> BigReal {
    let mut f = x.recip();
    for k in 1..=m {
        f = &(&BigReal::one(x.precision()) + &f.mul_i64(k as i64)) / x;
    }
    f
}

/// Asymptotic series for `F_j(x)`, or `None` if it cannot reach the working
/// precision within its budget.
fn scaled_series(j: u64, x: &BigReal, x_f64: f64) -> Option<BigReal> {
    let p = x.precision();
    let tol = BigReal::pow2(-(p as isize), p);
    let mut term = BigReal::one(p);
    let mut sum = BigReal::one(p);
    let mut prev_mag = term.clone();
    for k in 1..=series_budget(x_f64) {
        term = -(&term.mul_i64((j + k as u64 - 1) as i64) / x);
        let mag = term.abs();
        if mag >= prev_mag {
            return None;
        }
        sum = &sum + &term;
        if mag <= &tol * &sum.abs() {
            return Some(&sum / x);
        }
        prev_mag = mag;
    }
    None
}

fn scaled_continued_fraction(j: u64, x: &BigReal) -> Result<BigReal> {
    let p = x.precision();
    let tol = BigReal::pow2(-(p as isize), p);
    let one = BigReal::one(p);
    let mut b = x + &BigReal::from_i64(j as i64, p);
    let mut d = b.recip();
    let mut h = d.clone();
    let mut c: Option<BigReal> = None;
    for i in 1..=MAX_CF_TERMS {
        let an = BigReal::from_i64(-(i as i64) * (j as i64 + i as i64 - 1), p);
        b = &b + &BigReal::from_i64(2, p);
        d = (&(&an * &d) + &b).recip();
        let cn = match &c {
            None => b.clone(),
            Some(c) => &b + &(&an / c),
        };
        let del = &cn * &d;
        h = &h * &del;
        c = Some(cn);
        if (&del - &one).abs() <= tol {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence(format!(
        "continued fraction for E_{j} did not converge in {MAX_CF_TERMS} terms"
    )))
}

/// `F_j(x) = e^x E_j(x)` at the precision of `x`, for `x >= 1`.
pub(crate) fn scaled_exp_integral(j: i64, x: &BigReal) -> Result<BigReal> {
    let x_f64 = x.to_f64();
    if !(x_f64 >= 1.0) {
        return Err(Error::invalid("d", format!("exponential integrals need d >= 1, got {x_f64}")));
    }
    if j <= 0 {
        return Ok(scaled_nonpositive(j.unsigned_abs(), x));
    }
    let j = j as u64;
    if let Some(v) = scaled_series(j, x, x_f64) {
        return Ok(v);
    }
    scaled_continued_fraction(j, x)
}

/// `E_j(d)` rounded to `prec` bits.
pub fn exp_integral(j: i64, d: f64, prec: usize) -> Result<BigReal> {
    if !(d.is_finite() && d > 1.0) {
        return Err(Error::invalid("d", format!("need a finite d > 1, got {d}")));
    }
    if prec < MIN_PRECISION {
        return Err(Error::invalid("prec", format!("need at least {MIN_PRECISION} bits, got {prec}")));
    }
    let wp = prec + GUARD_BITS;
    let x = BigReal::from_f64(d, wp)?;
    let f = scaled_exp_integral(j, &x)?;
    Ok((&f * &(-&x).exp()).with_precision(prec))
}
