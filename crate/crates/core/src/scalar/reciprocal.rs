//! `1 / S_d(x)` with `S_d` the degree-`d` Taylor polynomial of `e^x`.
//!
//! Since `S_d(x) <= e^x` for `x >= 0`, the approximant sits above `e^{-x}`.

use crate::error::{Error, Result};
use crate::scalar::chebyshev::MonomialPoly;

pub fn taylor_recip_eval(d: u32, x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::invalid("x", format!("the reciprocal Taylor approximant needs x >= 0, got {x}")));
    }
    // Horner on S_d(x) = 1 + x(1 + x/2(1 + x/3(...)))
    let mut s = 1.0f64;
    for k in (1..=d).rev() {
        s = 1.0 + s * x / k as f64;
    }
    Ok(1.0 / s)
}

/// Monomial coefficients `1/k!` of `S_d`.
pub fn taylor_poly(d: u32) -> MonomialPoly {
    let mut coeffs = Vec::with_capacity(d as usize + 1);
    let mut c = 1.0f64;
    coeffs.push(c);
    for k in 1..=d {
        c /= k as f64;
        coeffs.push(c);
    }
    MonomialPoly::new(coeffs).expect("finite Taylor coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero_is_one() {
        for d in [0, 1, 7, 30] {
            assert_eq!(taylor_recip_eval(d, 0.0).unwrap(), 1.0);
        }
        assert_eq!(taylor_recip_eval(0, 12.0).unwrap(), 1.0);
    }

    #[test]
    fn degree_one_peak_error() {
        let (mut best, mut arg) = (0.0, 0.0);
        for i in 0..=100_000 {
            let x = 50.0 * i as f64 / 100_000.0;
            let e = (taylor_recip_eval(1, x).unwrap() - (-x).exp()).abs();
            if e > best {
                best = e;
                arg = x;
            }
        }
        assert!((best - 0.2036).abs() < 1e-3, "{best}");
        // the maximizer solves e^x = (1 + x)^2
        assert!((arg - 2.513).abs() < 0.01, "{arg}");
    }

    #[test]
    fn overflow_goes_to_zero() {
        assert_eq!(taylor_recip_eval(30, 1e300).unwrap(), 0.0);
    }

    #[test]
    fn rejects_negative() {
        assert!(taylor_recip_eval(3, -0.1).is_err());
    }

    #[test]
    fn poly_matches_horner() {
        let p = taylor_poly(6);
        assert!((1.0 / p.eval(2.5) - taylor_recip_eval(6, 2.5).unwrap()).abs() < 1e-15);
    }
}
