//! Rational approximation of `e^{-x}` on `[0, ∞)` of the form
//! `p_d(x) / (1 + x/d)^d`.
//!
//! Substituting `u = 1/(1 + x/d)` and `y = 1 - 2u` turns `e^{-x}` into
//! `f_d(y) = exp(-d(1+y)/(1-y))` on `[-1, 1)`. The derivative `f_d'` is
//! projected onto Legendre polynomials of degree `< d`,
//!
//! ```text
//! r(y) = Σ_k (2k+1)/2 · γ_k · L_k(y),    γ_k = ∫_{-1}^{1} f_d'(t) L_k(t) dt,
//! ```
//!
//! and integrated back from the right endpoint, `q(y) = ∫_1^y r`, so that
//! `q(1) = f_d(1) = 0`. In the Legendre basis
//! `q = Σ_k (γ_k/2)(L_{k+1} - L_{k-1})` with `L_{-1} := L_0`.
//!
//! The inner products are computed through the Laguerre expansion
//! `γ_k = -d ∫_0^∞ (z/(1+z))^k e^{-dz} L^{(1)}_k(d(1+z)) dz`, which reduces to
//! a finite combination of the scaled exponential integrals
//! `F_j(d) = ∫_0^∞ (1+z)^{-j} e^{-dz} dz`. The combination cancels heavily
//! (intermediate terms grow like `d^d`), so everything runs in [`BigReal`].

use crate::error::{Error, Result};
use crate::scalar::bigreal::{BigReal, MIN_PRECISION};
use crate::scalar::chebyshev::MonomialPoly;
use crate::scalar::exp_integral::scaled_exp_integral;

pub const SSV_MAX_DEGREE: usize = 40;
/// Extra bits of the comparison run used to estimate correct bits.
pub const CHECK_EXTRA_BITS: usize = 64;
/// Minimum number of agreeing bits accepted in every output coefficient.
pub const MIN_CORRECT_BITS: f64 = 10.0;

/// `max(256, 12·d·⌈log2(d+1)⌉)` bits.
pub fn ssv_precision(d: usize) -> usize {
    let lg = (usize::BITS - d.leading_zeros()) as usize; // ⌈log2(d+1)⌉
    (12 * d * lg).max(256)
}

#[derive(Debug, Clone)]
pub struct SsvApprox {
    pub degree: usize,
    pub precision: usize,
    /// `γ_0 .. γ_{d-1}`.
    pub gammas: Vec<f64>,
    /// Coefficients of `q` in the Legendre basis of `y`, length `d + 1`.
    pub legendre: Vec<f64>,
    /// `P(u) = q(1 - 2u)`, so the approximant is `P(1/(1 + x/d))`.
    pub u_poly: MonomialPoly,
    /// `p_d(x) = Σ_i P_i (1 + x/d)^{d-i}`, the numerator over `(1 + x/d)^d`.
    pub numerator: MonomialPoly,
    /// Smallest number of bits on which any output coefficient agrees with a
    /// run at `precision + CHECK_EXTRA_BITS`.
    pub correct_bits: f64,
}

impl SsvApprox {
    /// Evaluates the approximant by the Legendre recurrence in `y`.
    pub fn eval(&self, x: f64) -> f64 {
        let u = 1.0 / (1.0 + x / self.degree as f64);
        legendre_sum(&self.legendre, 1.0 - 2.0 * u)
    }

    /// Evaluates `P(u)` by Horner's rule.
    pub fn eval_u_poly(&self, x: f64) -> f64 {
        self.u_poly.eval(1.0 / (1.0 + x / self.degree as f64))
    }

    /// `p_d(x) / (1 + x/d)^d` taken literally; loses accuracy for large `x`.
    pub fn eval_numerator_form(&self, x: f64) -> f64 {
        self.numerator.eval(x) / (1.0 + x / self.degree as f64).powi(self.degree as i32)
    }
}

/// `Σ_k c_k L_k(y)` by the forward three-term recurrence.
pub fn legendre_sum(coeffs: &[f64], y: f64) -> f64 {
    let mut acc = coeffs[0];
    let (mut prev, mut cur) = (1.0, y);
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        acc += c * cur;
        let next = ((2 * k + 1) as f64 * y * cur - k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    acc
}

struct BigPipeline {
    gammas: Vec<BigReal>,
    legendre: Vec<BigReal>,
    u_poly: Vec<BigReal>,
    numerator: Vec<BigReal>,
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn poly_add_scaled(acc: &mut [BigReal], poly: &[BigReal], c: &BigReal) {
    for (a, p) in acc.iter_mut().zip(poly) {
        *a = &*a + &(c * p);
    }
}

/// `γ_k` for `k < d` at `prec` bits.
pub(crate) fn gammas_big(d: usize, prec: usize) -> Result<Vec<BigReal>> {
    let x = BigReal::from_i64(d as i64, prec);
    let m = d as i64 - 1;
    // F_j for j in -m..=m, index j + m
    let mut f = vec![BigReal::zero(prec); (2 * m + 1) as usize];
    for j in -m..=0 {
        f[(j + m) as usize] = scaled_exp_integral(j, &x)?;
    }
    if m >= 1 {
        // continued fraction at the top, then the stable downward recurrence
        // F_j = (1 - j F_{j+1}) / x
        f[(2 * m) as usize] = scaled_exp_integral(m, &x)?;
        for j in (1..m).rev() {
            let next = &f[(j + 1 + m) as usize];
            f[(j + m) as usize] = (&BigReal::one(prec) - &next.mul_i64(j)) / &x;
        }
    }

    // d^i / i!
    let mut pw = vec![BigReal::one(prec)];
    for i in 1..d {
        let v = &(&pw[i - 1] * &x) / &BigReal::from_i64(i as i64, prec);
        pw.push(v);
    }

    let mut gammas = Vec::with_capacity(d);
    for k in 0..d as i64 {
        let mut total = BigReal::zero(prec);
        for i in 0..=k {
            let mut inner = BigReal::zero(prec);
            for l in 0..=k {
                let term = &BigReal::from_u128(binom(k as u64, l as u64), prec) * &f[(l - i + m) as usize];
                inner = if l % 2 == 0 { &inner + &term } else { &inner - &term };
            }
            let outer = &(&BigReal::from_u128(binom(k as u64 + 1, (k - i) as u64), prec) * &pw[i as usize]) * &inner;
            total = if i % 2 == 0 { &total + &outer } else { &total - &outer };
        }
        gammas.push(-(&x * &total));
    }
    Ok(gammas)
}

fn pipeline(d: usize, prec: usize) -> Result<BigPipeline> {
    let gammas = gammas_big(d, prec)?;
    let zero = BigReal::zero(prec);

    let mut legendre = vec![zero.clone(); d + 1];
    for (k, g) in gammas.iter().enumerate() {
        let half = g.div_i64(2);
        legendre[k + 1] = &legendre[k + 1] + &half;
        let lower = k.saturating_sub(1);
        legendre[lower] = &legendre[lower] - &half;
    }

    // Legendre polynomials in the monomial basis of y
    let mut q_y = vec![zero.clone(); d + 1];
    let mut l_prev = vec![zero.clone(); d + 1];
    let mut l_cur = vec![zero.clone(); d + 1];
    l_prev[0] = BigReal::one(prec);
    poly_add_scaled(&mut q_y, &l_prev, &legendre[0]);
    if d >= 1 {
        l_cur[1] = BigReal::one(prec);
        poly_add_scaled(&mut q_y, &l_cur, &legendre[1]);
    }
    for k in 1..d {
        // (k+1) L_{k+1} = (2k+1) y L_k - k L_{k-1}
        let mut next = vec![zero.clone(); d + 1];
        for i in 0..=d {
            let mut v = l_prev[i].mul_i64(-(k as i64));
            if i >= 1 {
                v = &v + &l_cur[i - 1].mul_i64(2 * k as i64 + 1);
            }
            next[i] = v.div_i64(k as i64 + 1);
        }
        poly_add_scaled(&mut q_y, &next, &legendre[k + 1]);
        l_prev = std::mem::replace(&mut l_cur, next);
    }

    // P(u) = q(1 - 2u) by Horner composition
    let mut u_poly = vec![zero.clone(); d + 1];
    for c in q_y.iter().rev() {
        let mut shifted = vec![zero.clone(); d + 1];
        for i in 0..=d {
            let mut v = u_poly[i].clone();
            if i >= 1 {
                v = &v - &u_poly[i - 1].mul_i64(2);
            }
            shifted[i] = v;
        }
        shifted[0] = &shifted[0] + c;
        u_poly = shifted;
    }
    // P(0) = q(1) = Σ β_k telescopes to zero; pin it instead of keeping rounding noise
    u_poly[0] = zero.clone();

    // numerator Σ_i P_i (1 + x/d)^{d-i}
    let dd = BigReal::from_i64(d as i64, prec);
    let mut numerator = vec![zero.clone(); d + 1];
    for (i, p_i) in u_poly.iter().enumerate() {
        let m = (d - i) as u64;
        let mut scale = BigReal::one(prec);
        for r in 0..=m as usize {
            let c = &BigReal::from_u128(binom(m, r as u64), prec) * &scale;
            numerator[r] = &numerator[r] + &(p_i * &c);
            scale = &scale / &dd;
        }
    }

    Ok(BigPipeline {
        gammas,
        legendre,
        u_poly,
        numerator,
    })
}

fn to_f64s(v: &[BigReal]) -> Vec<f64> {
    v.iter().map(BigReal::to_f64).collect()
}

/// Builds the degree-`d` approximant at `prec` bits and checks it against a
/// run at `prec + CHECK_EXTRA_BITS`.
pub fn ssv(d: usize, prec: usize) -> Result<SsvApprox> {
    if d == 0 || d > SSV_MAX_DEGREE {
        return Err(Error::invalid("d", format!("need 1 <= d <= {SSV_MAX_DEGREE}, got {d}")));
    }
    if prec < MIN_PRECISION {
        return Err(Error::invalid("prec", format!("need at least {MIN_PRECISION} bits, got {prec}")));
    }
    let lo = pipeline(d, prec)?;
    let hi = pipeline(d, prec + CHECK_EXTRA_BITS)?;
    let cap = prec as f64;
    let mut correct_bits = cap;
    for (a, b) in [
        (&lo.gammas, &hi.gammas),
        (&lo.legendre, &hi.legendre),
        (&lo.u_poly, &hi.u_poly),
        (&lo.numerator, &hi.numerator),
    ] {
        for (x, y) in a.iter().zip(b.iter()) {
            correct_bits = correct_bits.min(x.agreeing_bits(y, cap));
        }
    }
    if correct_bits < MIN_CORRECT_BITS {
        return Err(Error::PrecisionInsufficient {
            correct_bits,
            precision: prec,
        });
    }
    Ok(SsvApprox {
        degree: d,
        precision: prec,
        gammas: to_f64s(&lo.gammas),
        legendre: to_f64s(&lo.legendre),
        u_poly: MonomialPoly::new(to_f64s(&lo.u_poly))?,
        numerator: MonomialPoly::new(to_f64s(&lo.numerator))?,
        correct_bits,
    })
}

/// [`ssv`] at the default precision schedule.
pub fn ssv_default(d: usize) -> Result<SsvApprox> {
    ssv(d, ssv_precision(d))
}

/// Monomial coefficients of the numerator `p_d`.
pub fn ssv_coeffs(d: usize, prec: usize) -> Result<MonomialPoly> {
    Ok(ssv(d, prec)?.numerator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_schedule() {
        assert_eq!(ssv_precision(1), 256);
        assert_eq!(ssv_precision(20), 12 * 20 * 5);
        assert_eq!(ssv_precision(40), 12 * 40 * 6);
    }

    #[test]
    fn first_gamma_is_minus_one() {
        // γ_0 = f_d(1) - f_d(-1) = -1
        for d in [1, 4, 9] {
            let g = gammas_big(d, 256).unwrap();
            assert!((g[0].to_f64() + 1.0).abs() < 1e-30);
        }
    }

    #[test]
    fn degree_one_has_two_coefficients() {
        let a = ssv_default(1).unwrap();
        assert_eq!(a.numerator.coeffs().len(), 2);
        // q = -(L_1 - L_0)/2 = (1 - y)/2 = u, so the approximant is 1/(1 + x)
        assert!((a.eval(3.0) - 0.25).abs() < 1e-15);
        assert!((a.numerator.coeffs()[0] - 1.0).abs() < 1e-15);
        assert!(a.numerator.coeffs()[1].abs() < 1e-15);
    }

    #[test]
    fn evaluation_forms_agree() {
        let a = ssv_default(8).unwrap();
        for x in [0.0, 0.3, 2.0, 7.5, 30.0] {
            let v = a.eval(x);
            assert!((v - a.eval_u_poly(x)).abs() < 1e-12);
            assert!((v - a.eval_numerator_form(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ssv(0, 256).is_err());
        assert!(ssv(SSV_MAX_DEGREE + 1, 4096).is_err());
        assert!(ssv(3, 32).is_err());
    }

    #[test]
    fn low_precision_is_flagged() {
        let err = ssv(30, 64).unwrap_err();
        assert!(matches!(err, Error::PrecisionInsufficient { .. }), "{err}");
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(41, 20), 269128937220);
        assert_eq!(binom(5, 7), 0);
    }
}
