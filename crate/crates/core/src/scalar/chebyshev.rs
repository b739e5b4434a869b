//! Chebyshev polynomials, Chebyshev series and plain monomial polynomials.

use crate::error::{Error, Result};

/// `T_{|d|}(x)` by the three-term recurrence `T_{k+1} = 2x T_k - T_{k-1}`.
pub fn cheb_eval(d: i64, x: f64) -> f64 {
    let d = d.unsigned_abs();
    if d == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..d {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(T_d(x), T_d'(x))`, the derivative obtained by differentiating the
/// recurrence: `T'_{k+1} = 2 T_k + 2x T'_k - T'_{k-1}`.
pub fn cheb_eval_with_derivative(d: u32, x: f64) -> (f64, f64) {
    if d == 0 {
        return (1.0, 0.0);
    }
    let (mut t_prev, mut t_cur) = (1.0, x);
    let (mut dt_prev, mut dt_cur) = (0.0, 1.0);
    for _ in 1..d {
        let t_next = 2.0 * x * t_cur - t_prev;
        let dt_next = 2.0 * t_cur + 2.0 * x * dt_cur - dt_prev;
        t_prev = t_cur;
        t_cur = t_next;
        dt_prev = dt_cur;
        dt_cur = dt_next;
    }
    (t_cur, dt_cur)
}

/// `Σ c_j T_j(x̂)` where `x̂ = 2(x - a)/(b - a) - 1` maps `[a, b]` onto `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    coeffs: Vec<f64>,
    interval: (f64, f64),
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>, interval: (f64, f64)) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("coeffs", "a Chebyshev series needs at least one coefficient"));
        }
        if let Some(j) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid("coeffs", format!("coefficient {j} is not finite")));
        }
        let (a, b) = interval;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::invalid("interval", format!("need a < b, got ({a}, {b})")));
        }
        Ok(ChebSeries { coeffs, interval })
    }

    /// Series on the reference interval `[-1, 1]`.
    pub fn reference(coeffs: Vec<f64>) -> Result<Self> {
        Self::new(coeffs, (-1.0, 1.0))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_reference(&self, x: f64) -> f64 {
        let (a, b) = self.interval;
        2.0 * (x - a) / (b - a) - 1.0
    }

    /// Clenshaw backward recurrence.
    pub fn eval(&self, x: f64) -> f64 {
        let t = self.to_reference(x);
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs[1..].iter().rev() {
            let b0 = c + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + t * b1 - b2
    }

    /// Term-by-term summation, for cross-checking [`eval`](Self::eval).
    pub fn eval_naive(&self, x: f64) -> f64 {
        let t = self.to_reference(x);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * cheb_eval(j as i64, t))
            .sum()
    }

    pub fn with_interval(mut self, interval: (f64, f64)) -> Result<Self> {
        let coeffs = std::mem::take(&mut self.coeffs);
        Self::new(coeffs, interval)
    }
}

pub fn cheb_series_eval(s: &ChebSeries, x: f64) -> f64 {
    s.eval(x)
}

/// Polynomial `Σ a_i x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPoly {
    coeffs: Vec<f64>,
}

impl MonomialPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("coeffs", "a polynomial needs at least one coefficient"));
        }
        if let Some(j) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::invalid("coeffs", format!("coefficient {j} is not finite")));
        }
        Ok(MonomialPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(cheb_eval(0, 0.3), 1.0);
        assert_eq!(cheb_eval(3, 2.0), 26.0);
        assert_eq!(cheb_eval(-3, 2.0), 26.0);
        let th: f64 = 0.4;
        assert!((cheb_eval(7, th.cos()) - (7.0 * th).cos()).abs() < 1e-12);
    }

    #[test]
    fn derivative_at_one_is_d_squared() {
        for d in 0..=30u32 {
            assert_eq!(cheb_eval_with_derivative(d, 1.0).1, (d * d) as f64);
        }
    }

    #[test]
    fn clenshaw_matches_simple_series() {
        let one = ChebSeries::reference(vec![1.0]).unwrap();
        assert_eq!(one.eval(0.77), 1.0);
        let sq = ChebSeries::reference(vec![0.5, 0.0, 0.5]).unwrap();
        assert!((sq.eval(0.3) - 0.09).abs() < 1e-15);
    }

    #[test]
    fn interval_mapping() {
        // T_1 on [0, 4] is the line through (0, -1) and (4, 1)
        let s = ChebSeries::new(vec![0.0, 1.0], (0.0, 4.0)).unwrap();
        assert_eq!(s.eval(2.0), 0.0);
        assert_eq!(s.eval(4.0), 1.0);
    }

    #[test]
    fn validation() {
        assert!(ChebSeries::reference(vec![]).is_err());
        assert!(ChebSeries::reference(vec![f64::INFINITY]).is_err());
        assert!(ChebSeries::new(vec![1.0], (1.0, 1.0)).is_err());
        assert!(MonomialPoly::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn horner() {
        let p = MonomialPoly::new(vec![1.0, -2.0, 3.0]).unwrap();
        assert_eq!(p.eval(2.0), 9.0);
    }
}
