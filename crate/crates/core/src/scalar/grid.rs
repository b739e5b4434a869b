//! Evaluation grids for sup-norm certificates.

/// Point count for ordinary sup-norm certificates.
pub const CERT_GRID_POINTS: usize = 10_000;
/// Point count for the fine scans used on long or stiff intervals.
pub const FINE_GRID_POINTS: usize = 100_000;

/// `n` equally spaced points covering `[a, b]` including both endpoints.
pub fn uniform(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let mut pts: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    pts[n - 1] = b;
    pts
}

/// `n` log-spaced points on `[a, b]` (`0 < a < b`) including both endpoints.
pub fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && a > 0.0 && b > a);
    let (la, lb) = (a.ln(), b.ln());
    let mut pts: Vec<f64> = (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect();
    pts[0] = a;
    pts[n - 1] = b;
    pts
}

/// Uniform and log-spaced points merged, for intervals `[0, b]` where the
/// function varies fastest near the origin.
pub fn mixed_from_zero(b: f64, n: usize) -> Vec<f64> {
    let mut pts = uniform(0.0, b, n);
    pts.extend(log_spaced(b * 1e-8, b, n));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `max |f(x) - g(x)|` over the points, with the arg max.
pub fn sup_error(points: &[f64], f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut best = (0.0, points.first().copied().unwrap_or(0.0));
    for &x in points {
        let e = (f(x) - g(x)).abs();
        if e > best.0 || e.is_nan() {
            best = (e, x);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_include_endpoints() {
        let u = uniform(-1.0, 1.0, 11);
        assert_eq!((u[0], u[10]), (-1.0, 1.0));
        let l = log_spaced(1e-3, 1.0, 4);
        assert_eq!((l[0], l[3]), (1e-3, 1.0));
        assert!((l[1] - 1e-2).abs() < 1e-15);
        let m = mixed_from_zero(2.0, 5);
        assert_eq!((m[0], *m.last().unwrap()), (0.0, 2.0));
    }
}
