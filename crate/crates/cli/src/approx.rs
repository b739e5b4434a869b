use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use matapprox::io::{format_coefficients, format_expsum, write_text, CoefficientFile, RunHeader};
use matapprox::scalar::grid::{log_spaced, sup_error, uniform, CERT_GRID_POINTS, FINE_GRID_POINTS};
use matapprox::scalar::{
    compression_degree, compression_tail, exp_poly, inverse_expsum, monomial_cheb_coeffs, ssv, ssv_precision,
    taylor_poly, taylor_recip_eval,
};
use matapprox::Result;

use crate::{Outcome, DEFAULT_DELTA};

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[command(subcommand)]
    kind: Kind,
}

#[derive(Args, Debug)]
struct Output {
    /// Coefficient file (the `j,w_j,t_j` CSV for inv-expsum).
    #[arg(long)]
    out: PathBuf,
    /// Error-curve CSV; defaults to `<out>.curve.csv`.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Points in the error curve.
    #[arg(long, default_value_t = 1001)]
    points: usize,
}

#[derive(Subcommand, Debug)]
enum Kind {
    /// Chebyshev compression of `x^s` on [-1, 1].
    Power {
        #[arg(long)]
        s: u64,
        /// Degree; `⌈√(2s ln(2/δ))⌉` when absent.
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Chebyshev approximation of `e^{-x}` on [0, b].
    ExpPoly {
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[command(flatten)]
        output: Output,
    },
    /// `1 / S_d(x)` with `S_d` the degree-d Taylor polynomial of `e^x`, on [0, 10d].
    ExpRecip {
        #[arg(long)]
        d: u32,
        /// Target error; `4 · 2^{-d}` when absent.
        #[arg(long)]
        delta: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Rational approximant `p_d(x) / (1 + x/d)^d`; writes the numerator.
    ExpSsv {
        #[arg(long)]
        d: usize,
        /// Working precision in bits.
        #[arg(long)]
        prec: Option<usize>,
        /// Target error on [0, 40d]; `8 d 2^{-d}` when absent.
        #[arg(long)]
        delta: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Sum of exponentials for `1/x` on [eps, 1].
    InvExpsum {
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        #[command(flatten)]
        output: Output,
    },
}

fn curve_path(o: &Output) -> PathBuf {
    o.curve.clone().unwrap_or_else(|| {
        let mut p = o.out.clone().into_os_string();
        p.push(".curve.csv");
        PathBuf::from(p)
    })
}

fn write_curve(path: &Path, xs: &[f64], f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> Result<()> {
    let mut out = String::from("x,f(x),approx(x),abs_err\n");
    for &x in xs {
        let (fx, gx) = (f(x), g(x));
        out.push_str(&format!("{x:e},{fx:e},{gx:e},{:e}\n", (fx - gx).abs()));
    }
    write_text(path, &out)
}

fn signed_power(x: f64, s: u64) -> f64 {
    let m = x.abs().powf(s as f64);
    if x < 0.0 && s % 2 == 1 {
        -m
    } else {
        m
    }
}

fn finish(mut header: RunHeader, error: f64, target: f64) -> Outcome {
    let ok = error <= target;
    header.push("grid_error", format!("{error:e}"));
    header.push("target", format!("{target:e}"));
    header.push("certified", ok);
    for (k, v) in &header.0 {
        println!("{k}={v}");
    }
    if ok {
        Outcome::Ok
    } else {
        Outcome::Failed(format!("certificate failed: grid error {error:e} exceeds {target:e}"))
    }
}

pub fn run(args: &ApproxArgs) -> Result<Outcome> {
    let mut h = RunHeader::default();
    h.push("command", "approx");
    match &args.kind {
        Kind::Power { s, d, delta, output } => {
            let d = d.unwrap_or_else(|| compression_degree(*s, *delta));
            let series = monomial_cheb_coeffs(*s, d)?;
            write_text(&output.out, &format_coefficients(&CoefficientFile::from_cheb(&series)))?;
            let f = |x| signed_power(x, *s);
            let g = |x| series.eval(x);
            write_curve(&curve_path(output), &uniform(-1.0, 1.0, output.points), f, g)?;
            let (err, _) = sup_error(&uniform(-1.0, 1.0, FINE_GRID_POINTS), f, g);
            h.push("kind", "power").push("s", s).push("d", d).push_f64("delta", *delta);
            h.push("degree", series.degree());
            h.push("tail_bound", format!("{:e}", compression_tail(*s, d)));
            Ok(finish(h, err, *delta))
        }
        Kind::ExpPoly { b, delta, output } => {
            let approx = exp_poly(*b, *delta)?;
            write_text(&output.out, &format_coefficients(&CoefficientFile::from_cheb(&approx.series)))?;
            let f = |x: f64| (-x).exp();
            let g = |x| approx.eval(x);
            write_curve(&curve_path(output), &uniform(0.0, *b, output.points), f, g)?;
            let (err, _) = sup_error(&uniform(0.0, *b, FINE_GRID_POINTS), f, g);
            h.push("kind", "exp-poly").push_f64("b", *b).push_f64("delta", *delta);
            h.push("degree", approx.degree());
            h.push("formula_degree", approx.formula_degree);
            h.push("error_bound", format!("{:e}", approx.error_bound));
            Ok(finish(h, err, *delta))
        }
        Kind::ExpRecip { d, delta, output } => {
            let target = delta.unwrap_or(4.0 * 0.5f64.powi(*d as i32));
            let hi = 10.0 * *d as f64;
            let poly = taylor_poly(*d);
            write_text(&output.out, &format_coefficients(&CoefficientFile::from_monomial(&poly, (0.0, hi))))?;
            let f = |x: f64| (-x).exp();
            let g = |x| taylor_recip_eval(*d, x).unwrap_or(f64::NAN);
            write_curve(&curve_path(output), &uniform(0.0, hi, output.points), f, g)?;
            let (err, _) = sup_error(&uniform(0.0, hi, CERT_GRID_POINTS), f, g);
            h.push("kind", "exp-recip").push("d", d).push("degree", d);
            Ok(finish(h, err, target))
        }
        Kind::ExpSsv { d, prec, delta, output } => {
            let prec = prec.unwrap_or(ssv_precision(*d));
            let approx = ssv(*d, prec)?;
            let df = *d as f64;
            let target = delta.unwrap_or(8.0 * df * 0.5f64.powi(*d as i32));
            let file = CoefficientFile::from_monomial(&approx.numerator, (0.0, f64::INFINITY));
            write_text(&output.out, &format_coefficients(&file))?;
            let f = |x: f64| (-x).exp();
            let g = |x| approx.eval(x);
            let hi = 40.0 * df;
            write_curve(&curve_path(output), &uniform(0.0, hi, output.points), f, g)?;
            let (err, _) = sup_error(&uniform(0.0, hi, CERT_GRID_POINTS), f, g);
            h.push("kind", "exp-ssv").push("d", d).push("prec", prec);
            h.push("correct_bits", format!("{:.1}", approx.correct_bits));
            Ok(finish(h, err, target))
        }
        Kind::InvExpsum { eps, delta, output } => {
            let sum = inverse_expsum(*eps, *delta)?;
            write_text(&output.out, &format_expsum(&sum))?;
            let f = |x: f64| 1.0 / x;
            let g = |x| sum.eval(x);
            write_curve(&curve_path(output), &log_spaced(*eps, 1.0, output.points), f, g)?;
            let rel = sum.max_relative_error(&log_spaced(*eps, 1.0, CERT_GRID_POINTS));
            h.push("kind", "inv-expsum").push_f64("eps", *eps).push_f64("delta", *delta);
            h.push("terms", sum.len()).push("h", format!("{:e}", sum.h()));
            Ok(finish(h, rel, *delta))
        }
    }
}
