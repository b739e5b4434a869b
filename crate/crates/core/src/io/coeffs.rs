use std::path::Path;

use crate::error::Result;
use crate::io::{parse_error, parse_f64, read_text, write_text};
use crate::scalar::chebyshev::{ChebSeries, MonomialPoly};
use crate::scalar::expsum::ExpSumApprox;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Chebyshev,
    Monomial,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Chebyshev => "chebyshev",
            Basis::Monomial => "monomial",
        }
    }
}

/// One coefficient per line under `# basis=… interval=a,b degree=d`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFile {
    pub basis: Basis,
    pub interval: (f64, f64),
    pub coeffs: Vec<f64>,
}

impl CoefficientFile {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn from_cheb(series: &ChebSeries) -> Self {
        CoefficientFile {
            basis: Basis::Chebyshev,
            interval: series.interval(),
            coeffs: series.coeffs().to_vec(),
        }
    }

    pub fn from_monomial(poly: &MonomialPoly, interval: (f64, f64)) -> Self {
        CoefficientFile {
            basis: Basis::Monomial,
            interval,
            coeffs: poly.coeffs().to_vec(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(match self.basis {
            Basis::Chebyshev => ChebSeries::new(self.coeffs.clone(), self.interval)?.eval(x),
            Basis::Monomial => MonomialPoly::new(self.coeffs.clone())?.eval(x),
        })
    }
}

pub fn format_coefficients(file: &CoefficientFile) -> String {
    let (a, b) = file.interval;
    let mut out = format!(
        "# basis={} interval={a:e},{b:e} degree={}\n",
        file.basis.name(),
        file.degree()
    );
    for c in &file.coeffs {
        out.push_str(&format!("{c:e}\n"));
    }
    out
}

pub fn parse_coefficients(text: &str, path: &Path) -> Result<CoefficientFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let header = lines.next().map(|(_, l)| l).unwrap_or("");
    let body = header
        .strip_prefix('#')
        .ok_or_else(|| parse_error(path, 1, "missing `# basis=… interval=… degree=…` header"))?;
    let (mut basis, mut interval, mut degree) = (None, None, None);
    for kv in body.split_whitespace() {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| parse_error(path, 1, format!("`{kv}` is not key=value")))?;
        match k {
            "basis" => {
                basis = Some(match v {
                    "chebyshev" => Basis::Chebyshev,
                    "monomial" => Basis::Monomial,
                    _ => return Err(parse_error(path, 1, format!("unknown basis `{v}`"))),
                })
            }
            "interval" => {
                let (a, b) = v
                    .split_once(',')
                    .ok_or_else(|| parse_error(path, 1, "interval must be `a,b`"))?;
                interval = Some((parse_f64(path, 1, a)?, parse_f64(path, 1, b)?));
            }
            "degree" => {
                degree = Some(
                    v.parse::<usize>()
                        .map_err(|_| parse_error(path, 1, format!("bad degree `{v}`")))?,
                )
            }
            _ => return Err(parse_error(path, 1, format!("unknown header key `{k}`"))),
        }
    }
    let (Some(basis), Some(interval), Some(degree)) = (basis, interval, degree) else {
        return Err(parse_error(path, 1, "header needs basis, interval and degree"));
    };
    let mut coeffs = Vec::new();
    for (line, l) in lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('#')) {
        coeffs.push(parse_f64(path, line, l)?);
    }
    if coeffs.len() != degree + 1 {
        return Err(parse_error(
            path,
            1,
            format!("degree {degree} needs {} coefficients, found {}", degree + 1, coeffs.len()),
        ));
    }
    Ok(CoefficientFile {
        basis,
        interval,
        coeffs,
    })
}

pub fn read_coefficients(path: &Path) -> Result<CoefficientFile> {
    parse_coefficients(&read_text(path)?, path)
}

pub fn write_coefficients(path: &Path, file: &CoefficientFile) -> Result<()> {
    write_text(path, &format_coefficients(file))
}

pub fn format_expsum(sum: &ExpSumApprox) -> String {
    let mut out = format!(
        "# eps={:e},delta={:e},h={:e},n={}\nj,w_j,t_j\n",
        sum.eps(),
        sum.delta(),
        sum.h(),
        sum.n_order()
    );
    for (j, (w, t)) in (sum.j_lo()..).zip(sum.terms()) {
        out.push_str(&format!("{j},{w:e},{t:e}\n"));
    }
    out
}

/// Rebuilds the approximation from the header and the `j` range, then checks
/// that every row matches the reconstruction exactly.
pub fn parse_expsum(text: &str, path: &Path) -> Result<ExpSumApprox> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let header = lines.next().map(|(_, l)| l).unwrap_or("");
    let body = header
        .strip_prefix('#')
        .ok_or_else(|| parse_error(path, 1, "missing `# eps=…,delta=…,h=…,n=…` header"))?;
    let (mut eps, mut delta, mut h, mut n) = (None, None, None, None);
    for kv in body.trim().split(',') {
        let (k, v) = kv
            .trim()
            .split_once('=')
            .ok_or_else(|| parse_error(path, 1, format!("`{kv}` is not key=value")))?;
        match k {
            "eps" => eps = Some(parse_f64(path, 1, v)?),
            "delta" => delta = Some(parse_f64(path, 1, v)?),
            "h" => h = Some(parse_f64(path, 1, v)?),
            "n" => n = Some(v.parse::<u64>().map_err(|_| parse_error(path, 1, format!("bad n `{v}`")))?),
            _ => return Err(parse_error(path, 1, format!("unknown header key `{k}`"))),
        }
    }
    let (Some(eps), Some(delta), Some(h), Some(n)) = (eps, delta, h, n) else {
        return Err(parse_error(path, 1, "header needs eps, delta, h and n"));
    };
    let mut rows = Vec::new();
    for (line, l) in lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('#')) {
        if l == "j,w_j,t_j" {
            continue;
        }
        let f: Vec<&str> = l.split(',').collect();
        if f.len() != 3 {
            return Err(parse_error(path, line, "row must be `j,w_j,t_j`"));
        }
        let j = f[0]
            .trim()
            .parse::<i64>()
            .map_err(|_| parse_error(path, line, format!("bad index `{}`", f[0])))?;
        rows.push((line, j, parse_f64(path, line, f[1].trim())?, parse_f64(path, line, f[2].trim())?));
    }
    let (Some(first), Some(last)) = (rows.first(), rows.last()) else {
        return Err(parse_error(path, 1, "no terms"));
    };
    let sum = ExpSumApprox::from_parts(eps, delta, h, n, first.1, last.1).map_err(|e| parse_error(path, 1, e.to_string()))?;
    if sum.len() != rows.len() {
        return Err(parse_error(path, last.0, "term indices are not consecutive"));
    }
    for ((line, j, w, t), (j_expect, (w_expect, t_expect))) in rows.iter().zip((sum.j_lo()..).zip(sum.terms())) {
        if *j != j_expect || w != w_expect || t != t_expect {
            return Err(parse_error(path, *line, "row does not match the header parameters"));
        }
    }
    Ok(sum)
}

pub fn read_expsum(path: &Path) -> Result<ExpSumApprox> {
    parse_expsum(&read_text(path)?, path)
}

pub fn write_expsum(path: &Path, sum: &ExpSumApprox) -> Result<()> {
    write_text(path, &format_expsum(sum))
}
