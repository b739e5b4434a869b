use std::collections::BTreeMap;
use std::path::Path;

use crate::error::Result;
use crate::io::{parse_error, parse_f64};
use crate::krylov::solve::SolveReport;
use crate::matfun::ApplyReport;
use crate::partition::CutResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    /// `key=value` lines, then CSV sections.
    #[default]
    Text,
    /// CSV only; scalar fields become `# key=value` comments.
    Csv,
}

/// Run parameters printed at the top of every report, in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunHeader(pub Vec<(String, String)>);

impl RunHeader {
    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    /// Adds a float in the round-tripping `{:e}` form.
    pub fn push_f64(&mut self, key: &str, value: f64) -> &mut Self {
        self.push(key, format!("{value:e}"))
    }
}

struct Writer {
    format: ReportFormat,
    out: String,
}

impl Writer {
    fn new(format: ReportFormat, header: &RunHeader) -> Self {
        let mut w = Writer {
            format,
            out: String::new(),
        };
        for (k, v) in &header.0 {
            w.kv(k, v);
        }
        w
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            ReportFormat::Text => self.out.push_str(&format!("{key}={value}\n")),
            ReportFormat::Csv => self.out.push_str(&format!("# {key}={value}\n")),
        }
    }

    fn section(&mut self, name: &str, columns: &str) {
        if self.format == ReportFormat::Text {
            self.out.push_str(&format!("\n# {name}\n"));
        }
        self.out.push_str(columns);
        self.out.push('\n');
    }
}

pub fn format_solve_report(rep: &SolveReport, header: &RunHeader, format: ReportFormat) -> String {
    let mut w = Writer::new(format, header);
    w.kv("method", rep.method.name());
    w.kv("iterations", rep.iterations);
    w.kv("converged", rep.converged);
    w.kv("target_delta", format!("{:e}", rep.target_delta));
    w.kv("kappa", format!("{:e}", rep.kappa));
    w.kv("tolerance", format!("{:e}", rep.tolerance));
    w.kv("max_iterations", rep.max_iterations);
    w.kv("final_residual", format!("{:e}", rep.final_residual));
    w.kv("estimation_matvecs", rep.estimation_matvecs);
    w.section("residual_history", "iteration,residual");
    for (i, r) in rep.residual_history.iter().enumerate() {
        w.out.push_str(&format!("{},{r:e}\n", i + 1));
    }
    w.out
}

pub fn format_apply_report(rep: &ApplyReport, header: &RunHeader, format: ReportFormat) -> String {
    let mut w = Writer::new(format, header);
    w.kv("method", rep.method.name());
    w.kv("degree", rep.degree);
    w.kv("matvec_count", rep.matvec_count);
    w.kv("auxiliary_matvecs", rep.auxiliary_matvecs);
    w.kv("inner_solves", rep.inner_solves);
    w.kv("inner_iterations", rep.inner_iterations);
    w.kv("terms", rep.terms);
    w.kv("certified_delta", format!("{:e}", rep.certified_delta));
    w.kv("target_delta", format!("{:e}", rep.target_delta));
    w.kv("converged", rep.converged);
    for warning in &rep.warnings {
        w.kv("warning", warning);
    }
    w.section("result", "index,value");
    for (i, x) in rep.result.iter().enumerate() {
        w.out.push_str(&format!("{i},{x:e}\n"));
    }
    w.out
}

/// `conductance=… size=…`, then the smaller side one vertex per line. Run
/// parameters go first as `# key=value` comments.
pub fn format_cut_report(cut: &CutResult, n: usize, header: &RunHeader) -> String {
    let mut out = String::new();
    for (k, v) in &header.0 {
        out.push_str(&format!("# {k}={v}\n"));
    }
    let side = cut.smaller_side(n);
    out.push_str(&format!("conductance={:e} size={}\n", cut.conductance, side.len()));
    for u in side {
        out.push_str(&format!("{u}\n"));
    }
    out
}

/// `(conductance, vertices)` from a cut report.
pub fn parse_cut_report(text: &str, path: &Path) -> Result<(f64, Vec<usize>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, head) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "missing `conductance=… size=…` line"))?;
    let kv = parse_key_values(head);
    let phi = kv
        .get("conductance")
        .ok_or_else(|| parse_error(path, line, "missing conductance"))?;
    let phi = parse_f64(path, line, phi)?;
    let size: usize = kv
        .get("size")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_error(path, line, "missing or bad size"))?;
    let mut side = Vec::new();
    for (line, l) in lines {
        side.push(
            l.parse::<usize>()
                .map_err(|_| parse_error(path, line, format!("`{l}` is not a vertex")))?,
        );
    }
    if side.len() != size {
        return Err(parse_error(path, line, format!("size={size} but {} vertices listed", side.len())));
    }
    Ok((phi, side))
}

/// All `key=value` tokens of a text, split on whitespace, with `#` comment
/// markers ignored. Later keys overwrite earlier ones.
pub fn parse_key_values(text: &str) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim().trim_start_matches('#').trim();
        if line.contains(',') && !line.contains('=') {
            continue;
        }
        match line.split_once('=') {
            // a single key=value per line may carry spaces in its value
            Some((k, v)) if !k.contains(' ') && !v.contains('=') => {
                out.insert(k.to_string(), v.to_string());
            }
            _ => {
                for tok in line.split_whitespace() {
                    if let Some((k, v)) = tok.split_once('=') {
                        out.insert(k.to_string(), v.to_string());
                    }
                }
            }
        }
    }
    out
}
