use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use matapprox::io::{
    format_apply_report, format_cut_report, format_solve_report, read_edge_list, read_matrix_market, read_vector,
    write_text, write_vector, ReportFormat, RunHeader,
};
use matapprox::krylov::{cg_solve, gd_solve, lanczos_top_r, SolverConfig};
use matapprox::linalg::dense_eigs_ref;
use matapprox::matfun::{
    exp_apply_poly, exp_apply_rational, heat_kernel_apply, inverse_apply_via_exp, walk_distribution, ExpOptions,
    RationalRoute,
};
use matapprox::partition::sparse_cut;
use matapprox::{ApplyReport, Error, Result, SparseSymMatrix, WeightedGraph};

use crate::{Common, GraphInput, Outcome, DEFAULT_DELTA};

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.report {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn header(command: &str, common: &Common) -> RunHeader {
    let mut h = RunHeader::default();
    h.push("command", command).push("seed", common.seed);
    h
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn load_graph(g: &GraphInput) -> Result<WeightedGraph> {
    read_edge_list(&g.graph, g.one_based)
}

fn finish_apply(rep: &ApplyReport, h: &RunHeader, common: &Common, out: &Path) -> Result<Outcome> {
    write_vector(out, &rep.result)?;
    emit(common, &format_apply_report(rep, h, common.format.into()))?;
    Ok(if rep.converged {
        Outcome::Ok
    } else {
        Outcome::Failed(format!(
            "{} did not meet its target: certified {:e} for delta {:e}",
            rep.method.name(),
            rep.certified_delta,
            rep.target_delta
        ))
    })
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Starting distribution.
    #[arg(long)]
    v0: PathBuf,
    #[arg(long)]
    s: u64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Output distribution.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

pub fn walk(a: &WalkArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let v0 = read_vector(&a.v0)?;
    let rep = walk_distribution(&g, &v0, a.s, a.delta)?;
    let mut h = header("walk", &a.common);
    h.push("graph", path_str(&a.graph.graph)).push("s", a.s).push_f64("delta", a.delta);
    finish_apply(&rep, &h, &a.common, &a.out)
}

#[derive(Args, Debug)]
pub struct HeatArgs {
    #[command(flatten)]
    graph: GraphInput,
    #[arg(long)]
    v0: PathBuf,
    /// Diffusion time.
    #[arg(long)]
    s: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

pub fn heat(a: &HeatArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let v0 = read_vector(&a.v0)?;
    let rep = heat_kernel_apply(&g, &v0, a.s, a.delta, a.common.seed)?;
    let mut h = header("heat", &a.common);
    h.push("graph", path_str(&a.graph.graph)).push_f64("s", a.s).push_f64("delta", a.delta);
    finish_apply(&rep, &h, &a.common, &a.out)
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethodArg {
    Cg,
    Gd,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Matrix Market file (coordinate real symmetric).
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    rhs: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, value_enum, default_value_t = SolveMethodArg::Cg)]
    method: SolveMethodArg,
    /// Known condition number; estimated by Lanczos when absent.
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Solution vector.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

pub fn solve(a: &SolveArgs) -> Result<Outcome> {
    let m = read_matrix_market(&a.matrix)?;
    let b = read_vector(&a.rhs)?;
    let cfg = SolverConfig {
        kappa: a.kappa,
        max_iterations: a.max_iter,
        seed: a.common.seed,
    };
    let rep = match a.method {
        SolveMethodArg::Cg => cg_solve(&m, &b, a.delta, &cfg)?,
        SolveMethodArg::Gd => gd_solve(&m, &b, a.delta, &cfg)?,
    };
    write_vector(&a.out, &rep.solution)?;
    let mut h = header("solve", &a.common);
    h.push("matrix", path_str(&a.matrix)).push_f64("delta", a.delta);
    emit(&a.common, &format_solve_report(&rep, &h, a.common.format.into()))?;
    Ok(if rep.converged {
        Outcome::Ok
    } else {
        Outcome::Failed(format!("{} stopped after {} iterations without converging", rep.method.name(), rep.iterations))
    })
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["matrix", "graph"])))]
pub struct EigArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Edge list; its normalized Laplacian is used.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    one_based: bool,
    /// Full spectrum from the dense eigensolver (ascending).
    #[arg(long)]
    dense: bool,
    /// Number of top eigenvalues (Lanczos).
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[command(flatten)]
    common: Common,
}

pub fn eig(a: &EigArgs) -> Result<Outcome> {
    let (m, source): (SparseSymMatrix, String) = match (&a.matrix, &a.graph) {
        (Some(p), _) => (read_matrix_market(p)?, path_str(p)),
        (None, Some(p)) => (read_edge_list(p, a.one_based)?.normalized_laplacian(), path_str(p)),
        (None, None) => return Err(Error::InvalidArgument {
            name: "input",
            reason: "need --matrix or --graph".into(),
        }),
    };
    let mut h = header("eig", &a.common);
    h.push("input", source).push_f64("delta", a.delta);
    let values: Vec<f64> = if a.dense {
        h.push("mode", "dense");
        dense_eigs_ref(&m)?
    } else {
        h.push("mode", "lanczos").push("r", a.r);
        lanczos_top_r(&m, a.r, a.delta, a.common.seed)?.into_iter().map(|e| e.value).collect()
    };
    let mut text = String::new();
    let format: ReportFormat = a.common.format.into();
    for (k, v) in &h.0 {
        match format {
            ReportFormat::Text => text.push_str(&format!("{k}={v}\n")),
            ReportFormat::Csv => text.push_str(&format!("# {k}={v}\n")),
        }
    }
    if format == ReportFormat::Text {
        text.push_str("\n# eigenvalues\n");
    }
    text.push_str("index,value\n");
    for (i, v) in values.iter().enumerate() {
        text.push_str(&format!("{i},{v:e}\n"));
    }
    emit(&a.common, &text)?;
    Ok(Outcome::Ok)
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpMethodArg {
    Poly,
    Rational,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteArg {
    Legendre,
    Monomial,
}

#[derive(Args, Debug)]
pub struct ExpvArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    v0: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, value_enum, default_value_t = ExpMethodArg::Rational)]
    method: ExpMethodArg,
    /// Upper bound on the largest eigenvalue; estimated when absent.
    #[arg(long)]
    b: Option<f64>,
    /// Rational degree; chosen from delta when absent.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum, default_value_t = RouteArg::Legendre)]
    route: RouteArg,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

pub fn expv(a: &ExpvArgs) -> Result<Outcome> {
    let m = read_matrix_market(&a.matrix)?;
    let v = read_vector(&a.v0)?;
    let opts = ExpOptions {
        b: a.b,
        degree: a.d,
        route: match a.route {
            RouteArg::Legendre => RationalRoute::Legendre,
            RouteArg::Monomial => RationalRoute::Monomial,
        },
        seed: a.common.seed,
    };
    let rep = match a.method {
        ExpMethodArg::Poly => exp_apply_poly(&m, &v, a.delta, &opts)?,
        ExpMethodArg::Rational => exp_apply_rational(&m, &v, a.delta, &opts)?,
    };
    let mut h = header("expv", &a.common);
    h.push("matrix", path_str(&a.matrix)).push_f64("delta", a.delta);
    finish_apply(&rep, &h, &a.common, &a.out)
}

#[derive(Args, Debug)]
pub struct InvArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    rhs: PathBuf,
    /// Lower spectral bound; the matrix must satisfy eps I <= A <= I.
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    common: Common,
}

pub fn inv(a: &InvArgs) -> Result<Outcome> {
    let m = read_matrix_market(&a.matrix)?;
    let v = read_vector(&a.rhs)?;
    let rep = inverse_apply_via_exp(&m, &v, a.eps, a.delta, a.common.seed)?;
    let mut h = header("inv", &a.common);
    h.push("matrix", path_str(&a.matrix)).push_f64("eps", a.eps).push_f64("delta", a.delta);
    finish_apply(&rep, &h, &a.common, &a.out)
}

#[derive(Args, Debug)]
pub struct CutArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Spectral-gap guess; the doubling schedule is searched when absent.
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = matapprox::DEFAULT_SEED)]
    seed: u64,
    /// Cut report; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn cut(a: &CutArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let cut = sparse_cut(&g, a.lambda, a.seed)?;
    let mut h = RunHeader::default();
    h.push("command", "cut").push("seed", a.seed);
    h.push("graph", path_str(&a.graph.graph));
    match a.lambda {
        Some(l) => h.push_f64("lambda", l),
        None => h.push("lambda", "schedule"),
    };
    if let Some(l) = cut.lambda_guess {
        h.push("lambda_guess", l);
    }
    h.push("rayleigh", format!("{:e}", cut.rayleigh));
    let text = format_cut_report(&cut, g.n(), &h);
    match &a.out {
        Some(p) => write_text(p, &text)?,
        None => print!("{text}"),
    }
    Ok(Outcome::Ok)
}
