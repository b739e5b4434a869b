//! Conductance, sweep cuts, and the sparse-cut search driven by the
//! accelerated walk.

use crate::error::{check_len, Error, Result};
use crate::krylov::lanczos::random_unit_vector;
use crate::linalg::graph::WeightedGraph;
use crate::linalg::sparse::{Shifted, SymOperator};
use crate::linalg::vector::{all_finite, compensated_sum, dot, norm2, project_out};
use crate::matfun::power::power_apply;

#[derive(Debug, Clone, PartialEq)]
pub struct CutResult {
    /// Vertices of `S`, ascending.
    pub side: Vec<usize>,
    pub conductance: f64,
    /// Number of vertices in the best sweep prefix, minus one.
    pub sweep_index: usize,
    pub vector_used: Vec<f64>,
    /// `u^T 𝓛 u / u^T u` of `vector_used`.
    pub rayleigh: f64,
    /// Spectral-gap guess that produced the cut (`None` for a plain sweep or
    /// a disconnected graph).
    pub lambda_guess: Option<f64>,
    pub matvecs: usize,
}

impl CutResult {
    /// The side with fewer vertices; `side` when the two are equal in size.
    pub fn smaller_side(&self, n: usize) -> Vec<usize> {
        if 2 * self.side.len() <= n {
            return self.side.clone();
        }
        let mut mark = vec![false; n];
        for &u in &self.side {
            mark[u] = true;
        }
        (0..n).filter(|&u| !mark[u]).collect()
    }
}

/// `φ(S) = w(S, V∖S) / min(vol S, vol V∖S)`.
pub fn conductance(g: &WeightedGraph, side: &[usize]) -> Result<f64> {
    let n = g.n();
    let mut mark = vec![false; n];
    for &u in side {
        if u >= n {
            return Err(Error::invalid("S", format!("vertex {u} out of range for n = {n}")));
        }
        if mark[u] {
            return Err(Error::invalid("S", format!("vertex {u} listed twice")));
        }
        mark[u] = true;
    }
    if side.is_empty() || side.len() == n {
        return Err(Error::invalid("S", "must be a nonempty proper subset"));
    }
    let cut = compensated_sum(
        g.edges()
            .iter()
            .filter(|(u, v, _)| mark[*u] != mark[*v])
            .map(|e| e.2),
    );
    let deg = g.degrees();
    let vol_in = compensated_sum(side.iter().map(|&u| deg[u]));
    let vol_out = compensated_sum((0..n).filter(|&u| !mark[u]).map(|u| deg[u]));
    Ok(cut / vol_in.min(vol_out))
}

/// Best prefix cut of the vertices ordered by `(x_i / √d_i, i)`.
pub fn sweep_cut(g: &WeightedGraph, x: &[f64]) -> Result<CutResult> {
    check_len("embedding", x.len(), "vertex count", g.n())?;
    if !all_finite(x) {
        return Err(Error::invalid("x", "entries must be finite"));
    }
    if x.iter().all(|&t| t == x[0]) {
        return Err(Error::ConstantVector);
    }
    let n = g.n();
    let deg = g.degrees();
    let key: Vec<f64> = x.iter().zip(deg).map(|(t, d)| t / d.sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key[a].total_cmp(&key[b]).then(a.cmp(&b)));

    let total = g.total_volume();
    let mut inside = vec![false; n];
    let (mut vol, mut cut) = (0.0, 0.0);
    let mut best = (f64::INFINITY, 0);
    for (i, &u) in order[..n - 1].iter().enumerate() {
        let to_inside: f64 = g.neighbors(u).iter().filter(|(v, _)| inside[*v]).map(|e| e.1).sum();
        inside[u] = true;
        vol += deg[u];
        cut += deg[u] - 2.0 * to_inside;
        let phi = cut.max(0.0) / vol.min(total - vol);
        if phi < best.0 {
            best = (phi, i);
        }
    }
    let mut side = order[..=best.1].to_vec();
    side.sort_unstable();
    let conductance = conductance(g, &side)?;
    Ok(CutResult {
        side,
        conductance,
        sweep_index: best.1,
        vector_used: x.to_vec(),
        rayleigh: rayleigh_quotient(g, x),
        lambda_guess: None,
        matvecs: 0,
    })
}

/// `x^T 𝓛 x / x^T x` for the normalized Laplacian.
pub fn rayleigh_quotient(g: &WeightedGraph, x: &[f64]) -> f64 {
    let lx = g.normalized_laplacian().apply_vec(x);
    dot(x, &lx) / dot(x, x)
}

/// Walk length and accuracy used for a spectral-gap guess `λ` of the walk
/// operator: `s = ⌈ln(9n/λ) / (2 ln(1/(1-λ)))⌉`, `δ = √(λ (1-λ)^{2s} · 2/(9n))`.
pub fn walk_parameters(n: usize, lambda: f64) -> (u64, f64) {
    let nf = n as f64;
    let s = ((9.0 * nf / lambda).ln() / (2.0 * (1.0 / (1.0 - lambda)).ln())).ceil().max(1.0);
    let delta = (lambda * (2.0 * s * (1.0 - lambda).ln()).exp() * 2.0 / (9.0 * nf)).sqrt();
    (s as u64, delta)
}

/// Guesses `1/2, 1/4, …` down to `1/n²` for the normalized spectral gap.
pub fn lambda_schedule(n: usize) -> Vec<f64> {
    let floor = 1.0 / (n as f64 * n as f64);
    let mut out = Vec::new();
    let mut lam = 0.5;
    while lam >= floor {
        out.push(lam);
        lam /= 2.0;
    }
    if out.is_empty() {
        out.push(0.5);
    }
    out
}

fn disconnected_cut(g: &WeightedGraph, labels: &[usize]) -> Result<CutResult> {
    let side: Vec<usize> = (0..g.n()).filter(|&u| labels[u] == 0).collect();
    let indicator: Vec<f64> = labels.iter().map(|&l| if l == 0 { 1.0 } else { 0.0 }).collect();
    Ok(CutResult {
        conductance: conductance(g, &side)?,
        sweep_index: side.len() - 1,
        side,
        rayleigh: rayleigh_quotient(g, &indicator),
        vector_used: indicator,
        lambda_guess: None,
        matvecs: 0,
    })
}

/// Random start orthogonal to `D^{1/2} 1`, advanced by the lazy walk
/// `(I + W)/2` for the length the guess dictates, then swept. The lazy walk
/// has gap `λ/2` and no eigenvalues below zero, so bipartite graphs do not
/// flip sign between steps.
///
/// With `lambda_hint` only that guess is tried; otherwise the whole
/// [`lambda_schedule`] is, keeping the lowest conductance (earliest guess on
/// ties). A disconnected graph yields the component of vertex 0, with
/// conductance 0.
pub fn sparse_cut(g: &WeightedGraph, lambda_hint: Option<f64>, seed: u64) -> Result<CutResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidGraph("a cut needs at least two vertices".into()));
    }
    let (count, labels) = g.components();
    if count > 1 {
        return disconnected_cut(g, &labels);
    }
    let guesses = match lambda_hint {
        Some(l) if l > 0.0 && l < 1.0 => vec![l],
        Some(l) => return Err(Error::invalid("lambda", format!("need 0 < lambda < 1, got {l}"))),
        None => lambda_schedule(n),
    };

    let kernel = g.kernel_direction();
    let mut start = random_unit_vector(n, seed);
    project_out(&mut start, &kernel);
    let sn = norm2(&start);
    start.iter_mut().for_each(|t| *t /= sn);

    let w = g.walk_matrix_sym();
    let lazy = Shifted::new(&w, 0.5, 0.5);
    let mut best: Option<CutResult> = None;
    let mut matvecs = 0;
    for lam in guesses {
        let (s, delta) = walk_parameters(n, lam / 2.0);
        let rep = power_apply(&lazy, &start, s, delta.min(0.5))?;
        matvecs += rep.matvec_count;
        let mut u = rep.result;
        project_out(&mut u, &kernel);
        if norm2(&u) == 0.0 || u.iter().all(|&t| t == u[0]) {
            continue;
        }
        let mut cut = sweep_cut(g, &u)?;
        cut.lambda_guess = Some(lam);
        if best.as_ref().is_none_or(|b| cut.conductance < b.conductance) {
            best = Some(cut);
        }
    }
    let mut best = match best {
        Some(b) => b,
        None => sweep_cut(g, &start)?,
    };
    best.matvecs = matvecs;
    Ok(best)
}
