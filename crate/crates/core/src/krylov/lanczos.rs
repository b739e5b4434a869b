//! Lanczos tridiagonalization and the estimates built on it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{check_len, Error, Result};
use crate::krylov::tridiag::tridiag_eigen;
use crate::linalg::dense::{dense_fn_apply_ref, DENSE_ORACLE_CAP};
use crate::linalg::sparse::{SparseSymMatrix, SymOperator};
use crate::linalg::vector::{axpy, dot, norm2, project_out, scale};

/// `c` in the Krylov order `⌈c · δ^{-1/2} · ln(n/δ)⌉` used for eigenvalue estimates.
pub const LANCZOS_ORDER_CONSTANT: f64 = 0.5;
/// A new direction shorter than this times the running `||A||` estimate ends
/// the recurrence (invariant subspace).
pub const BREAKDOWN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct LanczosOptions {
    /// Re-orthogonalize every new vector against the whole basis (twice).
    /// Without it only the three-term recurrence is used.
    pub full_reorthogonalization: bool,
    /// Start vector; a seeded Gaussian direction when absent.
    pub start: Option<Vec<f64>>,
    /// Unit vector removed from the start (e.g. a known kernel direction).
    pub deflate: Option<Vec<f64>>,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            full_reorthogonalization: true,
            start: None,
            deflate: None,
        }
    }
}

/// `A V ≈ V T` with `V` orthonormal and `T` tridiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct LanczosDecomp {
    /// Diagonal of `T`.
    pub alpha: Vec<f64>,
    /// Off-diagonal of `T`, one shorter than `alpha`.
    pub beta: Vec<f64>,
    /// `v_0 .. v_k`.
    pub basis: Vec<Vec<f64>>,
    pub seed: u64,
    /// Set when an invariant subspace ended the recurrence before the requested order.
    pub truncated: bool,
    pub matvecs: usize,
}

impl LanczosDecomp {
    /// Krylov order `k`; `T` is `(k+1) x (k+1)`.
    pub fn order(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn tridiagonal(&self) -> Vec<Vec<f64>> {
        let m = self.alpha.len();
        let mut t = vec![vec![0.0; m]; m];
        for i in 0..m {
            t[i][i] = self.alpha[i];
            if i + 1 < m {
                t[i][i + 1] = self.beta[i];
                t[i + 1][i] = self.beta[i];
            }
        }
        t
    }

    /// Ritz values (ascending) and eigenvectors of `T` as columns.
    pub fn ritz(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        tridiag_eigen(&self.alpha, &self.beta)
    }

    /// `V w`.
    pub fn lift(&self, w: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.basis[0].len()];
        for (vi, wi) in self.basis.iter().zip(w) {
            axpy(*wi, vi, &mut out);
        }
        out
    }
}

/// Seeded Gaussian direction normalized to unit length.
pub fn random_unit_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let nv = norm2(&v);
    scale(1.0 / nv, &mut v);
    v
}

pub fn lanczos_decomp_op<O: SymOperator>(a: &O, k: usize, seed: u64, opts: &LanczosOptions) -> Result<LanczosDecomp> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::invalid("A", "empty matrix"));
    }
    if k >= n {
        return Err(Error::invalid("k", format!("Krylov order must be below n = {n}, got {k}")));
    }
    let mut v0 = match &opts.start {
        Some(s) => {
            check_len("start vector", s.len(), "matrix dimension", n)?;
            s.clone()
        }
        None => random_unit_vector(n, seed),
    };
    if let Some(dir) = &opts.deflate {
        check_len("deflation vector", dir.len(), "matrix dimension", n)?;
        project_out(&mut v0, dir);
    }
    let nv = norm2(&v0);
    if !(nv > 0.0 && nv.is_finite()) {
        return Err(Error::invalid("start", "start vector vanishes"));
    }
    scale(1.0 / nv, &mut v0);

    let mut basis = vec![v0];
    let mut alpha = Vec::with_capacity(k + 1);
    let mut beta: Vec<f64> = Vec::with_capacity(k);
    let mut w = vec![0.0; n];
    let mut norm_est = 0.0f64;
    let mut truncated = false;
    let mut matvecs = 0;
    for j in 0..=k {
        a.apply(&basis[j], &mut w);
        matvecs += 1;
        norm_est = norm_est.max(norm2(&w));
        let aj = dot(&basis[j], &w);
        alpha.push(aj);
        if j == k {
            break;
        }
        axpy(-aj, &basis[j], &mut w);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut w);
        }
        if opts.full_reorthogonalization {
            for _ in 0..2 {
                for vi in &basis {
                    let c = dot(vi, &w);
                    axpy(-c, vi, &mut w);
                }
            }
        }
        let bj = norm2(&w);
        if bj <= BREAKDOWN_TOLERANCE * norm_est || bj == 0.0 {
            truncated = true;
            break;
        }
        beta.push(bj);
        let mut next = w.clone();
        scale(1.0 / bj, &mut next);
        basis.push(next);
    }
    Ok(LanczosDecomp {
        alpha,
        beta,
        basis,
        seed,
        truncated,
        matvecs,
    })
}

/// Lanczos with a seeded random start and full re-orthogonalization.
pub fn lanczos_decomp(a: &SparseSymMatrix, k: usize, seed: u64) -> Result<LanczosDecomp> {
    lanczos_decomp_op(a, k, seed, &LanczosOptions::default())
}

/// `⌈c · δ^{-1/2} · ln(n/δ)⌉`, capped at `n - 1`.
pub fn lanczos_order(n: usize, delta: f64) -> usize {
    let k = (LANCZOS_ORDER_CONSTANT / delta.sqrt() * (n as f64 / delta).ln()).ceil() as usize;
    k.max(1).min(n.saturating_sub(1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenEstimate {
    pub value: f64,
    /// Unit vector `V w` lifted from the Ritz vector.
    pub witness: Vec<f64>,
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta", format!("need 0 < delta < 1, got {delta}")));
    }
    Ok(())
}

/// Top `r` Ritz pairs from a Krylov space of order [`lanczos_order`]`(n, δ)`
/// (raised to at least `r`), largest first.
pub fn lanczos_top_r_op<O: SymOperator>(
    a: &O,
    r: usize,
    delta: f64,
    seed: u64,
    opts: &LanczosOptions,
) -> Result<Vec<EigenEstimate>> {
    check_delta(delta)?;
    let n = a.dim();
    if r == 0 || r > n {
        return Err(Error::invalid("r", format!("need 1 <= r <= n = {n}, got {r}")));
    }
    let k = lanczos_order(n, delta).max(r.min(n - 1));
    let dec = lanczos_decomp_op(a, k, seed, opts)?;
    let (vals, vecs) = dec.ritz();
    let m = vals.len();
    Ok((0..r.min(m))
        .map(|i| {
            let j = m - 1 - i;
            let w: Vec<f64> = vecs.iter().map(|row| row[j]).collect();
            EigenEstimate {
                value: vals[j],
                witness: dec.lift(&w),
            }
        })
        .collect())
}

pub fn lanczos_top_r<O: SymOperator>(a: &O, r: usize, delta: f64, seed: u64) -> Result<Vec<EigenEstimate>> {
    lanczos_top_r_op(a, r, delta, seed, &LanczosOptions::default())
}

/// Largest Ritz value and its lifted Ritz vector.
pub fn lanczos_lambda_max<O: SymOperator>(a: &O, delta: f64, seed: u64) -> Result<EigenEstimate> {
    Ok(lanczos_top_r(a, 1, delta, seed)?.remove(0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FApply {
    pub result: Vec<f64>,
    /// Krylov order actually used.
    pub order: usize,
    /// `k >= n` was requested and the dense oracle answered instead.
    pub dense_fallback: bool,
}

/// `||v|| V f(T) e_1`, the Krylov approximation of `f(A) v` from the space
/// started at `v`.
pub fn lanczos_f_apply(a: &SparseSymMatrix, v: &[f64], f: impl Fn(f64) -> f64, k: usize) -> Result<FApply> {
    let n = a.n();
    check_len("vector", v.len(), "matrix dimension", n)?;
    if k >= n {
        if n > DENSE_ORACLE_CAP {
            return Err(Error::invalid("k", format!("Krylov order must be below n = {n}, got {k}")));
        }
        return Ok(FApply {
            result: dense_fn_apply_ref(a, f, v)?,
            order: n,
            dense_fallback: true,
        });
    }
    let vn = norm2(v);
    if vn == 0.0 {
        return Ok(FApply {
            result: vec![0.0; n],
            order: 0,
            dense_fallback: false,
        });
    }
    let opts = LanczosOptions {
        start: Some(v.to_vec()),
        ..Default::default()
    };
    let dec = lanczos_decomp_op(a, k, 0, &opts)?;
    let (vals, vecs) = dec.ritz();
    // f(T) e_1 = Σ_j f(θ_j) s_j s_j[0]
    let m = vals.len();
    let mut coeff = vec![0.0; m];
    for j in 0..m {
        let weight = f(vals[j]) * vecs[0][j];
        for (i, c) in coeff.iter_mut().enumerate() {
            *c += weight * vecs[i][j];
        }
    }
    let mut result = dec.lift(&coeff);
    scale(vn, &mut result);
    Ok(FApply {
        result,
        order: dec.order(),
        dense_fallback: false,
    })
}
