#![allow(dead_code)]

use matapprox::{SparseSymMatrix, WeightedGraph};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Tanh-sinh quadrature of `f` over `[a, b]`, refining the step until two
/// levels agree to `1e-15` relative (or 12 halvings).
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let level = |h: f64| {
        let mut acc = 0.0;
        let kmax = (4.0 / h) as i64;
        for k in -kmax..=kmax {
            let t = k as f64 * h;
            let u = 0.5 * std::f64::consts::PI * t.sinh();
            let w = 0.5 * std::f64::consts::PI * t.cosh() / u.cosh().powi(2);
            // 1 - tanh(u) without cancellation
            let tail = 2.0 / ((2.0 * u.abs()).exp() + 1.0);
            let x = if u >= 0.0 { b - half * tail } else { a + half * tail };
            if w == 0.0 || x <= a || x >= b {
                continue;
            }
            acc += w * f(x);
        }
        acc * h * half
    };
    let mut h = 0.5;
    let mut prev = level(h);
    for _ in 0..12 {
        h /= 2.0;
        let cur = level(h);
        if (cur - prev).abs() <= 1e-15 * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Binomial coefficient in exact integer arithmetic (fits `u128` for `n <= 120`).
pub fn binom_exact(n: u64, k: u64) -> u128 {
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

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.sample::<f64, _>(StandardNormal)).collect()
}

pub fn unit(v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// A ring through all vertices (so the graph is connected) plus random
/// chords with probability `p`, weights uniform in `[0.5, 2]`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> WeightedGraph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n, r.random_range(0.5..2.0)));
    }
    for i in 0..n {
        for j in i + 2..n {
            if (i, j) != (0, n - 1) && r.random_bool(p) {
                edges.push((i, j, r.random_range(0.5..2.0)));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

pub fn dumbbell(k: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for base in [0, k] {
        for i in 0..k {
            for j in i + 1..k {
                edges.push((base + i, base + j, 1.0));
            }
        }
    }
    edges.push((k - 1, k, 1.0));
    WeightedGraph::from_edges(2 * k, &edges).unwrap()
}

pub fn cycle(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    WeightedGraph::from_edges(n, &edges).unwrap()
}

/// Laplacian of the `m × m` grid plus `shift · I`.
pub fn grid_laplacian(m: usize, shift: f64) -> SparseSymMatrix {
    let id = |r: usize, c: usize| r * m + c;
    let mut trip = Vec::new();
    let mut deg = vec![0.0; m * m];
    for r in 0..m {
        for c in 0..m {
            for (rr, cc) in [(r + 1, c), (r, c + 1)] {
                if rr < m && cc < m {
                    trip.push((id(r, c), id(rr, cc), -1.0));
                    deg[id(r, c)] += 1.0;
                    deg[id(rr, cc)] += 1.0;
                }
            }
        }
    }
    for (i, d) in deg.into_iter().enumerate() {
        trip.push((i, i, d + shift));
    }
    SparseSymMatrix::from_triplets(m * m, &trip).unwrap()
}

/// Largest eigenvalue of the free-boundary `m × m` grid Laplacian.
pub fn grid_lambda_max(m: usize) -> f64 {
    let s = (std::f64::consts::PI * (m - 1) as f64 / (2.0 * m as f64)).sin();
    8.0 * s * s
}

/// `Q diag(lam) Q^T` with `Q` from a Gaussian matrix's eigenvectors.
pub fn with_spectrum(lam: &[f64], seed: u64) -> SparseSymMatrix {
    let n = lam.len();
    let mut r = rng(seed);
    let g = DMatrix::from_fn(n, n, |_, _| r.sample::<f64, _>(StandardNormal));
    let q = (&g + g.transpose()).symmetric_eigen().eigenvectors;
    let a = &q * DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(lam)) * q.transpose();
    let mut trip = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            trip.push((i, j, 0.5 * (a[(i, j)] + a[(j, i)])));
        }
    }
    SparseSymMatrix::from_triplets(n, &trip).unwrap()
}

/// Graph Laplacian as a sparse matrix.
pub fn laplacian(g: &WeightedGraph) -> SparseSymMatrix {
    g.laplacian()
}

/// Conductance of a vertex set computed directly from the edge list.
pub fn conductance_direct(g: &WeightedGraph, inside: &[bool]) -> f64 {
    let mut cut = 0.0;
    let mut vol = [0.0, 0.0];
    for &(u, v, w) in g.edges() {
        if inside[u] != inside[v] {
            cut += w;
        }
        vol[usize::from(inside[u])] += w;
        vol[usize::from(inside[v])] += w;
    }
    cut / vol[0].min(vol[1])
}
