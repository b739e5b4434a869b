//! Workloads shared by the benchmarks.

use matapprox::{SparseSymMatrix, WeightedGraph};

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
    SparseSymMatrix::from_triplets(m * m, &trip).expect("grid Laplacian")
}

/// Two copies of `K_k` joined by one edge.
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
    WeightedGraph::from_edges(2 * k, &edges).expect("dumbbell")
}

pub fn cycle(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    WeightedGraph::from_edges(n, &edges).expect("cycle")
}
