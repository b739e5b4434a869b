//! Undirected weighted graphs and their spectral matrix views.
//!
//! Vectors are column vectors: the random-walk transition applied to a
//! distribution `p` is `A D^{-1} p`.

use std::collections::VecDeque;

use crate::error::{check_len, Error, Result};
use crate::linalg::sparse::SparseSymMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    /// Canonical edges `(u, v, w)` with `u < v`, sorted, duplicates merged.
    edges: Vec<(usize, usize, f64)>,
    degrees: Vec<f64>,
    adj_ptr: Vec<usize>,
    adj: Vec<(usize, f64)>,
}

impl WeightedGraph {
    /// Builds a graph on vertices `0..n`. Repeated edges are merged by summing
    /// their weights. Self-loops, non-positive weights and isolated vertices
    /// are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) references a vertex >= {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has weight {w}; weights must be positive")));
            }
            canon.push((u.min(v), u.max(v), w));
        }
        canon.sort_by_key(|e| (e.0, e.1));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(canon.len());
        for (u, v, w) in canon {
            match merged.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += w,
                _ => merged.push((u, v, w)),
            }
        }

        let mut degrees = vec![0.0; n];
        let mut counts = vec![0usize; n + 1];
        for &(u, v, w) in &merged {
            degrees[u] += w;
            degrees[v] += w;
            counts[u + 1] += 1;
            counts[v + 1] += 1;
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0.0) {
            return Err(Error::InvalidGraph(format!("vertex {i} is isolated")));
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let adj_ptr = counts.clone();
        let mut fill = counts;
        let mut adj = vec![(0usize, 0.0f64); 2 * merged.len()];
        for &(u, v, w) in &merged {
            adj[fill[u]] = (v, w);
            fill[u] += 1;
            adj[fill[v]] = (u, w);
            fill[v] += 1;
        }
        Ok(WeightedGraph {
            n,
            edges: merged,
            degrees,
            adj_ptr,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[self.adj_ptr[u]..self.adj_ptr[u + 1]]
    }

    pub fn total_volume(&self) -> f64 {
        self.degrees.iter().sum()
    }

    pub fn adjacency(&self) -> SparseSymMatrix {
        SparseSymMatrix::from_triplets(self.n, &self.edges).expect("validated edges")
    }

    /// Combinatorial Laplacian `L = D - A`.
    pub fn laplacian(&self) -> SparseSymMatrix {
        let mut trip: Vec<_> = self.edges.iter().map(|&(u, v, w)| (u, v, -w)).collect();
        trip.extend(self.degrees.iter().enumerate().map(|(i, &d)| (i, i, d)));
        SparseSymMatrix::from_triplets(self.n, &trip).expect("validated edges")
    }

    /// `W = D^{-1/2} A D^{-1/2}`.
    pub fn walk_matrix_sym(&self) -> SparseSymMatrix {
        let trip: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v, w)| (u, v, w / (self.degrees[u] * self.degrees[v]).sqrt()))
            .collect();
        SparseSymMatrix::from_triplets(self.n, &trip).expect("validated edges")
    }

    /// `I - D^{-1/2} A D^{-1/2}`.
    pub fn normalized_laplacian(&self) -> SparseSymMatrix {
        let mut trip: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v, w)| (u, v, -w / (self.degrees[u] * self.degrees[v]).sqrt()))
            .collect();
        trip.extend((0..self.n).map(|i| (i, i, 1.0)));
        SparseSymMatrix::from_triplets(self.n, &trip).expect("validated edges")
    }

    /// One step of the column-stochastic walk: `A D^{-1} p`.
    pub fn transition_apply(&self, p: &[f64]) -> Result<Vec<f64>> {
        check_len("vector", p.len(), "vertex count", self.n)?;
        let mut out = vec![0.0; self.n];
        for &(u, v, w) in &self.edges {
            out[v] += w * p[u] / self.degrees[u];
            out[u] += w * p[v] / self.degrees[v];
        }
        Ok(out)
    }

    /// Unit vector `D^{1/2} 1 / ||D^{1/2} 1||`, the kernel of the normalized Laplacian.
    pub fn kernel_direction(&self) -> Vec<f64> {
        let norm = self.total_volume().sqrt();
        self.degrees.iter().map(|d| d.sqrt() / norm).collect()
    }

    /// Connected components as a label per vertex, numbered in order of
    /// their smallest vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &SparseSymMatrix) -> Vec<Vec<f64>> {
        let d = m.to_dense();
        (0..m.n()).map(|i| (0..m.n()).map(|j| d[(i, j)]).collect()).collect()
    }

    #[test]
    fn k2_views() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(dense(&g.walk_matrix_sym()), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(dense(&g.normalized_laplacian()), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn triangle_walk_is_half() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let w = g.walk_matrix_sym();
        for (i, j, v) in w.entries() {
            assert_ne!(i, j);
            assert_eq!(v, 0.5);
        }
    }

    #[test]
    fn star_walk_entries() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let w = g.walk_matrix_sym();
        for leaf in 1..4 {
            assert!((w.get(0, leaf) - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn laplacian_kernel() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 2.0), (1, 2, 1.0), (2, 3, 0.5), (0, 3, 1.5), (0, 2, 1.0)]).unwrap();
        let k = g.kernel_direction();
        let r = g.normalized_laplacian().matvec(&k).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-13));
    }

    #[test]
    fn duplicates_merge_and_validation() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 1.0), (1, 0, 2.0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 3.0)]);
        assert!(WeightedGraph::from_edges(2, &[(0, 0, 1.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, &[(0, 1, -1.0)]).is_err());
        assert!(WeightedGraph::from_edges(3, &[(0, 1, 1.0)]).is_err());
    }

    #[test]
    fn transition_preserves_mass() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.0), (1, 2, 3.0)]).unwrap();
        let p = g.transition_apply(&[0.2, 0.5, 0.3]).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn components_of_two_edges() {
        let g = WeightedGraph::from_edges(4, &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(g.components(), (2, vec![0, 0, 1, 1]));
    }
}
