pub mod dense;
pub mod graph;
pub mod sparse;
pub mod vector;

pub use dense::{
    dense_eigen, dense_eigs_ref, dense_expm_apply_ref, dense_expm_ref, dense_fn_apply_ref, dense_fn_ref,
    dense_solve_ref, DENSE_ORACLE_CAP,
};
pub use graph::WeightedGraph;
pub use sparse::{Shifted, SparseSymMatrix, SymOperator};
