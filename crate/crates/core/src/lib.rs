//! Approximation-theoretic primitives for sparse symmetric matrices.
//!
//! * [`scalar`]: Chebyshev series, compressed monomials, polynomial and
//!   rational approximations of `e^{-x}`, sums of exponentials for `1/x`.
//! * [`linalg`]: sparse symmetric matrices, weighted graphs, dense oracles.
//! * [`krylov`]: gradient descent, conjugate gradient, Lanczos.
//! * [`matfun`]: `M^s v`, `exp(-A) v`, `A^{-1} v` through the scalar approximants.
//! * [`partition`]: conductance, sweep cuts and the spectral sparse-cut search.
//! * [`io`]: Matrix Market, edge lists, vectors, coefficient files and reports.

pub mod error;
pub mod io;
pub mod krylov;
pub mod linalg;
pub mod matfun;
pub mod partition;
pub mod scalar;

pub use error::{Error, Result};
pub use krylov::{LanczosDecomp, SolveReport};
pub use linalg::{SparseSymMatrix, SymOperator, WeightedGraph};
pub use matfun::{ApplyMethod, ApplyReport};
pub use partition::CutResult;
pub use scalar::{BigReal, ChebSeries, ExpSumApprox, MonomialPoly};

/// Seed used whenever the caller does not supply one.
pub const DEFAULT_SEED: u64 = 20240101;
