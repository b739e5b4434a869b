pub mod lanczos;
pub mod solve;
pub mod tridiag;

pub use lanczos::{
    lanczos_decomp, lanczos_decomp_op, lanczos_f_apply, lanczos_lambda_max, lanczos_order, lanczos_top_r,
    lanczos_top_r_op, random_unit_vector, EigenEstimate, FApply, LanczosDecomp, LanczosOptions,
};
pub use solve::{cg_solve, estimate_kappa, gd_solve, SolveMethod, SolveReport, SolverConfig};
pub use tridiag::tridiag_eigen;
