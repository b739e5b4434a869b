pub mod bigreal;
pub mod chebyshev;
pub mod compression;
pub mod exp_integral;
pub mod exp_poly;
pub mod expsum;
pub mod grid;
pub mod reciprocal;
pub mod ssv;

pub use bigreal::BigReal;
pub use chebyshev::{cheb_eval, cheb_eval_with_derivative, cheb_series_eval, ChebSeries, MonomialPoly};
pub use compression::{compression_degree, compression_tail, monomial_cheb_coeffs};
pub use exp_integral::exp_integral;
pub use exp_poly::{exp_poly, exp_poly_coeffs, ExpPolyApprox};
pub use expsum::{inverse_expsum, inverse_expsum_with, ExpSumApprox};
pub use reciprocal::{taylor_poly, taylor_recip_eval};
pub use ssv::{legendre_sum, ssv, ssv_coeffs, ssv_default, ssv_precision, SsvApprox};
