//! Representing measures of generalized Stieltjes functions
//! `f(x) = ∫ dμ(t)/(x+t)^λ + c` and their completely monotonic kernels.

mod catalog;
mod kernel;
mod measure;
mod piecewise;

pub use catalog::{
    alternating_pairs_for, convolve_box, gamma_ratio_cap, gamma_ratio_density, gamma_reciprocal_cap,
    genus1_log_ratio_direct, measure_alternating, measure_cesaro, measure_cesaro_unchecked, measure_gamma_ratio,
    measure_gamma_ratio_with_tol, measure_gamma_reciprocal_ratio, measure_genus1_log_ratio, measure_unit_atoms,
    AlternatingSequence, CONTRACT_X_MIN,
};
pub use kernel::{kernel_kappa, laplace_representation, CmKernel};
pub use measure::{RepresentingMeasure, TailBound};
pub use piecewise::PiecewisePolynomial;

use crate::error::Result;

/// `∫ dμ(t)/(x+t)^λ + c`.
pub fn stieltjes_eval(m: &RepresentingMeasure, x: f64) -> Result<f64> {
    Ok(m.eval_with_bound(x)?.0)
}

/// A single atom of mass `mass` at `t0`.
pub fn measure_point(t0: f64, mass: f64, order: f64) -> Result<RepresentingMeasure> {
    RepresentingMeasure::new(alloc::vec![(t0, mass)], PiecewisePolynomial::zero(), order, 0.0)
}
