//! Generalized Stieltjes functions, completely monotonic kernels and the
//! special functions that feed them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure:
//! measures and specs are immutable after construction and every evaluator
//! can be called from any number of threads.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod function;
pub(crate) mod math;
pub mod quadrature;
pub mod series;

pub mod barnes;
pub mod cesaro;
pub mod densities;
pub mod laplace;
pub mod monotonicity;
pub mod specfun;
pub mod stieltjes;
pub mod suites;

pub use error::{Error, Result};
pub use function::{FnScalar, ScalarFunction};
pub use num_complex::Complex64;
