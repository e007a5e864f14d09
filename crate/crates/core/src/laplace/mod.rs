//! Forward Laplace transforms, periodic profiles, numerical inversion and
//! the convolution semigroup generated by powers of β.

mod hamburger;
mod inversion;
mod periodic;
mod quad;
mod semigroup;

pub use hamburger::{hamburger_check, HamburgerReport, HamburgerRow};
pub use inversion::{
    euler, gaver_stehfest, laplace_invert, laplace_invert_checked, laplace_invert_with, talbot, BetaPower, Contour,
    InversionDiagnostics, InversionOptions, TALBOT_NODES,
};
pub use periodic::{
    laplace_periodic, laplace_periodic_smooth, sigma_continuous, sigma_direct, sigma_discrete, step_f, tau_continuous,
    tau_direct, tau_discrete, PeriodicProfile, PeriodicStep, Sign, SmoothPeriodic,
};
pub(crate) use quad::integrate_decaying;
pub use quad::{laplace_quad, laplace_quad_breaks, laplace_quad_complex, t_max, QuadTransform};
pub use semigroup::{semigroup_check, semigroup_convolution, semigroup_density, SampledDensity, SemigroupReport};
