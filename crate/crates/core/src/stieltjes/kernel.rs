use super::measure::RepresentingMeasure;
use crate::error::{Error, Result};
use crate::function::ScalarFunction;
use crate::math::{exp, ln, pow};
use crate::specfun::ln_gamma_raw;

/// `κ(t) = ∫ e^{-ts} dμ(s)`, completely monotonic because μ ≥ 0.
#[derive(Clone, Debug)]
pub struct CmKernel {
    measure: RepresentingMeasure,
}

impl CmKernel {
    pub fn measure(&self) -> &RepresentingMeasure {
        &self.measure
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.measure.kappa_with_bound(t)?.0)
    }

    /// Upper bound on the truncation error of [`CmKernel::eval`] at `t`.
    pub fn bound(&self, t: f64) -> f64 {
        self.measure.tail_bound().laplace(t)
    }
}

impl ScalarFunction for CmKernel {
    fn value(&self, t: f64) -> f64 {
        self.eval(t).unwrap_or(f64::NAN)
    }

    fn derivative(&self, t: f64) -> Option<f64> {
        Some(self.measure.kappa_derivative(t))
    }
}

pub fn kernel_kappa(m: &RepresentingMeasure) -> CmKernel {
    CmKernel { measure: m.clone() }
}

/// `(1/Γ(λ)) ∫ e^{-xt} t^{λ-1} κ(t) dt + c` by quadrature; the Laplace-side
/// route to the same value as [`RepresentingMeasure::eval_with_bound`].
pub fn laplace_representation(m: &RepresentingMeasure, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain("laplace representation needs x > 0", x));
    }
    let lam = m.order();
    let k = kernel_kappa(m);
    let lg = ln_gamma_raw(lam);
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let v = k.eval(t).unwrap_or(f64::NAN);
        v * exp(-x * t + (lam - 1.0) * ln(t) - lg)
    };
    let v = crate::laplace::integrate_decaying(f, x, pow(2.0, -40.0))?;
    Ok(v + m.constant())
}
