use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::ScalarFunction;
use crate::math::{abs, cos, exp, ln, sin, PI};
use crate::quadrature::{integrate_breaks, QuadOptions};

const OPTS: QuadOptions = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-12, max_intervals: 6000 };

/// Truncation point of the forward transform: `e^{-x t_max}` is below `e^{-36}/(1+1/x)`.
pub fn t_max(x: f64) -> f64 {
    (36.0 + ln(1.0 + 1.0 / x)) / x
}

// Geometric panels toward 0 so endpoint singularities and the decay scale are
// both resolved.
fn decaying_points(x: f64, extra: &[f64]) -> Vec<f64> {
    let tm = t_max(x);
    let mut pts = Vec::with_capacity(48 + extra.len());
    pts.push(0.0);
    for k in (0..40).rev() {
        pts.push(tm * exp(-(k as f64) * core::f64::consts::LN_2));
    }
    pts.extend(extra.iter().copied().filter(|&b| b > 0.0 && b < tm));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `∫_0^{t_max(x)} f(t) dt` for an integrand already carrying `e^{-xt}`.
pub(crate) fn integrate_decaying<F: FnMut(f64) -> f64>(f: F, x: f64, _t_min: f64) -> Result<f64> {
    let pts = decaying_points(x, &[]);
    Ok(integrate_breaks(f, &pts, OPTS)?.value)
}

/// `∫_0^∞ e^{-xt} f(t) dt` by adaptive quadrature on `[0, t_max(x)]`.
pub fn laplace_quad(f: &dyn ScalarFunction, x: f64) -> Result<f64> {
    laplace_quad_breaks(|t| f.value(t), x, &[])
}

/// [`laplace_quad`] for a closure, with extra panel boundaries at known
/// jumps or kinks of `f`.
pub fn laplace_quad_breaks<F: Fn(f64) -> f64>(f: F, x: f64, breaks: &[f64]) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("laplace transform needs x > 0", x));
    }
    let pts = decaying_points(x, breaks);
    let r = integrate_breaks(|t| if t > 0.0 { f(t) * exp(-x * t) } else { 0.0 }, &pts, OPTS)?;
    if !r.value.is_finite() {
        return Err(Error::Evaluation { x, detail: "non-finite transform".into() });
    }
    Ok(r.value)
}

/// `∫_0^∞ e^{-zt} f(t) dt` for `Re z > 0`, real and imaginary parts separately.
pub fn laplace_quad_complex<F: Fn(f64) -> f64>(f: F, z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) {
        return Err(Error::domain("complex laplace transform needs Re z > 0", z.re));
    }
    let tm = t_max(z.re);
    let mut extra = Vec::new();
    if z.im != 0.0 {
        // Panels of two oscillation periods, capped so the rule stays affordable.
        let step = (4.0 * PI / abs(z.im)).max(tm / 2000.0);
        let mut t = step;
        while t < tm {
            extra.push(t);
            t += step;
        }
    }
    let pts = decaying_points(z.re, &extra);
    let opts = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-11, max_intervals: 20000 };
    let re = integrate_breaks(|t| if t > 0.0 { f(t) * exp(-z.re * t) * cos(z.im * t) } else { 0.0 }, &pts, opts)?;
    let im = integrate_breaks(|t| if t > 0.0 { -f(t) * exp(-z.re * t) * sin(z.im * t) } else { 0.0 }, &pts, opts)?;
    Ok(Complex64::new(re.value, im.value))
}

/// The forward transform of a density as a [`ScalarFunction`], defined on
/// the right half plane only.
pub struct QuadTransform<F> {
    f: F,
}

impl<F: Fn(f64) -> f64 + Send + Sync> QuadTransform<F> {
    pub fn new(f: F) -> Self {
        Self { f }
    }
}

impl<F: Fn(f64) -> f64 + Send + Sync> ScalarFunction for QuadTransform<F> {
    fn value(&self, x: f64) -> f64 {
        laplace_quad_breaks(&self.f, x, &[]).unwrap_or(f64::NAN)
    }

    fn complex(&self, z: Complex64) -> Option<Complex64> {
        laplace_quad_complex(&self.f, z).ok()
    }
}
