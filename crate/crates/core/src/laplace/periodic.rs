use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, cosh, exp, expm1, floor, sinh};
use crate::quadrature::{integrate_breaks, QuadOptions};

use super::quad::{laplace_quad_breaks, t_max};

const OPTS: QuadOptions = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-13, max_intervals: 4000 };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A periodic profile on `[0, ∞)`, extended evenly to the whole line.
pub trait PeriodicProfile {
    fn period(&self) -> f64;
    /// Value on `[0, ∞)`; negative arguments are reflected.
    fn eval_even(&self, t: f64) -> f64;
    /// Points in `[0, period)` where the profile jumps or has a kink.
    fn kinks(&self) -> Vec<f64>;
    /// `max φ` over one period.
    fn max_value(&self) -> f64;
}

/// `φ(t) = a_k` on `[λ_{k−1}, λ_k)` with `λ_0 = 0`, period `λ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicStep {
    lambdas: Vec<f64>,
    values: Vec<f64>,
}

impl PeriodicStep {
    pub fn new(lambdas: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() || lambdas.len() != values.len() {
            return Err(Error::invalid("step needs as many values as breakpoints"));
        }
        let mut prev = 0.0;
        for &l in &lambdas {
            if !(l > prev) || !l.is_finite() {
                return Err(Error::invalid("step breakpoints must satisfy 0 < λ_1 < … < λ_n"));
            }
            prev = l;
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("step values must be finite"));
        }
        Ok(Self { lambdas, values })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, t: f64) -> f64 {
        let period = self.period();
        let s = t - period * floor(t / period);
        let k = self.lambdas.partition_point(|&l| l <= s).min(self.values.len() - 1);
        self.values[k]
    }

    // Σ_{k<n} (a_k − a_{k+1})(1 − e^{−λ_k y})/(1 − e^{−λ_n y}).
    fn jump_sum(&self, y: f64) -> f64 {
        let n = self.lambdas.len();
        let den = -expm1(-self.lambdas[n - 1] * y);
        let mut acc = 0.0;
        for k in 0..n - 1 {
            acc += (self.values[k] - self.values[k + 1]) * (-expm1(-self.lambdas[k] * y)) / den;
        }
        acc
    }

    fn require_closed(&self) -> Result<()> {
        let n = self.values.len();
        if self.values[0] != self.values[n - 1] {
            return Err(Error::invalid("this form needs a_n = a_1"));
        }
        Ok(())
    }
}

impl PeriodicProfile for PeriodicStep {
    fn period(&self) -> f64 {
        *self.lambdas.last().expect("validated non-empty")
    }

    fn eval_even(&self, t: f64) -> f64 {
        self.eval(abs(t))
    }

    fn kinks(&self) -> Vec<f64> {
        let mut k = vec![0.0];
        k.extend_from_slice(&self.lambdas[..self.lambdas.len() - 1]);
        k
    }

    fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A continuous, piecewise-smooth periodic profile given on one period
/// together with its derivative.
pub struct SmoothPeriodic {
    period: f64,
    phi: RealFn,
    dphi: RealFn,
    kinks: Vec<f64>,
}

impl SmoothPeriodic {
    pub fn new(
        period: f64,
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        dphi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        kinks: Vec<f64>,
    ) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(Error::domain("period must be positive", period));
        }
        if kinks.iter().any(|&k| !(0.0..period).contains(&k)) {
            return Err(Error::invalid("kinks must lie in [0, period)"));
        }
        Ok(Self { period, phi: Box::new(phi), dphi: Box::new(dphi), kinks })
    }

    /// `|t|` on `[−π, π]`, period `2π`.
    pub fn triangle() -> Self {
        use crate::math::PI;
        Self::new(
            2.0 * PI,
            |t| if t <= PI { t } else { 2.0 * PI - t },
            |t| if t < PI { 1.0 } else { -1.0 },
            vec![0.0, PI],
        )
        .expect("valid profile")
    }

    /// `1 − (1 − b/a)·cos(t/√a)` for `a ≥ b ≥ 0`, `a > 0`.
    pub fn cosine(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b >= 0.0 && a >= b) {
            return Err(Error::invalid("cosine profile needs a >= b >= 0 and a > 0"));
        }
        let w = 1.0 / crate::math::sqrt(a);
        let amp = 1.0 - b / a;
        Self::new(
            2.0 * crate::math::PI / w,
            move |t| 1.0 - amp * crate::math::cos(w * t),
            move |t| amp * w * crate::math::sin(w * t),
            vec![0.0],
        )
    }

    /// Value at `t ∈ [0, ∞)` after reduction to one period.
    pub fn eval(&self, t: f64) -> f64 {
        (self.phi)(t - self.period * floor(t / self.period))
    }

    fn panels(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts = vec![lo];
        pts.extend(self.kinks.iter().copied().filter(|&k| k > lo && k < hi));
        pts.push(hi);
        pts
    }
}

impl core::fmt::Debug for SmoothPeriodic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SmoothPeriodic").field("period", &self.period).field("kinks", &self.kinks).finish()
    }
}

impl PeriodicProfile for SmoothPeriodic {
    fn period(&self) -> f64 {
        self.period
    }

    fn eval_even(&self, t: f64) -> f64 {
        self.eval(abs(t))
    }

    fn kinks(&self) -> Vec<f64> {
        self.kinks.clone()
    }

    fn max_value(&self) -> f64 {
        let n = 4096;
        let mut m = f64::NEG_INFINITY;
        for j in 0..=n {
            m = m.max((self.phi)(self.period * j as f64 / n as f64));
        }
        for &k in &self.kinks {
            m = m.max((self.phi)(k));
        }
        m
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("periodic transforms need x > 0", x))
    }
}

fn check_shift(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha must be positive", alpha));
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::domain("beta must be non-negative", beta));
    }
    Ok(())
}

/// Closed-form transform of a periodic step:
/// `(1/(1 − e^{−xT})) Σ a_k (e^{−xλ_{k−1}} − e^{−xλ_k})/x`.
pub fn laplace_periodic(step: &PeriodicStep, x: f64) -> Result<f64> {
    check_x(x)?;
    let den = -expm1(-x * step.period());
    let mut prev = 0.0;
    let mut acc = 0.0;
    for (&l, &a) in step.lambdas.iter().zip(&step.values) {
        acc += a * exp(-x * prev) * (-expm1(-x * (l - prev)));
        prev = l;
    }
    Ok(acc / (x * den))
}

/// Transform of a smooth periodic profile through
/// `φ(0)/x + (1/x)(1 − e^{−Tx})^{−1} ∫_0^T φ′(t) e^{−xt} dt`.
pub fn laplace_periodic_smooth(phi: &SmoothPeriodic, x: f64) -> Result<f64> {
    check_x(x)?;
    let t = phi.period;
    let i = integrate_breaks(|s| (phi.dphi)(s) * exp(-x * s), &phi.panels(0.0, t), OPTS)?.value;
    Ok(((phi.phi)(0.0) + i / (-expm1(-t * x))) / x)
}

/// `(1/x)(a_n + Σ_{k<n} (a_k − a_{k+1})(1 − e^{−λ_k x})/(1 − e^{−λ_n x}))`,
/// which equals the transform of the step when `a_n = a_1`.
pub fn step_f(step: &PeriodicStep, x: f64) -> Result<f64> {
    check_x(x)?;
    step.require_closed()?;
    let n = step.values.len();
    Ok((step.values[n - 1] + step.jump_sum(x)) / x)
}

fn check_step_shift(step: &PeriodicStep, alpha: f64, beta: f64) -> Result<()> {
    check_shift(alpha, beta)?;
    step.require_closed()?;
    if beta > step.lambdas[0] {
        return Err(Error::domain("beta must not exceed the first step length", beta));
    }
    Ok(())
}

/// `a_1 + cosh((β/α)x) Σ_{k<n} (a_k − a_{k+1})(1 − e^{−λ_k x/α})/(1 − e^{−λ_n x/α})`.
pub fn sigma_discrete(step: &PeriodicStep, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    check_step_shift(step, alpha, beta)?;
    Ok(step.values[0] + cosh(beta / alpha * x) * step.jump_sum(x / alpha))
}

/// `max a_j ± 2 sinh((β/α)x) Σ_{k<n} (a_k − a_{k+1})(1 − e^{−λ_k x/α})/(1 − e^{−λ_n x/α})`.
pub fn tau_discrete(step: &PeriodicStep, alpha: f64, beta: f64, x: f64, sign: Sign) -> Result<f64> {
    check_x(x)?;
    check_step_shift(step, alpha, beta)?;
    Ok(step.max_value() + sign.factor() * 2.0 * sinh(beta / alpha * x) * step.jump_sum(x / alpha))
}

fn shifted_integrals(phi: &SmoothPeriodic, alpha: f64, beta: f64, x: f64, odd: bool) -> Result<(f64, f64)> {
    let y = x / alpha;
    let kernel = |s: f64| if odd { sinh(y * (s - beta)) } else { cosh(y * (s - beta)) };
    let head = if beta > 0.0 {
        integrate_breaks(|s| (phi.dphi)(s) * kernel(s), &phi.panels(0.0, beta), OPTS)?.value
    } else {
        0.0
    };
    let t = phi.period;
    let period = integrate_breaks(|s| (phi.dphi)(s) * exp(-y * s), &phi.panels(0.0, t), OPTS)?.value / (-expm1(-t * y));
    Ok((head, period))
}

/// `φ(β) − ∫_0^β φ′(t) cosh((x/α)(t−β)) dt
///   + cosh(βx/α)(1 − e^{−Tx/α})^{−1} ∫_0^T φ′(t) e^{−xt/α} dt`.
pub fn sigma_continuous(phi: &SmoothPeriodic, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    check_shift(alpha, beta)?;
    let (head, period) = shifted_integrals(phi, alpha, beta, x, false)?;
    Ok(phi.eval(beta) - head + cosh(beta * x / alpha) * period)
}

/// `A_φ ± 2(∫_0^β φ′(t) sinh((x/α)(t−β)) dt
///   + sinh(βx/α)(1 − e^{−Tx/α})^{−1} ∫_0^T φ′(t) e^{−xt/α} dt)`.
pub fn tau_continuous(phi: &SmoothPeriodic, alpha: f64, beta: f64, x: f64, sign: Sign) -> Result<f64> {
    check_x(x)?;
    check_shift(alpha, beta)?;
    let (head, period) = shifted_integrals(phi, alpha, beta, x, true)?;
    Ok(phi.max_value() + sign.factor() * 2.0 * (head + sinh(beta * x / alpha) * period))
}

// Points where φ(αt ± β) is non-smooth, up to the truncation point.
fn shift_breaks<P: PeriodicProfile + ?Sized>(phi: &P, alpha: f64, beta: f64, x: f64) -> Vec<f64> {
    let tm = t_max(x);
    let period = phi.period();
    let kinks = phi.kinks();
    let reach = alpha * tm + beta;
    let mut out = Vec::new();
    let mut m = 0.0;
    while m * period <= reach {
        for &k in &kinks {
            let p = k + m * period;
            for t in [(p - beta) / alpha, (p + beta) / alpha, (beta - p) / alpha] {
                if t > 0.0 && t < tm {
                    out.push(t);
                }
            }
        }
        m += 1.0;
        if out.len() > 20000 {
            break;
        }
    }
    out
}

/// `x · ½∫_0^∞ (φ(αt+β) + φ(αt−β)) e^{−xt} dt` by direct quadrature.
pub fn sigma_direct<P: PeriodicProfile + ?Sized>(phi: &P, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    check_shift(alpha, beta)?;
    let br = shift_breaks(phi, alpha, beta, x);
    let v = laplace_quad_breaks(|t| 0.5 * (phi.eval_even(alpha * t + beta) + phi.eval_even(alpha * t - beta)), x, &br)?;
    Ok(x * v)
}

/// `x ∫_0^∞ (A ± (φ(αt+β) − φ(αt−β))) e^{−xt} dt` by direct quadrature.
pub fn tau_direct<P: PeriodicProfile + ?Sized>(phi: &P, alpha: f64, beta: f64, x: f64, sign: Sign) -> Result<f64> {
    check_shift(alpha, beta)?;
    let br = shift_breaks(phi, alpha, beta, x);
    let a = phi.max_value();
    let s = sign.factor();
    let v =
        laplace_quad_breaks(|t| a + s * (phi.eval_even(alpha * t + beta) - phi.eval_even(alpha * t - beta)), x, &br)?;
    Ok(x * v)
}
