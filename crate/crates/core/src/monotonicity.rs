//! Grid checks for complete monotonicity and its relatives, the Pick
//! property on the upper half plane, and the explicit zero that keeps
//! `g_c` out of the logarithmically completely monotonic class.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::ScalarFunction;
use crate::math::{abs, binomial, cos, pow, sin, KahanSum, PI};

pub use crate::math::{lin_space, log_space};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckGrid {
    x_points: Vec<f64>,
    h_ratio: f64,
    n_max: usize,
}

impl Default for CheckGrid {
    fn default() -> Self {
        Self { x_points: log_space(0.05, 100.0, 32), h_ratio: 1.0 / 16.0, n_max: 8 }
    }
}

impl CheckGrid {
    /// Differences at `x` use the step `h = h_ratio · x`.
    pub fn new(x_points: Vec<f64>, h_ratio: f64, n_max: usize) -> Result<Self> {
        if x_points.is_empty() || x_points.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::invalid("grid points must be positive and finite"));
        }
        if x_points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("grid points must be strictly increasing"));
        }
        if !(h_ratio > 0.0) || !h_ratio.is_finite() {
            return Err(Error::domain("difference step ratio must be positive", h_ratio));
        }
        if n_max == 0 || n_max > 30 {
            return Err(Error::invalid("difference order must be in 1..=30"));
        }
        Ok(Self { x_points, h_ratio, n_max })
    }

    pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) || count < 2 {
            return Err(Error::invalid("log grid needs 0 < lo < hi and at least two points"));
        }
        Self::new(log_space(lo, hi, count), 1.0 / 16.0, 8)
    }

    pub fn with_order(mut self, n_max: usize) -> Result<Self> {
        Self::new(core::mem::take(&mut self.x_points), self.h_ratio, n_max)
    }

    pub fn points(&self) -> &[f64] {
        &self.x_points
    }

    pub fn h(&self, x: f64) -> f64 {
        self.h_ratio * x
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub n: usize,
    pub value: f64,
    pub slack: f64,
}

const MAX_WITNESSES: usize = 64;

/// `worst_margin` is the smallest `value + slack` seen; it is negative
/// exactly when the verdict is a failure.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn empty() -> Self {
        Self { verdict: Verdict::Pass, worst_margin: f64::INFINITY, witnesses: Vec::new() }
    }

    pub fn record(&mut self, w: Witness) {
        let margin = w.value + w.slack;
        if margin < self.worst_margin || self.worst_margin.is_nan() {
            self.worst_margin = margin;
        }
        if w.value < -w.slack || w.value.is_nan() {
            self.verdict = Verdict::Fail;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Combined verdict of several checks.
    pub fn merge(mut self, other: CheckReport) -> Self {
        if other.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
        self.worst_margin = self.worst_margin.min(other.worst_margin);
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self
    }
}

fn finite_at(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { x, detail: alloc::format!("non-finite value {v}") })
    }
}

/// `(−1)^n Δ_h^n f(x) = Σ_j (−1)^j C(n,j) f(x+jh) ≥ −16·2^n·ε·max|f(x+jh)|`
/// for every grid point and `n ≤ n_max`.
pub fn cm_check_fn<F: FnMut(f64) -> Result<f64>>(mut f: F, grid: &CheckGrid) -> Result<CheckReport> {
    let mut report = CheckReport::empty();
    let mut vals = Vec::with_capacity(grid.n_max + 1);
    for &x in &grid.x_points {
        let h = grid.h(x);
        vals.clear();
        for j in 0..=grid.n_max {
            let xj = x + j as f64 * h;
            vals.push(finite_at(f(xj)?, xj)?);
        }
        let mut scale: f64 = 0.0;
        for n in 0..=grid.n_max {
            scale = scale.max(abs(vals[n]));
            let mut acc = KahanSum::new();
            for (j, &v) in vals.iter().enumerate().take(n + 1) {
                let c = binomial(n as u32, j as u32);
                acc.add(if j % 2 == 0 { c * v } else { -c * v });
            }
            let slack = 16.0 * pow(2.0, n as f64) * f64::EPSILON * scale;
            report.record(Witness { x, n, value: acc.value(), slack });
        }
    }
    Ok(report)
}

pub fn cm_check(f: &dyn ScalarFunction, grid: &CheckGrid) -> Result<CheckReport> {
    cm_check_fn(|x| Ok(f.value(x)), grid)
}

/// `f′(x)`, analytic when available, else a central difference with step `x·10⁻⁶`.
/// The difference carries relative noise near `10⁻¹⁰`, which high-order
/// checks of `−f′/f` can pick up; supply the derivative when it is known.
pub fn derivative_of(f: &dyn ScalarFunction, x: f64) -> f64 {
    match f.derivative(x) {
        Some(d) => d,
        None => {
            let h = x * 1e-6;
            (f.value(x + h) - f.value(x - h)) / (2.0 * h)
        }
    }
}

/// `cm_check` of `−f′/f`, after confirming `f > 0` wherever it is sampled.
pub fn lcm_check(f: &dyn ScalarFunction, grid: &CheckGrid) -> Result<CheckReport> {
    let mut positivity = CheckReport::empty();
    for &x in &grid.x_points {
        let h = grid.h(x);
        for j in 0..=grid.n_max {
            let xj = x + j as f64 * h;
            let v = finite_at(f.value(xj), xj)?;
            if !(v > 0.0) {
                positivity.record(Witness { x: xj, n: 0, value: v, slack: 0.0 });
                positivity.verdict = Verdict::Fail;
            }
        }
    }
    if !positivity.passed() {
        if positivity.witnesses.is_empty() {
            positivity.worst_margin = positivity.worst_margin.min(0.0);
        }
        return Ok(positivity);
    }
    cm_check_fn(|x| Ok(-derivative_of(f, x) / f.value(x)), grid)
}

pub const HORN_POWERS: [f64; 5] = [0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 2.0];

/// `cm_check` of `f^α` for each `α`; fails if any power fails.
pub fn horn_check(f: &dyn ScalarFunction, alphas: &[f64], grid: &CheckGrid) -> Result<CheckReport> {
    if alphas.is_empty() || alphas.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
        return Err(Error::invalid("Horn powers must be positive"));
    }
    let mut total = CheckReport::empty();
    for &a in alphas {
        let r = cm_check_fn(
            |x| {
                let v = f.value(x);
                if v > 0.0 {
                    Ok(pow(v, a))
                } else {
                    Err(Error::Evaluation { x, detail: alloc::format!("f must be positive, got {v}") })
                }
            },
            grid,
        )?;
        total = total.merge(r);
    }
    Ok(total)
}

/// Sampling rectangle `Re z ∈ [−X, X]`, `Im z ∈ (0, Y]`, with points closer
/// than `exclusion` to `(−∞, 0]` removed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PickRegion {
    pub half_width: f64,
    pub height: f64,
    pub nx: usize,
    pub ny: usize,
    pub exclusion: f64,
}

impl Default for PickRegion {
    fn default() -> Self {
        Self { half_width: 20.0, height: 20.0, nx: 40, ny: 40, exclusion: 0.1 }
    }
}

impl PickRegion {
    pub fn points(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for j in 1..=self.ny {
            let y = self.height * j as f64 / self.ny as f64;
            for i in 0..self.nx {
                let x = -self.half_width + 2.0 * self.half_width * i as f64 / (self.nx - 1).max(1) as f64;
                let z = Complex64::new(x, y);
                let dist = if x <= 0.0 { y } else { z.norm() };
                if dist >= self.exclusion {
                    out.push(z);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PickWitness {
    pub z: Complex64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PickReport {
    pub verdict: Verdict,
    pub min_im: f64,
    pub sup_im: f64,
    pub points: usize,
    pub witnesses: Vec<PickWitness>,
}

impl PickReport {
    /// The same result in the real-axis report shape (`x = Re z`, `n = 0`).
    pub fn to_check_report(&self) -> CheckReport {
        CheckReport {
            verdict: self.verdict,
            worst_margin: self.min_im + PICK_FLOOR,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| Witness { x: w.z.re, n: 0, value: w.im, slack: PICK_FLOOR })
                .collect(),
        }
    }
}

pub const PICK_FLOOR: f64 = 1e-10;

/// `Im h(z) ≥ −10⁻¹⁰` on the sampled region.
pub fn pick_check<H: FnMut(Complex64) -> Result<Complex64>>(mut h: H, region: &PickRegion) -> Result<PickReport> {
    if region.nx < 2 || region.ny < 1 || !(region.half_width > 0.0) || !(region.height > 0.0) {
        return Err(Error::invalid("pick region needs a non-degenerate grid"));
    }
    let mut report = PickReport {
        verdict: Verdict::Pass,
        min_im: f64::INFINITY,
        sup_im: f64::NEG_INFINITY,
        points: 0,
        witnesses: Vec::new(),
    };
    for z in region.points() {
        let v = h(z)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Evaluation { x: z.re, detail: alloc::format!("non-finite value at {z}") });
        }
        report.points += 1;
        report.min_im = report.min_im.min(v.im);
        report.sup_im = report.sup_im.max(v.im);
        if v.im < -PICK_FLOOR {
            report.verdict = Verdict::Fail;
            if report.witnesses.len() < MAX_WITNESSES {
                report.witnesses.push(PickWitness { z, im: v.im });
            }
        }
    }
    Ok(report)
}

/// A zero of `g_c` in the right half plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Counterexample {
    pub r: f64,
    pub c: f64,
    pub z: Complex64,
    pub residual: f64,
}

/// `g_c(z) = (c/(1+c)) z^{−r} + (1/(1+c)) (z+1)^{−r}`.
pub fn g_c(r: f64, c: f64, z: Complex64) -> Complex64 {
    let a = (-r * z.ln()).exp();
    let b = (-r * (z + 1.0).ln()).exp();
    (a * c + b) / (1.0 + c)
}

/// With `ρ = 0.8 cos(π/r)`, `w = ρe^{iπ/r}` satisfies `w^r = −c` for `c = ρ^r`,
/// so `z = w/(1−w)` is a zero of `g_c` with `Re z > 0`.
pub fn find_lcm_counterexample(r: f64) -> Result<Counterexample> {
    if !(r > 2.0) || !r.is_finite() {
        return Err(Error::domain("the counterexample needs r > 2", r));
    }
    let th = PI / r;
    let rho = 0.8 * cos(th);
    let w = Complex64::new(rho * cos(th), rho * sin(th));
    let c = pow(rho, r);
    let z = w / (Complex64::new(1.0, 0.0) - w);
    let residual = g_c(r, c, z).norm();
    Ok(Counterexample { r, c, z, residual })
}

/// `h(t) = t − sin t + c(1 − cos t − ½ t sin t) ≥ −10⁻¹²` at 2000 points of `(0, 50]`.
pub fn lemma_pos_check(c: f64) -> Result<CheckReport> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::domain("lemma needs 0 <= c <= 1", c));
    }
    let mut report = CheckReport::empty();
    for i in 1..=2000 {
        let t = 50.0 * i as f64 / 2000.0;
        report.record(Witness { x: t, n: 0, value: lemma_pos_h(c, t), slack: 1e-12 });
    }
    Ok(report)
}

pub fn lemma_pos_h(c: f64, t: f64) -> f64 {
    t - sin(t) + c * (1.0 - cos(t) - 0.5 * t * sin(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FnScalar;
    use crate::math::{exp, sinh, tanh};
    use crate::specfun::{beta_prime_raw, beta_relative, ln_gamma_complex_raw};

    fn beta() -> FnScalar {
        FnScalar::new("beta", beta_relative).with_derivative(beta_prime_raw)
    }

    #[test]
    fn cm_examples() {
        let g = CheckGrid::default();
        assert!(cm_check(&FnScalar::new("exp", |x| exp(-x)), &g).unwrap().passed());
        let r = cm_check(&FnScalar::new("sin", |x| sin(x) + 2.0), &g).unwrap();
        assert!(!r.passed());
        assert!(r.witnesses.iter().any(|w| w.n <= 2));
        assert!(r.worst_margin < 0.0);
        assert!(cm_check(&beta(), &g).unwrap().passed());
        assert!(!cm_check(&FnScalar::new("x", |x| x), &g).unwrap().passed());
    }

    #[test]
    fn lcm_examples() {
        let g = CheckGrid::default();
        assert!(lcm_check(&beta(), &g).unwrap().passed());
        let csch = FnScalar::new("csch", |x| 1.0 / sinh(x)).with_derivative(|x| -1.0 / (sinh(x) * tanh(x)));
        assert!(lcm_check(&csch, &g).unwrap().passed());
        assert!(!lcm_check(&FnScalar::new("exp", exp), &g).unwrap().passed());
        let neg = FnScalar::new("neg", |x| 1.0 - x);
        let r = lcm_check(&neg, &g).unwrap();
        assert!(!r.passed() && r.witnesses[0].n == 0);
    }

    #[test]
    fn horn_examples() {
        let g = CheckGrid::default();
        assert!(horn_check(&beta(), &[0.5], &g).unwrap().passed());
        assert!(horn_check(&FnScalar::new("inv", |x| 1.0 / x), &HORN_POWERS, &g).unwrap().passed());
        assert!(horn_check(&FnScalar::new("one", |_| 1.0), &HORN_POWERS, &g).unwrap().passed());
        assert!(horn_check(&beta(), &[], &g).is_err());
    }

    #[test]
    fn pick_examples() {
        let reg = PickRegion::default();
        let r = pick_check(|z| Ok(-z.inv()), &reg).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let s = 0.5;
        let lg = |z: Complex64| ln_gamma_complex_raw(z + s) - ln_gamma_complex_raw(z);
        let r = pick_check(|z| Ok(lg(z)), &reg).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.sup_im < PI, "{}", r.sup_im);
        let r = pick_check(|z| Ok(lg(z).exp()), &reg).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = pick_check(|z| Ok(z * z), &reg).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        for k in 0..10 {
            let z = Complex64::new(-5.0 + k as f64, 0.3 + 0.7 * k as f64);
            assert!((lg(z.conj()) - lg(z).conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn counterexample_for_cubic() {
        let ce = find_lcm_counterexample(3.0).unwrap();
        assert!((ce.c - 0.064).abs() < 1e-15);
        assert!((ce.z.re - 0.052632).abs() < 1e-6 && (ce.z.im - 0.455803).abs() < 1e-6, "{}", ce.z);
        assert!(ce.residual < 1e-10);
        for r in [2.5, 2.01] {
            let ce = find_lcm_counterexample(r).unwrap();
            assert!(ce.z.re > 0.0 && ce.residual < 1e-10);
        }
        assert!(find_lcm_counterexample(2.0).is_err());
    }

    #[test]
    fn lemma_positivity() {
        for c in [0.0, 0.5, 1.0] {
            assert!(lemma_pos_check(c).unwrap().passed());
        }
        assert!((lemma_pos_h(0.5, PI) - (PI + 1.0)).abs() < 1e-14);
        assert!(lemma_pos_check(1.5).is_err());
    }
}
