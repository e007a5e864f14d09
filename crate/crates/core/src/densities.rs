//! Three infinitely divisible densities on `(0, ∞)`:
//! `ν_a(t) = e^{−at}/(β(a)(1+e^{−t}))`, `τ_a(t) = te^{−at}/(ψ′(a)(1−e^{−t}))`
//! and `d_a(t) = exp(−at − e^{−t})/P(a)`, with tabulated CDFs and
//! inverse-CDF sampling.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::function::FnScalar;
use crate::math::{abs, exp, expm1, ln, sqrt, KahanSum};
use crate::quadrature::{gk21, integrate_breaks, QuadOptions};
use crate::specfun::{beta_prime_raw, beta_relative, polygamma_raw, prym_incomplete};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    NuA,
    TauA,
    HalfGumbelA,
}

impl Family {
    pub fn from_key(key: &str) -> Option<Self> {
        match key {
            "nu_a" | "nu" => Some(Self::NuA),
            "tau_a" | "tau" => Some(Self::TauA),
            "half_gumbel_a" | "half-gumbel" => Some(Self::HalfGumbelA),
            _ => None,
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Self::NuA => "nu_a",
            Self::TauA => "tau_a",
            Self::HalfGumbelA => "half_gumbel_a",
        }
    }

    pub const ALL: [Family; 3] = [Family::NuA, Family::TauA, Family::HalfGumbelA];
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensitySpec {
    family: Family,
    a: f64,
    norm: f64,
}

// P′(x) = −Σ (−1)^n/(n!(x+n)²).
fn prym_derivative(x: f64) -> f64 {
    let mut acc = KahanSum::new();
    let mut inv_fact = 1.0;
    let mut n = 0u32;
    loop {
        let t = inv_fact / ((x + n as f64) * (x + n as f64));
        acc.add(if n % 2 == 0 { -t } else { t });
        if t < 1e-20 * abs(acc.value()) {
            break;
        }
        n += 1;
        inv_fact /= n as f64;
    }
    acc.value()
}

fn normalizer(family: Family, x: f64) -> f64 {
    match family {
        Family::NuA => beta_relative(x),
        Family::TauA => polygamma_raw(1, x),
        Family::HalfGumbelA => prym_incomplete(x),
    }
}

fn normalizer_derivative(family: Family, x: f64) -> f64 {
    match family {
        Family::NuA => beta_prime_raw(x),
        Family::TauA => polygamma_raw(2, x),
        Family::HalfGumbelA => prym_derivative(x),
    }
}

impl DensitySpec {
    pub fn new(family: Family, a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::domain("density parameter a must be positive", a));
        }
        Ok(Self { family, a, norm: normalizer(family, a) })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `β(a)`, `ψ′(a)` or `P(a)`.
    pub fn normalizer(&self) -> f64 {
        self.norm
    }

    fn raw(&self, t: f64) -> f64 {
        let a = self.a;
        match self.family {
            Family::NuA => exp(-a * t) / (1.0 + exp(-t)),
            Family::TauA => {
                if t == 0.0 {
                    1.0
                } else {
                    t * exp(-a * t) / -expm1(-t)
                }
            }
            Family::HalfGumbelA => exp(-a * t - exp(-t)),
        }
    }

    /// Density at `t ≥ 0`; `t = 0` gives the right limit.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::domain("density needs t >= 0", t));
        }
        Ok(self.raw(t) / self.norm)
    }

    fn tail_end(&self) -> f64 {
        // Every raw density is at most (1+t)e^{−at}; stop once that,
        // integrated to infinity, is below 1e−17 of the normalizer.
        let a = self.a;
        let mut t = 1.0 / a;
        while (1.0 + t + 1.0 / a) * exp(-a * t) / a > 1e-17 * self.norm {
            t *= 1.25;
        }
        t
    }

    fn quad_points(&self) -> Vec<f64> {
        let end = self.tail_end();
        let mut pts = Vec::new();
        pts.push(0.0);
        let mut t = end * 1e-6;
        while t < end {
            pts.push(t);
            t *= 1.5;
        }
        pts.push(end);
        pts
    }

    /// `∫_0^∞ g(t)·density(t) dt`.
    pub fn expect<F: FnMut(f64) -> f64>(&self, mut g: F) -> Result<f64> {
        let pts = self.quad_points();
        let opts = QuadOptions { abs_tol: 1e-15, rel_tol: 1e-13, max_intervals: 4000 };
        let r = integrate_breaks(|t| g(t) * self.raw(t), &pts, opts)?;
        Ok(r.value / self.norm)
    }

    /// `∫ density` by quadrature; 1 up to quadrature error.
    pub fn total_mass(&self) -> Result<f64> {
        self.expect(|_| 1.0)
    }

    pub fn mean(&self) -> Result<f64> {
        self.expect(|t| t)
    }

    pub fn variance(&self) -> Result<f64> {
        let m = self.mean()?;
        self.expect(|t| (t - m) * (t - m))
    }

    /// Laplace transform by quadrature.
    pub fn laplace_quad(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::domain("laplace transform needs x >= 0", x));
        }
        self.expect(|t| exp(-x * t))
    }

    /// Laplace transform in closed form: `N(x+a)/N(a)` for the normalizer `N`.
    pub fn laplace_closed(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::domain("laplace transform needs x >= 0", x));
        }
        Ok(normalizer(self.family, x + self.a) / self.norm)
    }

    /// The closed-form transform with its analytic derivative, ready for
    /// `lcm_check`.
    pub fn transform(&self) -> FnScalar {
        let (family, a, norm) = (self.family, self.a, self.norm);
        FnScalar::new(self.family.key(), move |x| normalizer(family, x + a) / norm)
            .with_derivative(move |x| normalizer_derivative(family, x + a) / norm)
    }

    pub fn tabulate(&self) -> Result<Tabulated> {
        Tabulated::new(*self)
    }
}

pub const TABLE_CELLS: usize = 4096;

/// A density with its cumulative integral stored on a fixed grid.
///
/// Cells are uniform in `s = √t` up to the point where the remaining mass
/// is negligible, which keeps them fine near the origin.
#[derive(Clone, Debug)]
pub struct Tabulated {
    spec: DensitySpec,
    knots: Vec<f64>,
    cum: Vec<f64>,
}

impl Tabulated {
    pub fn new(spec: DensitySpec) -> Result<Self> {
        let end = spec.tail_end();
        let root = sqrt(end);
        let knots: Vec<f64> = (0..=TABLE_CELLS)
            .map(|i| {
                let s = root * i as f64 / TABLE_CELLS as f64;
                s * s
            })
            .collect();
        let mut cum = Vec::with_capacity(knots.len());
        let mut acc = KahanSum::new();
        cum.push(0.0);
        let mut f = |t: f64| spec.raw(t);
        for w in knots.windows(2) {
            let (v, _) = gk21(&mut f, w[0], w[1]);
            acc.add(v);
            cum.push(acc.value());
        }
        let total = acc.value();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::Evaluation { x: spec.a, detail: "density table has no mass".into() });
        }
        for c in &mut cum {
            *c /= total;
        }
        Ok(Self { spec, knots, cum })
    }

    pub fn spec(&self) -> &DensitySpec {
        &self.spec
    }

    /// Where the table ends; the CDF is 1 beyond it.
    pub fn support_end(&self) -> f64 {
        *self.knots.last().expect("table is never empty")
    }

    fn total_raw(&self) -> f64 {
        // Raw mass of the first cell divided by its normalized share.
        let mut f = |t: f64| self.spec.raw(t);
        let (v, _) = gk21(&mut f, self.knots[0], self.knots[1]);
        v / self.cum[1]
    }

    fn cell_of(&self, t: f64) -> usize {
        (self.knots.partition_point(|&k| k <= t) - 1).min(TABLE_CELLS - 1)
    }

    fn cdf_in(&self, i: usize, t: f64, total: f64) -> f64 {
        let mut f = |s: f64| self.spec.raw(s);
        let (v, _) = gk21(&mut f, self.knots[i], t);
        (self.cum[i] + v / total).min(self.cum[i + 1])
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        if t.is_nan() {
            return Err(Error::domain("cdf needs a number", t));
        }
        if t <= 0.0 {
            return Ok(0.0);
        }
        if t >= self.support_end() {
            return Ok(1.0);
        }
        let i = self.cell_of(t);
        Ok(self.cdf_in(i, t, self.total_raw()))
    }

    /// Inverse CDF with `|cdf(q) − u| ≤ 1e−10`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain("quantile needs 0 < u < 1", u));
        }
        self.quantile_with(u, self.total_raw())
    }

    fn quantile_with(&self, u: f64, total: f64) -> Result<f64> {
        let i = (self.cum.partition_point(|&c| c <= u) - 1).min(TABLE_CELLS - 1);
        let (mut lo, mut hi) = (self.knots[i], self.knots[i + 1]);
        let width = self.cum[i + 1] - self.cum[i];
        let mut t = if width > 0.0 { lo + (hi - lo) * (u - self.cum[i]) / width } else { lo };
        for _ in 0..200 {
            let g = self.cdf_in(i, t, total) - u;
            if abs(g) <= 1e-12 {
                return Ok(t);
            }
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let d = self.spec.raw(t) / total;
            let newton = t - g / d;
            t = if d > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
        }
        let g = self.cdf_in(i, t, total) - u;
        if abs(g) <= 1e-10 {
            Ok(t)
        } else {
            Err(Error::NonConvergence { what: "quantile bracketing", estimate: t })
        }
    }

    /// `count` draws from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, count)
    }

    /// `count` inverse-CDF draws from a caller-owned generator.
    pub fn sample_with<R: RngCore>(&self, rng: &mut R, count: usize) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(Error::invalid("sample count must be at least 1"));
        }
        let total = self.total_raw();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            // 53 random bits, centred in their cell so u is never 0 or 1.
            let u = ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64);
            out.push(self.quantile_with(u, total)?);
        }
        Ok(out)
    }
}

/// Kolmogorov–Smirnov distance between `samples` and `cdf`.
pub fn ks_statistic<F: FnMut(f64) -> Result<f64>>(samples: &[f64], mut cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::invalid("KS statistic needs samples"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x)?;
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(d)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / sqrt(n as f64)
}

/// Log-density, handy for likelihood checks.
pub fn log_density(spec: &DensitySpec, t: f64) -> Result<f64> {
    Ok(ln(spec.eval(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::PI;
    use crate::monotonicity::{lcm_check, CheckGrid};

    #[test]
    fn closed_form_values() {
        let nu = DensitySpec::new(Family::NuA, 0.5).unwrap();
        let t = 1.0f64;
        assert!((nu.eval(t).unwrap() - 1.0 / (PI * (t / 2.0).cosh())).abs() < 1e-15);
        let tau = DensitySpec::new(Family::TauA, 1.0).unwrap();
        let t = 2.0f64;
        let want = 6.0 / (PI * PI) * t / (t.exp() - 1.0);
        assert!((tau.eval(t).unwrap() - want).abs() < 1e-15);
        let d = DensitySpec::new(Family::HalfGumbelA, 1.0).unwrap();
        assert!((d.normalizer() - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!(DensitySpec::new(Family::NuA, 0.0).is_err());
        assert!(nu.eval(-1.0).is_err());
    }

    #[test]
    fn normalized() {
        for f in Family::ALL {
            for a in [0.1, 0.5, 1.0, 1.5, 7.0] {
                let s = DensitySpec::new(f, a).unwrap();
                assert!((s.total_mass().unwrap() - 1.0).abs() < 1e-9, "{f:?} {a}");
            }
        }
    }

    #[test]
    fn laplace_shift_structure() {
        for f in Family::ALL {
            for a in [0.5, 1.0, 1.5] {
                let s = DensitySpec::new(f, a).unwrap();
                for x in [0.5, 1.0, 5.0] {
                    let q = s.laplace_quad(x).unwrap();
                    let c = s.laplace_closed(x).unwrap();
                    assert!((q - c).abs() < 1e-9, "{f:?} a={a} x={x}: {q} {c}");
                }
                let r = lcm_check(&s.transform(), &CheckGrid::default()).unwrap();
                assert!(r.passed(), "{f:?} a={a}: {r:?}");
            }
        }
    }

    #[test]
    fn quantile_round_trip() {
        for f in Family::ALL {
            let tab = DensitySpec::new(f, 0.7).unwrap().tabulate().unwrap();
            for u in [1e-12, 1e-6, 0.01, 0.25, 0.5, 0.9, 0.999999] {
                let q = tab.quantile(u).unwrap();
                assert!((tab.cdf(q).unwrap() - u).abs() <= 1e-10, "{f:?} {u}");
            }
            assert!(tab.quantile(1e-300).unwrap() < 1e-200);
            assert!(tab.quantile(0.0).is_err());
        }
    }

    #[test]
    fn median_against_antiderivative() {
        // ∫_0^t dt/(π cosh(t/2)) = (4/π)·atan(tanh(t/4)).
        let tab = DensitySpec::new(Family::NuA, 0.5).unwrap().tabulate().unwrap();
        let m = tab.quantile(0.5).unwrap();
        let cdf = 4.0 / PI * (m / 4.0).tanh().atan();
        assert!((cdf - 0.5).abs() < 1e-10);
        let want = 4.0 * (PI / 8.0).tan().atanh();
        assert!((m - want).abs() < 1e-9);
    }

    #[test]
    fn sampling() {
        let tab = DensitySpec::new(Family::NuA, 1.0).unwrap().tabulate().unwrap();
        let a = tab.sample(10_000, 7).unwrap();
        assert_eq!(a, tab.sample(10_000, 7).unwrap());
        assert!(a.iter().all(|&t| t > 0.0));
        let d = ks_statistic(&a, |t| tab.cdf(t)).unwrap();
        assert!(d < ks_critical_1pct(a.len()), "{d}");
        assert!(tab.sample(0, 1).is_err());
    }
}
