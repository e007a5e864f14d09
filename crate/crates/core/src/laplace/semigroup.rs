use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, pow, round};
use crate::quadrature::GaussJacobi;

use super::inversion::{laplace_invert_checked, BetaPower, InversionOptions};

const JACOBI_NODES: usize = 32;
const MAX_CHECK_POINTS: usize = 96;

/// Samples `values[k] = m(t_k)` at `t_k = (k+1)·dt`. The grid starts at `dt`
/// because the density is unbounded at zero when `c < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledDensity {
    pub dt: f64,
    pub values: Vec<f64>,
    /// Smallest value before clipping at zero.
    pub raw_min: f64,
}

impl SampledDensity {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.values.len()).map(move |k| k as f64 * self.dt)
    }
}

fn grid_len(dt: f64, t_max: f64) -> Result<usize> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::domain("grid step must be positive", dt));
    }
    if !(t_max >= dt) || !t_max.is_finite() {
        return Err(Error::domain("grid end must be at least one step", t_max));
    }
    let n = round(t_max / dt) as usize;
    if n > 10_000_000 {
        return Err(Error::invalid("grid has more than 10^7 points"));
    }
    Ok(n.max(1))
}

/// The density `m_c` with `β^c = L(m_c)`, tabulated by numerical inversion.
pub fn semigroup_density(c: f64, dt: f64, t_max: f64) -> Result<SampledDensity> {
    let f = BetaPower::new(c)?;
    let n = grid_len(dt, t_max)?;
    let opts = InversionOptions::default();
    let mut values = Vec::with_capacity(n);
    let mut raw_min = f64::INFINITY;
    for k in 1..=n {
        let v = laplace_invert_checked(&f, k as f64 * dt, &opts)?;
        raw_min = raw_min.min(v);
        if v < -1e-8 {
            return Err(Error::HypothesisViolation(alloc::format!(
                "inverted density is negative ({v:e}) at t = {}",
                k as f64 * dt
            )));
        }
        values.push(v.max(0.0));
    }
    Ok(SampledDensity { dt, values, raw_min })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemigroupReport {
    pub sup_error: f64,
    pub at: f64,
    pub points: usize,
}

// m_c(s)·s^{1−c}, which is smooth at s = 0.
fn regular_part(f: &BetaPower, s: f64, opts: &InversionOptions) -> Result<f64> {
    Ok(laplace_invert_checked(f, s, opts)? * pow(s, 1.0 - f.exponent()))
}

/// `(m_c ∗ m_d)(t)` by Gauss–Jacobi product integration against the
/// endpoint singularities `u^{c−1}(1−u)^{d−1}`.
pub fn semigroup_convolution(c: f64, d: f64, t: f64) -> Result<f64> {
    let fc = BetaPower::new(c)?;
    let fd = BetaPower::new(d)?;
    let gj = GaussJacobi::new(JACOBI_NODES, c, d)?;
    let opts = InversionOptions::default();
    convolve(&fc, &fd, &gj, t, &opts)
}

fn convolve(fc: &BetaPower, fd: &BetaPower, gj: &GaussJacobi, t: f64, opts: &InversionOptions) -> Result<f64> {
    let mut acc = 0.0;
    for (&u, &w) in gj.nodes.iter().zip(&gj.weights) {
        acc += w * regular_part(fc, t * u, opts)? * regular_part(fd, t * (1.0 - u), opts)?;
    }
    Ok(pow(t, fc.exponent() + fd.exponent() - 1.0) * acc)
}

/// `sup_t |(m_c ∗ m_d)(t) − m_{c+d}(t)|` over grid points `k·dt ≤ t_max`,
/// thinned to at most 96 evenly strided points.
pub fn semigroup_check(c: f64, d: f64, dt: f64, t_max: f64) -> Result<SemigroupReport> {
    let fc = BetaPower::new(c)?;
    let fd = BetaPower::new(d)?;
    let fcd = BetaPower::new(c + d)?;
    let n = grid_len(dt, t_max)?;
    let stride = n.div_ceil(MAX_CHECK_POINTS).max(1);
    let gj = GaussJacobi::new(JACOBI_NODES, c, d)?;
    let opts = InversionOptions::default();
    let mut report = SemigroupReport { sup_error: 0.0, at: dt, points: 0 };
    let mut k = stride;
    while k <= n {
        let t = k as f64 * dt;
        let lhs = convolve(&fc, &fd, &gj, t, &opts)?;
        let rhs = laplace_invert_checked(&fcd, t, &opts)?;
        let e = abs(lhs - rhs);
        if e > report.sup_error {
            report.sup_error = e;
            report.at = t;
        }
        report.points += 1;
        k += stride;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::exp;

    #[test]
    fn half_plus_half_is_logistic() {
        let r = semigroup_check(0.5, 0.5, 0.1, 6.0).unwrap();
        assert!(r.sup_error < 1e-6, "{r:?}");
        for &t in &[0.01, 1.0, 4.0] {
            let v = semigroup_convolution(0.5, 0.5, t).unwrap();
            assert!((v - 1.0 / (1.0 + exp(-t))).abs() < 1e-6);
        }
    }

    #[test]
    fn density_grid_and_validation() {
        let s = semigroup_density(1.0, 0.5, 2.0).unwrap();
        assert_eq!(s.values.len(), 4);
        for (t, v) in s.times().zip(&s.values) {
            assert!((v - 1.0 / (1.0 + exp(-t))).abs() < 5e-8);
        }
        assert!(semigroup_density(-0.5, 0.1, 1.0).is_err());
        assert!(semigroup_density(1.0, 0.0, 1.0).is_err());
    }
}
