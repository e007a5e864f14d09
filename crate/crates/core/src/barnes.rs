//! The Stirling remainder kernel `Q`, the Barnes remainder kernels `p_n`
//! and the even remainders `R_{2,2n}` of the double gamma expansion.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, exp, floor, ln, pow, powi, sinh, tanh, LN_SQRT_2PI, PI};
use crate::quadrature::fixed_panels;
use crate::specfun::{ln_gamma_raw, zeta_raw};

/// `Q(t) = ½(f − f²)` with `f = t − [t]`.
pub fn q_kernel(t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain("Q needs t >= 0", t));
    }
    let f = t - floor(t);
    Ok(0.5 * (f - f * f))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StirlingCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Bound on what the homogenized tail beyond the last period can miss.
    pub tail_bound: f64,
}

const STIRLING_PERIODS: usize = 1 << 14;

/// `log Γ(x) − ((x−½)log x − x + ½log 2π)` against `∫_0^∞ Q(t)/(x+t)² dt`.
///
/// The integral is summed period by period up to `T = 2^14`; beyond it `Q`
/// is replaced by its mean `1/12`, which leaves at most
/// `2·max|∫(Q − 1/12)|/(x+T)² < 0.0163/(x+T)²`.
pub fn stirling_remainder(x: f64) -> Result<StirlingCheck> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("Stirling remainder needs x > 0", x));
    }
    let lhs = ln_gamma_raw(x) - ((x - 0.5) * ln(x) - x + LN_SQRT_2PI);
    let mut acc = crate::math::KahanSum::new();
    for m in 0..STIRLING_PERIODS {
        let a = x + m as f64;
        acc.add(fixed_panels(|u| 0.5 * (u - u * u) / ((a + u) * (a + u)), &[0.0, 0.5, 1.0]));
    }
    let w = x + STIRLING_PERIODS as f64;
    acc.add(1.0 / (12.0 * w));
    Ok(StirlingCheck { lhs, rhs: acc.value(), tail_bound: 0.0163 / (w * w) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarnesKernelParams {
    pub n: u32,
    pub k_cap: usize,
}

impl BarnesKernelParams {
    pub const MAX_N: u32 = 8;

    pub fn new(n: u32) -> Result<Self> {
        Self::with_cap(n, 10_000)
    }

    pub fn with_cap(n: u32, k_cap: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX_N {
            return Err(Error::invalid("Barnes kernel index must be in 1..=8"));
        }
        if k_cap < 100 {
            return Err(Error::invalid("series cap must be at least 100"));
        }
        Ok(Self { n, k_cap })
    }
}

// Terms of the small-a expansions; 0.25^30 is below 1e-18.
const SMALL_A: f64 = 0.5;
const SMALL_TERMS: usize = 32;

/// ζ(2j) for `j = 0, 1, …` as needed by the kernel sums.
struct ZetaTable(Vec<f64>);

impl ZetaTable {
    fn new(n: u32) -> Self {
        let len = n as usize + SMALL_TERMS + 4;
        Self((0..len).map(|j| if j == 0 { -0.5 } else { zeta_raw(2.0 * j as f64) }).collect())
    }

    fn even(&self, j: usize) -> f64 {
        self.0[j]
    }
}

/// `S_m(a) = Σ_k k^{−2m}/(k²+a²)` and `T_m(a) = Σ_k k^{−2m}/(k²+a²)²`
/// for `m = 0..=top`.
fn kernel_sums(a: f64, top: usize, z: &ZetaTable) -> (Vec<f64>, Vec<f64>) {
    let mut s = Vec::with_capacity(top + 1);
    let mut s2 = Vec::with_capacity(top + 1);
    let a2 = a * a;
    if a < SMALL_A {
        for m in 0..=top {
            let (mut acc, mut acc2, mut p) = (0.0, 0.0, 1.0);
            for j in 0..SMALL_TERMS {
                acc += p * z.even(m + 1 + j);
                acc2 += (j + 1) as f64 * p * z.even(m + 2 + j);
                p *= -a2;
            }
            s.push(acc);
            s2.push(acc2);
        }
        return (s, s2);
    }
    let y = PI * a;
    let coth = 1.0 / tanh(y);
    let csch2 = if y > 350.0 { 0.0 } else { 1.0 / (sinh(y) * sinh(y)) };
    let s0 = (y * coth - 1.0) / (2.0 * a2);
    // T_0 = −S_0′(a)/(2a).
    let ds0 = PI * (coth - y * csch2) / (2.0 * a2) - (y * coth - 1.0) / (a2 * a);
    s.push(s0);
    s2.push(-ds0 / (2.0 * a));
    for m in 1..=top {
        let sm = (z.even(m) - s[m - 1]) / a2;
        s2.push((sm - s2[m - 1]) / a2);
        s.push(sm);
    }
    (s, s2)
}

fn kernel_with(t: f64, n: u32, z: &ZetaTable) -> f64 {
    let a = t / (2.0 * PI);
    let n = n as usize;
    let (s, s2) = kernel_sums(a, n, z);
    let bracket = 2.0 * s[n - 1] + 2.0 * a / PI * s2[n - 1] + (2 * n - 1) as f64 * a / PI * s[n];
    pow(2.0 * PI, -2.0 * n as f64) / (t * t) * bracket
}

/// `p_n(t)` through the closed forms of `Σ k^{−2m}/(k²+a²)` and
/// `Σ k^{−2m}/(k²+a²)²` with `a = t/2π`.
pub fn p_kernel(t: f64, params: &BarnesKernelParams) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("p_n needs t > 0", t));
    }
    let z = ZetaTable::new(params.n);
    Ok(kernel_with(t, params.n, &z))
}

/// `p_n(t)` by summing the defining series to `k_cap`, plus the midpoint
/// integral of its leading asymptotic terms. Returns `(value, bound)`.
pub fn p_kernel_series(t: f64, params: &BarnesKernelParams, tol: f64) -> Result<(f64, f64)> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("p_n needs t > 0", t));
    }
    let n = params.n as i32;
    let cap = params.k_cap;
    if (cap as f64) < 10.0 * t {
        return Err(Error::CapTooSmall { cap, bound: f64::INFINITY, tol });
    }
    let t2 = t * t;
    let mut acc = crate::math::KahanSum::new();
    for k in (1..=cap).rev() {
        let u = 2.0 * PI * k as f64;
        let d = t2 + u * u;
        let term = powi(u, 1 - 2 * n) * (2.0 * u / d + 4.0 * u * t / (d * d) + (2 * n - 1) as f64 * 2.0 * t / (u * d));
        acc.add(term);
    }
    // term_k = u^{−2n}(2 + c₂u^{−2} + O(u^{−4})), c₂ = 4t + 2(2n−1)t − 2t².
    let kk = cap as f64 + 0.5;
    let c2 = 4.0 * t + 2.0 * (2 * n - 1) as f64 * t - 2.0 * t2;
    let tp = 2.0 * PI;
    let lead = 2.0 * powi(tp, -2 * n) * pow(kk, (1 - 2 * n) as f64) / (2 * n - 1) as f64;
    let second = c2 * powi(tp, -2 * n - 2) * pow(kk, (-1 - 2 * n) as f64) / (2 * n + 1) as f64;
    let bound = (abs(second)
        + 2.0 * powi(tp, -2 * n) * (2 * n * (2 * n + 1)) as f64 / 24.0 * pow(kk, (-1 - 2 * n) as f64))
        / t2;
    let value = (acc.value() + lead + second) / t2;
    if bound > tol * abs(value) {
        return Err(Error::CapTooSmall { cap, bound, tol });
    }
    Ok((value, bound))
}

/// `R_{2,2n}(w) = ∫_0^∞ e^{−wt} t^{2n} p_n(t) dt` on fixed geometric panels,
/// so the result is smooth in `w`.
pub fn r_2_2n(w: f64, n: u32) -> Result<f64> {
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::domain("R_{2,2n} needs w > 0", w));
    }
    let params = BarnesKernelParams::new(n)?;
    let z = ZetaTable::new(params.n);
    let tm = crate::laplace::t_max(w);
    let mut pts = Vec::with_capacity(200);
    pts.push(0.0);
    let mut t = tm * exp(-40.0 * core::f64::consts::LN_2);
    while t < tm {
        pts.push(t);
        t *= 1.2;
    }
    pts.push(tm);
    let v =
        fixed_panels(|t| if t > 0.0 { exp(-w * t) * powi(t, 2 * n as i32) * kernel_with(t, n, &z) } else { 0.0 }, &pts);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotonicity::{cm_check_fn, lemma_pos_check, log_space, CheckGrid};

    #[test]
    fn q_values() {
        assert_eq!(q_kernel(0.0).unwrap(), 0.0);
        assert_eq!(q_kernel(0.5).unwrap(), 0.125);
        assert_eq!(q_kernel(2.5).unwrap(), 0.125);
        assert!(q_kernel(-1.0).is_err());
    }

    #[test]
    fn stirling_identity() {
        let s = stirling_remainder(1.0).unwrap();
        assert!((s.lhs - (1.0 - LN_SQRT_2PI)).abs() < 1e-14);
        for &x in &[0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
            let s = stirling_remainder(x).unwrap();
            assert!((s.lhs - s.rhs).abs() < 1e-7, "{x}: {s:?}");
            assert!(s.tail_bound < 0.125 / (x + STIRLING_PERIODS as f64));
        }
        let s = stirling_remainder(10.0).unwrap();
        assert!((s.lhs * 120.0 - 1.0).abs() < 0.05);
        let s = stirling_remainder(1e4).unwrap();
        assert!((s.lhs * 12e4 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn kernel_matches_series() {
        let p = BarnesKernelParams::with_cap(1, 1_000_000).unwrap();
        let (v, b) = p_kernel_series(1.0, &p, 1e-10).unwrap();
        let c = p_kernel(1.0, &p).unwrap();
        assert!((v - c).abs() < 1e-10 * c, "{v} {c} {b}");
        for n in 1..=3 {
            let p = BarnesKernelParams::with_cap(n, 20_000).unwrap();
            for &t in &[0.01, 0.3, 3.0, 3.2, 40.0] {
                let (v, _) = p_kernel_series(t, &p, 1e-6).unwrap();
                let c = p_kernel(t, &p).unwrap();
                assert!((v - c).abs() < 1e-11 * c, "n={n} t={t}: {v} {c}");
            }
        }
    }

    #[test]
    fn kernel_is_positive_and_decreasing() {
        for n in 1..=3 {
            let p = BarnesKernelParams::new(n).unwrap();
            let mut prev = f64::INFINITY;
            for t in log_space(0.01, 100.0, 100) {
                let v = p_kernel(t, &p).unwrap();
                assert!(v > 0.0);
                if n == 1 {
                    assert!(v < prev);
                }
                prev = v;
            }
        }
        for n in 1..=2 {
            let p = BarnesKernelParams::new(n).unwrap();
            let g = CheckGrid::default().with_order(6).unwrap();
            assert!(cm_check_fn(|t| p_kernel(t, &p), &g).unwrap().passed(), "n={n}");
        }
        assert!(BarnesKernelParams::new(0).is_err());
        assert!(BarnesKernelParams::with_cap(1, 10).is_err());
    }

    #[test]
    fn remainder_integral() {
        let r5 = r_2_2n(5.0, 1).unwrap();
        let r10 = r_2_2n(10.0, 1).unwrap();
        assert!(r10 > 0.0 && r10 < r5);
        // t²p_1(t) → 1/12 at the origin, so w·R_{2,2}(w) → 1/12.
        let w = 1e3;
        assert!((w * r_2_2n(w, 1).unwrap() - 1.0 / 12.0).abs() < 1e-2);
        let g = CheckGrid::log_spaced(0.5, 50.0, 12).unwrap();
        assert!(cm_check_fn(|w| r_2_2n(w, 1), &g).unwrap().passed());
    }

    #[test]
    fn positivity_objects() {
        for k in [1.0, 2.0, 10.0] {
            assert!(lemma_pos_check(1.0 / (PI * k)).unwrap().passed());
        }
    }
}
