use num_complex::Complex64;

use super::gamma::{csc_pi, polygamma_raw, BERNOULLI_EVEN};
use crate::math::{powi, PI};

const ASYM_FROM: f64 = 16.0;

// Coefficients (2^{2k}−1)·B_{2k}/(2k) of the large-argument expansion
// β(x) ~ 1/(2x) + Σ_k c_k x^{−2k}.
fn asym_coeff(k: usize) -> f64 {
    (powi(2.0, 2 * k as i32) - 1.0) * BERNOULLI_EVEN[k - 1] / (2 * k) as f64
}

/// β via ½(ψ((x+1)/2) − ψ(x/2)).
#[cfg(test)]
fn beta_digamma(x: f64) -> f64 {
    use super::gamma::digamma_raw;
    0.5 * (digamma_raw(0.5 * (x + 1.0)) - digamma_raw(0.5 * x))
}

pub(crate) fn beta_prime_raw(x: f64) -> f64 {
    0.25 * (polygamma_raw(1, 0.5 * (x + 1.0)) - polygamma_raw(1, 0.5 * x))
}

/// β with full relative accuracy: paired recurrence
/// β(x) = 1/(x(x+1)) + β(x+2) until the asymptotic series takes over.
pub(crate) fn beta_relative(x: f64) -> f64 {
    let mut acc = 0.0;
    let mut y = x;
    let mut pairs = [0.0f64; 16];
    let mut np = 0;
    while y < ASYM_FROM {
        pairs[np] = 1.0 / (y * (y + 1.0));
        np += 1;
        y += 2.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut p = inv2;
    let mut tail = 0.0;
    for k in 1..=10 {
        tail += asym_coeff(k) * p;
        p *= inv2;
    }
    acc += 0.5 / y + tail;
    for v in pairs[..np].iter().rev() {
        acc += v;
    }
    acc
}

fn beta_asym_c(y: Complex64) -> Complex64 {
    let inv = y.inv();
    let inv2 = inv * inv;
    let mut p = inv2;
    let mut tail = Complex64::new(0.0, 0.0);
    for k in 1..=10 {
        tail += p * asym_coeff(k);
        p *= inv2;
    }
    inv * 0.5 + tail
}

/// β on ℂ minus the poles {0, −1, −2, …}.
///
/// Right of Re z = 1/2 this is the paired recurrence plus the asymptotic
/// series; elsewhere β(z) = π/sin(πz) − β(1−z).
pub(crate) fn beta_meromorphic(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let w = Complex64::new(1.0, 0.0) - z;
        return csc_pi(z) * PI - beta_meromorphic(w);
    }
    let mut y = z;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pairs = [Complex64::new(0.0, 0.0); 16];
    let mut np = 0;
    if y.norm_sqr() < ASYM_FROM * ASYM_FROM {
        while y.re < ASYM_FROM {
            pairs[np] = (y * (y + 1.0)).inv();
            np += 1;
            y += 2.0;
        }
    }
    acc += beta_asym_c(y);
    for v in pairs[..np].iter().rev() {
        acc += v;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::LN_2;

    #[test]
    fn relative_and_digamma_paths_agree() {
        for &x in &[0.01, 0.5, 1.0, 3.7, 15.9, 16.1, 100.0, 1e4] {
            let a = beta_relative(x);
            let b = beta_digamma(x);
            assert!((a - b).abs() < 1e-13 * (1.0 + a.abs()), "x={x}: {a} vs {b}");
        }
        assert!((beta_relative(1.0) - LN_2).abs() < 1e-15);
    }

    #[test]
    fn relative_accuracy_for_large_argument() {
        // β(x) = 1/(2x) + 1/(4x²) − 1/(8x⁴) + …
        let x = 1e6;
        let expect = 0.5 / x + 0.25 / (x * x);
        assert!(((beta_relative(x) - expect) / expect).abs() < 1e-15);
    }

    #[test]
    fn meromorphic_reflection_and_recurrence() {
        for &(re, im) in &[(-2.5, 0.3), (-30.0, 50.0), (0.2, -4.0), (3.0, 200.0)] {
            let z = Complex64::new(re, im);
            let lhs = beta_meromorphic(z) + beta_meromorphic(z + 1.0);
            assert!((lhs - z.inv()).norm() < 1e-12 * (1.0 + z.inv().norm()), "{z}");
        }
    }
}
