use num_complex::Complex64;

use crate::math::{ceil, ln, powi, LN_SQRT_2PI, PI};

/// B_2, B_4, …, B_24.
pub(crate) const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

const SHIFT: f64 = 10.0;

fn shift_count(re: f64) -> usize {
    if re >= SHIFT {
        0
    } else {
        ceil(SHIFT - re) as usize
    }
}

fn stirling(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for k in 1..=8 {
        let k2 = 2.0 * k as f64;
        corr += BERNOULLI_EVEN[k - 1] / (k2 * (k2 - 1.0)) * p;
        p *= inv2;
    }
    (y - 0.5) * ln(y) - y + LN_SQRT_2PI + corr
}

pub(crate) fn ln_gamma_raw(x: f64) -> f64 {
    let n = shift_count(x);
    if n == 0 {
        return stirling(x);
    }
    let mut prod = 1.0;
    for k in 0..n {
        prod *= x + k as f64;
    }
    stirling(x + n as f64) - ln(prod)
}

fn psi_asym(y: f64) -> f64 {
    let inv2 = 1.0 / (y * y);
    let mut s = 0.0;
    let mut p = inv2;
    for k in 1..=8 {
        s += BERNOULLI_EVEN[k - 1] / (2.0 * k as f64) * p;
        p *= inv2;
    }
    ln(y) - 0.5 / y - s
}

pub(crate) fn digamma_raw(x: f64) -> f64 {
    let n = shift_count(x);
    let mut acc = psi_asym(x + n as f64);
    for k in (0..n).rev() {
        acc -= 1.0 / (x + k as f64);
    }
    acc
}

/// ψ^{(m)} for m ≥ 1 and x > 0.
pub(crate) fn polygamma_raw(m: u32, x: f64) -> f64 {
    debug_assert!(m >= 1);
    let n = shift_count(x);
    let y = x + n as f64;
    let mf = crate::math::factorial(m);
    let mf1 = crate::math::factorial(m - 1);
    let mut s = mf1 / powi(y, m as i32) + mf / (2.0 * powi(y, m as i32 + 1));
    // (2k+m-1)!/(2k)! as a running product
    let inv2 = 1.0 / (y * y);
    let mut p = powi(y, -(m as i32) - 2);
    for k in 1..=10u32 {
        let mut ratio = 1.0;
        for j in (2 * k + 1)..=(2 * k + m - 1) {
            ratio *= j as f64;
        }
        s += BERNOULLI_EVEN[k as usize - 1] * ratio * p;
        p *= inv2;
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let mut acc = sign * s;
    for k in (0..n).rev() {
        acc += sign * mf / powi(x + k as f64, m as i32 + 1);
    }
    acc
}

fn stirling_c(y: Complex64) -> Complex64 {
    let inv = y.inv();
    let inv2 = inv * inv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for k in 1..=10 {
        let k2 = 2.0 * k as f64;
        corr += p * (BERNOULLI_EVEN[k - 1] / (k2 * (k2 - 1.0)));
        p *= inv2;
    }
    (y - 0.5) * y.ln() - y + LN_SQRT_2PI + corr
}

/// Principal branch of log Γ on ℂ \ (−∞, 0].
pub(crate) fn ln_gamma_complex_raw(z: Complex64) -> Complex64 {
    let n = shift_count(z.re);
    let mut acc = stirling_c(z + n as f64);
    for k in 0..n {
        acc -= (z + k as f64).ln();
    }
    acc
}

fn psi_asym_c(y: Complex64) -> Complex64 {
    let inv = y.inv();
    let inv2 = inv * inv;
    let mut s = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for k in 1..=10 {
        s += p * (BERNOULLI_EVEN[k - 1] / (2.0 * k as f64));
        p *= inv2;
    }
    y.ln() - inv * 0.5 - s
}

/// ψ on ℂ minus the poles; reflection is used left of Re z = 1/2.
pub(crate) fn digamma_complex_raw(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let w = Complex64::new(1.0, 0.0) - z;
        return digamma_complex_raw(w) - cot_pi(z) * PI;
    }
    let n = shift_count(z.re);
    let mut acc = psi_asym_c(z + n as f64);
    for k in (0..n).rev() {
        acc -= (z + k as f64).inv();
    }
    acc
}

pub(crate) fn trigamma_complex_raw(z: Complex64) -> Complex64 {
    let n = shift_count(z.re);
    let y = z + n as f64;
    let inv = y.inv();
    let inv2 = inv * inv;
    let mut s = inv + inv2 * 0.5;
    let mut p = inv2 * inv;
    for k in 1..=10 {
        s += p * BERNOULLI_EVEN[k - 1];
        p *= inv2;
    }
    for k in (0..n).rev() {
        let w = z + k as f64;
        s += (w * w).inv();
    }
    s
}

/// cot(πz), stable for large |Im z|.
pub(crate) fn cot_pi(z: Complex64) -> Complex64 {
    let a = 2.0 * PI * z.re;
    let b = 2.0 * PI * z.im;
    let e = crate::math::exp(-crate::math::abs(b));
    let sgn = if b >= 0.0 { 1.0 } else { -1.0 };
    let num = Complex64::new(2.0 * e * libm::sin(a), -sgn * (1.0 - e * e));
    let den = 1.0 + e * e - 2.0 * e * libm::cos(a);
    num / den
}

/// 1/sin(πz), stable for large |Im z|.
pub(crate) fn csc_pi(z: Complex64) -> Complex64 {
    let a = PI * z.re;
    let b = PI * z.im;
    let e = crate::math::exp(-crate::math::abs(b));
    let sgn = if b >= 0.0 { 1.0 } else { -1.0 };
    let den = Complex64::new(libm::sin(a) * (1.0 + e * e), sgn * libm::cos(a) * (1.0 - e * e));
    Complex64::new(2.0 * e, 0.0) / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::EULER_GAMMA;

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma_raw(1.0).abs() < 1e-14);
        assert!(ln_gamma_raw(2.0).abs() < 1e-14);
        assert!((ln_gamma_raw(0.5) - 0.5 * ln(PI)).abs() < 1e-14);
        // Γ(10) = 9!
        assert!((ln_gamma_raw(10.0) - ln(362880.0)).abs() < 1e-13);
        assert!((ln_gamma_raw(1e-8) + ln(1e-8) + EULER_GAMMA * 1e-8).abs() < 1e-14);
    }

    #[test]
    fn digamma_known_values() {
        assert!((digamma_raw(1.0) + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma_raw(0.5) + EULER_GAMMA + 2.0 * crate::math::LN_2).abs() < 1e-14);
    }

    #[test]
    fn polygamma_values() {
        assert!((polygamma_raw(1, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        // ψ''(1) = -2ζ(3)
        assert!((polygamma_raw(2, 1.0) + 2.0 * 1.202_056_903_159_594_3).abs() < 1e-13);
        // ψ'''(1) = 6ζ(4) = π⁴/15
        assert!((polygamma_raw(3, 1.0) - PI.powi(4) / 15.0).abs() < 1e-12);
    }

    #[test]
    fn complex_agrees_on_real_axis() {
        for &x in &[0.3, 1.0, 2.7, 14.0] {
            let z = Complex64::new(x, 0.0);
            assert!((ln_gamma_complex_raw(z).re - ln_gamma_raw(x)).abs() < 1e-13);
            assert!((digamma_complex_raw(z).re - digamma_raw(x)).abs() < 1e-13);
            assert!((trigamma_complex_raw(z).re - polygamma_raw(1, x)).abs() < 1e-13);
        }
    }

    #[test]
    fn digamma_reflection_matches_recurrence() {
        let z = Complex64::new(-3.3, 0.7);
        let lhs = digamma_complex_raw(z + 1.0) - digamma_complex_raw(z);
        assert!((lhs - z.inv()).norm() < 1e-12);
        let z = Complex64::new(-40.0, 900.0);
        let lhs = digamma_complex_raw(z + 1.0) - digamma_complex_raw(z);
        assert!((lhs - z.inv()).norm() < 1e-12);
    }

    #[test]
    fn ln_gamma_complex_recurrence() {
        let z = Complex64::new(-7.5, 0.3);
        let d = ln_gamma_complex_raw(z + 1.0) - ln_gamma_complex_raw(z) - z.ln();
        assert!(d.re.abs() < 1e-12);
    }
}
