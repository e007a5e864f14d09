use num_complex::Complex64;

use crate::math::{abs, cos, ln, sin, EULER_GAMMA, FRAC_PI_2};

const SWITCH: f64 = 4.0;

/// Returns (si, ci) with si(x) = −∫_x^∞ sin t/t dt = Si(x) − π/2 and
/// ci(x) = −∫_x^∞ cos t/t dt.
pub(crate) fn sici_raw(x: f64) -> (f64, f64) {
    if x <= SWITCH {
        power_series(x)
    } else {
        continued_fraction(x)
    }
}

fn power_series(x: f64) -> (f64, f64) {
    let x2 = x * x;
    // Si
    let mut term = x; // x^{2k+1}/(2k+1)!
    let mut si = 0.0;
    let mut k = 0u32;
    loop {
        let add = term / (2 * k + 1) as f64;
        si += add;
        if abs(add) < 1e-18 * abs(si) {
            break;
        }
        k += 1;
        term *= -x2 / ((2 * k) as f64 * (2 * k + 1) as f64);
    }
    // Ci
    let mut term = 1.0; // x^{2k}/(2k)!
    let mut ci_sum = 0.0;
    let mut k = 1u32;
    loop {
        term *= -x2 / ((2 * k - 1) as f64 * (2 * k) as f64);
        let add = term / (2 * k) as f64;
        ci_sum += add;
        if abs(add) < 1e-18 {
            break;
        }
        k += 1;
    }
    (si - FRAC_PI_2, EULER_GAMMA + ln(x) + ci_sum)
}

// E1(ix) by the modified Lentz algorithm; converges fast for x > 2.
fn continued_fraction(x: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..400 {
        let a = -((i - 1) as f64) * ((i - 1) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if abs(del.re - 1.0) + abs(del.im) < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(cos(x), -sin(x));
    (h.im, -h.re)
}

/// ci(x)·sin x − si(x)·cos x = ∫_0^∞ sin t/(x+t) dt.
pub(crate) fn cauchy_aux_raw(x: f64) -> f64 {
    let (si, ci) = sici_raw(x);
    ci * sin(x) - si * cos(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_branches_meet_at_switch() {
        let a = power_series(SWITCH);
        let b = continued_fraction(SWITCH);
        assert!((a.0 - b.0).abs() < 1e-14, "{a:?} {b:?}");
        assert!((a.1 - b.1).abs() < 1e-14, "{a:?} {b:?}");
    }

    #[test]
    fn reference_values() {
        // Si(1) = 0.946083070367183, Ci(1) = 0.337403922900968
        let (si, ci) = sici_raw(1.0);
        assert!((si + FRAC_PI_2 - 0.946_083_070_367_183_0).abs() < 1e-15);
        assert!((ci - 0.337_403_922_900_968_1).abs() < 1e-15);
        // Si(10) = 1.658347594218874, Ci(10) = -0.045456433004455
        let (si, ci) = sici_raw(10.0);
        assert!((si + FRAC_PI_2 - 1.658_347_594_218_874).abs() < 1e-14);
        assert!((ci + 0.045_456_433_004_455_37).abs() < 1e-14);
    }
}
