//! Scalar special functions: Nielsen's β and its relatives, the polygamma
//! family, sine/cosine integrals, Prym's function and ζ.

mod gamma;
mod nielsen;
mod prym;
mod sici;
mod zeta;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{alternating_sum, SeriesPolicy, SeriesValue};

pub(crate) use gamma::{
    digamma_complex_raw, digamma_raw, ln_gamma_complex_raw, ln_gamma_raw, polygamma_raw, trigamma_complex_raw,
};
pub(crate) use nielsen::{beta_meromorphic, beta_prime_raw, beta_relative};
pub(crate) use prym::{prym_incomplete, prym_series};
pub(crate) use sici::{cauchy_aux_raw, sici_raw};
pub(crate) use zeta::zeta_raw;

fn positive(what: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, x))
    }
}

fn right_half(what: &'static str, z: Complex64) -> Result<()> {
    if z.re > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(what, z.re))
    }
}

/// Nielsen's β(x) = Σ (−1)^n/(x+n) = ½(ψ((x+1)/2) − ψ(x/2)), summed by paired
/// recurrence so closed values such as β(1) = ln 2 come out correctly rounded.
pub fn nielsen_beta(x: f64) -> Result<f64> {
    positive("nielsen_beta needs x > 0", x)?;
    Ok(beta_relative(x))
}

/// The same β summed as an alternating series with acceleration; an
/// independent path used to cross-check [`nielsen_beta`].
pub fn nielsen_beta_series(x: f64, policy: &SeriesPolicy) -> Result<SeriesValue> {
    positive("nielsen_beta_series needs x > 0", x)?;
    alternating_sum(|n| 1.0 / (x + n as f64), policy)
}

/// β′(x) = −Σ (−1)^n/(x+n)².
pub fn nielsen_beta_derivative(x: f64) -> Result<f64> {
    positive("nielsen_beta_derivative needs x > 0", x)?;
    Ok(beta_prime_raw(x))
}

pub fn nielsen_beta_complex(z: Complex64) -> Result<Complex64> {
    right_half("nielsen_beta_complex needs Re z > 0", z)?;
    Ok(beta_meromorphic(z))
}

pub fn digamma(x: f64) -> Result<f64> {
    positive("digamma needs x > 0", x)?;
    Ok(digamma_raw(x))
}

pub fn trigamma(x: f64) -> Result<f64> {
    positive("trigamma needs x > 0", x)?;
    Ok(polygamma_raw(1, x))
}

/// ψ^{(m)}(x) for m ≥ 1.
pub fn polygamma(m: u32, x: f64) -> Result<f64> {
    positive("polygamma needs x > 0", x)?;
    if m == 0 {
        return Ok(digamma_raw(x));
    }
    if m > 6 {
        return Err(Error::invalid("polygamma order above 6 is not supported"));
    }
    Ok(polygamma_raw(m, x))
}

pub fn log_gamma(x: f64) -> Result<f64> {
    positive("log_gamma needs x > 0", x)?;
    Ok(ln_gamma_raw(x))
}

pub fn digamma_complex(z: Complex64) -> Result<Complex64> {
    right_half("digamma_complex needs Re z > 0", z)?;
    Ok(digamma_complex_raw(z))
}

pub fn trigamma_complex(z: Complex64) -> Result<Complex64> {
    right_half("trigamma_complex needs Re z > 0", z)?;
    Ok(trigamma_complex_raw(z))
}

pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    right_half("log_gamma_complex needs Re z > 0", z)?;
    Ok(ln_gamma_complex_raw(z))
}

/// (si(x), ci(x)) with si(x) = −∫_x^∞ sin t/t dt and ci(x) = −∫_x^∞ cos t/t dt.
pub fn sin_cos_integrals(x: f64) -> Result<(f64, f64)> {
    positive("sin_cos_integrals needs x > 0", x)?;
    Ok(sici_raw(x))
}

/// F(x) = ci(x) sin x − si(x) cos x, the Laplace transform of 1/(1+t²).
pub fn cauchy_aux(x: f64) -> Result<f64> {
    positive("cauchy_aux needs x > 0", x)?;
    Ok(cauchy_aux_raw(x))
}

/// Prym's P(x) = Σ (−1)^n/(n!(x+n)).
pub fn prym_p(x: f64) -> Result<f64> {
    positive("prym_p needs x > 0", x)?;
    Ok(prym_series(x))
}

/// P(x) through the incomplete-gamma series; the cross-check path.
pub fn prym_p_incomplete(x: f64) -> Result<f64> {
    positive("prym_p_incomplete needs x > 0", x)?;
    Ok(prym_incomplete(x))
}

/// β_{a,λ}(x) = Σ (−1)^n (a)_n/n! · (x+n)^{−λ}.
pub fn beta_a_lambda(x: f64, a: f64, lambda: f64) -> Result<f64> {
    positive("beta_a_lambda needs x > 0", x)?;
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain("beta_a_lambda needs 0 < a <= 1", a));
    }
    positive("beta_a_lambda needs lambda > 0", lambda)?;
    let policy = SeriesPolicy::default();
    // (a)_n/n! is a Hausdorff moment sequence for 0 < a ≤ 1, so the
    // accelerated sum carries its a-priori bound.
    let mut coeff = 1.0;
    let mut last = 0usize;
    let v = alternating_sum(
        |n| {
            while last < n {
                coeff *= (a + last as f64) / (last + 1) as f64;
                last += 1;
            }
            coeff * crate::math::pow(x + n as f64, -lambda)
        },
        &policy,
    )?;
    Ok(v.value)
}

/// log Γ(x)Γ(x+a+b)/(Γ(x+a)Γ(x+b)), clamped at zero against rounding.
pub fn gamma_ratio_log(x: f64, a: f64, b: f64) -> Result<f64> {
    positive("gamma_ratio_log needs x > 0", x)?;
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::domain("gamma_ratio_log needs a >= 0", a));
    }
    if !(b >= 0.0 && b.is_finite()) {
        return Err(Error::domain("gamma_ratio_log needs b >= 0", b));
    }
    let v = (ln_gamma_raw(x) - ln_gamma_raw(x + a)) + (ln_gamma_raw(x + a + b) - ln_gamma_raw(x + b));
    Ok(v.max(0.0))
}

/// Riemann ζ(s), s ≠ 1.
pub fn zeta(s: f64) -> Result<f64> {
    if s == 1.0 || !s.is_finite() {
        return Err(Error::domain("zeta has a pole at s = 1", s));
    }
    Ok(zeta_raw(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, ln, log_space, LN_2, PI};
    use crate::quadrature::{integrate, integrate_breaks, QuadOptions};
    use proptest::prelude::*;

    #[test]
    fn beta_closed_values() {
        assert!((nielsen_beta(1.0).unwrap() - LN_2).abs() < 1e-13);
        assert!((nielsen_beta(0.5).unwrap() - PI / 2.0).abs() < 1e-13);
        assert!((nielsen_beta(1.5).unwrap() - (2.0 - PI / 2.0)).abs() < 1e-13);
        // β(2) = 1 − β(1)
        assert!((nielsen_beta(2.0).unwrap() - (1.0 - LN_2)).abs() < 1e-13);
        assert!(nielsen_beta(0.0).is_err());
        assert!(nielsen_beta(-1.0).is_err());
    }

    #[test]
    fn beta_complex_examples() {
        let z = nielsen_beta_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!((z.re - LN_2).abs() < 1e-13 && z.im.abs() < 1e-15);
        let z = nielsen_beta_complex(Complex64::new(2.0, 0.0)).unwrap();
        assert!((z.re - (1.0 - LN_2)).abs() < 1e-13);
        let w = Complex64::new(0.7, 2.3);
        let a = nielsen_beta_complex(w).unwrap();
        let b = nielsen_beta_complex(w.conj()).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
        // against the digamma form
        let d = (digamma_complex_raw((w + 1.0) * 0.5) - digamma_complex_raw(w * 0.5)) * 0.5;
        assert!((a - d).norm() < 1e-13);
        assert!(nielsen_beta_complex(Complex64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn trigamma_and_log_gamma_values() {
        assert!((trigamma(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-13);
        assert!((trigamma(0.5).unwrap() - PI * PI / 2.0).abs() < 1e-13);
        assert!((trigamma(1.5).unwrap() - (PI * PI / 2.0 - 4.0)).abs() < 1e-13);
        assert!(log_gamma(1.0).unwrap().abs() < 1e-13);
        assert!(digamma(0.0).is_err() && trigamma(-2.0).is_err() && log_gamma(0.0).is_err());
    }

    #[test]
    fn si_ci_examples() {
        let (si, _) = sin_cos_integrals(1e-8).unwrap();
        assert!((si + PI / 2.0).abs() < 1e-7);
        // F(1) against quadrature of sin t/(1+t) using the Laplace form ∫ e^{-t}/(1+t²)
        let f1 = cauchy_aux(1.0).unwrap();
        let q = integrate(|t| exp(-t) / (1.0 + t * t), 0.0, 60.0, QuadOptions::default()).unwrap();
        assert!((f1 - q.value).abs() < 1e-8);
        let x = 1e4;
        assert!((cauchy_aux(x).unwrap() * x - 1.0).abs() < 1e-3);
        assert!(sin_cos_integrals(0.0).is_err());
    }

    #[test]
    fn si_ci_match_quadrature_above_switch() {
        for &x in &[4.5, 7.0, 30.0] {
            let (si, ci) = sin_cos_integrals(x).unwrap();
            // −∫_x^∞ e^{it}/t dt = −i·∫_0^∞ e^{ix}e^{-s}/(x+is) ds (rotated contour)
            let re = integrate(
                |s| exp(-s) * (s * crate::math::cos(x) - x * crate::math::sin(x)) / (x * x + s * s),
                0.0,
                60.0,
                QuadOptions::default(),
            )
            .unwrap()
            .value;
            let im = integrate(
                |s| exp(-s) * (x * crate::math::cos(x) + s * crate::math::sin(x)) / (x * x + s * s),
                0.0,
                60.0,
                QuadOptions::default(),
            )
            .unwrap()
            .value;
            // ∫_x^∞ cos t/t = -re, ∫_x^∞ sin t/t = im
            assert!((ci + re).abs() < 1e-12, "ci({x}) {ci} vs {}", -re);
            assert!((si + im).abs() < 1e-12, "si({x}) {si} vs {}", -im);
        }
    }

    #[test]
    fn prym_examples() {
        let e1 = exp(-1.0);
        assert!((prym_p(1.0).unwrap() - (1.0 - e1)).abs() < 1e-14);
        assert!((prym_p(2.0).unwrap() - (1.0 - 2.0 * e1)).abs() < 1e-14);
        let x = 1.7;
        let q = integrate_breaks(
            |t| exp((x - 1.0) * ln(t) - t),
            &[1.0, 5.0, 20.0, 60.0],
            QuadOptions::with_tol(1e-13, 1e-13),
        )
        .unwrap()
        .value;
        let g = exp(ln_gamma_raw(x));
        assert!((prym_p(x).unwrap() + q - g).abs() < 1e-10);
        for &x in &[0.2, 1.0, 3.3] {
            assert!((prym_p(x).unwrap() - prym_p_incomplete(x).unwrap()).abs() < 1e-11);
        }
    }

    #[test]
    fn beta_a_lambda_examples() {
        let x = 0.9;
        assert!((beta_a_lambda(x, 1.0, 1.0).unwrap() - nielsen_beta(x).unwrap()).abs() < 1e-12);
        assert!((beta_a_lambda(1.0, 1.0, 1.0).unwrap() - LN_2).abs() < 1e-13);
        // (1/Γ(λ))∫ e^{-xt}(1+e^{-t})^{-a} t^{λ-1} dt
        let (x, a, l) = (2.0, 0.5, 1.5);
        let q = integrate_breaks(
            |t: f64| exp(-x * t) * crate::math::pow(1.0 + exp(-t), -a) * crate::math::pow(t, l - 1.0),
            &[0.0, 1.0, 5.0, 40.0],
            QuadOptions::with_tol(1e-14, 1e-13),
        )
        .unwrap()
        .value
            / exp(ln_gamma_raw(l));
        assert!((beta_a_lambda(x, a, l).unwrap() - q).abs() < 1e-9);
        assert!(beta_a_lambda(1.0, 1.5, 1.0).is_err());
        assert!(beta_a_lambda(1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn gamma_ratio_examples() {
        assert_eq!(gamma_ratio_log(1.3, 0.0, 0.8).unwrap(), 0.0);
        let a = gamma_ratio_log(1.3, 0.4, 0.9).unwrap();
        let b = gamma_ratio_log(1.3, 0.9, 0.4).unwrap();
        assert!((a - b).abs() < 1e-15);
        let v = gamma_ratio_log(1.0, 0.5, 2.0).unwrap();
        assert!((v - ln(1.5 * 2.5 / 2.0)).abs() < 1e-13);
        assert!(gamma_ratio_log(0.0, 1.0, 1.0).is_err());
        assert!(gamma_ratio_log(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn grid_invariants() {
        let grid = log_space(1e-2, 1e3, 60);
        let policy = SeriesPolicy::default();
        let mut prev = f64::INFINITY;
        for &x in &grid {
            let b = nielsen_beta(x).unwrap();
            let b1 = nielsen_beta(x + 1.0).unwrap();
            assert!((b + b1 - 1.0 / x).abs() < 1e-12 * (1.0 / x).max(1.0), "recurrence at {x}");
            let s = nielsen_beta_series(x, &policy).unwrap().value;
            assert!((b - s).abs() < 1e-11, "series at {x}: {b} {s}");
            let t = trigamma(x).unwrap() - trigamma(x + 1.0).unwrap();
            assert!((t - 1.0 / (x * x)).abs() < 1e-12 * (1.0 / (x * x)).max(1.0), "trigamma at {x}");
            assert!(b > 0.0 && b < prev);
            prev = b;
        }
    }

    proptest! {
        #[test]
        fn beta_recurrence_holds(x in 0.01f64..1000.0) {
            let lhs = nielsen_beta(x).unwrap() + nielsen_beta(x + 1.0).unwrap();
            prop_assert!((lhs - 1.0 / x).abs() <= 1e-12 * (1.0 / x).max(1.0));
        }

        #[test]
        fn beta_lies_between_consecutive_partial_sums(x in 0.05f64..50.0) {
            let b = nielsen_beta(x).unwrap();
            prop_assert!(b < 1.0 / x && b > 1.0 / x - 1.0 / (x + 1.0));
        }

        #[test]
        fn log_gamma_recurrence(x in 0.01f64..500.0) {
            let d = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap() - ln(x);
            prop_assert!(d.abs() < 1e-12 * (1.0 + log_gamma(x).unwrap().abs()));
        }

        #[test]
        fn gamma_ratio_is_nonnegative_and_symmetric(x in 0.01f64..100.0, a in 0.0f64..5.0, b in 0.0f64..5.0) {
            let v = gamma_ratio_log(x, a, b).unwrap();
            prop_assert!(v >= 0.0);
            prop_assert!((v - gamma_ratio_log(x, b, a).unwrap()).abs() < 1e-12 * (1.0 + v));
        }

        #[test]
        fn beta_a_lambda_matches_beta_at_unit_parameters(x in 0.05f64..200.0) {
            let v = beta_a_lambda(x, 1.0, 1.0).unwrap();
            prop_assert!((v - nielsen_beta(x).unwrap()).abs() < 1e-12 * (1.0 + v));
        }
    }
}
