use num_complex::Complex64;
use proptest::prelude::*;
use stieltjes_core::barnes::{p_kernel, BarnesKernelParams};
use stieltjes_core::cesaro::{lemma_s_check, series_eval_three_ways, CesaroSequence, DEFAULT_PREFIX};
use stieltjes_core::densities::{DensitySpec, Family};
use stieltjes_core::monotonicity::{find_lcm_counterexample, g_c, lemma_pos_h};
use stieltjes_core::specfun::{
    beta_a_lambda, digamma, gamma_ratio_log, log_gamma_complex, nielsen_beta, prym_p, trigamma,
};

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn beta_recurrence(x in 0.01f64..200.0) {
        let lhs = nielsen_beta(x).unwrap() + nielsen_beta(x + 1.0).unwrap();
        prop_assert!(close(lhs, 1.0 / x, 1e-13), "{lhs} vs {}", 1.0 / x);
    }

    #[test]
    fn beta_is_positive_and_decreasing(x in 0.01f64..500.0, dx in 1e-3f64..10.0) {
        let a = nielsen_beta(x).unwrap();
        let b = nielsen_beta(x + dx).unwrap();
        prop_assert!(a > b && b > 0.0);
        prop_assert!(a < 1.0 / x && a > 0.5 / x);
    }

    #[test]
    fn digamma_and_trigamma_recurrences(x in 0.05f64..100.0) {
        prop_assert!(close(digamma(x + 1.0).unwrap(), digamma(x).unwrap() + 1.0 / x, 1e-13));
        prop_assert!(close(trigamma(x + 1.0).unwrap(), trigamma(x).unwrap() - 1.0 / (x * x), 1e-13));
    }

    #[test]
    fn prym_recurrence(x in 0.05f64..60.0) {
        // x P(x) − P(x+1) = 1/e
        let d = x * prym_p(x).unwrap() - prym_p(x + 1.0).unwrap();
        prop_assert!((d - (-1.0f64).exp()).abs() < 1e-12, "{d}");
    }

    #[test]
    fn beta_a_lambda_at_a_one_is_beta(x in 0.1f64..50.0) {
        prop_assert!(close(beta_a_lambda(x, 1.0, 1.0).unwrap(), nielsen_beta(x).unwrap(), 1e-10));
    }

    #[test]
    fn gamma_ratio_log_is_nonnegative_and_decays(x in 0.1f64..50.0, a in 0.05f64..3.0, b in 0.05f64..3.0) {
        let v = gamma_ratio_log(x, a, b).unwrap();
        let w = gamma_ratio_log(x + 1.0, a, b).unwrap();
        prop_assert!(v > -1e-14 && w <= v + 1e-14);
        prop_assert!(close(v, gamma_ratio_log(x, b, a).unwrap(), 1e-13));
    }

    #[test]
    fn log_gamma_recurrence_complex(re in 0.1f64..20.0, im in -20.0f64..20.0) {
        let z = Complex64::new(re, im);
        let lhs = log_gamma_complex(z + 1.0).unwrap();
        let rhs = log_gamma_complex(z).unwrap() + z.ln();
        prop_assert!((lhs - rhs).norm() < 1e-11 * (1.0 + lhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn counterexample_for_any_r(r in 2.01f64..40.0) {
        let ce = find_lcm_counterexample(r).unwrap();
        prop_assert!(ce.z.re > 0.0);
        prop_assert!(ce.c > 0.0);
        prop_assert!(ce.residual < 1e-10);
        prop_assert_eq!(g_c(r, ce.c, ce.z).norm(), ce.residual);
    }

    #[test]
    fn lemma_s_identity(a in prop::collection::vec(-1.0f64..1.0, 1..40), k in 0usize..4, x in 0.01f64..0.99) {
        let n = a.len() - 1;
        let (lhs, rhs) = lemma_s_check(&a, k, n, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11, "{lhs} vs {rhs}");
    }

    #[test]
    fn positivity_lemma_holds(c in 0.0f64..1.0, t in 1e-3f64..50.0) {
        let h = lemma_pos_h(c / std::f64::consts::PI, t);
        prop_assert!(h >= -1e-12, "h = {h}");
    }

    #[test]
    fn p_kernel_is_positive_and_decreasing(t in 0.01f64..40.0, n in 1u32..=4) {
        let p = BarnesKernelParams::new(n).unwrap();
        let a = p_kernel(t, &p).unwrap();
        let b = p_kernel(t * 1.1, &p).unwrap();
        prop_assert!(a > 0.0 && b < a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn density_cdf_is_monotone(a in 0.2f64..4.0, which in 0usize..3) {
        let spec = DensitySpec::new(Family::ALL[which], a).unwrap();
        let tab = spec.tabulate().unwrap();
        let mut prev = 0.0;
        for i in 1..200 {
            let t = 0.05 * i as f64;
            let c = tab.cdf(t).unwrap();
            prop_assert!(c >= prev - 1e-14 && c <= 1.0 + 1e-12);
            prev = c;
        }
    }
}

#[test]
fn three_way_evaluations_agree_on_presets() {
    let presets = [CesaroSequence::Prym, CesaroSequence::Alternating, CesaroSequence::BinomialA(0.5)];
    for seq in &presets {
        for lambda in [1.0, 1.5] {
            for x in [0.5, 1.0, 2.0, 10.0] {
                let w = series_eval_three_ways(seq, 0, lambda, x, DEFAULT_PREFIX).unwrap();
                assert!(w.spread() < 1e-7, "{} lambda={lambda} x={x}: {w:?}", seq.key());
            }
        }
    }
}

#[test]
fn three_way_at_one_matches_closed_values() {
    let p = series_eval_three_ways(&CesaroSequence::Prym, 0, 1.0, 1.0, DEFAULT_PREFIX).unwrap();
    assert!((p.direct - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
    let b = series_eval_three_ways(&CesaroSequence::Alternating, 0, 1.0, 1.0, DEFAULT_PREFIX).unwrap();
    assert!((b.direct - std::f64::consts::LN_2).abs() < 1e-12);
}

#[test]
fn counterexample_rejects_small_r() {
    for r in [2.0, 1.5, 0.0, -3.0, f64::NAN, f64::INFINITY] {
        assert!(find_lcm_counterexample(r).is_err(), "r = {r}");
    }
}
