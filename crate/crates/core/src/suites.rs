//! Named verification suites shared by the command-line front end and the
//! acceptance target.
//!
//! A suite is a list of independent [`Case`]s. Each case yields a
//! [`CheckReport`]; identity comparisons are recorded as witnesses with
//! `value = tol − |lhs − rhs|`, so a negative value is a violation.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barnes::{p_kernel, r_2_2n, stirling_remainder, BarnesKernelParams};
use crate::cesaro::{lemma_s_check, series_eval_three_ways, CesaroSequence, DEFAULT_PREFIX};
use crate::densities::{ks_critical_1pct, ks_statistic, DensitySpec, Family};
use crate::error::{Error, Result};
use crate::function::FnScalar;
use crate::laplace::{
    hamburger_check, laplace_invert, laplace_quad_breaks, semigroup_check, sigma_continuous, BetaPower, SmoothPeriodic,
};
use crate::math::{abs, cos, cosh, exp, expm1, ln, sin, sinh, sqrt, tanh, LN_2, PI};
use crate::monotonicity::{
    cm_check, cm_check_fn, find_lcm_counterexample, lcm_check, lemma_pos_check, log_space, pick_check, CheckGrid,
    CheckReport, PickRegion, Verdict, Witness,
};
use crate::specfun::ln_gamma_complex_raw;
use crate::specfun::{
    beta_a_lambda, beta_prime_raw, beta_relative, gamma_ratio_log, ln_gamma_raw, polygamma_raw, prym_incomplete,
    sici_raw, zeta_raw,
};
use crate::stieltjes::{
    gamma_ratio_cap, genus1_log_ratio_direct, measure_alternating, measure_gamma_ratio, measure_genus1_log_ratio,
    stieltjes_eval, AlternatingSequence, CONTRACT_X_MIN,
};

pub const SUITES: [&str; 11] = [
    "cm-catalog",
    "lcm-catalog",
    "identities-s3",
    "gamma-ratios",
    "barnes",
    "cesaro",
    "pick",
    "semigroup",
    "densities",
    "hamburger",
    "counterexample",
];

/// Knobs shared by all suites.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    /// Replaces every identity tolerance of the suite when set.
    pub tol: Option<f64>,
    pub seed: u64,
    pub grid: CheckGrid,
    /// Exponent for the counterexample suite.
    pub r: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { tol: None, seed: 0, grid: CheckGrid::default(), r: 3.0 }
    }
}

impl SuiteOptions {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

type Runner = Box<dyn Fn() -> Result<CheckReport> + Send + Sync>;

/// One independent check of a suite.
pub struct Case {
    pub label: String,
    run: Runner,
}

impl core::fmt::Debug for Case {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Case").field("label", &self.label).finish()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseOutcome {
    pub label: String,
    pub report: CheckReport,
    /// Set when the case could not be evaluated; such a case fails.
    pub error: Option<String>,
}

impl Case {
    pub fn new(label: impl Into<String>, run: impl Fn() -> Result<CheckReport> + Send + Sync + 'static) -> Self {
        Self { label: label.into(), run: Box::new(run) }
    }

    pub fn run(&self) -> CaseOutcome {
        match (self.run)() {
            Ok(report) => CaseOutcome { label: self.label.clone(), report, error: None },
            Err(e) => CaseOutcome {
                label: self.label.clone(),
                report: CheckReport { verdict: Verdict::Fail, worst_margin: f64::NEG_INFINITY, witnesses: Vec::new() },
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub suite: String,
    pub report: CheckReport,
    pub cases: Vec<CaseOutcome>,
}

impl SuiteOutcome {
    /// Combines case outcomes in the given order.
    pub fn assemble(suite: &str, cases: Vec<CaseOutcome>) -> Self {
        let mut report = CheckReport::empty();
        for c in &cases {
            report = report.merge(c.report.clone());
        }
        Self { suite: suite.into(), report, cases }
    }

    pub fn passed(&self) -> bool {
        self.report.passed() && self.cases.iter().all(|c| c.error.is_none())
    }
}

/// The cases of a named suite.
pub fn suite_cases(name: &str, opts: &SuiteOptions) -> Result<Vec<Case>> {
    Ok(match name {
        "cm-catalog" => cm_catalog(opts),
        "lcm-catalog" => lcm_catalog(opts),
        "identities-s3" => identities_s3(opts),
        "gamma-ratios" => gamma_ratios(opts),
        "barnes" => barnes(opts),
        "cesaro" => cesaro(opts),
        "pick" => pick(opts),
        "semigroup" => semigroup(opts),
        "densities" => densities(opts),
        "hamburger" => hamburger(opts),
        "counterexample" => counterexample(opts)?,
        "closed-values" => closed_values(opts),
        "alternating-measure" => alternating_measure(opts),
        _ => return Err(Error::invalid(format!("unknown suite '{name}'"))),
    })
}

/// Runs every case of a suite in order on the calling thread.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteOutcome> {
    let cases = suite_cases(name, opts)?;
    Ok(SuiteOutcome::assemble(name, cases.iter().map(Case::run).collect()))
}

/// Records `tol − |lhs − rhs|` at each point.
pub fn agreement(rows: impl IntoIterator<Item = (f64, f64, f64)>, tol: f64) -> CheckReport {
    let mut r = CheckReport::empty();
    for (x, lhs, rhs) in rows {
        let e = abs(lhs - rhs);
        r.record(Witness { x, n: 0, value: if e.is_nan() { f64::NAN } else { tol - e }, slack: 0.0 });
    }
    r
}

/// `value ≥ −slack` at one point.
fn bound_report(x: f64, value: f64, slack: f64) -> CheckReport {
    let mut r = CheckReport::empty();
    r.record(Witness { x, n: 0, value, slack });
    r
}

/// Turns a check that must fail into a passing report, and vice versa.
fn expect_failure(r: CheckReport, x: f64) -> CheckReport {
    if r.passed() {
        let margin = if r.worst_margin.is_finite() { r.worst_margin.max(0.0) } else { 0.0 };
        bound_report(x, -margin - 1.0, 0.0)
    } else {
        CheckReport { verdict: Verdict::Pass, worst_margin: -r.worst_margin, witnesses: Vec::new() }
    }
}

fn beta_fn() -> FnScalar {
    FnScalar::new("beta", beta_relative).with_derivative(beta_prime_raw)
}

// cosh(νx)/cosh(x) without overflow.
fn cosh_ratio(nu: f64, x: f64) -> f64 {
    exp((nu - 1.0) * x) * (1.0 + exp(-2.0 * nu * x)) / (1.0 + exp(-2.0 * x))
}

fn sinh_ratio(nu: f64, x: f64) -> f64 {
    -expm1(-2.0 * nu * x) * exp((nu - 1.0) * x) / (1.0 + exp(-2.0 * x))
}

fn sigma1(nu: f64, x: f64) -> f64 {
    1.0 - 0.5 * cosh_ratio(nu, x)
}

fn tau_pm(nu: f64, sign: f64, x: f64) -> f64 {
    1.0 + sign * sinh_ratio(nu, x)
}

// ν + sinh((1−ν)x)/(x cosh x), with the x → 0 limit 1.
fn sigma_cont(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    nu + sinh_ratio(1.0 - nu, x) / x
}

// 1 ± (1/x)(1 − cosh((1−ν)x)/cosh x).
fn tau_cont(nu: f64, sign: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    // cosh x − cosh u = 2 sinh((x+u)/2) sinh((x−u)/2), u = (1−ν)x.
    let u = (1.0 - nu) * x;
    let num = 2.0 * sinh(0.5 * (x + u)) * sinh(0.5 * (x - u));
    let d = if x > 300.0 { 1.0 - cosh_ratio(1.0 - nu, x) } else { num / cosh(x) };
    1.0 + sign * d / x
}

fn beta_pair(nu: f64, x: f64) -> (f64, f64) {
    (beta_relative(0.5 * (x + 1.0 - nu)), beta_relative(0.5 * (x + 1.0 + nu)))
}

fn log_gamma_quad(nu: f64, x: f64) -> f64 {
    let u = 0.25 * (x - nu);
    let v = 0.25 * (x + nu);
    ln_gamma_raw(u + 1.0) + ln_gamma_raw(v) - ln_gamma_raw(u + 0.5) - ln_gamma_raw(v + 0.5)
}

fn cm_catalog(opts: &SuiteOptions) -> Vec<Case> {
    let g = opts.grid.clone();
    let mut cases = Vec::new();
    let mut member = |label: &str, f: FnScalar| {
        let g = g.clone();
        cases.push(Case::new(label, move || cm_check(&f, &g)));
    };
    member("beta", beta_fn());
    member("trigamma", FnScalar::new("trigamma", |x| polygamma_raw(1, x)));
    member("prym", FnScalar::new("prym", prym_incomplete));
    member("sigma1/x", FnScalar::new("sigma1/x", |x| sigma1(0.3, x) / x));
    member("sigma2/x", FnScalar::new("sigma2/x", |x| cosh_ratio(0.3, x) / x));
    member("tau+/x", FnScalar::new("tau+/x", |x| tau_pm(0.5, 1.0, x) / x));
    member("tau-/x", FnScalar::new("tau-/x", |x| tau_pm(0.5, -1.0, x) / x));
    member("sigma-cont/x", FnScalar::new("sigma-cont/x", |x| sigma_cont(0.4, x) / x));
    member("tau-cont+/x", FnScalar::new("tau-cont+/x", |x| tau_cont(0.4, 1.0, x) / x));
    member("tau-cont-/x", FnScalar::new("tau-cont-/x", |x| tau_cont(0.4, -1.0, x) / x));
    member(
        "beta-a-lambda(0.5,1.5)",
        FnScalar::new("beta-a-lambda", |x| beta_a_lambda(x, 0.5, 1.5).unwrap_or(f64::NAN)),
    );
    let gk = opts.grid.clone().with_order(6).expect("order 6 is valid");
    for n in 1..=2u32 {
        let gk = gk.clone();
        cases.push(Case::new(format!("p_{n}"), move || {
            let p = BarnesKernelParams::new(n)?;
            cm_check_fn(|t| p_kernel(t, &p), &gk)
        }));
    }
    for (a, b) in [(0.5, 1.3), (1.0, 1.0)] {
        let g = opts.grid.clone();
        cases.push(Case::new(format!("gamma-ratio-log({a},{b})"), move || {
            let m = measure_gamma_ratio(a, b, gamma_ratio_cap(a, b, CONTRACT_X_MIN, 1e-9))?;
            cm_check_fn(|x| stieltjes_eval(&m, x), &g)
        }));
    }
    for (label, f) in [
        ("non-member sin+2", FnScalar::new("sin+2", |x| sin(x) + 2.0)),
        ("non-member exp", FnScalar::new("exp", exp)),
        ("non-member x", FnScalar::new("x", |x| x)),
    ] {
        let g = opts.grid.clone();
        cases.push(Case::new(label, move || Ok(expect_failure(cm_check(&f, &g)?, g.points()[0]))));
    }
    cases
}

fn lcm_catalog(opts: &SuiteOptions) -> Vec<Case> {
    let g = opts.grid.clone();
    let mut cases = Vec::new();
    let nu = 0.3;
    let mut member = |label: &str, f: FnScalar| {
        let g = g.clone();
        cases.push(Case::new(label, move || {
            let l = lcm_check(&f, &g)?;
            // 𝓛 ⊂ CM on the same grid.
            Ok(l.merge(cm_check(&f, &g)?))
        }));
    };
    member("beta", beta_fn());
    member("1/sinh", FnScalar::new("csch", |x| 1.0 / sinh(x)).with_derivative(|x| -1.0 / (sinh(x) * tanh(x))));
    member(
        "L(sigma1)",
        FnScalar::new("L(sigma1)", move |x| {
            let (u, v) = beta_pair(nu, x);
            1.0 / x - 0.25 * (u + v)
        })
        .with_derivative(move |x| {
            -1.0 / (x * x) - 0.125 * (beta_prime_raw(0.5 * (x + 1.0 - nu)) + beta_prime_raw(0.5 * (x + 1.0 + nu)))
        }),
    );
    member(
        "L(sigma2)",
        FnScalar::new("L(sigma2)", move |x| {
            let (u, v) = beta_pair(nu, x);
            0.5 * (u + v)
        })
        .with_derivative(move |x| 0.25 * (beta_prime_raw(0.5 * (x + 1.0 - nu)) + beta_prime_raw(0.5 * (x + 1.0 + nu)))),
    );
    for sign in [1.0, -1.0] {
        member(
            if sign > 0.0 { "L(tau+)" } else { "L(tau-)" },
            FnScalar::new("L(tau)", move |x| {
                let (u, v) = beta_pair(nu, x);
                1.0 / x + sign * 0.5 * (u - v)
            })
            .with_derivative(move |x| {
                -1.0 / (x * x)
                    + sign * 0.25 * (beta_prime_raw(0.5 * (x + 1.0 - nu)) - beta_prime_raw(0.5 * (x + 1.0 + nu)))
            }),
        );
    }
    for fam in Family::ALL {
        let spec = DensitySpec::new(fam, 1.0).expect("a = 1 is valid");
        member(&format!("transform {}", fam.key()), spec.transform());
    }
    let g = opts.grid.clone();
    cases.push(Case::new("non-member exp", move || {
        Ok(expect_failure(lcm_check(&FnScalar::new("exp", exp).with_derivative(exp), &g)?, g.points()[0]))
    }));
    cases
}

fn identities_s3(opts: &SuiteOptions) -> Vec<Case> {
    let xs: Vec<f64> = vec![0.5, 1.0, 2.0, 5.0, 10.0];
    let tight = opts.tol(1e-8);
    let loose = opts.tol(1e-7);
    let mut cases = Vec::new();
    for nu in [0.0, 0.3, 1.0] {
        let xs1 = xs.clone();
        cases.push(Case::new(format!("L(sigma1) nu={nu}"), move || {
            let mut rows = Vec::new();
            for &x in &xs1 {
                let (u, v) = beta_pair(nu, x);
                rows.push((x, laplace_quad_breaks(|t| sigma1(nu, t), x, &[])?, 1.0 / x - 0.25 * (u + v)));
            }
            Ok(agreement(rows, tight))
        }));
        let xs2 = xs.clone();
        cases.push(Case::new(format!("L(sigma2) nu={nu}"), move || {
            let mut rows = Vec::new();
            for &x in &xs2 {
                let (u, v) = beta_pair(nu, x);
                rows.push((x, laplace_quad_breaks(|t| cosh_ratio(nu, t), x, &[])?, 0.5 * (u + v)));
            }
            Ok(agreement(rows, tight))
        }));
        for sign in [1.0, -1.0] {
            let xs3 = xs.clone();
            let s = if sign > 0.0 { '+' } else { '-' };
            cases.push(Case::new(format!("L(tau{s}) nu={nu}"), move || {
                let mut rows = Vec::new();
                for &x in &xs3 {
                    let (u, v) = beta_pair(nu, x);
                    rows.push((
                        x,
                        laplace_quad_breaks(|t| tau_pm(nu, sign, t), x, &[])?,
                        1.0 / x + sign * 0.5 * (u - v),
                    ));
                }
                Ok(agreement(rows, tight))
            }));
        }
        let xs4 = xs.clone();
        cases.push(Case::new(format!("L(sigma) log-gamma nu={nu}"), move || {
            let mut rows = Vec::new();
            for &x in &xs4 {
                let lhs = laplace_quad_breaks(|t| sigma_cont(nu, t), x, &[])?;
                rows.push((x, lhs, nu / x + log_gamma_quad(nu, x)));
            }
            Ok(agreement(rows, loose))
        }));
        for sign in [1.0, -1.0] {
            let xs5 = xs.clone();
            let s = if sign > 0.0 { '+' } else { '-' };
            cases.push(Case::new(format!("L(tau-cont{s}) log-gamma nu={nu}"), move || {
                let mut rows = Vec::new();
                for &x in &xs5 {
                    let lhs = laplace_quad_breaks(|t| tau_cont(nu, sign, t), x, &[])?;
                    let u = 0.25 * (x - nu);
                    let v = 0.25 * (x + nu);
                    let lg = ln(4.0 / x) + ln_gamma_raw(u + 1.0) + ln_gamma_raw(v + 0.5)
                        - ln_gamma_raw(u + 0.5)
                        - ln_gamma_raw(v);
                    rows.push((x, lhs, 1.0 / x + sign * lg));
                }
                Ok(agreement(rows, loose))
            }));
        }
    }
    for (a, b) in [(1.0, 0.0), (2.0, 1.0), (4.0, 4.0)] {
        let xs6 = xs.clone();
        cases.push(Case::new(format!("L(omega) a={a} b={b}"), move || {
            let mut rows = Vec::new();
            for &x in &xs6 {
                let lhs = laplace_quad_breaks(|t| (1.0 + b * t * t) / (1.0 + a * t * t), x, &[])?;
                let y = x / sqrt(a);
                let (si, ci) = sici_raw(y);
                let rhs = b / a / x + (1.0 - b / a) / sqrt(a) * (ci * sin(y) - si * cos(y));
                rows.push((x, lhs, rhs));
            }
            Ok(agreement(rows, tight))
        }));
    }
    let xs7 = xs.clone();
    cases.push(Case::new("sigma-cont via Lemma form nu=0.4", move || {
        // φ(t) = |t| on [−π, π], α = π/2, β = νπ/2; the bracket equals (π/2)σ(x).
        let tri = SmoothPeriodic::triangle();
        let nu = 0.4;
        let mut rows = Vec::new();
        for &x in &xs7 {
            let s = sigma_continuous(&tri, PI / 2.0, nu * PI / 2.0, x)? * 2.0 / PI;
            let closed = nu - sinh(nu * x) / x + cosh(nu * x) * tanh(x) / x;
            rows.push((x, s, closed));
            rows.push((x, closed, sigma_cont(nu, x)));
        }
        Ok(agreement(rows, tight))
    }));
    cases
}

fn gamma_ratios(opts: &SuiteOptions) -> Vec<Case> {
    let tol = opts.tol(1e-7);
    let mut cases = Vec::new();
    let xs = log_space(0.5, 50.0, 10);
    for (a, b) in [(0.5, 1.3), (1.0, 1.0), (0.5, 2.0)] {
        let xs = xs.clone();
        cases.push(Case::new(format!("measure vs log-gamma ({a},{b})"), move || {
            let m = measure_gamma_ratio(a, b, gamma_ratio_cap(a, b, CONTRACT_X_MIN, 1e-9))?;
            m.check_nonnegative(1000)?;
            let mut rows = Vec::new();
            for &x in &xs {
                rows.push((x, stieltjes_eval(&m, x)?, gamma_ratio_log(x, a, b)?));
            }
            Ok(agreement(rows, tol))
        }));
    }
    let tol_int = opts.tol(1e-10);
    let xs2 = xs.clone();
    cases.push(Case::new("integer b closed form", move || {
        let mut rows = Vec::new();
        for &x in &xs2 {
            for (a, b) in [(0.5, 2usize), (0.3, 1), (0.9, 3)] {
                rows.push((x, gamma_ratio_log(x, a, b as f64)?, integer_b_closed(x, a, b)));
            }
        }
        Ok(agreement(rows, tol_int))
    }));
    let tol_z = opts.tol(1e-8);
    let sets: [&'static [f64]; 3] = [&[1.0, 2.0, 3.0], &[0.5, 1.7, 4.2, 9.0], &[2.0, 2.0, 5.0, 11.5, 30.0]];
    for zeros in sets {
        let xs = xs.clone();
        cases.push(Case::new(format!("finite zeros {zeros:?}"), move || {
            let (a, b) = (0.4, 0.9);
            let m = measure_genus1_log_ratio(zeros, a, b)?;
            let mut rows = Vec::new();
            for &x in &xs {
                rows.push((x, stieltjes_eval(&m, x)?, genus1_log_ratio_direct(zeros, a, b, x)?));
            }
            Ok(agreement(rows, tol_z))
        }));
    }
    cases
}

/// For integer `b` the ratio telescopes to `Σ_{k<b} log((x+a+k)/(x+k))`.
fn integer_b_closed(x: f64, a: f64, b: usize) -> f64 {
    (0..b).map(|k| ln((x + a + k as f64) / (x + k as f64))).sum()
}

fn barnes(opts: &SuiteOptions) -> Vec<Case> {
    let tol = opts.tol(1e-7);
    let mut cases = vec![Case::new("stirling remainder", move || {
        let mut r = CheckReport::empty();
        for x in [0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
            let s = stirling_remainder(x)?;
            r = r.merge(agreement([(x, s.lhs, s.rhs)], tol));
        }
        Ok(r)
    })];
    let gk = opts.grid.clone().with_order(6).expect("order 6 is valid");
    for n in 1..=2u32 {
        let gk = gk.clone();
        cases.push(Case::new(format!("p_{n} cm"), move || {
            let p = BarnesKernelParams::new(n)?;
            cm_check_fn(|t| p_kernel(t, &p), &gk)
        }));
    }
    for (label, c) in [("0", 0.0), ("1/pi", 1.0 / PI), ("1/(2pi)", 0.5 / PI), ("1/(10pi)", 0.1 / PI), ("1", 1.0)] {
        cases.push(Case::new(format!("lemma positivity c={label}"), move || lemma_pos_check(c)));
    }
    cases.push(Case::new("R_{2,2} cm", || {
        let g = CheckGrid::log_spaced(0.5, 50.0, 12)?;
        cm_check_fn(|w| r_2_2n(w, 1), &g)
    }));
    cases.push(Case::new("w R_{2,2}(w) -> 1/12", || {
        let w = 1e3;
        Ok(agreement([(w, w * r_2_2n(w, 1)?, 1.0 / 12.0)], 1e-2))
    }));
    cases
}

fn cesaro(opts: &SuiteOptions) -> Vec<Case> {
    let seed = opts.seed;
    let tol_lemma = opts.tol(1e-12);
    let mut cases = vec![Case::new("iterated-sum identity, 100 draws", move || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut unit = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let mut r = CheckReport::empty();
        for _ in 0..100 {
            let k = (unit() * 4.0) as usize;
            let n = (unit() * 51.0) as usize;
            let x = 0.001 + 0.998 * unit();
            let a: Vec<f64> = (0..=n).map(|_| 2.0 * unit() - 1.0).collect();
            let (lhs, rhs) = lemma_s_check(&a, k, n, x)?;
            r = r.merge(agreement([(x, lhs, rhs)], tol_lemma));
        }
        Ok(r)
    })];
    let tol3 = opts.tol(1e-7);
    for (seq, lambda) in
        [(CesaroSequence::Prym, 1.0), (CesaroSequence::Alternating, 1.0), (CesaroSequence::BinomialA(0.5), 1.5)]
    {
        cases.push(Case::new(format!("three-way {} lambda={lambda}", seq.key()), move || {
            let mut r = CheckReport::empty();
            for x in [0.5, 1.0, 2.0, 10.0] {
                let w = series_eval_three_ways(&seq, 0, lambda, x, DEFAULT_PREFIX)?;
                r.record(Witness { x, n: 0, value: tol3 - w.spread(), slack: 0.0 });
            }
            Ok(r)
        }));
    }
    let tol_k = opts.tol(1e-12);
    cases.push(Case::new("prym kernel collapse", move || {
        let mut rows = Vec::new();
        for t in log_space(0.01, 20.0, 20) {
            rows.push((t, CesaroSequence::Prym.kappa(0, t)? * t, exp(-exp(-t))));
        }
        Ok(agreement(rows, tol_k))
    }));
    let tol_v = opts.tol(1e-12);
    cases.push(Case::new("known values", move || {
        let p = series_eval_three_ways(&CesaroSequence::Prym, 0, 1.0, 1.0, DEFAULT_PREFIX)?;
        let b = series_eval_three_ways(&CesaroSequence::Alternating, 0, 1.0, 1.0, DEFAULT_PREFIX)?;
        let e = 1.0 - exp(-1.0);
        let mut r = agreement([(1.0, p.direct, e)], tol_v);
        r = r.merge(agreement([(1.0, p.stieltjes, e), (1.0, p.laplace, e)], 1e-8));
        r = r.merge(agreement([(1.0, b.direct, LN_2)], tol_v));
        Ok(r.merge(agreement([(1.0, b.stieltjes, LN_2), (1.0, b.laplace, LN_2)], 1e-8)))
    }));
    cases
}

fn pick(_opts: &SuiteOptions) -> Vec<Case> {
    let mut cases = Vec::new();
    for s in [0.25, 0.5, 0.9] {
        cases.push(Case::new(format!("log-gamma difference s={s}"), move || {
            let region = PickRegion::default();
            let p = pick_check(|z| Ok(ln_gamma_complex_raw(z + s) - ln_gamma_complex_raw(z)), &region)?;
            let mut r = p.to_check_report();
            // Im stays below π.
            r = r.merge(bound_report(0.0, PI - p.sup_im, 0.0));
            Ok(r)
        }));
        cases.push(Case::new(format!("gamma ratio s={s}"), move || {
            let p = pick_check(
                |z| Ok((ln_gamma_complex_raw(z + s) - ln_gamma_complex_raw(z)).exp()),
                &PickRegion::default(),
            )?;
            Ok(p.to_check_report())
        }));
    }
    cases.push(Case::new("-1/z", || Ok(pick_check(|z| Ok(-z.inv()), &PickRegion::default())?.to_check_report())));
    cases.push(Case::new("conjugate symmetry", || {
        let mut rows = Vec::new();
        for j in 0..10 {
            let z = Complex64::new(-4.5 + j as f64, 0.3 + 0.7 * j as f64);
            let h = ln_gamma_complex_raw(z + 0.5) - ln_gamma_complex_raw(z);
            let hc = ln_gamma_complex_raw(z.conj() + 0.5) - ln_gamma_complex_raw(z.conj());
            let d = (h.conj() - hc).norm();
            rows.push((z.re, d, 0.0));
        }
        Ok(agreement(rows, 1e-10))
    }));
    cases
}

fn semigroup(opts: &SuiteOptions) -> Vec<Case> {
    let tol = opts.tol(1e-4);
    let tol_inv = opts.tol(1e-6);
    vec![
        Case::new("m_1/2 * m_1/2 = m_1", move || {
            let r = semigroup_check(0.5, 0.5, 1e-3, 12.0)?;
            Ok(bound_report(r.at, tol - r.sup_error, 0.0))
        }),
        Case::new("inverse of beta", move || {
            let f = BetaPower::new(1.0)?;
            let mut rows = Vec::new();
            for t in crate::math::lin_space(0.1, 5.0, 25) {
                rows.push((t, laplace_invert(&f, t)?, 1.0 / (1.0 + exp(-t))));
            }
            Ok(agreement(rows, tol_inv))
        }),
    ]
}

fn densities(opts: &SuiteOptions) -> Vec<Case> {
    let tol = opts.tol(1e-9);
    let seed = opts.seed;
    let g = opts.grid.clone();
    let mut cases = Vec::new();
    for fam in Family::ALL {
        cases.push(Case::new(format!("{} normalization", fam.key()), move || {
            let mut rows = Vec::new();
            for a in [0.5, 1.0, 1.5, 2.0] {
                rows.push((a, DensitySpec::new(fam, a)?.total_mass()?, 1.0));
            }
            Ok(agreement(rows, tol))
        }));
        cases.push(Case::new(format!("{} laplace shift", fam.key()), move || {
            let mut rows = Vec::new();
            for a in [0.5, 1.0, 1.5] {
                let s = DensitySpec::new(fam, a)?;
                for x in [0.5, 1.0, 5.0] {
                    rows.push((x, s.laplace_quad(x)?, s.laplace_closed(x)?));
                }
            }
            Ok(agreement(rows, tol))
        }));
        let g = g.clone();
        cases.push(Case::new(format!("{} transform log-cm", fam.key()), move || {
            let mut r = CheckReport::empty();
            for a in [0.5, 1.0, 1.5] {
                r = r.merge(lcm_check(&DensitySpec::new(fam, a)?.transform(), &g)?);
            }
            Ok(r)
        }));
        cases.push(Case::new(format!("{} sampling", fam.key()), move || {
            let tab = DensitySpec::new(fam, 1.0)?.tabulate()?;
            let a = tab.sample(10_000, seed)?;
            let b = tab.sample(10_000, seed)?;
            let mut r = bound_report(0.0, if a == b { 0.0 } else { -1.0 }, 0.0);
            let min = a.iter().copied().fold(f64::INFINITY, f64::min);
            r = r.merge(bound_report(min, if min > 0.0 { 0.0 } else { -1.0 }, 0.0));
            let d = ks_statistic(&a, |t| tab.cdf(t))?;
            Ok(r.merge(bound_report(d, ks_critical_1pct(a.len()) - d, 0.0)))
        }));
    }
    cases
}

fn hamburger(opts: &SuiteOptions) -> Vec<Case> {
    let tol = opts.tol(1e-8);
    (1..=4u32)
        .map(|n| {
            Case::new(format!("n={n}"), move || {
                let h = hamburger_check(n, &[0.5, 1.0, 3.0])?;
                Ok(agreement(h.rows.iter().map(|r| (r.x, r.product, r.transform)), tol))
            })
        })
        .collect()
}

fn counterexample(opts: &SuiteOptions) -> Result<Vec<Case>> {
    let r = opts.r;
    if !(r > 2.0) || !r.is_finite() {
        return Err(Error::domain("the counterexample needs r > 2", r));
    }
    let tol = opts.tol(1e-10);
    Ok(vec![Case::new(format!("zero of g_c, r={r}"), move || {
        let c = find_lcm_counterexample(r)?;
        let mut rep = bound_report(c.z.re, tol - c.residual, 0.0);
        rep = rep.merge(bound_report(c.z.re, if c.z.re > 0.0 { c.z.re } else { -1.0 }, 0.0));
        Ok(rep)
    })])
}

fn closed_values(opts: &SuiteOptions) -> Vec<Case> {
    let tol = opts.tol(1e-12);
    vec![Case::new("closed values", move || {
        let pi2 = PI * PI;
        let rows = [
            (1.0, beta_relative(1.0), LN_2),
            (0.5, beta_relative(0.5), PI / 2.0),
            (1.5, beta_relative(1.5), 2.0 - PI / 2.0),
            (1.0, polygamma_raw(1, 1.0), pi2 / 6.0),
            (0.5, polygamma_raw(1, 0.5), pi2 / 2.0),
            (1.5, polygamma_raw(1, 1.5), pi2 / 2.0 - 4.0),
            (1.0, prym_incomplete(1.0), 1.0 - exp(-1.0)),
            (2.0, zeta_raw(2.0), pi2 / 6.0),
        ];
        Ok(agreement(rows, tol))
    })]
}

fn alternating_measure(opts: &SuiteOptions) -> Vec<Case> {
    let tol = opts.tol(1e-8);
    vec![Case::new("alternating measure vs beta", move || {
        let pairs = crate::stieltjes::alternating_pairs_for(1.0, 0.0, 1.0, 0.5, 1e-10);
        let m = measure_alternating(AlternatingSequence::Arithmetic { start: 0.0, step: 1.0, pairs }, 1.0)?;
        let mut rows = Vec::new();
        for x in log_space(0.5, 50.0, 20) {
            rows.push((x, stieltjes_eval(&m, x)?, beta_relative(x)));
        }
        Ok(agreement(rows, tol))
    })]
}
