//! Iterated partial sums, the polynomial identity behind them, finite probes
//! of the summability hypotheses, and three independent evaluations of
//! `Σ a_n (x+n)^{−λ}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, exp, pow, powi};
use crate::series::{alternating_sum, direct_sum, SeriesPolicy};
use crate::specfun::ln_gamma_raw as ln_gamma;

/// Table `s^{(j)}_n`, `0 ≤ j ≤ k`, `0 ≤ n ≤ N`.
#[derive(Clone, Debug, PartialEq)]
pub struct IteratedSums {
    k: usize,
    table: Vec<Vec<f64>>,
}

impl IteratedSums {
    pub fn depth(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.table[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn level(&self, j: usize) -> &[f64] {
        &self.table[j]
    }

    pub fn get(&self, j: usize, n: usize) -> f64 {
        self.table[j][n]
    }
}

pub fn iterate_sums(a: &[f64], k: usize) -> IteratedSums {
    let mut table = Vec::with_capacity(k + 1);
    let mut prev: Vec<f64> = a.to_vec();
    for _ in 0..=k {
        let mut acc = 0.0;
        let next: Vec<f64> = prev
            .iter()
            .map(|&v| {
                acc += v;
                acc
            })
            .collect();
        table.push(next.clone());
        prev = next;
    }
    IteratedSums { k, table }
}

/// Both sides of
/// `(1−x)^{k+1} Σ_{n≤N} s^{(k)}_n x^n = Σ_{n≤N} a_n x^n − x^{N+1} Σ_{j≤k} s^{(j)}_N (1−x)^j`.
pub fn lemma_s_check(a: &[f64], k: usize, n: usize, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain("identity is checked for 0 < x < 1", x));
    }
    if a.len() <= n {
        return Err(Error::invalid("sequence is shorter than N + 1"));
    }
    let sums = iterate_sums(&a[..=n], k);
    let mut lhs = 0.0;
    let mut a_poly = 0.0;
    let mut xp = 1.0;
    for m in 0..=n {
        lhs += sums.get(k, m) * xp;
        a_poly += a[m] * xp;
        xp *= x;
    }
    lhs *= powi(1.0 - x, k as i32 + 1);
    let mut corr = 0.0;
    let mut yp = 1.0;
    for j in 0..=k {
        corr += sums.get(j, n) * yp;
        yp *= 1.0 - x;
    }
    Ok((lhs, a_poly - xp * corr))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    /// `s^{(k)}_n ≥ 0` on the whole prefix.
    pub nonnegative: Verdict,
    pub first_negative: Option<usize>,
    /// `s^{(k)}_n / n^λ → 0`.
    pub vanishing: Verdict,
    /// `max |s|/n^λ` over the last decade divided by the same over the one before.
    pub vanishing_ratio: f64,
    /// `Σ s^{(k)}_n / n^{1+λ} < ∞`.
    pub summable: Verdict,
    /// Growth of the partial sums over the last decade relative to their value.
    pub summable_growth: f64,
}

impl HypothesisReport {
    pub fn overall(&self) -> Verdict {
        let all = [self.nonnegative, self.vanishing, self.summable];
        if all.contains(&Verdict::Fail) {
            Verdict::Fail
        } else if all.contains(&Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    /// Description of the first failed hypothesis; inconclusive probes do not count.
    pub fn failure(&self) -> Option<String> {
        if self.nonnegative == Verdict::Fail {
            return Some(format!("iterated sum is negative at n = {}", self.first_negative.unwrap_or(0)));
        }
        if self.vanishing == Verdict::Fail {
            return Some(format!("s_n/n^lambda does not decay (decade ratio {})", self.vanishing_ratio));
        }
        if self.summable == Verdict::Fail {
            return Some(format!("sum of s_n/n^(1+lambda) keeps growing ({})", self.summable_growth));
        }
        None
    }
}

pub const MIN_PROBE: usize = 1000;

// A decade ratio this close to one counts as no decay at all.
const STALL: f64 = 0.9;

/// Finite probes of the three hypotheses on the prefix `a` (length ≥ 1000).
///
/// Decay is judged by the largest `|s_n|/n^λ` over the last decade against
/// the decade before it: halving passes, a ratio of 0.9 or more fails.
/// Summability passes when the last decade adds less than `1e−6` relative, or
/// when the decade increments shrink at least by half; increments that shrink
/// by less than 10% fail.
pub fn hypotheses_check(a: &[f64], k: usize, lambda: f64) -> Result<HypothesisReport> {
    if a.len() < MIN_PROBE {
        return Err(Error::invalid(format!("hypothesis probes need at least {MIN_PROBE} terms")));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("lambda must be positive", lambda));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("sequence terms must be finite"));
    }
    let sums = iterate_sums(a, k);
    let s = sums.level(k);
    let n_last = s.len() - 1;

    let mut scale: f64 = 0.0;
    let mut first_negative = None;
    for (n, &v) in s.iter().enumerate() {
        scale = scale.max(abs(v));
        if v < -64.0 * f64::EPSILON * scale.max(f64::MIN_POSITIVE) {
            first_negative = Some(n);
            break;
        }
    }
    let nonnegative = if first_negative.is_some() { Verdict::Fail } else { Verdict::Pass };

    let d1 = n_last / 10;
    let d0 = (n_last / 100).max(1);
    let window_max = |lo: usize, hi: usize| (lo..=hi).map(|n| abs(s[n]) / pow(n as f64, lambda)).fold(0.0f64, f64::max);
    let prev = window_max(d0, d1);
    let last = window_max(d1 + 1, n_last);
    let vanishing_ratio = if prev > 0.0 {
        last / prev
    } else if last > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    let vanishing = if vanishing_ratio <= 0.5 {
        Verdict::Pass
    } else if vanishing_ratio >= STALL {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };

    let partial = |hi: usize| (1..=hi).map(|n| s[n] / pow(n as f64, 1.0 + lambda)).sum::<f64>();
    let p0 = partial(d0);
    let p1 = partial(d1);
    let p2 = partial(n_last);
    let g0 = abs(p1 - p0);
    let g1 = abs(p2 - p1);
    let summable_growth = if p2 != 0.0 { g1 / abs(p2) } else { g1 };
    let summable = if summable_growth < 1e-6 || g1 <= 0.5 * g0 {
        Verdict::Pass
    } else if g1 >= STALL * g0 {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };

    Ok(HypothesisReport { nonnegative, first_negative, vanishing, vanishing_ratio, summable, summable_growth })
}

/// Named coefficient sequences.
#[derive(Clone, Debug, PartialEq)]
pub enum CesaroSequence {
    /// `(−1)^n`.
    Alternating,
    /// `(−1)^n (a)_n / n!`, `0 < a ≤ 1`.
    BinomialA(f64),
    /// `(−1)^n / n!`.
    Prym,
    /// `1` for every `n`.
    Ones,
    /// A finite prefix, zero beyond it.
    Custom(Vec<f64>),
}

impl CesaroSequence {
    pub fn from_key(key: &str, a: f64) -> Result<Self> {
        match key {
            "alternating" => Ok(Self::Alternating),
            "binomial-a" => {
                if !(a > 0.0 && a <= 1.0) {
                    return Err(Error::domain("binomial-a needs 0 < a <= 1", a));
                }
                Ok(Self::BinomialA(a))
            }
            "prym" => Ok(Self::Prym),
            "ones" => Ok(Self::Ones),
            _ => Err(Error::invalid(format!("unknown sequence preset '{key}'"))),
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            Self::Alternating => "alternating",
            Self::BinomialA(_) => "binomial-a",
            Self::Prym => "prym",
            Self::Ones => "ones",
            Self::Custom(_) => "custom",
        }
    }

    /// `|a_n|` for the alternating presets, which are Hausdorff moment sequences.
    fn magnitude(&self, n: usize) -> Option<f64> {
        match self {
            Self::Alternating => Some(1.0),
            Self::BinomialA(a) => Some(exp(ln_gamma(a + n as f64) - ln_gamma(*a) - ln_gamma(n as f64 + 1.0))),
            Self::Prym => Some(exp(-ln_gamma(n as f64 + 1.0))),
            _ => None,
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<f64> {
        match self {
            Self::Custom(v) => {
                let mut out = v.clone();
                out.resize(len.max(v.len()), 0.0);
                out.truncate(len);
                out
            }
            Self::Ones => vec![1.0; len],
            Self::Alternating => (0..len).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect(),
            Self::BinomialA(a) => {
                let mut c = 1.0;
                (0..len)
                    .map(|n| {
                        if n > 0 {
                            c *= (a + (n - 1) as f64) / n as f64;
                        }
                        if n % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    })
                    .collect()
            }
            Self::Prym => {
                let mut c = 1.0;
                (0..len)
                    .map(|n| {
                        if n > 0 {
                            c /= n as f64;
                        }
                        if n % 2 == 0 {
                            c
                        } else {
                            -c
                        }
                    })
                    .collect()
            }
        }
    }

    /// `Σ a_n e^{−nt}`.
    pub fn exponential_sum(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::domain("exponential sum needs t > 0", t));
        }
        let q = exp(-t);
        match self {
            Self::Alternating => Ok(1.0 / (1.0 + q)),
            Self::BinomialA(a) => Ok(pow(1.0 + q, -a)),
            Self::Prym => Ok(exp(-q)),
            Self::Ones => Ok(1.0 / (-crate::math::expm1(-t))),
            Self::Custom(v) => {
                let mut acc = 0.0;
                let mut p = 1.0;
                for &c in v {
                    let term = c * p;
                    acc += term;
                    if abs(term) < 1e-18 * abs(acc) && p < 1e-18 {
                        break;
                    }
                    p *= q;
                }
                Ok(acc)
            }
        }
    }

    /// `κ(t) = t^{−(k+1)} Σ a_n e^{−nt}`.
    pub fn kappa(&self, k: usize, t: f64) -> Result<f64> {
        Ok(self.exponential_sum(t)? / powi(t, k as i32 + 1))
    }

    /// `Σ a_n (x+n)^{−λ}` by accelerated or plain summation.
    pub fn direct(&self, x: f64, lambda: f64) -> Result<f64> {
        if self.magnitude(0).is_some() {
            let policy = SeriesPolicy::default();
            let v = alternating_sum(|n| self.magnitude(n).unwrap_or(0.0) * pow(x + n as f64, -lambda), &policy)?;
            return Ok(v.value);
        }
        match self {
            Self::Custom(v) => Ok(v.iter().enumerate().map(|(n, &c)| c * pow(x + n as f64, -lambda)).sum()),
            _ => {
                let policy = SeriesPolicy::direct(2_000_000, 1e-16);
                Ok(direct_sum(|n| pow(x + n as f64, -lambda), &policy)?.value)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThreeWay {
    pub direct: f64,
    pub stieltjes: f64,
    pub laplace: f64,
}

impl ThreeWay {
    pub fn spread(&self) -> f64 {
        let v = [self.direct, self.stieltjes, self.laplace];
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        hi - lo
    }
}

pub const DEFAULT_PREFIX: usize = 4000;

/// The direct series, the Stieltjes integral over the measure built from the
/// first `prefix` terms, and `Γ(λ)^{−1} ∫ e^{−xt} t^{λ+k} κ(t) dt`.
pub fn series_eval_three_ways(seq: &CesaroSequence, k: usize, lambda: f64, x: f64, prefix: usize) -> Result<ThreeWay> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("series needs x > 0", x));
    }
    let a = seq.prefix(prefix);
    let m = crate::stieltjes::measure_cesaro(&a, k, lambda)?;
    let stieltjes = crate::stieltjes::stieltjes_eval(&m, x)?;
    let direct = seq.direct(x, lambda)?;
    let g = exp(-ln_gamma(lambda));
    let mut failure = None;
    let integral = crate::laplace::integrate_decaying(
        |t| {
            if t <= 0.0 {
                return 0.0;
            }
            match seq.exponential_sum(t) {
                Ok(s) => s * pow(t, lambda - 1.0) * exp(-x * t),
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        x,
        0.0,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(ThreeWay { direct, stieltjes, laplace: g * integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::LN_2;
    use proptest::prelude::*;

    #[test]
    fn iterated_sums_of_alternating_signs() {
        let a = CesaroSequence::Alternating.prefix(8);
        let s = iterate_sums(&a, 1);
        assert_eq!(s.level(0), &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(s.level(1), &[1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0]);
    }

    #[test]
    fn iterated_sums_of_a_unit_impulse() {
        let mut a = vec![0.0; 12];
        a[0] = 1.0;
        let s = iterate_sums(&a, 2);
        for n in 0..12 {
            let mut direct = 0.0;
            for m in 0..=n {
                for _ in 0..=m {
                    direct += 1.0;
                }
            }
            assert_eq!(s.get(2, n), direct);
        }
    }

    #[test]
    fn lemma_identity_examples() {
        let a = CesaroSequence::Alternating.prefix(8);
        let (l, r) = lemma_s_check(&a, 1, 7, 0.37).unwrap();
        assert!((l - r).abs() < 1e-12 * (1.0 + l.abs()));
        let (l, r) = lemma_s_check(&[2.5], 0, 0, 0.3).unwrap();
        assert!((l - (1.0 - 0.3) * 2.5).abs() < 1e-15 && (r - (2.5 - 0.3 * 2.5)).abs() < 1e-15);
        assert!(lemma_s_check(&a, 1, 7, 1.0).is_err());
    }

    #[test]
    fn hypotheses_for_presets() {
        let alt = hypotheses_check(&CesaroSequence::Alternating.prefix(4000), 0, 1.0).unwrap();
        assert_eq!(alt.overall(), Verdict::Pass, "{alt:?}");
        let bin = hypotheses_check(&CesaroSequence::BinomialA(0.5).prefix(4000), 0, 1.0).unwrap();
        assert_eq!(bin.overall(), Verdict::Pass, "{bin:?}");
        let ones = hypotheses_check(&CesaroSequence::Ones.prefix(4000), 0, 1.0).unwrap();
        assert_eq!(ones.vanishing, Verdict::Fail);
        assert!(ones.failure().is_some());
        let neg =
            hypotheses_check(&CesaroSequence::Alternating.prefix(4000).iter().map(|v| -v).collect::<Vec<_>>(), 0, 1.0)
                .unwrap();
        assert_eq!(neg.first_negative, Some(0));
        assert!(hypotheses_check(&[1.0; 10], 0, 1.0).is_err());
    }

    #[test]
    fn prym_kappa_collapses() {
        for j in 1..=20 {
            let t = 0.25 * j as f64;
            let k = CesaroSequence::Prym.kappa(0, t).unwrap();
            assert!((k * t - exp(-exp(-t))).abs() < 1e-12);
            let series: f64 =
                CesaroSequence::Prym.prefix(40).iter().enumerate().map(|(n, c)| c * exp(-(n as f64) * t)).sum();
            assert!((k * t - series).abs() < 1e-12);
        }
    }

    #[test]
    fn three_way_evaluations() {
        let p = series_eval_three_ways(&CesaroSequence::Prym, 0, 1.0, 1.0, 2000).unwrap();
        let e = 1.0 - exp(-1.0);
        for v in [p.direct, p.stieltjes, p.laplace] {
            assert!((v - e).abs() < 1e-8, "{p:?}");
        }
        let b = series_eval_three_ways(&CesaroSequence::Alternating, 0, 1.0, 1.0, 4000).unwrap();
        for v in [b.direct, b.stieltjes, b.laplace] {
            assert!((v - LN_2).abs() < 1e-8, "{b:?}");
        }
        let g = series_eval_three_ways(&CesaroSequence::BinomialA(0.5), 0, 1.5, 2.0, 4000).unwrap();
        assert!(g.spread() < 1e-7, "{g:?}");
        let want = crate::specfun::beta_a_lambda(2.0, 0.5, 1.5).unwrap();
        assert!((g.direct - want).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn lemma_identity_random(a in proptest::collection::vec(-1.0f64..1.0, 51), k in 0usize..=3, n in 0usize..=50, x in 0.01f64..0.99) {
            let (l, r) = lemma_s_check(&a, k, n, x).unwrap();
            prop_assert!((l - r).abs() <= 1e-12 * (1.0 + l.abs()));
        }
    }
}
