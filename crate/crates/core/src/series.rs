//! Truncation policies for slowly convergent alternating series.

use crate::error::{Error, Result};
use crate::math::{abs, ceil, ln, sqrt, KahanSum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acceleration {
    DirectWithTailBound,
    AlternatingAcceleration,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesPolicy {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub acceleration: Acceleration,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self { max_terms: 200_000, abs_tol: 1e-17, acceleration: Acceleration::AlternatingAcceleration }
    }
}

impl SeriesPolicy {
    pub fn new(max_terms: usize, abs_tol: f64, acceleration: Acceleration) -> Result<Self> {
        if max_terms < 8 {
            return Err(Error::invalid("series policy needs max_terms >= 8"));
        }
        if !(abs_tol > 0.0) {
            return Err(Error::domain("series abs_tol must be positive", abs_tol));
        }
        Ok(Self { max_terms, abs_tol, acceleration })
    }

    pub fn direct(max_terms: usize, abs_tol: f64) -> Self {
        Self { max_terms, abs_tol, acceleration: Acceleration::DirectWithTailBound }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Certified (direct) or a-priori (accelerated) truncation bound.
    pub bound: f64,
    pub terms: usize,
}

/// Σ_{n≥0} (−1)^n b_n for a nonnegative, decreasing sequence `b`.
///
/// The accelerated path is the Cohen–Villegas–Zagier scheme, whose error is
/// at most 2·b_0/(3+√8)^n whenever `b` is a moment sequence of a positive
/// measure on [0, 1] (true for every b_n = c_n/(x+n)^λ used here).
pub fn alternating_sum<F: FnMut(usize) -> f64>(mut b: F, policy: &SeriesPolicy) -> Result<SeriesValue> {
    match policy.acceleration {
        Acceleration::AlternatingAcceleration => {
            let b0 = abs(b(0));
            if b0 == 0.0 {
                return Ok(SeriesValue { value: 0.0, bound: 0.0, terms: 1 });
            }
            let rate = 3.0 + sqrt(8.0);
            let wanted = ceil(ln(2.0 * b0 / policy.abs_tol) / ln(rate)).max(8.0) as usize;
            let n = wanted.min(policy.max_terms).min(64);
            Ok(cvz(&mut b, n))
        }
        Acceleration::DirectWithTailBound => {
            let mut acc = KahanSum::new();
            let mut sign = 1.0;
            for n in 0..policy.max_terms {
                let t = b(n);
                if abs(t) <= policy.abs_tol {
                    return Ok(SeriesValue { value: acc.value(), bound: abs(t), terms: n });
                }
                acc.add(sign * t);
                sign = -sign;
            }
            Err(Error::NonConvergence { what: "direct alternating series", estimate: abs(b(policy.max_terms)) })
        }
    }
}

fn cvz<F: FnMut(usize) -> f64>(b: &mut F, n: usize) -> SeriesValue {
    let rate = 3.0 + sqrt(8.0);
    let mut d = crate::math::powi(rate, n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut bb = -1.0;
    let mut c = -d;
    let mut s = KahanSum::new();
    let mut b0 = 0.0;
    let nf = n as f64;
    for k in 0..n {
        let term = b(k);
        if k == 0 {
            b0 = abs(term);
        }
        c = bb - c;
        s.add(c * term);
        let kf = k as f64;
        bb = (kf + nf) * (kf - nf) * bb / ((kf + 0.5) * (kf + 1.0));
    }
    SeriesValue { value: s.value() / d, bound: 2.0 * b0 / crate::math::powi(rate, n as i32), terms: n }
}

/// Σ_{n≥0} t_n stopped once |t_n| falls below the tolerance; intended for
/// factorially decaying terms.
pub fn direct_sum<F: FnMut(usize) -> f64>(mut t: F, policy: &SeriesPolicy) -> Result<SeriesValue> {
    let mut acc = KahanSum::new();
    for n in 0..policy.max_terms {
        let v = t(n);
        acc.add(v);
        if abs(v) < policy.abs_tol && n > 0 {
            return Ok(SeriesValue { value: acc.value(), bound: abs(v), terms: n + 1 });
        }
    }
    Err(Error::NonConvergence { what: "direct series", estimate: abs(t(policy.max_terms)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{LN_2, PI};

    #[test]
    fn cvz_log2_and_leibniz() {
        let p = SeriesPolicy::default();
        let v = alternating_sum(|n| 1.0 / (n as f64 + 1.0), &p).unwrap();
        assert!((v.value - LN_2).abs() < 1e-15);
        let v = alternating_sum(|n| 1.0 / (2.0 * n as f64 + 1.0), &p).unwrap();
        assert!((v.value - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn direct_path_certifies_its_bound() {
        let p = SeriesPolicy::direct(1000, 1e-12);
        let v = alternating_sum(|n| 1.0 / crate::math::factorial(n as u32), &p).unwrap();
        assert!((v.value - crate::math::exp(-1.0)).abs() <= v.bound);
    }

    #[test]
    fn direct_path_reports_nonconvergence() {
        let p = SeriesPolicy::direct(100, 1e-12);
        assert!(alternating_sum(|n| 1.0 / (n as f64 + 1.0), &p).is_err());
    }

    #[test]
    fn policy_validation() {
        assert!(SeriesPolicy::new(4, 1e-10, Acceleration::DirectWithTailBound).is_err());
        assert!(SeriesPolicy::new(10, 0.0, Acceleration::DirectWithTailBound).is_err());
    }
}
