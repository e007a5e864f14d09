use alloc::vec;
use alloc::vec::Vec;

use super::measure::{RepresentingMeasure, TailBound};
use super::piecewise::{horner, PiecewisePolynomial};
use crate::error::{Error, Result};
use crate::math::{abs, binomial, ceil, floor, pow, powi, sqrt};

/// Where the tail bound of a truncated constructor is enforced.
pub const CONTRACT_X_MIN: f64 = 0.5;

/// Input for [`measure_alternating`].
#[derive(Clone, Debug, PartialEq)]
pub enum AlternatingSequence<'a> {
    /// The finite sum `f_N = Σ_{n≤N} (−1)^n (x+a_n)^{-λ}` with `N+1 = len`.
    Finite(&'a [f64]),
    /// `a_n = start + n·step` summed to infinity; the first `pairs` gaps are
    /// exact and the rest is replaced by the mean density `λ/2`.
    Arithmetic { start: f64, step: f64, pairs: usize },
    /// An infinite nondecreasing sequence known through this even-length
    /// prefix; the remainder is dropped.
    Truncated(&'a [f64]),
}

fn check_nondecreasing(a: &[f64]) -> Result<()> {
    if a.first().is_some_and(|&a0| !(a0 >= 0.0)) {
        return Err(Error::invalid("sequence must start at a_0 >= 0"));
    }
    if a.iter().any(|v| !v.is_finite()) || a.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::invalid("sequence must be finite and nondecreasing"));
    }
    Ok(())
}

/// Collects `(left, right, value)` constant pieces into a density; pieces
/// must be sorted and disjoint. `right = ∞` is allowed for the last piece.
fn constant_pieces(pieces: &[(f64, f64, f64)]) -> Result<PiecewisePolynomial> {
    let mut bps = vec![0.0];
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut tail = false;
    for &(l, r, v) in pieces {
        if !(r > l) {
            continue;
        }
        let end = *bps.last().unwrap();
        if l > end {
            rows.push(vec![0.0]);
            bps.push(l);
        }
        if r.is_infinite() {
            rows.push(vec![v]);
            tail = true;
            break;
        }
        rows.push(vec![v]);
        bps.push(r);
    }
    if !tail && bps.len() == 1 {
        return Ok(PiecewisePolynomial::zero());
    }
    PiecewisePolynomial::new(bps, rows, tail)
}

/// Representing measure `λ Σ dt|(a_{2n}, a_{2n+1})` (order λ+1, c = 0) of
/// `Σ (−1)^n/(x+a_n)^λ`.
pub fn measure_alternating(seq: AlternatingSequence<'_>, lambda: f64) -> Result<RepresentingMeasure> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::domain("alternating measure needs 0 < lambda <= 1", lambda));
    }
    let order = lambda + 1.0;
    match seq {
        AlternatingSequence::Finite(a) => {
            check_nondecreasing(a)?;
            let mut pieces: Vec<(f64, f64, f64)> =
                a.chunks(2).filter(|p| p.len() == 2).map(|p| (p[0], p[1], lambda)).collect();
            if a.len() % 2 == 1 {
                pieces.push((a[a.len() - 1], f64::INFINITY, lambda));
            }
            RepresentingMeasure::new(Vec::new(), merge_touching(pieces), order, 0.0)
        }
        AlternatingSequence::Truncated(a) => {
            if a.len() % 2 == 1 {
                return Err(Error::invalid("truncated prefix must contain whole pairs"));
            }
            check_nondecreasing(a)?;
            let pieces: Vec<_> = a.chunks(2).map(|p| (p[0], p[1], lambda)).collect();
            let end = a.last().copied().unwrap_or(0.0);
            // Leibniz: the dropped remainder is below (x + a_{2N})^{-λ} = λ ∫_T^∞ (x+t)^{-λ-1}.
            let bound = TailBound { start: end, integral: lambda, ..TailBound::EXACT };
            Ok(RepresentingMeasure::new(Vec::new(), merge_touching(pieces), order, 0.0)?.with_tail_bound(bound))
        }
        AlternatingSequence::Arithmetic { start, step, pairs } => {
            if !(start >= 0.0) || !(step > 0.0) || !step.is_finite() {
                return Err(Error::invalid("arithmetic sequence needs start >= 0 and step > 0"));
            }
            let mut pieces: Vec<_> = (0..pairs)
                .map(|n| {
                    let l = start + 2.0 * n as f64 * step;
                    (l, l + step, lambda)
                })
                .collect();
            let t = start + 2.0 * pairs as f64 * step;
            pieces.push((t, f64::INFINITY, 0.5 * lambda));
            // Pairing (P, P+s) against half of (P, P+2s) and telescoping over
            // a decreasing kernel leaves at most λ·s/2·g(T).
            let bound = TailBound { start: t, value: 0.5 * lambda * step, ..TailBound::EXACT };
            Ok(RepresentingMeasure::new(Vec::new(), merge_touching(pieces), order, 0.0)?.with_tail_bound(bound))
        }
    }
}

fn merge_touching(pieces: Vec<(f64, f64, f64)>) -> PiecewisePolynomial {
    let mut merged: Vec<(f64, f64, f64)> = Vec::with_capacity(pieces.len());
    for p in pieces {
        if !(p.1 > p.0) {
            continue;
        }
        match merged.last_mut() {
            Some(last) if last.1 == p.0 && last.2 == p.2 => last.1 = p.1,
            _ => merged.push(p),
        }
    }
    constant_pieces(&merged).expect("pieces are sorted")
}

/// Smallest number of exact pairs so that the homogenized tail of the
/// arithmetic alternating measure stays below `tol` for every `x ≥ x_min`.
pub fn alternating_pairs_for(lambda: f64, start: f64, step: f64, x_min: f64, tol: f64) -> usize {
    // λ·step/2·(x+T)^{-λ-1} ≤ tol
    let t = pow(0.5 * lambda * step / tol, 1.0 / (lambda + 1.0)) - x_min - start;
    (ceil(t.max(0.0) / (2.0 * step)) as usize).max(1)
}

/// `Σ_{n≥0} ε_n` at the given order. The first `count` atoms are kept and the
/// rest is replaced by unit density on `[count − ½, ∞)` (midpoint rule, error
/// at most `|g'(T)|/8` for a convex decreasing kernel).
pub fn measure_unit_atoms(count: usize, order: f64) -> Result<RepresentingMeasure> {
    if !(order > 1.0) {
        return Err(Error::domain("unit atoms need order > 1", order));
    }
    if count == 0 {
        return Err(Error::invalid("at least one exact atom is required"));
    }
    let atoms = (0..count).map(|n| (n as f64, 1.0)).collect();
    let t = count as f64 - 0.5;
    let density = PiecewisePolynomial::new(vec![0.0, t], vec![vec![0.0], vec![1.0]], true)?;
    let bound = TailBound { start: t, slope: 0.125, ..TailBound::EXACT };
    Ok(RepresentingMeasure::new(atoms, density, order, 0.0)?.with_tail_bound(bound))
}

/// `χ_(0,a) * χ_(0,b)`: the trapezoid of total mass `a·b`.
pub fn convolve_box(a: f64, b: f64) -> Result<PiecewisePolynomial> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid("box convolution needs a, b > 0"));
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if lo == hi {
        return PiecewisePolynomial::new(vec![0.0, lo, 2.0 * lo], vec![vec![0.0, 1.0], vec![lo, -1.0]], false);
    }
    PiecewisePolynomial::new(vec![0.0, lo, hi, lo + hi], vec![vec![0.0, 1.0], vec![lo], vec![lo, -1.0]], false)
}

// Value and slope of the trapezoid at s (right limits).
fn trapezoid(a: f64, b: f64, s: f64) -> (f64, f64) {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if s < 0.0 || s >= lo + hi {
        (0.0, 0.0)
    } else if s < lo {
        (s, 1.0)
    } else if s < hi {
        (lo, 0.0)
    } else {
        (lo + hi - s, -1.0)
    }
}

// g(t) = Σ_k trap(t − k) with its slope, for the gamma-ratio density.
fn shifted_trapezoids(a: f64, b: f64, t: f64) -> (f64, f64) {
    let k_lo = ceil(t - a - b).max(0.0) as i64;
    let k_hi = floor(t) as i64;
    let (mut v, mut s) = (0.0, 0.0);
    for k in k_lo.max(0)..=k_hi {
        let (tv, ts) = trapezoid(a, b, t - k as f64);
        v += tv;
        s += ts;
    }
    (v, s)
}

// Piecewise-linear rows of Σ_k trap(t − k − shift) on [0, end), with
// breakpoints at every kink.
fn trapezoid_train(a: f64, b: f64, shifts: &[f64], end: f64) -> Result<PiecewisePolynomial> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut cuts: Vec<f64> = vec![0.0, end];
    for &k in shifts {
        for c in [k, k + lo, k + hi, k + lo + hi] {
            if c > 0.0 && c < end {
                cuts.push(c);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut bps: Vec<f64> = Vec::with_capacity(cuts.len());
    for c in cuts {
        match bps.last() {
            Some(&p) if c - p <= 1e-12 * (1.0 + p) => {}
            _ => bps.push(c),
        }
    }
    if bps.len() < 2 {
        return Ok(PiecewisePolynomial::zero());
    }
    *bps.last_mut().unwrap() = end;
    let mut rows = Vec::with_capacity(bps.len() - 1);
    for w in bps.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let (mut v, mut s) = (0.0, 0.0);
        // Only shifts with mid − (a+b) < k ≤ mid contribute.
        let lo_i = shifts.partition_point(|&k| k <= mid - lo - hi);
        let hi_i = shifts.partition_point(|&k| k <= mid);
        for &k in &shifts[lo_i..hi_i] {
            let (tv, ts) = trapezoid(a, b, mid - k);
            v += tv;
            s += ts;
        }
        let base = v - s * (mid - w[0]);
        rows.push(if s == 0.0 { vec![base] } else { vec![base, s] });
    }
    PiecewisePolynomial::new(bps, rows, false)
}

/// `sup |g − a·b|` over one period of the periodic regime of `g`.
fn gamma_ratio_oscillation(a: f64, b: f64) -> f64 {
    let p = ceil(a + b) + 1.0;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut pts = vec![p, p + 1.0];
    for f in [lo, hi, lo + hi] {
        let frac = f - floor(f);
        pts.push(p + frac);
    }
    let mut sup: f64 = 0.0;
    for &t in &pts {
        // g is piecewise linear, so extremes sit at kinks; take both one-sided values.
        for s in [t, t - 1e-9] {
            sup = sup.max(abs(shifted_trapezoids(a, b, s).0 - a * b));
        }
    }
    // Rounding noise of exact cancellation (integer a or b) is not oscillation.
    if sup < 1e-12 * (1.0 + a * b) {
        0.0
    } else {
        sup
    }
}

/// Cap for [`measure_gamma_ratio`] so that the tail bound is below `tol` at `x ≥ x_min`.
pub fn gamma_ratio_cap(a: f64, b: f64, x_min: f64, tol: f64) -> usize {
    let base = ceil(a + b) as usize + 20;
    let osc = gamma_ratio_oscillation(a, b);
    let need = ceil(sqrt(osc / tol) - x_min).max(0.0) as usize;
    base.max(need)
}

/// Order-2 measure with density `g(t) = Σ_{k ≤ t} (χ_(0,a)*χ_(0,b))(t−k)`
/// representing `log Γ(x)Γ(x+a+b)/(Γ(x+a)Γ(x+b))`. Exact on `[0, cap)`;
/// beyond, `g` is periodic with mean `a·b` and is replaced by that mean.
/// Fails when the bound exceeds `1e−7` at `x = 0.5`.
pub fn measure_gamma_ratio(a: f64, b: f64, cap: usize) -> Result<RepresentingMeasure> {
    measure_gamma_ratio_with_tol(a, b, cap, 1e-7)
}

pub fn measure_gamma_ratio_with_tol(a: f64, b: f64, cap: usize, tol: f64) -> Result<RepresentingMeasure> {
    convolve_box(a, b)?;
    let min_cap = ceil(a + b) as usize + 20;
    if cap < min_cap {
        return Err(Error::CapTooSmall { cap, bound: f64::INFINITY, tol });
    }
    let end = cap as f64;
    let shifts: Vec<f64> = (0..cap).map(|k| k as f64).collect();
    let train = trapezoid_train(a, b, &shifts, end)?;
    let mut bps = train.breakpoints().to_vec();
    let mut rows: Vec<Vec<f64>> = train.rows().map(|r| r.to_vec()).collect();
    rows.push(vec![a * b]);
    let osc = gamma_ratio_oscillation(a, b);
    let bound = TailBound { start: end, value: osc, ..TailBound::EXACT };
    let b_at = bound.stieltjes(CONTRACT_X_MIN, 2.0);
    if b_at > tol {
        return Err(Error::CapTooSmall { cap, bound: b_at, tol });
    }
    bps.dedup();
    let density = PiecewisePolynomial::new(bps, rows, true)?;
    Ok(RepresentingMeasure::new(Vec::new(), density, 2.0, 0.0)?.with_tail_bound(bound))
}

/// `g(t)` by direct summation (the oracle for the assembled density).
pub fn gamma_ratio_density(a: f64, b: f64, t: f64) -> f64 {
    shifted_trapezoids(a, b, t).0
}

fn check_zeros(zeros: &[f64]) -> Result<()> {
    if zeros.is_empty() || zeros.iter().any(|&z| !(z > 0.0) || !z.is_finite()) {
        return Err(Error::invalid("zeros must be a nonempty list of positive numbers"));
    }
    if zeros.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::invalid("zeros must be increasing"));
    }
    Ok(())
}

/// Order-2 measure with density `Σ_n trap_{a,b}(t − a_n)` representing
/// `log f(x+a)f(x+b)/(f(x)f(x+a+b))` for `f(z) = Π(1+z/a_n)e^{−z/a_n}`.
/// A zero `a` or `b` gives the zero measure.
pub fn measure_genus1_log_ratio(zeros: &[f64], a: f64, b: f64) -> Result<RepresentingMeasure> {
    check_zeros(zeros)?;
    if !(a >= 0.0) || !(b >= 0.0) {
        return Err(Error::invalid("genus-1 ratio needs a, b >= 0"));
    }
    if a == 0.0 || b == 0.0 {
        return RepresentingMeasure::new(Vec::new(), PiecewisePolynomial::zero(), 2.0, 0.0);
    }
    let end = zeros[zeros.len() - 1] + a + b;
    let density = trapezoid_train(a, b, zeros, end)?;
    RepresentingMeasure::new(Vec::new(), density, 2.0, 0.0)
}

/// Direct evaluation of the genus-1 log ratio from the product; the
/// exponential factors cancel because `c = a + b`.
pub fn genus1_log_ratio_direct(zeros: &[f64], a: f64, b: f64, x: f64) -> Result<f64> {
    check_zeros(zeros)?;
    if !(x > 0.0) {
        return Err(Error::domain("genus-1 ratio needs x > 0", x));
    }
    let mut acc = crate::math::KahanSum::new();
    for &z in zeros {
        let w = z + x;
        acc.add(crate::math::ln1p(a / w) + crate::math::ln1p(b / w) - crate::math::ln1p((a + b) / w));
    }
    Ok(acc.value())
}

/// Cap for [`measure_gamma_reciprocal_ratio`]: the dropped density is at
/// most `d_cap = (1−s)_cap/cap!`, so the tail is below `d_cap/(x+cap)`.
pub fn gamma_reciprocal_cap(s: f64, x_min: f64, tol: f64) -> usize {
    let mut cap = 64usize;
    loop {
        let d = pochhammer_ratio(1.0 - s, cap);
        if d / (x_min + cap as f64) <= tol || cap > 1 << 26 {
            return cap;
        }
        cap *= 2;
    }
}

// (c)_k / k!
fn pochhammer_ratio(c: f64, k: usize) -> f64 {
    use crate::specfun::ln_gamma_raw;
    crate::math::exp(ln_gamma_raw(c + k as f64) - ln_gamma_raw(c) - ln_gamma_raw(k as f64 + 1.0))
}

/// Order-2 measure with density `Σ_k (1−s)_k/k! χ_(k,k+1)`; divided by
/// `Γ(s+1)` it represents `Γ(x)/Γ(x+s+1)`. Fails when the truncation bound
/// exceeds `1e−8` at `x = 0.5`.
pub fn measure_gamma_reciprocal_ratio(s: f64, cap: usize) -> Result<RepresentingMeasure> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain("gamma reciprocal ratio needs 0 < s < 1", s));
    }
    if cap == 0 {
        return Err(Error::CapTooSmall { cap, bound: f64::INFINITY, tol: 1e-8 });
    }
    let mut rows = Vec::with_capacity(cap);
    let mut d = 1.0;
    for k in 0..cap {
        rows.push(vec![d]);
        d *= (1.0 - s + k as f64) / (k as f64 + 1.0);
    }
    let bps: Vec<f64> = (0..=cap).map(|k| k as f64).collect();
    let bound = TailBound { start: cap as f64, integral: d, ..TailBound::EXACT };
    let b_at = bound.stieltjes(CONTRACT_X_MIN, 2.0);
    if b_at > 1e-8 {
        return Err(Error::CapTooSmall { cap, bound: b_at, tol: 1e-8 });
    }
    let density = PiecewisePolynomial::new(bps, rows, false)?;
    Ok(RepresentingMeasure::new(Vec::new(), density, 2.0, 0.0)?.with_tail_bound(bound))
}

// Gaussian elimination with partial pivoting for the tiny tail systems.
fn solve_small(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| abs(a[i][col]).total_cmp(&abs(a[j][col]))).expect("non-empty range");
        if a[piv][col] == 0.0 {
            return Err(Error::invalid("singular tail system"));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Ok(x)
}

/// `(λ)_{k+1}/k!`
fn cesaro_scale(k: usize, lambda: f64) -> f64 {
    let mut c = 1.0;
    for j in 0..=k {
        c *= lambda + j as f64;
    }
    c / crate::math::factorial(k as u32)
}

/// Measure of order `λ+k+1` with density `((λ)_{k+1}/k!) Σ_{j≤m} a_j (t−j)^k`
/// on `(m, m+1)`, after checking the hypotheses on the prefix `a`.
pub fn measure_cesaro(a: &[f64], k: usize, lambda: f64) -> Result<RepresentingMeasure> {
    let report = crate::cesaro::hypotheses_check(a, k, lambda)?;
    if let Some(msg) = report.failure() {
        return Err(Error::HypothesisViolation(msg));
    }
    measure_cesaro_unchecked(a, k, lambda)
}

/// [`measure_cesaro`] without the hypothesis checks. The prefix is exact up to
/// a cut within its last two intervals; beyond it a polynomial matching the
/// mean over the last periods takes over, with a bound estimated from the
/// size and drift of the oscillation about it.
pub fn measure_cesaro_unchecked(a: &[f64], k: usize, lambda: f64) -> Result<RepresentingMeasure> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain("cesaro measure needs lambda > 0", lambda));
    }
    if k > 8 {
        return Err(Error::invalid("cesaro depth k is limited to 8"));
    }
    if a.len() < 4 {
        return Err(Error::invalid("cesaro measure needs at least four terms"));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("sequence terms must be finite"));
    }
    let n = a.len();
    let c = cesaro_scale(k, lambda);
    // S_q(m) = Σ_{j≤m} a_j (m−j)^q, advanced by binomial expansion.
    let mut s = vec![0.0; k + 1];
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for m in 0..n {
        if m > 0 {
            let prev = s.clone();
            for q in 0..=k {
                s[q] = (0..=q).map(|r| binomial(q as u32, r as u32) * prev[r]).sum::<f64>();
            }
        }
        // (m − m)^q vanishes for q ≥ 1, so a_m only enters S_0.
        s[0] += a[m];
        // (u + m − j)^k = Σ_p C(k,p) u^p (m−j)^{k−p}
        let row: Vec<f64> = (0..=k).map(|p| c * binomial(k as u32, p as u32) * s[k - p]).collect();
        rows.push(row);
    }
    let shift = |row: &[f64], d: f64| super::measure::taylor_shift(row, d);
    // Tail polynomial in v = t − n matching the integral of the density over
    // each of the last k+1 periods of length two.
    let periods = k + 1;
    if n < 2 * periods + 2 {
        return Err(Error::invalid("cesaro measure needs at least 2k+4 terms"));
    }
    let mut mat = vec![vec![0.0; periods]; periods];
    let mut rhs = vec![0.0; periods];
    for i in 0..periods {
        let (lo, hi) = (-2.0 * (i + 1) as f64, -2.0 * i as f64);
        for (p, cell) in mat[i].iter_mut().enumerate() {
            let e = p as i32 + 1;
            *cell = (powi(hi, e) - powi(lo, e)) / e as f64;
        }
        for m in [n - 2 * i - 2, n - 2 * i - 1] {
            rhs[i] += rows[m].iter().enumerate().map(|(p, &c)| c / (p + 1) as f64).sum::<f64>();
        }
    }
    let tail_at_n = solve_small(mat, rhs)?;
    // Oscillation about the tail on the last period, extended with period two.
    let osc = |t: f64| {
        let mut tt = t;
        while tt >= n as f64 {
            tt -= 2.0;
        }
        let m = floor(tt) as usize;
        horner(&rows[m], tt - m as f64) - horner(&tail_at_n, t - n as f64)
    };
    // Cut where the running integral of the oscillation has zero mean, so the
    // leading error term of the homogenized tail cancels.
    let mut best = (f64::INFINITY, n as f64 - 1.0);
    for j in 1..=4 {
        let c = n as f64 - 0.5 * j as f64;
        let pts: Vec<f64> = (0..=8).map(|i| c + 0.25 * i as f64).collect();
        let mean = 0.5 * crate::quadrature::fixed_panels(|s| (c + 2.0 - s) * osc(s), &pts);
        if abs(mean) < best.0 {
            best = (abs(mean), c);
        }
    }
    let start = best.1;
    let mut value: f64 = 0.0;
    let mut drift: f64 = 0.0;
    for j in 0..=16 {
        let t = n as f64 - 2.0 + j as f64 / 8.0;
        value = value.max(abs(osc(t)));
        drift = drift.max(abs(osc(t) - osc(t - 2.0)));
    }
    let cut = floor(start) as usize;
    rows.truncate(cut + 1);
    let mut bps: Vec<f64> = (0..=cut).map(|m| m as f64).collect();
    if start > cut as f64 {
        bps.push(start);
    } else {
        rows.pop();
    }
    rows.push(shift(&tail_at_n, start - n as f64));
    let density = PiecewisePolynomial::new(bps, rows, true)?;
    let bound = TailBound { start, value, integral: drift, ..TailBound::EXACT };
    Ok(RepresentingMeasure::new(Vec::new(), density, lambda + k as f64 + 1.0, 0.0)?.with_tail_bound(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{exp, LN_2, PI};
    use crate::specfun::{gamma_ratio_log, ln_gamma_raw, nielsen_beta};

    fn eval(m: &RepresentingMeasure, x: f64) -> f64 {
        m.eval_with_bound(x).unwrap().0
    }

    #[test]
    fn two_term_sum() {
        let m = measure_alternating(AlternatingSequence::Finite(&[0.0, 1.0]), 1.0).unwrap();
        assert_eq!(m.density().eval(0.5), 1.0);
        assert_eq!(m.density().eval(1.5), 0.0);
        for &x in &[0.1, 1.0, 10.0] {
            let want = 1.0 / (x * (x + 1.0));
            assert!((eval(&m, x) - want).abs() < 1e-15 * want);
        }
    }

    #[test]
    fn odd_length_input_gets_a_tail() {
        let a = [0.0, 1.0, 2.0];
        let m = measure_alternating(AlternatingSequence::Finite(&a), 1.0).unwrap();
        assert_eq!(m.density().eval(0.5), 1.0);
        assert_eq!(m.density().eval(1.5), 0.0);
        assert_eq!(m.density().eval(2.5), 1.0);
        assert_eq!(m.density().eval(1e6), 1.0);
        let x = 0.7;
        let direct = 1.0 / x - 1.0 / (x + 1.0) + 1.0 / (x + 2.0);
        assert!((eval(&m, x) - direct).abs() < 1e-14);
    }

    #[test]
    fn finite_sum_with_general_lambda() {
        let a = [0.3, 0.3, 1.1, 2.0, 2.0, 5.5];
        let lam = 0.4;
        let m = measure_alternating(AlternatingSequence::Finite(&a), lam).unwrap();
        let x = 1.3;
        let direct: f64 =
            a.iter().enumerate().map(|(n, &an)| if n % 2 == 0 { 1.0 } else { -1.0 } * pow(x + an, -lam)).sum();
        assert!((eval(&m, x) - direct).abs() < 1e-12, "{} {}", eval(&m, x), direct);
    }

    #[test]
    fn rejects_decreasing_sequences() {
        assert!(measure_alternating(AlternatingSequence::Finite(&[1.0, 0.5]), 1.0).is_err());
        assert!(measure_alternating(AlternatingSequence::Finite(&[-1.0, 0.5]), 1.0).is_err());
        assert!(measure_alternating(AlternatingSequence::Finite(&[0.0, 1.0]), 1.5).is_err());
    }

    #[test]
    fn nielsen_beta_from_alternating_measure() {
        let pairs = alternating_pairs_for(1.0, 0.0, 1.0, 0.5, 1e-10);
        let m = measure_alternating(AlternatingSequence::Arithmetic { start: 0.0, step: 1.0, pairs }, 1.0).unwrap();
        assert!((eval(&m, 1.0) - LN_2).abs() < 1e-10);
        for &x in &crate::math::log_space(0.5, 50.0, 25) {
            let (v, bound) = m.eval_with_bound(x).unwrap();
            assert!(bound < 1e-10);
            assert!((v - nielsen_beta(x).unwrap()).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn truncated_prefix_is_bounded() {
        let a: Vec<f64> = (0..2000).map(|n| n as f64).collect();
        let m = measure_alternating(AlternatingSequence::Truncated(&a), 1.0).unwrap();
        let (v, bound) = m.eval_with_bound(1.0).unwrap();
        assert!((v - LN_2).abs() <= bound);
    }

    #[test]
    fn unit_atoms_give_trigamma() {
        let m = measure_unit_atoms(1000, 2.0).unwrap();
        let (v, bound) = m.eval_with_bound(1.0).unwrap();
        assert!(bound < 1e-9);
        assert!((v - PI * PI / 6.0).abs() < 1e-10);
        assert!((v - PI * PI / 6.0).abs() <= bound);
    }

    #[test]
    fn box_convolution_shapes() {
        let p = convolve_box(1.0, 1.0).unwrap();
        assert!((p.eval(1.0) - 1.0).abs() < 1e-15);
        assert!((p.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((p.eval(1.5) - 0.5).abs() < 1e-15);
        let p = convolve_box(0.5, 1.3).unwrap();
        assert_eq!(p.eval(0.9), 0.5);
        assert!((p.eval(0.25) - 0.25).abs() < 1e-15);
        assert!((p.eval(1.6) - 0.2).abs() < 1e-12);
        assert_eq!(p.eval(2.0), 0.0);
        assert!((p.bounded_mass() - 0.65).abs() < 1e-15);
        assert!(convolve_box(0.0, 1.0).is_err());
    }

    #[test]
    fn gamma_ratio_density_and_values() {
        let (a, b) = (0.5, 1.3);
        let cap = gamma_ratio_cap(a, b, 0.5, 1e-8);
        let m = measure_gamma_ratio(a, b, cap).unwrap();
        for j in 0..500 {
            let t = 10.0 * j as f64 / 500.0 + 0.0123;
            assert!((m.density().eval(t) - gamma_ratio_density(a, b, t)).abs() < 1e-12, "t={t}");
        }
        let v = eval(&m, 1.0);
        assert!((v - gamma_ratio_log(1.0, a, b).unwrap()).abs() < 1e-7, "{v}");
        // Overlapping bumps make g rise and fall; it is only nonnegative.
        assert!(m.check_nonnegative(64).is_ok());
        assert!(m.density().eval(1.8) < m.density().eval(1.5));
    }

    #[test]
    fn gamma_ratio_with_integer_b_has_exact_tail() {
        let a = 0.3;
        let m = measure_gamma_ratio(a, 1.0, 40).unwrap();
        assert!(m.tail_bound().is_exact());
        // density on (m, m+1): Σ_{j≤m} min(t−j, a, a+1−(t−j)) clipped at 0
        for j in 0..400 {
            let t = 0.013 + 9.9 * j as f64 / 400.0;
            let mm = floor(t) as i64;
            let direct: f64 = (0..=mm).map(|jj| (t - jj as f64).min(a).min(a + 1.0 - (t - jj as f64)).max(0.0)).sum();
            assert!((m.density().eval(t) - direct).abs() < 1e-12);
        }
        for &x in &[0.5, 2.0, 30.0] {
            assert!((eval(&m, x) - ((x + a) / x).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_ratio_rejects_small_cap() {
        assert!(matches!(measure_gamma_ratio(0.5, 1.3, 5), Err(Error::CapTooSmall { .. })));
        assert!(matches!(measure_gamma_ratio(0.5, 1.3, 30), Err(Error::CapTooSmall { .. })));
    }

    #[test]
    fn genus1_matches_product() {
        let zeros = [1.0, 2.0, 3.0];
        let m = measure_genus1_log_ratio(&zeros, 0.5, 0.5).unwrap();
        let d = genus1_log_ratio_direct(&zeros, 0.5, 0.5, 1.0).unwrap();
        assert!((eval(&m, 1.0) - d).abs() < 1e-12);
        let m = measure_genus1_log_ratio(&[1.0], 1.0, 1.0).unwrap();
        assert!(eval(&m, 1e4) < 1e-3);
        let m = measure_genus1_log_ratio(&zeros, 0.0, 0.5).unwrap();
        assert_eq!(eval(&m, 1.0), 0.0);
    }

    #[test]
    fn gamma_reciprocal_ratio() {
        let s = 0.5;
        let cap = gamma_reciprocal_cap(s, 0.5, 1e-9);
        let m = measure_gamma_reciprocal_ratio(s, cap).unwrap();
        assert_eq!(m.density().eval(0.5), 1.0);
        assert!((m.density().eval(1.5) - (1.0 - s)).abs() < 1e-15);
        let g = exp(ln_gamma_raw(s + 1.0));
        for &x in &[0.5, 1.0, 4.0] {
            let want = exp(ln_gamma_raw(x) - ln_gamma_raw(x + s + 1.0));
            assert!((eval(&m, x) / g - want).abs() < 1e-8, "x={x}");
        }
        let want = 1.0 / (1.5 * 0.5 * PI.sqrt());
        assert!((eval(&m, 1.0) / g - want).abs() < 1e-8);
        assert!(measure_gamma_reciprocal_ratio(s, 10).is_err());
    }

    #[test]
    fn cesaro_alternating_recovers_beta_measure() {
        let a: Vec<f64> = (0..4000).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let m = measure_cesaro(&a, 0, 1.0).unwrap();
        assert_eq!(m.density().eval(2.5), 1.0);
        assert_eq!(m.density().eval(3.5), 0.0);
        assert!((eval(&m, 1.0) - LN_2).abs() < 1e-10);
    }

    #[test]
    fn cesaro_prym_density() {
        let mut a = Vec::with_capacity(2000);
        let mut f = 1.0;
        for n in 0..2000 {
            a.push(if n % 2 == 0 { f } else { -f });
            f /= (n + 1) as f64;
        }
        let m = measure_cesaro(&a, 0, 1.0).unwrap();
        assert_eq!(m.density().eval(0.5), 1.0);
        assert_eq!(m.density().eval(1.5), 0.0);
        assert!((m.density().eval(2.5) - 0.5).abs() < 1e-15);
        assert!((eval(&m, 1.0) - (1.0 - exp(-1.0))).abs() < 1e-12);
    }

    #[test]
    fn cesaro_depth_one_matches_series() {
        let a: Vec<f64> = (0..3000).map(|n| if n % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let m = measure_cesaro_unchecked(&a, 1, 1.0).unwrap();
        // order 3 representation of β
        let (v, bound) = m.eval_with_bound(1.0).unwrap();
        assert!((v - LN_2).abs() < 1e-9 + bound, "{v} {bound}");
    }
}
