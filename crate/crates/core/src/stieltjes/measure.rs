use alloc::vec::Vec;

use super::piecewise::PiecewisePolynomial;
use crate::error::{Error, Result};
use crate::math::{abs, exp, expm1, ln, ln1p, pow, round, KahanSum};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::ln_gamma_raw;

/// A-priori bound on what a truncated or homogenized tail beyond `start`
/// can contribute. For a decreasing kernel `g` (either `(x+t)^{-ν}` or
/// `e^{-xt}`) the error is at most
/// `value·g(T) + integral·∫_T^∞ g + slope·|g'(T)|`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TailBound {
    pub start: f64,
    pub value: f64,
    pub integral: f64,
    pub slope: f64,
}

impl TailBound {
    pub const EXACT: TailBound = TailBound { start: 0.0, value: 0.0, integral: 0.0, slope: 0.0 };

    pub fn is_exact(&self) -> bool {
        self.value == 0.0 && self.integral == 0.0 && self.slope == 0.0
    }

    /// Bound for `∫ dμ(t)/(x+t)^ν`.
    pub fn stieltjes(&self, x: f64, order: f64) -> f64 {
        if self.is_exact() {
            return 0.0;
        }
        let w = x + self.start;
        let g = pow(w, -order);
        let int = if self.integral == 0.0 {
            0.0
        } else if order > 1.0 {
            self.integral * w * g / (order - 1.0)
        } else {
            f64::INFINITY
        };
        self.value * g + int + self.slope * order * g / w
    }

    /// Bound for `∫ e^{-ts} dμ(s)`.
    pub fn laplace(&self, t: f64) -> f64 {
        if self.is_exact() {
            return 0.0;
        }
        let e = exp(-t * self.start);
        let int = if self.integral == 0.0 { 0.0 } else { self.integral * e / t };
        self.value * e + int + self.slope * t * e
    }
}

/// `f(x) = Σ m_j/(x+t_j)^λ + ∫ p(t)/(x+t)^λ dt + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentingMeasure {
    atoms: Vec<(f64, f64)>,
    density: PiecewisePolynomial,
    order: f64,
    constant: f64,
    tail: TailBound,
}

impl RepresentingMeasure {
    pub fn new(atoms: Vec<(f64, f64)>, density: PiecewisePolynomial, order: f64, constant: f64) -> Result<Self> {
        if !(order > 0.0) || !order.is_finite() {
            return Err(Error::domain("measure order must be positive", order));
        }
        if !(constant >= 0.0) || !constant.is_finite() {
            return Err(Error::domain("measure constant must be nonnegative", constant));
        }
        let mut prev = -1.0;
        for &(t, m) in &atoms {
            if !(t >= 0.0) || !t.is_finite() || !(t > prev) {
                return Err(Error::invalid("atom locations must be nonnegative and strictly increasing"));
            }
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::domain("atom masses must be positive", m));
            }
            prev = t;
        }
        if let Some(d) = density.tail_degree() {
            // ∫ t^d/(1+t)^λ dt < ∞ needs λ > d + 1.
            if order <= d as f64 + 1.0 {
                return Err(Error::invalid("unbounded density tail is not integrable against (1+t)^-order"));
            }
        }
        Ok(Self { atoms, density, order, constant, tail: TailBound::EXACT })
    }

    pub fn with_tail_bound(mut self, tail: TailBound) -> Self {
        self.tail = tail;
        self
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn density(&self) -> &PiecewisePolynomial {
        &self.density
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn tail_bound(&self) -> &TailBound {
        &self.tail
    }

    /// Sampled nonnegativity of the density (`samples` per interval).
    pub fn check_nonnegative(&self, samples: usize) -> Result<()> {
        match self.density.first_negative(samples, 1e-12) {
            None => Ok(()),
            Some((t, v)) => Err(Error::Evaluation { x: t, detail: alloc::format!("density is negative ({v:e})") }),
        }
    }

    /// `∫ dμ/(x+t)^λ + c` together with the tail bound at `x`.
    pub fn eval_with_bound(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) {
            return Err(Error::domain("stieltjes evaluation needs x > 0", x));
        }
        let nu = self.order;
        let mut acc = KahanSum::new();
        for &(t, m) in &self.atoms {
            acc.add(m * pow(x + t, -nu));
        }
        let closed = self.density.degree() <= 3 && abs(nu - round(nu)) == 0.0;
        for i in 0..self.density.intervals() {
            let (l, r) = self.density.interval(i);
            let row = self.density.row(i);
            if row.iter().all(|&c| c == 0.0) {
                continue;
            }
            let a = x + l;
            if closed || r.is_infinite() {
                for (p, &c) in row.iter().enumerate() {
                    if c != 0.0 {
                        acc.add(c * power_moment(p, a, r - l, nu));
                    }
                }
            } else {
                let opts = QuadOptions { abs_tol: 1e-17, rel_tol: 1e-14, max_intervals: 200 };
                let v = integrate(|u| super::piecewise::horner(row, u) * pow(a + u, -nu), 0.0, r - l, opts)
                    .map_err(|_| Error::NonConvergence { what: "stieltjes interval quadrature", estimate: l })?;
                acc.add(v.value);
            }
        }
        let value = acc.value() + self.constant;
        let bound = self.tail.stieltjes(x, nu);
        if !value.is_finite() || !bound.is_finite() {
            return Err(Error::NonConvergence { what: "stieltjes tail", estimate: bound });
        }
        Ok((value, bound))
    }

    /// `κ(t) = ∫ e^{-ts} dμ(s)` in closed form, with its tail bound.
    pub fn kappa_with_bound(&self, t: f64) -> Result<(f64, f64)> {
        if !(t > 0.0) {
            return Err(Error::domain("kernel needs t > 0", t));
        }
        let mut acc = KahanSum::new();
        for &(s, m) in &self.atoms {
            acc.add(m * exp(-t * s));
        }
        for i in 0..self.density.intervals() {
            let (l, r) = self.density.interval(i);
            let e = exp(-t * l);
            if e == 0.0 {
                break;
            }
            for (p, &c) in self.density.row(i).iter().enumerate() {
                if c != 0.0 {
                    acc.add(c * e * exp_moment(p, t, r - l));
                }
            }
        }
        Ok((acc.value(), self.tail.laplace(t)))
    }

    /// `κ'(t) = −∫ s e^{-ts} dμ(s)`.
    pub fn kappa_derivative(&self, t: f64) -> f64 {
        let mut acc = KahanSum::new();
        for &(s, m) in &self.atoms {
            acc.add(-m * s * exp(-t * s));
        }
        for i in 0..self.density.intervals() {
            let (l, r) = self.density.interval(i);
            let e = exp(-t * l);
            if e == 0.0 {
                break;
            }
            for (p, &c) in self.density.row(i).iter().enumerate() {
                if c != 0.0 {
                    // s·u^p = l·u^p + u^{p+1}
                    acc.add(-c * e * (l * exp_moment(p, t, r - l) + exp_moment(p + 1, t, r - l)));
                }
            }
        }
        acc.value()
    }

    /// The same function written with order λ+1: the new density is
    /// `λ·μ([0,t])` (atoms are folded into the cumulative).
    pub fn cumulative(&self) -> Result<Self> {
        let lam = self.order;
        let base = self.density.antiderivative(lam);
        let density = if self.atoms.is_empty() { base } else { add_steps(&base, &self.atoms, lam)? };
        Ok(Self::new(Vec::new(), density, lam + 1.0, self.constant)?.with_tail_bound(self.tail))
    }
}

// Adds λ·(mass of atoms ≤ t) to a cumulative density, splitting intervals
// at atom locations.
fn add_steps(base: &PiecewisePolynomial, atoms: &[(f64, f64)], lam: f64) -> Result<PiecewisePolynomial> {
    let mut cuts: Vec<f64> = base.breakpoints().to_vec();
    cuts.extend(atoms.iter().map(|a| a.0));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let tail = base.has_unbounded_tail() || atoms.last().map(|a| a.0) >= Some(base.support_end());
    let mut rows = Vec::with_capacity(cuts.len());
    let n = if tail { cuts.len() } else { cuts.len() - 1 };
    for &l in cuts.iter().take(n) {
        let src = base_row_at(base, l);
        let mass: f64 = atoms.iter().filter(|a| a.0 <= l).map(|a| a.1).sum();
        let mut row = src;
        if row.is_empty() {
            row.push(0.0);
        }
        row[0] += lam * mass;
        rows.push(row);
    }
    PiecewisePolynomial::new(cuts, rows, tail)
}

// Coefficients of the base polynomial re-expanded around `l`.
fn base_row_at(base: &PiecewisePolynomial, l: f64) -> Vec<f64> {
    let idx = base.breakpoints().partition_point(|&b| b <= l);
    if idx == 0 || idx > base.intervals() {
        // Beyond a tail-free support the cumulative is the final constant.
        let total = base.eval(base.support_end());
        return alloc::vec![total];
    }
    let i = idx - 1;
    let shift = l - base.breakpoints()[i];
    taylor_shift(base.row(i), shift)
}

pub(crate) fn taylor_shift(row: &[f64], s: f64) -> Vec<f64> {
    // p(u + s) expanded in u, by repeated synthetic division.
    let mut c = row.to_vec();
    let n = c.len();
    for k in 0..n {
        for j in (k..n - 1).rev() {
            c[j] += s * c[j + 1];
        }
    }
    c
}

/// `∫_0^h u^i (A+u)^{-ν} du` for `A > 0`; `h = ∞` allowed when `ν > i+1`.
pub(crate) fn power_moment(i: usize, a: f64, h: f64, nu: f64) -> f64 {
    let q = i as f64 + 1.0 - nu;
    if h.is_infinite() {
        // A^{i+1−ν} B(i+1, ν−i−1)
        let lb = ln_gamma_raw(i as f64 + 1.0) + ln_gamma_raw(-q) - ln_gamma_raw(nu);
        return pow(a, q) * exp(lb);
    }
    let z = h / a;
    if z <= 0.5 {
        // (1+s)^{-ν} = Σ C(−ν, n) s^n
        let mut b = 1.0;
        let mut zp = pow(z, i as f64 + 1.0);
        let mut acc = 0.0;
        for n in 0..400 {
            let term = b * zp / (n + i + 1) as f64;
            acc += term;
            if abs(term) <= 1e-17 * abs(acc) {
                break;
            }
            b *= (-nu - n as f64) / (n + 1) as f64;
            zp *= z;
        }
        return pow(a, q) * acc;
    }
    // (w − A)^i expanded; ∫_A^{A+h} w^{p−ν} dw = A^{p+1−ν} expm1(r·ln1p(z))/r.
    let lz = ln1p(z);
    let mut acc = 0.0;
    let mut binom = 1.0;
    for p in 0..=i {
        let r = p as f64 + 1.0 - nu;
        let w = if r == 0.0 { lz } else { expm1(r * lz) / r };
        let sign = if (i - p) % 2 == 0 { 1.0 } else { -1.0 };
        acc += binom * sign * pow(a, (i - p) as f64) * pow(a, r) * w;
        binom = binom * (i - p) as f64 / (p + 1) as f64;
    }
    acc
}

/// `∫_0^h u^i e^{-tu} du` for `t > 0`; `h = ∞` allowed.
pub(crate) fn exp_moment(i: usize, t: f64, h: f64) -> f64 {
    if h.is_infinite() {
        return exp(ln_gamma_raw(i as f64 + 1.0) - (i as f64 + 1.0) * ln(t));
    }
    let th = t * h;
    if th <= 1.0 {
        // Σ_n (−t)^n h^{n+i+1}/(n!(n+i+1))
        let mut term = pow(h, i as f64 + 1.0);
        let mut acc = 0.0;
        for n in 0..200 {
            let add = term / (n + i + 1) as f64;
            acc += add;
            if abs(add) <= 1e-17 * abs(acc) {
                break;
            }
            term *= -th / (n + 1) as f64;
        }
        return acc;
    }
    let e = exp(-th);
    let mut m = -expm1(-th) / t;
    let mut hp = 1.0;
    for k in 1..=i {
        hp *= h;
        m = (k as f64 * m - hp * e) / t;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn power_moments_match_quadrature() {
        for &(i, a, h, nu) in &[
            (0usize, 0.05, 1.0, 2.0),
            (1, 0.05, 1.0, 2.0),
            (3, 2.0, 1.0, 3.0),
            (2, 1e4, 1.0, 2.0),
            (1, 0.7, 0.3, 2.5),
            (2, 0.1, 5.0, 1.0),
            (0, 3.0, 1.0, 1.0),
        ] {
            let exact = power_moment(i, a, h, nu);
            let q = integrate(|u| u.powi(i as i32) * pow(a + u, -nu), 0.0, h, QuadOptions::with_tol(0.0, 1e-14))
                .unwrap()
                .value;
            assert!((exact - q).abs() <= 1e-13 * q.abs(), "{i} {a} {h} {nu}: {exact} {q}");
        }
        // tail: ∫_0^∞ u (2+u)^{-3} du = 1/2 · 2^{-1} = 1/4·... = B(2,1)·2^{-1}
        assert!((power_moment(1, 2.0, f64::INFINITY, 3.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn exp_moments_match_quadrature() {
        for &(i, t, h) in &[(0usize, 0.3, 1.0), (2, 0.3, 1.0), (3, 5.0, 1.0), (1, 40.0, 2.0), (0, 1e-6, 1.0)] {
            let exact = exp_moment(i, t, h);
            let q =
                integrate(|u| u.powi(i as i32) * exp(-t * u), 0.0, h, QuadOptions::with_tol(0.0, 1e-14)).unwrap().value;
            assert!((exact - q).abs() <= 1e-13 * q.abs(), "{i} {t} {h}: {exact} {q}");
        }
        assert!((exp_moment(2, 2.0, f64::INFINITY) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn taylor_shift_reexpands() {
        // 1 + 2u + 3u² at u+1 = 6 + 8u + 3u²
        assert_eq!(taylor_shift(&[1.0, 2.0, 3.0], 1.0), vec![6.0, 8.0, 3.0]);
    }

    #[test]
    fn rejects_invalid_records() {
        let d = PiecewisePolynomial::zero();
        assert!(RepresentingMeasure::new(vec![(1.0, 1.0), (0.5, 1.0)], d.clone(), 1.0, 0.0).is_err());
        assert!(RepresentingMeasure::new(vec![(1.0, -1.0)], d.clone(), 1.0, 0.0).is_err());
        assert!(RepresentingMeasure::new(vec![], d.clone(), 0.0, 0.0).is_err());
        assert!(RepresentingMeasure::new(vec![], d, 1.0, -1.0).is_err());
        let tail = PiecewisePolynomial::new(vec![0.0], vec![vec![1.0]], true).unwrap();
        assert!(RepresentingMeasure::new(vec![], tail.clone(), 1.0, 0.0).is_err());
        assert!(RepresentingMeasure::new(vec![], tail, 2.0, 0.0).is_ok());
    }

    #[test]
    fn cumulative_preserves_values() {
        let d = PiecewisePolynomial::new(vec![0.0, 1.0, 2.5], vec![vec![1.0, 0.5], vec![0.25]], false).unwrap();
        let m = RepresentingMeasure::new(vec![(0.0, 0.5), (1.7, 2.0), (4.0, 1.0)], d, 1.5, 0.1).unwrap();
        let c = m.cumulative().unwrap();
        for &x in &[0.1, 1.0, 7.0] {
            let a = m.eval_with_bound(x).unwrap().0;
            let b = c.eval_with_bound(x).unwrap().0;
            assert!((a - b).abs() < 1e-12 * a, "{x}: {a} {b}");
        }
    }
}
