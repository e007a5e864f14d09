use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Piecewise polynomial on `[0, ∞)`.
///
/// Interval `i` is `[breakpoints[i], breakpoints[i+1])` and carries a row of
/// coefficients in the local variable `u = t − breakpoints[i]`. When
/// `unbounded_tail` is set, one extra row applies on `[last breakpoint, ∞)`.
/// Intervals are closed on the left, so the function is right-continuous.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<f64>,
    stride: usize,
    coeffs: Vec<f64>,
    unbounded_tail: bool,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<f64>, rows: Vec<Vec<f64>>, unbounded_tail: bool) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints[0] != 0.0 {
            return Err(Error::invalid("breakpoints must start at 0"));
        }
        for w in breakpoints.windows(2) {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::invalid("breakpoints must be finite and strictly increasing"));
            }
        }
        let expected = breakpoints.len() - 1 + usize::from(unbounded_tail);
        if rows.len() != expected {
            return Err(Error::invalid("one coefficient row per interval is required"));
        }
        if rows.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::invalid("coefficients must be finite"));
        }
        let stride = rows.iter().map(|r| r.len()).max().unwrap_or(1).max(1);
        let mut coeffs = vec![0.0; rows.len() * stride];
        for (i, r) in rows.iter().enumerate() {
            coeffs[i * stride..i * stride + r.len()].copy_from_slice(r);
        }
        Ok(Self { breakpoints, stride, coeffs, unbounded_tail })
    }

    /// The zero density.
    pub fn zero() -> Self {
        Self { breakpoints: vec![0.0], stride: 1, coeffs: Vec::new(), unbounded_tail: false }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn has_unbounded_tail(&self) -> bool {
        self.unbounded_tail
    }

    pub fn intervals(&self) -> usize {
        self.coeffs.len() / self.stride
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.coeffs[i * self.stride..(i + 1) * self.stride]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coeffs.chunks(self.stride)
    }

    /// `(left, right)` of interval `i`; `right` is `+∞` for the tail.
    pub fn interval(&self, i: usize) -> (f64, f64) {
        let l = self.breakpoints[i];
        let r = self.breakpoints.get(i + 1).copied().unwrap_or(f64::INFINITY);
        (l, r)
    }

    /// Highest power with a nonzero coefficient anywhere (0 for the zero density).
    pub fn degree(&self) -> usize {
        self.rows().map(|r| r.iter().rposition(|&c| c != 0.0).unwrap_or(0)).max().unwrap_or(0)
    }

    /// Degree of the tail row, if there is a tail.
    pub fn tail_degree(&self) -> Option<usize> {
        if !self.unbounded_tail {
            return None;
        }
        let r = self.row(self.intervals() - 1);
        Some(r.iter().rposition(|&c| c != 0.0).unwrap_or(0))
    }

    /// Last finite breakpoint.
    pub fn support_end(&self) -> f64 {
        *self.breakpoints.last().expect("breakpoints are never empty")
    }

    fn locate(&self, t: f64) -> Option<usize> {
        if !(t >= 0.0) {
            return None;
        }
        let idx = self.breakpoints.partition_point(|&b| b <= t) - 1;
        if idx < self.intervals() {
            Some(idx)
        } else {
            None
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.locate(t) {
            Some(i) => horner(self.row(i), t - self.breakpoints[i]),
            None => 0.0,
        }
    }

    /// `scale · ∫_0^t p(s) ds` as a new piecewise polynomial.
    pub fn antiderivative(&self, scale: f64) -> Self {
        let n = self.intervals();
        let stride = self.stride + 1;
        let mut coeffs = vec![0.0; n * stride];
        let mut acc = 0.0;
        for i in 0..n {
            let row = self.row(i);
            let out = &mut coeffs[i * stride..(i + 1) * stride];
            out[0] = acc;
            for (p, &c) in row.iter().enumerate() {
                out[p + 1] = scale * c / (p + 1) as f64;
            }
            let (l, r) = self.interval(i);
            if r.is_finite() {
                acc = horner(out, r - l);
            }
        }
        // A tail-free density keeps a constant cumulative beyond its support.
        let (breakpoints, unbounded_tail) = if self.unbounded_tail || n == 0 {
            (self.breakpoints.clone(), self.unbounded_tail)
        } else {
            let mut row = vec![0.0; stride];
            row[0] = acc;
            coeffs.extend_from_slice(&row);
            (self.breakpoints.clone(), true)
        };
        Self { breakpoints, stride, coeffs, unbounded_tail }
    }

    /// `∫_0^b p` over the bounded intervals.
    pub fn bounded_mass(&self) -> f64 {
        let mut acc = crate::math::KahanSum::new();
        for i in 0..self.intervals() {
            let (l, r) = self.interval(i);
            if r.is_finite() {
                let h = r - l;
                let mut hp = h;
                for (p, &c) in self.row(i).iter().enumerate() {
                    acc.add(c * hp / (p + 1) as f64);
                    hp *= h;
                }
            }
        }
        acc.value()
    }

    /// First sampled point where the polynomial drops below `−floor`;
    /// `samples` points per interval, endpoints included. The tail is probed
    /// over a stretch as long as the bounded support.
    pub fn first_negative(&self, samples: usize, floor: f64) -> Option<(f64, f64)> {
        let samples = samples.max(2);
        for i in 0..self.intervals() {
            let (l, r) = self.interval(i);
            let r = if r.is_finite() { r } else { l + l.max(1.0) };
            let row = self.row(i);
            for j in 0..samples {
                // Stay strictly inside the half-open interval at the right end.
                let u = (r - l) * j as f64 / samples as f64;
                let v = horner(row, u);
                if v < -floor || v.is_nan() {
                    return Some((l + u, v));
                }
            }
        }
        None
    }
}

pub(crate) fn horner(row: &[f64], u: f64) -> f64 {
    row.iter().rev().fold(0.0, |acc, &c| acc * u + c)
}
