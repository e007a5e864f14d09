use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{abs, binomial, cos, powi, PI};

use super::quad::{laplace_quad_breaks, t_max};

#[derive(Clone, Debug, PartialEq)]
pub struct HamburgerRow {
    pub x: f64,
    pub product: f64,
    pub transform: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HamburgerReport {
    pub n: u32,
    pub rows: Vec<HamburgerRow>,
    pub worst_relative: f64,
}

/// `(x Π_{k≤n} (1 + x²/(kπ)²))^{−1}` against
/// `2^n/C(2n,n) · L((1 − cos πt)^n)(x)` at each `x`.
pub fn hamburger_check(n: u32, xs: &[f64]) -> Result<HamburgerReport> {
    if n == 0 || n > 60 {
        return Err(Error::invalid("hamburger identity is checked for 1 <= n <= 60"));
    }
    let scale = powi(2.0, n as i32) / binomial(2 * n, n);
    let mut rows = Vec::with_capacity(xs.len());
    let mut worst: f64 = 0.0;
    for &x in xs {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::domain("hamburger check needs x > 0", x));
        }
        let mut prod = x;
        for k in 1..=n {
            let q = x / (k as f64 * PI);
            prod *= 1.0 + q * q;
        }
        let product = 1.0 / prod;
        let end = t_max(x).min(8000.0);
        let breaks: Vec<f64> = (1..).map(|j| 2.0 * j as f64).take_while(|&b| b < end).collect();
        let transform = scale * laplace_quad_breaks(|t| powi(1.0 - cos(PI * t), n as i32), x, &breaks)?;
        worst = worst.max(abs(transform - product) / product);
        rows.push(HamburgerRow { x, product, transform });
    }
    Ok(HamburgerReport { n, rows, worst_relative: worst })
}
