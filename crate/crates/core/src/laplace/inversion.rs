use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::ScalarFunction;
use crate::math::{abs, binomial, exp, factorial, powi, tan, LN_2, PI};
use crate::specfun::{beta_meromorphic, beta_relative};

pub const TALBOT_NODES: usize = 48;

/// Which contour the primary method may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contour {
    /// `F` continues analytically across the imaginary axis (meromorphic
    /// with singularities on the negative axis): fixed Talbot, checked by Euler.
    Talbot,
    /// `F` is only known on `Re z > 0`: two Euler runs with different
    /// discretisation parameters.
    Bromwich,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionOptions {
    pub talbot_nodes: usize,
    /// Relative agreement required between primary and check.
    pub tol: f64,
    /// Absolute floor added to the agreement test for values near zero.
    pub abs_floor: f64,
    pub contour: Contour,
    /// Also run Gaver–Stehfest (real axis only) as a diagnostic.
    pub stehfest: bool,
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self { talbot_nodes: TALBOT_NODES, tol: 1e-6, abs_floor: 1e-9, contour: Contour::Talbot, stehfest: false }
    }
}

impl InversionOptions {
    pub fn right_half_plane() -> Self {
        Self { contour: Contour::Bromwich, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionDiagnostics {
    pub t: f64,
    pub primary: f64,
    pub check: f64,
    pub stehfest: Option<f64>,
    /// `|primary − check| / max(|primary|, |check|)`.
    pub spread: f64,
    pub agree: bool,
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("inversion needs t > 0", t))
    }
}

fn unavailable(t: f64) -> Error {
    Error::Evaluation { x: t, detail: "transform has no complex extension at a contour node".into() }
}

/// Fixed Talbot with `m` nodes on `s(θ) = rθ(cot θ + i)`, `r = 2m/(5t)`.
pub fn talbot(f: &dyn ScalarFunction, t: f64, m: usize) -> Result<f64> {
    check_t(t)?;
    if m < 2 {
        return Err(Error::invalid("Talbot needs at least two nodes"));
    }
    let r = 2.0 * m as f64 / (5.0 * t);
    let mut nodes = Vec::with_capacity(m);
    let mut sigma = Vec::with_capacity(m);
    nodes.push(Complex64::new(r, 0.0));
    sigma.push(0.0);
    for k in 1..m {
        let th = k as f64 * PI / m as f64;
        let cot = 1.0 / tan(th);
        nodes.push(Complex64::new(r * th * cot, r * th));
        sigma.push(th + (th * cot - 1.0) * cot);
    }
    let vals = f.complex_path(&nodes).ok_or_else(|| unavailable(t))?;
    let mut acc = 0.5 * (vals[0] * exp(r * t)).re;
    for k in 1..m {
        let s = nodes[k];
        let term = (s * t).exp() * vals[k] * Complex64::new(1.0, sigma[k]);
        acc += term.re;
    }
    let v = r / m as f64 * acc;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { x: t, detail: "Talbot sum is not finite".into() })
    }
}

/// Abate–Whitt Euler summation of the Bromwich integral on `Re z = A/(2t)`.
pub fn euler(f: &dyn ScalarFunction, t: f64, a: f64, n: usize, m: usize) -> Result<f64> {
    check_t(t)?;
    let count = n + m + 1;
    let nodes: Vec<Complex64> = (0..count).map(|k| Complex64::new(a / (2.0 * t), k as f64 * PI / t)).collect();
    let vals = f.complex_path(&nodes).ok_or_else(|| unavailable(t))?;
    let scale = exp(a / 2.0) / t;
    let mut partial = Vec::with_capacity(count);
    let mut s = 0.5 * vals[0].re;
    partial.push(s);
    for (k, v) in vals.iter().enumerate().skip(1) {
        s += if k % 2 == 0 { v.re } else { -v.re };
        partial.push(s);
    }
    let mut acc = 0.0;
    for k in 0..=m {
        acc += binomial(m as u32, k as u32) * partial[n + k];
    }
    let v = scale * acc / powi(2.0, m as i32);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { x: t, detail: "Euler sum is not finite".into() })
    }
}

/// Gaver–Stehfest with an even number of real-axis samples.
pub fn gaver_stehfest(f: &dyn ScalarFunction, t: f64, n: usize) -> Result<f64> {
    check_t(t)?;
    if n == 0 || n % 2 != 0 || n > 30 {
        return Err(Error::invalid("Gaver-Stehfest needs an even order up to 30"));
    }
    let h = n / 2;
    let q = LN_2 / t;
    let mut acc = 0.0;
    for k in 1..=n {
        let mut v = 0.0;
        for j in k.div_ceil(2)..=k.min(h) {
            v += powi(j as f64, h as i32) * factorial(2 * j as u32)
                / (factorial((h - j) as u32)
                    * factorial(j as u32)
                    * factorial(j as u32 - 1)
                    * factorial((k - j) as u32)
                    * factorial((2 * j - k) as u32));
        }
        if (h + k) % 2 == 1 {
            v = -v;
        }
        acc += v * f.value(k as f64 * q);
    }
    Ok(q * acc)
}

/// Primary and check inversions at `t` with their agreement.
pub fn laplace_invert_with(f: &dyn ScalarFunction, t: f64, opts: &InversionOptions) -> Result<InversionDiagnostics> {
    check_t(t)?;
    let (primary, check) = match opts.contour {
        Contour::Talbot => (talbot(f, t, opts.talbot_nodes)?, euler(f, t, 20.0, 15, 11)?),
        Contour::Bromwich => (euler(f, t, 20.0, 15, 11)?, euler(f, t, 24.0, 20, 12)?),
    };
    let stehfest = if opts.stehfest { gaver_stehfest(f, t, 16).ok() } else { None };
    let scale = abs(primary).max(abs(check));
    let diff = abs(primary - check);
    let spread = if scale > 0.0 { diff / scale } else { 0.0 };
    let agree = diff <= opts.tol * scale + opts.abs_floor;
    Ok(InversionDiagnostics { t, primary, check, stehfest, spread, agree })
}

/// Density at `t` whose transform is `f`; errors when the two
/// independent inversions disagree beyond `1e−6` relative.
pub fn laplace_invert(f: &dyn ScalarFunction, t: f64) -> Result<f64> {
    laplace_invert_checked(f, t, &InversionOptions::default())
}

pub fn laplace_invert_checked(f: &dyn ScalarFunction, t: f64, opts: &InversionOptions) -> Result<f64> {
    let d = laplace_invert_with(f, t, opts)?;
    if d.agree {
        Ok(d.primary)
    } else {
        Err(Error::Disagreement { what: "laplace inversion", primary: d.primary, check: d.check })
    }
}

/// `β(z)^c`, continued along paths from the positive axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaPower {
    c: f64,
}

impl BetaPower {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::domain("beta power needs c > 0", c));
        }
        Ok(Self { c })
    }

    pub fn exponent(&self) -> f64 {
        self.c
    }
}

impl ScalarFunction for BetaPower {
    fn value(&self, x: f64) -> f64 {
        if x > 0.0 {
            crate::math::pow(beta_relative(x), self.c)
        } else {
            f64::NAN
        }
    }

    fn complex(&self, z: Complex64) -> Option<Complex64> {
        // arg β stays inside (−π, π) on the open right half plane.
        if !(z.re > 0.0) {
            return None;
        }
        Some((beta_meromorphic(z).ln() * self.c).exp())
    }

    fn complex_path(&self, path: &[Complex64]) -> Option<Vec<Complex64>> {
        let mut out = Vec::with_capacity(path.len());
        let mut prev_arg: Option<f64> = None;
        for &z in path {
            let b = beta_meromorphic(z);
            if !(b.re.is_finite() && b.im.is_finite()) || b == Complex64::new(0.0, 0.0) {
                return None;
            }
            let mut arg = b.arg();
            if let Some(p) = prev_arg {
                arg += 2.0 * PI * crate::math::round((p - arg) / (2.0 * PI));
            } else if z.im != 0.0 || z.re <= 0.0 {
                return None;
            }
            prev_arg = Some(arg);
            let log = Complex64::new(crate::math::ln(b.norm()), arg);
            out.push((log * self.c).exp());
        }
        Some(out)
    }
}
