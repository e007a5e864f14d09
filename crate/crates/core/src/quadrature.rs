//! Gauss–Kronrod quadrature (adaptive and fixed-panel) and Gauss–Jacobi rules.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math::{abs, exp, pow};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_608_618_750,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights attached to XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// One 21-point Kronrod panel; returns (integral, error estimate).
pub fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let (v, e, _) = gk21_floor(f, a, b);
    (v, e)
}

// Also returns the rounding floor `50·eps·∫|f|` of the panel.
fn gk21_floor<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64, f64) {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let fc = f(centr);
    let mut resg = 0.0;
    let mut resk = fc * WGK[10];
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = hlgth * XGK[j];
        let f1 = f(centr - dx);
        let f2 = f(centr + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resabs = WGK[10] * abs(fc);
    let mut resasc = WGK[10] * abs(fc - reskh);
    for j in 0..10 {
        resabs += WGK[j] * (abs(fv1[j]) + abs(fv2[j]));
        resasc += WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh));
    }
    let h = abs(hlgth);
    let result = resk * hlgth;
    resabs *= h;
    resasc *= h;
    let mut err = abs((resk - resg) * hlgth);
    if resasc != 0.0 && err != 0.0 {
        err = resasc * f64::min(1.0, pow(200.0 * err / resasc, 1.5));
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = f64::max(floor, err);
    }
    (result, err, floor)
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    floor: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive quadrature over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult> {
    integrate_breaks(f, &[a, b], opts)
}

/// Adaptive quadrature whose initial panels are delimited by `points`
/// (kinks and jumps should be listed here).
pub fn integrate_breaks<F: FnMut(f64) -> f64>(mut f: F, points: &[f64], opts: QuadOptions) -> Result<QuadResult> {
    if points.len() < 2 {
        return Ok(QuadResult { value: 0.0, error: 0.0, intervals: 0 });
    }
    let mut heap = BinaryHeap::new();
    let mut frozen_val = 0.0;
    let mut frozen_err = 0.0;
    let mut frozen_floor = 0.0;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (value, error, floor) = gk21_floor(&mut f, w[0], w[1]);
        heap.push(Segment { a: w[0], b: w[1], value, error, floor });
    }
    let mut count = heap.len();
    loop {
        let (total, err, floor) = heap
            .iter()
            .fold((frozen_val, frozen_err, frozen_floor), |(v, e, r), s| (v + s.value, e + s.error, r + s.floor));
        // Tolerances below the accumulated rounding floor cannot be met.
        let target = f64::max(opts.abs_tol, opts.rel_tol * abs(total)).max(2.0 * floor);
        if err <= target || heap.is_empty() {
            return Ok(QuadResult { value: total, error: err, intervals: count });
        }
        if count >= opts.max_intervals {
            return Err(Error::NonConvergence { what: "adaptive quadrature", estimate: err });
        }
        let seg = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) || abs(seg.b - seg.a) < 1e-14 * f64::max(abs(seg.a), abs(seg.b)) {
            // Cannot refine further in double precision.
            frozen_val += seg.value;
            frozen_err += seg.error;
            frozen_floor += seg.floor;
            continue;
        }
        let (v1, e1, r1) = gk21_floor(&mut f, seg.a, mid);
        let (v2, e2, r2) = gk21_floor(&mut f, mid, seg.b);
        heap.push(Segment { a: seg.a, b: mid, value: v1, error: e1, floor: r1 });
        heap.push(Segment { a: mid, b: seg.b, value: v2, error: e2, floor: r2 });
        count += 1;
    }
}

/// One Kronrod panel per consecutive pair of `points`, no adaptivity.
/// The result is a smooth function of any parameter the integrand carries.
pub fn fixed_panels<F: FnMut(f64) -> f64>(mut f: F, points: &[f64]) -> f64 {
    let mut acc = crate::math::KahanSum::new();
    for w in points.windows(2) {
        acc.add(gk21(&mut f, w[0], w[1]).0);
    }
    acc.value()
}

/// Breakpoints `0, h, h·r, h·r², …` up to `end`, then `end`.
pub fn geometric_points(first: f64, ratio: f64, end: f64) -> Vec<f64> {
    let mut pts = alloc::vec![0.0];
    let mut x = first;
    while x < end {
        pts.push(x);
        x *= ratio;
    }
    pts.push(end);
    pts
}

/// Gauss–Jacobi rule on `[0, 1]` for the weight `u^(c−1)(1−u)^(d−1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussJacobi {
    pub fn new(n: usize, c: f64, d: f64) -> Result<Self> {
        if n == 0 || !(c > 0.0) || !(d > 0.0) {
            return Err(Error::invalid("Gauss-Jacobi needs n >= 1 and positive exponents"));
        }
        // Classical (1-x)^al (1+x)^be on [-1,1] with u = (1+x)/2.
        let al = d - 1.0;
        let be = c - 1.0;
        let ab = al + be;
        let mut diag = Vec::with_capacity(n);
        let mut off = Vec::with_capacity(n);
        diag.push((be - al) / (ab + 2.0));
        for k in 1..n {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            diag.push((be * be - al * al) / (s * (s + 2.0)));
            let b2 = if k == 1 {
                4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + al) * (kf + be) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off.push(crate::math::sqrt(b2));
        }
        off.push(0.0);
        let mut first = alloc::vec![0.0; n];
        first[0] = 1.0;
        tridiagonal_ql(&mut diag, &mut off, &mut first)?;
        let ln_b =
            crate::specfun::ln_gamma_raw(c) + crate::specfun::ln_gamma_raw(d) - crate::specfun::ln_gamma_raw(c + d);
        let mass = exp(ln_b);
        let mut pairs: Vec<(f64, f64)> =
            diag.iter().zip(first.iter()).map(|(&x, &v)| (0.5 * (1.0 + x), mass * v * v)).collect();
        pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
        Ok(Self { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() })
    }

    pub fn apply<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&u, &w)| w * f(u)).sum()
    }
}

// Implicit QL on a symmetric tridiagonal matrix (diag `d`, superdiagonal `e`
// with e[n-1] = 0). Only the first row `z` of the eigenvector matrix is
// tracked, which is all Golub–Welsch needs.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = abs(d[m]) + abs(d[m + 1]);
                if abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NonConvergence { what: "tridiagonal eigensolver", estimate: abs(e[l]) });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { abs(r) } else { -abs(r) });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
