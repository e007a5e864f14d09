use crate::math::{abs, exp, KahanSum};

/// P(x) = Σ (−1)^n/(n!(x+n)), stopped once a term drops below 1e−18.
pub(crate) fn prym_series(x: f64) -> f64 {
    let mut acc = KahanSum::new();
    let mut inv_fact = 1.0;
    let mut n = 0u32;
    loop {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let t = inv_fact / (x + n as f64);
        acc.add(sign * t);
        if abs(t) < 1e-18 {
            break;
        }
        n += 1;
        inv_fact /= n as f64;
    }
    acc.value()
}

/// P(x) = ∫_0^1 t^{x−1}e^{−t} dt = e^{−1} Σ_{n≥0} 1/(x(x+1)⋯(x+n)),
/// a positive series independent of the alternating one.
pub(crate) fn prym_incomplete(x: f64) -> f64 {
    let mut acc = KahanSum::new();
    let mut term = 1.0 / x;
    let mut n = 0u32;
    while abs(term) > 1e-18 * abs(acc.value()) || n == 0 {
        acc.add(term);
        n += 1;
        term /= x + n as f64;
    }
    exp(-1.0) * acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_paths_agree() {
        for &x in &[0.01, 0.3, 1.0, 1.7, 5.0, 40.0] {
            let a = prym_series(x);
            let b = prym_incomplete(x);
            assert!((a - b).abs() < 1e-13 * (1.0 + a.abs()), "x={x}: {a} {b}");
        }
    }
}
