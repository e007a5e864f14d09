use super::gamma::BERNOULLI_EVEN;
use crate::math::{pow, KahanSum};

const N: usize = 10;

/// Riemann ζ(s) for real s ≠ 1 by Euler–Maclaurin summation; valid on both
/// sides of the pole.
pub(crate) fn zeta_raw(s: f64) -> f64 {
    let mut acc = KahanSum::new();
    for k in (1..N).rev() {
        acc.add(pow(k as f64, -s));
    }
    let nf = N as f64;
    acc.add(pow(nf, 1.0 - s) / (s - 1.0));
    acc.add(0.5 * pow(nf, -s));
    // B_{2j}/(2j)! · s(s+1)⋯(s+2j−2) · N^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = pow(nf, -s - 1.0);
    for j in 1..=BERNOULLI_EVEN.len() {
        acc.add(BERNOULLI_EVEN[j - 1] / fact * rising * npow);
        let jf = j as f64;
        rising *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf);
        fact *= (2.0 * jf + 1.0) * (2.0 * jf + 2.0);
        npow /= nf * nf;
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::PI;

    #[test]
    fn classical_values() {
        assert!((zeta_raw(2.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_raw(4.0) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((zeta_raw(0.0) + 0.5).abs() < 1e-15);
        assert!((zeta_raw(-1.0) + 1.0 / 12.0).abs() < 1e-13);
        assert!(zeta_raw(-2.0).abs() < 1e-12);
        // ζ(1/2)
        assert!((zeta_raw(0.5) + 1.460_354_508_809_586_8).abs() < 1e-14);
        assert!((zeta_raw(60.0) - 1.0).abs() < 1e-17);
    }
}
