//! Complex log-gamma via the Lanczos approximation (g = 7, 9 terms), with
//! the reflection formula for the left half-plane. Gamma-factor ratios along
//! contours are formed as `exp(ln_gamma(a) - ln_gamma(b))` so the
//! exponentially decaying moduli cancel before exponentiation.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch-consistent `log Gamma(z)`; `exp(ln_gamma(z)) = Gamma(z)`
/// exactly up to rounding, though the imaginary part may differ from the
/// principal `log` by multiples of `2 pi`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let lnpi = Complex64::new(PI.ln(), 0.0);
        return lnpi - ln_sin_pi(z) - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let zm1 = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm1 + 0.5) * t.ln() - t + acc.ln()
}

/// Stable `log sin(pi z)` for complex `z` (avoids overflow for large |Im z|).
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if z.im >= 0.0 {
        // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
        let w = (2.0 * PI * i * z).exp();
        (i / 2.0).ln() - i * PI * z + (Complex64::new(1.0, 0.0) - w).ln()
    } else {
        ln_sin_pi(z.conj()).conj()
    }
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((gamma(Complex64::new(0.5, 0.0)).re - PI.sqrt()).abs() < 1e-12);
        for n in 1..10 {
            let want: f64 = (1..n).map(|k| k as f64).product();
            let got = gamma(Complex64::new(n as f64, 0.0));
            assert!((got.re - want).abs() < 1e-9 * want.max(1.0));
            assert!(got.im.abs() < 1e-9 * want.max(1.0));
        }
    }

    #[test]
    fn modulus_on_imaginary_axis() {
        // |Gamma(1 + it)|^2 = pi t / sinh(pi t)
        for &t in &[0.3, 1.0, 3.7, 10.0] {
            let g = gamma(Complex64::new(1.0, t)).norm_sqr();
            let want = PI * t / (PI * t).sinh();
            assert!((g - want).abs() < 1e-12 * want, "t={t}");
        }
    }

    #[test]
    fn reflection_left_half_plane() {
        // Gamma(z) Gamma(1 - z) sin(pi z) = pi
        for &(re, im) in &[(-0.7, 0.4), (-2.3, -1.1), (0.2, 5.0), (-5.5, 20.0)] {
            let z = Complex64::new(re, im);
            let lhs = gamma(z) * gamma(Complex64::new(1.0, 0.0) - z) * ln_sin_pi(z).exp();
            assert!((lhs.re - PI).abs() < 1e-8 && lhs.im.abs() < 1e-8, "z={z}: {lhs}");
        }
    }

    #[test]
    fn recurrence() {
        for &(re, im) in &[(0.7, 0.0), (1.3, 2.0), (0.6, -4.0), (2.5, 30.0)] {
            let z = Complex64::new(re, im);
            let lhs = gamma(z + 1.0);
            let rhs = z * gamma(z);
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0), "z={z}");
        }
    }
}
