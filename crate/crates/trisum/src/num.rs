//! Small numeric helpers shared across the crate: modular arithmetic on
//! machine integers, the additive character `e(x) = exp(2 pi i x)`, and
//! compensated summation.

use num_complex::Complex64;

pub const TAU: f64 = std::f64::consts::TAU;

/// `e(x) = exp(2 pi i x)`. The argument is reduced mod 1 before evaluation so
/// large rational phases keep full precision.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let r = TAU * (x - x.floor());
    Complex64::new(r.cos(), r.sin())
}

/// `e(num/den)` with exact integer reduction of the fraction.
#[inline]
pub fn e_frac(num: i64, den: u64) -> Complex64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(den as i64) as u64;
    e(r as f64 / den as f64)
}

#[inline]
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i(a: i64, b: u64) -> u64 {
    gcd(a.unsigned_abs(), b)
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Multiplicative inverse of `a` modulo `m`, when it exists.
pub fn inv_mod(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let a = a.rem_euclid(m as i64);
    let (g, x, _) = egcd(a, m as i64);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(m as i64) as u64)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Kahan–Babuska compensated accumulator for `f64`.
#[derive(Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Compensated accumulator for complex values.
#[derive(Clone, Copy, Default)]
pub struct KahanC {
    re: Kahan,
    im: Kahan,
}

impl KahanC {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn egcd_inverse() {
        for m in 2u64..200 {
            for a in 1..m {
                match inv_mod(a as i64, m) {
                    Some(inv) => assert_eq!(mul_mod(a, inv, m), 1, "a={a} m={m}"),
                    None => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn phase_reduction() {
        let z = e_frac(7, 4);
        assert!((z - e(0.75)).norm() < 1e-15);
        let w = e_frac(-1, 4);
        assert!((w - e(0.75)).norm() < 1e-15);
    }

    #[test]
    fn kahan_compensates() {
        let mut k = Kahan::new();
        for _ in 0..1_000_000 {
            k.add(0.1);
        }
        assert!((k.value() - 100_000.0).abs() < 1e-9);
    }
}
