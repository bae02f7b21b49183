//! Smooth compactly supported test functions. All smoothing weights in the
//! crate are built from the standard `exp(-1/(1-t^2))` bump and the
//! `exp(-1/t)` smoothstep, so every instance is genuinely `C^infinity` with
//! vanishing one-sided derivatives at the support endpoints.
//!
//! Derivatives up to order 4 are exact (truncated Taylor-jet arithmetic
//! through the defining formulas), which the diagnostics rely on; the unit
//! tests check them against extrapolated central differences.

use std::sync::Arc;

/// Degree-4 truncated Taylor series `sum c[k] (t - x)^k`.
#[derive(Clone, Copy, Debug)]
struct Jet {
    c: [f64; 5],
}

impl Jet {
    fn var(x: f64) -> Self {
        Jet {
            c: [x, 1.0, 0.0, 0.0, 0.0],
        }
    }

    fn constant(v: f64) -> Self {
        Jet {
            c: [v, 0.0, 0.0, 0.0, 0.0],
        }
    }

    fn add(self, o: Jet) -> Jet {
        let mut c = [0.0; 5];
        for k in 0..5 {
            c[k] = self.c[k] + o.c[k];
        }
        Jet { c }
    }

    fn neg(self) -> Jet {
        let mut c = self.c;
        for v in &mut c {
            *v = -*v;
        }
        Jet { c }
    }

    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; 5];
        for i in 0..5 {
            for j in 0..5 - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }

    fn recip(self) -> Jet {
        let b0 = 1.0 / self.c[0];
        let mut b = [b0, 0.0, 0.0, 0.0, 0.0];
        for k in 1..5 {
            let mut s = 0.0;
            for i in 1..=k {
                s += self.c[i] * b[k - i];
            }
            b[k] = -b0 * s;
        }
        Jet { c: b }
    }

    fn exp(self) -> Jet {
        let b0 = self.c[0].exp();
        let mut b = [b0, 0.0, 0.0, 0.0, 0.0];
        for k in 1..5 {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * self.c[j] * b[k - j];
            }
            b[k] = s / k as f64;
        }
        Jet { c: b }
    }

    fn scale(self, a: f64) -> Jet {
        let mut c = self.c;
        for v in &mut c {
            *v *= a;
        }
        Jet { c }
    }

    /// k-th derivative value.
    fn deriv(&self, k: u32) -> f64 {
        let fact = [1.0, 1.0, 2.0, 6.0, 24.0][k as usize];
        self.c[k as usize] * fact
    }
}

/// `exp(-1/(1-t^2))` as a jet (requires `|t| < 1`).
fn bump_jet(t: Jet) -> Jet {
    let s = Jet::constant(1.0).add(t.mul(t).neg());
    s.recip().neg().exp()
}

/// `sigma(t) = exp(-1/t)` as a jet (requires `t > 0`).
fn sigma_jet(t: Jet) -> Jet {
    t.recip().neg().exp()
}

/// smoothstep `sigma(t) / (sigma(t) + sigma(1-t))` as a jet for `0 < t < 1`.
fn smoothstep_jet(t: Jet) -> Jet {
    let a = sigma_jet(t);
    let b = sigma_jet(Jet::constant(1.0).add(t.neg()));
    a.mul(a.add(b).recip())
}

fn core_bump(t: f64) -> f64 {
    if t.abs() < 1.0 {
        (-1.0 / (1.0 - t * t)).exp()
    } else {
        0.0
    }
}

fn sigma(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = sigma(t);
        a / (a + sigma(1.0 - t))
    }
}

#[derive(Clone)]
enum Shape {
    /// `amp * exp(-1/(1 - ((x - center)/half)^2))`
    Bump { center: f64, half: f64, amp: f64 },
    /// rise on `[lo, one_lo]`, 1 on `[one_lo, one_hi]`, fall on `[one_hi, hi]`
    Plateau {
        lo: f64,
        one_lo: f64,
        one_hi: f64,
        hi: f64,
    },
    Zero,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

#[derive(Clone)]
pub struct BumpFunction {
    label: String,
    lo: f64,
    hi: f64,
    shape: Shape,
}

impl std::fmt::Debug for BumpFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BumpFunction({} on [{}, {}])", self.label, self.lo, self.hi)
    }
}

impl BumpFunction {
    /// The reference bump `exp(-1/(1-t^2))` rescaled to `[lo, hi]`.
    pub fn bump(label: &str, lo: f64, hi: f64) -> Self {
        assert!(lo < hi);
        BumpFunction {
            label: label.to_string(),
            lo,
            hi,
            shape: Shape::Bump {
                center: 0.5 * (lo + hi),
                half: 0.5 * (hi - lo),
                amp: 1.0,
            },
        }
    }

    /// Plateau weight: rises smoothly on `[lo, one_lo]`, is identically 1 on
    /// `[one_lo, one_hi]`, falls on `[one_hi, hi]`.
    pub fn plateau(label: &str, lo: f64, one_lo: f64, one_hi: f64, hi: f64) -> Self {
        assert!(lo < one_lo && one_lo <= one_hi && one_hi < hi);
        BumpFunction {
            label: label.to_string(),
            lo,
            hi,
            shape: Shape::Plateau {
                lo,
                one_lo,
                one_hi,
                hi,
            },
        }
    }

    /// Everywhere-zero weight on the given support (degenerate test input).
    pub fn zero(lo: f64, hi: f64) -> Self {
        BumpFunction {
            label: "zero".into(),
            lo,
            hi,
            shape: Shape::Zero,
        }
    }

    /// Arbitrary evaluator; derivatives fall back to finite differences.
    pub fn custom(label: &str, lo: f64, hi: f64, f: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        assert!(lo < hi);
        BumpFunction {
            label: label.to_string(),
            lo,
            hi,
            shape: Shape::Custom(f),
        }
    }

    /// `W1`: dyadic weight on `[1, 2]`.
    pub fn w1() -> Self {
        Self::bump("W1", 1.0, 2.0)
    }

    /// `W2`: dyadic weight on `[1, 2]`.
    pub fn w2() -> Self {
        Self::bump("W2", 1.0, 2.0)
    }

    /// `W`: dyadic weight on `[1, 2]` used to smooth Poisson frequencies.
    pub fn w_dyadic() -> Self {
        Self::bump("W", 1.0, 2.0)
    }

    /// The classical detection weight: supported on `[1/2, 3]`, identically 1
    /// on `[1, 2]`.
    pub fn v_standard() -> Self {
        Self::plateau("V", 0.5, 1.0, 2.0, 3.0)
    }

    /// Detection weight adapted to a plateau `[p_lo, p_hi]`, supported on
    /// `[p_lo/2, 1.5 p_hi]`.
    pub fn v_plateau(p_lo: f64, p_hi: f64) -> Self {
        assert!(p_lo > 0.0 && p_lo < p_hi);
        Self::plateau("V", 0.5 * p_lo, p_lo, p_hi, 1.5 * p_hi)
    }

    /// Window for the delta-method integration variable: 1 on
    /// `[-half, half]`, supported on `[-2 half, 2 half]`.
    pub fn u_window(half: f64) -> Self {
        assert!(half > 0.0);
        Self::plateau("U", -2.0 * half, -half, half, 2.0 * half)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.lo || x >= self.hi {
            return 0.0;
        }
        match &self.shape {
            Shape::Bump { center, half, amp } => amp * core_bump((x - center) / half),
            Shape::Plateau {
                lo,
                one_lo,
                one_hi,
                hi,
            } => {
                if x < *one_lo {
                    smoothstep((x - lo) / (one_lo - lo))
                } else if x <= *one_hi {
                    1.0
                } else {
                    smoothstep((hi - x) / (hi - one_hi))
                }
            }
            Shape::Zero => 0.0,
            Shape::Custom(f) => f(x),
        }
    }

    /// Mass `int f` by fixed high-order panels.
    pub fn mass(&self) -> f64 {
        let seeds = super::quad::uniform_seeds(self.lo, self.hi, 64);
        super::quad::adaptive_quad_seeded(
            &|x| num_complex::Complex64::new(self.eval(x), 0.0),
            &seeds,
            1e-13,
            4000,
        )
        .map(|r| r.value.re)
        .unwrap_or(0.0)
    }

    /// Exact derivative of order `1..=4` (Taylor-jet arithmetic through the
    /// defining formulas; finite differences for custom shapes).
    pub fn deriv(&self, order: u32, x: f64) -> f64 {
        assert!((1..=4).contains(&order), "derivative order 1..=4");
        if x <= self.lo || x >= self.hi {
            return 0.0;
        }
        match &self.shape {
            Shape::Bump { center, half, amp } => {
                // seed the jet with the affine inner map t = (x - c)/h
                let t = Jet {
                    c: [(x - center) / half, 1.0 / half, 0.0, 0.0, 0.0],
                };
                bump_jet(t).scale(*amp).deriv(order)
            }
            Shape::Plateau {
                lo,
                one_lo,
                one_hi,
                hi,
            } => {
                if x < *one_lo {
                    let w = one_lo - lo;
                    let t = Jet {
                        c: [(x - lo) / w, 1.0 / w, 0.0, 0.0, 0.0],
                    };
                    smoothstep_jet(t).deriv(order)
                } else if x <= *one_hi {
                    0.0
                } else {
                    let w = hi - one_hi;
                    let t = Jet {
                        c: [(hi - x) / w, -1.0 / w, 0.0, 0.0, 0.0],
                    };
                    smoothstep_jet(t).deriv(order)
                }
            }
            Shape::Zero => 0.0,
            Shape::Custom(f) => {
                let width = self.hi - self.lo;
                let h = width * 1e-3;
                let g = |t: f64| if t <= self.lo || t >= self.hi { 0.0 } else { f(t) };
                central_diff(&g, order, x, h)
            }
        }
    }
}

fn central_diff(g: &dyn Fn(f64) -> f64, order: u32, x: f64, h: f64) -> f64 {
    match order {
        1 => (g(x + h) - g(x - h)) / (2.0 * h),
        2 => (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h),
        3 => (g(x + 2.0 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2.0 * h)) / (2.0 * h * h * h),
        4 => {
            (g(x + 2.0 * h) - 4.0 * g(x + h) + 6.0 * g(x) - 4.0 * g(x - h) + g(x - 2.0 * h))
                / (h * h * h * h)
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn support_and_plateau() {
        let v = BumpFunction::v_standard();
        assert_eq!(v.support(), (0.5, 3.0));
        assert_eq!(v.eval(0.4), 0.0);
        assert_eq!(v.eval(3.1), 0.0);
        for x in [1.0f64, 1.3, 1.7, 2.0] {
            assert!((v.eval(x) - 1.0).abs() < 1e-15, "x={x}");
        }
        assert!(v.eval(0.7) > 0.0 && v.eval(0.7) < 1.0);
        let w = BumpFunction::w1();
        assert_eq!(w.eval(1.0), 0.0);
        assert!(w.eval(1.5) > 0.3);
    }

    /// Richardson-extrapolated central difference (two levels).
    fn fd(b: &BumpFunction, order: u32, x: f64, h: f64) -> f64 {
        let g = |t: f64| b.eval(t);
        let d = |h: f64| central_diff(&g, order, x, h);
        let r1 = |h: f64| (4.0 * d(h / 2.0) - d(h)) / 3.0;
        (16.0 * r1(h / 2.0) - r1(h)) / 15.0
    }

    #[test]
    fn derivatives_match_central_differences() {
        let cases = [BumpFunction::w1(), BumpFunction::v_standard()];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for b in &cases {
            let (lo, hi) = b.support();
            let width = hi - lo;
            for order in 1..=4u32 {
                let scale = (0..50)
                    .map(|i| b.deriv(order, lo + width * (i as f64 + 0.5) / 50.0).abs())
                    .fold(0.0f64, f64::max);
                for _ in 0..10 {
                    let x = rng.gen_range(lo + 0.2 * width..hi - 0.2 * width);
                    let got = b.deriv(order, x);
                    let h = width * 8e-3;
                    let plain = fd(b, order, x, h);
                    let denom = plain.abs().max(1e-4 * scale);
                    assert!(
                        ((got - plain) / denom).abs() < 1e-5,
                        "{} order {order} at {x}: {got} vs {plain}",
                        b.label()
                    );
                }
            }
        }
    }

    #[test]
    fn jet_exp_and_recip() {
        // d^k/dt^k exp(2t) at t = 0.3
        let t = Jet {
            c: [0.3, 1.0, 0.0, 0.0, 0.0],
        };
        let j = t.scale(2.0).exp();
        for k in 1..=4u32 {
            let want = 2f64.powi(k as i32) * (0.6f64).exp();
            assert!((j.deriv(k) - want).abs() < 1e-12 * want);
        }
        // 1/(1+t) derivatives at 0.5: (-1)^k k!/(1.5)^{k+1}
        let r = Jet {
            c: [1.5, 1.0, 0.0, 0.0, 0.0],
        }
        .recip();
        for k in 1..=4u32 {
            let fact = [1.0, 1.0, 2.0, 6.0, 24.0][k as usize];
            let want = (-1f64).powi(k as i32) * fact / 1.5f64.powi(k as i32 + 1);
            assert!((r.deriv(k) - want).abs() < 1e-12 * want.abs());
        }
    }

    #[test]
    fn mass_positive() {
        let w = BumpFunction::w1();
        let m = w.mass();
        assert!(m > 0.1 && m < 1.0, "{m}");
    }
}
