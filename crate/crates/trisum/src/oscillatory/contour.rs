//! Gamma-factor contour transforms: the degree-three Mellin–Barnes kernels
//! applied to a compactly supported weight, evaluated along a vertical line.
//!
//! A [`ContourKernel`] freezes the line integrand (Gamma ratios times the
//! weight's Mellin transform) on a fixed quadrature grid once per weight, so
//! evaluating the transform at many arguments `y` costs one vector pass each.

use super::bump::BumpFunction;
use super::gamma::ln_gamma;
use super::quad::{adaptive_quad_seeded, oscillatory_seeds};
use crate::error::{Error, Result};
use crate::num::KahanC;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Langlands parameters `(alpha_1, alpha_2, alpha_3)` of a degree-three
/// spectral object; the triple divisor function corresponds to `(0, 0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanglandsParams {
    pub alpha: [Complex64; 3],
}

impl LanglandsParams {
    /// Linear map from the type `(nu_1, nu_2)`:
    /// `alpha_1 = -nu1 - 2 nu2 + 1`, `alpha_2 = -nu1 + nu2`,
    /// `alpha_3 = 2 nu1 + nu2 - 1`.
    pub fn from_nu(nu1: Complex64, nu2: Complex64) -> Self {
        let alpha = [
            -nu1 - 2.0 * nu2 + 1.0,
            -nu1 + nu2,
            2.0 * nu1 + nu2 - 1.0,
        ];
        LanglandsParams { alpha }
    }

    pub fn zero() -> Self {
        LanglandsParams {
            alpha: [Complex64::default(); 3],
        }
    }

    pub fn sum(&self) -> Complex64 {
        self.alpha[0] + self.alpha[1] + self.alpha[2]
    }

    /// Jacquet–Shalika bound `|Re alpha_i| < 1/2`; violations are reported,
    /// not fatal.
    pub fn within_js_bound(&self) -> bool {
        self.alpha.iter().all(|a| a.re.abs() < 0.5)
    }

    fn is_real(&self) -> bool {
        self.alpha.iter().all(|a| a.im == 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `G_l`: Gamma ratios shifted by the Langlands parameters, Mellin
    /// argument `-s`.
    G,
    /// `H_l`: cubed Gamma ratio with the `2l` shift, Mellin argument `-s-l`.
    H,
}

/// Frozen line integrand for one `(weight, l, variant, sigma)` choice.
pub struct ContourKernel {
    sigma: f64,
    /// When the parameters and weight are real the integrand is conjugate
    /// symmetric in `t`; only `t >= 0` is stored and the real part doubled.
    half_line: bool,
    t_nodes: Vec<f64>,
    coefs: Vec<Complex64>,
}

fn gamma_ratio(s: Complex64, l: u8, params: &LanglandsParams, variant: Variant) -> Complex64 {
    let lf = l as f64;
    match variant {
        Variant::G => {
            let mut acc = Complex64::default();
            for a in params.alpha {
                acc += ln_gamma((1.0 + s + a + lf) / 2.0) - ln_gamma((-s - a + lf) / 2.0);
            }
            acc.exp()
        }
        Variant::H => {
            let num = ln_gamma((1.0 + s + 2.0 * lf) / 2.0);
            let den = ln_gamma(-s / 2.0);
            (3.0 * (num - den)).exp()
        }
    }
}

/// Mellin transform of the weight along a fixed vertical line, evaluated as
/// a Fourier integral in `v = log x`:
/// `h~(re - i t) = int F(v) e^{-i t v} dv` with `F(v) = h(e^v) e^{re v}`.
///
/// `F` is smooth and compactly supported with all derivatives vanishing at
/// the endpoints, so a fine trapezoid grid is superalgebraically accurate up
/// to the aliasing frequency `2 pi / dv`; the grid is sized for the largest
/// `|t|` the kernel build can reach. Kahan summation keeps the roundoff
/// floor at a few ulps of the weight's mass.
struct MellinGrid {
    v: Vec<f64>,
    f_dv: Vec<f64>,
}

impl MellinGrid {
    fn build(h: &BumpFunction, re_w: f64, t_reach: f64) -> Self {
        let (lo, hi) = h.support();
        let (vlo, vhi) = (lo.ln(), hi.ln());
        let span = vhi - vlo;
        // alias margin of 600 rad beyond the largest frequency in play
        let n = ((span * (t_reach + 600.0) / crate::num::TAU * 1.3) as usize).max(512);
        let dv = span / n as f64;
        let mut v = Vec::with_capacity(n + 1);
        let mut f_dv = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let vi = vlo + i as f64 * dv;
            v.push(vi);
            f_dv.push(h.eval(vi.exp()) * (re_w * vi).exp() * dv);
        }
        MellinGrid { v, f_dv }
    }

    /// `h~(re - i t)`.
    fn eval(&self, t: f64) -> Complex64 {
        let mut re = crate::num::Kahan::new();
        let mut im = crate::num::Kahan::new();
        for (vi, fi) in self.v.iter().zip(&self.f_dv) {
            let ph = t * vi;
            re.add(fi * ph.cos());
            im.add(-fi * ph.sin());
        }
        Complex64::new(re.value(), im.value())
    }
}

impl ContourKernel {
    /// Default abscissa per variant and order, chosen so the Gamma-ratio
    /// modulus decays along the line: the ratio grows like
    /// `|t|^{3(sigma + 1/2 + l)}` for `H_l` and `|t|^{3(sigma + 1/2)}` for
    /// `G_l`, and a decaying kernel keeps the truncation point and the f64
    /// noise floor low. Any abscissa in the stated half-plane gives the same
    /// value (no poles are crossed); the shift-invariance tests check this.
    pub fn default_sigma(variant: Variant, l: u8, params: &LanglandsParams) -> f64 {
        match variant {
            Variant::G => {
                let bound = -1.0
                    + params
                        .alpha
                        .iter()
                        .map(|a| -a.re)
                        .fold(f64::NEG_INFINITY, f64::max);
                (bound + 0.05).max(-0.7)
            }
            Variant::H => {
                if l == 0 {
                    -0.7
                } else {
                    -2.0
                }
            }
        }
    }

    pub fn build(
        h: &BumpFunction,
        l: u8,
        params: &LanglandsParams,
        variant: Variant,
        sigma: f64,
        max_abs_log_y: f64,
    ) -> Result<Self> {
        if l > 1 {
            return Err(Error::InvalidInput("transform order l must be 0 or 1".into()));
        }
        match variant {
            Variant::G => {
                let m = params
                    .alpha
                    .iter()
                    .map(|a| -a.re)
                    .fold(f64::NEG_INFINITY, f64::max);
                if sigma <= -1.0 + m {
                    return Err(Error::Domain(format!(
                        "G contour needs sigma > {}, got {sigma}",
                        -1.0 + m
                    )));
                }
            }
            Variant::H => {
                if sigma <= -1.0 - 2.0 * l as f64 {
                    return Err(Error::Domain(format!(
                        "H contour needs sigma > {}, got {sigma}",
                        -1.0 - 2.0 * l as f64
                    )));
                }
            }
        }
        let shift = match variant {
            Variant::G => 0.0,
            Variant::H => l as f64,
        };
        let (lo, hi) = h.support();
        let half_line = params.is_real();
        // Radians-per-unit-t bound for the eval-time integrand, used to size
        // the panels: the y-power contributes |log(pi^3 y)|, the Mellin
        // factor up to log of the support scale, the Gamma ratios a slowly
        // growing logarithmic phase.
        let supp_rad = lo.abs().ln().abs().max(hi.abs().ln().abs());
        // distance from the line to the nearest Gamma-factor pole, which
        // sets the integrand's feature scale near t = 0
        let pole_dist = match variant {
            Variant::G => params
                .alpha
                .iter()
                .map(|a| 1.0 + sigma + a.re + l as f64)
                .fold(f64::INFINITY, f64::min),
            Variant::H => 1.0 + sigma + 2.0 * l as f64,
        }
        .max(0.02);
        let max_t = 4000.0;
        let grid = MellinGrid::build(h, -sigma - shift, max_t);
        let node_coef = |tt: f64, wt: f64| -> (Complex64, f64) {
            let s = Complex64::new(sigma, tt);
            let r = gamma_ratio(s, l, params, variant);
            // h~(-s - shift) = h~((-sigma - shift) - i t)
            let m = grid.eval(tt);
            let coef = r * m * (wt / (2.0 * PI));
            (coef, coef.norm())
        };
        let mut t_nodes: Vec<f64> = Vec::new();
        let mut coefs: Vec<Complex64> = Vec::new();
        let mut accum_abs = 0f64;
        let mut prev_block = f64::INFINITY;
        let mut prev_tiny = false;
        let block_width = 8.0;
        let mut t0 = 0.0;
        // 15-point Kronrod nodes per panel
        let xgk: [f64; 8] = [
            0.991455371120812639,
            0.949107912342758525,
            0.864864423359769073,
            0.741531185599394440,
            0.586087235467691130,
            0.405845151377397167,
            0.207784955007898468,
            0.0,
        ];
        let wgk: [f64; 8] = [
            0.022935322010529225,
            0.063092092629978553,
            0.104790010322250184,
            0.140653259715525919,
            0.169004726639267903,
            0.190350578064785410,
            0.204432940075298892,
            0.209482141084727828,
        ];
        while t0 < max_t {
            let t1 = t0 + block_width;
            let mut block_abs = 0f64;
            let mut a: f64 = t0;
            while a < t1 {
                let rad = max_abs_log_y + supp_rad + 3.0 * (2.0 + a).ln() + 5.0;
                let w = (crate::num::TAU * 0.7 / rad)
                    .min(0.5)
                    .min((0.4 * (pole_dist + 0.25 * a)).max(1e-3));
                let b = (a + w).min(t1);
                let c = 0.5 * (a + b);
                let hw = 0.5 * (b - a);
                for (i, &x) in xgk.iter().enumerate() {
                    let nodes: &[f64] = if x == 0.0 {
                        &[0.0]
                    } else {
                        &[-x, x]
                    };
                    for &off in nodes {
                        let tt = c + hw * off;
                        let (coef, an) = node_coef(tt, wgk[i] * hw);
                        block_abs += an;
                        t_nodes.push(tt);
                        coefs.push(coef);
                        if !half_line && tt != 0.0 {
                            let (coef_m, _) = node_coef(-tt, wgk[i] * hw);
                            t_nodes.push(-tt);
                            coefs.push(coef_m);
                        }
                    }
                }
                a = b;
            }
            accum_abs += block_abs;
            // Stop after two consecutive blocks contribute below 1e-12 of
            // the accumulated mass (the kernels decay along the default
            // lines), or once the computed Mellin values hit the f64 noise
            // plateau: no longer decreasing while already tiny.
            let tiny = block_abs < 3e-15 * accum_abs.max(1e-300);
            let decreasing = block_abs < 0.8 * prev_block;
            if tiny && prev_tiny {
                break;
            }
            if !decreasing && block_abs < 1e-9 * accum_abs.max(1e-300) {
                break;
            }
            prev_tiny = tiny;
            prev_block = block_abs;
            t0 = t1;
        }
        if t0 >= max_t {
            return Err(Error::Quadrature {
                estimate: Complex64::default(),
                error_bound: f64::INFINITY,
                context: "contour truncation did not converge by |t| = 4000".into(),
            });
        }
        Ok(ContourKernel {
            sigma,
            half_line,
            t_nodes,
            coefs,
        })
    }

    /// Evaluate the transform at `y > 0`.
    pub fn eval(&self, y: f64) -> Complex64 {
        let big_l = (PI.powi(3) * y).ln();
        let mut acc = KahanC::new();
        for (t, c) in self.t_nodes.iter().zip(&self.coefs) {
            // (pi^3 y)^{-s} = e^{-sigma L} e^{-i t L}
            let ph = -t * big_l;
            acc.add(c * Complex64::new(ph.cos(), ph.sin()));
        }
        let scale = (-self.sigma * big_l).exp();
        let v = acc.value() * scale;
        if self.half_line {
            Complex64::new(2.0 * v.re, 0.0)
        } else {
            v
        }
    }
}

/// One-shot contour transform `G_l(y)` or `H_l(y)` with the default
/// abscissa; builds a kernel per call.
pub fn contour_transform(
    h: &BumpFunction,
    l: u8,
    y: f64,
    params: &LanglandsParams,
    variant: Variant,
    sigma: Option<f64>,
) -> Result<Complex64> {
    if y <= 0.0 {
        return Err(Error::InvalidInput("transform argument y must be positive".into()));
    }
    let sigma = sigma.unwrap_or_else(|| ContourKernel::default_sigma(variant, l, params));
    let k = ContourKernel::build(h, l, params, variant, sigma, (PI.powi(3) * y).ln().abs() + 1.0)?;
    Ok(k.eval(y))
}

/// `G_pm(y) = (G_0(y) -+ i G_1(y)) / (2 pi^{3/2})`.
pub fn g_pm(sign: i8, y: f64, g0: &ContourKernel, g1: &ContourKernel) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    (g0.eval(y) - (sign as f64) * i * g1.eval(y)) / (2.0 * PI.powf(1.5))
}

/// `H_pm(y) = (H_0(y) -+ (i/(pi^3 y)) H_1(y)) / (2 pi^{3/2})`.
pub fn h_pm(sign: i8, y: f64, h0: &ContourKernel, h1: &ContourKernel) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    (h0.eval(y) - (sign as f64) * i / (PI.powi(3) * y) * h1.eval(y)) / (2.0 * PI.powf(1.5))
}

/// Plain weighted mass used by reconstruction checks:
/// `int h(x) x^{s-1} (log x)^j dx`.
pub fn mellin_logj(h: &BumpFunction, j: u8, s: Complex64) -> Result<Complex64> {
    if j > 2 {
        return Err(Error::InvalidInput("log-Mellin order j must be 0, 1, or 2".into()));
    }
    let (lo, hi) = h.support();
    let seeds = oscillatory_seeds(lo, hi, |x| s.im.abs() / (crate::num::TAU * x), 20_000);
    let f = |x: f64| {
        let xl = x.ln();
        let base = h.eval(x) * xl.powi(j as i32);
        // x^{s-1} = e^{(s-1) ln x}
        base * ((s - 1.0) * xl).exp()
    };
    Ok(adaptive_quad_seeded(&f, &seeds, 1e-12 * (1.0 + h.mass() * hi.abs().max(1.0)), 40_000)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn langlands_map() {
        let p = LanglandsParams::from_nu(
            Complex64::new(1.0 / 3.0, 0.0),
            Complex64::new(1.0 / 3.0, 0.0),
        );
        for a in p.alpha {
            assert!(a.norm() < 1e-15);
        }
        let q = LanglandsParams::from_nu(Complex64::new(0.2, 0.1), Complex64::new(0.4, -0.3));
        assert!(q.sum().norm() < 1e-14);
        // hand linear algebra
        assert!((q.alpha[0] - Complex64::new(-0.2 - 0.8 + 1.0, -0.1 + 0.6)).norm() < 1e-14);
        assert!((q.alpha[1] - Complex64::new(-0.2 + 0.4, -0.1 - 0.3)).norm() < 1e-14);
        assert!((q.alpha[2] - Complex64::new(0.4 + 0.4 - 1.0, 0.2 - 0.3)).norm() < 1e-14);
        assert!(p.within_js_bound());
    }

    #[test]
    fn zero_weight_transforms_to_zero() {
        let z = BumpFunction::zero(1.0, 2.0);
        let v = contour_transform(&z, 0, 1.0, &LanglandsParams::zero(), Variant::G, None).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn sigma_domain_checks() {
        let h = BumpFunction::w1();
        let p = LanglandsParams::zero();
        assert!(matches!(
            contour_transform(&h, 0, 1.0, &p, Variant::G, Some(-1.2)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            contour_transform(&h, 0, 1.0, &p, Variant::H, Some(-1.5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn contour_shift_invariance() {
        let h = BumpFunction::w1();
        let p = LanglandsParams::zero();
        for l in [0u8, 1] {
            for &y in &[0.1, 1.0, 10.0] {
                let s0 = ContourKernel::default_sigma(Variant::G, l, &p);
                let a = contour_transform(&h, l, y, &p, Variant::G, Some(s0)).unwrap();
                let b = contour_transform(&h, l, y, &p, Variant::G, Some(s0 + 0.2)).unwrap();
                let scale = a.norm().max(1e-12);
                assert!(
                    (a - b).norm() / scale < 1e-8,
                    "l={l} y={y}: {a} vs {b} (rel {})",
                    (a - b).norm() / scale
                );
            }
        }
    }

    #[test]
    fn g_equals_h_at_d3_point() {
        let h = BumpFunction::w1();
        let p = LanglandsParams::zero();
    let g0 = ContourKernel::build(&h, 0, &p, Variant::G,
            ContourKernel::default_sigma(Variant::G, 0, &p), 6.0).unwrap();
        let g1 = ContourKernel::build(&h, 1, &p, Variant::G,
            ContourKernel::default_sigma(Variant::G, 1, &p), 6.0).unwrap();
        let h0 = ContourKernel::build(&h, 0, &p, Variant::H,
            ContourKernel::default_sigma(Variant::H, 0, &p), 6.0).unwrap();
        let h1 = ContourKernel::build(&h, 1, &p, Variant::H,
            ContourKernel::default_sigma(Variant::H, 1, &p), 6.0).unwrap();
        for &y in &[0.1, 1.0, 10.0] {
            for sign in [1i8, -1] {
                let g = g_pm(sign, y, &g0, &g1);
                let hh = h_pm(sign, y, &h0, &h1);
                let scale = g.norm().max(1e-12);
                assert!(
                    (g - hh).norm() / scale < 1e-6,
                    "y={y} sign={sign}: {g} vs {hh} rel {}",
                    (g - hh).norm() / scale
                );
            }
        }
    }

    #[test]
    fn mellin_logj_basics() {
        let h = BumpFunction::w1();
        // j = 0 at s = 1: plain mass
        let v = mellin_logj(&h, 0, Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - h.mass()).abs() < 1e-10 && v.im.abs() < 1e-12);
        // near-indicator bump: log-weighted mass is O(delta * mass)
        let narrow = BumpFunction::bump("narrow", 1.0, 1.001);
        let m1 = mellin_logj(&narrow, 1, Complex64::new(1.0, 0.0)).unwrap();
        assert!(m1.norm() <= 0.002 * narrow.mass());
        // d/ds mellin at s=1 equals the j=1 log moment (finite difference)
        let eps = 1e-5;
        let up = mellin_logj(&h, 0, Complex64::new(1.0 + eps, 0.0)).unwrap();
        let dn = mellin_logj(&h, 0, Complex64::new(1.0 - eps, 0.0)).unwrap();
        let fd = (up - dn) / (2.0 * eps);
        let direct = mellin_logj(&h, 1, Complex64::new(1.0, 0.0)).unwrap();
        assert!(
            (fd - direct).norm() / direct.norm() < 1e-5,
            "{fd} vs {direct}"
        );
        assert!(mellin_logj(&h, 3, Complex64::new(1.0, 0.0)).is_err());
    }
}
