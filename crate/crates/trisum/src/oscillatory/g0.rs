//! Flat asymptotic expansion of the leading contour transform `G_0` for
//! weights supported on `[M, 2M]` with `y M >> 1`:
//!
//! `G_0(y) ~ pi^3 y int g(z) sum_j (c_j cos(6 pi (yz)^{1/3}) +
//!  d_j sin(6 pi (yz)^{1/3})) / (pi^3 y z)^{j/3} dz`.
//!
//! The leading constants are `c_1 = 0`, `d_1 = -2/sqrt(3 pi)`. The higher
//! coefficients at the degenerate parameter point are not printed anywhere;
//! they were fitted once by least squares against the contour evaluation on
//! a log-spaced grid (see `examples/fit_g0.rs`) and are frozen here with
//! regression tests.

use super::bump::BumpFunction;
use super::contour::LanglandsParams;
use super::quad::osc_integral;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `(c_j, d_j)` for `j = 1..=6` at the zero parameter point. `c_1` and `d_1`
/// are exact; the rest are frozen fit outputs.
pub const G0_COEFFS: [(f64, f64); 6] = [
    (0.0, -0.6514962399416584), // d_1 = -2/sqrt(3 pi)
    (FIT_C[0], FIT_D[0]),
    (FIT_C[1], FIT_D[1]),
    (FIT_C[2], FIT_D[2]),
    (FIT_C[3], FIT_D[3]),
    (FIT_C[4], FIT_D[4]),
];

// Frozen least-squares output (examples/fit_g0.rs).
const FIT_C: [f64; 5] = [
    0.17240278425936443,
    0.02064286091829622,
    -0.06063523113662913,
    -0.0721492553772121,
    -0.25692928539666067,
];
const FIT_D: [f64; 5] = [
    0.0,
    -0.0456297327383519,
    -0.012212441484383419,
    0.061916862936060266,
    0.29283020450181585,
];

/// The `j`-th oscillatory moment `int g(z) z^{-j/3} e(3 (y z)^{1/3}) dz`.
pub(crate) fn osc_moment(g: &BumpFunction, y: f64, j: u32, tol: f64) -> Result<Complex64> {
    let (lo, hi) = g.support();
    let y3 = y.cbrt();
    Ok(osc_integral(
        |z| g.eval(z) * z.powf(-(j as f64) / 3.0),
        lo,
        hi,
        |z| 3.0 * (y * z).cbrt(),
        |z| y3 * z.powf(-2.0 / 3.0),
        tol,
    )?
    .value)
}

/// k-term asymptotic evaluation of `G_0(y)` for a weight on `[M, 2M]`,
/// `y M >= 10`. Only the degenerate parameter point is supported (the frozen
/// constants were fitted there).
pub fn g0_asymptotic(y: f64, g: &BumpFunction, k: u32, params: &LanglandsParams) -> Result<f64> {
    if params.alpha.iter().any(|a| a.norm() != 0.0) {
        return Err(Error::Domain(
            "asymptotic constants are only fitted at the zero parameter point".into(),
        ));
    }
    if k < 1 || k as usize > G0_COEFFS.len() {
        return Err(Error::InvalidInput(format!(
            "expansion order k must be 1..={}, got {k}",
            G0_COEFFS.len()
        )));
    }
    let (lo, _hi) = g.support();
    let m = lo;
    if y * m < 10.0 {
        return Err(Error::Domain(format!(
            "asymptotic range needs y M >= 10, got {}",
            y * m
        )));
    }
    let p3y = PI.powi(3) * y;
    let mut total = 0.0;
    for j in 1..=k {
        let (c, d) = G0_COEFFS[j as usize - 1];
        if c == 0.0 && d == 0.0 {
            continue;
        }
        let mom = osc_moment(g, y, j, 1e-11)?;
        // cos theta = Re e(3(yz)^{1/3}), sin theta = Im
        total += p3y.powf(1.0 - j as f64 / 3.0) * (c * mom.re + d * mom.im);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillatory::contour::{ContourKernel, Variant};

    #[test]
    fn zero_weight_gives_zero() {
        let g = BumpFunction::zero(100.0, 200.0);
        let v = g0_asymptotic(1.0, &g, 4, &LanglandsParams::zero()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn domain_guards() {
        let g = BumpFunction::bump("g", 100.0, 200.0);
        assert!(matches!(
            g0_asymptotic(0.05, &g, 4, &LanglandsParams::zero()),
            Err(Error::Domain(_))
        ));
        let p = LanglandsParams::from_nu(Complex64::new(0.4, 0.0), Complex64::new(0.3, 0.0));
        assert!(matches!(
            g0_asymptotic(1.0, &g, 4, &p),
            Err(Error::Domain(_))
        ));
        assert!(g0_asymptotic(1.0, &g, 9, &LanglandsParams::zero()).is_err());
    }

    #[test]
    fn leading_constant_dominates() {
        // at large yM the one-term expansion with d_1 = -2/sqrt(3pi) is
        // already within ~(yM)^{-1/3} of the contour value
        let m = 100.0;
        let g = BumpFunction::bump("g", m, 2.0 * m);
        let p = LanglandsParams::zero();
        let kernel = ContourKernel::build(
            &g,
            0,
            &p,
            Variant::G,
            ContourKernel::default_sigma(Variant::G, 0, &p),
            12.0,
        )
        .unwrap();
        let y = 10.0; // yM = 1000
        let truth = kernel.eval(y).re;
        let one = g0_asymptotic(y, &g, 1, &p).unwrap();
        let rel = ((one - truth) / truth).abs();
        assert!(rel < 0.2, "one-term relative error {rel}");
    }

    #[test]
    fn error_shrinks_with_more_terms() {
        let m = 100.0;
        let g = BumpFunction::bump("g", m, 2.0 * m);
        let p = LanglandsParams::zero();
        let kernel = ContourKernel::build(
            &g,
            0,
            &p,
            Variant::G,
            ContourKernel::default_sigma(Variant::G, 0, &p),
            12.0,
        )
        .unwrap();
        let y = 10.0; // yM = 1000
        let truth = kernel.eval(y).re;
        let e3 = (g0_asymptotic(y, &g, 3, &p).unwrap() - truth).abs();
        let e5 = (g0_asymptotic(y, &g, 5, &p).unwrap() - truth).abs();
        assert!(e5 < e3, "e3 = {e3:.3e}, e5 = {e5:.3e}");
    }

    /// The acceptance envelope: relative error of the k = 4 expansion within
    /// `50 (yM)^{(-k+2)/3}` at `yM = 100` and `yM = 1000`.
    #[test]
    fn envelope_at_k4() {
        let m = 100.0;
        let g = BumpFunction::bump("g", m, 2.0 * m);
        let p = LanglandsParams::zero();
        let kernel = ContourKernel::build(
            &g,
            0,
            &p,
            Variant::G,
            ContourKernel::default_sigma(Variant::G, 0, &p),
            12.0,
        )
        .unwrap();
        for &ym in &[100.0, 1000.0] {
            let y = ym / m;
            let truth = kernel.eval(y).re;
            let approx = g0_asymptotic(y, &g, 4, &p).unwrap();
            let rel = ((approx - truth) / truth).abs();
            let bound = 50.0 * ym.powf(-2.0 / 3.0);
            assert!(rel <= bound, "yM={ym}: rel {rel:.3e} > bound {bound:.3e}");
        }
    }
}
