//! Voronoi summation for the triple divisor function: direct (twisted) side,
//! dual side with the contour-integral transforms, and the explicit
//! main-term polynomials.

use crate::arith::{divisor_count, divisors, EULER_GAMMA, STIELTJES_GAMMA1};
use crate::error::Result;

/// The main-term polynomials `P1(n1, q)` and `P2(n1, q)` of the `d3` Voronoi
/// formula. The first logarithm's argument is `n1` (the divisor summation
/// variable), and the divisor-log sums run over `l | n1`.
pub fn p_polynomials(n1: u64, q: u64) -> Result<(f64, f64)> {
    let ds = divisors(n1)?;
    let d = divisor_count(n1)? as f64;
    let log_sum: f64 = ds.iter().map(|&l| (l as f64).ln()).sum();
    let log2_sum: f64 = ds.iter().map(|&l| (l as f64).ln().powi(2)).sum();
    let ln1 = (n1 as f64).ln();
    let lq = (q as f64).ln();
    let g = EULER_GAMMA;
    let g1 = STIELTJES_GAMMA1;
    let p1 = (5.0 / 3.0) * ln1 - 3.0 * lq + 3.0 * g - log_sum / (3.0 * d);
    let p2 = ln1 * ln1 - 5.0 * lq * ln1 + 4.5 * lq * lq + 3.0 * g * g - 3.0 * g1
        + 7.0 * g * ln1
        - 9.0 * g * lq
        + ((ln1 + lq - 5.0 * g) * log_sum - 1.5 * log2_sum) / d;
    Ok((p1, p2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_polynomials_closed_cases() {
        let g = EULER_GAMMA;
        let g1 = STIELTJES_GAMMA1;
        // n1 = 1: divisor-log sums vanish
        for q in [1u64, 2, 7] {
            let (p1, p2) = p_polynomials(1, q).unwrap();
            let lq = (q as f64).ln();
            assert!((p1 - (-3.0 * lq + 3.0 * g)).abs() < 1e-14);
            assert!((p2 - (4.5 * lq * lq + 3.0 * g * g - 3.0 * g1 - 9.0 * g * lq)).abs() < 1e-13);
        }
        // n1 = 4, q = 2 by hand: divisors {1, 2, 4}, d = 3
        let (p1, p2) = p_polynomials(4, 2).unwrap();
        let l2 = 2f64.ln();
        let l4 = 4f64.ln();
        let log_sum = l2 + l4;
        let log2_sum = l2 * l2 + l4 * l4;
        let want1 = (5.0 / 3.0) * l4 - 3.0 * l2 + 3.0 * g - log_sum / 9.0;
        let want2 = l4 * l4 - 5.0 * l2 * l4 + 4.5 * l2 * l2 + 3.0 * g * g - 3.0 * g1
            + 7.0 * g * l4
            - 9.0 * g * l2
            + ((l4 + l2 - 5.0 * g) * log_sum - 1.5 * log2_sum) / 3.0;
        assert!((p1 - want1).abs() < 1e-14);
        assert!((p2 - want2).abs() < 1e-13);
    }
}
