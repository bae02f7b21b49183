//! One-time least-squares fit of the higher asymptotic coefficients of the
//! leading contour transform against the contour evaluation, at the zero
//! parameter point. The printed constants are frozen into the library.
//!
//! Run: cargo run --release -p trisum --example fit_g0

use num_complex::Complex64;
use trisum::oscillatory::{BumpFunction, ContourKernel, LanglandsParams, Variant};

const D1: f64 = -0.6514962399416584; // -2/sqrt(3 pi)

fn osc_moment(g: &BumpFunction, y: f64, j: u32) -> Complex64 {
    let (lo, hi) = g.support();
    let y3 = y.cbrt();
    trisum::oscillatory::osc_integral(
        |z| g.eval(z) * z.powf(-(j as f64) / 3.0),
        lo,
        hi,
        |z| 3.0 * (y * z).cbrt(),
        |z| y3 * z.powf(-2.0 / 3.0),
        1e-12,
    )
    .unwrap()
    .value
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / d;
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    x
}

fn main() {
    let m = 100.0;
    let g = BumpFunction::bump("g", m, 2.0 * m);
    let p = LanglandsParams::zero();
    let kernel = ContourKernel::build(
        &g,
        0,
        &p,
        Variant::G,
        ContourKernel::default_sigma(Variant::G, 0, &p),
        14.0,
    )
    .unwrap();

    let pi3 = std::f64::consts::PI.powi(3);
    let n_pts = 60usize;
    let (ym_lo, ym_hi) = (50.0f64, 30_000.0f64);

    // sanity: one-term expansion at yM = 1000
    {
        let y = 1000.0 / m;
        let truth = kernel.eval(y).re;
        let mom = osc_moment(&g, y, 1);
        let one = (pi3 * y).powf(2.0 / 3.0) * D1 * mom.im;
        println!("# one-term check at yM=1000: truth {truth:.6e}, 1-term {one:.6e}, rel {:.3e}",
                 ((one - truth) / truth).abs());
    }

    // rows: weighted residual = sum_j basis * coef
    let jmax = 6u32;
    let unknowns = 2 * (jmax as usize - 1); // c_2..c_6, d_2..d_6
    let mut ata = vec![vec![0.0; unknowns]; unknowns];
    let mut atb = vec![0.0; unknowns];
    for i in 0..n_pts {
        let ym = ym_lo * (ym_hi / ym_lo).powf(i as f64 / (n_pts - 1) as f64);
        let y = ym / m;
        let truth = kernel.eval(y).re;
        let m1 = osc_moment(&g, y, 1);
        let resid = truth - (pi3 * y).powf(2.0 / 3.0) * D1 * m1.im;
        let w = ym.powf(2.0 / 3.0) / truth.abs().max(1e-12);
        let mut row = vec![0.0; unknowns];
        for j in 2..=jmax {
            let mom = osc_moment(&g, y, j);
            let s = (pi3 * y).powf(1.0 - j as f64 / 3.0);
            row[(j - 2) as usize] = s * mom.re; // c_j
            row[(jmax - 1 + j - 2) as usize] = s * mom.im; // d_j
        }
        for r in 0..unknowns {
            for c in 0..unknowns {
                ata[r][c] += w * w * row[r] * row[c];
            }
            atb[r] += w * w * row[r] * resid;
        }
    }
    let x = solve(ata, atb);
    println!("const FIT_C: [f64; 5] = [");
    for j in 0..5 {
        println!("    {:?},", x[j]);
    }
    println!("];");
    println!("const FIT_D: [f64; 5] = [");
    for j in 0..5 {
        println!("    {:?},", x[5 + j]);
    }
    println!("];");

    // report post-fit envelope numbers for k = 4
    for &ym in &[100.0, 1000.0] {
        let y = ym / m;
        let truth = kernel.eval(y).re;
        let mut approx = 0.0;
        for j in 1..=4u32 {
            let (c, d) = match j {
                1 => (0.0, D1),
                _ => (x[(j - 2) as usize], x[(5 + j - 2) as usize]),
            };
            let mom = osc_moment(&g, y, j);
            approx += (pi3 * y).powf(1.0 - j as f64 / 3.0) * (c * mom.re + d * mom.im);
        }
        println!(
            "# k=4 at yM={ym}: rel err {:.4e} (bound {:.4e})",
            ((approx - truth) / truth).abs(),
            50.0 * ym.powf(-2.0 / 3.0)
        );
    }
}
