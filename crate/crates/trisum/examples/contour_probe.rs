use num_complex::Complex64;
use trisum::oscillatory::{gamma, BumpFunction};

fn main() {
    let h = BumpFunction::w1();
    let sigma = -0.5f64;
    // H l=1 integrand pieces along the contour
    let (lo, hi) = h.support();
    let (vlo, vhi) = (lo.ln(), hi.ln());
    let n = 4096usize;
    let dv = (vhi - vlo) / n as f64;
    let re_w = -sigma - 1.0;
    let f: Vec<(f64, f64)> = (0..=n)
        .map(|i| {
            let v = vlo + i as f64 * dv;
            (v, h.eval(v.exp()) * (re_w * v).exp() * dv)
        })
        .collect();
    let mell = |t: f64| -> Complex64 {
        let mut acc = Complex64::default();
        for &(v, w) in &f {
            let ph = t * v;
            acc += w * Complex64::new(ph.cos(), -ph.sin());
        }
        acc
    };
    for &t in &[0.0, 10.0, 40.0, 80.0, 120.0, 160.0, 200.0, 300.0, 400.0, 600.0, 1000.0, 1999.0] {
        let s = Complex64::new(sigma, t);
        let num = gamma::ln_gamma((3.0 + s) / 2.0);
        let den = gamma::ln_gamma(-s / 2.0);
        let ratio = (3.0 * (num - den)).exp();
        let m = mell(t);
        println!(
            "t={t:7.1}  |ratio|={:12.4e}  |mell|={:12.4e}  |prod|={:12.4e}",
            ratio.norm(),
            m.norm(),
            ratio.norm() * m.norm()
        );
    }
}
