use trisum::oscillatory::{contour_transform, BumpFunction, LanglandsParams, Variant};

fn main() {
    let h = BumpFunction::w1();
    let p = LanglandsParams::zero();
    for &sig in &[-0.95, -0.9, -0.8, -0.7, -0.6, -0.5, -0.4, -0.3] {
        let v = contour_transform(&h, 0, 10.0, &p, Variant::G, Some(sig)).unwrap();
        println!("sigma {sig:5.2}: {:.12e}", v.re);
    }
}
