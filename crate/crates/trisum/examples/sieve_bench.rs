use trisum::arith::D3Sieve;
fn main() {
    let t = std::time::Instant::now();
    let s = D3Sieve::build(100_000_000, 1 << 30).unwrap();
    println!("built 1e8 in {:.1}s", t.elapsed().as_secs_f64());
    println!("d3(100000000) = {}", s.get(100_000_000).unwrap());
    println!("d3(99999989) = {}", s.get(99_999_989).unwrap());
}
