//! Exact integer and multiplicative-function kernels: factorization, the
//! divisor functions `d` and `d3` (pointwise and sieved), the coprimality
//! divisor count `sigma_00`, Jacobi symbols with the quarter-period root of
//! unity `eps_q`, and the quadratic-form data type.

use crate::error::{Error, Result};
use crate::num::{gcd, mul_mod, pow_mod};
use num_complex::Complex64;
use std::io::{Read, Write};
use std::path::Path;

/// Euler's constant, `lim (zeta(s) - 1/(s-1))` at `s -> 1`.
///
/// Frozen from an Euler–Maclaurin evaluation of the harmonic sum (see the
/// `constants_euler_maclaurin` test, which re-derives both constants to
/// twelve digits).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The first Stieltjes constant, `-(d/ds)(zeta(s) - 1/(s-1))` at `s = 1`.
/// Same provenance as [`EULER_GAMMA`].
pub const STIELTJES_GAMMA1: f64 = -0.072_815_845_483_676_72;

/// Frozen analytic constants with provenance metadata.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    pub euler_gamma: f64,
    pub stieltjes_gamma1: f64,
    /// Guaranteed correct decimal digits.
    pub digits: u32,
    pub provenance: &'static str,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            euler_gamma: EULER_GAMMA,
            stieltjes_gamma1: STIELTJES_GAMMA1,
            digits: 14,
            provenance: "Euler-Maclaurin summation of sum (log k)^j / k, m = 10^6, \
                         two Bernoulli correction terms",
        }
    }
}

/// Deterministic Miller–Rabin for `u64`. The base set is known to be exact
/// for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // n must be odd composite, not a prime power of 2.
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let f = |v: u64| (mul_mod(v, v, n) + c) % n;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization with strictly increasing primes.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidInput("factorize(0)".into()));
    }
    let mut rest = n;
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if rest == 1 {
            break;
        }
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut stack = vec![rest];
    let mut large: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            large.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    large.sort_unstable();
    let mut i = 0;
    while i < large.len() {
        let p = large[i];
        let mut e = 0;
        while i < large.len() && large[i] == p {
            e += 1;
            i += 1;
        }
        out.push((p, e));
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    Ok(out)
}

/// Number of divisors from a factorization.
pub fn divisor_count_from(f: &[(u64, u32)]) -> u64 {
    f.iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(divisor_count_from(&factorize(n)?))
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut ds = vec![1u64];
    for &(p, e) in &f {
        let len = ds.len();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            for i in 0..len {
                ds.push(ds[i] * pe);
            }
        }
    }
    ds.sort_unstable();
    Ok(ds)
}

/// Möbius function.
pub fn mobius(n: u64) -> Result<i32> {
    let f = factorize(n)?;
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// Triple divisor function: number of ordered triples with product `n`.
/// Multiplicative with `d3(p^e) = (e+1)(e+2)/2`.
pub fn d3(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.iter()
        .map(|&(_, e)| (e as u64 + 1) * (e as u64 + 2) / 2)
        .product())
}

/// `sigma_00(i, j) = #{(d1, d2): d1 | j, d2 | j/d1, gcd(d2, i) = 1}`.
pub fn sigma_00(i: u64, j: u64) -> Result<u64> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidInput("sigma_00 requires positive arguments".into()));
    }
    let mut count = 0u64;
    for d1 in divisors(j)? {
        for d2 in divisors(j / d1)? {
            if gcd(d2, i) == 1 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Sieved table of `d3(1..=n)`, stored as 32-bit entries. Built by two
/// divisor-convolution passes (`d = 1 * 1`, then `d3 = d * 1`) in
/// `O(n log n)` additions.
pub struct D3Sieve {
    n: u64,
    table: Vec<u32>,
}

const SIEVE_MAGIC: &[u8; 8] = b"TRID3SVE";

impl D3Sieve {
    /// Build the table for `1..=n` within `budget_bytes` of working memory
    /// (peak: 4 bytes per entry for the result plus 2 bytes per entry for the
    /// intermediate `d` table).
    pub fn build(n: u64, budget_bytes: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("sieve size must be positive".into()));
        }
        let need = (n + 1) * 6 + 1024;
        if need > budget_bytes {
            return Err(Error::Resource(format!(
                "d3 sieve of {n} needs {need} bytes, budget is {budget_bytes}"
            )));
        }
        let len = n as usize + 1;
        let mut d = vec![0u16; len];
        for i in 1..len {
            let mut j = i;
            while j < len {
                d[j] += 1;
                j += i;
            }
        }
        let mut t = vec![0u32; len];
        for i in 1..len {
            let mut j = i;
            let mut k = 1usize;
            while j < len {
                t[j] += d[k] as u32;
                j += i;
                k += 1;
            }
        }
        Ok(D3Sieve { n, table: t })
    }

    pub fn limit(&self) -> u64 {
        self.n
    }

    /// `d3(m)` for `1 <= m <= limit`.
    pub fn get(&self, m: u64) -> Result<u32> {
        if m == 0 || m > self.n {
            return Err(Error::InvalidInput(format!(
                "sieve lookup {m} outside 1..={}",
                self.n
            )));
        }
        Ok(self.table[m as usize])
    }

    /// Raw table slice; index `m` holds `d3(m)`, index 0 is unused.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Little-endian binary persistence: magic, 8-byte `n`, then `n` 4-byte
    /// entries.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        w.write_all(SIEVE_MAGIC)?;
        w.write_all(&self.n.to_le_bytes())?;
        for &v in &self.table[1..] {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != SIEVE_MAGIC {
            return Err(Error::InvalidInput(format!(
                "{} is not a d3 sieve file",
                path.display()
            )));
        }
        let mut nb = [0u8; 8];
        r.read_exact(&mut nb)?;
        let n = u64::from_le_bytes(nb);
        let mut table = vec![0u32; n as usize + 1];
        let mut buf = vec![0u8; 4 << 16];
        let mut idx = 1usize;
        while idx <= n as usize {
            let want = ((n as usize + 1 - idx) * 4).min(buf.len());
            r.read_exact(&mut buf[..want])?;
            for c in buf[..want].chunks_exact(4) {
                table[idx] = u32::from_le_bytes([c[0], c[1], c[2], c[3]]);
                idx += 1;
            }
        }
        Ok(D3Sieve { n, table })
    }
}

/// Jacobi symbol `(a/q)` for odd positive `q`.
pub fn jacobi(a: i64, q: u64) -> Result<i32> {
    if q == 0 || q % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "Jacobi symbol needs odd positive modulus, got {q}"
        )));
    }
    let mut num = a.rem_euclid(q as i64) as u64;
    let mut den = q;
    let mut sign = 1i32;
    while num != 0 {
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut num, &mut den);
        if num % 4 == 3 && den % 4 == 3 {
            sign = -sign;
        }
        num %= den;
    }
    Ok(if den == 1 { sign } else { 0 })
}

/// `eps_q`: 1 for `q = 1 mod 4`, `i` for `q = 3 mod 4`.
pub fn eps_q(q: u64) -> Result<Complex64> {
    if q == 0 || q % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "eps_q needs odd positive q, got {q}"
        )));
    }
    Ok(if q % 4 == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    })
}

pub fn jacobi_and_eps(a: i64, q: u64) -> Result<(i32, Complex64)> {
    Ok((jacobi(a, q)?, eps_q(q)?))
}

/// A symmetric positive definite binary quadratic form
/// `Q(x, y) = A x^2 + B y^2 + 2 C x y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    /// `det = A B - C^2`.
    pub det: i64,
    /// Scale making `n_scale * Q*` integral. The adjoint of an integral form
    /// is already integral, so this is 1; recorded explicitly.
    pub n_scale: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let det = a
            .checked_mul(b)
            .and_then(|ab| ab.checked_sub(c.checked_mul(c)?))
            .ok_or_else(|| Error::InvalidInput("form coefficients overflow".into()))?;
        if a <= 0 || det <= 0 {
            return Err(Error::InvalidInput(format!(
                "form ({a},{b},{c}) is not positive definite (A > 0 and AB - C^2 > 0 required)"
            )));
        }
        Ok(QuadraticForm {
            a,
            b,
            c,
            det,
            n_scale: 1,
        })
    }

    /// Exact integer evaluation. Guarded for `|x|, |y| <= 2^30`.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        debug_assert!(x.abs() <= 1 << 30 && y.abs() <= 1 << 30);
        let (x, y) = (x as i128, y as i128);
        let v = self.a as i128 * x * x + self.b as i128 * y * y + 2 * self.c as i128 * x * y;
        v as i64
    }

    pub fn eval_f(&self, x: f64, y: f64) -> f64 {
        self.a as f64 * x * x + self.b as f64 * y * y + 2.0 * self.c as f64 * x * y
    }

    /// Adjoint form `Q*(x, y) = B x^2 + A y^2 - 2 C x y`.
    pub fn adjoint_eval(&self, x: i64, y: i64) -> i64 {
        let (x, y) = (x as i128, y as i128);
        (self.b as i128 * x * x + self.a as i128 * y * y - 2 * self.c as i128 * x * y) as i64
    }

    /// Parse `"A,B,C"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<_> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "expected form as A,B,C, got '{s}'"
            )));
        }
        let mut v = [0i64; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad form coefficient '{part}'")))?;
        }
        QuadraticForm::new(v[0], v[1], v[2])
    }
}
