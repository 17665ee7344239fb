//! Small exact integer helpers.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Binary gcd; `gcd(0, 0) = 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Odd primes below 2¹⁶, enough to trial-divide any `u32`.
fn small_odd_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const N: usize = 1 << 16;
        let mut composite = vec![false; N];
        let mut out = Vec::new();
        for i in (3..N).step_by(2) {
            if !composite[i] {
                out.push(i as u32);
                for j in (i * i..N).step_by(2 * i) {
                    composite[j] = true;
                }
            }
        }
        out
    })
}

/// `(p, α)` pairs with `p^α ∥ n`, primes ascending. Empty for `n = 1`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n >= 2 && n.is_multiple_of(2) {
        let a = n.trailing_zeros();
        n >>= a;
        out.push((2, a));
    }
    if n >> 32 == 0 {
        let mut m = n as u32;
        for &p in small_odd_primes() {
            if (p as u64) * (p as u64) > m as u64 {
                break;
            }
            if m.is_multiple_of(p) {
                let mut a = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    a += 1;
                }
                out.push((p as u64, a));
            }
        }
        if m > 1 {
            out.push((m as u64, 1));
        }
        return out;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut a = 0;
    while n.is_multiple_of(p) {
        n /= p;
        a += 1;
    }
    a
}

/// `[n]_p`: `n` with every factor `p` removed.
pub fn p_free_part(n: u64, p: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::precondition("p-free part needs n ≥ 1"));
    }
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    Ok(n / p.pow(valuation(n, p)))
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if (a | b) >> 32 == 0 {
        (a * b) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. Modulo 1 everything is 0.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    if m < 1 << 62 {
        let (mut old_r, mut r) = ((a % m) as i64, m as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        return (old_r == 1).then(|| old_s.rem_euclid(m as i64) as u64);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Solves `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[u64], moduli: &[u64]) -> Result<u64> {
    let mut x: u64 = 0;
    let mut m: u64 = 1;
    for (&r, &mi) in residues.iter().zip(moduli) {
        let inv = inv_mod(m % mi, mi)
            .ok_or_else(|| Error::precondition("CRT moduli are not coprime"))?;
        // x' = x + m·((r - x)·m⁻¹ mod mi)
        let diff = (r % mi + mi - x % mi) % mi;
        let t = mul_mod(diff, inv, mi);
        let next_m = m.checked_mul(mi).ok_or(Error::Overflow("CRT modulus"))?;
        x = (x as u128 + m as u128 * t as u128) as u64 % next_m;
        m = next_m;
    }
    Ok(x)
}

/// Residues in `[0, n)` coprime to `n`; `{0}` for `n = 1`.
pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&u| gcd(u, n) == 1).collect()
}
