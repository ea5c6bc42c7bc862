//! Univariate gcd over the integers by reduction modulo word-size primes,
//! Chinese remaindering and trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, descending.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime(n))
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over GF(p); empty for two zero inputs.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        // x <- x mod y
        let dy = y.len() - 1;
        let inv = inv_mod(y[dy], p);
        while x.len() > dy {
            let k = x.len() - 1 - dy;
            let c = mul_mod(x[x.len() - 1], inv, p);
            for (j, &yj) in y.iter().enumerate() {
                let t = mul_mod(c, yj, p);
                x[k + j] = (x[k + j] + p - t) % p;
            }
            trim(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&lc) = x.last() {
        let inv = inv_mod(lc, p);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    x
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = content(&v);
    if g.is_zero() {
        return v;
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// Whether `d` divides `a` over the integers (both nonzero, `d` primitive).
fn divides(a: &[BigInt], d: &[BigInt]) -> bool {
    let dd = d.len() - 1;
    let lc = &d[dd];
    let mut r = a.to_vec();
    while r.len() > dd {
        let top = r.last().unwrap().clone();
        if top.is_zero() {
            r.pop();
            continue;
        }
        let (q, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return false;
        }
        let k = r.len() - 1 - dd;
        for (j, dj) in d.iter().enumerate() {
            r[k + j] -= &q * dj;
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Primitive gcd (positive leading coefficient) of two nonzero integer
/// polynomials in ascending order.
pub fn gcd_integer(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let a = primitive(a.to_vec());
    let b = primitive(b.to_vec());
    if a.len() <= 1 || b.len() <= 1 {
        return vec![BigInt::one()];
    }
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut best = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<Vec<BigInt>> = None;
    for p in primes() {
        if reduce(a.last().unwrap(), p) == 0 || reduce(b.last().unwrap(), p) == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(&ap, &bp, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > best {
            continue;
        }
        let gm = reduce(&gamma, p);
        let image: Vec<u64> = g.iter().map(|&c| mul_mod(c, gm, p)).collect();
        if d < best {
            best = d;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            last = None;
            continue;
        }
        // combine: x = acc + M * ((r - acc) / M mod p)
        let m_inv = inv_mod(reduce(&modulus, p), p);
        for (c, &r) in acc.iter_mut().zip(&image) {
            let diff = (r + p - reduce(c, p)) % p;
            *c += &modulus * BigInt::from(mul_mod(diff, m_inv, p));
        }
        modulus *= BigInt::from(p);
        let half: BigInt = &modulus >> 1;
        let symmetric: Vec<BigInt> = acc.iter().map(|c| if c > &half { c - &modulus } else { c.clone() }).collect();
        if last.as_ref() == Some(&symmetric) {
            let cand = primitive(symmetric.clone());
            if divides(&a, &cand) && divides(&b, &cand) {
                return cand;
            }
        }
        last = Some(symmetric);
    }
    unreachable!("infinitely many primes")
}
