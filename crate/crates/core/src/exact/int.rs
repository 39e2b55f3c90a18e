//! Small-integer number theory.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
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

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Prime factorization of `n > 0` as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Writes `n = m^2 * s` with `s` squarefree and `m > 0`; returns `(s, m)`.
pub fn squarefree_part(n: i64) -> (i64, i64) {
    assert!(n != 0, "squarefree part of zero");
    let (mut s, mut m) = (n.signum(), 1i64);
    for (p, e) in factorize(n.unsigned_abs()) {
        let p = p as i64;
        m *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
    }
    (s, m)
}

/// Fundamental discriminant test (includes 1, the trivial character).
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// Discriminant of `Q(sqrt d)` for squarefree `d != 1`.
pub fn quadratic_disc(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 {
        d
    } else {
        4 * d
    }
}

/// Trial-division factorization of a nonzero big integer up to `limit`.
/// Returns the primes found and the unfactored cofactor (1 if complete).
pub fn trial_factor(n: &BigInt, limit: u64) -> (Vec<u64>, BigInt) {
    let mut rest = n.abs();
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= limit && BigInt::from(d) * BigInt::from(d) <= rest {
        let bd = BigInt::from(d);
        if (&rest % &bd).is_zero() {
            primes.push(d);
            while (&rest % &bd).is_zero() {
                rest /= &bd;
            }
        }
        d += 1;
    }
    if !rest.is_one() {
        if let Some(r) = rest.to_u64() {
            if r <= limit.saturating_mul(limit) {
                primes.push(r);
                rest = BigInt::one();
            }
        }
    }
    (primes, rest)
}
