//! Integer helpers: primes, factorization, square tests, Kronecker symbols.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Probabilistic (fixed bases) primality test for big integers.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, seed: u64) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::from(seed % 1000 + 1);
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorization of |n| (n ≠ 0), sorted by prime.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    if m.is_zero() {
        return out;
    }
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut p: u64 = 2;
    while p < 20000 {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            push(bp, e, &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    let mut seed = 1;
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(m, 1, &mut out);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&m, seed);
        seed += 1;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

/// n = s·m² with s squarefree carrying the sign of n.
pub fn squarefree_part(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(Error::InvalidInput("squarefree_part of zero".into()));
    }
    let mut s = BigInt::one();
    let mut m = BigInt::one();
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            s *= &p;
        }
        m *= p.pow(e / 2);
    }
    if n.is_negative() {
        s = -s;
    }
    Ok((s, m))
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Integer square root of a perfect square, else None.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square_i64(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as u64).sqrt();
    r * r == n as u64
}

pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while (&m % &bp).is_zero() {
        m /= &bp;
        v += 1;
    }
    v
}

/// Kronecker symbol (a / p) for a prime p.
pub fn kronecker_prime(a: &BigInt, p: u64) -> i32 {
    if p == 2 {
        let r = a.mod_floor(&BigInt::from(8)).to_u64().unwrap();
        return match r {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    if r == 0 {
        return 0;
    }
    if powmod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Is d a fundamental discriminant.
pub fn is_fundamental(d: &BigInt) -> bool {
    if d.is_one() {
        return true;
    }
    let r4 = d.mod_floor(&BigInt::from(4)).to_u64().unwrap();
    let sq_free = |x: &BigInt| factor(x).iter().all(|(_, e)| *e == 1);
    if r4 == 1 {
        return sq_free(d);
    }
    if r4 == 0 {
        let q: BigInt = d / 4;
        let r = q.mod_floor(&BigInt::from(4)).to_u64().unwrap();
        return (r == 2 || r == 3) && sq_free(&q);
    }
    false
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    if n.sign() == Sign::Minus {
        None
    } else {
        n.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(squarefree_part(&b(3136)).unwrap(), (b(1), b(56)));
        assert_eq!(squarefree_part(&b(148)).unwrap(), (b(37), b(2)));
        assert_eq!(squarefree_part(&b(-104)).unwrap(), (b(-26), b(2)));
        assert!(squarefree_part(&b(0)).is_err());
    }

    #[test]
    fn factor_large() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &q * &q * BigInt::from(12);
        let f = factor(&n);
        assert_eq!(f, vec![(BigInt::from(2), 2), (BigInt::from(3), 1), (q, 2), (p, 1)]);
    }

    #[test]
    fn fundamental() {
        for (d, f) in [(1, true), (148, false), (37, true), (-104, true), (49, false), (-4, true), (8, true), (12, true), (16, false)] {
            assert_eq!(is_fundamental(&BigInt::from(d)), f, "{d}");
        }
    }
}
