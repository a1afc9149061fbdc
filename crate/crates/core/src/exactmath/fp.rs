//! Polynomials over the field with p elements and their factorization
//! (squarefree split, distinct-degree, then equal-degree Cantor–Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::integer::is_prime_u64;
use super::IntPoly;
use crate::error::{Error, Result};

/// Coefficients mod p, constant term first, no trailing zeros.
pub type FpPoly = Vec<u64>;

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub fn trim(mut v: FpPoly) -> FpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn reduce(f: &IntPoly, p: u64) -> FpPoly {
    let bp = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().unwrap())
            .collect(),
    )
}

pub fn deg(a: &FpPoly) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &FpPoly, k: u64, p: u64) -> FpPoly {
    trim(a.iter().map(|&x| mulm(x, k, p)).collect())
}

pub fn monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, invm(l, p), p),
    }
}

pub fn divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (vec![], a.clone());
    }
    let mut r = a.clone();
    let inv = invm(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + db], inv, p);
        q[k] = c;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mulm(c, bi, p)) % p;
            }
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Returns (g, s, t) with s·a + t·b = g monic.
pub fn xgcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if let Some(&l) = r0.last() {
        let inv = invm(l, p);
        (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
    } else {
        (r0, s0, t0)
    }
}

pub fn derivative(a: &FpPoly, p: u64) -> FpPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn mulmod(a: &FpPoly, b: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    rem(&mul(a, b, p), m, p)
}

pub fn powmod(base: &FpPoly, mut e: u128, m: &FpPoly, p: u64) -> FpPoly {
    let mut r = rem(&vec![1u64], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

pub fn eval(a: &FpPoly, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
}

/// Squarefree decomposition of a monic polynomial: list of (squarefree factor, multiplicity).
pub fn squarefree(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let f = monic(f, p);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let d = derivative(&f, p);
    if d.is_empty() {
        // f = g(x^p) = g(x)^p over the prime field
        let g: FpPoly = f.iter().step_by(p as usize).copied().collect();
        for (h, m) in squarefree(&g, p) {
            out.push((h, m * p as u32));
        }
        return out;
    }
    let mut c = gcd(&f, &d, p);
    let mut w = divrem(&f, &c, p).0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let g: FpPoly = c.iter().step_by(p as usize).copied().collect();
        for (h, m) in squarefree(&g, p) {
            out.push((h, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x: FpPoly = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let n = f.len() - 1;
            out.push((f, n));
            break;
        }
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

fn rand_poly(rng: &mut ChaCha8Rng, n: usize, p: u64) -> FpPoly {
    trim((0..n).map(|_| rng.gen_range(0..p)).collect())
}

/// Splits a product of distinct monic irreducibles of degree d.
pub fn equal_degree(f: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![monic(f, p)];
    }
    loop {
        let a = rand_poly(rng, n, p);
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = mulmod(&t, &t, f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let e = (p as u128).checked_pow(d as u32).expect("field size overflow");
            sub(&powmod(&a, (e - 1) / 2, f, p), &vec![1], p)
        };
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModPFactorization {
    pub p: u64,
    /// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
    pub factors: Vec<(FpPoly, u32)>,
    /// Leading coefficient of the input mod p.
    pub unit: u64,
}

impl ModPFactorization {
    pub fn degrees(&self) -> Vec<(usize, u32)> {
        self.factors.iter().map(|(f, e)| (f.len() - 1, *e)).collect()
    }
}

pub fn factor_fp(f: &FpPoly, p: u64, seed: u64) -> Vec<(FpPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
    let mut out = Vec::new();
    for (g, m) in squarefree(f, p) {
        for (h, d) in distinct_degree(&g, p) {
            for q in equal_degree(&h, d, p, &mut rng) {
                out.push((q, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

/// Complete factorization of f mod p into monic irreducibles.
pub fn factor_mod_p(f: &IntPoly, p: u64, seed: u64) -> Result<ModPFactorization> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p >= 1 << 21 {
        return Err(Error::Unsupported(format!("prime {p} too large for mod-p factorization")));
    }
    let r = reduce(f, p);
    if r.is_empty() {
        return Err(Error::InvalidInput(format!("polynomial vanishes mod {p}")));
    }
    let unit = *r.last().unwrap();
    let factors = if r.len() == 1 { vec![] } else { factor_fp(&r, p, seed) };
    Ok(ModPFactorization { p, factors, unit })
}

/// Roots in the prime field of a nonzero polynomial, sorted.
pub fn roots(f: &FpPoly, p: u64) -> Vec<u64> {
    let f = monic(f, p);
    if f.len() <= 1 {
        return vec![];
    }
    if p < 64 {
        return (0..p).filter(|&x| eval(&f, x, p) == 0).collect();
    }
    let x: FpPoly = vec![0, 1];
    let xp = powmod(&x, p as u128, &f, p);
    let g = gcd(&sub(&xp, &x, p), &f, p);
    if g.len() <= 1 {
        return vec![];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut r: Vec<u64> = equal_degree(&g, 1, p, &mut rng)
        .into_iter()
        .map(|l| (p - l[0]) % p)
        .collect();
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(fac: &ModPFactorization) -> FpPoly {
        let mut acc = vec![fac.unit];
        for (f, e) in &fac.factors {
            for _ in 0..*e {
                acc = mul(&acc, f, fac.p);
            }
        }
        acc
    }

    #[test]
    fn examples() {
        let f = factor_mod_p(&IntPoly::from_i64(&[1, 0, 1]), 2, 0).unwrap();
        assert_eq!(f.factors, vec![(vec![1, 1], 2)]);
        let g = factor_mod_p(&IntPoly::from_i64(&[1, 1, 0, 0, 1]), 2, 0).unwrap();
        assert_eq!(g.degrees(), vec![(4, 1)]);
        let h = factor_mod_p(&IntPoly::from_i64(&[1, -2, -1, 1]), 13, 0).unwrap();
        assert_eq!(h.degrees(), vec![(1, 1), (1, 1), (1, 1)]);
        assert!(factor_mod_p(&IntPoly::from_i64(&[1, 1]), 9, 0).is_err());
    }

    #[test]
    fn powers_of_p() {
        let f = IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]);
        for p in [2, 3, 5] {
            let fac = factor_mod_p(&f, p, 7).unwrap();
            assert_eq!(prod(&fac), reduce(&f, p));
        }
    }

    #[test]
    fn roots_match_brute_force() {
        let f = IntPoly::from_i64(&[-6, 11, -6, 1]);
        assert_eq!(roots(&reduce(&f, 101), 101), vec![1, 2, 3]);
    }
}
