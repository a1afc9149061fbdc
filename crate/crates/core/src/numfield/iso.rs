//! Isomorphism certification: look for a root of one defining polynomial in
//! the other field via p-adic lifting and exact verification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::numeric::complex_roots;
use super::NumberField;
use crate::exactmath::fp::{self, reduce};
use crate::exactmath::integer::{is_prime_u64, primes_up_to};
use crate::exactmath::{poly_discriminant, IntPoly};

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn hensel(f: &IntPoly, r0: u64, p: u64, modulus: &BigInt) -> BigInt {
    let df = f.derivative();
    let mut r = BigInt::from(r0);
    let mut pk = BigInt::from(p);
    while &pk < modulus {
        pk = &pk * &pk;
        let inv = modinv(&df.eval(&r), &pk).expect("simple root");
        r = (&r - f.eval(&r) * inv).mod_floor(&pk);
    }
    r.mod_floor(modulus)
}

/// Lagrange basis coefficients: row i holds the coefficients of the
/// polynomial that is 1 at r_i and 0 at the other roots.
fn lagrange_mod(r: &[BigInt], m: &BigInt) -> Vec<Vec<BigInt>> {
    let n = r.len();
    (0..n)
        .map(|i| {
            let mut poly = vec![BigInt::one()];
            let mut den = BigInt::one();
            for k in 0..n {
                if k == i {
                    continue;
                }
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (j, c) in poly.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] -= c * &r[k];
                }
                poly = next.into_iter().map(|c| c.mod_floor(m)).collect();
                den = (den * (&r[i] - &r[k])).mod_floor(m);
            }
            let inv = modinv(&den, m).expect("roots distinct mod p");
            poly.into_iter().map(|c| (c * &inv).mod_floor(m)).collect()
        })
        .collect()
}

/// Bound on |coefficients| of any root of g written over the power basis of f.
fn coefficient_bound(f: &IntPoly, g: &IntPoly) -> f64 {
    use num_complex::Complex64;
    let z = complex_roots(f);
    let w = complex_roots(g);
    let wmax = w.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let n = z.len();
    let mut colsum = vec![0.0f64; n];
    for i in 0..n {
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        let mut den = Complex64::new(1.0, 0.0);
        for k in 0..n {
            if k == i {
                continue;
            }
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * z[k];
            }
            poly = next;
            den *= z[i] - z[k];
        }
        for (j, c) in poly.iter().enumerate() {
            colsum[j] += (c / den).norm();
        }
    }
    colsum.into_iter().fold(0.0, f64::max) * wmax
}

/// Σ g_k A^k D^{n-k} mod f, i.e. D^n·g(A(θ)/D).
fn scaled_eval(g: &IntPoly, a: &IntPoly, d: &BigInt, f: &IntPoly) -> IntPoly {
    let n = g.degree();
    let mut h = IntPoly::constant(g.coeff(n));
    let mut dk = BigInt::one();
    for k in (0..n).rev() {
        dk *= d;
        h = (&(&h * a) + &IntPoly::constant(g.coeff(k) * &dk)).rem_monic(f);
    }
    h
}

/// A root of g in K as (A, D) with g(A(θ)/D) = 0, if one exists.
pub fn find_root_in(k: &NumberField, g: &IntPoly) -> Option<(IntPoly, BigInt)> {
    let f = k.poly();
    let n = f.degree();
    let m = g.degree();
    if m == 0 || n % m != 0 || !g.is_monic() {
        return None;
    }
    let df = k.poly_disc().clone();
    let dg = poly_discriminant(g).ok()?;
    if dg.is_zero() {
        return None;
    }
    let d = k.order().denom().clone();
    let bad = &df * &dg;
    let p = (3u64..1 << 20)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| !(&bad % BigInt::from(p)).is_zero() && fp::roots(&reduce(f, p), p).len() == n)?;
    let rf = fp::roots(&reduce(f, p), p);
    let rg = fp::roots(&reduce(g, p), p);
    if rg.is_empty() {
        return None;
    }
    let bound = coefficient_bound(f, g) * d.to_f64().unwrap_or(f64::INFINITY);
    let target = BigInt::from_f64((bound * 8.0 + 64.0).ceil())?;
    let mut modulus = BigInt::from(p);
    while modulus < target {
        modulus *= p;
    }
    let theta: Vec<BigInt> = rf.iter().map(|&r| hensel(f, r, p, &modulus)).collect();
    let beta: Vec<BigInt> = rg.iter().map(|&r| hensel(g, r, p, &modulus)).collect();
    let lag = lagrange_mod(&theta, &modulus);
    let half = &modulus / 2;
    let limit = BigInt::from_f64((bound + 2.0).ceil())?;
    // each embedding of K sends a root of g to some β; try every assignment
    let mut assign = vec![0usize; n];
    loop {
        let mut coeffs = Vec::with_capacity(n);
        // when g has full degree its root generates K, so its conjugates are distinct
        let mut ok = m < n || (0..n).all(|i| (0..i).all(|j| assign[i] != assign[j]));
        for j in 0..n {
            if !ok {
                break;
            }
            let mut c = BigInt::zero();
            for i in 0..n {
                c += &beta[assign[i]] * &lag[i][j];
            }
            let mut c = (c * &d).mod_floor(&modulus);
            if c > half {
                c -= &modulus;
            }
            if c.abs() > limit {
                ok = false;
                break;
            }
            coeffs.push(c);
        }
        if ok {
            let a = IntPoly::new(coeffs);
            if scaled_eval(g, &a, &d, f).is_zero() {
                return Some((a, d));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            assign[i] += 1;
            if assign[i] < beta.len() {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// Decides whether two fields are isomorphic.
pub fn is_isomorphic(k1: &NumberField, k2: &NumberField) -> bool {
    if k1.degree() != k2.degree() || k1.disc() != k2.disc() || k1.signature() != k2.signature() {
        return false;
    }
    if k1.poly() == k2.poly() {
        return true;
    }
    let bad = k1.poly_disc() * k2.poly_disc();
    for p in primes_up_to(200) {
        if (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        if super::splitting::from_factorization(k1.poly(), p) != super::splitting::from_factorization(k2.poly(), p) {
            return false;
        }
    }
    find_root_in(k1, k2.poly()).is_some()
}
