//! Decomposition of O/pO for a p-maximal order: primitive idempotents,
//! ramification indices, residue degrees, and p-adic valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::order::{ModAlgebra, Order};
use crate::exactmath::fp::{self, invm, mulm};
use crate::exactmath::linalg::{left_kernel_mod, rank_mod};

#[derive(Clone, Debug)]
pub struct LocalPrime {
    pub e: u32,
    pub f: u32,
    /// Primitive idempotent of O/pO cutting out this prime.
    pub idempotent: Vec<u64>,
}

fn sub_scalar(x: &[u64], a: u64, p: u64) -> Vec<u64> {
    let mut v = x.to_vec();
    v[0] = (v[0] + p - a % p) % p;
    v
}

fn scale(x: &[u64], a: u64, p: u64) -> Vec<u64> {
    x.iter().map(|&v| mulm(v, a, p)).collect()
}

/// Minimal polynomial (monic, constant term first) of x in the algebra.
fn min_poly(alg: &ModAlgebra, x: &[u64]) -> Vec<u64> {
    let p = alg.p;
    let mut powers = vec![alg.one()];
    loop {
        let next = alg.mul(powers.last().unwrap(), x);
        powers.push(next);
        if rank_mod(&powers, p) < powers.len() {
            let ker = left_kernel_mod(&powers, p);
            let rel = &ker[0];
            let lead = *rel.last().unwrap();
            debug_assert!(lead != 0);
            let inv = invm(lead, p);
            return rel.iter().map(|&c| mulm(c, inv, p)).collect();
        }
    }
}

pub fn decompose(order: &Order, p: u64) -> Vec<LocalPrime> {
    let n = order.degree();
    let tp = order.table_mod(p);
    let alg = ModAlgebra { n, p, table: &tp };
    let fr = alg.frobenius();
    let shifted: Vec<Vec<u64>> = fr
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r[i] = (r[i] + p - 1) % p;
            r
        })
        .collect();
    let fixed = left_kernel_mod(&shifted, p);
    let rad = alg.radical();

    let mut idems = vec![alg.one()];
    for c in &fixed {
        let mp = min_poly(&alg, c);
        let rts = fp::roots(&fp::trim(mp), p);
        if rts.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for e in &idems {
            for &a in &rts {
                let mut t = e.clone();
                for &b in &rts {
                    if b == a {
                        continue;
                    }
                    let factor = scale(&sub_scalar(c, b, p), invm((a + p - b) % p, p), p);
                    t = alg.mul(&t, &factor);
                }
                if t.iter().any(|&v| v != 0) {
                    next.push(t);
                }
            }
        }
        idems = next;
    }

    let mut out = Vec::new();
    for eps in idems {
        let span: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut u = vec![0u64; n];
                u[i] = 1;
                alg.mul(&eps, &u)
            })
            .collect();
        let dim_a = rank_mod(&span, p);
        let jrows: Vec<Vec<u64>> = rad.iter().map(|j| alg.mul(&eps, j)).collect();
        let dim_j = if jrows.is_empty() { 0 } else { rank_mod(&jrows, p) };
        let f = dim_a - dim_j;
        out.push(LocalPrime { e: (dim_a / f) as u32, f: f as u32, idempotent: eps });
    }
    out
}

/// A prime ideal above p with an element b ∈ pP⁻¹ \ pO used to compute valuations.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub p: u64,
    pub e: u32,
    pub f: u32,
    anti: Vec<BigInt>,
}

impl PrimeIdeal {
    pub fn norm_log(&self) -> u32 {
        self.f
    }

    /// v_P(x) for nonzero x in the (p-maximal) order.
    pub fn valuation(&self, order: &Order, x: &[BigInt]) -> u32 {
        let bp = BigInt::from(self.p);
        let mut cur = x.to_vec();
        let mut v = 0;
        loop {
            let t = order.mul(&cur, &self.anti);
            if t.iter().all(|c| c.is_multiple_of(&bp)) {
                cur = t.into_iter().map(|c| c / &bp).collect();
                v += 1;
                if v > 4096 {
                    panic!("runaway valuation");
                }
            } else {
                return v;
            }
        }
    }
}

/// Prime ideals above p, for an order that is p-maximal.
pub fn prime_ideals(order: &Order, p: u64) -> Vec<PrimeIdeal> {
    let n = order.degree();
    let tp = order.table_mod(p);
    let alg = ModAlgebra { n, p, table: &tp };
    let rad = alg.radical();
    let locals = decompose(order, p);
    let mut out = Vec::new();
    for lp in &locals {
        let eps = &lp.idempotent;
        let one_minus: Vec<u64> = alg.one().iter().zip(eps.iter()).map(|(a, b)| (a + p - b) % p).collect();
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for i in 0..n {
            let mut u = vec![0u64; n];
            u[i] = 1;
            gens.push(alg.mul(&one_minus, &u));
        }
        for j in &rad {
            gens.push(alg.mul(eps, j));
        }
        gens.retain(|g| g.iter().any(|&v| v != 0));
        // annihilator of the ideal P/pO
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut u = vec![0u64; n];
                u[i] = 1;
                gens.iter().flat_map(|g| alg.mul(&u, g)).collect()
            })
            .collect();
        let ann = if gens.is_empty() {
            (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
        } else {
            left_kernel_mod(&rows, p)
        };
        let b = ann.into_iter().find(|v| v.iter().any(|&x| x != 0)).expect("annihilator is nonzero");
        out.push(PrimeIdeal {
            p,
            e: lp.e,
            f: lp.f,
            anti: b.into_iter().map(BigInt::from).collect(),
        });
    }
    out
}

/// Residue of an order element modulo p as a vector over F_p.
pub fn reduce_elem(x: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    x.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect()
}

pub fn is_zero_mod(x: &[BigInt], p: u64) -> bool {
    let bp = BigInt::from(p);
    x.iter().all(|c| (c % &bp).is_zero())
}
