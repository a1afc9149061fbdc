//! 2-ranks of the class group and narrow class group of a cubic field from a
//! harvested relation matrix.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::local::{prime_ideals, PrimeIdeal};
use super::numeric::real_roots;
use super::NumberField;
use crate::error::{Error, Result};
use crate::exactmath::integer::{primes_up_to, valuation};
use crate::exactmath::linalg::{rank_mod, rank_q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassStatus {
    CertifiedAtDeskScale,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub rk2: usize,
    pub rk2_plus: usize,
    pub unit_sig_rank: usize,
    pub status: ClassStatus,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassBudget {
    /// Ceiling on |Disc(k)|.
    pub max_disc: u64,
    /// Ceiling on the number of elements examined.
    pub max_elements: usize,
}

impl Default for ClassBudget {
    fn default() -> Self {
        ClassBudget { max_disc: 10_000_000, max_elements: 400_000 }
    }
}

struct Relation {
    val: Vec<u32>,
    signs: Vec<u64>,
}

fn minkowski_bound(k: &NumberField) -> f64 {
    let n = k.degree() as f64;
    let (_, r2) = k.signature();
    let fact: f64 = (1..=k.degree()).map(|i| i as f64).product();
    fact / n.powf(n) * (4.0 / std::f64::consts::PI).powi(r2 as i32) * k.disc().abs().to_f64().unwrap().sqrt()
}

pub fn class_data(k: &NumberField, budget: ClassBudget) -> Result<ClassData> {
    if k.degree() != 3 {
        return Err(Error::InvalidInput("class_data needs a cubic field".into()));
    }
    if k.disc().abs() > BigInt::from(budget.max_disc) {
        return Err(Error::Unsupported(format!("|Disc| {} above ceiling {}", k.disc(), budget.max_disc)));
    }
    let order = k.order();
    let (r1, _) = k.signature();
    let fb_bound = minkowski_bound(k).max(30.0).ceil() as u64;
    let mut fb: Vec<PrimeIdeal> = Vec::new();
    let mut by_p: HashMap<u64, Vec<usize>> = HashMap::new();
    for p in primes_up_to(fb_bound) {
        for pi in prime_ideals(order, p) {
            by_p.entry(p).or_default().push(fb.len());
            fb.push(pi);
        }
    }
    let nfb = fb.len();
    let roots = real_roots(k.poly(), r1);

    let mut rels: Vec<Relation> = Vec::new();
    let mut seen: HashMap<Vec<u32>, Vec<u64>> = HashMap::new();
    let mut unit_signs: Vec<Vec<u64>> = vec![vec![1; r1]];
    let mut examined = 0usize;
    let mut history: Vec<(usize, usize, usize)> = Vec::new();
    let mut status = ClassStatus::BudgetExceeded;

    for radius in 1i64.. {
        let side = 2 * radius + 1;
        for idx in 0..side.pow(3) {
            let c = [idx % side - radius, (idx / side) % side - radius, idx / (side * side) - radius];
            // only the new shell
            if c.iter().all(|x| x.abs() < radius) {
                continue;
            }
            examined += 1;
            let x: Vec<BigInt> = c.iter().map(|&v| BigInt::from(v)).collect();
            let norm = order.norm(&x);
            if norm.is_zero() {
                continue;
            }
            let mut rest = norm.abs();
            let mut val = vec![0u32; nfb];
            for (&p, ids) in &by_p {
                let e = valuation(&rest, p);
                if e == 0 {
                    continue;
                }
                rest /= BigInt::from(p).pow(e);
                if ids.len() == 1 {
                    val[ids[0]] = e / fb[ids[0]].f;
                } else {
                    for &i in ids {
                        val[i] = fb[i].valuation(order, &x);
                    }
                }
            }
            if rest != BigInt::from(1) {
                continue;
            }
            let signs: Vec<u64> = roots.iter().map(|&r| u64::from(order.eval_f64(&x, r) < 0.0)).collect();
            if let Some(prev) = seen.get(&val) {
                unit_signs.push(prev.iter().zip(&signs).map(|(a, b)| a ^ b).collect());
            } else {
                seen.insert(val.clone(), signs.clone());
            }
            rels.push(Relation { val, signs });
        }
        if examined > budget.max_elements {
            break;
        }
        let vmod: Vec<Vec<u64>> = rels.iter().map(|r| r.val.iter().map(|&v| u64::from(v % 2)).collect()).collect();
        let mut vs: Vec<Vec<u64>> = rels
            .iter()
            .map(|r| r.val.iter().map(|&v| u64::from(v % 2)).chain(r.signs.iter().copied()).collect())
            .collect();
        vs.push(std::iter::repeat(0).take(nfb).chain(std::iter::repeat(1).take(r1)).collect());
        let rank_v = if vmod.is_empty() { 0 } else { rank_mod(&vmod, 2) };
        let rank_vs = rank_mod(&vs, 2);
        let usr = if r1 == 0 { 0 } else { rank_mod(&unit_signs, 2) };
        let state = (nfb - rank_v, nfb + r1 - rank_vs, usr);
        history.push(state);
        let full = rels.len() >= nfb && {
            let vz: Vec<Vec<BigInt>> = rels.iter().map(|r| r.val.iter().map(|&v| BigInt::from(v)).collect()).collect();
            rank_q(&vz) == nfb
        };
        let n = history.len();
        if full && n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3] && radius >= 4 {
            status = ClassStatus::CertifiedAtDeskScale;
            break;
        }
    }
    let (rk2, rk2_plus, unit_sig_rank) = *history.last().unwrap_or(&(nfb, nfb + r1, 0));
    Ok(ClassData { rk2, rk2_plus, unit_sig_rank, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::IntPoly;
    use crate::numfield::make_field;

    fn cd(c: &[i64]) -> ClassData {
        class_data(&make_field(&IntPoly::from_i64(c)).unwrap(), ClassBudget::default()).unwrap()
    }

    #[test]
    fn small_cubics() {
        let d49 = cd(&[1, -2, -1, 1]);
        assert_eq!((d49.rk2, d49.rk2_plus), (0, 0));
        assert_eq!(d49.status, ClassStatus::CertifiedAtDeskScale);
        let d148 = cd(&[1, -3, -1, 1]);
        assert_eq!((d148.rk2, d148.rk2_plus), (0, 0));
        let d229 = cd(&[-1, -4, 0, 1]);
        assert_eq!((d229.rk2, d229.rk2_plus), (0, 1));
    }
}
