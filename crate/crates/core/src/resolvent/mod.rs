//! Quartic fields versus pairs (cubic resolvent, quadratic extension K₆ of it).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::integer::{exact_sqrt, primes_up_to};
use crate::exactmath::{poly_discriminant, IntPoly};
use crate::numfield::{
    galois_type_quartic, is_irreducible, make_field, resolvent_cubic_formula, GaloisType, NumberField,
    SplittingType,
};

/// Resolvent cubic x³ − a₂x² + (a₁a₃ − 4a₀)x + 4a₀a₂ − a₁² − a₀a₃² of a monic quartic.
pub fn resolvent_cubic(q: &IntPoly) -> Result<IntPoly> {
    if q.degree() != 4 || !q.is_monic() {
        return Err(Error::InvalidInput(format!("{q} is not a monic quartic")));
    }
    let r = resolvent_cubic_formula(q);
    if poly_discriminant(&r)? != poly_discriminant(q)? {
        return Err(Error::Internal(format!("resolvent of {q} changed the discriminant")));
    }
    Ok(r)
}

/// Characteristic polynomial x³ + a₂x² + a₁x + a₀ of an element α of a cubic field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCharPoly(pub IntPoly);

impl AlphaCharPoly {
    pub fn new(p: IntPoly) -> Result<Self> {
        if p.degree() != 3 || !p.is_monic() {
            return Err(Error::InvalidInput(format!("{p} is not a monic cubic")));
        }
        Ok(AlphaCharPoly(p))
    }

    /// N(α) = −a₀.
    pub fn norm(&self) -> BigInt {
        -self.0.coeff(0)
    }

    pub fn has_square_norm(&self) -> bool {
        exact_sqrt(&self.norm()).is_some()
    }
}

/// x⁴ + 2a₂x² − 8√(−a₀)x + a₂² − 4a₁, using the positive root.
pub fn quartic_from_alpha(p: &AlphaCharPoly) -> Result<IntPoly> {
    let c = &p.0;
    let s = exact_sqrt(&p.norm())
        .filter(|s| !s.is_zero())
        .ok_or_else(|| Error::TrivialNorm(format!("norm of {c} is not a nonzero square")))?;
    if !is_irreducible(c) {
        return Err(Error::InvalidInput(format!("{c} is reducible")));
    }
    let a2 = c.coeff(2);
    let a1 = c.coeff(1);
    let q = IntPoly::new(vec![
        &a2 * &a2 - BigInt::from(4) * &a1,
        BigInt::from(-8) * s,
        BigInt::from(2) * &a2,
        BigInt::zero(),
        BigInt::one(),
    ]);
    if poly_discriminant(&q)? != BigInt::from(4096) * poly_discriminant(c)? {
        return Err(Error::Internal(format!("discriminant identity failed for {c}")));
    }
    Ok(q)
}

/// P(x²), a defining polynomial of K₆ = k(√α).
pub fn sextic_from_alpha(p: &AlphaCharPoly) -> Result<IntPoly> {
    let c = &p.0;
    if !is_irreducible(c) {
        return Err(Error::InvalidInput(format!("{c} is reducible")));
    }
    if p.norm().is_zero() || !p.has_square_norm() {
        return Err(Error::TrivialNorm(format!("norm of {c} is not a nonzero square")));
    }
    let s = c.compose_square();
    if !is_irreducible(&s) {
        return Err(Error::InvalidInput(format!("α is a square in k for {c}")));
    }
    Ok(s)
}

/// 256·L((y − a₃)/4), a depressed monic quartic y⁴ + py² + qy + r.
fn depress(l: &IntPoly) -> IntPoly {
    l.scale_roots(&BigInt::from(4)).shift(&(-l.coeff(3)))
}

/// Defining polynomial of K₆ from a quartic, with no α needed: if the
/// quartic's roots sum to zero, (α₁+α₂)² runs over the roots of
/// y³ + 2py² + (p² − 4r)y − q², so K₆ = Q(α₁+α₂) is cut out by its value at x².
pub fn sextic_from_quartic(l: &IntPoly) -> Result<IntPoly> {
    if l.degree() != 4 || !l.is_monic() {
        return Err(Error::InvalidInput(format!("{l} is not a monic quartic")));
    }
    let d = depress(l);
    debug_assert!(d.coeff(3).is_zero());
    let (p, q, r) = (d.coeff(2), d.coeff(1), d.coeff(0));
    let cubic = IntPoly::new(vec![-(&q * &q), &p * &p - BigInt::from(4) * r, BigInt::from(2) * p, BigInt::one()]);
    Ok(cubic.compose_square())
}

/// Behaviour of a prime of k in the quadratic extension K₆/k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relative {
    Split,
    Inert,
    Ramified,
}

impl Relative {
    pub fn chi(self) -> i64 {
        match self {
            Relative::Split => 1,
            Relative::Inert => -1,
            Relative::Ramified => 0,
        }
    }
}

/// For each prime of k above p (listed as in `k_split.parts()`), its behaviour
/// in K₆, deduced by matching (e, f) multisets.
pub fn relative_splitting(k_split: &SplittingType, k6_split: &SplittingType) -> Result<Vec<Relative>> {
    let parts = k_split.parts();
    let mut target: Vec<(u32, u32)> = k6_split.parts().to_vec();
    target.sort();
    let mut found: Option<Vec<Relative>> = None;
    let g = parts.len();
    for code in 0..3usize.pow(g as u32) {
        let mut c = code;
        let mut rel = Vec::with_capacity(g);
        let mut img = Vec::new();
        for &(e, f) in parts {
            let r = match c % 3 {
                0 => {
                    img.push((e, f));
                    img.push((e, f));
                    Relative::Split
                }
                1 => {
                    img.push((e, 2 * f));
                    Relative::Inert
                }
                _ => {
                    img.push((2 * e, f));
                    Relative::Ramified
                }
            };
            c /= 3;
            rel.push(r);
        }
        img.sort();
        if img == target {
            match &found {
                None => found = Some(rel),
                Some(prev) => {
                    // equal-type primes may be permuted; anything else is ambiguous
                    let key = |r: &[Relative]| {
                        let mut v: Vec<_> = parts.iter().copied().zip(r.iter().copied()).collect();
                        v.sort();
                        v
                    };
                    if key(prev) != key(&rel) {
                        return Err(Error::Internal(format!("ambiguous relative splitting {k_split} in {k6_split}")));
                    }
                }
            }
        }
    }
    found.ok_or_else(|| Error::Internal(format!("{k6_split} is not a quadratic extension of {k_split}")))
}

/// A quartic field bundled with its cubic resolvent.
#[derive(Clone, Debug)]
pub struct QuarticRecord {
    pub l: NumberField,
    pub k: NumberField,
    pub f: BigInt,
    pub n2: Option<u32>,
    pub galois: GaloisType,
    pub totally_real: bool,
    pub two_tr: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticRecordJson {
    #[serde(rename = "L_poly")]
    pub l_poly: IntPoly,
    pub k_poly: IntPoly,
    pub f: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n2: Option<u32>,
    pub galois: GaloisType,
    pub totally_real: bool,
    pub two_tr: bool,
}

pub fn make_quartic_record(l: &NumberField) -> Result<QuarticRecord> {
    let galois = galois_type_quartic(l)?;
    if !matches!(galois, GaloisType::A4 | GaloisType::S4) {
        return Err(Error::OutOfFamily(format!("{} has Galois group {galois}", l.poly())));
    }
    let k = make_field(&resolvent_cubic(l.poly())?)?;
    make_quartic_record_with(l, k, galois)
}

/// Same as [`make_quartic_record`] with a known resolvent field.
pub fn make_quartic_record_with(l: &NumberField, k: NumberField, galois: GaloisType) -> Result<QuarticRecord> {
    let (q, r) = l.disc().div_rem(k.disc());
    let f = (r.is_zero() && q.is_positive())
        .then(|| exact_sqrt(&q))
        .flatten()
        .ok_or_else(|| Error::Internal(format!("Disc(L)/Disc(k) = {}/{} is not a square", l.disc(), k.disc())))?;
    let n2 = f.to_u32().map(|x| x * x).filter(|x| [1, 4, 16, 64].contains(x));
    let two_tr = l.splitting_type(2) == SplittingType::parse("1^4").unwrap();
    Ok(QuarticRecord { totally_real: l.is_totally_real(), l: l.clone(), k, f, n2, galois, two_tr })
}

impl QuarticRecord {
    pub fn to_json(&self) -> QuarticRecordJson {
        QuarticRecordJson {
            l_poly: self.l.poly().clone(),
            k_poly: self.k.poly().clone(),
            f: self.f.to_string(),
            n2: self.n2,
            galois: self.galois,
            totally_real: self.totally_real,
            two_tr: self.two_tr,
        }
    }

    /// The sextic field K₆ attached to L.
    pub fn k6(&self) -> Result<NumberField> {
        make_field(&sextic_from_quartic(self.l.poly())?)
    }
}

/// χ data of K₆/k at a prime p: the splitting of p in k and each prime's behaviour.
#[derive(Clone, Debug)]
pub struct RelativeData {
    pub k_split: SplittingType,
    pub rel: Vec<Relative>,
}

/// Relative splitting of K₆/k at every prime below `bound`.
pub fn relative_table(k: &NumberField, k6: &NumberField, bound: u64) -> Result<Vec<(u64, RelativeData)>> {
    primes_up_to(bound)
        .into_iter()
        .map(|p| {
            let ks = k.splitting_type(p);
            let rel = relative_splitting(&ks, &k6.splitting_type(p))?;
            Ok((p, RelativeData { k_split: ks, rel }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::is_isomorphic;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn resolvent_examples() {
        assert_eq!(resolvent_cubic(&p(&[-1, -1, 0, 0, 1])).unwrap(), p(&[-1, 4, 0, 1]));
        assert_eq!(resolvent_cubic(&p(&[1, 0, 0, 0, 1])).unwrap(), p(&[0, -4, 0, 1]));
        assert!(resolvent_cubic(&p(&[1, 0, 0, 0, 2])).is_err());
    }

    #[test]
    fn alpha_examples() {
        let a = AlphaCharPoly::new(p(&[-81, 179, -35, 1])).unwrap();
        let q = quartic_from_alpha(&a).unwrap();
        assert_eq!(q, p(&[509, -72, -70, 0, 1]));
        let l1 = make_field(&q).unwrap();
        let l2 = make_field(&p(&[2, 1, -4, -1, 1])).unwrap();
        assert!(is_isomorphic(&l1, &l2));
        assert_eq!(sextic_from_alpha(&a).unwrap(), p(&[-81, 0, 179, 0, -35, 0, 1]));
        let bad = AlphaCharPoly::new(p(&[-1, 0, 0, 1])).unwrap();
        assert!(quartic_from_alpha(&bad).is_err());
        let nonsq = AlphaCharPoly::new(p(&[-2, 0, 0, 1])).unwrap();
        assert!(matches!(quartic_from_alpha(&nonsq), Err(Error::TrivialNorm(_))));
    }

    #[test]
    fn sextic_from_quartic_matches_alpha() {
        // row (21)|(42)|(4): both constructions give the same sextic field
        let a = AlphaCharPoly::new(p(&[-1, 12, -8, 1])).unwrap();
        let s1 = make_field(&sextic_from_alpha(&a).unwrap()).unwrap();
        let s2 = make_field(&sextic_from_quartic(&p(&[1, -1, -4, 0, 1])).unwrap()).unwrap();
        assert!(is_isomorphic(&s1, &s2));
    }

    #[test]
    fn record_229() {
        let l = make_field(&p(&[2, 4, -4, -2, 1])).unwrap();
        let r = make_quartic_record(&l).unwrap();
        assert_eq!(r.k.disc(), &BigInt::from(229));
        assert_eq!(r.f, BigInt::from(8));
        assert_eq!(r.n2, Some(64));
        assert!(r.two_tr);
    }

    #[test]
    fn relative_cases() {
        let st = |s: &str| SplittingType::parse(s).unwrap();
        assert_eq!(relative_splitting(&st("21"), &st("42")).unwrap(), vec![Relative::Inert, Relative::Inert]);
        assert_eq!(relative_splitting(&st("21"), &st("2211")).unwrap(), vec![Relative::Split, Relative::Split]);
        assert_eq!(relative_splitting(&st("3"), &st("3^2")).unwrap(), vec![Relative::Ramified]);
        let r = relative_splitting(&st("111"), &st("1^21^211")).unwrap();
        let mut s = r.clone();
        s.sort();
        assert_eq!(s, vec![Relative::Split, Relative::Ramified, Relative::Ramified]);
        assert!(relative_splitting(&st("3"), &st("1111")).is_err());
    }
}
