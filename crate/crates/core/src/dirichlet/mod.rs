//! Dirichlet series for quartic fields with a given cubic resolvent: the
//! closed Euler-product form and the character-sum form.

mod charsum;
mod series;
mod tables;

use num_bigint::BigInt;

pub use charsum::{contributing_ideals, two_adic_sum, z_k, Family, TwoIdeal};
pub use series::{euler_product, read_series_jsonl, write_series, DirichletCoeffs, EulerFactor, SeriesFormat, TwoAdicFactor, UPoly};
pub use tables::{m1_factor, m2_factor, omega_l, CubicShape, M2};

use crate::error::{Error, Result};
use crate::exactmath::integer::primes_up_to;
use crate::exactmath::Rational;
use crate::numfield::{is_cyclic_cubic, is_isomorphic, NumberField};
use crate::resolvent::{relative_splitting, QuarticRecord};

/// a(k) = 3 for cyclic k, else 1.
pub fn a_of_k(k: &NumberField) -> u32 {
    if is_cyclic_cubic(k) {
        3
    } else {
        1
    }
}

fn check_list(k: &NumberField, l2: &[QuarticRecord], signed: bool) -> Result<()> {
    if k.degree() != 3 {
        return Err(Error::InvalidInput("k must be a cubic field".into()));
    }
    if signed && !k.is_totally_real() {
        return Err(Error::InvalidInput("the signed series needs a totally real k".into()));
    }
    for r in l2 {
        let n2 = r.n2.ok_or_else(|| Error::InvalidInput(format!("{} has f = {} outside L2", r.l.poly(), r.f)))?;
        if !is_isomorphic(&r.k, k) {
            return Err(Error::InvalidInput(format!("resolvent of {} is not {}", r.l.poly(), k.poly())));
        }
        if n2 == 64 && !r.two_tr {
            return Err(Error::InvalidInput(format!("{} has n^2 = 64 without 2 totally ramified", r.l.poly())));
        }
        if !signed && k.is_totally_real() && !r.totally_real {
            return Err(Error::InvalidInput(format!("{} is not totally real", r.l.poly())));
        }
    }
    Ok(())
}

fn overall(k: &NumberField, signed: bool) -> Rational {
    let den = if signed { 4 } else { 1i64 << k.signature().1 };
    Rational::new(BigInt::from(1), BigInt::from(den))
}

/// two(u) · ∏_{p ≠ 2, p ≤ X} (1 + c_p p^{-s}).
fn assemble(two: &UPoly, odd: impl Fn(u64) -> Result<i64>, bound: usize) -> Result<DirichletCoeffs> {
    let mut d = DirichletCoeffs::one(bound);
    d.mul_local(2, two);
    for p in primes_up_to(bound as u64).into_iter().skip(1) {
        let c = odd(p)?;
        if c != 0 {
            d.mul_local(p, &UPoly::from_ints(&[1, c]));
        }
    }
    Ok(d)
}

/// Φ_k (or Φ_k⁺ when `signed`) from the Euler-product formula, truncated at X.
/// `l2` must be L₂(k), or L₂*(k) when signed.
pub fn phi_k(k: &NumberField, l2: &[QuarticRecord], bound: usize, signed: bool) -> Result<DirichletCoeffs> {
    check_list(k, l2, signed)?;
    let a = a_of_k(k);
    let k2 = k.splitting_type(2);
    let main_two = m1_factor(&k2)?.scale(&Rational::new(BigInt::from(1), BigInt::from(a)));
    let mut total = assemble(&main_two, |p| CubicShape::of(&k.splitting_type(p)).map(|s| s.main_coeff()), bound)?;
    for r in l2 {
        let m2 = m2_factor(&k2, &r.l.splitting_type(2), r.n2.expect("checked"))?;
        total = total.add(&assemble(&m2, |p| Ok(omega_l(&r.l.splitting_type(p))), bound)?);
    }
    Ok(total.scale(&overall(k, signed)))
}

/// A secondary field together with its sextic K₆.
#[derive(Clone, Debug)]
pub struct CharsumField {
    pub record: QuarticRecord,
    pub k6: Option<NumberField>,
}

impl CharsumField {
    pub fn new(record: QuarticRecord) -> Result<Self> {
        let k6 = record.k6()?;
        Ok(CharsumField { record, k6: Some(k6) })
    }
}

/// K₆ values at the primes of k above p, in the p₁, p₂, p₃ labelling.
fn chi_values(k: &NumberField, k6: &NumberField, p: u64) -> Result<(CubicShape, Vec<i64>)> {
    let ks = k.splitting_type(p);
    let shape = CubicShape::of(&ks)?;
    let rel = relative_splitting(&ks, &k6.splitting_type(p))?;
    Ok((shape, shape.parts_index().into_iter().map(|i| rel[i].chi()).collect()))
}

/// The 2-adic part contributed by one secondary field.
pub fn charsum_two_adic(k: &NumberField, field: &CharsumField) -> Result<UPoly> {
    let k6 = field.k6.as_ref().ok_or_else(|| Error::InvalidInput("missing K6 data".into()))?;
    let n2 = field.record.n2.ok_or_else(|| Error::InvalidInput("field outside L2".into()))?;
    let family = Family::from_n2(n2)?;
    let (shape, mut chi) = chi_values(k, k6, 2)?;
    if shape == CubicShape::Split && family == Family::L16 {
        // the distinguished prime is the one unramified in K₆
        let i = chi.iter().position(|&c| c != 0).ok_or_else(|| Error::Internal("no unramified prime above 2".into()))?;
        chi.swap(0, i);
    }
    two_adic_sum(shape, &chi, &contributing_ideals(shape, family)?)
}

/// Φ_k (or Φ_k⁺) from the character-sum formula, with characters realized by
/// the splitting of primes of k in each K₆.
pub fn phi_k_charsum(k: &NumberField, fields: &[CharsumField], bound: usize, signed: bool) -> Result<DirichletCoeffs> {
    let records: Vec<QuarticRecord> = fields.iter().map(|f| f.record.clone()).collect();
    check_list(k, &records, signed)?;
    let a = a_of_k(k);
    let shape = CubicShape::of(&k.splitting_type(2))?;
    let ones = vec![1; shape.primes().len()];
    let triv = two_adic_sum(shape, &ones, &TwoIdeal::all(shape))?.scale(&Rational::new(BigInt::from(1), BigInt::from(a)));
    let mut total = assemble(&triv, |p| CubicShape::of(&k.splitting_type(p)).map(|s| s.main_coeff()), bound)?;
    for f in fields {
        let two = charsum_two_adic(k, f)?;
        let k6 = f.k6.as_ref().expect("checked in charsum_two_adic");
        let odd = |p: u64| -> Result<i64> {
            let (shape, chi) = chi_values(k, k6, p)?;
            Ok(shape.chi_terms().into_iter().map(|(_, v)| chi[v]).sum())
        };
        total = total.add(&assemble(&two, odd, bound)?);
    }
    Ok(total.scale(&overall(k, signed)))
}
