//! Character-sum evaluation over the ideals c | 2Z_k.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::series::UPoly;
use super::tables::CubicShape;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::numfield::Decoration;

/// Ideal c | 2Z_k given by exponents on p₁, p₂, p₃ (labelled as in [`CubicShape::primes`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoIdeal {
    pub shape: CubicShape,
    pub exps: Vec<u32>,
}

impl TwoIdeal {
    pub fn new(shape: CubicShape, exps: Vec<u32>) -> Result<Self> {
        let pr = shape.primes();
        if exps.len() != pr.len() || exps.iter().zip(&pr).any(|(x, (e, _))| x > e) {
            return Err(Error::InvalidInput(format!("{exps:?} does not divide 2 for {}", shape.label())));
        }
        Ok(TwoIdeal { shape, exps })
    }

    pub fn unit(shape: CubicShape) -> Self {
        TwoIdeal { exps: vec![0; shape.primes().len()], shape }
    }

    pub fn two(shape: CubicShape) -> Self {
        TwoIdeal { exps: shape.primes().iter().map(|p| p.0).collect(), shape }
    }

    /// All divisors of 2Z_k.
    pub fn all(shape: CubicShape) -> Vec<TwoIdeal> {
        let mut out = vec![vec![]];
        for (e, _) in shape.primes() {
            out = out.into_iter().flat_map(|v: Vec<u32>| (0..=e).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out.into_iter().map(|exps| TwoIdeal { shape, exps }).collect()
    }

    /// log₂ of the absolute norm.
    pub fn norm_log(&self) -> u32 {
        self.exps.iter().zip(self.shape.primes()).map(|(x, (_, f))| x * f).sum()
    }

    pub fn divides(&self, o: &TwoIdeal) -> bool {
        self.shape == o.shape && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime_to(&self, primes: &[usize]) -> bool {
        primes.iter().all(|&i| self.exps[i] == 0)
    }
}

impl std::fmt::Display for TwoIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if *self == TwoIdeal::two(self.shape) {
            return write!(f, "(2)");
        }
        let mut any = false;
        for (i, &x) in self.exps.iter().enumerate() {
            if x == 0 {
                continue;
            }
            any = true;
            write!(f, "p{}", i + 1)?;
            if x > 1 {
                write!(f, "^{x}")?;
            }
        }
        if !any {
            write!(f, "(1)")?;
        }
        Ok(())
    }
}

/// z_k(c) ∈ {1, 2}; the (1²1) decoration must be present.
pub fn z_k(c: &TwoIdeal) -> Result<u32> {
    if *c == TwoIdeal::two(c.shape) {
        return Ok(2);
    }
    let z = match (c.shape, c.exps.as_slice()) {
        (CubicShape::Ramified(None), _) => {
            return Err(Error::InvalidInput("z_k for (1^21) needs the Disc mod 8 decoration".into()))
        }
        (CubicShape::Ramified(_), [1, 1]) => 2,
        (CubicShape::Ramified(Some(Decoration::Four)), [0, 1]) => 2,
        (CubicShape::Total, [2]) => 2,
        _ => 1,
    };
    Ok(z)
}

/// Families of secondary fields, by n².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// n² = 1
    Unramified,
    /// n² = 4
    L4,
    /// n² = 16
    L16,
    /// n² = 64 with 2 totally ramified in L
    Tr64,
}

impl Family {
    pub fn from_n2(n2: u32) -> Result<Self> {
        match n2 {
            1 => Ok(Family::Unramified),
            4 => Ok(Family::L4),
            16 => Ok(Family::L16),
            64 => Ok(Family::Tr64),
            _ => Err(Error::InvalidInput(format!("n^2 = {n2} is not 1, 4, 16 or 64"))),
        }
    }
}

/// The ideals c at which the characters of a field in `family` exist.
/// For (111) and L(k,16), p₁ is the distinguished prime.
pub fn contributing_ideals(shape: CubicShape, family: Family) -> Result<Vec<TwoIdeal>> {
    use CubicShape::*;
    let d = |e: &[u32]| TwoIdeal::new(shape, e.to_vec());
    let list: Vec<&[u32]> = match (family, shape) {
        (Family::Unramified, _) => return Ok(TwoIdeal::all(shape)),
        (Family::L4, Ramified(Some(Decoration::Zero))) => vec![&[1, 0], &[0, 1], &[2, 0], &[1, 1], &[2, 1]],
        (Family::L4, Ramified(Some(Decoration::Four))) => vec![&[1, 0], &[2, 0], &[1, 1], &[2, 1]],
        (Family::L4, Total) => vec![&[1], &[2], &[3]],
        (Family::L16, Partial) => vec![&[1, 0], &[0, 1], &[1, 1]],
        (Family::L16, Split) => vec![&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]],
        (Family::L16, Ramified(Some(Decoration::Four))) => vec![&[2, 0], &[2, 1]],
        (Family::Tr64, Inert) => vec![&[1]],
        (Family::Tr64, Partial) => vec![&[0, 1], &[1, 1]],
        (Family::Tr64, Ramified(Some(Decoration::Zero))) => vec![&[2, 0], &[2, 1]],
        (Family::Tr64, Total) => vec![&[3]],
        _ => {
            return Err(Error::InvalidInput(format!("no contributing ideals for {} and {family:?}", shape.label())))
        }
    };
    list.into_iter().map(d).collect()
}

/// 4·Σ_c z_k(c) N(c)^{-1} u^{3−v(c)} ∏_{p|c}(1 − u^{f_p}) F₂(χ, c), over the given c.
///
/// `chi[i]` is the K₆ value (±1, or 0 if ramified) at p_i, or all ones for the
/// trivial character.
pub fn two_adic_sum(shape: CubicShape, chi: &[i64], ideals: &[TwoIdeal]) -> Result<UPoly> {
    let primes = shape.primes();
    let mut total = UPoly::default();
    for c in ideals {
        let v = c.norm_log();
        let mut term = UPoly::one().shift(3 - v as usize);
        for (i, &x) in c.exps.iter().enumerate() {
            if x > 0 {
                let mut f = vec![0i64; primes[i].1 as usize + 1];
                f[0] = 1;
                f[primes[i].1 as usize] = -1;
                term = term.mul(&UPoly::from_ints(&f));
            }
        }
        let mut lin = 0i64;
        for (needs, val) in shape.chi_terms() {
            if c.is_coprime_to(&needs) {
                lin += chi[val];
            }
        }
        term = term.mul(&UPoly::from_ints(&[1, lin]));
        let k = Rational::new(BigInt::from(4 * z_k(c)? as i64), BigInt::from(1i64 << v));
        total = total.add(&term.scale(&k));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::tables::{m1_factor, m2_factor};
    use crate::numfield::SplittingType;

    #[test]
    fn z_examples() {
        for s in CubicShape::AT_TWO {
            assert_eq!(z_k(&TwoIdeal::two(s)).unwrap(), 2);
            assert_eq!(z_k(&TwoIdeal::unit(s)).unwrap(), 1);
        }
        let four = CubicShape::Ramified(Some(Decoration::Four));
        assert_eq!(z_k(&TwoIdeal::new(four, vec![0, 1]).unwrap()).unwrap(), 2);
        let zero = CubicShape::Ramified(Some(Decoration::Zero));
        assert_eq!(z_k(&TwoIdeal::new(zero, vec![0, 1]).unwrap()).unwrap(), 1);
        assert!(z_k(&TwoIdeal::unit(CubicShape::Ramified(None))).is_err());
    }

    #[test]
    fn trivial_character_gives_m1() {
        for s in CubicShape::AT_TWO {
            let ones = vec![1; s.primes().len()];
            let got = two_adic_sum(s, &ones, &TwoIdeal::all(s)).unwrap();
            let st = SplittingType::parse(s.label()).unwrap();
            assert_eq!(got, m1_factor(&st).unwrap(), "{}", s.label());
        }
    }

    #[test]
    fn unramified_characters_give_m2_rows() {
        // (21): p₁ inert or split in K₆ gives L = (4) or (211)
        let s = CubicShape::Partial;
        let k = SplittingType::parse("21").unwrap();
        let all = TwoIdeal::all(s);
        let l4 = SplittingType::parse("4").unwrap();
        let l211 = SplittingType::parse("211").unwrap();
        assert_eq!(two_adic_sum(s, &[-1, -1], &all).unwrap(), m2_factor(&k, &l4, 1).unwrap());
        assert_eq!(two_adic_sum(s, &[1, 1], &all).unwrap(), m2_factor(&k, &l211, 1).unwrap());
    }
}
