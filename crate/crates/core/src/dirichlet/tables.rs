//! The 2-adic Euler factors M₁ and M₂,L and the splitting indicator ω_L.

use serde::{Deserialize, Serialize};

use super::series::UPoly;
use crate::error::{Error, Result};
use crate::numfield::{Decoration, SplittingType};

/// Splitting shape of a prime in a cubic field, decorated at 2 for (1²1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CubicShape {
    Inert,
    /// (21)
    Partial,
    /// (111)
    Split,
    /// (1²1), with the Disc mod 8 decoration at 2
    Ramified(Option<Decoration>),
    /// (1³)
    Total,
}

impl CubicShape {
    pub fn of(st: &SplittingType) -> Result<Self> {
        let s = match st.undecorated().to_string().as_str() {
            "(3)" => CubicShape::Inert,
            "(21)" => CubicShape::Partial,
            "(111)" => CubicShape::Split,
            "(1^21)" => CubicShape::Ramified(st.decoration()),
            "(1^3)" => CubicShape::Total,
            _ => return Err(Error::InvalidInput(format!("{st} is not a cubic splitting type"))),
        };
        Ok(s)
    }

    /// (e, f) of p₁, p₂, p₃ in the usual labelling: for (21) p₁ has degree 1,
    /// for (1²1) p₁ is the ramified prime.
    pub fn primes(self) -> Vec<(u32, u32)> {
        match self {
            CubicShape::Inert => vec![(1, 3)],
            CubicShape::Partial => vec![(1, 1), (1, 2)],
            CubicShape::Split => vec![(1, 1); 3],
            CubicShape::Ramified(_) => vec![(2, 1), (1, 1)],
            CubicShape::Total => vec![(3, 1)],
        }
    }

    /// Terms of the local factor of F_k: each is (primes of the ideal whose
    /// character value appears, index of the prime whose K₆ behaviour gives it).
    pub fn chi_terms(self) -> Vec<(Vec<usize>, usize)> {
        match self {
            CubicShape::Partial => vec![(vec![1], 0)],
            CubicShape::Ramified(_) => vec![(vec![0, 1], 0)],
            CubicShape::Split => vec![(vec![0, 1], 2), (vec![0, 2], 1), (vec![1, 2], 0)],
            CubicShape::Inert | CubicShape::Total => vec![],
        }
    }

    /// Coefficient c in the main-term factor 1 + c/p^s for p ≠ 2.
    pub fn main_coeff(self) -> i64 {
        self.chi_terms().len() as i64
    }

    /// Position in `SplittingType::parts()` of each labelled prime.
    pub fn parts_index(self) -> Vec<usize> {
        match self {
            CubicShape::Partial => vec![1, 0],
            CubicShape::Split => vec![0, 1, 2],
            CubicShape::Ramified(_) => vec![0, 1],
            CubicShape::Inert | CubicShape::Total => vec![0],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CubicShape::Inert => "(3)",
            CubicShape::Partial => "(21)",
            CubicShape::Split => "(111)",
            CubicShape::Ramified(Some(Decoration::Zero)) => "(1^21)_0",
            CubicShape::Ramified(Some(Decoration::Four)) => "(1^21)_4",
            CubicShape::Ramified(None) => "(1^21)",
            CubicShape::Total => "(1^3)",
        }
    }

    pub const AT_TWO: [CubicShape; 6] = [
        CubicShape::Inert,
        CubicShape::Partial,
        CubicShape::Split,
        CubicShape::Ramified(Some(Decoration::Zero)),
        CubicShape::Ramified(Some(Decoration::Four)),
        CubicShape::Total,
    ];
}

const M1: [(&str, [i64; 5]); 6] = [
    ("(3)", [1, 0, 0, 3, 0]),
    ("(21)", [1, 0, 1, 4, 2]),
    ("(111)", [1, 0, 3, 6, 6]),
    ("(1^21)_0", [1, 1, 0, 2, 4]),
    ("(1^21)_4", [1, 1, 2, 0, 4]),
    ("(1^3)", [1, 1, 0, 2, 0]),
];

/// (k-split at 2, L-split at 2, n², M₂,L coefficients in u).
pub const M2: [(&str, &str, u32, [i64; 5]); 23] = [
    ("(3)", "(31)", 1, [1, 0, 0, 3, 0]),
    ("(3)", "(1^4)", 64, [1, 0, 0, -1, 0]),
    ("(21)", "(4)", 1, [1, 0, 1, 0, -2]),
    ("(21)", "(211)", 1, [1, 0, 1, 4, 2]),
    ("(21)", "(2^2)", 16, [1, 0, 1, -4, 2]),
    ("(21)", "(1^21^2)", 16, [1, 0, 1, 0, -2]),
    ("(21)", "(1^4)", 64, [1, 0, -1, 0, 0]),
    ("(111)", "(22)", 1, [1, 0, 3, -2, -2]),
    ("(111)", "(2^2)", 16, [1, 0, -1, -2, 2]),
    ("(111)", "(1111)", 1, [1, 0, 3, 6, 6]),
    ("(111)", "(1^21^2)", 16, [1, 0, -1, 2, -2]),
    ("(1^21)_0", "(21^2)", 1, [1, 1, 0, 2, -4]),
    ("(1^21)_0", "(1^211)", 1, [1, 1, 0, 2, 4]),
    ("(1^21)_0", "(1^21^2)", 4, [1, 1, 0, -2, 0]),
    ("(1^21)_0", "(1^4)", 64, [1, -1, 0, 0, 0]),
    ("(1^21)_4", "(21^2)", 1, [1, 1, 2, 0, -4]),
    ("(1^21)_4", "(1^211)", 1, [1, 1, 2, 0, 4]),
    ("(1^21)_4", "(2^2)", 4, [1, 1, -2, 0, 0]),
    ("(1^21)_4", "(2^2)", 16, [1, -1, 0, 0, 0]),
    ("(1^21)_4", "(1^21^2)", 16, [1, -1, 0, 0, 0]),
    ("(1^3)", "(1^31)", 1, [1, 1, 0, 2, 0]),
    ("(1^3)", "(1^4)", 4, [1, 1, 0, -2, 0]),
    ("(1^3)", "(1^4)", 64, [1, -1, 0, 0, 0]),
];

fn shape_at_two(k_split: &SplittingType) -> Result<CubicShape> {
    let shape = CubicShape::of(k_split)?;
    if shape == CubicShape::Ramified(None) {
        return Err(Error::InvalidInput("(1^21) at 2 needs its Disc mod 8 decoration".into()));
    }
    Ok(shape)
}

pub fn m1_factor(k_split: &SplittingType) -> Result<UPoly> {
    let label = shape_at_two(k_split)?.label();
    let row = M1.iter().find(|r| r.0 == label).expect("every cubic shape has a row");
    Ok(UPoly::from_ints(&row.1))
}

pub fn m2_factor(k_split: &SplittingType, l_split: &SplittingType, n2: u32) -> Result<UPoly> {
    let label = shape_at_two(k_split)?.label();
    let l = l_split.undecorated().to_string();
    M2.iter()
        .find(|r| r.0 == label && r.1 == l && r.2 == n2)
        .map(|r| UPoly::from_ints(&r.3))
        .ok_or_else(|| Error::InvalidCombination(format!("no M2 row for k {label}, L {l}, n^2 = {n2}")))
}

/// ω_L(p) from the splitting of p in L.
pub fn omega_l(l_split: &SplittingType) -> i64 {
    match l_split.undecorated().to_string().as_str() {
        "(4)" | "(22)" | "(21^2)" => -1,
        "(211)" | "(1^211)" => 1,
        "(1111)" => 3,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn st(s: &str) -> SplittingType {
        SplittingType::parse(s).unwrap()
    }

    #[test]
    fn m1_rows() {
        assert_eq!(m1_factor(&st("3")).unwrap().at_s1() * rat(8, 1), rat(11, 1));
        assert_eq!(m1_factor(&st("111")).unwrap(), UPoly::from_ints(&[1, 0, 3, 6, 6]));
        assert_eq!(m1_factor(&st("1^21_4")).unwrap().at_s1() * rat(8, 1), rat(18, 1));
        assert!(m1_factor(&st("1^21")).is_err());
        assert!(m1_factor(&st("1111")).is_err());
    }

    #[test]
    fn m2_rows() {
        assert_eq!(m2_factor(&st("21"), &st("1^4"), 64).unwrap(), UPoly::from_ints(&[1, 0, -1]));
        assert_eq!(m2_factor(&st("111"), &st("1111"), 1).unwrap(), UPoly::from_ints(&[1, 0, 3, 6, 6]));
        assert_eq!(m2_factor(&st("1^21_4"), &st("2^2"), 4).unwrap(), UPoly::from_ints(&[1, 1, -2]));
        assert!(matches!(m2_factor(&st("111"), &st("1^4"), 64), Err(Error::InvalidCombination(_))));
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega_l(&st("1111")), 3);
        assert_eq!(omega_l(&st("31")), 0);
        assert_eq!(omega_l(&st("211")), 1);
        assert_eq!(omega_l(&st("21^2")), -1);
    }
}
