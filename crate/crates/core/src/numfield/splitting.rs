use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{factor_mod_p, IntPoly};

/// Refinement of a cubic (1²1) at 2 by Disc mod 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Decoration {
    Zero,
    Four,
}

/// Multiset of (e, f) pairs, kept sorted by residue degree then ramification
/// index, both descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    parts: Vec<(u32, u32)>,
    decoration: Option<Decoration>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<(u32, u32)>) -> Self {
        parts.sort_by(|a, b| (b.1, b.0).cmp(&(a.1, a.0)));
        SplittingType { parts, decoration: None }
    }

    pub fn with_decoration(mut self, d: Decoration) -> Self {
        self.decoration = Some(d);
        self
    }

    pub fn undecorated(&self) -> Self {
        SplittingType { parts: self.parts.clone(), decoration: None }
    }

    /// (e, f) pairs.
    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    pub fn decoration(&self) -> Option<Decoration> {
        self.decoration
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().map(|(e, f)| e * f).sum()
    }

    pub fn num_primes(&self) -> usize {
        self.parts.len()
    }

    pub fn residue_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.parts.iter().map(|p| p.1).collect();
        v.sort_unstable();
        v
    }

    pub fn is_unramified(&self) -> bool {
        self.parts.iter().all(|p| p.0 == 1)
    }

    pub fn is_totally_ramified(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].1 == 1 && self.parts[0].0 == self.degree()
    }

    /// Parses "1^21", "(1^2 1)_4", "2 1 1", "(1111)". Residue degrees and
    /// exponents are single digits.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad splitting type {s:?}"));
        let (body, dec) = match s.trim().rsplit_once('_') {
            Some((b, "0")) => (b, Some(Decoration::Zero)),
            Some((b, "4")) => (b, Some(Decoration::Four)),
            Some(_) => return Err(bad()),
            None => (s.trim(), None),
        };
        let chars: Vec<char> = body.chars().filter(|c| !matches!(c, ' ' | '(' | ')')).collect();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let f = chars[i].to_digit(10).filter(|&d| d > 0).ok_or_else(bad)?;
            i += 1;
            let mut e = 1;
            if i < chars.len() && chars[i] == '^' {
                e = chars.get(i + 1).and_then(|c| c.to_digit(10)).filter(|&d| d > 0).ok_or_else(bad)?;
                i += 2;
            }
            parts.push((e, f));
        }
        if parts.is_empty() {
            return Err(bad());
        }
        let mut st = SplittingType::new(parts);
        st.decoration = dec;
        Ok(st)
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for &(e, fd) in &self.parts {
            if e == 1 {
                write!(f, "{fd}")?;
            } else {
                write!(f, "{fd}^{e}")?;
            }
        }
        write!(f, ")")?;
        match self.decoration {
            Some(Decoration::Zero) => write!(f, "_0"),
            Some(Decoration::Four) => write!(f, "_4"),
            None => Ok(()),
        }
    }
}

impl Serialize for SplittingType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SplittingType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SplittingType::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Splitting read off the factorization of f mod p (valid when p does not
/// divide the index).
pub fn from_factorization(f: &IntPoly, p: u64) -> SplittingType {
    let fac = factor_mod_p(f, p, 0).expect("monic polynomial and small prime");
    SplittingType::new(fac.degrees().into_iter().map(|(d, m)| (m, d as u32)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["(1^21)_0", "(21^2)", "(1111)", "(2^2)", "(1^4)", "(1^21^2)", "(31)", "(3)"] {
            assert_eq!(SplittingType::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(SplittingType::parse("1 1^2").unwrap().to_string(), "(1^21)");
        assert!(SplittingType::parse("x").is_err());
        assert!(SplittingType::parse("").is_err());
        assert_eq!(SplittingType::parse("1^4").unwrap().degree(), 4);
    }
}
