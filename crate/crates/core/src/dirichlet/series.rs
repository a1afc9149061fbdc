//! Truncated Dirichlet series with exact rational coefficients.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{fmt_rational, parse_rational, Rational};

/// Polynomial in u = 2^{-s} (or t = p^{-s}), constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(pub Vec<Rational>);

/// 2-adic Euler factor.
pub type TwoAdicFactor = UPoly;

impl UPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        UPoly(c.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()).trimmed()
    }

    pub fn one() -> Self {
        UPoly::from_ints(&[1])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()).trimmed()
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return UPoly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly(out).trimmed()
    }

    pub fn scale(&self, k: &Rational) -> UPoly {
        UPoly(self.0.iter().map(|c| c * k).collect()).trimmed()
    }

    /// u^k times self.
    pub fn shift(&self, k: usize) -> UPoly {
        let mut v = vec![Rational::zero(); k];
        v.extend(self.0.iter().cloned());
        UPoly(v).trimmed()
    }

    /// Value at s = 1, i.e. u = 1/2.
    pub fn at_s1(&self) -> Rational {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * &half + c;
        }
        acc
    }
}

impl std::fmt::Display for UPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = fmt_rational(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "u")?,
                (1, m) => write!(f, "{m}u")?,
                (_, "1") => write!(f, "u^{i}")?,
                (_, m) => write!(f, "{m}u^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Local factor at p as a polynomial in t = p^{-s} with constant term 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFactor {
    pub p: u64,
    poly: UPoly,
}

impl EulerFactor {
    pub fn new(p: u64, poly: UPoly) -> Result<Self> {
        if !poly.coeff(0).is_one() {
            return Err(Error::InvalidInput(format!("Euler factor at {p} has constant term {}", fmt_rational(&poly.coeff(0)))));
        }
        Ok(EulerFactor { p, poly })
    }

    /// 1 + c·p^{-s}.
    pub fn linear(p: u64, c: i64) -> Self {
        EulerFactor { p, poly: UPoly::from_ints(&[1, c]) }
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }
}

/// Coefficients a(1..=X) of Σ a(n) n^{-s}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCoeffs {
    bound: usize,
    c: Vec<Rational>,
}

impl DirichletCoeffs {
    pub fn zero(bound: usize) -> Self {
        DirichletCoeffs { bound, c: vec![Rational::zero(); bound + 1] }
    }

    /// The series 1.
    pub fn one(bound: usize) -> Self {
        let mut d = Self::zero(bound);
        if bound >= 1 {
            d.c[1] = Rational::one();
        }
        d
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, n: usize) -> Rational {
        self.c.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, n: usize, v: Rational) {
        if n >= 1 && n <= self.bound {
            self.c[n] = v;
        }
    }

    /// (n, a(n)) for 1 ≤ n ≤ X.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.c.iter().enumerate().skip(1)
    }

    pub fn add(&self, o: &DirichletCoeffs) -> DirichletCoeffs {
        let bound = self.bound.min(o.bound);
        DirichletCoeffs { bound, c: (0..=bound).map(|n| self.get(n) + o.get(n)).collect() }
    }

    pub fn scale(&self, k: &Rational) -> DirichletCoeffs {
        DirichletCoeffs { bound: self.bound, c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Truncated Dirichlet convolution.
    pub fn mul(&self, o: &DirichletCoeffs) -> DirichletCoeffs {
        let bound = self.bound.min(o.bound);
        let mut out = Self::zero(bound);
        for a in 1..=bound {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 1..=bound / a {
                if !o.c[b].is_zero() {
                    out.c[a * b] += &self.c[a] * &o.c[b];
                }
            }
        }
        out
    }

    /// Multiply in place by a series supported on powers of p.
    pub fn mul_local(&mut self, p: u64, poly: &UPoly) {
        let c0 = poly.coeff(0);
        if !c0.is_one() {
            if c0.is_zero() {
                let p = p as usize;
                let mut out = Self::zero(self.bound);
                for n in 1..=self.bound {
                    let (mut m, mut j) = (n, 0);
                    while m % p == 0 {
                        m /= p;
                        j += 1;
                        let a = poly.coeff(j);
                        if !a.is_zero() && !self.c[m].is_zero() {
                            out.c[n] += &a * &self.c[m];
                        }
                    }
                }
                *self = out;
                return;
            }
            for x in self.c.iter_mut() {
                *x *= &c0;
            }
            self.mul_local(p, &poly.scale(&(Rational::one() / c0)));
            return;
        }
        let p = p as usize;
        if p > self.bound {
            return;
        }
        let mut n = self.bound / p * p;
        while n >= p {
            // descending order reads only untouched smaller indices
            let mut acc = self.c[n].clone();
            let mut m = n;
            let mut j = 0;
            while m % p == 0 {
                m /= p;
                j += 1;
                let a = poly.coeff(j);
                if !a.is_zero() && !self.c[m].is_zero() {
                    acc += &a * &self.c[m];
                }
            }
            self.c[n] = acc;
            n -= p;
        }
    }
}

/// Truncated product of local factors.
pub fn euler_product(factors: &BTreeMap<u64, EulerFactor>, bound: usize) -> DirichletCoeffs {
    let mut d = DirichletCoeffs::one(bound);
    for (p, f) in factors {
        d.mul_local(*p, f.poly());
    }
    d
}

#[derive(Serialize, Deserialize)]
struct Line {
    n: usize,
    coeff: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesFormat {
    Jsonl,
    Csv,
}

/// One line per coefficient; zero coefficients are kept so output is dense.
pub fn write_series<W: Write + ?Sized>(d: &DirichletCoeffs, fmt: SeriesFormat, w: &mut W) -> std::io::Result<()> {
    if fmt == SeriesFormat::Csv {
        writeln!(w, "n,coeff")?;
    }
    for (n, c) in d.iter() {
        match fmt {
            SeriesFormat::Jsonl => {
                let line = serde_json::to_string(&Line { n, coeff: fmt_rational(c) }).expect("serializable");
                writeln!(w, "{line}")?;
            }
            SeriesFormat::Csv => writeln!(w, "{n},{}", fmt_rational(c))?,
        }
    }
    Ok(())
}

/// Parses JSON lines written by [`write_series`].
pub fn read_series_jsonl(text: &str) -> Result<DirichletCoeffs> {
    let mut entries = Vec::new();
    for l in text.lines().filter(|l| !l.trim().is_empty()) {
        let line: Line = serde_json::from_str(l).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let v = parse_rational(&line.coeff).ok_or_else(|| Error::InvalidInput(line.coeff.clone()))?;
        entries.push((line.n, v));
    }
    let bound = entries.iter().map(|e| e.0).max().unwrap_or(0);
    let mut d = DirichletCoeffs::zero(bound);
    for (n, v) in entries {
        d.set(n, v);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn products() {
        let one = euler_product(&BTreeMap::new(), 10);
        assert_eq!(one.get(1), rat(1, 1));
        assert!((2..=10).all(|n| one.get(n).is_zero()));
        let mut m = BTreeMap::new();
        m.insert(7, EulerFactor::linear(7, 3));
        let d = euler_product(&m, 60);
        assert_eq!(d.get(7), rat(3, 1));
        assert_eq!(d.get(49), rat(0, 1));
        let mut m = BTreeMap::new();
        for p in [13u64, 29] {
            m.insert(p, EulerFactor::linear(p, 3));
        }
        let d = euler_product(&m, 30);
        assert_eq!(d.get(13), rat(3, 1));
        assert_eq!(d.get(26), rat(0, 1));
        assert_eq!(d.get(29), rat(3, 1));
    }

    #[test]
    fn mul_local_matches_convolution() {
        let mut a = DirichletCoeffs::zero(100);
        for n in 1..=100 {
            a.set(n, rat((n % 7) as i64 - 3, 1 + (n % 3) as i64));
        }
        let poly = UPoly::from_ints(&[1, -2, 5]);
        let mut b = DirichletCoeffs::zero(100);
        b.set(1, rat(1, 1));
        b.set(3, rat(-2, 1));
        b.set(9, rat(5, 1));
        let want = a.mul(&b);
        let mut got = a.clone();
        got.mul_local(3, &poly);
        assert_eq!(got, want);
    }

    #[test]
    fn jsonl_round_trip() {
        let mut d = DirichletCoeffs::zero(5);
        d.set(1, rat(1, 3));
        d.set(4, rat(-2, 1));
        let mut buf = Vec::new();
        write_series(&d, SeriesFormat::Jsonl, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("{\"n\":1,\"coeff\":\"1/3\"}"));
        assert_eq!(read_series_jsonl(&text).unwrap(), d);
    }
}
