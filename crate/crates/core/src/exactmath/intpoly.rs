use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense univariate polynomial over the integers, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Coefficients as i64 if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content and primitive part, with the primitive part having positive leading coefficient.
    pub fn content_primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), IntPoly::zero());
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        let p = Self::new(self.coeffs.iter().map(|x| x / &c).collect());
        (c, p)
    }

    pub fn primitive_part(&self) -> IntPoly {
        self.content_primitive().1
    }

    /// f(x^2).
    pub fn compose_square(&self) -> Self {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        Self::new(out)
    }

    /// f(-x).
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// f(x + t).
    pub fn shift(&self, t: &BigInt) -> Self {
        let mut out = IntPoly::zero();
        let lin = IntPoly::new(vec![t.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &IntPoly::constant(c.clone());
        }
        out
    }

    /// a^n f(x / a) for n = deg f; integral, same roots scaled by a.
    pub fn scale_roots(&self, a: &BigInt) -> Self {
        let n = self.degree();
        let mut pw = BigInt::one();
        let mut out = vec![BigInt::zero(); self.coeffs.len()];
        for i in (0..=n).rev() {
            out[i] = &self.coeffs[i] * &pw;
            pw *= a;
        }
        Self::new(out)
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &IntPoly) -> IntPoly {
        debug_assert!(m.is_monic());
        let n = m.degree();
        let mut r = self.coeffs.clone();
        while r.len() > n {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let off = r.len() - n;
            for (i, mc) in m.coeffs[..n].iter().enumerate() {
                r[off + i] -= &top * mc;
            }
        }
        IntPoly::new(r)
    }

    /// Exact division; None if `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return if self.is_zero() { Some(IntPoly::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let top = &r[k + dn];
            let (qq, rr) = top.div_rem(&lc);
            if !rr.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qq * dc;
            }
            q[k] = qq;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    /// Human-readable form such as `x^3 - x^2 - 2*x + 1` without the `*`.
    pub fn to_human(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if i == 0 || !a.is_one() {
                s.push_str(&a.to_string());
            }
            match i {
                0 => {}
                1 => s.push('x'),
                _ => s.push_str(&format!("x^{i}")),
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_human())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.to_human())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| s.trim().parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(IntPoly::new(coeffs))
    }
}

/// Parses either a JSON array of decimal strings (constant term first) or
/// human syntax like `x^3-x^2-2x+1`. Only `c*x^k`, `cx^k`, `x^k`, `cx`, `c`
/// terms are accepted.
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: serde_json::Value =
            serde_json::from_str(t).map_err(|e| Error::InvalidInput(format!("bad JSON polynomial: {e}")))?;
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("JSON polynomial must be an array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for item in arr {
            let txt = match item {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                _ => return Err(Error::InvalidInput(format!("bad coefficient {item}"))),
            };
            coeffs.push(
                txt.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidInput(format!("bad coefficient {txt:?}")))?,
            );
        }
        return Ok(IntPoly::new(coeffs));
    }
    parse_human(t)
}

fn parse_human(s: &str) -> Result<IntPoly> {
    let bad = |msg: &str| Error::InvalidInput(format!("cannot parse polynomial {s:?}: {msg}"));
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < chars.len() {
        let mut sign = BigInt::one();
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !first {
            return Err(bad("expected + or -"));
        }
        first = false;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let has_num = i > start;
        let num: BigInt = if has_num {
            chars[start..i].iter().collect::<String>().parse().unwrap()
        } else {
            BigInt::one()
        };
        let mut exp = 0usize;
        let mut has_x = false;
        if i < chars.len() && chars[i] == '*' {
            if !has_num {
                return Err(bad("dangling *"));
            }
            i += 1;
            if i >= chars.len() || chars[i] != 'x' {
                return Err(bad("expected x after *"));
            }
        }
        if i < chars.len() && chars[i] == 'x' {
            has_x = true;
            i += 1;
            exp = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let es = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(bad("missing exponent"));
                }
                exp = chars[es..i].iter().collect::<String>().parse().map_err(|_| bad("exponent"))?;
                if exp > 64 {
                    return Err(bad("exponent too large"));
                }
            }
        }
        if !has_num && !has_x {
            return Err(bad("empty term"));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += sign * num;
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let p = parse_poly("x^3-x^2-2x+1").unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, -2, -1, 1]));
        let q = parse_poly(r#"["1","-2","-1","1"]"#).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_poly("2*x^2 + 3").unwrap(), IntPoly::from_i64(&[3, 0, 2]));
        assert_eq!(parse_poly("-x").unwrap(), IntPoly::from_i64(&[0, -1]));
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("3x2").is_err());
        assert!(parse_poly("x x").is_err());
    }

    #[test]
    fn roundtrip_display() {
        let p = IntPoly::from_i64(&[38, -4, -14, 0, 1]);
        assert_eq!(p.to_human(), "x^4 - 14x^2 - 4x + 38");
        assert_eq!(parse_poly(&p.to_human()).unwrap(), p);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"["38","-4","-14","0","1"]"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn div_and_shift() {
        let a = IntPoly::from_i64(&[-1, 1]);
        let b = IntPoly::from_i64(&[1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(IntPoly::from_i64(&[1, 0, 1]).div_exact(&a), None);
        assert_eq!(a.shift(&BigInt::from(1)), IntPoly::from_i64(&[0, 1]));
        let f = IntPoly::from_i64(&[1, 2, 3]);
        assert_eq!(f.rem_monic(&IntPoly::from_i64(&[1, 0, 1])), IntPoly::from_i64(&[-2, 2]));
    }
}
