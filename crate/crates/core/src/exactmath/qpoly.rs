//! Polynomials with rational coefficients; only what Sturm sequences need.

use num_traits::{Signed, Zero};

use super::{IntPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct QPoly(pub Vec<Rational>);

impl QPoly {
    pub fn from_int(f: &IntPoly) -> Self {
        QPoly(f.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn derivative(&self) -> Self {
        QPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
        .trimmed()
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        let mut r = self.0.clone();
        let dn = d.degree();
        let lc = d.0.last().unwrap().clone();
        while r.len() > dn && !r.is_empty() {
            let top = r.last().unwrap().clone() / &lc;
            let off = r.len() - 1 - dn;
            for (i, c) in d.0.iter().enumerate() {
                r[off + i] -= &top * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        QPoly(r).trimmed()
    }

    pub fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Sign of the polynomial as x → +∞ (pos = true) or −∞.
    fn sign_at_infinity(&self, pos: bool) -> i32 {
        let lc = self.0.last().unwrap();
        let s = if lc.is_positive() { 1 } else { -1 };
        if pos || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

/// Number of distinct real roots of a squarefree polynomial, by Sturm's theorem.
pub fn count_real_roots(f: &IntPoly) -> usize {
    let p0 = QPoly::from_int(f);
    if p0.degree() == 0 {
        return 0;
    }
    let mut seq = vec![p0.clone(), p0.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    let changes = |pos: bool| {
        let signs: Vec<i32> = seq.iter().map(|p| p.sign_at_infinity(pos)).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(false) - changes(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm() {
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[1, -2, -1, 1])), 3);
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[-1, 4, 0, 1])), 1);
        assert_eq!(count_real_roots(&IntPoly::from_i64(&[38, -4, -14, 0, 1])), 4);
    }
}
