use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Res(f, g) as the Sylvester determinant.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let m = f.degree();
    let n = g.degree();
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        return f.lc().pow(n as u32);
    }
    if n == 0 {
        return g.lc().pow(m as u32);
    }
    let size = m + n;
    let mut s = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            s[i][i + j] = f.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            s[n + i][i + j] = g.coeff(n - j);
        }
    }
    det_bareiss(s)
}

/// (-1)^{n(n-1)/2} Res(f, f') / lc(f).
pub fn poly_discriminant(f: &IntPoly) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::InvalidInput("discriminant of the zero polynomial".into()));
    }
    let n = f.degree();
    if n == 0 {
        return Err(Error::InvalidInput("discriminant of a constant".into()));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative()) / f.lc();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = |c: &[i64]| IntPoly::from_i64(c);
        assert_eq!(poly_discriminant(&p(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        assert_eq!(poly_discriminant(&p(&[1, -2, -1, 1])).unwrap(), BigInt::from(49));
        assert_eq!(poly_discriminant(&p(&[-1, 4, 0, 1])).unwrap(), BigInt::from(-283));
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[1, 0, 1])), BigInt::from(5));
        assert!(poly_discriminant(&IntPoly::zero()).is_err());
    }
}
