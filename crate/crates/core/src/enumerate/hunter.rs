//! Coefficient boxes for monic cubics and quartics from power-sum bounds.
//!
//! A field of degree n and |disc| ≤ X has an integral generator whose
//! characteristic polynomial x^n + a₁x^{n-1} + … has 0 ≤ a₁ ≤ n/2 and
//! T₂ ≤ a₁²/n + γ_{n-1}(X/n)^{1/(n-1)}. Newton's identities turn bounds on the
//! power sums s_k into intervals for each a_k in turn.

const EPS: f64 = 1e-7;

fn lo(v: f64) -> i64 {
    (v - EPS * (1.0 + v.abs())).ceil() as i64
}

fn hi(v: f64) -> i64 {
    (v + EPS * (1.0 + v.abs())).floor() as i64
}

pub fn disc_cubic(a: &[i64]) -> i128 {
    let (b, c, d) = (a[0] as i128, a[1] as i128, a[2] as i128);
    b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d
}

pub fn disc_quartic(a: &[i64]) -> i128 {
    let (b, c, d, e) = (a[0] as i128, a[1] as i128, a[2] as i128, a[3] as i128);
    256 * e * e * e - 192 * b * d * e * e - 128 * c * c * e * e + 144 * c * d * d * e - 27 * d * d * d * d
        + 144 * b * b * c * e * e
        - 6 * b * b * d * d * e
        - 80 * b * c * c * d * e
        + 18 * b * c * d * d * d
        + 16 * c * c * c * c * e
        - 4 * c * c * c * d * d
        - 27 * b * b * b * b * e * e
        + 18 * b * b * b * c * d * e
        - 4 * b * b * b * d * d * d
        - 4 * b * b * c * c * c * e
        + b * b * c * c * d * d
}

#[derive(Clone, Copy, Debug)]
pub struct HunterBox {
    pub degree: usize,
    /// Bound on |Disc| of the fields sought.
    pub x: f64,
    pub totally_real: bool,
}

impl HunterBox {
    fn t2(&self, a1: i64) -> f64 {
        let n = self.degree as f64;
        let gamma = match self.degree {
            3 => (4.0f64 / 3.0).sqrt(),
            _ => 2f64.powf(1.0 / 3.0),
        };
        (a1 * a1) as f64 / n + gamma * (self.x / n).powf(1.0 / (n - 1.0))
    }

    /// All (a₁, a₂) prefixes; the unit of parallel work.
    pub fn prefixes(&self) -> Vec<(i64, i64)> {
        let n = self.degree as f64;
        let mut out = Vec::new();
        for a1 in 0..=(self.degree as i64 / 2) {
            let t = self.t2(a1);
            let sq = (a1 * a1) as f64;
            let s2_min = if self.totally_real { sq / n } else { -t };
            for a2 in lo((sq - t) / 2.0)..=hi((sq - s2_min) / 2.0) {
                out.push((a1, a2));
            }
        }
        out
    }

    /// Calls `visit` on every coefficient vector [a₁, …, a_n] under the prefix.
    /// Returns the number of vectors visited.
    pub fn scan(&self, (a1, a2): (i64, i64), mut visit: impl FnMut(&[i64])) -> u64 {
        let n = self.degree;
        let s1 = -a1;
        let s2 = a1 * a1 - 2 * a2;
        let tb = if self.totally_real { s2 as f64 } else { self.t2(a1) };
        if tb < 0.0 {
            return 0;
        }
        let s3max = tb.powf(1.5);
        let c3 = (a1 * s2 + a2 * s1) as f64;
        let mut a3lo = lo((-s3max - c3) / 3.0);
        let mut a3hi = hi((s3max - c3) / 3.0);
        let mut count = 0;
        if n == 3 {
            let m = (tb / 3.0).powf(1.5);
            a3lo = a3lo.max(lo(-m));
            a3hi = a3hi.min(hi(m));
            for a3 in a3lo..=a3hi {
                if a3 != 0 {
                    count += 1;
                    visit(&[a1, a2, a3]);
                }
            }
            return count;
        }
        let amax = (tb / 4.0).powi(2);
        for a3 in a3lo..=a3hi {
            let s3 = -(a1 * s2 + a2 * s1 + 3 * a3);
            let e = (a1 * s3 + a2 * s2 + a3 * s1) as f64;
            let (s4lo, s4hi) = if self.totally_real {
                let q = (s2 * s2) as f64;
                (q / 4.0, q)
            } else {
                (-tb * tb, tb * tb)
            };
            let a4lo = lo((-s4hi - e) / 4.0).max(lo(-amax));
            let a4hi = hi((-s4lo - e) / 4.0).min(hi(amax));
            for a4 in a4lo..=a4hi {
                if a4 != 0 {
                    count += 1;
                    visit(&[a1, a2, a3, a4]);
                }
            }
        }
        count
    }

    /// Number of vectors `scan` would visit.
    pub fn size(&self) -> u64 {
        self.prefixes().into_iter().map(|p| self.scan(p, |_| {})).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{poly_discriminant, IntPoly};
    use num_bigint::BigInt;

    fn poly(a: &[i64]) -> IntPoly {
        let mut c: Vec<i64> = a.iter().rev().copied().collect();
        c.push(1);
        IntPoly::from_i64(&c)
    }

    #[test]
    fn discs_match_resultant() {
        for a in [[1, -4, 2, 7], [0, -7, -2, 6], [-2, 3, 5, -1]] {
            assert_eq!(BigInt::from(disc_quartic(&a)), poly_discriminant(&poly(&a)).unwrap());
            assert_eq!(BigInt::from(disc_cubic(&a[..3])), poly_discriminant(&poly(&a[..3])).unwrap());
        }
    }

    #[test]
    fn box_contains_cyclic_49() {
        let b = HunterBox { degree: 3, x: 49.0, totally_real: true };
        let mut seen = false;
        for p in b.prefixes() {
            b.scan(p, |a| seen |= a == [1, -2, -1]);
        }
        assert!(seen);
    }
}
