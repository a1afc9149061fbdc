//! Floating-point root approximations. Used only to size search bounds and to
//! propose candidates that are then checked exactly.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::exactmath::IntPoly;

/// All complex roots by Aberth–Ehrlich iteration followed by Newton polishing.
pub fn complex_roots(f: &IntPoly) -> Vec<Complex64> {
    let n = f.degree();
    if n == 0 {
        return vec![];
    }
    let lc = f.lc().to_f64().unwrap();
    let c: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap() / lc).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let radius = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, ang)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    z
}

/// Real roots (imaginary part negligible), sorted ascending.
pub fn real_roots(f: &IntPoly, count: usize) -> Vec<f64> {
    let mut z = complex_roots(f);
    z.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap());
    let mut r: Vec<f64> = z.iter().take(count).map(|c| c.re).collect();
    r.sort_by(|a, b| a.partial_cmp(b).unwrap());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_cubic() {
        let f = IntPoly::from_i64(&[-6, 11, -6, 1]);
        let r = real_roots(&f, 3);
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
