//! Exact integer and polynomial arithmetic over Z, Q and F_p.

pub mod fp;
pub mod integer;
pub mod linalg;
mod intpoly;
pub mod qpoly;
mod resultant;

pub use fp::{factor_mod_p, ModPFactorization};
pub use integer::squarefree_part;
pub use intpoly::{parse_poly, IntPoly};
pub use resultant::{det_bareiss, poly_discriminant, resultant};

pub type Rational = num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::One;

/// Rational printed as "p/q", or "n" when integral.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            (d != BigInt::from(0)).then(|| Rational::new(n, d))
        }
    }
}

pub fn content_primitive(f: &IntPoly) -> (BigInt, IntPoly) {
    f.content_primitive()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
