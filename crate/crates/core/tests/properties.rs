use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use quartic_core::dirichlet::{DirichletCoeffs, UPoly};
use quartic_core::enumerate::{disc_cubic, disc_quartic};
use quartic_core::dirichlet::phi_k;
use quartic_core::enumerate::{discover_l2, SearchBudget};
use quartic_core::exactmath::fp::{mul, reduce, trim};
use quartic_core::exactmath::{factor_mod_p, parse_poly, poly_discriminant, rat, resultant, squarefree_part, IntPoly};
use quartic_core::numfield::make_field;
use quartic_core::numfield::{Decoration, SplittingType};
use quartic_core::resolvent::{quartic_from_alpha, resolvent_cubic, AlphaCharPoly};
use quartic_core::Parallelism;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn monic(tail: &[i64]) -> IntPoly {
    let mut c: Vec<i64> = tail.iter().rev().copied().collect();
    c.push(1);
    IntPoly::from_i64(&c)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn fast_discriminants_agree(a in prop::collection::vec(-60i64..=60, 4)) {
        prop_assert_eq!(BigInt::from(disc_quartic(&a)), poly_discriminant(&monic(&a)).unwrap());
        prop_assert_eq!(BigInt::from(disc_cubic(&a[..3])), poly_discriminant(&monic(&a[..3])).unwrap());
    }

    #[test]
    fn resolvent_keeps_discriminant(a in prop::collection::vec(-30i64..=30, 4)) {
        let q = monic(&a);
        let r = resolvent_cubic(&q).unwrap();
        prop_assert_eq!(r.degree(), 3);
        prop_assert_eq!(poly_discriminant(&r).unwrap(), poly_discriminant(&q).unwrap());
    }

    #[test]
    fn alpha_quartic_discriminant(s in 1i64..=8, a1 in -25i64..=25, a2 in -25i64..=25) {
        let c = IntPoly::from_i64(&[-s * s, a1, a2, 1]);
        let alpha = AlphaCharPoly::new(c.clone()).unwrap();
        // reducible alphas are rejected, everything else must satisfy the identity
        if let Ok(q) = quartic_from_alpha(&alpha) {
            prop_assert_eq!(poly_discriminant(&q).unwrap(), BigInt::from(4096) * poly_discriminant(&c).unwrap());
        }
    }

    #[test]
    fn mul_local_is_convolution(
        base in prop::collection::vec(-5i64..=5, 1..=60),
        poly in prop::collection::vec(-4i64..=4, 1..=5),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
    ) {
        let bound = base.len();
        let mut d = DirichletCoeffs::zero(bound);
        for (i, v) in base.iter().enumerate() {
            d.set(i + 1, rat(*v, 1));
        }
        let u = UPoly::from_ints(&poly);
        let mut local = DirichletCoeffs::zero(bound);
        let mut pk = 1usize;
        for k in 0..poly.len() {
            if pk > bound {
                break;
            }
            local.set(pk, u.coeff(k));
            pk *= p as usize;
        }
        let want = d.mul(&local);
        d.mul_local(p, &u);
        for n in 1..=bound {
            prop_assert_eq!(d.get(n), want.get(n), "n = {}", n);
        }
    }

    #[test]
    fn splitting_type_round_trip(
        parts in prop::collection::vec((1u32..=4, 1u32..=4), 1..=4),
        dec in prop::option::of(prop::bool::ANY),
    ) {
        let mut st = SplittingType::new(parts);
        if let Some(d) = dec {
            st = st.with_decoration(if d { Decoration::Four } else { Decoration::Zero });
        }
        let back = SplittingType::parse(&st.to_string()).unwrap();
        prop_assert_eq!(&back, &st);
        let json = serde_json::to_string(&st).unwrap();
        prop_assert_eq!(serde_json::from_str::<SplittingType>(&json).unwrap(), st);
    }

    #[test]
    fn parallel_map_matches_sequential(xs in prop::collection::vec(any::<i64>(), 0..300), jobs in 0usize..4) {
        let f = |x: i64| x.wrapping_mul(31).rotate_left(7) ^ 0x5a5a;
        let seq = Parallelism::Sequential.map(xs.clone(), f);
        let par = Parallelism::from_jobs(jobs).map(xs, f);
        prop_assert_eq!(seq, par);
    }
}

fn small_primes() -> Vec<u64> {
    (2u64..=97).filter(|n| (2..*n).all(|d| n % d != 0)).collect()
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn factorization_multiplies_back(
        tail in prop::collection::vec(-50i64..=50, 1..=6),
        p in prop::sample::select(small_primes()),
        seed in 0u64..4,
    ) {
        let f = monic(&tail);
        let fac = factor_mod_p(&f, p, seed).unwrap();
        let mut prod = vec![fac.unit];
        for (g, e) in &fac.factors {
            prop_assert_eq!(g.last().copied(), Some(1));
            for _ in 0..*e {
                prod = mul(&prod, g, p);
            }
        }
        prop_assert_eq!(trim(prod), reduce(&f, p));
    }

    #[test]
    fn discriminant_of_product(
        f in prop::collection::vec(-50i64..=50, 1..=3),
        g in prop::collection::vec(-50i64..=50, 1..=3),
    ) {
        let (f, g) = (monic(&f), monic(&g));
        let r = resultant(&f, &g);
        let lhs = poly_discriminant(&(&f * &g)).unwrap();
        let rhs = poly_discriminant(&f).unwrap() * poly_discriminant(&g).unwrap() * &r * &r;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_decomposition(n in (-1_000_000_000i64..=1_000_000_000).prop_filter("nonzero", |n| *n != 0)) {
        let (s, m) = squarefree_part(&BigInt::from(n)).unwrap();
        prop_assert_eq!(&s * &m * &m, BigInt::from(n));
        let s = s.abs();
        let mut d = BigInt::from(2);
        while &d * &d <= s {
            prop_assert!(!(&s % (&d * &d)).is_zero(), "{} divisible by {}^2", s, d);
            d += BigInt::one();
        }
    }
}

#[test]
fn phi_coefficients_are_counts() {
    for (poly, signed) in [("x^3-x^2-2x+1", false), ("x^3-x^2-3x+1", false), ("x^3-4x-1", false), ("x^3-4x-1", true)] {
        let k = make_field(&parse_poly(poly).unwrap()).unwrap();
        let l2 = discover_l2(&k, signed, SearchBudget::default(), Parallelism::default()).unwrap();
        let phi = phi_k(&k, &l2, 300, signed).unwrap();
        let a = if k.disc().to_string() == "49" { 3 } else { 1 };
        let first = phi.get(1) - rat(1, a);
        assert!(first.is_integer() && !first.is_negative(), "{poly}: coeff 1 = {}", phi.get(1));
        for n in 2..=300 {
            let c = phi.get(n);
            assert!(c.is_integer() && !c.is_negative(), "{poly}: coeff {n} = {c}");
        }
    }
}
