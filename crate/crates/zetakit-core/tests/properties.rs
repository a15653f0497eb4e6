//! Property tests for the algebraic invariants: ball arithmetic encloses
//! the exact rational answer, continued fractions of rationals round-trip,
//! and the trigonometric identities hold for arbitrary arguments.

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use zetakit_core::diophantine::{cf_expand, cf_expand_rational, check_two_sided_inequality};
use zetakit_core::rational::BigRational;
use zetakit_core::real::HReal;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ball_field_ops_enclose_exact_rationals(
        an in -100_000i64..100_000, ad in 1i64..10_000,
        bn in -100_000i64..100_000, bd in 1i64..10_000,
        prec in 64u32..256,
    ) {
        let a = rat(an, ad);
        let b = rat(bn, bd);
        let xa = HReal::from_ratio(&a, prec);
        let xb = HReal::from_ratio(&b, prec);
        prop_assert!(xa.add(&xb).contains_ratio(&(&a + &b)));
        prop_assert!(xa.sub(&xb).contains_ratio(&(&a - &b)));
        prop_assert!(xa.mul(&xb).contains_ratio(&(&a * &b)));
        if bn != 0 {
            prop_assert!(xa.div(&xb).unwrap().contains_ratio(&(&a / &b)));
        }
    }

    #[test]
    fn rational_cf_round_trips(
        n in -1_000_000_000i64..1_000_000_000,
        d in 1i64..1_000_000,
    ) {
        let r = rat(n, d);
        let cf = cf_expand_rational("r", &r, 128);
        prop_assert!(cf.terminated);
        // Quotients past the first are >= 1, convergents are coprime, and
        // the final convergent reproduces the input exactly.
        for a in &cf.quotients[1..] {
            prop_assert!(a >= &BigInt::one());
        }
        for (p, q) in &cf.convergents {
            prop_assert_eq!(num_integer::Integer::gcd(p, q), BigInt::one());
        }
        let (p, q) = cf.convergents.last().unwrap();
        prop_assert_eq!(BigRational::new(p.clone(), q.clone()), r);
    }

    #[test]
    fn two_sided_inequality_on_random_quadratic_surds(
        m in 2u32..2_000,
    ) {
        // sqrt(m) for non-square m: an easy family of irrationals with
        // arbitrary quotient patterns.
        let root = (m as f64).sqrt() as u32;
        prop_assume!(root * root != m && (root + 1) * (root + 1) != m);
        let alpha = HReal::from_int(m as i64, 512).sqrt().unwrap();
        let cf = cf_expand("sqrt", &alpha, 24).unwrap();
        let checks = check_two_sided_inequality(&cf, &alpha).unwrap();
        for c in &checks {
            prop_assert!(c.pass, "fails at index {}", c.index);
        }
    }

    #[test]
    fn pythagorean_identity_everywhere(
        xn in -10_000i64..10_000, xd in 1i64..1_000,
    ) {
        // Arguments spread over roughly [-10, 10].
        let x = HReal::from_ratio(&rat(xn, xd * 1000 + 1), 160).mul_int(1000);
        let s = x.sin();
        let c = x.cos();
        prop_assert!(s.mul(&s).add(&c.mul(&c)).contains_ratio(&rat(1, 1)));
    }

    #[test]
    fn exp_of_sum_is_product(
        an in -8_000i64..8_000, bn in -8_000i64..8_000,
    ) {
        let a = rat(an, 1000);
        let b = rat(bn, 1000);
        let xa = HReal::from_ratio(&a, 192);
        let xb = HReal::from_ratio(&b, 192);
        let lhs = xa.add(&xb).exp();
        let rhs = xa.exp().mul(&xb.exp());
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn render_parses_back_within_tolerance(
        n in -1_000_000i64..1_000_000, d in 1i64..100_000, digits in 6u32..24,
    ) {
        prop_assume!(n != 0);
        let r = rat(n, d);
        let x = HReal::from_ratio(&r, 256);
        let text = x.render_decimal(digits).unwrap();
        let parsed: f64 = text.parse().unwrap();
        let original = n as f64 / d as f64;
        // Past ~16 digits the decimal outresolves f64, so the comparison
        // floor is a few ulps of the f64 value itself.
        let tol = (original.abs() * 10f64.powi(1 - (digits as i32)))
            .max(original.abs() * f64::EPSILON * 4.0);
        prop_assert!((parsed - original).abs() <= tol, "{text} vs {original}");
    }
}
