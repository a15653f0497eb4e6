//! Two independent computations of pi.
//!
//! [`pi`] (the default source) uses the Machin identity
//! `pi = 16 atan(1/5) - 4 atan(1/239)` with alternating-series tail bounds.
//! [`pi_chudnovsky`] sums the Chudnovsky series. They share no code path
//! past the integer kernel, so agreement between them validates both; the
//! acceptance suite performs that cross-check before anything else trusts
//! either.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{ceil_div, HReal};

/// atan(1/q) in fixed point at wp fractional bits.
///
/// Returns the truncated alternating sum and a certified ulp radius. Each
/// power update and each term division truncates by at most one ulp, and the
/// running power drift stays below two ulps, so `4*iters + 8` covers
/// everything including the alternating tail.
fn atan_inv_fixed(q: u64, wp: u32) -> (BigInt, BigUint) {
    let q2 = q * q;
    let mut power = (BigInt::one() << wp as u64) / q;
    let mut acc = BigInt::zero();
    let mut k: u64 = 0;
    let mut iters: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        power /= q2;
        k += 1;
        iters += 1;
    }
    (acc, BigUint::from(4 * iters + 8))
}

/// pi with certified radius at most 2^(-prec+2) (in practice far smaller).
pub fn pi(prec: u32) -> HReal {
    let wp = prec + 40;
    let (a5, e5) = atan_inv_fixed(5, wp);
    let (a239, e239) = atan_inv_fixed(239, wp);
    let mant = a5 * 16 - a239 * 4;
    let err = e5 * 16u32 + e239 * 4u32;
    HReal::from_parts(mant, err, wp).with_prec(prec)
}

/// pi by the Chudnovsky series (independent cross-check for [`pi`]).
///
/// S = sum_k (-1)^k (6k)!(13591409 + 545140134 k) / ((3k)!(k!)^3 640320^(3k)),
/// pi = 426880 sqrt(10005) / S.
pub fn pi_chudnovsky(prec: u32) -> HReal {
    const A: u64 = 13_591_409;
    const B: u64 = 545_140_134;
    const C3: u64 = 262_537_412_640_768_000; // 640320^3

    let wp = prec + 80;
    let mut term = BigInt::one() << wp as u64; // (6k)!/((3k)!(k!)^3 C3^k) scaled
    let mut term_err = BigUint::zero();
    let mut sum = BigInt::zero();
    let mut sum_err = BigUint::zero();
    let mut k: u64 = 0;
    loop {
        let mult = BigUint::from(A + B * k);
        sum_err += &term_err * &mult + 1u32;
        let contrib = &term * BigInt::from(mult);
        if k.is_multiple_of(2) {
            sum += contrib;
        } else {
            sum -= contrib;
        }
        if term.is_zero() {
            // True term is below term_err ulps; the alternating tail of the
            // multiplied series is covered generously.
            sum_err += (&term_err + 2u32) * BigUint::from(A + B * (k + 1)) * 2u32;
            break;
        }
        let k1 = k + 1;
        term *= (6 * k + 1) * (6 * k + 2) * (6 * k + 3);
        term *= (6 * k + 4) * (6 * k + 5) * (6 * k + 6);
        term /= (3 * k1 - 2) * (3 * k1 - 1) * (3 * k1);
        term /= k1 * k1 * k1;
        term /= C3;
        // Ratio of consecutive terms is ~1/1.5e14; drift stays tiny.
        term_err = ceil_div(&term_err, &BigUint::from(1u64 << 40)) + 3u32;
        k += 1;
    }

    let sqrt_mant = (BigUint::from(10005u32) << (2 * wp as u64)).sqrt();
    let sqrt_ball = HReal::from_parts(BigInt::from(sqrt_mant), BigUint::one(), wp);
    let numer = sqrt_ball.mul_int(426_880);
    let s_ball = HReal::from_parts(sum, sum_err, wp);
    numer
        .div(&s_ball)
        .expect("Chudnovsky denominator is provably nonzero")
        .with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_70: &str = "3.141592653589793238462643383279502884197169399375105820974944592307816";

    #[test]
    fn machin_pi_digits() {
        let p = pi(256);
        assert!(p.err_le_pow10(74));
        assert_eq!(p.render_decimal(70).unwrap(), PI_70);
    }

    #[test]
    fn chudnovsky_pi_digits() {
        let p = pi_chudnovsky(256);
        assert!(p.err_le_pow10(72));
        assert_eq!(p.render_decimal(70).unwrap(), PI_70);
    }

    #[test]
    fn two_routes_agree_within_bounds() {
        for prec in [128u32, 256, 1024, 4096] {
            let a = pi(prec);
            let b = pi_chudnovsky(prec);
            assert!(a.agrees_with(&b), "disagreement at prec {prec}");
        }
    }

    #[test]
    fn pi_divided_by_itself_is_one() {
        let p = pi(192);
        let q = p.div(&p).unwrap();
        assert!(q.contains_ratio(&num_rational::BigRational::new(
            BigInt::one(),
            BigInt::one()
        )));
    }

    #[test]
    fn radius_meets_contract() {
        for prec in [64u32, 256, 2048] {
            let p = pi(prec);
            // err * 2^-prec <= 2^(-prec+2) <=> err <= 4
            assert!(
                p.err_ulps() <= &BigUint::from(4u32),
                "radius too wide at {prec}"
            );
        }
    }
}
