//! Arbitrary-precision real arithmetic with certified error bounds.
//!
//! An [`HReal`] stores a dyadic center `mant * 2^-prec` together with an
//! error radius `err * 2^-prec` (in ulps) guaranteeing
//! `|stored - true| <= err * 2^-prec`. Every operation propagates the radius
//! conservatively using exact integer arithmetic that only ever rounds the
//! radius up, so the bound survives arbitrarily long computations.
//!
//! Rendering to decimal refuses unless the radius certifies the requested
//! digits, and refuses again if the center sits too close to a rounding
//! midpoint for the digits to be decided.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::BigRational;

mod elementary;
mod pi;

pub use pi::{pi, pi_chudnovsky};

/// Working precision (bits) needed to deliver `digits` decimal digits,
/// with 32 guard bits.
pub fn digits_to_prec(digits: u32) -> u32 {
    // ceil(digits * log2(10)) + 32; the constant rounds log2(10) up.
    ((digits as u64 * 3_321_929).div_ceil(1_000_000)) as u32 + 32
}

/// Shift right, rounding the result up (for error radii).
fn ceil_shr(x: &BigUint, k: u64) -> BigUint {
    if k == 0 {
        return x.clone();
    }
    let q = x >> k;
    let back = &q << k;
    if back == *x {
        q
    } else {
        q + 1u32
    }
}

/// Ceiling division for error radii.
fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// A real number known to lie within `err * 2^-prec` of `mant * 2^-prec`.
#[derive(Clone, Debug)]
pub struct HReal {
    mant: BigInt,
    err: BigUint,
    prec: u32,
}

impl HReal {
    pub(crate) fn from_parts(mant: BigInt, err: BigUint, prec: u32) -> Self {
        Self { mant, err, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_parts(BigInt::zero(), BigUint::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    /// Exact integer value.
    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::from(v) << prec, BigUint::zero(), prec)
    }

    /// Exact big-integer value.
    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::from_parts(v.clone() << prec, BigUint::zero(), prec)
    }

    /// Rational value rounded to `prec` fractional bits; exact (zero radius)
    /// whenever the denominator is a power of two.
    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        let scaled = r.numer() << prec;
        let (q, rem) = scaled.div_rem(r.denom());
        let err = if rem.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        };
        Self::from_parts(q, err, prec)
    }

    /// Exact conversion of a finite `f64` (dyadic, so representable).
    pub fn from_f64(x: f64, prec: u32) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::InvalidArgument("non-finite f64"));
        }
        let r = BigRational::from_float(x).ok_or(Error::InvalidArgument("non-finite f64"))?;
        Ok(Self::from_ratio(&r, prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn err_ulps(&self) -> &BigUint {
        &self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// Re-rounds to precision `p`. Raising the precision is exact; lowering
    /// it rounds the center and widens the radius accordingly.
    pub fn with_prec(&self, p: u32) -> Self {
        if p >= self.prec {
            let k = (p - self.prec) as u64;
            Self::from_parts(&self.mant << k, &self.err << k, p)
        } else {
            let k = (self.prec - p) as u64;
            let mant = &self.mant >> k;
            let mut err = ceil_shr(&self.err, k);
            err += 1u32;
            Self::from_parts(mant, err, p)
        }
    }

    fn aligned(&self, p: u32) -> (BigInt, BigUint) {
        debug_assert!(p >= self.prec);
        let k = (p - self.prec) as u64;
        (&self.mant << k, &self.err << k)
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(-&self.mant, self.err.clone(), self.prec)
    }

    /// Ball enclosure of |x|: centers on |mant| with the same radius.
    pub fn abs(&self) -> Self {
        Self::from_parts(self.mant.abs(), self.err.clone(), self.prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        Self::from_parts(ma + mb, ea + eb, p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        Self::from_parts(ma - mb, ea + eb, p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        let full = &ma * &mb;
        // |a| eb + |b| ea + ea eb, all at scale 2^-2p, plus the rescale ulp.
        let e2p = ma.magnitude() * &eb + mb.magnitude() * &ea + &ea * &eb;
        let mant = full >> p as u64;
        let err = ceil_shr(&e2p, p as u64) + 1u32;
        Self::from_parts(mant, err, p)
    }

    /// Exact scaling by an integer.
    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        Self::from_parts(&self.mant * k, &self.err * k.magnitude(), self.prec)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.mul_bigint(&BigInt::from(k))
    }

    /// Division by a nonzero machine integer (one rounding ulp).
    pub fn div_uint(&self, k: u64) -> Self {
        debug_assert!(k != 0);
        let mant = &self.mant / k;
        let err = ceil_div(&self.err, &BigUint::from(k)) + 1u32;
        Self::from_parts(mant, err, self.prec)
    }

    /// Division by an exact nonzero big integer (one rounding ulp).
    pub fn div_bigint(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mant = &self.mant / k;
        let err = ceil_div(&self.err, k.magnitude()) + 1u32;
        Ok(Self::from_parts(mant, err, self.prec))
    }

    /// Ball division; fails unless the divisor is provably nonzero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        if mb.magnitude() <= &eb {
            return if mb.is_zero() && eb.is_zero() {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::InsufficientPrecision)
            };
        }
        let mant = (&ma << p as u64) / &mb;
        let denom_lo = mb.magnitude() - &eb;
        let num = (&ea << p as u64) + (mant.magnitude() + 2u32) * &eb;
        let err = ceil_div(&num, &denom_lo) + 2u32;
        Ok(Self::from_parts(mant, err, p))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.prec).div(self)
    }

    /// Ball square root. The input must not be provably negative; a ball
    /// overlapping zero from below is clamped at zero.
    pub fn sqrt(&self) -> Result<Self> {
        let p = self.prec;
        let e = BigInt::from(self.err.clone());
        if self.mant < -e.clone() {
            return Err(Error::NotProvablyPositive);
        }
        let center = if self.mant.is_negative() {
            BigUint::zero()
        } else {
            self.mant.magnitude().clone()
        };
        let lo: BigUint = if self.mant > e {
            (&self.mant - &e).magnitude().clone()
        } else {
            BigUint::zero()
        };
        let hi: BigUint = (&self.mant + &e).magnitude().clone();
        let s = (&center << p as u64).sqrt();
        let sl = (&lo << p as u64).sqrt();
        let su = (&hi << p as u64).sqrt();
        let up = (su + 1u32) - &s;
        let down = &s - sl;
        let err = up.max(down) + 1u32;
        Ok(Self::from_parts(BigInt::from(s), err, p))
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow_u32(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.prec);
        }
        let mut acc = self.clone();
        let nbits = 32 - e.leading_zeros();
        for i in (0..nbits - 1).rev() {
            acc = acc.mul(&acc);
            if (e >> i) & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Exact scaling by 2^k (k < 0 costs one rounding ulp).
    pub fn scale2(&self, k: i64) -> Self {
        if k >= 0 {
            Self::from_parts(&self.mant << k as u64, &self.err << k as u64, self.prec)
        } else {
            let s = (-k) as u64;
            Self::from_parts(&self.mant >> s, ceil_shr(&self.err, s) + 1u32, self.prec)
        }
    }

    /// Widens the radius by `u` ulps.
    pub fn add_err_ulps(&mut self, u: BigUint) {
        self.err += u;
    }

    /// Widens the radius by the absolute amount 2^e.
    pub fn add_err_pow2(&mut self, e: i64) {
        let shift = e + self.prec as i64;
        if shift >= 0 {
            self.err += BigUint::one() << shift as u64;
        } else {
            self.err += 1u32;
        }
    }

    /// Widens the radius by an upper bound of |other|.
    pub fn add_err_upper_of(&mut self, other: &Self) {
        let hi = other.mant.magnitude() + &other.err;
        if self.prec >= other.prec {
            self.err += hi << (self.prec - other.prec) as u64;
        } else {
            self.err += ceil_shr(&hi, (other.prec - self.prec) as u64) + 1u32;
        }
    }

    /// Upper bound on |x| in ulps of 2^-prec.
    pub fn abs_hi_ulps(&self) -> BigUint {
        self.mant.magnitude() + &self.err
    }

    /// Lower bound on |x| in ulps of 2^-prec (zero if the ball straddles 0).
    pub fn abs_lo_ulps(&self) -> BigUint {
        if self.mant.magnitude() > &self.err {
            self.mant.magnitude() - &self.err
        } else {
            BigUint::zero()
        }
    }

    /// Smallest L with |x| < 2^L, or None for an exact zero.
    pub fn mag_upper_log2(&self) -> Option<i64> {
        let hi = self.abs_hi_ulps();
        if hi.is_zero() {
            None
        } else {
            Some(hi.bits() as i64 - self.prec as i64)
        }
    }

    /// Largest L with |x| >= 2^L, or None unless provably nonzero.
    pub fn mag_lower_log2(&self) -> Option<i64> {
        let lo = self.abs_lo_ulps();
        if lo.is_zero() {
            None
        } else {
            Some(lo.bits() as i64 - 1 - self.prec as i64)
        }
    }

    pub fn is_provably_positive(&self) -> bool {
        self.mant.is_positive() && self.mant.magnitude() > &self.err
    }

    pub fn is_provably_negative(&self) -> bool {
        self.mant.is_negative() && self.mant.magnitude() > &self.err
    }

    /// |center| > margin * radius. The rest of the toolkit uses margin 4 as
    /// its "provably nonzero" safety factor.
    pub fn provably_nonzero(&self, margin: u32) -> bool {
        !self.err.is_zero() && self.mant.magnitude() > &(&self.err * margin)
            || self.err.is_zero() && !self.mant.is_zero()
    }

    /// Certain comparison: every value of self <= every value of other.
    pub fn le_certain(&self, other: &Self) -> bool {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        ma + BigInt::from(ea) <= mb - BigInt::from(eb)
    }

    /// |self - other| <= combined radii (the balls intersect).
    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        (ma - mb).magnitude() <= &(ea + eb)
    }

    /// |self - other| <= 2^e rigorously (includes both radii).
    pub fn diff_within_pow2(&self, other: &Self, e: i64) -> bool {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        let gap = (ma - mb).magnitude() + ea + eb;
        let shift = e + p as i64;
        if shift < 0 {
            gap.is_zero()
        } else {
            gap <= (BigUint::one() << shift as u64)
        }
    }

    /// |self - other| <= 10^-t rigorously (includes both radii).
    pub fn diff_within_pow10(&self, other: &Self, t: u32) -> bool {
        let p = self.prec.max(other.prec);
        let (ma, ea) = self.aligned(p);
        let (mb, eb) = other.aligned(p);
        let gap = (ma - mb).magnitude() + ea + eb;
        gap * BigUint::from(10u32).pow(t) <= (BigUint::one() << p as u64)
    }

    /// True when the ball contains the exact rational r.
    pub fn contains_ratio(&self, r: &BigRational) -> bool {
        // |a/b - m 2^-p| <= e 2^-p  <=>  |a 2^p - m b| <= e b
        let lhs = (r.numer() << self.prec as u64) - &self.mant * r.denom();
        lhs.magnitude() <= &(&self.err * r.denom().magnitude())
    }

    /// Exact lower endpoint as a rational.
    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(
            &self.mant - BigInt::from(self.err.clone()),
            BigInt::one() << self.prec as u64,
        )
    }

    /// Exact upper endpoint as a rational.
    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(
            &self.mant + BigInt::from(self.err.clone()),
            BigInt::one() << self.prec as u64,
        )
    }

    /// Exact center as a rational.
    pub fn center_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.prec as u64)
    }

    /// Nearest integer to the center (ties toward +inf).
    pub fn nearest_int_center(&self) -> BigInt {
        if self.prec == 0 {
            return self.mant.clone();
        }
        (&self.mant + (BigInt::one() << (self.prec - 1) as u64)) >> self.prec as u64
    }

    /// True when the radius is at most 10^-t.
    pub fn err_le_pow10(&self, t: u32) -> bool {
        &self.err * BigUint::from(10u32).pow(t) <= (BigUint::one() << self.prec as u64)
    }

    /// Approximate f64 value of the center (diagnostics only).
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        let shift = bits.saturating_sub(53);
        let top = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        libm::scalbn(top, (shift as i64 - self.prec as i64) as i32)
    }

    /// Decimal upper bound on the radius, as "1e-40"-style text ("0" when
    /// exact). Always an upper bound, never an estimate.
    pub fn err_decimal_string(&self) -> String {
        if self.err.is_zero() {
            return "0".to_string();
        }
        // Smallest t with err * 2^-prec <= 10^t.
        let approx = (self.err.bits() as i64 - self.prec as i64) * 30103 / 100000;
        let mut t = approx - 2;
        while !self.radius_le_pow10(t) {
            t += 1;
        }
        format!("1e{t}")
    }

    fn radius_le_pow10(&self, t: i64) -> bool {
        if t >= 0 {
            BigInt::from(self.err.clone()) <= (BigInt::from(10).pow(t as u32) << self.prec as u64)
        } else {
            &self.err * BigUint::from(10u32).pow((-t) as u32)
                <= (BigUint::one() << self.prec as u64)
        }
    }

    /// Correctly rounded decimal string with `digits` significant digits.
    ///
    /// Refuses unless the radius is at most 10^-(digits+2), and refuses
    /// again if the ball straddles a rounding midpoint, so the emitted
    /// digits are correct for every value in the ball.
    pub fn render_decimal(&self, digits: u32) -> Result<String> {
        if digits == 0 {
            return Err(Error::InvalidArgument("zero digits requested"));
        }
        if !self.err_le_pow10(digits + 2) {
            return Err(Error::InsufficientPrecision);
        }
        let a = self.mant.magnitude().clone();
        if a <= self.err {
            // The ball straddles zero at the certified scale.
            return Ok("0".to_string());
        }
        let neg = self.mant.sign() == Sign::Minus;
        let p = self.prec as u64;

        // Decimal exponent of the center: 10^e10 <= v < 10^(e10+1).
        let ge_pow10 = |e: i64| -> bool {
            if e >= 0 {
                a >= (BigUint::from(10u32).pow(e as u32) << p)
            } else {
                &a * BigUint::from(10u32).pow((-e) as u32) >= (BigUint::one() << p)
            }
        };
        let mut e10 = (a.bits() as i64 - 1 - p as i64) * 30103 / 100000;
        while !ge_pow10(e10) {
            e10 -= 1;
        }
        while ge_pow10(e10 + 1) {
            e10 += 1;
        }

        let da = digits as i64 - 1 - e10;
        let (num, den, errsc) = if da >= 0 {
            let f = BigUint::from(10u32).pow(da as u32);
            (&a * &f, BigUint::one() << p, &self.err * &f)
        } else {
            let f = BigUint::from(10u32).pow((-da) as u32);
            (
                a.clone(),
                (BigUint::one() << p) * &f,
                self.err.clone() + 1u32,
            )
        };
        let (q, r) = num.div_rem(&den);
        let two_r = &r << 1u32;
        let two_e = &errsc << 1u32;
        let rounded = if &two_r + &two_e < den {
            q
        } else if two_r > &den + &two_e {
            q + 1u32
        } else if errsc.is_zero() && two_r == den {
            // Exact value sitting precisely on a midpoint: ties to even.
            // (Escalating precision could never decide this one.)
            if (&q % 2u32).is_zero() {
                q
            } else {
                q + 1u32
            }
        } else {
            // A midpoint is inside the ball: the last digit is undecidable.
            return Err(Error::InsufficientPrecision);
        };

        let mut s = rounded.to_string();
        let mut exp = e10;
        if s.len() > digits as usize {
            // Round-up carry past a power of ten.
            s.truncate(digits as usize);
            exp += 1;
        }
        debug_assert_eq!(s.len(), digits as usize);

        let body = if exp >= 0 && (exp as usize) < digits as usize {
            let point = exp as usize + 1;
            if point == s.len() {
                s
            } else {
                format!("{}.{}", &s[..point], &s[point..])
            }
        } else if (-6..0).contains(&exp) {
            let zeros = (-exp - 1) as usize;
            format!("0.{}{}", "0".repeat(zeros), s)
        } else {
            if s.len() == 1 {
                format!("{s}e{exp}")
            } else {
                format!("{}.{}e{}", &s[..1], &s[1..], exp)
            }
        };
        Ok(if neg { format!("-{body}") } else { body })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_integer_roundtrip() {
        let x = HReal::from_int(42, 64);
        assert!(x.is_exact());
        assert_eq!(x.render_decimal(2).unwrap(), "42");
        assert_eq!(x.to_f64(), 42.0);
    }

    #[test]
    fn addition_is_exact() {
        let a = HReal::from_ratio(&rat(1, 3), 128);
        let b = HReal::from_ratio(&rat(2, 3), 128);
        let s = a.add(&b);
        assert!(s.contains_ratio(&rat(1, 1)));
    }

    #[test]
    fn multiplication_encloses_truth() {
        let a = HReal::from_ratio(&rat(22, 7), 96);
        let b = HReal::from_ratio(&rat(7, 22), 96);
        let p = a.mul(&b);
        assert!(p.contains_ratio(&rat(1, 1)));
        assert!(p.err_le_pow10(20));
    }

    #[test]
    fn division_requires_nonzero_divisor() {
        let a = HReal::one(64);
        let z = HReal::zero(64);
        assert!(matches!(a.div(&z), Err(Error::DivisionByZero)));
        let mut fuzzy = HReal::zero(64);
        fuzzy.add_err_pow2(-3);
        assert!(matches!(a.div(&fuzzy), Err(Error::InsufficientPrecision)));
    }

    #[test]
    fn division_encloses_truth() {
        let a = HReal::from_int(1, 128);
        let b = HReal::from_int(3, 128);
        let q = a.div(&b).unwrap();
        assert!(q.contains_ratio(&rat(1, 3)));
    }

    #[test]
    fn sqrt_of_square() {
        let a = HReal::from_ratio(&rat(144, 49), 128);
        let s = a.sqrt().unwrap();
        assert!(s.contains_ratio(&rat(12, 7)));
    }

    #[test]
    fn sqrt_rejects_provably_negative() {
        let a = HReal::from_int(-1, 64);
        assert!(matches!(a.sqrt(), Err(Error::NotProvablyPositive)));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let x = HReal::from_ratio(&rat(3, 2), 128);
        let direct = x.mul(&x).mul(&x).mul(&x).mul(&x);
        let fast = x.pow_u32(5);
        assert!(direct.agrees_with(&fast));
        assert!(fast.contains_ratio(&rat(243, 32)));
    }

    #[test]
    fn render_rejects_wide_radius() {
        let mut x = HReal::from_int(1, 64);
        x.add_err_pow2(-10);
        assert!(matches!(
            x.render_decimal(10),
            Err(Error::InsufficientPrecision)
        ));
    }

    #[test]
    fn render_small_and_negative() {
        let x = HReal::from_ratio(&rat(-3, 1000), 128);
        assert_eq!(x.render_decimal(2).unwrap(), "-0.0030");
        let y = HReal::from_ratio(&rat(1, 8), 64);
        assert_eq!(y.render_decimal(3).unwrap(), "0.125");
    }

    #[test]
    fn render_rounds_correctly() {
        let x = HReal::from_ratio(&rat(2, 3), 128);
        assert_eq!(x.render_decimal(4).unwrap(), "0.6667");
        let y = HReal::from_ratio(&rat(9999, 10000), 128);
        assert_eq!(y.render_decimal(3).unwrap(), "1.00");
    }

    #[test]
    fn render_exact_midpoint_ties_to_even() {
        // 0.125 to two digits: tie between 0.12 and 0.13, resolved to even.
        let x = HReal::from_ratio(&rat(1, 8), 64);
        assert_eq!(x.render_decimal(2).unwrap(), "0.12");
        // 0.375 ties up to 0.38 (8 is even).
        let y = HReal::from_ratio(&rat(3, 8), 64);
        assert_eq!(y.render_decimal(2).unwrap(), "0.38");
        // A fuzzy ball at the same spot still refuses.
        let mut z = HReal::from_ratio(&rat(1, 8), 64);
        z.add_err_pow2(-40);
        assert!(matches!(z.render_decimal(2), Err(Error::InsufficientPrecision)));
    }

    #[test]
    fn with_prec_down_keeps_enclosure() {
        let x = HReal::from_ratio(&rat(1, 3), 512);
        let y = x.with_prec(64);
        assert!(y.contains_ratio(&rat(1, 3)));
        assert_eq!(y.prec(), 64);
    }

    #[test]
    fn err_decimal_string_is_upper_bound() {
        let mut x = HReal::from_int(1, 200);
        x.add_err_pow2(-100);
        let s = x.err_decimal_string();
        // 2^-100 ~ 7.9e-31, so the reported bound must be 1e-30 or wider.
        assert_eq!(s, "1e-30");
        assert_eq!(HReal::one(64).err_decimal_string(), "0");
    }
}
