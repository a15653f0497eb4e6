//! exp, ln, sin, cos on certified balls.
//!
//! Strategy shared by all four: strip the input radius, evaluate a reduced
//! Taylor series at the exact center with ball arithmetic (so every rounding
//! ulp and the series tail land in the radius), then widen by a Lipschitz
//! bound for the input radius. sin/cos reduce the argument modulo pi/2 with
//! pi taken at elevated precision, so reduction stays sound for arguments as
//! large as the Weyl experiments need.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ceil_div, pi, HReal};
use crate::error::{Error, Result};

/// ln 2 = 2 atanh(1/3), fixed point with a certified ulp radius.
pub(crate) fn ln2(prec: u32) -> HReal {
    let wp = prec + 32;
    let mut power = (BigInt::one() << wp as u64) / 3u64;
    let mut acc = BigInt::zero();
    let mut k: u64 = 0;
    let mut iters: u64 = 0;
    while !power.is_zero() {
        acc += &power / (2 * k + 1);
        power /= 9u64;
        k += 1;
        iters += 1;
    }
    let err = BigUint::from(4 * iters + 8);
    HReal::from_parts(acc << 1u64, err << 1u64, wp).with_prec(prec)
}

/// e by its Taylor series at 1.
fn euler_e(prec: u32) -> HReal {
    let wp = prec + 32;
    let mut acc = HReal::one(wp);
    let mut term = HReal::one(wp);
    let mut k: u64 = 1;
    loop {
        term = term.div_uint(k);
        acc = acc.add(&term);
        if term.abs_hi_ulps() <= BigUint::from(4u32) {
            break;
        }
        k += 1;
    }
    acc.add_err_ulps(BigUint::from(16u32));
    acc.with_prec(prec)
}

fn sin_taylor(r: &HReal) -> HReal {
    let mut term = r.clone();
    let mut acc = r.clone();
    let mut k: u64 = 1;
    let r2 = r.mul(r);
    loop {
        term = term.mul(&r2).div_uint(2 * k * (2 * k + 1)).neg();
        acc = acc.add(&term);
        if term.abs_hi_ulps() <= BigUint::from(4u32) {
            break;
        }
        k += 1;
    }
    acc.add_err_ulps(BigUint::from(16u32));
    acc
}

fn cos_taylor(r: &HReal) -> HReal {
    let wp = r.prec();
    let mut term = HReal::one(wp);
    let mut acc = HReal::one(wp);
    let mut k: u64 = 1;
    let r2 = r.mul(r);
    loop {
        term = term.mul(&r2).div_uint((2 * k - 1) * (2 * k)).neg();
        acc = acc.add(&term);
        if term.abs_hi_ulps() <= BigUint::from(4u32) {
            break;
        }
        k += 1;
    }
    acc.add_err_ulps(BigUint::from(16u32));
    acc
}

impl HReal {
    /// e^x. Exact 0 maps to exact 1. Supports |x| < 2^31.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        if self.mantissa().is_zero() && self.is_exact() {
            return Self::one(prec);
        }
        let input_err = self.err_ulps().clone();
        assert!(
            input_err.bits() <= prec as u64,
            "exp input radius wider than 1/2 is unsupported"
        );
        let xm = self.mag_upper_log2().unwrap_or(-(prec as i64)).clamp(0, 40);
        assert!(xm < 32, "exp argument magnitude out of supported range");
        let wp = prec + 64 + 2 * xm as u32;

        let center = Self::from_parts(self.mantissa().clone(), BigUint::zero(), prec).with_prec(wp);
        let n = center.nearest_int_center();
        let r = center.sub(&Self::from_bigint(&n, wp));
        let y = r.scale2(-5);

        let mut acc = Self::one(wp);
        let mut term = Self::one(wp);
        let mut k: u64 = 1;
        loop {
            term = term.mul(&y).div_uint(k);
            acc = acc.add(&term);
            if term.abs_hi_ulps() <= BigUint::from(4u32) {
                break;
            }
            k += 1;
        }
        acc.add_err_ulps(BigUint::from(16u32));
        let mut res = acc.pow_u32(32);

        if !n.is_zero() {
            let e1 = euler_e(wp);
            let np = n.magnitude().to_u32().expect("exp argument out of range");
            let en = e1.pow_u32(np);
            res = if n.is_negative() {
                res.div(&en).expect("e^n is provably nonzero")
            } else {
                res.mul(&en)
            };
        }

        if !input_err.is_zero() {
            // |e^(x+d) - e^x| <= e^x (e^|d| - 1) <= 2 e^x |d| for |d| <= 1/2
            let extra =
                super::ceil_shr(&(res.abs_hi_ulps() * &input_err * 2u32), prec as u64) + 1u32;
            res.add_err_ulps(extra);
        }
        res.with_prec(prec)
    }

    /// Natural logarithm; the argument must be provably positive.
    pub fn ln(&self) -> Result<Self> {
        if !self.is_provably_positive() {
            return Err(Error::NotProvablyPositive);
        }
        let prec = self.prec();
        let wp = prec + 64;
        let input_err = self.err_ulps().clone();

        let center = Self::from_parts(self.mantissa().clone(), BigUint::zero(), prec).with_prec(wp);
        let bits = center.mantissa().bits() as i64;
        let mut t: i64 = bits - 1 - wp as i64;
        let mut u = center.scale2(-t);
        if u.mantissa() >= &(BigInt::from(3) << (wp as u64 - 1)) {
            u = u.scale2(-1);
            t += 1;
        }
        // u in [0.75, 1.5); z = (u-1)/(u+1) has |z| <= 1/5
        let one = Self::one(wp);
        let z = u.sub(&one).div(&u.add(&one)).expect("u+1 >= 7/4");
        let z2 = z.mul(&z);
        let mut power = z.clone();
        let mut acc = z.clone();
        let mut k: u64 = 1;
        loop {
            power = power.mul(&z2);
            let contrib = power.div_uint(2 * k + 1);
            acc = acc.add(&contrib);
            if contrib.abs_hi_ulps() <= BigUint::from(4u32) {
                break;
            }
            k += 1;
        }
        acc.add_err_ulps(BigUint::from(16u32));
        let mut res = acc.scale2(1);
        if t != 0 {
            res = res.add(&ln2(wp).mul_int(t));
        }

        if !input_err.is_zero() {
            // |ln(x+d) - ln(x)| <= |d| / min(x)
            let extra = ceil_div(&(input_err << wp as u64), &self.abs_lo_ulps()) + 1u32;
            res.add_err_ulps(extra);
        }
        Ok(res.with_prec(prec))
    }

    fn reduce_half_pi(&self) -> (Self, u8) {
        let prec = self.prec();
        let xm = self.mag_upper_log2().unwrap_or(0).max(0) as u32;
        let wp = prec + 64 + xm + 4;
        let half = pi(wp + 8).scale2(-1);
        let center = Self::from_parts(self.mantissa().clone(), BigUint::zero(), prec).with_prec(wp);
        let q = center
            .div(&half)
            .expect("pi/2 is provably nonzero")
            .nearest_int_center();
        let r = center.sub(&half.mul_bigint(&q)).with_prec(wp);
        let quad = ((&q % 4i32) + 4i32) % 4i32;
        (r, quad.to_u8().unwrap_or(0))
    }

    fn widen_by_input_err(&self, mut v: Self) -> Self {
        // sin and cos are 1-Lipschitz, so the input radius adds directly.
        let input_err = self.err_ulps();
        if !input_err.is_zero() {
            let p = v.prec();
            if p >= self.prec() {
                v.add_err_ulps(input_err << (p - self.prec()) as u64);
            } else {
                v.add_err_ulps(super::ceil_shr(input_err, (self.prec() - p) as u64) + 1u32);
            }
        }
        v.with_prec(self.prec())
    }

    /// sin x with argument reduction modulo pi/2.
    pub fn sin(&self) -> Self {
        let (r, quad) = self.reduce_half_pi();
        let v = match quad {
            0 => sin_taylor(&r),
            1 => cos_taylor(&r),
            2 => sin_taylor(&r).neg(),
            _ => cos_taylor(&r).neg(),
        };
        self.widen_by_input_err(v)
    }

    /// cos x with argument reduction modulo pi/2.
    pub fn cos(&self) -> Self {
        let (r, quad) = self.reduce_half_pi();
        let v = match quad {
            0 => cos_taylor(&r),
            1 => sin_taylor(&r).neg(),
            2 => cos_taylor(&r).neg(),
            _ => sin_taylor(&r),
        };
        self.widen_by_input_err(v)
    }
}
