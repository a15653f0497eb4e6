//! Zeta constants by independent routes.
//!
//! * [`zeta_direct`] — Euler–Maclaurin-corrected partial summation. This is
//!   the oracle every closed-form route is validated against; it shares no
//!   series with the Lerch/Ramanujan formulas.
//! * [`zeta_even_exact`] — the exact Euler formula `zeta(2n) = r pi^{2n}`.
//! * [`zeta_odd_lerch`] / [`zeta5_ramanujan`] — rapidly convergent
//!   exponential-series representations of the odd zeta values.
//! * [`pi_split`] — the representation `zeta(s) = a pi^s + b` with a rational
//!   `a` and a numeric remainder `b`.
//! * [`sigma_divisor_series`] — the divisor-sum series `sum sigma_{-s}(n) q^n`
//!   at `q = e^{-2 pi}`, equal to the Lerch tail by the Lambert-series
//!   rearrangement; kept as an independent cross-check of the tail.
//! * [`zeta_deriv_neg_even`] — `zeta'(-2n)` in closed form, with
//!   [`zeta_deriv_neg_even_numeric`] as a differentiation oracle built on the
//!   Euler–Maclaurin continuation [`zeta_em_real`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{
    bernoulli_even_list, dirichlet_beta_coeff, even_zeta_coeff, factorial, lerch_leading_coeff,
    BigRational,
};
use crate::real::{digits_to_prec, pi, HReal};

/// Which formula produced a [`ZetaResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMethod {
    Direct,
    EulerEven,
    Lerch4n3,
    Ramanujan5,
    PiSplit,
}

impl ZetaMethod {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::EulerEven => "euler_even",
            Self::Lerch4n3 => "lerch_4n3",
            Self::Ramanujan5 => "ramanujan_5",
            Self::PiSplit => "pi_split",
        }
    }
}

/// A computed zeta constant with its provenance.
#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub s: u32,
    pub value: HReal,
    pub method: ZetaMethod,
    /// Series cutoff used (Lerch cutoff M or Euler–Maclaurin N; 0 for exact
    /// formulas).
    pub truncation: u64,
}

/// Denominator selector for [`lerch_tail`]: e^{2 pi m} - 1 or + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailSign {
    Minus,
    Plus,
}

/// zeta(s) = a pi^s + b.
#[derive(Clone, Debug)]
pub struct PiSplit {
    pub s: u32,
    pub a: BigRational,
    pub b: HReal,
    /// True when no symbolic coefficient is available for this residue class
    /// and the split collapsed to a = 0, b = zeta(s).
    pub degenerate: bool,
}

/// Lerch-series cutoff for a decimal-digit target: ceil(D ln10 / 2 pi) + 4.
pub fn default_lerch_cutoff(digits: u32) -> u64 {
    (digits as u64 * 366_453).div_ceil(1_000_000) + 4
}

fn target_reached(v: &HReal, digits: u32) -> bool {
    v.err_le_pow10(digits + 2)
}

/// Stop threshold for asymptotic correction loops, in ulps of 2^-wp:
/// a term whose magnitude is below 10^-(digits+3) no longer matters.
fn stop_ulps(wp: u32, digits: u32) -> BigUint {
    let thr = (BigUint::one() << wp as u64) / BigUint::from(10u32).pow(digits + 3);
    thr.max(BigUint::from(4u32))
}

/// One Euler–Maclaurin pass for integer s at fixed parameters.
/// Returns None if the correction terms stop decreasing before reaching the
/// target (N too small for this precision).
fn zeta_em_int_once(s: u32, big_n: u64, wp: u32, digits: u32) -> Option<HReal> {
    let mut partial = BigInt::zero();
    for j in 1..big_n {
        partial += (BigInt::one() << wp as u64) / BigInt::from(BigUint::from(j).pow(s));
    }
    let mut acc = HReal::from_parts(partial, BigUint::from(big_n), wp);

    let n_pow_s1 = BigUint::from(big_n).pow(s - 1);
    let n_pow_s = &n_pow_s1 * big_n;
    // N^{1-s}/(s-1) + N^{-s}/2
    acc = acc.add(&HReal::from_ratio(
        &BigRational::new(BigInt::one(), BigInt::from(&n_pow_s1 * (s as u64 - 1))),
        wp,
    ));
    acc = acc.add(&HReal::from_ratio(
        &BigRational::new(BigInt::one(), BigInt::from(&n_pow_s << 1u32)),
        wp,
    ));

    // Correction terms B_{2k}/(2k)! (s)_{2k-1} N^{1-s-2k}.
    let mut bern = bernoulli_even_list(24);
    let mut poch = BigUint::from(s); // (s)_{2k-1}
    let mut fact2k = BigUint::from(2u32); // (2k)!
    let mut npow = &n_pow_s1 * (big_n * big_n); // N^{s+2k-1}
    let n2 = BigUint::from(big_n) * big_n;
    let thr = stop_ulps(wp, digits);
    let mut prev_hi: Option<BigUint> = None;
    let mut k = 1usize;
    loop {
        if k >= bern.len() {
            bern = bernoulli_even_list(bern.len() * 2);
        }
        let term = HReal::from_ratio(&bern[k], wp)
            .mul_bigint(&BigInt::from(poch.clone()))
            .div_bigint(&BigInt::from(&fact2k * &npow))
            .expect("positive denominator");
        let hi = term.abs_hi_ulps();
        if hi <= thr {
            // Remainder of the asymptotic series is bounded by the first
            // omitted term for real s.
            acc.add_err_ulps(hi * 2u32 + 4u32);
            return Some(acc);
        }
        if let Some(p) = &prev_hi {
            if &hi > p {
                return None;
            }
        }
        prev_hi = Some(hi);
        acc = acc.add(&term);
        // Advance k -> k+1.
        let two_k = 2 * k as u64;
        poch *= (s as u64 + two_k - 1) * (s as u64 + two_k);
        fact2k *= (two_k + 1) * (two_k + 2);
        npow *= &n2;
        k += 1;
    }
}

/// zeta(s) for integer s >= 2 by Euler–Maclaurin-corrected direct summation.
///
/// Serves as the independent oracle for every formula route in this module.
pub fn zeta_direct(s: u32, digits: u32) -> Result<ZetaResult> {
    if s < 2 {
        return Err(Error::InvalidArgument("zeta_direct requires s >= 2"));
    }
    let prec = digits_to_prec(digits);
    let mut big_n = (2 * digits as u64 + 8).max(16);
    let mut wp = prec + 48;
    for _ in 0..5 {
        if let Some(v) = zeta_em_int_once(s, big_n, wp, digits) {
            if target_reached(&v, digits) {
                return Ok(ZetaResult {
                    s,
                    value: v.with_prec(prec),
                    method: ZetaMethod::Direct,
                    truncation: big_n,
                });
            }
            wp += wp / 2;
        } else {
            big_n *= 2;
        }
    }
    Err(Error::InsufficientPrecision)
}

/// Euler–Maclaurin evaluation of zeta at a real argument, including the
/// analytic continuation left of s = 1 (valid while the correction depth
/// keeps sigma + 2K + 1 positive, which the term loop enforces).
///
/// Rejects arguments whose ball contains 1.
pub fn zeta_em_real(s: &HReal, digits: u32) -> Result<HReal> {
    let prec = digits_to_prec(digits);
    let one_s = HReal::one(s.prec());
    if !s.sub(&one_s).provably_nonzero(4) {
        return Err(Error::NearSingularity);
    }
    // Magnitude cushion: in the continuation region the partial sums grow
    // like N^{|sigma|+1} and cancel against the integral term.
    let sigma_lo = s.lo_rational();
    let neg_mag: u64 = if sigma_lo < BigRational::zero() {
        (-sigma_lo.clone())
            .ceil()
            .to_integer()
            .magnitude()
            .try_into()
            .unwrap_or(64)
    } else {
        0
    };
    let extra_bits = (neg_mag as u32 + 2) * 24;
    // Minimum correction depth so the remainder bound applies: 2k+1 > 1 - sigma.
    let k_min = (neg_mag as usize) / 2 + 2;

    let mut big_n = (2 * digits as u64 + 8).max(16);
    let mut wp = prec + 64 + extra_bits;
    'attempt: for _ in 0..5 {
        let sw = s.with_prec(wp);
        let neg_s = sw.neg();
        let mut acc = HReal::one(wp); // j = 1 term
        for j in 2..big_n {
            let lnj = HReal::from_int(j as i64, wp).ln().expect("j >= 2");
            acc = acc.add(&neg_s.mul(&lnj).exp());
        }
        let ln_n = HReal::from_int(big_n as i64, wp).ln().expect("N >= 2");
        let one = HReal::one(wp);
        // N^{1-s}/(s-1)
        let integral = one
            .sub(&sw)
            .mul(&ln_n)
            .exp()
            .div(&sw.sub(&one))
            .expect("s != 1 checked");
        acc = acc.add(&integral);
        // N^{-s}/2
        let n_neg_s = neg_s.mul(&ln_n).exp();
        acc = acc.add(&n_neg_s.scale2(-1));

        let mut bern = bernoulli_even_list(24);
        let mut fact2k = BigUint::from(2u32);
        let mut poch = sw.clone(); // (s)_{2k-1}
        let mut npow = n_neg_s.div_uint(big_n); // N^{1-s-2k} at k = 1
        let n2 = big_n * big_n;
        let thr = stop_ulps(wp, digits);
        let mut prev_hi: Option<BigUint> = None;
        let mut k = 1usize;
        loop {
            if k >= bern.len() {
                bern = bernoulli_even_list(bern.len() * 2);
            }
            let term = HReal::from_ratio(&bern[k], wp)
                .div_bigint(&BigInt::from(fact2k.clone()))
                .expect("factorial nonzero")
                .mul(&poch)
                .mul(&npow);
            let hi = term.abs_hi_ulps();
            if k >= k_min && hi <= thr {
                acc.add_err_ulps(hi * 2u32 + 4u32);
                if target_reached(&acc, digits) {
                    return Ok(acc.with_prec(prec));
                }
                wp += wp / 2;
                continue 'attempt;
            }
            if k > k_min {
                if let Some(p) = &prev_hi {
                    if &hi > p {
                        big_n *= 2;
                        continue 'attempt;
                    }
                }
            }
            prev_hi = Some(hi);
            acc = acc.add(&term);
            let two_k = 2 * k as i64;
            poch = poch
                .mul(&sw.add(&HReal::from_int(two_k - 1, wp)))
                .mul(&sw.add(&HReal::from_int(two_k, wp)));
            fact2k *= (two_k as u64 + 1) * (two_k as u64 + 2);
            npow = npow.div_uint(n2);
            k += 1;
        }
    }
    Err(Error::InsufficientPrecision)
}

/// zeta(2n) as the exact rational multiple of pi^{2n}, evaluated to the
/// requested number of digits.
pub fn zeta_even_exact(n: u32, digits: u32) -> Result<ZetaResult> {
    if n < 1 {
        return Err(Error::InvalidArgument("zeta_even_exact requires n >= 1"));
    }
    let prec = digits_to_prec(digits);
    let coeff = even_zeta_coeff(n);
    let mut wp = prec + 48;
    for _ in 0..4 {
        let v = HReal::from_ratio(&coeff, wp).mul(&pi(wp).pow_u32(2 * n));
        if target_reached(&v, digits) {
            return Ok(ZetaResult {
                s: 2 * n,
                value: v.with_prec(prec),
                method: ZetaMethod::EulerEven,
                truncation: 0,
            });
        }
        wp += wp / 2;
    }
    Err(Error::InsufficientPrecision)
}

/// Truncated exponential series sum_{m=1}^{M} 1/(m^s (e^{2 pi m} -+ 1)),
/// with the certified tail bound 2 e^{-2 pi (M+1)} folded into the radius.
pub fn lerch_tail(s: u32, sign: TailSign, cutoff: u64, prec: u32) -> Result<HReal> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::InvalidArgument("lerch_tail requires odd s >= 3"));
    }
    let wp = prec + 48 + 2 * (64 - cutoff.leading_zeros());
    let q1 = pi(wp + 8).scale2(1).neg().exp(); // e^{-2 pi}
    let one = HReal::one(wp);
    let mut acc = HReal::zero(wp);
    let mut qm = one.clone();
    for m in 1..=cutoff {
        qm = qm.mul(&q1);
        let unit = match sign {
            TailSign::Minus => one.sub(&qm),
            TailSign::Plus => one.add(&qm),
        };
        let denom = unit.mul_bigint(&BigInt::from(BigUint::from(m).pow(s)));
        acc = acc.add(&qm.div(&denom)?);
    }
    let tail = qm.mul(&q1).scale2(1); // 2 e^{-2 pi (M+1)}
    acc.add_err_upper_of(&tail);
    Ok(acc.with_prec(prec))
}

/// zeta(s) for s = 3 (mod 4) via the one-series Lerch representation
/// a_n pi^s - 2 sum 1/(n^s (e^{2 pi n}-1)).
pub fn zeta_odd_lerch(s: u32, digits: u32) -> Result<ZetaResult> {
    zeta_odd_lerch_with_cutoff(s, digits, default_lerch_cutoff(digits))
}

/// [`zeta_odd_lerch`] with an explicit series cutoff.
pub fn zeta_odd_lerch_with_cutoff(s: u32, digits: u32, cutoff: u64) -> Result<ZetaResult> {
    if s % 4 != 3 {
        return Err(Error::WrongResidueClass { s });
    }
    let n = (s - 1) / 2;
    let a = lerch_leading_coeff(n)?;
    let prec = digits_to_prec(digits);
    let mut wp = prec + 48;
    for _ in 0..4 {
        let lead = HReal::from_ratio(&a, wp).mul(&pi(wp).pow_u32(s));
        let tail = lerch_tail(s, TailSign::Minus, cutoff, wp)?;
        let v = lead.sub(&tail.scale2(1));
        if target_reached(&v, digits) {
            return Ok(ZetaResult {
                s,
                value: v.with_prec(prec),
                method: ZetaMethod::Lerch4n3,
                truncation: cutoff,
            });
        }
        wp += wp / 2;
    }
    Err(Error::InsufficientPrecision)
}

/// zeta(5) = pi^5/294 - (72/35) T- - (2/35) T+ where T-+ are the two
/// exponential tail series.
pub fn zeta5_ramanujan(digits: u32) -> Result<ZetaResult> {
    zeta5_ramanujan_with_cutoff(digits, default_lerch_cutoff(digits))
}

/// [`zeta5_ramanujan`] with an explicit series cutoff.
pub fn zeta5_ramanujan_with_cutoff(digits: u32, cutoff: u64) -> Result<ZetaResult> {
    let prec = digits_to_prec(digits);
    let c_lead = BigRational::new(BigInt::one(), BigInt::from(294));
    let c_minus = BigRational::new(BigInt::from(72), BigInt::from(35));
    let c_plus = BigRational::new(BigInt::from(2), BigInt::from(35));
    let mut wp = prec + 48;
    for _ in 0..4 {
        let lead = HReal::from_ratio(&c_lead, wp).mul(&pi(wp).pow_u32(5));
        let t_minus = lerch_tail(5, TailSign::Minus, cutoff, wp)?;
        let t_plus = lerch_tail(5, TailSign::Plus, cutoff, wp)?;
        let v = lead
            .sub(&t_minus.mul(&HReal::from_ratio(&c_minus, wp)))
            .sub(&t_plus.mul(&HReal::from_ratio(&c_plus, wp)));
        if target_reached(&v, digits) {
            return Ok(ZetaResult {
                s: 5,
                value: v.with_prec(prec),
                method: ZetaMethod::Ramanujan5,
                truncation: cutoff,
            });
        }
        wp += wp / 2;
    }
    Err(Error::InsufficientPrecision)
}

/// Best available route for a given integer argument.
pub fn zeta_auto(s: u32, digits: u32) -> Result<ZetaResult> {
    if s < 2 {
        return Err(Error::InvalidArgument("zeta requires s >= 2"));
    }
    if s.is_multiple_of(2) {
        zeta_even_exact(s / 2, digits)
    } else if s == 5 {
        zeta5_ramanujan(digits)
    } else if s % 4 == 3 {
        zeta_odd_lerch(s, digits)
    } else {
        zeta_direct(s, digits)
    }
}

/// The pi-representation zeta(s) = a pi^s + b for odd s >= 3.
///
/// For s = 3 (mod 4) and s = 5 the rational coefficient comes from the
/// Lerch/Ramanujan formulas. For other s = 1 (mod 4) no symbolic coefficient
/// is implemented and the split degenerates to a = 0, b = zeta(s), flagged.
pub fn pi_split(s: u32, digits: u32) -> Result<PiSplit> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::InvalidArgument("pi_split requires odd s >= 3"));
    }
    let prec = digits_to_prec(digits);
    let cutoff = default_lerch_cutoff(digits);
    let wp = prec + 48;
    if s % 4 == 3 {
        let a = lerch_leading_coeff((s - 1) / 2)?;
        let b = lerch_tail(s, TailSign::Minus, cutoff, wp)?.scale2(1).neg();
        Ok(PiSplit {
            s,
            a,
            b: b.with_prec(prec),
            degenerate: false,
        })
    } else if s == 5 {
        let a = BigRational::new(BigInt::one(), BigInt::from(294));
        let c_minus = BigRational::new(BigInt::from(72), BigInt::from(35));
        let c_plus = BigRational::new(BigInt::from(2), BigInt::from(35));
        let t_minus = lerch_tail(5, TailSign::Minus, cutoff, wp)?;
        let t_plus = lerch_tail(5, TailSign::Plus, cutoff, wp)?;
        let b = t_minus
            .mul(&HReal::from_ratio(&c_minus, wp))
            .add(&t_plus.mul(&HReal::from_ratio(&c_plus, wp)))
            .neg();
        Ok(PiSplit {
            s,
            a,
            b: b.with_prec(prec),
            degenerate: false,
        })
    } else {
        let z = zeta_direct(s, digits)?;
        Ok(PiSplit {
            s,
            a: BigRational::zero(),
            b: z.value,
            degenerate: true,
        })
    }
}

/// The split zeta(s) = a pi^s + b for a caller-supplied rational coefficient:
/// b is computed numerically as zeta(s) - a pi^s.
pub fn pi_split_with_coeff(s: u32, a: &BigRational, digits: u32) -> Result<PiSplit> {
    if s < 3 || s.is_multiple_of(2) {
        return Err(Error::InvalidArgument("pi_split requires odd s >= 3"));
    }
    let prec = digits_to_prec(digits);
    let wp = prec + 48;
    let z = zeta_auto(s, digits + 4)?;
    let b = z
        .value
        .sub(&HReal::from_ratio(a, wp).mul(&pi(wp).pow_u32(s)));
    Ok(PiSplit {
        s,
        a: a.clone(),
        b: b.with_prec(prec),
        degenerate: false,
    })
}

/// sigma_s(n) = sum of d^s over divisors d of n.
fn divisor_power_sum(n: u64, s: u32) -> BigUint {
    let mut acc = BigUint::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            acc += BigUint::from(d).pow(s);
        }
    }
    acc
}

/// sum_{n>=1} sigma_{-s}(n) e^{-2 pi n} with a certified tail bound
/// zeta(s) e^{-2 pi (M+1)} / (1 - e^{-2 pi}); the n = 0 term is excluded.
///
/// By the Lambert-series rearrangement this equals `lerch_tail(s, Minus)`;
/// the two sides are computed from different series, which makes the
/// equality a genuine cross-check.
pub fn sigma_divisor_series(s: u32, prec: u32) -> Result<HReal> {
    let digits_equiv = (prec as u64 * 30_103 / 100_000) as u32 + 2;
    sigma_divisor_series_with_cutoff(s, prec, default_lerch_cutoff(digits_equiv))
}

/// [`sigma_divisor_series`] with an explicit cutoff.
pub fn sigma_divisor_series_with_cutoff(s: u32, prec: u32, cutoff: u64) -> Result<HReal> {
    if s < 2 {
        return Err(Error::InvalidArgument(
            "sigma_divisor_series requires s >= 2",
        ));
    }
    let wp = prec + 48 + 2 * (64 - cutoff.leading_zeros());
    let q1 = pi(wp + 8).scale2(1).neg().exp();
    let mut acc = HReal::zero(wp);
    let mut qn = HReal::one(wp);
    for n in 1..=cutoff {
        qn = qn.mul(&q1);
        let coeff = BigRational::new(
            BigInt::from(divisor_power_sum(n, s)),
            BigInt::from(BigUint::from(n).pow(s)),
        );
        acc = acc.add(&qn.mul(&HReal::from_ratio(&coeff, wp)));
    }
    // zeta(s) <= zeta(2) < 5/3; tail <= (5/3) q^{M+1} / (1 - q).
    let one = HReal::one(wp);
    let five_thirds = BigRational::new(BigInt::from(5), BigInt::from(3));
    let tail = qn
        .mul(&q1)
        .div(&one.sub(&q1))?
        .mul(&HReal::from_ratio(&five_thirds, wp));
    acc.add_err_upper_of(&tail);
    Ok(acc.with_prec(prec))
}

/// Closed form for zeta'(-2n): the differentiated functional equation
/// reduces at s = -2n to (-1)^n (2n)! zeta(2n+1) / (2 (2 pi)^{2n}).
pub fn zeta_deriv_neg_even(n: u32, digits: u32) -> Result<HReal> {
    if n < 1 {
        return Err(Error::InvalidArgument("requires n >= 1"));
    }
    let prec = digits_to_prec(digits);
    let wp = prec + 48;
    let z = zeta_auto(2 * n + 1, digits + 6)?;
    let fact = BigInt::from(factorial(2 * n as u64));
    let sign = if n % 2 == 1 {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let two_pi_pow = pi(wp).scale2(1).pow_u32(2 * n);
    let v = z
        .value
        .mul_bigint(&(sign * fact))
        .div(&two_pi_pow)?
        .scale2(-1);
    if !target_reached(&v, digits) {
        return Err(Error::InsufficientPrecision);
    }
    Ok(v.with_prec(prec))
}

/// Differentiation oracle for zeta'(-2n): central differences of the
/// Euler–Maclaurin continuation with two Richardson levels. The O(h^6)
/// method error is estimated from the last Richardson gap and folded into
/// the radius.
pub fn zeta_deriv_neg_even_numeric(n: u32, digits: u32) -> Result<HReal> {
    if n < 1 {
        return Err(Error::InvalidArgument("requires n >= 1"));
    }
    let prec = digits_to_prec(digits);
    // h = 2^-hb shrinks with the target so the h^4 Richardson gap stays
    // below it; the division by 2h amplifies the evaluation error by 2^hb,
    // so the inner digit target grows accordingly.
    let hb: i64 = (84 * digits as i64) / 100 + 10;
    let work_digits = digits + (hb as u32 * 31) / 100 + 14;
    let wp = digits_to_prec(work_digits) + 64;

    let point = -2 * (n as i64);
    let g = |shift_bits: i64| -> Result<HReal> {
        let h = HReal::from_parts(
            BigInt::one() << (wp as i64 - shift_bits) as u64,
            BigUint::zero(),
            wp,
        );
        let base = HReal::from_int(point, wp);
        let up = zeta_em_real(&base.add(&h), work_digits)?;
        let down = zeta_em_real(&base.sub(&h), work_digits)?;
        // (up - down) / (2h) = (up - down) * 2^{shift_bits - 1}
        Ok(up.sub(&down).scale2(shift_bits - 1))
    };
    let g1 = g(hb)?;
    let g2 = g(hb + 1)?;
    let g3 = g(hb + 2)?;
    let r1 = g2.scale2(2).sub(&g1).div_uint(3);
    let r2 = g3.scale2(2).sub(&g2).div_uint(3);
    let mut rr = r2.scale2(4).sub(&r1).div_uint(15);
    let gap = rr.sub(&r2);
    rr.add_err_upper_of(&gap);
    if !target_reached(&rr, digits) {
        return Err(Error::InsufficientPrecision);
    }
    Ok(rr.with_prec(prec))
}

/// Direct evaluation of the Dirichlet beta function L(s, chi_4) by
/// Euler–Maclaurin on f(x) = (4x+1)^{-s} - (4x+3)^{-s}; the oracle for the
/// Euler-number coefficient formula.
pub fn dirichlet_beta_direct(s: u32, digits: u32) -> Result<HReal> {
    if s < 1 {
        return Err(Error::InvalidArgument("requires s >= 1"));
    }
    let prec = digits_to_prec(digits);
    let mut wp = prec + 48;
    let mut big_n = (2 * digits as u64 + 8).max(16);
    'attempt: for _ in 0..5 {
        let mut acc = HReal::zero(wp);
        for j in 0..big_n {
            let a = BigInt::from(BigUint::from(4 * j + 1).pow(s));
            let b = BigInt::from(BigUint::from(4 * j + 3).pow(s));
            acc = acc.add(&HReal::from_ratio(&BigRational::new(&b - &a, a * b), wp));
        }
        let n1 = BigUint::from(4 * big_n + 1);
        let n3 = BigUint::from(4 * big_n + 3);
        // Integral term of the remainder.
        if s == 1 {
            let quot = BigRational::new(BigInt::from(n3.clone()), BigInt::from(n1.clone()));
            acc = acc.add(&HReal::from_ratio(&quot, wp).ln()?.div_uint(4));
        } else {
            let a = BigInt::from(n1.pow(s - 1));
            let b = BigInt::from(n3.pow(s - 1));
            let integral = BigRational::new(&b - &a, a * b * BigInt::from(4 * (s as u64 - 1)));
            acc = acc.add(&HReal::from_ratio(&integral, wp));
        }
        // f(N)/2.
        {
            let a = BigInt::from(n1.pow(s));
            let b = BigInt::from(n3.pow(s));
            acc = acc.add(&HReal::from_ratio(
                &BigRational::new(&b - &a, (a * b) << 1u32),
                wp,
            ));
        }
        // Corrections B_{2k}/(2k)! (s)_{2k-1} 4^{2k-1} [(4N+1)^{1-s-2k} - (4N+3)^{1-s-2k}].
        let mut bern = bernoulli_even_list(24);
        let mut fact2k = BigUint::from(2u32);
        let mut poch = BigUint::from(s);
        let mut apow = BigInt::from(n1.pow(s + 1));
        let mut bpow = BigInt::from(n3.pow(s + 1));
        let a2 = BigInt::from(n1.pow(2));
        let b2 = BigInt::from(n3.pow(2));
        let mut pw4 = BigUint::from(4u32);
        let thr = stop_ulps(wp, digits);
        let mut prev_hi: Option<BigUint> = None;
        let mut k = 1usize;
        loop {
            if k >= bern.len() {
                bern = bernoulli_even_list(bern.len() * 2);
            }
            let bracket = BigRational::new(&bpow - &apow, &apow * &bpow);
            let term = HReal::from_ratio(&(&bern[k] * bracket), wp)
                .mul_bigint(&BigInt::from(&poch * &pw4))
                .div_bigint(&BigInt::from(fact2k.clone()))
                .expect("factorial nonzero");
            let hi = term.abs_hi_ulps();
            if hi <= thr {
                acc.add_err_ulps(hi * 2u32 + 4u32);
                if target_reached(&acc, digits) {
                    return Ok(acc.with_prec(prec));
                }
                wp += wp / 2;
                continue 'attempt;
            }
            if let Some(p) = &prev_hi {
                if &hi > p {
                    big_n *= 2;
                    continue 'attempt;
                }
            }
            prev_hi = Some(hi);
            acc = acc.add(&term);
            let two_k = 2 * k as u64;
            poch *= (s as u64 + two_k - 1) * (s as u64 + two_k);
            fact2k *= (two_k + 1) * (two_k + 2);
            pw4 *= 16u32;
            apow *= &a2;
            bpow *= &b2;
            k += 1;
        }
    }
    Err(Error::InsufficientPrecision)
}

/// The coefficient formula's value r pi^{2n+1} for L(2n+1, chi_4)
/// (convenience for cross-checks against [`dirichlet_beta_direct`]).
pub fn beta_from_coeff(n: u32, digits: u32) -> HReal {
    let prec = digits_to_prec(digits);
    let wp = prec + 48;
    HReal::from_ratio(&dirichlet_beta_coeff(n), wp)
        .mul(&pi(wp).pow_u32(2 * n + 1))
        .with_prec(prec)
}
