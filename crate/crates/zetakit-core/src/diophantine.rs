//! Certified continued fractions and the Diophantine approximation checks.
//!
//! Expansion works on the exact rational interval [center - radius,
//! center + radius] of the input ball. A partial quotient is emitted only
//! when both endpoints agree on it, so every emitted quotient is correct for
//! every real the ball may represent; the expansion stops the moment the
//! interval stops deciding, and the caller escalates precision if it wants
//! more terms. No floating point enters the state, so there is nothing to
//! compound.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::BigRational;
use crate::real::HReal;

/// Mandatory wording for exclusion reports: numerics can only ever exclude
/// finitely many rationals.
pub const EXCLUSION_NOTE: &str =
    "numerical exclusion at the stated precision; not a proof of irrationality";

/// A certified continued-fraction prefix with its convergents.
#[derive(Clone, Debug)]
pub struct ContinuedFraction {
    /// What was expanded (e.g. "pi", "zeta3/pi^3").
    pub label: String,
    /// Certified partial quotients a_0, a_1, ...
    pub quotients: Vec<BigInt>,
    /// (p_n, q_n) for each certified quotient.
    pub convergents: Vec<(BigInt, BigInt)>,
    /// Number of quotients guaranteed correct at the precision used.
    pub certified_terms: usize,
    /// True when the input was an exact rational and the expansion ended.
    pub terminated: bool,
}

impl ContinuedFraction {
    pub fn convergent(&self, n: usize) -> Option<(&BigInt, &BigInt)> {
        self.convergents.get(n).map(|(p, q)| (p, q))
    }
}

enum CfStop {
    MaxTerms,
    /// Endpoint floors disagreed; the transformed interval at that depth is
    /// kept for simplest-rational analysis.
    Diverged {
        xlo: BigRational,
        xhi: BigRational,
    },
    /// The lower endpoint hit the just-emitted convergent exactly.
    LowerEndpointHit,
    /// Exact rational input fully expanded.
    Terminated,
}

struct CfCore {
    cf: ContinuedFraction,
    stop: CfStop,
}

fn cf_core(
    label: &str,
    lo0: BigRational,
    hi0: BigRational,
    max_terms: usize,
    q_stop: Option<&BigUint>,
) -> CfCore {
    debug_assert!(lo0 <= hi0);
    let exact = lo0 == hi0;
    let mut lo = lo0;
    let mut hi = hi0;
    let mut quotients = Vec::new();
    let mut convergents: Vec<(BigInt, BigInt)> = Vec::new();
    let mut p_prev = BigInt::one();
    let mut p_prev2 = BigInt::zero();
    let mut q_prev = BigInt::zero();
    let mut q_prev2 = BigInt::one();
    let mut stop = CfStop::MaxTerms;

    while quotients.len() < max_terms {
        let a_lo = lo.floor().to_integer();
        let a_hi = hi.floor().to_integer();
        if a_lo != a_hi {
            stop = CfStop::Diverged { xlo: lo, xhi: hi };
            break;
        }
        let a = a_lo;
        let p = &a * &p_prev + &p_prev2;
        let q = &a * &q_prev + &q_prev2;
        p_prev2 = core::mem::replace(&mut p_prev, p.clone());
        q_prev2 = core::mem::replace(&mut q_prev, q.clone());
        quotients.push(a.clone());
        convergents.push((p, q.clone()));

        if let Some(limit) = q_stop {
            if q.magnitude() > limit {
                break;
            }
        }

        let a_rat = BigRational::new(a, BigInt::one());
        let flo = &lo - &a_rat;
        let fhi = &hi - &a_rat;
        if flo.is_zero() {
            stop = if exact {
                CfStop::Terminated
            } else {
                CfStop::LowerEndpointHit
            };
            break;
        }
        // Invert and swap: the next tail lies in [1/fhi, 1/flo].
        lo = fhi.recip();
        hi = flo.recip();
    }

    let certified_terms = quotients.len();
    CfCore {
        cf: ContinuedFraction {
            label: label.to_string(),
            quotients,
            convergents,
            certified_terms,
            terminated: matches!(stop, CfStop::Terminated),
        },
        stop,
    }
}

/// Expands the continued fraction of a ball, emitting only quotients that
/// are certified against the ball's radius.
///
/// Fails if not even a_0 is determined.
pub fn cf_expand(label: &str, alpha: &HReal, max_terms: usize) -> Result<ContinuedFraction> {
    let out = cf_core(
        label,
        alpha.lo_rational(),
        alpha.hi_rational(),
        max_terms,
        None,
    );
    if out.cf.certified_terms == 0 {
        return Err(Error::InsufficientPrecision);
    }
    Ok(out.cf)
}

/// Continued fraction of an exact rational; always terminates with the
/// canonical finite expansion.
pub fn cf_expand_rational(label: &str, r: &BigRational, max_terms: usize) -> ContinuedFraction {
    cf_core(label, r.clone(), r.clone(), max_terms, None).cf
}

/// One row of the two-sided inequality report:
/// 1/(2 q_{n+1}) <= |alpha q_n - p_n| <= 1/q_n.
#[derive(Clone, Debug)]
pub struct DiophCheck {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// Certified enclosure of |alpha q_n - p_n|.
    pub residual_lo: BigRational,
    pub residual_hi: BigRational,
    /// 1/(2 q_{n+1}).
    pub lower: BigRational,
    /// 1/q_n.
    pub upper: BigRational,
    pub pass: bool,
}

/// Verifies the two-sided inequality rigorously at every index with a
/// certified successor quotient, using the exact interval of alpha.
///
/// Fails with `InsufficientPrecision` if any comparison straddles a bound.
pub fn check_two_sided_inequality(
    cf: &ContinuedFraction,
    alpha: &HReal,
) -> Result<Vec<DiophCheck>> {
    let lo = alpha.lo_rational();
    let hi = alpha.hi_rational();
    let mut out = Vec::new();
    if cf.certified_terms < 2 {
        return Ok(out);
    }
    for n in 0..cf.certified_terms - 1 {
        let (p, q) = &cf.convergents[n];
        let (_, q_next) = &cf.convergents[n + 1];
        let p_rat = BigRational::new(p.clone(), BigInt::one());
        let r_lo = &lo * q - &p_rat;
        let r_hi = &hi * q - &p_rat;
        let (abs_lo, abs_hi) = if !r_lo.is_negative() {
            (r_lo, r_hi)
        } else if !r_hi.is_positive() {
            (-r_hi, -r_lo)
        } else {
            return Err(Error::InsufficientPrecision);
        };
        let lower = BigRational::new(BigInt::one(), q_next << 1u32);
        let upper = BigRational::new(BigInt::one(), q.clone());
        let pass = lower <= abs_lo && abs_hi <= upper;
        if !pass && !(abs_hi < lower || abs_lo > upper) {
            // Neither certainly true nor certainly false.
            return Err(Error::InsufficientPrecision);
        }
        out.push(DiophCheck {
            index: n,
            p: p.clone(),
            q: q.clone(),
            residual_lo: abs_lo,
            residual_hi: abs_hi,
            lower,
            upper,
            pass,
        });
    }
    Ok(out)
}

/// Result of the exhaustive best-approximation scan at one convergent.
#[derive(Clone, Debug)]
pub struct BestApproxCheck {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// Number of integers k scanned (= q_n).
    pub scanned: u64,
    pub pass: bool,
}

/// Verifies by exhaustive scan over 1 <= k <= q_n that the distance of
/// k alpha to the nearest integer is minimized at k = q_n
/// (with m always the nearest integer to k alpha).
///
/// Requires q_n <= 10^6.
pub fn best_approx_bruteforce(
    alpha: &HReal,
    cf: &ContinuedFraction,
    n: usize,
) -> Result<BestApproxCheck> {
    let (p, q) = cf
        .convergent(n)
        .ok_or(Error::InvalidArgument("convergent index not certified"))?;
    let q_u =
        q.to_u64()
            .filter(|&v| (1..=1_000_000).contains(&v))
            .ok_or(Error::InvalidArgument(
                "convergent denominator outside brute-force range",
            ))?;

    let prec = alpha.prec();
    let modulus = BigInt::one() << prec as u64;
    let half: BigInt = &modulus >> 1u32;
    let m = alpha.mantissa().clone();
    let e = BigInt::from(alpha.err_ulps().clone());

    let mut y = BigInt::zero();
    let mut ek = BigInt::zero();
    let mut conv_interval: Option<(BigInt, BigInt)> = None;
    let mut min_other_lo: Option<BigInt> = None;
    let mut min_other_hi: Option<BigInt> = None;
    for k in 1..=q_u {
        y += &m;
        ek += &e;
        // Distance of k*alpha to the nearest integer, in 2^-prec units.
        let mut rem = &y % &modulus;
        if rem.is_negative() {
            rem += &modulus;
        }
        if rem > half {
            rem -= &modulus;
        }
        let d = rem.abs();
        let d_lo = if d > ek { &d - &ek } else { BigInt::zero() };
        let d_hi_raw = &d + &ek;
        let d_hi = if d_hi_raw > half {
            half.clone()
        } else {
            d_hi_raw
        };
        if k == q_u {
            conv_interval = Some((d_lo, d_hi));
        } else {
            if min_other_lo.as_ref().is_none_or(|v| &d_lo < v) {
                min_other_lo = Some(d_lo);
            }
            if min_other_hi.as_ref().is_none_or(|v| &d_hi < v) {
                min_other_hi = Some(d_hi);
            }
        }
    }
    let (c_lo, c_hi) = conv_interval.expect("loop ran at least once");
    let pass = match (&min_other_lo, &min_other_hi) {
        (None, _) => true, // q_n = 1: single candidate
        (Some(other_lo), Some(other_hi)) => {
            if &c_hi <= other_lo {
                true
            } else if other_hi < &c_lo {
                false
            } else {
                return Err(Error::InsufficientPrecision);
            }
        }
        _ => unreachable!(),
    };
    Ok(BestApproxCheck {
        index: n,
        p: p.clone(),
        q: q.clone(),
        scanned: q_u,
        pass,
    })
}

/// Outcome of a bounded-denominator rational exclusion.
#[derive(Clone, Debug)]
pub struct ExclusionReport {
    pub label: String,
    pub denominator_bound: BigUint,
    /// Certified radius of the input ball.
    pub epsilon: BigRational,
    /// Certified quotients consumed by the search.
    pub quotients_used: usize,
    /// The minimal-denominator rational inside the ball, when its
    /// denominator is within the bound.
    pub found: Option<BigRational>,
    /// Always [`EXCLUSION_NOTE`]: this is a finite search, not a proof.
    pub note: &'static str,
}

/// Searches for any rational A/B' with B' <= bound inside the certified
/// interval of alpha.
///
/// Every real in the interval shares the certified quotient prefix, so any
/// rational inside either extends that prefix (denominator above the last
/// certified q_n) or is the minimal-denominator completion at the point
/// where the interval stops deciding. The search therefore terminates with
/// either that rational or a certified exclusion.
///
/// Requires epsilon * bound^2 < 1/4.
pub fn rational_exclusion(label: &str, alpha: &HReal, bound: &BigUint) -> Result<ExclusionReport> {
    if bound.is_zero() {
        return Err(Error::InvalidArgument("denominator bound must be positive"));
    }
    // err * B^2 * 4 < 2^prec  <=>  eps * B^2 < 1/4
    let lhs = alpha.err_ulps() * bound * bound * 4u32;
    if lhs >= (BigUint::one() << alpha.prec() as u64) {
        return Err(Error::InsufficientPrecision);
    }
    let epsilon = BigRational::new(
        BigInt::from(alpha.err_ulps().clone()),
        BigInt::one() << alpha.prec() as u64,
    );

    let out = cf_core(
        label,
        alpha.lo_rational(),
        alpha.hi_rational(),
        usize::MAX,
        Some(bound),
    );
    let cf = &out.cf;
    let report = |found: Option<BigRational>, used: usize| ExclusionReport {
        label: label.to_string(),
        denominator_bound: bound.clone(),
        epsilon: epsilon.clone(),
        quotients_used: used,
        found,
        note: EXCLUSION_NOTE,
    };

    let candidate = match &out.stop {
        CfStop::MaxTerms => {
            // Stopped because the last certified denominator exceeded the
            // bound: any rational in the interval is at least that deep.
            let (_, q_last) = cf.convergents.last().ok_or(Error::InsufficientPrecision)?;
            if q_last.magnitude() > bound {
                return Ok(report(None, cf.certified_terms));
            }
            return Err(Error::InsufficientPrecision);
        }
        CfStop::Terminated | CfStop::LowerEndpointHit => {
            // The last convergent itself lies in the interval.
            let (p, q) = cf.convergents.last().ok_or(Error::InsufficientPrecision)?;
            BigRational::new(p.clone(), q.clone())
        }
        CfStop::Diverged { xlo, xhi } => {
            // Simplest rational in the interval: complete the certified
            // prefix with the smallest integer the tail interval allows.
            let depth = cf.certified_terms;
            let a = xlo.ceil().to_integer();
            debug_assert!(BigRational::new(a.clone(), BigInt::one()) <= *xhi);
            let (p1, q1, p2, q2) = if depth == 0 {
                (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
            } else if depth == 1 {
                let (p, q) = &cf.convergents[0];
                (p.clone(), q.clone(), BigInt::one(), BigInt::zero())
            } else {
                let (p, q) = &cf.convergents[depth - 1];
                let (pp, qq) = &cf.convergents[depth - 2];
                (p.clone(), q.clone(), pp.clone(), qq.clone())
            };
            BigRational::new(&a * p1 + p2, &a * q1 + q2)
        }
    };
    if candidate.denom().magnitude() <= bound {
        Ok(report(Some(candidate), cf.certified_terms))
    } else {
        Ok(report(None, cf.certified_terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::pi;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_prefix_quotients() {
        let cf = cf_expand("pi", &pi(256), 13).unwrap();
        let expect: Vec<i64> = alloc::vec![3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14];
        assert_eq!(cf.certified_terms, 13);
        assert!(!cf.terminated);
        for (q, e) in cf.quotients.iter().zip(expect.iter()) {
            assert_eq!(q, &BigInt::from(*e));
        }
        // First convergents of pi: 3/1, 22/7, 333/106, 355/113.
        assert_eq!(cf.convergents[1], (BigInt::from(22), BigInt::from(7)));
        assert_eq!(cf.convergents[3], (BigInt::from(355), BigInt::from(113)));
        assert_eq!(cf.convergents[4].1, BigInt::from(33102));
    }

    #[test]
    fn exact_rational_terminates() {
        let cf = cf_expand_rational("22/7", &rat(22, 7), 32);
        assert!(cf.terminated);
        assert_eq!(cf.quotients, alloc::vec![BigInt::from(3), BigInt::from(7)]);
        assert_eq!(
            cf.convergents.last().unwrap(),
            &(BigInt::from(22), BigInt::from(7))
        );
    }

    #[test]
    fn negative_rational_expansion() {
        // -7/3 = [-3; 1, 2]
        let cf = cf_expand_rational("-7/3", &rat(-7, 3), 8);
        assert!(cf.terminated);
        assert_eq!(
            cf.quotients,
            alloc::vec![BigInt::from(-3), BigInt::from(1), BigInt::from(2)]
        );
        let (p, q) = cf.convergents.last().unwrap();
        assert_eq!((p, q), (&BigInt::from(-7), &BigInt::from(3)));
    }

    #[test]
    fn sqrt2_quotients_all_two() {
        let s = HReal::from_int(2, 512).sqrt().unwrap();
        let cf = cf_expand("sqrt2", &s, 40).unwrap();
        assert_eq!(cf.certified_terms, 40);
        assert_eq!(cf.quotients[0], BigInt::from(1));
        for a in &cf.quotients[1..] {
            assert_eq!(a, &BigInt::from(2));
        }
    }

    #[test]
    fn recurrence_and_gcd_invariants() {
        let cf = cf_expand("pi", &pi(512), 40).unwrap();
        for n in 2..cf.certified_terms {
            let a = &cf.quotients[n];
            let (p, q) = &cf.convergents[n];
            let (p1, q1) = &cf.convergents[n - 1];
            let (p2, q2) = &cf.convergents[n - 2];
            assert_eq!(p, &(a * p1 + p2));
            assert_eq!(q, &(a * q1 + q2));
            assert!(q.is_positive());
            assert_eq!(num_integer::Integer::gcd(p, q), BigInt::one());
        }
    }

    #[test]
    fn convergents_alternate_around_alpha() {
        let alpha = pi(512);
        let cf = cf_expand("pi", &alpha, 30).unwrap();
        let lo = alpha.lo_rational();
        let hi = alpha.hi_rational();
        for n in 0..cf.certified_terms {
            let (p, q) = &cf.convergents[n];
            let conv = BigRational::new(p.clone(), q.clone());
            // sign(alpha - p_n/q_n) = (-1)^n, certified via the interval.
            if n % 2 == 0 {
                assert!(lo > conv, "even convergent not below at n = {n}");
            } else {
                assert!(hi < conv, "odd convergent not above at n = {n}");
            }
        }
    }

    #[test]
    fn certified_prefix_is_stable_under_doubling() {
        let a = cf_expand("pi", &pi(128), 60).unwrap();
        let b = cf_expand("pi", &pi(256), 60).unwrap();
        assert!(a.certified_terms <= b.certified_terms);
        for (x, y) in a.quotients.iter().zip(b.quotients.iter()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn wide_ball_fails_first_quotient() {
        let mut x = HReal::from_int(3, 64);
        x.add_err_pow2(1); // radius 2: floor not decided
        assert!(matches!(
            cf_expand("x", &x, 4),
            Err(Error::InsufficientPrecision)
        ));
    }

    #[test]
    fn two_sided_inequality_for_pi() {
        let alpha = pi(512);
        let cf = cf_expand("pi", &alpha, 30).unwrap();
        let checks = check_two_sided_inequality(&cf, &alpha).unwrap();
        assert_eq!(checks.len(), 29);
        for c in &checks {
            assert!(c.pass, "inequality fails at n = {}", c.index);
        }
        // n = 1: |7 pi - 22| ~ 0.00885, bounds 1/212 and 1/7.
        let c1 = &checks[1];
        assert_eq!(c1.q, BigInt::from(7));
        assert_eq!(c1.lower, rat(1, 212));
        assert_eq!(c1.upper, rat(1, 7));
        assert!(c1.residual_lo > rat(88, 10000) && c1.residual_hi < rat(89, 10000));
        // n = 3: |113 pi - 355| ~ 3.0144e-5 vs 1/(2*33102).
        let c3 = &checks[3];
        assert_eq!(c3.q, BigInt::from(113));
        assert_eq!(c3.lower, rat(1, 66204));
        assert!(c3.residual_lo > rat(30, 1_000_000) && c3.residual_hi < rat(31, 1_000_000));
    }

    #[test]
    fn best_approx_pi_small_convergents() {
        let alpha = pi(256);
        let cf = cf_expand("pi", &alpha, 10).unwrap();
        for n in 0..4 {
            let chk = best_approx_bruteforce(&alpha, &cf, n).unwrap();
            assert!(chk.pass, "best-approximation fails at n = {n}");
        }
        // n = 1 scans exactly k = 1..7.
        let chk = best_approx_bruteforce(&alpha, &cf, 1).unwrap();
        assert_eq!(chk.scanned, 7);
    }

    #[test]
    fn best_approx_trivial_at_index_zero() {
        // Fractional part above 1/2: the scan at n = 0 has a single
        // candidate and passes trivially.
        let alpha = HReal::from_ratio(&rat(8, 3), 128); // 2.666...
        let cf = cf_expand("8/3-ish", &alpha, 2).unwrap();
        let chk = best_approx_bruteforce(&alpha, &cf, 0).unwrap();
        assert!(chk.pass);
        assert_eq!(chk.scanned, 1);
    }

    #[test]
    fn exclusion_detects_embedded_rational() {
        let alpha = HReal::from_ratio(&rat(22, 7), 256);
        let rep = rational_exclusion("22/7", &alpha, &BigUint::from(10u32)).unwrap();
        assert_eq!(rep.found, Some(rat(22, 7)));
        assert_eq!(rep.note, EXCLUSION_NOTE);
    }

    #[test]
    fn exclusion_certifies_absence_for_pi() {
        let rep = rational_exclusion("pi", &pi(512), &BigUint::from(1_000_000u64)).unwrap();
        assert!(rep.found.is_none());
        assert!(rep.quotients_used >= 5);
    }

    #[test]
    fn exclusion_enforces_radius_precondition() {
        let mut x = HReal::from_int(1, 64);
        x.add_err_pow2(-8);
        let big = BigUint::from(10u64).pow(10);
        assert!(matches!(
            rational_exclusion("x", &x, &big),
            Err(Error::InsufficientPrecision)
        ));
    }

    #[test]
    fn exclusion_simplest_rational_at_divergence() {
        // Ball around 0.5 with radius 2^-20: the simplest rational inside
        // is exactly 1/2, found even though the CF of the ball diverges
        // immediately after a_0.
        let mut x = HReal::from_ratio(&rat(1, 2), 128);
        x.add_err_pow2(-20);
        let rep = rational_exclusion("half", &x, &BigUint::from(100u32)).unwrap();
        assert_eq!(rep.found, Some(rat(1, 2)));
    }
}
