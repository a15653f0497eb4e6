//! Dirichlet-kernel sums, normalized Weyl averages, and sine-nonvanishing
//! probes.
//!
//! The kernel identity sum_{-x<=n<=x} e^{i 2 t n} = sin((2x+1)t)/sin(t) is
//! exercised from both ends: a closed-form ball evaluation and brute-force
//! term summation (ball arithmetic up to 10^4 terms, compensated f64 beyond,
//! where high precision is not requested). Sine probes combine a direct
//! evaluation of sin(alpha k) with the convergent-derived lower bound
//! 1/v_{n+1} on its distance from zero.

use num_bigint::BigInt;

use crate::diophantine::ContinuedFraction;
use crate::error::{Error, Result};
use crate::real::{pi, HReal};

/// Safety factor for "provably nonzero": |center| must exceed 4 radii.
const NONZERO_MARGIN: u32 = 4;

/// Neumaier-compensated f64 accumulator.
#[derive(Default)]
struct CompensatedSum {
    s: f64,
    c: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if libm::fabs(self.s) >= libm::fabs(x) {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// One kernel-sum experiment record.
#[derive(Clone, Debug)]
pub struct WeylReport {
    pub t: HReal,
    pub x: u64,
    /// Brute-force sum (real part, diagnostic precision).
    pub brute_re: f64,
    /// Imaginary residual of the brute-force sum; symmetry says ~0.
    pub brute_im: f64,
    /// Bound on the brute-force summation error.
    pub brute_err: f64,
    /// Closed form sin((2x+1)t)/sin(t), rigorous.
    pub closed: HReal,
    /// |closed| / (2x), rigorous.
    pub normalized: HReal,
    /// 1 / (2x |sin t|), rigorous.
    pub bound: HReal,
}

/// sin((2x+1)t)/sin(t).
///
/// Fails with `NearSingularity` unless sin t is provably nonzero (margin 4);
/// at t = k pi the sum has no closed form of this shape (every term is 1 and
/// the sum is 2x+1).
pub fn dirichlet_kernel_closed(t: &HReal, x: u64) -> Result<HReal> {
    let sin_t = t.sin();
    if !sin_t.provably_nonzero(NONZERO_MARGIN) {
        return Err(Error::NearSingularity);
    }
    let big = t.mul_bigint(&BigInt::from(2 * x + 1)).sin();
    big.div(&sin_t)
}

/// Term-by-term ball summation of sum_{-x<=n<=x} e^{i 2 t n}.
///
/// Rotation recurrences widen their radii by up to |cos|+|sin| per step, so
/// both half-range recurrences re-anchor on a fresh sin/cos evaluation every
/// 128 steps; the two sides still accumulate rounding independently, which
/// is what makes the imaginary residual a meaningful symmetry check.
/// Requires x <= 10^6.
pub fn dirichlet_kernel_brute(t: &HReal, x: u64) -> Result<(HReal, HReal)> {
    if x > 1_000_000 {
        return Err(Error::InvalidArgument("brute-force range capped at 10^6"));
    }
    const CHECKPOINT: u64 = 128;
    let wp = t.prec() + 96;
    let two_t = t.with_prec(wp).scale2(1);
    let c0 = two_t.cos();
    let s0 = two_t.sin();
    let s0n = s0.neg();

    let mut re = HReal::one(wp); // n = 0
    let mut im = HReal::zero(wp);
    // Positive side: rotate by +2t; negative side: rotate by -2t.
    let (mut pr, mut pi_) = (HReal::one(wp), HReal::zero(wp));
    let (mut nr, mut ni) = (HReal::one(wp), HReal::zero(wp));
    for n in 1..=x {
        if n % CHECKPOINT == 0 {
            let ang_p = two_t.mul_bigint(&BigInt::from(n));
            pr = ang_p.cos();
            pi_ = ang_p.sin();
            let ang_n = two_t.mul_bigint(&BigInt::from(n)).neg();
            nr = ang_n.cos();
            ni = ang_n.sin();
        } else {
            let (a, b) = (
                pr.mul(&c0).sub(&pi_.mul(&s0)),
                pr.mul(&s0).add(&pi_.mul(&c0)),
            );
            pr = a;
            pi_ = b;
            let (a, b) = (
                nr.mul(&c0).sub(&ni.mul(&s0n)),
                nr.mul(&s0n).add(&ni.mul(&c0)),
            );
            nr = a;
            ni = b;
        }
        re = re.add(&pr).add(&nr);
        im = im.add(&pi_).add(&ni);
    }
    Ok((re, im))
}

/// Compensated-f64 brute force for large ranges. Returns (re, im, error
/// estimate); the estimate covers per-term libm accuracy and the growth of
/// the argument 2 t n.
pub fn dirichlet_kernel_brute_f64(t: f64, x: u64) -> (f64, f64, f64) {
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let mut err: f64 = 0.0;
    let u = f64::EPSILON / 2.0;
    for n in -(x as i64)..=(x as i64) {
        let arg = 2.0 * t * n as f64;
        re.add(libm::cos(arg));
        im.add(libm::sin(arg));
        err += u * (4.0 + libm::fabs(arg));
    }
    (re.value(), im.value(), err)
}

/// Kernel-sum experiment: closed form, normalized average, rigorous bound,
/// and a brute-force cross-value (ball arithmetic for x <= 10^4, compensated
/// f64 beyond).
pub fn weyl_average(t: &HReal, x: u64) -> Result<WeylReport> {
    if x == 0 {
        return Err(Error::InvalidArgument("weyl_average requires x >= 1"));
    }
    let sin_t = t.sin();
    if !sin_t.provably_nonzero(NONZERO_MARGIN) {
        return Err(Error::NearSingularity);
    }
    let closed = dirichlet_kernel_closed(t, x)?;
    let normalized = closed.abs().div_uint(2 * x);
    let bound = sin_t.abs().mul_int(2 * x as i64).recip()?;

    let (brute_re, brute_im, brute_err) = if x <= 10_000 {
        let (re, im) = dirichlet_kernel_brute(t, x)?;
        // Radius as a power of two, safe against f64 overflow of the ulp count.
        let err_bits = re.err_ulps().bits().max(im.err_ulps().bits()) as i64;
        let slack = libm::scalbn(2.0, (err_bits - re.prec() as i64).min(1000) as i32);
        (re.to_f64(), im.to_f64(), slack + 1e-12)
    } else {
        dirichlet_kernel_brute_f64(t.to_f64(), x)
    };

    Ok(WeylReport {
        t: t.clone(),
        x,
        brute_re,
        brute_im,
        brute_err,
        closed,
        normalized,
        bound,
    })
}

/// A sine-nonvanishing probe at alpha k.
#[derive(Clone, Debug)]
pub struct SineProbe {
    pub alpha: HReal,
    pub k: u64,
    /// alpha * k.
    pub angle: HReal,
    /// Distance from the angle to the nearest integer multiple of pi.
    pub distance_to_pi_multiple: HReal,
    pub sin_value: HReal,
    /// Convergent floor 1/v_{n+1} on |sin|, scaled per the concavity bound
    /// (valid whenever the distance condition below holds).
    pub convergent_lower_bound: HReal,
    /// Index n of the convergent used (smallest with v_n >= k).
    pub convergent_index: usize,
    /// Whether |angle - m pi| < 1 is certified (the hypothesis under which
    /// the convergent floor applies); recorded, never assumed.
    pub distance_below_one: bool,
}

/// Evaluates sin(alpha k) together with the convergent-based lower bound
/// derived from the continued fraction of beta = alpha / pi.
///
/// `beta_cf` must be expanded deep enough that some certified v_n >= k with
/// v_{n+1} also certified. Fails with `InsufficientPrecision` if sin(alpha k)
/// is not provably nonzero at the working precision.
pub fn sine_probe(alpha: &HReal, k: u64, beta_cf: &ContinuedFraction) -> Result<SineProbe> {
    if k == 0 {
        return Err(Error::InvalidArgument("sine_probe requires k >= 1"));
    }
    let wp = alpha.prec() + 32;
    let pi_b = pi(wp);
    let angle = alpha.with_prec(wp).mul_bigint(&BigInt::from(k));
    let w = angle.div(&pi_b)?;
    let m = w.nearest_int_center();
    let distance = angle.sub(&pi_b.mul_bigint(&m)).abs();
    let sin_value = angle.sin();
    if !sin_value.provably_nonzero(NONZERO_MARGIN) {
        return Err(Error::InsufficientPrecision);
    }

    // Smallest certified index n >= 1 with v_n >= k; v_{n+1} gives the
    // floor. Index 0 is excluded: the 0th convergent need not be a best
    // approximation (its numerator is the floor, not the nearest integer).
    let k_big = BigInt::from(k);
    let idx = beta_cf
        .convergents
        .iter()
        .skip(1)
        .position(|(_, q)| *q >= k_big)
        .map(|i| i + 1)
        .ok_or(Error::InsufficientPrecision)?;
    let (_, v_next) = beta_cf
        .convergent(idx + 1)
        .ok_or(Error::InsufficientPrecision)?;
    let floor = HReal::from_bigint(v_next, wp).recip()?;

    let one = HReal::one(wp);
    let distance_below_one = distance.le_certain(&one);

    Ok(SineProbe {
        alpha: alpha.clone(),
        k,
        angle,
        distance_to_pi_multiple: distance,
        sin_value,
        convergent_lower_bound: floor,
        convergent_index: idx,
        distance_below_one,
    })
}

/// Partial sine product pi y prod_{n=1}^{N} (1 - y^2/n^2), returned as a
/// ball enclosing sin(pi y) by folding in the certified relative tail factor
/// (prod_{n>N}(1 - y^2/n^2) lies in [1 - y^2/N, 1]).
pub fn sine_product_partial(y: &HReal, n_terms: u64) -> Result<HReal> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument(
            "sine_product_partial requires N >= 1",
        ));
    }
    let wp = y.prec() + 32;
    let yw = y.with_prec(wp);
    let y2 = yw.mul(&yw);
    // Tail factors must individually stay in [0, 1]: need y^2 <= (N+1)^2.
    let limit = HReal::from_int(((n_terms + 1) * (n_terms + 1)) as i64, wp);
    if !y2.le_certain(&limit) {
        return Err(Error::InvalidArgument(
            "cutoff too small for this argument magnitude",
        ));
    }
    let one = HReal::one(wp);
    let mut acc = pi(wp).mul(&yw);
    for n in 1..=n_terms {
        acc = acc.mul(&one.sub(&y2.div_uint(n * n)));
    }
    // sin(pi y) = acc * F with F in [1 - S, 1], S <= y^2/N.
    let s_up = y2.div_uint(n_terms);
    let half_shift = acc.mul(&s_up).scale2(-1);
    let mut out = acc.sub(&half_shift);
    out.add_err_upper_of(&half_shift);
    Ok(out)
}
