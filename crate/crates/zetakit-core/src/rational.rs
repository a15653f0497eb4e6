//! Exact rational arithmetic: Bernoulli and Euler numbers, and the rational
//! coefficients of the even-zeta, Lerch and Dirichlet-beta closed forms.
//!
//! Everything here is integer/rational arithmetic only; no floating point
//! enters any coefficient. The Bernoulli numbers come from the tangent-number
//! triangle and the Euler numbers from the secant-number triangle, both exact
//! integer recurrences.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// n! as an exact integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Tangent numbers T_1..T_count: 1, 2, 16, 272, 7936, ...
///
/// Row-update triangle; all intermediate values are nonnegative integers.
pub fn tangent_numbers(count: usize) -> Vec<BigUint> {
    if count == 0 {
        return Vec::new();
    }
    let mut t: Vec<BigUint> = Vec::with_capacity(count);
    t.push(BigUint::one());
    for k in 2..=count {
        let prev = t[k - 2].clone();
        t.push(prev * (k as u64 - 1));
    }
    for k in 2..=count {
        for j in k..=count {
            // T[j] <- (j-k)*T[j-1] + (j-k+2)*T[j]
            let a = &t[j - 2] * (j as u64 - k as u64);
            let b = &t[j - 1] * (j as u64 - k as u64 + 2);
            t[j - 1] = a + b;
        }
    }
    t
}

/// Secant numbers S_0..S_count: 1, 1, 5, 61, 1385, 50521, ...
///
/// S_k = |E_{2k}| where E are the Euler numbers.
pub fn secant_numbers(count: usize) -> Vec<BigUint> {
    let mut s: Vec<BigUint> = Vec::with_capacity(count + 1);
    s.push(BigUint::one());
    for k in 1..=count {
        let prev = s[k - 1].clone();
        s.push(prev * k as u64);
    }
    for k in 1..=count {
        for j in (k + 1)..=count {
            // S[j] <- (j-k)*S[j-1] + (j-k+1)*S[j]
            let a = &s[j - 1] * (j as u64 - k as u64);
            let b = &s[j] * (j as u64 - k as u64 + 1);
            s[j] = a + b;
        }
    }
    s
}

fn bernoulli_from_tangent(m: u64, t_m: &BigUint) -> BigRational {
    // B_{2m} = (-1)^{m-1} * T_m * 2m / (2^{2m} (2^{2m} - 1)), m >= 1
    let numer = BigInt::from(t_m.clone()) * (2 * m);
    let pow = BigUint::one() << (2 * m as usize);
    let denom = BigInt::from(&pow * (&pow - BigUint::one()));
    let sign = if m % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    BigRational::new(sign * numer, denom)
}

/// Bernoulli number B_n with the convention B_1 = -1/2.
///
/// Odd n > 1 gives 0. Even indices come from the tangent numbers, which keeps
/// the whole computation in integers until one final exact division.
pub fn bernoulli(n: u64) -> BigRational {
    match n {
        0 => BigRational::one(),
        1 => BigRational::new(BigInt::from(-1), BigInt::from(2)),
        _ if n % 2 == 1 => BigRational::zero(),
        _ => {
            let m = n / 2;
            let t = tangent_numbers(m as usize);
            bernoulli_from_tangent(m, &t[m as usize - 1])
        }
    }
}

/// B_0, B_2, B_4, ..., B_{2k_max} as a vector indexed by k.
///
/// One triangle pass; meant for summation loops that need many even
/// Bernoulli numbers at once (Euler–Maclaurin corrections, Lerch
/// coefficients).
pub fn bernoulli_even_list(k_max: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(BigRational::one());
    if k_max == 0 {
        return out;
    }
    let t = tangent_numbers(k_max);
    for m in 1..=k_max {
        out.push(bernoulli_from_tangent(m as u64, &t[m - 1]));
    }
    out
}

/// Euler number E_n (secant convention: sec x = sum |E_{2k}| x^{2k} / (2k)!).
///
/// E_0 = 1, E_2 = -1, E_4 = 5, E_6 = -61, ...; odd n gives 0.
pub fn euler_number(n: u64) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let m = (n / 2) as usize;
    let s = secant_numbers(m);
    let v = BigInt::from(s[m].clone());
    if m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The rational r with zeta(2n) = r * pi^{2n}:
/// r = (-1)^{n+1} 2^{2n} B_{2n} / (2 (2n)!).
pub fn even_zeta_coeff(n: u32) -> BigRational {
    assert!(n >= 1, "even_zeta_coeff requires n >= 1");
    let b = bernoulli(2 * n as u64);
    let sign = if n % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let pow2 = BigInt::one() << (2 * n as usize);
    let denom = BigInt::from(factorial(2 * n as u64)) * 2;
    b * BigRational::new(sign * pow2, denom)
}

/// Leading rational coefficient a_n of the one-series Lerch form for
/// zeta(2n+1) with 2n+1 = 3 (mod 4):
///
/// a_n = 2^{2n} * sum_{0 <= k <= n+1} (-1)^{k+1} B_{2k} B_{2n+2-2k} / ((2k)! (2n+2-2k)!)
///
/// so that zeta(2n+1) = a_n pi^{2n+1} - 2 sum_{m>=1} 1/(m^{2n+1}(e^{2 pi m}-1)).
/// The sum range includes both B_0 boundary terms.
pub fn lerch_leading_coeff(n: u32) -> Result<BigRational> {
    if n == 0 || (2 * n + 1) % 4 != 3 {
        return Err(Error::WrongResidueClass { s: 2 * n + 1 });
    }
    let bs = bernoulli_even_list(n as usize + 1);
    let mut acc = BigRational::zero();
    for k in 0..=(n as usize + 1) {
        let j = n as usize + 1 - k;
        let denom = BigInt::from(factorial(2 * k as u64)) * BigInt::from(factorial(2 * j as u64));
        let term = &bs[k] * &bs[j] / BigRational::new(denom, BigInt::one());
        if k % 2 == 0 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc * BigRational::new(BigInt::one() << (2 * n as usize), BigInt::one()))
}

/// The rational r with L(2n+1, chi_4) = r * pi^{2n+1}:
/// r = (-1)^n E_{2n} / (2^{2n+2} (2n)!).
pub fn dirichlet_beta_coeff(n: u32) -> BigRational {
    let e = euler_number(2 * n as u64);
    let sign = if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let denom = BigInt::from(factorial(2 * n as u64)) << (2 * n as usize + 2);
    BigRational::new(sign * e, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Independent oracle: the defining recurrence
    /// sum_{k=0}^{m} C(m+1, k) B_k = 0, solved for B_m.
    fn bernoulli_by_recurrence(up_to: usize) -> Vec<BigRational> {
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=up_to {
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                let c = BigInt::from(binomial(m as u64 + 1, k as u64));
                acc += bk * BigRational::new(c, BigInt::one());
            }
            let denom = BigRational::new(BigInt::from(m as i64 + 1), BigInt::one());
            b.push(-acc / denom);
        }
        b
    }

    #[test]
    fn bernoulli_table_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), BigRational::zero());
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(8), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_defining_recurrence() {
        let oracle = bernoulli_by_recurrence(60);
        for (n, expect) in oracle.iter().enumerate() {
            // The recurrence yields B_1 = -1/2, the same convention.
            assert_eq!(&bernoulli(n as u64), expect, "B_{n} mismatch");
        }
    }

    #[test]
    fn recurrence_holds_for_emitted_table() {
        // sum_{k=0}^{m} C(m+1,k) B_k = 0 for all m >= 1.
        for m in 1..=40u64 {
            let mut acc = BigRational::zero();
            for k in 0..=m {
                let c = BigInt::from(binomial(m + 1, k));
                acc += bernoulli(k) * BigRational::new(c, BigInt::one());
            }
            assert!(acc.is_zero(), "recurrence fails at m = {m}");
        }
    }

    #[test]
    fn euler_number_values() {
        assert_eq!(euler_number(0), BigInt::from(1));
        assert_eq!(euler_number(1), BigInt::zero());
        assert_eq!(euler_number(2), BigInt::from(-1));
        assert_eq!(euler_number(4), BigInt::from(5));
        // The secant convention gives E_6 = -61; see the beta-series
        // cross-check in the integration tests.
        assert_eq!(euler_number(6), BigInt::from(-61));
        assert_eq!(euler_number(8), BigInt::from(1385));
        assert_eq!(euler_number(10), BigInt::from(-50521));
    }

    #[test]
    fn even_zeta_coeff_first_three() {
        assert_eq!(even_zeta_coeff(1), rat(1, 6));
        assert_eq!(even_zeta_coeff(2), rat(1, 90));
        assert_eq!(even_zeta_coeff(3), rat(1, 945));
        assert_eq!(even_zeta_coeff(4), rat(1, 9450));
        assert_eq!(even_zeta_coeff(5), rat(1, 93555));
    }

    #[test]
    fn lerch_coeff_zeta3_and_zeta7() {
        assert_eq!(lerch_leading_coeff(1).unwrap(), rat(7, 180));
        assert_eq!(lerch_leading_coeff(3).unwrap(), rat(19, 56700));
    }

    #[test]
    fn lerch_coeff_rejects_wrong_residue() {
        assert_eq!(
            lerch_leading_coeff(2),
            Err(Error::WrongResidueClass { s: 5 })
        );
        assert_eq!(
            lerch_leading_coeff(4),
            Err(Error::WrongResidueClass { s: 9 })
        );
    }

    #[test]
    fn beta_coeff_values() {
        assert_eq!(dirichlet_beta_coeff(0), rat(1, 4));
        assert_eq!(dirichlet_beta_coeff(1), rat(1, 32));
        assert_eq!(dirichlet_beta_coeff(2), rat(5, 1536));
    }

    #[test]
    fn results_are_reduced_with_positive_denominator() {
        use num_traits::Signed;
        for n in 0..20u64 {
            let b = bernoulli(n);
            assert!(b.denom().is_positive());
            assert_eq!(
                num_integer::Integer::gcd(b.numer(), b.denom()),
                BigInt::one()
            );
        }
    }

    #[test]
    fn bernoulli_even_list_agrees_with_single_calls() {
        let list = bernoulli_even_list(12);
        for (k, b) in list.iter().enumerate() {
            assert_eq!(b, &bernoulli(2 * k as u64));
        }
    }
}
