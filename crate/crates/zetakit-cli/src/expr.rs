//! Constant-expression grammar for the CLI: products and quotients of `pi`
//! and `zetaK` atoms with integer powers, e.g. `zeta3/pi^3`, `pi^4/zeta5`.
//!
//! Every expression normalizes to a monomial pi^a * prod zetaK^bK, which is
//! all the experiments need; there is deliberately no general expression
//! engine here.

use std::collections::BTreeMap;

use zetakit_core::real::{digits_to_prec, pi, HReal};
use zetakit_core::zeta::zeta_auto;

/// A normalized monomial in pi and zeta constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstExpr {
    pub pi_pow: i64,
    /// zeta argument -> signed power (never zero).
    pub zetas: BTreeMap<u32, i64>,
}

impl ConstExpr {
    /// True when the expression is exactly `pi` (the kernel singularity).
    pub fn is_plain_pi(&self) -> bool {
        self.pi_pow == 1 && self.zetas.is_empty()
    }

    /// Canonical display form.
    pub fn label(&self) -> String {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        let fmt = |base: &str, p: i64| {
            if p.abs() == 1 {
                base.to_string()
            } else {
                format!("{base}^{}", p.abs())
            }
        };
        if self.pi_pow > 0 {
            num.push(fmt("pi", self.pi_pow));
        } else if self.pi_pow < 0 {
            den.push(fmt("pi", self.pi_pow));
        }
        for (k, p) in &self.zetas {
            let base = format!("zeta{k}");
            if *p > 0 {
                num.push(fmt(&base, *p));
            } else {
                den.push(fmt(&base, *p));
            }
        }
        let n = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("*")
        };
        if den.is_empty() {
            n
        } else {
            format!("{n}/{}", den.join("/"))
        }
    }

    fn total_weight(&self) -> u64 {
        self.pi_pow.unsigned_abs() + self.zetas.values().map(|p| p.unsigned_abs()).sum::<u64>()
    }

    /// Evaluates the monomial to the requested digit target.
    pub fn eval(&self, digits: u32) -> zetakit_core::Result<HReal> {
        let weight = self.total_weight().min(64) as u32;
        let work_digits = digits + 10 + 4 * weight;
        let wp = digits_to_prec(work_digits);
        let mut acc = HReal::one(wp);
        let apply = |acc: HReal, base: &HReal, p: i64| -> zetakit_core::Result<HReal> {
            let powed = base.pow_u32(p.unsigned_abs().min(u32::MAX as u64) as u32);
            if p >= 0 {
                Ok(acc.mul(&powed))
            } else {
                acc.div(&powed)
            }
        };
        if self.pi_pow != 0 {
            acc = apply(acc, &pi(wp), self.pi_pow)?;
        }
        for (k, p) in &self.zetas {
            let z = zeta_auto(*k, work_digits)?.value.with_prec(wp);
            acc = apply(acc, &z, *p)?;
        }
        Ok(acc.with_prec(digits_to_prec(digits)))
    }
}

/// Parses the grammar  expr := term (('*'|'/') term)* ; term := atom ('^' int)? ;
/// atom := 'pi' | 'zeta' digits.
pub fn parse(input: &str) -> Result<ConstExpr, String> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0usize;
    let mut out = ConstExpr {
        pi_pow: 0,
        zetas: BTreeMap::new(),
    };

    fn parse_atom(s: &[char], pos: &mut usize) -> Result<Option<u32>, String> {
        // None = pi, Some(k) = zetaK.
        let rest: String = s[*pos..].iter().collect();
        if rest.starts_with("pi") {
            *pos += 2;
            Ok(None)
        } else if rest.starts_with("zeta") {
            *pos += 4;
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err("expected digits after 'zeta'".to_string());
            }
            let k: u32 = s[start..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "zeta argument out of range".to_string())?;
            if k < 2 {
                return Err("zeta argument must be >= 2".to_string());
            }
            Ok(Some(k))
        } else {
            Err(format!("expected 'pi' or 'zetaK' at position {}", *pos))
        }
    }

    fn parse_power(s: &[char], pos: &mut usize) -> Result<i64, String> {
        if *pos < s.len() && s[*pos] == '^' {
            *pos += 1;
            let start = *pos;
            if *pos < s.len() && s[*pos] == '-' {
                *pos += 1;
            }
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                return Err("expected integer after '^'".to_string());
            }
            let p: i64 = s[start..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| "power out of range".to_string())?;
            if p.unsigned_abs() > 64 {
                return Err("powers are limited to |p| <= 64".to_string());
            }
            Ok(p)
        } else {
            Ok(1)
        }
    }

    let mut sign = 1i64;
    loop {
        let atom = parse_atom(&s, &mut pos)?;
        let power = sign * parse_power(&s, &mut pos)?;
        match atom {
            None => out.pi_pow += power,
            Some(k) => {
                let e = out.zetas.entry(k).or_insert(0);
                *e += power;
                if *e == 0 {
                    out.zetas.remove(&k);
                }
            }
        }
        if pos >= s.len() {
            break;
        }
        sign = match s[pos] {
            '*' => 1,
            '/' => -1,
            c => return Err(format!("unexpected character '{c}'")),
        };
        pos += 1;
    }
    Ok(out)
}
