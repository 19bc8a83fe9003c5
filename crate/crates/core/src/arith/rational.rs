//! Helpers around [`BigRational`]: parsing, rounding, and the simplest
//! fraction inside an interval.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::{Integer as Int, Rational};

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(v.into())
}

pub fn pow2(k: i64) -> Rational {
    let two = BigInt::from(2);
    if k >= 0 {
        BigRational::from_integer(Pow::pow(&two, k as u64))
    } else {
        BigRational::new(BigInt::one(), Pow::pow(&two, (-k) as u64))
    }
}

/// Parses an exact rational literal: `7`, `-3/2`, `0.125`, `1e-20`, `2.5E3`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = parse_signed_int(n.trim())?;
        let d: BigInt = parse_signed_int(d.trim())?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i64>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(n * Pow::pow(&ten, scale as u64))
    } else {
        BigRational::new(n, Pow::pow(&ten, (-scale) as u64))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

fn parse_signed_int(s: &str) -> Option<BigInt> {
    if s.is_empty() {
        return None;
    }
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `p/q` or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// The rational of smallest denominator in the closed interval `[lo, hi]`
/// (ties broken by smallest absolute value).
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Rational::zero()
    }
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = floor(lo);
    let fl_r = BigRational::from_integer(fl.clone());
    if &fl_r == lo {
        return fl_r;
    }
    let next = BigRational::from_integer(&fl + 1);
    if &next <= hi {
        return next;
    }
    // lo and hi share the integer part; recurse on reciprocals of the fractional parts.
    let inner = simplest_positive(&(hi - &fl_r).recip(), &(lo - &fl_r).recip());
    fl_r + inner.recip()
}

/// Rounds a nonzero rational to `digits` significant decimal digits
/// (round half away from zero). Returns the rounded value exactly.
pub fn round_significant(value: &Rational, digits: u32) -> Rational {
    if value.is_zero() {
        return Rational::zero();
    }
    let digits = digits.max(1) as i64;
    let abs = value.abs();
    let k = decimal_exponent(&abs);
    // scale so that the rounded integer has `digits` digits
    let shift = digits - k;
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor = pow_rat(&ten, shift);
    let scaled = &abs * &factor;
    let half = rat(1, 2);
    let rounded = floor(&(scaled + half));
    let mut out = BigRational::from_integer(rounded) / factor;
    if value.is_negative() {
        out = -out;
    }
    out
}

/// The integer `k` with `10^(k-1) <= x < 10^k` for positive `x`.
pub fn decimal_exponent(x: &Rational) -> i64 {
    debug_assert!(x.is_positive());
    let num_digits = x.numer().to_string().len() as i64;
    let den_digits = x.denom().to_string().len() as i64;
    let mut k = num_digits - den_digits;
    let ten = BigRational::from_integer(BigInt::from(10));
    loop {
        let lower = pow_rat(&ten, k - 1);
        let upper = pow_rat(&ten, k);
        if x < &lower {
            k -= 1;
        } else if x >= &upper {
            k += 1;
        } else {
            return k;
        }
    }
}

fn pow_rat(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        Pow::pow(base, exp as u64)
    } else {
        Pow::pow(base.recip(), (-exp) as u64)
    }
}

/// Decimal approximation with `digits` significant digits, for display.
pub fn to_decimal_string(value: &Rational, digits: u32) -> String {
    if value.is_zero() {
        return "0.".to_string() + &"0".repeat(digits.saturating_sub(1) as usize);
    }
    let rounded = round_significant(value, digits);
    let abs = rounded.abs();
    let k = decimal_exponent(&abs);
    let digits_i = digits.max(1) as i64;
    let mant = (&abs * pow_rat(&rat_int(10), digits_i - k)).to_integer().to_string();
    let sign = if rounded.is_negative() { "-" } else { "" };
    if (-4..=digits_i).contains(&k) {
        if k <= 0 {
            format!("{sign}0.{}{}", "0".repeat((-k) as usize), mant)
        } else {
            let (a, b) = mant.split_at(k.min(mant.len() as i64) as usize);
            format!("{sign}{a}.{b}")
        }
    } else {
        let (a, b) = mant.split_at(1);
        format!("{sign}{a}.{b}e{}", k - 1)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn cmp_abs(a: &Rational, b: &Rational) -> Ordering {
    a.abs().cmp(&b.abs())
}
