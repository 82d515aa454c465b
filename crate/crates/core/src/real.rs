//! Thin helpers over `rug::Float`.
//!
//! All big-float values in this crate are `rug::Float` (MPFR). Helpers here
//! cover the constants, conversions and formatting that the rest of the
//! crate needs; anything heavier lives in the module that owns it.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

pub type Real = Float;

pub fn rnew(bits: u32, v: f64) -> Real {
    Float::with_val(bits, v)
}

pub fn rint(bits: u32, v: i64) -> Real {
    Float::with_val(bits, v)
}

pub fn pi(bits: u32) -> Real {
    Float::with_val(bits, Constant::Pi)
}

pub fn euler_gamma(bits: u32) -> Real {
    Float::with_val(bits, Constant::Euler)
}

pub fn ln_10(bits: u32) -> Real {
    Float::with_val(bits, 10).ln()
}

/// 10^e as a float, for tolerance thresholds.
pub fn exp10i(bits: u32, e: i64) -> Real {
    Float::with_val(bits, 10).pow(Float::with_val(bits, e))
}

/// Quick log10 |x| estimate from the binary exponent; -inf for zero.
/// Used for truncation and guard-digit decisions, never for results.
pub fn log10_abs_estimate(x: &Real) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match x.get_exp() {
        Some(e) => e as f64 * std::f64::consts::LOG10_2,
        None => f64::NAN,
    }
}

/// Full-precision decimal rendering with round-trip fidelity at `digits`
/// significant digits, in `mantissa e exponent` form (e.g. `1.25e-3`).
pub fn to_decimal_string(x: &Real, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    if x.is_zero() {
        return "0".into();
    }
    let (sign, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero float has an exponent");
    let mantissa = mantissa.trim_end_matches('0');
    let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
    let (head, tail) = mantissa.split_at(1);
    let s = if tail.is_empty() {
        format!("{head}e{}", exp - 1)
    } else {
        format!("{head}.{tail}e{}", exp - 1)
    };
    if sign {
        format!("-{s}")
    } else {
        s
    }
}

/// Double factorial (2j+1)!! = 1*3*5*...*(2j+1) as a float.
pub fn odd_double_factorial(bits: u32, j: u32) -> Real {
    let mut acc = Float::with_val(bits, 1);
    let mut m = 1u64;
    for _ in 0..=j {
        acc *= m;
        m += 2;
    }
    acc
}

/// n! as a float.
pub fn factorial(bits: u32, n: u32) -> Real {
    Float::with_val(bits, Float::factorial(n))
}
