//! The two universal hard-edge limit kernels.
//!
//! Both are Christoffel-Darboux-type ratios with a removable singularity
//! on the diagonal. Exactly-equal arguments take the closed diagonal form
//! (l'Hopital through the defining ODE); nearly-equal arguments keep the
//! ratio form but at a working precision raised by the measured digit
//! loss log10(scale/|u-v|).

use crate::error::{Error, Result};
use crate::precision::{bits_for_digits, digits_for_bits};
use crate::real::Real;
use crate::specfun::airy::{airy_ai_prime_real, airy_ai_real};
use crate::specfun::bessel::{bessel_j, bessel_j_prime};
use rug::Float;

fn near_diagonal_extra(u: &Real, v: &Real) -> u32 {
    let du = (u.clone() - v).abs().to_f64();
    if du == 0.0 {
        return 0;
    }
    let scale = u.clone().abs().max(&v.clone().abs()).to_f64().max(1.0);
    (scale / du).log10().ceil().max(0.0) as u32
}

/// J_alpha(u, v) = [J_a(su) sv J_a'(sv) - J_a(sv) su J_a'(su)] / (2(u-v))
/// with su = sqrt(u), sv = sqrt(v); diagonal by the confluent formula.
pub fn bessel_kernel(alpha: &Real, u: &Real, v: &Real) -> Result<Real> {
    let out_bits = u.prec();
    if !(u.is_sign_positive() && v.is_sign_positive()) || u.is_zero() || v.is_zero() {
        return Err(Error::domain("bessel_kernel", "need u, v > 0"));
    }
    if u == v {
        let su = u.clone().sqrt();
        let j = bessel_j(alpha, &su)?;
        let jp = bessel_j_prime(alpha, &su)?;
        let a2: Real = Float::with_val(out_bits, alpha).square();
        let val: Real =
            (jp.square() + (Float::with_val(out_bits, 1) - a2 / u) * j.square()) / 4u32;
        return Ok(val);
    }
    let digits = digits_for_bits(out_bits) + 5 + near_diagonal_extra(u, v);
    let bits = bits_for_digits(digits);
    let uw = Float::with_val(bits, u);
    let vw = Float::with_val(bits, v);
    let aw = Float::with_val(bits, alpha);
    let su = uw.clone().sqrt();
    let sv = vw.clone().sqrt();
    let ju = bessel_j(&aw, &su)?;
    let jv = bessel_j(&aw, &sv)?;
    let jpu = bessel_j_prime(&aw, &su)?;
    let jpv = bessel_j_prime(&aw, &sv)?;
    let num: Real = ju * sv * jpv - jv * su * jpu;
    let den: Real = (uw - vw) * 2u32;
    Ok(Float::with_val(out_bits, num / den))
}

/// A(u, v) = (Ai(u) Ai'(v) - Ai(v) Ai'(u)) / (u - v); diagonal
/// Ai'(u)^2 - u Ai(u)^2.
pub fn airy_kernel(u: &Real, v: &Real) -> Result<Real> {
    let out_bits = u.prec();
    if u == v {
        let ai = airy_ai_real(u)?;
        let aip = airy_ai_prime_real(u)?;
        return Ok(aip.square() - u.clone() * ai.square());
    }
    let digits = digits_for_bits(out_bits) + 5 + near_diagonal_extra(u, v);
    let bits = bits_for_digits(digits);
    let uw = Float::with_val(bits, u);
    let vw = Float::with_val(bits, v);
    let aiu = airy_ai_real(&uw)?;
    let aiv = airy_ai_real(&vw)?;
    let aipu = airy_ai_prime_real(&uw)?;
    let aipv = airy_ai_prime_real(&vw)?;
    let num: Real = aiu * aipv - aiv * aipu;
    Ok(Float::with_val(out_bits, num / (uw - vw)))
}
