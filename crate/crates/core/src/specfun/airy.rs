//! Airy function Ai and its derivative on the complex plane.
//!
//! Three regimes:
//!   * Maclaurin series with measured-cancellation retries (small |z|);
//!   * the large-z expansion in zeta = (2/3) z^{3/2}, used only when its
//!     smallest term certifies the accuracy target (|arg z| <= 2.5);
//!   * the rotation identity Ai(z) + w Ai(wz) + w^2 Ai(w^2 z) = 0 with
//!     w = e^{2 pi i/3}, which moves arguments near the negative axis
//!     into the safe sector (single level of recursion).

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::{bits_for_digits, digits_for_bits};
use crate::real::{pi, Real};
use rug::ops::Pow;
use rug::Float;

const LOG10_E: f64 = 0.4342944819032518;
const MAX_ATTEMPTS: u32 = 6;
/// beyond this |arg z| the rotation identity is applied first
const CONNECTION_ARG: f64 = 2.5;

/// Ai and Ai' together (they share all series work).
pub fn airy_pair(z: &Complex) -> Result<(Complex, Complex)> {
    let out_bits = z.prec();
    let target_digits = digits_for_bits(out_bits) + 5;
    let arg = z.arg().to_f64();
    if arg.abs() > CONNECTION_ARG {
        return connection(z, target_digits, out_bits);
    }
    let zeta_abs = {
        let r = z.abs().to_f64();
        (2.0 / 3.0) * r.powf(1.5)
    };
    if 2.0 * zeta_abs * LOG10_E >= (target_digits + 8) as f64 {
        if let Some(v) = asymptotic_pair(z, target_digits)? {
            return Ok((round(v.0, out_bits), round(v.1, out_bits)));
        }
    }
    series_pair(z, target_digits, out_bits)
}

pub fn airy_ai(z: &Complex) -> Result<Complex> {
    Ok(airy_pair(z)?.0)
}

pub fn airy_ai_prime(z: &Complex) -> Result<Complex> {
    Ok(airy_pair(z)?.1)
}

/// Ai on the real line; the imaginary residue of the complex route is
/// checked against the accuracy target before being dropped.
pub fn airy_ai_real(x: &Real) -> Result<Real> {
    let (ai, _) = real_pair(x)?;
    Ok(ai)
}

pub fn airy_ai_prime_real(x: &Real) -> Result<Real> {
    let (_, aip) = real_pair(x)?;
    Ok(aip)
}

fn real_pair(x: &Real) -> Result<(Real, Real)> {
    let bits = x.prec();
    let (ai, aip) = airy_pair(&Complex::from_real(x.clone()))?;
    let scale: Real = ai.re.clone().abs() + aip.re.clone().abs() + 1u32;
    let floor = Float::with_val(bits, 10).pow(&Float::with_val(
        bits,
        -((digits_for_bits(bits) as i32) + 2),
    ));
    let resid: Real = (ai.im.clone().abs() + aip.im.clone().abs()) / scale;
    if resid > floor * 100u32 {
        return Err(Error::NoConvergence {
            op: "airy_ai_real",
            msg: format!("imaginary residue {:.3e} on a real argument", resid.to_f64()),
        });
    }
    Ok((ai.re, aip.re))
}

fn round(z: Complex, bits: u32) -> Complex {
    Complex::new(Float::with_val(bits, &z.re), Float::with_val(bits, &z.im))
}

fn series_pair(z: &Complex, target_digits: u32, out_bits: u32) -> Result<(Complex, Complex)> {
    if z.is_zero() {
        let bits = bits_for_digits(target_digits + 10);
        let third = Float::with_val(bits, 1) / 3u32;
        let c1: Real = Float::with_val(bits, 3).pow(&(-(third.clone() * 2u32)))
            / (third.clone() * 2u32).gamma();
        let c2: Real = Float::with_val(bits, 3).pow(&(-third.clone())) / third.gamma();
        return Ok((
            round(Complex::from_real(c1), out_bits),
            round(Complex::from_real(-c2), out_bits),
        ));
    }
    let zeta_abs = {
        let r = z.abs().to_f64();
        (2.0 / 3.0) * r.powf(1.5)
    };
    let re_zeta = {
        // Re zeta without building big floats; fine as an estimate
        let r = z.abs().to_f64();
        let th = z.arg().to_f64();
        (2.0 / 3.0) * r.powf(1.5) * (1.5 * th).cos()
    };
    let mut guess = ((zeta_abs + re_zeta) * LOG10_E).max(0.0);
    for _ in 0..MAX_ATTEMPTS {
        let digits_w = target_digits + 10 + guess.ceil() as u32;
        let bits = bits_for_digits(digits_w);
        let z_w = round(z.clone(), bits);
        let third = Float::with_val(bits, 1) / 3u32;
        // c1 = Ai(0) = 3^{-2/3}/Gamma(2/3), c2 = -Ai'(0) = 3^{-1/3}/Gamma(1/3)
        let c1: Real = Float::with_val(bits, 3).pow(&(-(third.clone() * 2u32)))
            / (third.clone() * 2u32).gamma();
        let c2: Real = Float::with_val(bits, 3).pow(&(-third.clone())) / third.gamma();
        let z3 = z_w.powi(3);

        // w1 = sum a_j z^{3j},   a_j = a_{j-1}/((3j)(3j-1))
        // w2 = sum b_j z^{3j+1}, b_j = b_{j-1}/((3j+1)(3j))
        // w1' = sum a_j 3j z^{3j-1}, w2' = sum b_j (3j+1) z^{3j}
        let mut a_pow = Complex::one(bits); // a_j z^{3j}
        let mut b_pow = z_w.clone(); // b_j z^{3j+1}
        let mut w1 = a_pow.clone();
        let mut w2 = b_pow.clone();
        let mut w1p = Complex::zero(bits);
        let mut w2p = Complex::one(bits); // j = 0 term of w2' is b_0 (3*0+1) z^0
        let mut max_abs = Float::with_val(bits, 1);
        let stop = Float::with_val(bits, 10).pow(&Float::with_val(bits, -((digits_w + 5) as i32)));
        let mut j = 1u32;
        loop {
            let ja: Real = (Float::with_val(bits, 3 * j) * (3 * j - 1)).recip();
            let jb: Real = (Float::with_val(bits, 3 * j + 1) * (3 * j)).recip();
            a_pow = (&a_pow * &z3).scale(&ja);
            b_pow = (&b_pow * &z3).scale(&jb);
            w1 = &w1 + &a_pow;
            w2 = &w2 + &b_pow;
            // derivative terms: a_j 3j z^{3j-1} = (3j/z) * a_pow, etc.
            let da = (&a_pow / &z_w).scale(&Float::with_val(bits, 3 * j));
            let db = (&b_pow / &z_w).scale(&Float::with_val(bits, 3 * j + 1));
            w1p = &w1p + &da;
            w2p = &w2p + &db;
            let ta = a_pow.abs().max(&b_pow.abs());
            if ta > max_abs {
                max_abs = ta.clone();
            }
            if j > 2 && ta < stop {
                break;
            }
            j += 1;
            if j > 100_000 {
                return Err(Error::NoConvergence {
                    op: "airy_ai",
                    msg: "Maclaurin series exceeded 1e5 terms".into(),
                });
            }
        }
        let ai = &w1.scale(&c1) - &w2.scale(&c2);
        let aip = &w1p.scale(&c1) - &w2p.scale(&c2);
        let small = ai.abs().min(&aip.abs());
        let measured = if small.is_zero() {
            f64::INFINITY
        } else {
            let r: Real = max_abs / small;
            r.to_f64().log10().max(0.0)
        };
        if measured <= guess + 2.0 {
            return Ok((round(ai, out_bits), round(aip, out_bits)));
        }
        guess = measured + 5.0;
    }
    Err(Error::PrecisionExhausted {
        op: "airy_ai",
        requested: target_digits,
        achieved: 0,
        hint: "series cancellation kept growing; argument too large for the Maclaurin route",
    })
}

/// Large-z expansion; Ok(None) when the smallest term cannot certify.
fn asymptotic_pair(z: &Complex, target_digits: u32) -> Result<Option<(Complex, Complex)>> {
    let bits = bits_for_digits(target_digits + 15);
    let z_w = round(z.clone(), bits);
    let three_half = Float::with_val(bits, 1.5);
    let zeta = z_w.pow_real(&three_half).scale(&(Float::with_val(bits, 2) / 3u32));
    let inv_zeta = zeta.recip();
    let stop = Float::with_val(bits, 10).pow(&Float::with_val(bits, -((target_digits + 8) as i32)));
    // u_k, v_k with the alternating sign folded in via (-1/zeta)^k steps
    let neg_inv = -inv_zeta.clone();
    let mut u_term = Complex::one(bits);
    let mut su = u_term.clone();
    let mut sv = u_term.clone();
    let mut last = u_term.abs();
    let mut k = 1u32;
    let ok = loop {
        let num: Real = Float::with_val(bits, (6 * k - 5) as u32) * ((6 * k - 1) as u32);
        let den = Float::with_val(bits, 72 * k);
        u_term = (&u_term * &neg_inv).scale(&(num / den));
        let v_term = u_term.scale(&(Float::with_val(bits, (6 * k + 1) as i32)
            / Float::with_val(bits, 1i32 - (6 * k) as i32)));
        let ta = u_term.abs();
        if ta >= last {
            break ta < stop;
        }
        su = &su + &u_term;
        sv = &sv + &v_term;
        if ta < stop {
            break true;
        }
        last = ta;
        k += 1;
        if k > 4 * target_digits {
            break false;
        }
    };
    if !ok {
        return Ok(None);
    }
    let quarter = Float::with_val(bits, 0.25);
    let z4 = z_w.pow_real(&quarter);
    let decay = (-zeta).exp();
    let two_sqrt_pi: Real = pi(bits).sqrt() * 2u32;
    let pref = &decay / &z4.scale(&two_sqrt_pi);
    let ai = &pref * &su;
    let prefp = (&decay * &z4).scale(&(-two_sqrt_pi.recip()));
    let aip = &prefp * &sv;
    Ok(Some((ai, aip)))
}

/// Rotate arguments near the negative axis into the safe sector.
fn connection(z: &Complex, target_digits: u32, out_bits: u32) -> Result<(Complex, Complex)> {
    let bits = bits_for_digits(target_digits + 10);
    let z_w = round(z.clone(), bits);
    // w = e^{2 pi i/3}
    let (s, c) = {
        let ang: Real = pi(bits) * 2u32 / 3u32;
        ang.sin_cos(Float::new(bits))
    };
    let w = Complex::new(c, s);
    let w2 = &w * &w;
    let zw = &z_w * &w;
    let zw2 = &z_w * &w2;
    // rotated arguments have |arg| <= pi - 2 pi/3 + slack: safe sector
    let (ai_w, aip_w) = airy_pair(&zw)?;
    let (ai_w2, aip_w2) = airy_pair(&zw2)?;
    let ai = -(&(&w * &ai_w) + &(&w2 * &ai_w2));
    // differentiate the identity: Ai'(z) = -w^2 Ai'(wz) - w Ai'(w^2 z)
    let aip = -(&(&w2 * &aip_w) + &(&w * &aip_w2));
    Ok((round(ai, out_bits), round(aip, out_bits)))
}
