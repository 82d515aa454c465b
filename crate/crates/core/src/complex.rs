//! Complex arithmetic over big floats, principal branches throughout.
//!
//! `rug`'s own complex type is not compiled in (we build against the float
//! feature only), so this is a small hand-rolled pair type. Branch cuts
//! follow the usual convention: `arg` lies in (-pi, pi], cuts on the
//! negative real axis.

use crate::real::Real;
use rug::Float;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.prec();
        Complex { re, im: Float::new(bits) }
    }

    pub fn zero(bits: u32) -> Self {
        Complex { re: Float::new(bits), im: Float::new(bits) }
    }

    pub fn one(bits: u32) -> Self {
        Complex { re: Float::with_val(bits, 1), im: Float::new(bits) }
    }

    pub fn i(bits: u32) -> Self {
        Complex { re: Float::new(bits), im: Float::with_val(bits, 1) }
    }

    pub fn with_val(bits: u32, re: f64, im: f64) -> Self {
        Complex { re: Float::with_val(bits, re), im: Float::with_val(bits, im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// i * z, exact (no rounding).
    pub fn mul_i(&self) -> Self {
        Complex { re: -self.im.clone(), im: self.re.clone() }
    }

    /// -i * z, exact.
    pub fn div_i(&self) -> Self {
        Complex { re: self.im.clone(), im: -self.re.clone() }
    }

    pub fn abs(&self) -> Real {
        self.re.clone().hypot(&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.clone().square() + self.im.clone().square()
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        self.im.clone().atan2(&self.re)
    }

    pub fn scale(&self, a: &Real) -> Self {
        Complex { re: self.re.clone() * a, im: self.im.clone() * a }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex { re: self.re.clone() / &n, im: -self.im.clone() / &n }
    }

    /// Principal square root: Re >= 0, cut on the negative real axis with
    /// the cut itself mapping to the positive imaginary axis.
    pub fn sqrt(&self) -> Self {
        let bits = self.prec();
        if self.is_zero() {
            return Complex::zero(bits);
        }
        let r = self.abs();
        // w = sqrt((|z| + |re|)/2) is the larger output component
        let w: Real = ((r + self.re.clone().abs()) / 2u32).sqrt();
        if self.re.is_sign_positive() && !self.re.is_zero() {
            let im = self.im.clone() / (w.clone() * 2u32);
            Complex { re: w, im }
        } else {
            let re = self.im.clone().abs() / (w.clone() * 2u32);
            let im = if self.im.is_sign_negative() && !self.im.is_zero() { -w } else { w };
            Complex { re, im }
        }
    }

    pub fn exp(&self) -> Self {
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(self.prec()));
        Complex { re: m.clone() * c, im: m * s }
    }

    /// Principal logarithm: Im in (-pi, pi].
    pub fn ln(&self) -> Self {
        Complex { re: self.abs().ln(), im: self.arg() }
    }

    /// z^p for real p along the principal branch; 0^p = 0 for p > 0.
    pub fn pow_real(&self, p: &Real) -> Self {
        if self.is_zero() {
            return Complex::zero(self.prec());
        }
        let l = self.ln();
        Complex { re: l.re * p, im: l.im * p }.exp()
    }

    pub fn powi(&self, n: i32) -> Self {
        let bits = self.prec();
        if n == 0 {
            return Complex::one(bits);
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::one(bits);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e} + {:e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: self.re.clone() + &rhs.re, im: self.im.clone() + &rhs.im }
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: self.re.clone() - &rhs.re, im: self.im.clone() - &rhs.im }
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        (&self) * (&rhs)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re.clone() * &rhs.im + self.im.clone() * &rhs.re;
        Complex { re, im }
    }
}

impl Div for Complex {
    type Output = Complex;
    fn div(self, rhs: Complex) -> Complex {
        (&self) / (&rhs)
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let n = rhs.norm_sqr();
        let re = (self.re.clone() * &rhs.re + self.im.clone() * &rhs.im) / &n;
        let im = (self.im.clone() * &rhs.re - self.re.clone() * &rhs.im) / &n;
        Complex { re, im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{exp10i, pi, rnew};

    fn close(a: &Complex, b: &Complex, tol_exp: i64) -> bool {
        let bits = a.prec();
        (a - b).abs() < exp10i(bits, tol_exp)
    }

    #[test]
    fn sqrt_of_minus_one_is_i() {
        let bits = 128;
        let z = Complex::with_val(bits, -1.0, 0.0);
        let r = z.sqrt();
        assert!(close(&r, &Complex::i(bits), -30));
    }

    #[test]
    fn sqrt_squares_back_off_axis() {
        let bits = 200;
        for (re, im) in [(3.0, 4.0), (-3.0, 4.0), (-3.0, -4.0), (0.0, -2.0), (-5.0, 1e-20)] {
            let z = Complex::with_val(bits, re, im);
            let r = z.sqrt();
            assert!(
                !r.re.is_sign_negative() || r.re.is_zero(),
                "principal root must have Re >= 0, got {r:?}"
            );
            let back = &r * &r;
            assert!(close(&back, &z, -50), "sqrt({re},{im}) failed: {back:?}");
        }
    }

    #[test]
    fn ln_exp_round_trip() {
        let bits = 200;
        let z = Complex::with_val(bits, 0.7, -2.9);
        let back = z.exp().ln();
        assert!(close(&back, &z, -50));
    }

    #[test]
    fn arg_on_negative_axis_is_pi() {
        let bits = 128;
        let z = Complex::with_val(bits, -2.0, 0.0);
        let diff: Real = z.arg() - pi(bits);
        assert!(diff.abs() < exp10i(bits, -30));
    }

    #[test]
    fn division_inverts_multiplication() {
        let bits = 200;
        let a = Complex::with_val(bits, 1.25, -0.75);
        let b = Complex::with_val(bits, -0.5, 2.0);
        let q = &(&a * &b) / &b;
        assert!(close(&q, &a, -55));
    }

    #[test]
    fn integer_powers_match_repeated_product() {
        let bits = 128;
        let z = Complex::with_val(bits, 0.9, -0.4);
        let direct = &(&z * &z) * &z;
        assert!(close(&z.powi(3), &direct, -30));
        let inv = z.powi(-2);
        let want = Complex::one(bits) / (&z * &z);
        assert!(close(&inv, &want, -30));
    }

    #[test]
    fn pow_real_agrees_with_sqrt() {
        let bits = 200;
        let z = Complex::with_val(bits, -1.5, 0.3);
        let half = rnew(bits, 0.5);
        assert!(close(&z.pow_real(&half), &z.sqrt(), -50));
    }

    #[test]
    fn mul_i_rotates() {
        let bits = 64;
        let z = Complex::with_val(bits, 2.0, 3.0);
        let w = z.mul_i();
        assert_eq!(w.re.to_f64(), -3.0);
        assert_eq!(w.im.to_f64(), 2.0);
        let back = w.div_i();
        assert_eq!(back.re.to_f64(), 2.0);
        assert_eq!(back.im.to_f64(), 3.0);
    }
}
