//! 2x2 complex matrices for the model Riemann-Hilbert problems.

use crate::complex::Complex;
use crate::real::Real;
use rug::Float;
use std::fmt;
use std::ops::Mul;

/// Row-major 2x2 complex matrix: [[a, b], [c, d]].
#[derive(Clone)]
pub struct ComplexMatrix2 {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

impl ComplexMatrix2 {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        ComplexMatrix2 { a, b, c, d }
    }

    pub fn identity(bits: u32) -> Self {
        ComplexMatrix2 {
            a: Complex::one(bits),
            b: Complex::zero(bits),
            c: Complex::zero(bits),
            d: Complex::one(bits),
        }
    }

    pub fn prec(&self) -> u32 {
        self.a.prec()
    }

    /// diag(x, 1/x); with x = e^w this is e^{w sigma3}.
    pub fn diag(x: Complex) -> Self {
        let bits = x.prec();
        let inv = x.recip();
        ComplexMatrix2 { a: x, b: Complex::zero(bits), c: Complex::zero(bits), d: inv }
    }

    /// e^{w sigma3} = diag(e^w, e^{-w}).
    pub fn sigma3_exp(w: &Complex) -> Self {
        Self::diag(w.exp())
    }

    /// z^{p sigma3} = diag(z^p, z^{-p}) along the principal branch.
    pub fn z_pow_sigma3(z: &Complex, p: &Real) -> Self {
        Self::diag(z.pow_real(p))
    }

    /// Lower-triangular [[1, 0], [c, 1]].
    pub fn lower(c: Complex) -> Self {
        let bits = c.prec();
        ComplexMatrix2 { a: Complex::one(bits), b: Complex::zero(bits), c, d: Complex::one(bits) }
    }

    /// Upper-triangular [[1, b], [0, 1]].
    pub fn upper(b: Complex) -> Self {
        let bits = b.prec();
        ComplexMatrix2 { a: Complex::one(bits), b, c: Complex::zero(bits), d: Complex::one(bits) }
    }

    pub fn det(&self) -> Complex {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> Complex {
        &self.a + &self.d
    }

    /// Inverse via the adjugate; caller guarantees det != 0.
    pub fn inverse(&self) -> Self {
        let det = self.det();
        ComplexMatrix2 {
            a: &self.d / &det,
            b: &(-&self.b) / &det,
            c: &(-&self.c) / &det,
            d: &self.a / &det,
        }
    }

    /// Max of entrywise absolute values.
    pub fn max_norm(&self) -> Real {
        let mut m = self.a.abs();
        for e in [&self.b, &self.c, &self.d] {
            let v = e.abs();
            if v > m {
                m = v;
            }
        }
        m
    }

    pub fn sub(&self, rhs: &ComplexMatrix2) -> Self {
        ComplexMatrix2 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }

    pub fn scale(&self, s: &Complex) -> Self {
        ComplexMatrix2 {
            a: &self.a * s,
            b: &self.b * s,
            c: &self.c * s,
            d: &self.d * s,
        }
    }

    /// Distance to the identity in max norm.
    pub fn deviation_from_identity(&self) -> Real {
        self.sub(&ComplexMatrix2::identity(self.prec())).max_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

impl fmt::Debug for ComplexMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.a, self.b, self.c, self.d)
    }
}

impl Mul<&ComplexMatrix2> for &ComplexMatrix2 {
    type Output = ComplexMatrix2;
    fn mul(self, rhs: &ComplexMatrix2) -> ComplexMatrix2 {
        ComplexMatrix2 {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }
}

impl Mul for ComplexMatrix2 {
    type Output = ComplexMatrix2;
    fn mul(self, rhs: ComplexMatrix2) -> ComplexMatrix2 {
        (&self) * (&rhs)
    }
}

/// (I + i sigma1)/sqrt(2): the constant factor in outer parametrix checks.
pub fn n_rotation(bits: u32) -> ComplexMatrix2 {
    let inv_sqrt2 = Float::with_val(bits, 2).sqrt().recip();
    let h = Complex::new(inv_sqrt2.clone(), Float::new(bits));
    let ih = Complex::new(Float::new(bits), inv_sqrt2);
    ComplexMatrix2 { a: h.clone(), b: ih.clone(), c: ih, d: h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{exp10i, rnew};

    #[test]
    fn inverse_gives_identity() {
        let bits = 200;
        let m = ComplexMatrix2::new(
            Complex::with_val(bits, 1.0, 2.0),
            Complex::with_val(bits, -0.5, 0.25),
            Complex::with_val(bits, 3.0, -1.0),
            Complex::with_val(bits, 0.75, 0.0),
        );
        let p = &m * &m.inverse();
        assert!(p.deviation_from_identity() < exp10i(bits, -50));
    }

    #[test]
    fn triangular_factors_have_unit_det() {
        let bits = 128;
        let l = ComplexMatrix2::lower(Complex::with_val(bits, 2.5, -1.0));
        let u = ComplexMatrix2::upper(Complex::with_val(bits, -0.125, 9.0));
        let one = Complex::one(bits);
        assert!((l.det() - one.clone()).abs() < exp10i(bits, -30));
        assert!((u.det() - one).abs() < exp10i(bits, -30));
    }

    #[test]
    fn sigma3_exp_multiplies_additively() {
        let bits = 200;
        let w1 = Complex::with_val(bits, 0.3, -0.7);
        let w2 = Complex::with_val(bits, -1.1, 0.2);
        let lhs = &ComplexMatrix2::sigma3_exp(&w1) * &ComplexMatrix2::sigma3_exp(&w2);
        let rhs = ComplexMatrix2::sigma3_exp(&(&w1 + &w2));
        assert!(lhs.sub(&rhs).max_norm() < exp10i(bits, -50));
    }

    #[test]
    fn fractional_power_matrix_matches_scalar() {
        let bits = 200;
        let z = Complex::with_val(bits, 2.0, 1.0);
        let quarter = rnew(bits, 0.25);
        let m = ComplexMatrix2::z_pow_sigma3(&z, &quarter);
        let s = z.pow_real(&quarter);
        assert!((m.a.clone() - s.clone()).abs() < exp10i(bits, -50));
        assert!((&(&m.a * &m.d) - &Complex::one(bits)).abs() < exp10i(bits, -50));
        let _ = s;
    }

    #[test]
    fn rotation_factor_is_unitary_with_unit_det() {
        let bits = 200;
        let n = n_rotation(bits);
        assert!((n.det() - Complex::one(bits)).abs() < exp10i(bits, -50));
        // N * conj-transpose(N) = I
        let nh = ComplexMatrix2::new(n.a.conj(), n.c.conj(), n.b.conj(), n.d.conj());
        let p = &n * &nh;
        assert!(p.deviation_from_identity() < exp10i(bits, -50));
    }
}
