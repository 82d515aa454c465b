//! Equilibrium-measure data for the linear potential V(x) = x on the
//! positive half-line: the one-cut hard-edge density, its log-potential
//! g, the phase function xi, variational residuals, and the conformal map
//! f whose derivative at the origin fixes the double-scaling constant c1.
//!
//! The density family is psi(x) = (c / 2 pi) sqrt((b - x)/x) on (0, b).
//! Both parameters are determined numerically (mass 1 plus the variational
//! equality at two interior points) instead of trusting any printed value;
//! the solution lands on b = 4, c = 1 and Euler-Lagrange constant -2.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::quad::{tanh_sinh, tol_for_digits};
use crate::real::{pi, Real};
use rug::Float;

#[derive(Clone, Debug)]
pub struct EquilibriumMeasure {
    bits: u32,
    digits: u32,
    /// Right endpoint of the support [0, b].
    pub b: Real,
    /// Constant value of the analytic factor h for this potential.
    pub c: Real,
    /// Euler-Lagrange constant.
    pub ell: Real,
}

/// U(x) = integral of log|x - y| psi(y) dy under y = b sin^2(theta), where
/// the factor c b / pi multiplies cos^2(theta).
///
/// For x inside the support, log|x - b sin^2 theta| is split via
/// sin^2 t0 - sin^2 t = sin(t0 - t) sin(t0 + t) into pieces whose
/// logarithmic point sits at an integration endpoint of exactly zero,
/// so deep tanh-sinh nodes never collapse onto the singularity.
fn log_potential(bits: u32, b: &Real, cb_over_pi: &Real, x: &Real, target: &Real) -> Result<Real> {
    let half_pi: Real = pi(bits) / 2u32;
    let inside = x.is_sign_positive() && x < b;
    let raw = if inside {
        let ratio: Real = (x.clone() / b).sqrt();
        let theta0 = ratio.asin();
        let j1 = tanh_sinh(&Float::new(bits), &theta0, target, |phi: &Real| {
            let angle: Real = theta0.clone() - phi;
            phi.clone().sin().ln() * angle.cos().square()
        })?;
        let upper: Real = half_pi.clone() - &theta0;
        let j2 = tanh_sinh(&Float::new(bits), &upper, target, |phi: &Real| {
            let angle: Real = theta0.clone() + phi;
            phi.clone().sin().ln() * angle.cos().square()
        })?;
        let k = tanh_sinh(&Float::new(bits), &half_pi, target, |theta: &Real| {
            let angle: Real = theta0.clone() + theta;
            angle.sin().ln() * theta.clone().cos().square()
        })?;
        b.clone().ln() * pi(bits) / 4u32 + j1.value + j2.value + k.value
    } else {
        let f = |theta: &Real| -> Real {
            let (s, co) = theta.clone().sin_cos(Float::new(bits));
            let y: Real = s.square() * b;
            (x.clone() - y).abs().ln() * co.square()
        };
        tanh_sinh(&Float::new(bits), &half_pi, target, f)?.value
    };
    Ok(raw * cb_over_pi)
}

/// Mass of the trial density (c / 2 pi) sqrt((b - x)/x) by quadrature.
fn trial_mass(bits: u32, b: &Real, c: &Real, target: &Real) -> Result<Real> {
    let half_pi: Real = pi(bits) / 2u32;
    let q = tanh_sinh(&Float::new(bits), &half_pi, target, |theta: &Real| {
        let co = theta.clone().cos();
        co.square()
    })?;
    Ok(q.value * c * b / pi(bits))
}

pub fn laguerre_equilibrium(prec: Precision) -> Result<EquilibriumMeasure> {
    let bits = prec.plus(10).bits();
    let digits = prec.digits();
    let target = tol_for_digits(bits, digits + 5);
    // With mass pinned to 1, the defect of the variational equality between
    // x = b/4 and x = b/2 is strictly increasing in b; secant-solve it.
    let defect = |b: &Real| -> Result<Real> {
        let mass_c1 = trial_mass(bits, b, &Float::with_val(bits, 1), &target)?;
        let c = mass_c1.recip();
        let cb_over_pi: Real = c.clone() * b / pi(bits);
        let x1: Real = b.clone() / 4u32;
        let x2: Real = b.clone() / 2u32;
        let u1 = log_potential(bits, b, &cb_over_pi, &x1, &target)?;
        let u2 = log_potential(bits, b, &cb_over_pi, &x2, &target)?;
        Ok((u1 - u2) * 2u32 - (x1 - x2))
    };
    let mut b0 = Float::with_val(bits, 3.5);
    let mut b1 = Float::with_val(bits, 4.5);
    let mut f0 = defect(&b0)?;
    let mut f1 = defect(&b1)?;
    let stop = tol_for_digits(bits, digits);
    for _ in 0..60 {
        if (f1.clone() - &f0).abs() < stop {
            break;
        }
        let step: Real = f1.clone() * (b1.clone() - &b0) / (f1.clone() - &f0);
        let b2: Real = b1.clone() - step;
        b0 = std::mem::replace(&mut b1, b2);
        f0 = std::mem::replace(&mut f1, defect(&b1)?);
        if (b1.clone() - &b0).abs() < stop {
            break;
        }
    }
    let b = b1;
    let c = trial_mass(bits, &b, &Float::with_val(bits, 1), &target)?.recip();
    let cb_over_pi: Real = c.clone() * &b / pi(bits);
    let mid: Real = b.clone() / 2u32;
    let u_mid = log_potential(bits, &b, &cb_over_pi, &mid, &target)?;
    let ell: Real = u_mid * 2u32 - mid;
    Ok(EquilibriumMeasure { bits, digits, b, c, ell })
}

impl EquilibriumMeasure {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The analytic factor h; constant for this potential.
    pub fn h_at(&self, _x: &Real) -> Real {
        self.c.clone()
    }

    /// Double-scaling constant c1 = b h(0)^2.
    pub fn c1(&self) -> Real {
        self.b.clone() * self.c.clone().square()
    }

    /// psi(x) on (0, b); zero beyond the right endpoint.
    pub fn density(&self, x: &Real) -> Result<Real> {
        if !x.is_sign_positive() || x.is_zero() {
            return Err(Error::domain("density", "x must be positive"));
        }
        if x >= &self.b {
            return Ok(Float::new(self.bits));
        }
        let ratio: Real = (self.b.clone() - x) / x;
        Ok(ratio.sqrt() * &self.c / (pi(self.bits) * 2u32))
    }

    fn quad_target(&self) -> Real {
        tol_for_digits(self.bits, self.digits + 5)
    }

    /// Total mass by quadrature (a consistency check, it should be 1).
    pub fn mass(&self) -> Result<Real> {
        trial_mass(self.bits, &self.b, &self.c, &self.quad_target())
    }

    /// First moment by quadrature.
    pub fn first_moment(&self) -> Result<Real> {
        let bits = self.bits;
        let half_pi: Real = pi(bits) / 2u32;
        let b = self.b.clone();
        let q = tanh_sinh(&Float::new(bits), &half_pi, &self.quad_target(), |theta: &Real| {
            let (s, co) = theta.clone().sin_cos(Float::new(bits));
            s.square() * &b * co.square()
        })?;
        Ok(q.value * &self.c * &self.b / pi(bits))
    }

    /// Mass of the density to the right of x.
    pub fn tail_mass(&self, x: &Real) -> Result<Real> {
        let bits = self.bits;
        if !x.is_sign_positive() || x >= &self.b {
            return Err(Error::domain("tail_mass", "need 0 < x < b"));
        }
        let ratio: Real = (x.clone() / &self.b).sqrt();
        let theta0 = ratio.asin();
        let half_pi: Real = pi(bits) / 2u32;
        let q = tanh_sinh(&theta0, &half_pi, &self.quad_target(), |theta: &Real| {
            theta.clone().cos().square()
        })?;
        Ok(q.value * &self.c * &self.b / pi(bits))
    }

    /// 2 U(x) - V(x) - ell; zero on the support, strictly negative beyond.
    pub fn variational_residual(&self, x: &Real) -> Result<Real> {
        if !x.is_sign_positive() || x.is_zero() {
            return Err(Error::domain("variational_residual", "x must be positive"));
        }
        let cb_over_pi: Real = self.c.clone() * &self.b / pi(self.bits);
        let u = log_potential(self.bits, &self.b, &cb_over_pi, x, &self.quad_target())?;
        Ok(u * 2u32 - x - &self.ell)
    }

    /// g(z) = integral of log(z - y) psi(y) dy, principal logarithm.
    pub fn g_eq(&self, z: &Complex) -> Result<Complex> {
        let bits = self.bits;
        if z.im.is_zero() && z.re <= self.b {
            return Err(Error::OnContour {
                op: "g_eq",
                msg: "g is evaluated off (-infinity, b]".into(),
            });
        }
        let half_pi: Real = pi(bits) / 2u32;
        let b = self.b.clone();
        let target = self.quad_target();
        let f = |theta: &Real| -> Complex {
            let (s, co) = theta.clone().sin_cos(Float::new(bits));
            let y: Real = s.square() * &b;
            let w = z - &Complex::from_real(y);
            w.ln().scale(&co.square())
        };
        let raw = if z.re.is_sign_positive() && z.re < self.b {
            // the integrand loses analyticity under the logarithmic point;
            // splitting restores double-exponential convergence
            let ratio: Real = (z.re.clone() / &self.b).sqrt();
            let theta0 = ratio.asin();
            let left = tanh_sinh(&Float::new(bits), &theta0, &target, f)?;
            let right = tanh_sinh(&theta0, &half_pi, &target, f)?;
            left.value + right.value
        } else {
            tanh_sinh(&Float::new(bits), &half_pi, &target, f)?.value
        };
        Ok(raw.scale(&(self.c.clone() * &self.b / pi(bits))))
    }

    /// xi(z) = -(1/2) integral from b to z of h(w) sqrt((w - b)/w) dw in
    /// closed form. Principal branches; on (-infinity, 0) this returns the
    /// limit from above, under which exp(n xi) is continuous.
    pub fn xi_eq(&self, z: &Complex) -> Result<Complex> {
        if z.im.is_zero() && !z.re.is_sign_negative() && z.re <= self.b {
            return Err(Error::OnContour {
                op: "xi_eq",
                msg: "xi jumps across the support [0, b]".into(),
            });
        }
        Ok(self.xi_interior(z))
    }

    /// Radius of the neighbourhood of 0 on which conformal_f is served.
    pub fn conformal_radius(&self) -> Real {
        self.b.clone() / 2u32
    }

    /// f(z) = (1/4) (integral from 0 to z of h sqrt((w-b)/w) dw)^2, the
    /// conformal map with f(0) = 0 and f'(0) = -b h(0)^2.
    pub fn conformal_f(&self, z: &Complex) -> Result<Complex> {
        if z.abs() > self.conformal_radius() {
            return Err(Error::domain(
                "conformal_f",
                "outside the validated neighbourhood of the origin",
            ));
        }
        let bits = self.bits;
        if z.is_zero() {
            return Ok(Complex::zero(bits));
        }
        // integral 0..z = integral b..z - integral b..0 = -2 xi(z) + i pi c b / 2
        let xi = self.xi_interior(z);
        let offset = Complex::new(Float::new(bits), pi(bits) * &self.c * &self.b / 2u32);
        let path = &offset - &xi.scale(&Float::with_val(bits, 2));
        Ok((&path * &path).scale(&Float::with_val(bits, 0.25)))
    }

    /// Closed-form xi without the support guard (f needs it next to 0 where
    /// the principal-branch limits glue analytically after squaring).
    fn xi_interior(&self, z: &Complex) -> Complex {
        let sqrt_z = z.sqrt();
        let shifted = z - &Complex::from_real(self.b.clone());
        let sqrt_zb = shifted.sqrt();
        let sqrt_b = self.b.clone().sqrt();
        let log_term = (&(&sqrt_z + &sqrt_zb) / &Complex::from_real(sqrt_b)).ln();
        let inner = &(&sqrt_z * &sqrt_zb) - &log_term.scale(&self.b);
        inner.scale(&(-(self.c.clone()) / 2u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{exp10i, rnew};
    use std::sync::OnceLock;

    fn measure() -> &'static EquilibriumMeasure {
        static M: OnceLock<EquilibriumMeasure> = OnceLock::new();
        M.get_or_init(|| laguerre_equilibrium(Precision::new(40).unwrap()).unwrap())
    }

    /// Independent closed form: g(z) = z/2 - (1/2) sqrt(z) sqrt(z-4)
    /// + 2 log(sqrt(z) + sqrt(z-4)) - 2 log 2 - 1, from integrating the
    /// Stieltjes transform (1 - sqrt((z-4)/z))/2 with g ~ log z at infinity.
    fn g_closed(z: &Complex) -> Complex {
        let bits = z.prec();
        let sz = z.sqrt();
        let szb = (z - &Complex::with_val(bits, 4.0, 0.0)).sqrt();
        let half = Float::with_val(bits, 0.5);
        let two = Float::with_val(bits, 2);
        let log2 = Float::with_val(bits, 2).ln();
        &(&z.scale(&half) - &(&sz * &szb).scale(&half))
            + &(&(&sz + &szb).ln().scale(&two)
                - &Complex::from_real(log2 * 2u32 + 1u32))
    }

    #[test]
    fn solves_to_the_expected_parameters() {
        let m = measure();
        let tol = exp10i(m.bits(), -30);
        assert!((m.b.clone() - 4u32).abs() < tol, "b = {}", m.b.to_f64());
        assert!((m.c.clone() - 1u32).abs() < tol, "c = {}", m.c.to_f64());
        assert!((m.ell.clone() + 2u32).abs() < tol, "ell = {}", m.ell.to_f64());
        assert!((m.c1() - 4u32).abs() < tol);
    }

    #[test]
    fn mass_and_first_moment_are_one() {
        let m = measure();
        assert!((m.mass().unwrap() - 1u32).abs() < exp10i(m.bits(), -20));
        assert!((m.first_moment().unwrap() - 1u32).abs() < exp10i(m.bits(), -20));
    }

    #[test]
    fn variational_conditions() {
        let m = measure();
        for x in [1.0, 2.0, 3.0] {
            let r = m.variational_residual(&rnew(m.bits(), x)).unwrap();
            assert!(r.clone().abs() < exp10i(m.bits(), -25), "x={x}: {:e}", r.to_f64());
        }
        let mut prev: Option<Real> = None;
        for x in [5.0, 6.0, 8.0, 12.0] {
            let r = m.variational_residual(&rnew(m.bits(), x)).unwrap();
            assert!(r.is_sign_negative(), "x={x}: {:e}", r.to_f64());
            if let Some(p) = prev {
                assert!(r < p, "residual not decreasing at x={x}");
            }
            prev = Some(r);
        }
    }

    #[test]
    fn g_matches_its_closed_form() {
        let m = measure();
        for (re, im) in [(5.0, 0.0), (1.0, 2.0), (0.5, -1.5), (9.0, 0.1)] {
            let z = Complex::with_val(m.bits(), re, im);
            let g = m.g_eq(&z).unwrap();
            let want = g_closed(&z);
            let gap = (g - want).abs();
            assert!(gap < exp10i(m.bits(), -25), "z=({re},{im}): {:e}", gap.to_f64());
        }
    }

    #[test]
    fn g_tends_to_log_z() {
        let m = measure();
        for r in [1e3, 1e6] {
            let z = Complex::with_val(m.bits(), r, 0.0);
            let g = m.g_eq(&z).unwrap();
            let gap = (g.re.clone() - rnew(m.bits(), r).ln()).abs();
            assert!(gap < rnew(m.bits(), 2.0 / r), "R={r}: {:e}", gap.to_f64());
            assert!(g.im.clone().abs() < exp10i(m.bits(), -25));
        }
    }

    #[test]
    fn g_jump_is_tail_mass() {
        let m = measure();
        let eps = 1e-10;
        let x = 2.0;
        let gp = m.g_eq(&Complex::with_val(m.bits(), x, eps)).unwrap();
        let gm = m.g_eq(&Complex::with_val(m.bits(), x, -eps)).unwrap();
        let jump = gp - gm;
        let want = m.tail_mass(&rnew(m.bits(), x)).unwrap() * pi(m.bits()) * 2u32;
        assert!(jump.re.clone().abs() < rnew(m.bits(), 1e-7));
        assert!(
            (jump.im.clone() - &want).abs() < rnew(m.bits(), 1e-7),
            "jump {:e} vs 2 pi tail {:e}",
            jump.im.to_f64(),
            want.to_f64()
        );
    }

    #[test]
    fn xi_identity_with_g() {
        let m = measure();
        // 2 xi - 2 g + V + ell = 0 off the support
        for (re, im) in [(5.0, 0.0), (1.0, 2.0)] {
            let z = Complex::with_val(m.bits(), re, im);
            let xi = m.xi_eq(&z).unwrap();
            let g = m.g_eq(&z).unwrap();
            let lhs = &(&xi.scale(&rnew(m.bits(), 2.0)) - &g.scale(&rnew(m.bits(), 2.0)))
                + &(&z + &Complex::from_real(m.ell.clone()));
            assert!(
                lhs.abs() < exp10i(m.bits(), -15),
                "z=({re},{im}): {:e}",
                lhs.abs().to_f64()
            );
        }
    }

    #[test]
    fn xi_derivative_and_anchor() {
        let m = measure();
        let bits = m.bits();
        // xi(0) from the closed form equals i pi c b / 4
        let xi0 = m.xi_interior(&Complex::zero(bits));
        let want: Real = pi(bits) * &m.c * &m.b / 4u32;
        assert!(xi0.re.clone().abs() < exp10i(bits, -30));
        assert!((xi0.im.clone() - want).abs() < exp10i(bits, -30));
        // finite differences around z = 6 against -(c/2) sqrt((z-b)/z)
        let z = Complex::with_val(bits, 6.0, 0.0);
        let h = rnew(bits, 1e-12);
        let up = m.xi_eq(&(&z + &Complex::from_real(h.clone()))).unwrap();
        let dn = m.xi_eq(&(&z - &Complex::from_real(h.clone()))).unwrap();
        let fd = (up - dn).scale(&(h * 2u32).recip());
        let expect = -((&(&z - &Complex::from_real(m.b.clone())) / &z).sqrt())
            .scale(&(m.c.clone() / 2u32));
        assert!((fd - expect).abs() < exp10i(bits, -18));
    }

    #[test]
    fn conformal_map_properties() {
        let m = measure();
        let bits = m.bits();
        assert!(m.conformal_f(&Complex::zero(bits)).unwrap().is_zero());
        // Richardson derivative at 0 equals -c1
        let d_at = |h: f64| -> Real {
            let zp = Complex::with_val(bits, h, 0.0);
            let zm = Complex::with_val(bits, -h, 0.0);
            let fp = m.conformal_f(&zp).unwrap();
            let fm = m.conformal_f(&zm).unwrap();
            ((fp - fm).re.clone()) / (rnew(bits, h) * 2u32)
        };
        let d1 = d_at(1e-4);
        let d2 = d_at(1e-5);
        let extrap: Real = (d2.clone() * 100u32 - &d1) / 99u32;
        assert!(
            (extrap.clone() + m.c1()).abs() < rnew(bits, 1e-9),
            "f'(0) = {:e}",
            extrap.to_f64()
        );
        // the identity exp(n sqrt(f)) = (-1)^n exp(n xi) just left of 0
        let n = 7u32;
        let x = Complex::with_val(bits, -0.01, 0.0);
        let f = m.conformal_f(&x).unwrap();
        let lhs = f.sqrt().scale(&Float::with_val(bits, n)).exp();
        let rhs = -(m
            .xi_eq(&x)
            .unwrap()
            .scale(&Float::with_val(bits, n))
            .exp());
        let rel = (&lhs - &rhs).abs() / lhs.abs();
        assert!(rel < rnew(bits, 1e-12), "relative gap {:e}", rel.to_f64());
        // injectivity on a small disk and sign along (-delta, 0)
        let pts = [
            (0.02, 0.0),
            (-0.02, 0.0),
            (0.0, 0.02),
            (0.013, -0.007),
            (-0.005, 0.019),
            (0.02, 0.02),
        ];
        let mut vals = Vec::new();
        for (re, im) in pts {
            vals.push(m.conformal_f(&Complex::with_val(bits, re, im)).unwrap());
        }
        for i in 0..vals.len() {
            for j in (i + 1)..vals.len() {
                assert!((&vals[i] - &vals[j]).abs() > rnew(bits, 1e-5));
            }
        }
        for x in [-0.01, -0.05] {
            let f = m.conformal_f(&Complex::with_val(bits, x, 0.0)).unwrap();
            assert!(f.re.is_sign_positive() && f.im.clone().abs() < exp10i(bits, -25));
        }
        assert!(m.conformal_f(&Complex::with_val(bits, 3.0, 0.0)).is_err());
    }

    #[test]
    fn density_endpoint_scaling() {
        let m = measure();
        let bits = m.bits();
        // psi(x) sqrt(x) -> c sqrt(b) / 2 pi at the hard edge
        let want: Real = m.c.clone() * m.b.clone().sqrt() / (pi(bits) * 2u32);
        let mut prev = rnew(bits, f64::MAX);
        for x in [1e-4, 1e-6, 1e-8] {
            let xr = rnew(bits, x);
            let v = m.density(&xr).unwrap() * xr.sqrt();
            let gap = (v - &want).abs();
            assert!(gap < prev, "no improvement at x={x}");
            prev = gap;
        }
        assert!(prev < rnew(bits, 1e-8));
        // psi(x)/sqrt(b - x) -> c / (2 pi sqrt(b)) at the soft edge
        let want: Real = m.c.clone() / (pi(bits) * 2u32 * m.b.clone().sqrt());
        let x: Real = m.b.clone() - rnew(bits, 1e-8);
        let v = m.density(&x).unwrap() / (m.b.clone() - &x).sqrt();
        assert!((v - want).abs() < rnew(bits, 1e-8));
    }

    #[test]
    fn guards_reject_cut_points() {
        let m = measure();
        let bits = m.bits();
        assert!(m.g_eq(&Complex::with_val(bits, 2.0, 0.0)).is_err());
        assert!(m.g_eq(&Complex::with_val(bits, -1.0, 0.0)).is_err());
        assert!(m.xi_eq(&Complex::with_val(bits, 2.0, 0.0)).is_err());
        assert!(m.density(&rnew(bits, -1.0)).is_err());
        // xi accepts the negative axis (limit from above)
        assert!(m.xi_eq(&Complex::with_val(bits, -0.5, 0.0)).is_ok());
    }
}
