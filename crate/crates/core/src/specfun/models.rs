//! The two model Riemann-Hilbert matrices used as local parametrices: a
//! Bessel-built matrix with rays at arg z in {2pi/3, pi, -2pi/3} and an
//! Airy-built matrix with an extra ray on the positive axis.
//!
//! Conventions fixed here and asserted by tests:
//!   * all fractional powers principal (cut on (-infty, 0]);
//!   * rays are oriented away from the origin and the + side of each ray
//!     is the sector on its counterclockwise side, except the positive-axis
//!     Airy ray which is oriented toward the origin (+ side below), the
//!     orientation under which the stated jump matrix [[1,-1],[0,1]] holds;
//!   * sector indices: Bessel 1 = |arg z| < 2pi/3, 2 = upper left,
//!     3 = lower left; Airy 1..4 counterclockwise starting from
//!     0 < arg z < 2pi/3.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::matrix2::{n_rotation, ComplexMatrix2};
use crate::real::{pi, Real};
use crate::specfun::airy::airy_pair;
use crate::specfun::bessel::{bessel_i, bessel_i_prime, bessel_k, bessel_k_prime};
use rug::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselRegion {
    /// |arg z| < 2pi/3
    Omega1,
    /// 2pi/3 < arg z < pi
    Omega2,
    /// -pi < arg z < -2pi/3
    Omega3,
}

/// Sector classification with a contour-proximity guard.
pub fn bessel_region_of(z: &Complex) -> Result<BesselRegion> {
    let bits = z.prec();
    let arg = z.arg();
    let ray: Real = pi(bits) * 2u32 / 3u32;
    let tol = Float::with_val(bits, 1e-12);
    let d1: Real = (arg.clone().abs() - ray.clone()).abs();
    let on_neg_axis = (pi(bits) - arg.clone().abs()).abs() < tol;
    if z.is_zero() || d1 < tol || on_neg_axis {
        return Err(Error::OnContour {
            op: "bessel_model_matrix",
            msg: format!("arg z = {:.6}", arg.to_f64()),
        });
    }
    if arg.clone().abs() < ray {
        Ok(BesselRegion::Omega1)
    } else if arg.is_sign_positive() {
        Ok(BesselRegion::Omega2)
    } else {
        Ok(BesselRegion::Omega3)
    }
}

fn h_factor(region: BesselRegion, alpha: &Real, bits: u32) -> ComplexMatrix2 {
    match region {
        BesselRegion::Omega1 => ComplexMatrix2::identity(bits),
        BesselRegion::Omega2 => {
            // H_2 = [[1, 0], [-e^{i pi alpha}, 1]]
            let ang: Real = pi(bits) * alpha;
            let (s, c) = ang.sin_cos(Float::new(bits));
            ComplexMatrix2::lower(-Complex::new(c, s))
        }
        BesselRegion::Omega3 => {
            // H_3 = [[1, 0], [e^{-i pi alpha}, 1]]
            let ang: Real = -(pi(bits) * alpha);
            let (s, c) = ang.sin_cos(Float::new(bits));
            ComplexMatrix2::lower(Complex::new(c, s))
        }
    }
}

/// Jump matrix on each Bessel ray (counterclockwise + side).
pub fn bessel_jump(region_boundary: u8, alpha: &Real, bits: u32) -> ComplexMatrix2 {
    match region_boundary {
        // Sigma_1 at arg = 2pi/3: [[1,0],[-e^{i pi alpha},1]]
        1 => {
            let ang: Real = pi(bits) * alpha;
            let (s, c) = ang.sin_cos(Float::new(bits));
            ComplexMatrix2::lower(-Complex::new(c, s))
        }
        // Sigma_2 on the negative axis: [[0,-1],[1,0]]
        2 => ComplexMatrix2::new(
            Complex::zero(bits),
            -Complex::one(bits),
            Complex::one(bits),
            Complex::zero(bits),
        ),
        // Sigma_3 at arg = -2pi/3: [[1,0],[-e^{-i pi alpha},1]]
        3 => {
            let ang: Real = -(pi(bits) * alpha);
            let (s, c) = ang.sin_cos(Float::new(bits));
            ComplexMatrix2::lower(-Complex::new(c, s))
        }
        _ => panic!("bessel rays are numbered 1..=3"),
    }
}

/// The Bessel model matrix in its sector, prefactor included.
pub fn bessel_model_matrix(z: &Complex, region: BesselRegion, alpha: &Real) -> Result<ComplexMatrix2> {
    let bits = z.prec();
    let observed = bessel_region_of(z)?;
    if observed != region {
        return Err(Error::domain(
            "bessel_model_matrix",
            format!("z with arg {:.6} is in {observed:?}, not {region:?}", z.arg().to_f64()),
        ));
    }
    let w = z.sqrt();
    let alpha_w = Float::with_val(bits, alpha);
    let iv = bessel_i(&alpha_w, &w)?;
    let kv = bessel_k(&alpha_w, &w)?;
    let ip = bessel_i_prime(&alpha_w, &w)?;
    let kp = bessel_k_prime(&alpha_w, &w)?;
    let pi_b = pi(bits);
    // core = [[I_a(w), (i/pi) K_a(w)], [pi i w I_a'(w), -w K_a'(w)]]
    let core = ComplexMatrix2::new(
        iv,
        kv.mul_i().scale(&pi_b.clone().recip()),
        (&w * &ip).mul_i().scale(&pi_b),
        -(&w * &kp),
    );
    // prefactor (I + (i/8)(4 a^2 + 3) sigma_-) pi^{sigma_3/2}
    let coef: Real = (alpha_w.square() * 4u32 + 3u32) / 8u32;
    let low = ComplexMatrix2::lower(Complex::new(Float::new(bits), coef));
    let pi_pow = ComplexMatrix2::diag(Complex::from_real(pi_b.sqrt()));
    let pre = &low * &pi_pow;
    let h = h_factor(region, &Float::with_val(bits, alpha), bits);
    Ok(&(&pre * &core) * &h)
}

/// Deviation of Upsilon(R) e^{-sqrt(R) sigma3} N^{-1} R^{sigma3/4} from I;
/// decays like 1/R on the positive axis.
pub fn bessel_model_asymptotic_residual(r: &Real, alpha: &Real) -> Result<Real> {
    let bits = r.prec();
    if !r.is_sign_positive() || r.is_zero() {
        return Err(Error::domain("bessel_model_asymptotic_residual", "need R > 0"));
    }
    let z = Complex::from_real(r.clone());
    let ups = bessel_model_matrix(&z, BesselRegion::Omega1, alpha)?;
    let sqrt_z = z.sqrt();
    let decay = ComplexMatrix2::sigma3_exp(&-sqrt_z);
    let n_inv = n_rotation(bits).inverse();
    let quarter = Float::with_val(bits, 0.25);
    let zpow = ComplexMatrix2::z_pow_sigma3(&z, &quarter);
    let m = &(&(&ups * &decay) * &n_inv) * &zpow;
    Ok(m.deviation_from_identity())
}

/// Jump residual || Y_+ - Y_- J || at a point on ray `ray`, where both
/// sides are approached with transverse offset eps.
pub fn bessel_jump_residual(radius: f64, ray: u8, eps: f64, alpha: &Real, bits: u32) -> Result<Real> {
    let ang = match ray {
        1 => 2.0 * std::f64::consts::PI / 3.0,
        2 => std::f64::consts::PI,
        3 => -2.0 * std::f64::consts::PI / 3.0,
        _ => return Err(Error::invalid("bessel_jump_residual", "ray must be 1..=3")),
    };
    // + side: counterclockwise of the ray; - side: clockwise
    let point = |delta: f64| -> Complex {
        let th = ang + delta;
        Complex::with_val(bits, radius * th.cos(), radius * th.sin())
    };
    let zp = point(eps);
    let zm = point(-eps);
    let alpha_b = Float::with_val(bits, alpha);
    let up = bessel_model_matrix(&zp, bessel_region_of(&zp)?, &alpha_b)?;
    let um = bessel_model_matrix(&zm, bessel_region_of(&zm)?, &alpha_b)?;
    let j = bessel_jump(ray, &alpha_b, bits);
    Ok(up.sub(&(&um * &j)).max_norm())
}

/// The Airy model matrix sector: 1..4 counterclockwise from the positive
/// real axis, with rays at arg z in {0, 2pi/3, pi, -2pi/3}.
pub fn airy_sector_of(z: &Complex) -> Result<u8> {
    let bits = z.prec();
    let arg = z.arg();
    let ray: Real = pi(bits) * 2u32 / 3u32;
    let tol = Float::with_val(bits, 1e-12);
    let near = |target: &Real| -> bool { (arg.clone() - target).abs() < tol };
    let zero = Float::new(bits);
    let on_pos = near(&zero);
    let on_neg = (pi(bits) - arg.clone().abs()).abs() < tol;
    let on_up = near(&ray);
    let on_dn = near(&(-ray.clone()));
    if z.is_zero() || on_pos || on_neg || on_up || on_dn {
        return Err(Error::OnContour {
            op: "airy_model_matrix",
            msg: format!("arg z = {:.6}", arg.to_f64()),
        });
    }
    Ok(if arg.is_sign_positive() {
        if arg < ray {
            1
        } else {
            2
        }
    } else if arg.clone().abs() < ray {
        4
    } else {
        3
    })
}

/// The Airy model matrix, sector factors included.
pub fn airy_model_matrix(z: &Complex) -> Result<ComplexMatrix2> {
    let bits = z.prec();
    let sector = airy_sector_of(z)?;
    let (sin23, cos23) = {
        let ang: Real = pi(bits) * 2u32 / 3u32;
        ang.sin_cos(Float::new(bits))
    };
    let omega = Complex::new(cos23, sin23);
    let omega2 = &omega * &omega;
    let (col2_arg, col2_val_scale, col2_der_scale) = match sector {
        1 | 2 => {
            // columns [Ai(z), Ai(w^2 z)] with derivative row scale w^2
            (z * &omega2, Complex::one(bits), omega2.clone())
        }
        3 | 4 => {
            // columns [Ai(z), -w^2 Ai(w z)] with derivative row scale -1
            (z * &omega, -omega2.clone(), -Complex::one(bits))
        }
        _ => unreachable!(),
    };
    let (ai1, aip1) = airy_pair(z)?;
    let (ai2, aip2) = airy_pair(&col2_arg)?;
    let core = ComplexMatrix2::new(
        ai1,
        &col2_val_scale * &ai2,
        aip1,
        &col2_der_scale * &aip2,
    );
    // e^{-i pi/6 sigma3}
    let phase = {
        let ang: Real = -(pi(bits) / 6u32);
        let (s, c) = ang.sin_cos(Float::new(bits));
        ComplexMatrix2::diag(Complex::new(c, s))
    };
    let factor = match sector {
        2 => ComplexMatrix2::lower(-Complex::one(bits)),
        3 => ComplexMatrix2::lower(Complex::one(bits)),
        _ => ComplexMatrix2::identity(bits),
    };
    // M_A = sqrt(2 pi) e^{i pi/6} diag(1, -i)
    let m_a = {
        let ang: Real = pi(bits) / 6u32;
        let (s, c) = ang.sin_cos(Float::new(bits));
        let w = Complex::new(c, s).scale(&(pi(bits) * 2u32).sqrt());
        ComplexMatrix2::new(
            w.clone(),
            Complex::zero(bits),
            Complex::zero(bits),
            -w.mul_i(),
        )
    };
    Ok(&(&m_a * &(&core * &phase)) * &factor)
}

/// Jump matrix on Airy ray 1..4 (1: arg 2pi/3, 2: pi, 3: -2pi/3, 4: 0).
pub fn airy_jump(ray: u8, bits: u32) -> ComplexMatrix2 {
    match ray {
        1 | 3 => ComplexMatrix2::lower(-Complex::one(bits)),
        2 => ComplexMatrix2::new(
            Complex::zero(bits),
            -Complex::one(bits),
            Complex::one(bits),
            Complex::zero(bits),
        ),
        4 => ComplexMatrix2::upper(-Complex::one(bits)),
        _ => panic!("airy rays are numbered 1..=4"),
    }
}

/// Jump residual || Y_+ - Y_- J || on Airy ray `ray` at given radius.
pub fn airy_jump_residual(radius: f64, ray: u8, eps: f64, bits: u32) -> Result<Real> {
    let ang = match ray {
        1 => 2.0 * std::f64::consts::PI / 3.0,
        2 => std::f64::consts::PI,
        3 => -2.0 * std::f64::consts::PI / 3.0,
        4 => 0.0,
        _ => return Err(Error::invalid("airy_jump_residual", "ray must be 1..=4")),
    };
    let point = |delta: f64| -> Complex {
        let th = ang + delta;
        Complex::with_val(bits, radius * th.cos(), radius * th.sin())
    };
    // ray 4 runs toward the origin, so its + side is the lower sector
    let flip = if ray == 4 { -1.0 } else { 1.0 };
    let zp = point(flip * eps);
    let zm = point(-flip * eps);
    let up = airy_model_matrix(&zp)?;
    let um = airy_model_matrix(&zm)?;
    let j = airy_jump(ray, bits);
    Ok(up.sub(&(&um * &j)).max_norm())
}

/// Deviation of N^{-1} z^{sigma3/4} Y_A(z) e^{(2/3) z^{3/2} sigma3} from I;
/// decays like z^{-3/2}.
pub fn airy_model_asymptotic_residual(z: &Complex) -> Result<Real> {
    let bits = z.prec();
    let ups = airy_model_matrix(z)?;
    let zeta = z
        .pow_real(&Float::with_val(bits, 1.5))
        .scale(&(Float::with_val(bits, 2) / 3u32));
    let grow = ComplexMatrix2::sigma3_exp(&zeta);
    let n_inv = n_rotation(bits).inverse();
    let quarter = Float::with_val(bits, 0.25);
    let zpow = ComplexMatrix2::z_pow_sigma3(z, &quarter);
    let m = &(&n_inv * &zpow) * &(&ups * &grow);
    Ok(m.deviation_from_identity())
}
