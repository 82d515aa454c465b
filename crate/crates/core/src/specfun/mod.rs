//! Special functions: Bessel/Macdonald and Airy evaluation with
//! certified-accuracy strategies, plus the two universal limit kernels.

pub mod airy;
pub mod bessel;
pub mod f2;
pub mod kernels;
pub mod models;

pub use airy::{airy_ai, airy_ai_prime, airy_ai_prime_real, airy_ai_real, airy_pair};
pub use bessel::{bessel_i, bessel_i_prime, bessel_j, bessel_j_prime, bessel_k, bessel_k_prime};
pub use f2::{f2_origin, h_origin};
pub use kernels::{airy_kernel, bessel_kernel};
pub use models::{
    airy_jump, airy_jump_residual, airy_model_asymptotic_residual, airy_model_matrix,
    airy_sector_of, bessel_jump, bessel_jump_residual, bessel_model_asymptotic_residual,
    bessel_model_matrix, bessel_region_of, BesselRegion,
};

use crate::complex::Complex;
use crate::error::Result;
use crate::precision::Precision;
use crate::real::Real;
use rug::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    J,
    I,
    K,
}

/// Real-argument Bessel evaluation at a requested precision (CLI entry).
pub fn bessel_value(kind: BesselKind, nu: &Real, x: &Real, prec: Precision) -> Result<Real> {
    let bits = prec.plus(10).bits();
    let xw = Float::with_val(bits, x);
    let nw = Float::with_val(bits, nu);
    let out = prec.bits();
    match kind {
        BesselKind::J => Ok(Float::with_val(out, bessel_j(&nw, &xw)?)),
        BesselKind::I => {
            let v = bessel_i(&nw, &Complex::from_real(xw))?;
            Ok(Float::with_val(out, v.re))
        }
        BesselKind::K => {
            let v = bessel_k(&nw, &Complex::from_real(xw))?;
            Ok(Float::with_val(out, v.re))
        }
    }
}

/// (Ai, Ai') on the real line at a requested precision (CLI entry).
pub fn airy_values(x: &Real, prec: Precision) -> Result<(Real, Real)> {
    let bits = prec.plus(10).bits();
    let xw = Float::with_val(bits, x);
    let ai = airy_ai_real(&xw)?;
    let aip = airy_ai_prime_real(&xw)?;
    let out = prec.bits();
    Ok((Float::with_val(out, ai), Float::with_val(out, aip)))
}
