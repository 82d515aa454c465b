//! The coupled ODE system behind the hard-edge transcendents: its constants,
//! the Lenard-type recursion generating the chain ell_0, ell_1, ..., residual
//! operators for the k+1 equations, and the Lax compatibility identity that
//! the b-polynomial must satisfy.
//!
//! Index conventions: ell_0 = s/2 and ell_{k+1} = 0 are supplied internally;
//! callers pass only ell_1..ell_k. Residuals are returned as grid functions
//! so failures can be localized in s.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::real::{factorial, odd_double_factorial, Real};
use rug::ops::Pow;
use rug::Float;

#[derive(Clone, Debug)]
pub struct HierarchyConstants {
    pub k: u32,
    pub alpha: Real,
    /// tau_0..tau_k
    pub tau: Vec<Real>,
    /// Left edge of the stationary-phase cut; always negative.
    pub z0: Real,
    /// beta_0..beta_{k-2}; empty when k = 1.
    pub beta: Vec<Real>,
    pub g1: Real,
    pub g2: Real,
    /// Scaling exponent 2k/(2k+1).
    pub eta: Real,
    /// Airy-window scale constant.
    pub c2: Real,
}

impl HierarchyConstants {
    /// beta_j with out-of-range indices reading as 0, so g1 and g2 formulas
    /// stay uniform in k.
    pub fn beta_at(&self, j: i64) -> Real {
        let bits = self.z0.prec();
        if j < 0 || j as usize >= self.beta.len() {
            Float::new(bits)
        } else {
            self.beta[j as usize].clone()
        }
    }
}

/// (2j+1)!! / (2^j j!), the coefficient stream shared by beta and c2.
fn semifactorial_ratio(bits: u32, j: u32) -> Real {
    let num = odd_double_factorial(bits, j);
    let den = Float::with_val(bits, Float::u_pow_u(2, j)) * factorial(bits, j);
    num / den
}

pub fn hierarchy_constants(k: u32, alpha: &Real) -> Result<HierarchyConstants> {
    if k == 0 {
        return Err(Error::invalid(
            "hierarchy_constants",
            "k = 0 is the unperturbed hard edge; the hierarchy starts at k = 1",
        ));
    }
    let bits = alpha.prec();
    let minus_one = Float::with_val(bits, -1);
    if *alpha <= minus_one {
        return Err(Error::invalid("hierarchy_constants", "alpha must exceed -1"));
    }
    // tau_0 = 4^{2k+1} k^2; tau_k = -(-4)^{k+1} alpha k; zero in between
    let mut tau = vec![Float::new(bits); (k + 1) as usize];
    tau[0] = Float::with_val(bits, Float::u_pow_u(4, 2 * k + 1)) * k * k;
    let tau_k: Real = Float::with_val(bits, Float::u_pow_u(4, k + 1)) * alpha * k;
    tau[k as usize] = if k % 2 == 0 { tau_k } else { -tau_k };
    // z0 = -(2^{k-1} (k-1)! / (2k-1)!!)^{-2/(2k+1)}
    let ratio = Float::with_val(bits, Float::u_pow_u(2, k - 1)) * factorial(bits, k - 1)
        / odd_double_factorial(bits, k - 1);
    let expo = Float::with_val(bits, -2) / (2 * k + 1);
    let z0: Real = -(ratio.pow(&expo));
    let mz0 = -z0.clone();
    // beta_j = (-1)^{j+k-1} (-z0)^{-3/2-j} (2j+1)!!/(2^j j!)
    let mut beta = Vec::new();
    for j in 0..k.saturating_sub(1) {
        let p: Real = -(Float::with_val(bits, 1.5) + j);
        let mag = mz0.clone().pow(&p) * semifactorial_ratio(bits, j);
        beta.push(if (j + k - 1) % 2 == 0 { mag } else { -mag });
    }
    let consts_beta_at = |j: i64| -> Real {
        if j < 0 || j as usize >= beta.len() {
            Float::new(bits)
        } else {
            beta[j as usize].clone()
        }
    };
    let three_half = Float::with_val(bits, 1.5);
    let g1: Real = consts_beta_at(k as i64 - 2) - three_half.clone() * &z0;
    let g2: Real = Float::with_val(bits, 0.375) * z0.clone().square()
        + consts_beta_at(k as i64 - 3)
        - three_half * &z0 * consts_beta_at(k as i64 - 2);
    let eta = Float::with_val(bits, 2 * k) / (2 * k + 1);
    // c2 = (3/2)^{2/3} (-z0)^{-(3+2k)/3} sum_{j<k} (2j+1)!!/(2^j j!)
    let mut sum = Float::new(bits);
    for j in 0..k {
        sum += semifactorial_ratio(bits, j);
    }
    let c2_pow: Real = -(Float::with_val(bits, 3 + 2 * k) / 3u32);
    let two_thirds: Real = Float::with_val(bits, 2) / 3u32;
    let c2: Real = Float::with_val(bits, 1.5).pow(&two_thirds) * mz0.pow(&c2_pow) * sum;
    Ok(HierarchyConstants {
        k,
        alpha: alpha.clone(),
        tau,
        z0,
        beta,
        g1,
        g2,
        eta,
        c2,
    })
}

/// Stationary g-function: (z - z0)^{3/2} p_{k-1}(z) z^{-k} with the monic
/// p_{k-1} whose coefficients are the beta_j. Its full pole part at the
/// origin is (-1)^{k+1} z^{-k}; at infinity g ~ z^{1/2} + g1 z^{-1/2} + ...
pub fn g_stationary(z: &Complex, k: u32) -> Result<Complex> {
    let bits = z.prec();
    let consts = hierarchy_constants(k, &Float::new(bits))?;
    if z.is_zero() {
        return Err(Error::domain("g_stationary", "pole of order k at the origin"));
    }
    if z.im.is_zero() && z.re <= consts.z0 {
        return Err(Error::OnContour {
            op: "g_stationary",
            msg: "z on the branch cut (-infinity, z0]".into(),
        });
    }
    let shifted = z - &Complex::from_real(consts.z0.clone());
    let w = shifted.pow_real(&Float::with_val(bits, 1.5));
    // Horner for p(z) = z^{k-1} + beta_{k-2} z^{k-2} + ... + beta_0
    let mut p = Complex::one(bits);
    for j in (0..consts.beta.len()).rev() {
        p = &(&p * z) + &Complex::from_real(consts.beta[j].clone());
    }
    Ok(&(&w * &p) / &z.powi(k as i32))
}

/// One step of the differential recursion ell'_{j+1} = ell'''_j + 4 u ell'_j
/// + 2 u' ell_j, integrated so that ell_{j+1} equals `c` at the left
/// endpoint. The left side is not a total derivative for this chain, so the
/// constant is genuinely free and must come from the caller.
pub fn lenard_step(lj: &GridFunction, u: &GridFunction, c: &Real) -> Result<GridFunction> {
    lj.check_grid(u, "lenard_step")?;
    let lj1 = lj.derivative();
    let lj3 = lj1.derivative().derivative();
    let four = Float::with_val(lj.bits(), 4);
    let two = Float::with_val(lj.bits(), 2);
    let rhs = &(&lj3 + &(u * &lj1).scale(&four)) + &(&u.derivative() * lj).scale(&two);
    Ok(rhs.antiderivative().add_constant(c))
}

/// Invert the p = 0 equation: u = -((ell_k^2)'' - 3 (ell_k')^2 + tau_0) / (4 ell_k^2).
pub fn u_from_lk(lk: &GridFunction, tau0: &Real) -> Result<GridFunction> {
    let bits = lk.bits();
    let lk2 = lk * lk;
    let d1 = lk.derivative();
    let three = Float::with_val(bits, 3);
    let num = &(&lk2.derivative().derivative() - &(&d1 * &d1).scale(&three)).add_constant(tau0);
    let quarter = Float::with_val(bits, -0.25);
    Ok(num.div_pointwise(&lk2)?.scale(&quarter))
}

/// Residuals of the k+1 coupled equations, index p = 0..k:
/// sum_{q=0}^{p} [ ell_{k-p+q+1} ell_{k-q} - (ell_{k-p+q} ell_{k-q})''
///               + 3 ell'_{k-p+q} ell'_{k-q} - 4 u ell_{k-p+q} ell_{k-q} ] - tau_p.
pub fn system_residual(
    consts: &HierarchyConstants,
    ell: &[GridFunction],
    u: &GridFunction,
) -> Result<Vec<GridFunction>> {
    let k = consts.k as usize;
    if ell.len() != k {
        return Err(Error::invalid(
            "system_residual",
            "need exactly ell_1..ell_k",
        ));
    }
    for l in ell {
        l.check_grid(u, "system_residual")?;
    }
    let bits = u.bits();
    let grid = u.grid().clone();
    let half = Float::with_val(bits, 0.5);
    // chain[j] = ell_j for j = 0..=k+1
    let mut chain = Vec::with_capacity(k + 2);
    chain.push(GridFunction::coordinate(grid.clone()).scale(&half));
    chain.extend(ell.iter().cloned());
    chain.push(GridFunction::zero(grid));
    let deriv: Vec<GridFunction> = chain.iter().map(|l| l.derivative()).collect();
    let three = Float::with_val(bits, 3);
    let four = Float::with_val(bits, 4);
    let mut out = Vec::with_capacity(k + 1);
    for p in 0..=k {
        let mut acc = GridFunction::zero(u.grid().clone());
        for q in 0..=p {
            let i = k - p + q;
            let j = k - q;
            let prod = &chain[i] * &chain[j];
            let term = &(&(&chain[i + 1] * &chain[j]) - &prod.derivative().derivative())
                + &(&(&deriv[i] * &deriv[j]).scale(&three) - &(u * &prod).scale(&four));
            acc = &acc + &term;
        }
        let mtau = -consts.tau[p].clone();
        out.push(acc.add_constant(&mtau));
    }
    Ok(out)
}

/// Residual of the explicit k = 1 equation, written as (right side) - ell'':
/// (ell')^2/ell - ell'/s - ell^2/s - tau0/ell + tau1/s - ell''.
/// With this sign the p = 1 system residual equals s times this one.
pub fn piii_residual_k1(l1: &GridFunction, tau0: &Real, tau1: &Real) -> Result<GridFunction> {
    if !l1.grid().lo().is_sign_positive() {
        return Err(Error::domain("piii_residual_k1", "grid must sit in s > 0"));
    }
    let s = GridFunction::coordinate(l1.grid().clone());
    let d1 = l1.derivative();
    let d2 = d1.derivative();
    let t0 = GridFunction::constant(l1.grid().clone(), tau0.clone());
    let a = (&d1 * &d1).div_pointwise(l1)?;
    let b = d1.div_pointwise(&s)?;
    let c = (l1 * l1).div_pointwise(&s)?;
    let d = t0.div_pointwise(l1)?;
    let e = GridFunction::constant(l1.grid().clone(), tau1.clone()).div_pointwise(&s)?;
    Ok(&(&(&a - &b) - &(&c + &d)) + &(&e - &d2))
}

/// The b-polynomial at a point: b(z, s) = 4 (4z)^{-(k+1)} sum_{j=0}^{k}
/// ell_{k-j}(s) (4z)^j with ell_0 = s/2; `ell` holds ell_1..ell_k at s.
pub fn b_poly(z: &Complex, s: &Real, ell: &[Real]) -> Result<Complex> {
    if z.is_zero() {
        return Err(Error::domain("b_poly", "b has a pole at z = 0"));
    }
    let bits = z.prec();
    let k = ell.len();
    let four_z = z.scale(&Float::with_val(bits, 4));
    // Horner over descending j: coefficient of (4z)^k is ell_0 = s/2
    let mut acc = Complex::from_real(Float::with_val(bits, s) / 2u32);
    for j in (0..k).rev() {
        // coefficient of (4z)^j is ell_{k-j}
        acc = &(&acc * &four_z) + &Complex::from_real(ell[k - 1 - j].clone());
    }
    let pw = four_z.powi(-(k as i32 + 1)).scale(&Float::with_val(bits, 4));
    Ok(&acc * &pw)
}

/// Residual of the Lax compatibility identity at fixed z:
/// d/ds c - 1 - 2(z - u) a with a = -(1/2) d/ds b and
/// c = (z - u) b - (1/2) d^2/ds^2 b, which collapses to
/// 2(z - u) b' - u' b - (1/2) b''' - 1.
/// b is passed as (real part, imaginary part) grid functions in s.
pub fn lax_compat_residual(
    b_re: &GridFunction,
    b_im: &GridFunction,
    u: &GridFunction,
    z: &Complex,
) -> Result<(GridFunction, GridFunction)> {
    b_re.check_grid(b_im, "lax_compat_residual")?;
    b_re.check_grid(u, "lax_compat_residual")?;
    let bits = u.bits();
    let two = Float::with_val(bits, 2);
    let half = Float::with_val(bits, 0.5);
    let minus_one = Float::with_val(bits, -1);
    let up = u.derivative();
    let part = |br: &GridFunction| -> (GridFunction, GridFunction, GridFunction) {
        let d1 = br.derivative();
        let d3 = d1.derivative().derivative();
        (d1, d3, br.clone())
    };
    let (re1, re3, re0) = part(b_re);
    let (im1, im3, im0) = part(b_im);
    // complex 2 z b': real 2(zr re1 - zi im1), imag 2(zr im1 + zi re1)
    let zr = &z.re;
    let zi = &z.im;
    let res_re = &(&(&re1.scale(zr) - &im1.scale(zi)).scale(&two)
        - &(&(u * &re1).scale(&two) + &(&up * &re0)))
        - &re3.scale(&half);
    let res_re = res_re.add_constant(&minus_one);
    let res_im = &(&(&im1.scale(zr) + &re1.scale(zi)).scale(&two)
        - &(&(u * &im1).scale(&two) + &(&up * &im0)))
        - &im3.scale(&half);
    Ok((res_re, res_im))
}
