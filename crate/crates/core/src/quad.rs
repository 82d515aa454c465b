//! Double-exponential quadrature.
//!
//! Three entry points:
//!   * [`tanh_sinh`]   - finite interval, tolerates integrable endpoint
//!     singularities (nodes are placed by their exact distance to the
//!     nearer endpoint, so `f` never sees the endpoint itself);
//!   * [`exp_sinh`]    - half line [a, inf) for integrands with at worst a
//!     power-law blowup at `a` and super-polynomial decay at infinity;
//!   * [`integrate_polyline`] - complex contour made of straight segments.
//!
//! Levels halve the step in trapezoid space; the error estimate is the
//! difference between the last two levels, which for analytic integrands
//! overestimates the true error.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::real::{pi, Real};
use rug::ops::Pow;
use rug::Float;

/// Value type produced by an integrand: big reals or complex pairs.
pub trait QuadOutput: Clone {
    fn qzero(bits: u32) -> Self;
    /// self += w * v
    fn qadd_weighted(&mut self, w: &Real, v: &Self);
    fn qnorm(&self) -> Real;
    fn qscale(&self, s: &Real) -> Self;
    fn qis_finite(&self) -> bool;
}

impl QuadOutput for Real {
    fn qzero(bits: u32) -> Self {
        Float::new(bits)
    }
    fn qadd_weighted(&mut self, w: &Real, v: &Self) {
        *self += w.clone() * v;
    }
    fn qnorm(&self) -> Real {
        self.clone().abs()
    }
    fn qscale(&self, s: &Real) -> Self {
        self.clone() * s
    }
    fn qis_finite(&self) -> bool {
        self.is_finite()
    }
}

impl QuadOutput for Complex {
    fn qzero(bits: u32) -> Self {
        Complex::zero(bits)
    }
    fn qadd_weighted(&mut self, w: &Real, v: &Self) {
        self.re += w.clone() * &v.re;
        self.im += w.clone() * &v.im;
    }
    fn qnorm(&self) -> Real {
        self.abs()
    }
    fn qscale(&self, s: &Real) -> Self {
        self.scale(s)
    }
    fn qis_finite(&self) -> bool {
        self.is_finite()
    }
}

pub struct Quadrature<T> {
    pub value: T,
    pub error_estimate: Real,
    pub levels: u32,
    pub evals: u64,
}

/// Relative tolerance 10^-(digits+5): five guard digits past the request.
pub fn tol_for_digits(bits: u32, digits: u32) -> Real {
    Float::with_val(bits, 10).pow(-(Float::with_val(bits, digits + 5)))
}

const MAX_LEVEL: u32 = 12;

/// Largest |t| worth visiting: beyond it the weight alone is below
/// target^2 even against a power-law endpoint blowup.
fn t_cutoff(bits: u32, target: &Real) -> Real {
    let l: Real = -(target.clone().ln()) + 25u32;
    let two_over_pi = 2u32 / pi(bits);
    (l * two_over_pi).asinh()
}

struct LevelSums<T> {
    weighted_sum: T,
    evals: u64,
    hit_nonfinite: bool,
}

impl<T: QuadOutput> LevelSums<T> {
    fn new(bits: u32) -> Self {
        LevelSums { weighted_sum: T::qzero(bits), evals: 0, hit_nonfinite: false }
    }
}

/// Integrate f over [a, b].
pub fn tanh_sinh<T, F>(a: &Real, b: &Real, target: &Real, mut f: F) -> Result<Quadrature<T>>
where
    T: QuadOutput,
    F: FnMut(&Real) -> T,
{
    let bits = a.prec();
    let op = "tanh_sinh";
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::domain(op, "need finite a < b"));
    }
    let half_pi = pi(bits) / 2u32;
    let width = Float::with_val(bits, b - a);
    let half_width = width.clone() / 2u32;
    let t_max = t_cutoff(bits, target);
    // term cutoff is relative to the running sum, rechecked per level
    let mut sums = LevelSums::<T>::new(bits);

    // center node, weight (pi/2) at t = 0
    {
        let mid = Float::with_val(bits, a + b) / 2u32;
        let v = f(&mid);
        sums.evals += 1;
        if !v.qis_finite() {
            return Err(Error::domain(op, "integrand non-finite at interval midpoint"));
        }
        sums.weighted_sum.qadd_weighted(&half_pi, &v);
    }

    let mut prev: Option<T> = None;
    let mut h = Float::with_val(bits, 1);
    let mut last_err = Float::with_val(bits, f64::INFINITY);
    for level in 0..=MAX_LEVEL {
        if level > 0 {
            h /= 2u32;
        }
        let step: u64 = if level == 0 { 1 } else { 2 };
        let mut k = 1u64;
        let mut small_streak = 0u32;
        let scale_hint = sums.weighted_sum.qnorm() * &half_width * &h + 1u32;
        let term_floor: Real = scale_hint * target.clone() / 1000u32;
        loop {
            let t: Real = h.clone() * k;
            if t > t_max {
                break;
            }
            let sh = t.clone().sinh();
            let ch = t.clone().cosh();
            let u: Real = half_pi.clone() * sh;
            // distance from the nearer endpoint: (b-a)/(e^{2u}+1)
            let e2u: Real = (u.clone() * 2u32).exp();
            let dist: Real = width.clone() / (e2u + 1u32);
            let w: Real = half_pi.clone() * ch / u.cosh().square();
            let x_hi: Real = b.clone() - &dist;
            let x_lo: Real = a.clone() + &dist;
            let v_hi = f(&x_hi);
            let v_lo = f(&x_lo);
            sums.evals += 2;
            if !(v_hi.qis_finite() && v_lo.qis_finite()) {
                sums.hit_nonfinite = true;
                break;
            }
            sums.weighted_sum.qadd_weighted(&w, &v_hi);
            sums.weighted_sum.qadd_weighted(&w, &v_lo);
            let tn: Real = (v_hi.qnorm() + v_lo.qnorm()) * &w * &half_width * &h;
            if tn < term_floor {
                small_streak += 1;
                if small_streak >= 2 {
                    break;
                }
            } else {
                small_streak = 0;
            }
            k += step;
        }
        if sums.hit_nonfinite {
            return Err(Error::domain(op, "integrand non-finite near an endpoint"));
        }
        let scale: Real = half_width.clone() * &h;
        let value = sums.weighted_sum.qscale(&scale);
        if let Some(p) = prev.as_ref() {
            let neg1 = Float::with_val(bits, -1);
            let mut d = value.clone();
            d.qadd_weighted(&neg1, p);
            let err = d.qnorm();
            let allowed: Real = (value.qnorm() + 1u32) * target;
            if err <= allowed {
                return Ok(Quadrature { value, error_estimate: err, levels: level, evals: sums.evals });
            }
            last_err = err;
        }
        prev = Some(value);
    }
    Err(Error::NoConvergence {
        op,
        msg: format!(
            "level diff {:.3e} still above tolerance after {} halvings",
            last_err.to_f64(),
            MAX_LEVEL
        ),
    })
}

/// Integrate f over [a, inf).
pub fn exp_sinh<T, F>(a: &Real, target: &Real, mut f: F) -> Result<Quadrature<T>>
where
    T: QuadOutput,
    F: FnMut(&Real) -> T,
{
    let bits = a.prec();
    let op = "exp_sinh";
    if !a.is_finite() {
        return Err(Error::domain(op, "need finite lower endpoint"));
    }
    let half_pi = pi(bits) / 2u32;
    let t_max = t_cutoff(bits, target);
    let mut sums = LevelSums::<T>::new(bits);

    {
        let x0: Real = a.clone() + 1u32;
        let v = f(&x0);
        sums.evals += 1;
        if !v.qis_finite() {
            return Err(Error::domain(op, "integrand non-finite at a + 1"));
        }
        sums.weighted_sum.qadd_weighted(&half_pi, &v);
    }

    let mut prev: Option<T> = None;
    let mut h = Float::with_val(bits, 1);
    let mut last_err = Float::with_val(bits, f64::INFINITY);
    for level in 0..=MAX_LEVEL {
        if level > 0 {
            h /= 2u32;
        }
        let step: u64 = if level == 0 { 1 } else { 2 };
        let mut k = 1u64;
        let mut small_streak = 0u32;
        let scale_hint = sums.weighted_sum.qnorm() * &h + 1u32;
        let term_floor: Real = scale_hint * target.clone() / 1000u32;
        loop {
            let t: Real = h.clone() * k;
            if t > t_max {
                break;
            }
            let sh = t.clone().sinh();
            let ch = t.clone().cosh();
            let u: Real = half_pi.clone() * sh;
            let eu = u.clone().exp();
            // +t node: x - a = e^u, weight (pi/2) ch e^u
            // -t node: x - a = e^-u, weight (pi/2) ch e^-u
            let base: Real = half_pi.clone() * ch;
            let x_hi: Real = a.clone() + &eu;
            let w_hi: Real = base.clone() * &eu;
            let inv_eu = eu.recip();
            let x_lo: Real = a.clone() + &inv_eu;
            let w_lo: Real = base * &inv_eu;
            let v_hi = f(&x_hi);
            let v_lo = f(&x_lo);
            sums.evals += 2;
            if !(v_hi.qis_finite() && v_lo.qis_finite()) {
                sums.hit_nonfinite = true;
                break;
            }
            sums.weighted_sum.qadd_weighted(&w_hi, &v_hi);
            sums.weighted_sum.qadd_weighted(&w_lo, &v_lo);
            let tn: Real = (v_hi.qnorm() * &w_hi + v_lo.qnorm() * &w_lo) * &h;
            if tn < term_floor {
                small_streak += 1;
                if small_streak >= 2 {
                    break;
                }
            } else {
                small_streak = 0;
            }
            k += step;
        }
        if sums.hit_nonfinite {
            return Err(Error::domain(op, "integrand non-finite on the half line"));
        }
        let value = sums.weighted_sum.qscale(&h);
        if let Some(p) = prev.as_ref() {
            let neg1 = Float::with_val(bits, -1);
            let mut d = value.clone();
            d.qadd_weighted(&neg1, p);
            let err = d.qnorm();
            let allowed: Real = (value.qnorm() + 1u32) * target;
            if err <= allowed {
                return Ok(Quadrature { value, error_estimate: err, levels: level, evals: sums.evals });
            }
            last_err = err;
        }
        prev = Some(value);
    }
    Err(Error::NoConvergence {
        op,
        msg: format!(
            "level diff {:.3e} still above tolerance after {} halvings",
            last_err.to_f64(),
            MAX_LEVEL
        ),
    })
}

/// Integrate f along the straight segment from z0 to z1.
pub fn tanh_sinh_segment<F>(
    z0: &Complex,
    z1: &Complex,
    target: &Real,
    mut f: F,
) -> Result<Quadrature<Complex>>
where
    F: FnMut(&Complex) -> Complex,
{
    let bits = z0.prec();
    let dz = z1 - z0;
    let zero = Float::new(bits);
    let one = Float::with_val(bits, 1);
    tanh_sinh(&zero, &one, target, |t| {
        let z = z0 + &dz.scale(t);
        &f(&z) * &dz
    })
}

/// Integrate f along the polyline through `points` (at least two).
pub fn integrate_polyline<F>(
    points: &[Complex],
    target: &Real,
    mut f: F,
) -> Result<Quadrature<Complex>>
where
    F: FnMut(&Complex) -> Complex,
{
    if points.len() < 2 {
        return Err(Error::invalid("integrate_polyline", "need at least two points"));
    }
    let bits = points[0].prec();
    let mut total = Complex::zero(bits);
    let mut err = Float::new(bits);
    let mut levels = 0u32;
    let mut evals = 0u64;
    for pair in points.windows(2) {
        let q = tanh_sinh_segment(&pair[0], &pair[1], target, &mut f)?;
        total = &total + &q.value;
        err += q.error_estimate;
        levels = levels.max(q.levels);
        evals += q.evals;
    }
    Ok(Quadrature { value: total, error_estimate: err, levels, evals })
}
