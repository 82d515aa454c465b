//! Fixed-step RK4 for small big-float ODE systems.
//!
//! This exists to manufacture reference solutions for residual tests, so
//! it favors predictability over speed: classic fourth-order steps, no
//! adaptivity, and an optional step-halving error estimate.

use crate::error::{Error, Result};
use crate::real::Real;
use rug::Float;

fn axpy(bits: u32, y: &[Real], h: &Real, k: &[Real]) -> Vec<Real> {
    y.iter()
        .zip(k.iter())
        .map(|(yi, ki)| {
            let mut v = Float::with_val(bits, yi);
            v += h.clone() * ki;
            v
        })
        .collect()
}

/// Integrate y' = f(t, y) from t0 to t1 with `steps` RK4 steps.
pub fn rk4<F>(t0: &Real, y0: &[Real], t1: &Real, steps: usize, f: F) -> Vec<Real>
where
    F: Fn(&Real, &[Real]) -> Vec<Real>,
{
    let bits = t0.prec();
    assert!(steps > 0);
    let h: Real = (t1.clone() - t0) / Float::with_val(bits, steps as u32);
    let half: Real = h.clone() / 2u32;
    let sixth: Real = h.clone() / 6u32;
    let third: Real = h.clone() / 3u32;
    let mut t = t0.clone();
    let mut y = y0.to_vec();
    for _ in 0..steps {
        let k1 = f(&t, &y);
        let tm: Real = t.clone() + &half;
        let k2 = f(&tm, &axpy(bits, &y, &half, &k1));
        let k3 = f(&tm, &axpy(bits, &y, &half, &k2));
        let te: Real = t.clone() + &h;
        let k4 = f(&te, &axpy(bits, &y, &h, &k3));
        for i in 0..y.len() {
            y[i] += sixth.clone() * &k1[i]
                + third.clone() * &k2[i]
                + third.clone() * &k3[i]
                + sixth.clone() * &k4[i];
        }
        t = te;
    }
    y
}

/// RK4 with a step-halving error estimate. Fails if the two runs disagree
/// by more than `tol` in any component.
pub fn rk4_checked<F>(
    t0: &Real,
    y0: &[Real],
    t1: &Real,
    steps: usize,
    tol: &Real,
    f: F,
) -> Result<Vec<Real>>
where
    F: Fn(&Real, &[Real]) -> Vec<Real>,
{
    let coarse = rk4(t0, y0, t1, steps, &f);
    let fine = rk4(t0, y0, t1, steps * 2, &f);
    for (c, fi) in coarse.iter().zip(fine.iter()) {
        let d: Real = (c.clone() - fi).abs();
        if &d > tol {
            return Err(Error::NoConvergence {
                op: "rk4_checked",
                msg: format!(
                    "step halving moved a component by {:.3e} (tol {:.3e}); raise steps",
                    d.to_f64(),
                    tol.to_f64()
                ),
            });
        }
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{exp10i, rnew};

    #[test]
    fn exponential_growth() {
        let bits = 200;
        let t0 = rnew(bits, 0.0);
        let t1 = rnew(bits, 1.0);
        let y = rk4(&t0, &[rnew(bits, 1.0)], &t1, 400, |_, y| vec![y[0].clone()]);
        let e: Real = (y[0].clone() - rnew(bits, 1.0).exp()).abs();
        assert!(e < exp10i(bits, -11), "exp(1) off by {:e}", e.to_f64());
    }

    #[test]
    fn harmonic_oscillator_returns_home() {
        let bits = 200;
        let t0 = rnew(bits, 0.0);
        let t1 = crate::real::pi(bits) * 2u32;
        let y0 = [rnew(bits, 1.0), rnew(bits, 0.0)];
        let y = rk4(&t0, &y0, &t1, 800, |_, y| vec![y[1].clone(), -y[0].clone()]);
        let e0: Real = (y[0].clone() - 1u32).abs();
        assert!(e0 < exp10i(bits, -10), "cos period off by {:e}", e0.to_f64());
    }

    #[test]
    fn fourth_order_convergence() {
        let bits = 300;
        let t0 = rnew(bits, 0.0);
        let t1 = rnew(bits, 1.0);
        let exact = rnew(bits, 1.0).exp();
        let err = |steps: usize| -> f64 {
            let y = rk4(&t0, &[rnew(bits, 1.0)], &t1, steps, |_, y| vec![y[0].clone()]);
            (y[0].clone() - &exact).abs().to_f64()
        };
        let ratio = err(50) / err(100);
        assert!((ratio - 16.0).abs() < 1.0, "error ratio {ratio} not ~16");
    }

    #[test]
    fn checked_variant_flags_coarse_grids() {
        let bits = 128;
        let t0 = rnew(bits, 0.0);
        let t1 = rnew(bits, 5.0);
        let tol = exp10i(bits, -30);
        // stiff-ish decay: 2 steps over [0,5] cannot hold 30 digits
        let r = rk4_checked(&t0, &[rnew(bits, 1.0)], &t1, 2, &tol, |_, y| {
            vec![-y[0].clone() * 4u32]
        });
        assert!(r.is_err());
    }
}
