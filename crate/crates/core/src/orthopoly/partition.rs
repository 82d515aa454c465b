//! Partition functions of the perturbed ensembles and the exact finite-n
//! identities that tie them together.
//!
//! The log partition function is defined as the sum of the log squared
//! norms of the monic orthogonal polynomials; with the 1/n! normalisation
//! of the defining multiple integral the two agree exactly, and the sum is
//! the only form that survives at high degree without overflow.

use crate::error::{Error, Result};
use crate::precision::{bits_for_digits, Precision};
use crate::real::{exp10i, rnew, Real};
use rug::ops::Pow;
use rug::Float;

use super::system::{build_op_system, work_digits_for};
use super::weight::PerturbedWeight;

/// log Z_n = sum_{j<n} log h_j for the given weight.
pub fn partition_log(weight: &PerturbedWeight, n: u32) -> Result<Real> {
    if n == 0 {
        return Err(Error::invalid("partition_log", "need n >= 1"));
    }
    let sys = build_op_system(weight, (n - 1) as usize)?;
    let bits = sys.work_bits();
    Ok(sys
        .norms
        .iter()
        .fold(Float::new(bits), |s, h| s + h.clone().ln()))
}

/// Closed form of log Z_n for the unperturbed Laguerre weight
/// x^alpha e^(-N x): h_j = j! Gamma(j + alpha + 1) / N^(2j + alpha + 1).
pub fn partition_log_t0(bits: u32, n: u32, scale: u32, alpha: &Real) -> Real {
    let lnn = Float::with_val(bits, scale).ln();
    let alpha = Float::with_val(bits, alpha);
    let mut s = Float::new(bits);
    for j in 0..n {
        let g1 = Float::with_val(bits, j + 1).ln_gamma();
        let g2 = (Float::with_val(bits, j + 1) + &alpha).ln_gamma();
        let pow: Real = (Float::with_val(bits, 2 * j + 1) + &alpha) * &lnn;
        s += g1 + g2 - pow;
    }
    s
}

/// Residuals of the even and odd Gaussian-to-Laguerre partition
/// identities at matrix sizes 2n and 2n+1. Both vanish identically in
/// exact arithmetic; the returned values measure only the numerics.
pub fn pgue_plue_residual(
    n: u32,
    k: u32,
    alpha: &Real,
    t: &Real,
    prec: Precision,
) -> Result<(Real, Real)> {
    if n == 0 {
        return Err(Error::invalid("pgue_plue_residual", "need n >= 1"));
    }
    let bits = bits_for_digits(work_digits_for(prec.digits(), 2 * n as usize));
    let half = rnew(bits, 0.5);
    let a0 = Float::with_val(bits, alpha);
    let am: Real = a0.clone() - &half;
    let ap: Real = a0.clone() + &half;
    let t0 = Float::with_val(bits, t);

    let zg = partition_log(
        &PerturbedWeight::pgue(2 * n, k, a0.clone(), t0.clone(), prec)?,
        2 * n,
    )?;
    let zm = partition_log(
        &PerturbedWeight::plue(n, k, am.clone(), t0.clone(), prec)?,
        n,
    )?;
    let zp = partition_log(
        &PerturbedWeight::plue(n, k, ap.clone(), t0.clone(), prec)?,
        n,
    )?;
    let even = (Float::with_val(bits, &zg) - Float::with_val(bits, &zm) - Float::with_val(bits, &zp))
        .abs();

    // odd size couples neighbouring Laguerre sizes and rescales t
    let exp_ratio: Real = Float::with_val(bits, k + 1) / Float::with_val(bits, k);
    let ta: Real = (Float::with_val(bits, 2 * n + 1) / Float::with_val(bits, 2 * n + 2))
        .pow(&exp_ratio)
        * &t0;
    let tb: Real =
        (Float::with_val(bits, 2 * n + 1) / Float::with_val(bits, 2 * n)).pow(&exp_ratio) * &t0;
    let zg1 = partition_log(
        &PerturbedWeight::pgue(2 * n + 1, k, a0.clone(), t0.clone(), prec)?,
        2 * n + 1,
    )?;
    let za = partition_log(&PerturbedWeight::plue(n + 1, k, am, ta, prec)?, n + 1)?;
    let zb = partition_log(&PerturbedWeight::plue(n, k, ap, tb, prec)?, n)?;
    let lr1: Real =
        (Float::with_val(bits, 2 * n) / Float::with_val(bits, 2 * n + 1)).ln() * n;
    let lr2: Real =
        (Float::with_val(bits, 2 * n + 2) / Float::with_val(bits, 2 * n + 1)).ln() * (n + 1);
    let pref: Real = (Float::with_val(bits, n) + a0 + half) * (lr1 + lr2);
    let odd = (Float::with_val(bits, &zg1)
        - pref
        - Float::with_val(bits, &za)
        - Float::with_val(bits, &zb))
    .abs();
    Ok((even, odd))
}

/// Residuals of the two closed forms for d/dt log Z-tilde of the pLUE
/// weight, where Z-tilde(t) = t^(-(n^2 + alpha n)) Z(t) is the partition
/// function of x^alpha e^(-n(tx + x^(-k))).
///
/// The derivative itself comes from five-point central differences; the
/// first form replaces it by the kernel trace -n sum a~_j (a~_j = a_j/t by
/// the monic rescaling p~_j(x) = t^(-j) p_j(tx)), the second by the 1/z
/// coefficient of the Riemann-Hilbert residue, assembled from the
/// subleading polynomial coefficient and one weighted moment.
pub fn diff_identity_residual(
    n: u32,
    k: u32,
    alpha: &Real,
    t: &Real,
    prec: Precision,
) -> Result<(Real, Real)> {
    if n == 0 {
        return Err(Error::invalid("diff_identity_residual", "need n >= 1"));
    }
    if !t.is_sign_positive() || t.is_zero() {
        return Err(Error::domain("diff_identity_residual", "need t > 0"));
    }
    let bits = bits_for_digits(work_digits_for(prec.digits(), n as usize));
    let a0 = Float::with_val(bits, alpha);
    let t0 = Float::with_val(bits, t);
    let scale: Real = Float::with_val(bits, n) * (Float::with_val(bits, n) + &a0);
    let delta = exp10i(bits, -12);

    let log_z_tilde = |steps: i32| -> Result<Real> {
        let tj: Real = (delta.clone() * steps + 1u32) * &t0;
        let w = PerturbedWeight::plue(n, k, a0.clone(), tj.clone(), prec)?;
        let z = partition_log(&w, n)?;
        Ok(Float::with_val(bits, &z) - scale.clone() * tj.ln())
    };
    let diff = |l2m: &Real, l1m: &Real, l1: &Real, l2: &Real, h: &Real| -> Real {
        let num: Real =
            (l1.clone() - l1m) * 8u32 - (l2.clone() - l2m);
        num / (t0.clone() * h * 12u32)
    };
    let l1m = log_z_tilde(-1)?;
    let l1 = log_z_tilde(1)?;
    let l2m = log_z_tilde(-2)?;
    let l2 = log_z_tilde(2)?;
    let l4m = log_z_tilde(-4)?;
    let l4 = log_z_tilde(4)?;
    let d1 = diff(&l2m, &l1m, &l1, &l2, &delta);
    let wide: Real = delta.clone() * 2u32;
    let d2 = diff(&l4m, &l2m, &l2, &l4, &wide);
    let drift = (d1.clone() - &d2).abs();
    let floor: Real = d1.clone().abs().max(&Float::with_val(bits, 1));
    if drift > floor * exp10i(bits, -6) {
        return Err(Error::NoConvergence {
            op: "diff_identity_residual",
            msg: "finite-difference step is unstable; the derivative did not settle".into(),
        });
    }

    let sys = build_op_system(
        &PerturbedWeight::plue(n, k, a0, t0.clone(), prec)?,
        n as usize,
    )?;
    let sum_a = sys
        .rec_a
        .iter()
        .fold(Float::new(bits), |s, a| s + Float::with_val(bits, a));
    let kernel_form = (d1.clone() + sum_a.clone() * n / &t0).abs();

    let p1: Real = -sum_a;
    let nu1 = sys.weighted_moment((n - 1) as usize, n as usize)?;
    let c2: Real = p1 * (2 * n - 1)
        + Float::with_val(bits, &nu1) / Float::with_val(bits, &sys.norms[(n - 1) as usize])
            * (2 * n + 1);
    let residue_form = (d1 + c2 * n / (t0 * 2u32)).abs();
    Ok((kernel_form, residue_form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::weight::ExpWeight;
    use crate::quad::{exp_sinh, tanh_sinh, tol_for_digits};

    fn prec(d: u32) -> Precision {
        Precision::new(d).unwrap()
    }

    fn plue(n: u32, k: u32, alpha: f64, t: f64, d: u32) -> PerturbedWeight {
        let bits = bits_for_digits(d + 20);
        PerturbedWeight::plue(n, k, rnew(bits, alpha), rnew(bits, t), prec(d)).unwrap()
    }

    #[test]
    fn one_by_one_partition_is_the_mass() {
        let w = plue(2, 1, 0.3, 0.1, 40);
        let z = partition_log(&w, 1).unwrap();
        let bits = z.prec();
        let mu = w.exp_form(bits).moments(1, 50).unwrap();
        let gap = (z - mu[0].clone().ln()).abs();
        assert!(gap < exp10i(bits, -45));
    }

    #[test]
    fn unperturbed_partition_matches_the_closed_form() {
        let w = plue(3, 1, 0.3, 0.0, 40);
        let z = partition_log(&w, 3).unwrap();
        let bits = z.prec();
        let want = partition_log_t0(bits, 3, 3, &rnew(bits, 0.3));
        let gap = (z - want).abs();
        assert!(gap < exp10i(bits, -40), "gap {:e}", gap.to_f64());
    }

    #[test]
    fn two_by_two_partition_matches_a_double_integral() {
        let w = plue(2, 1, 0.0, 0.2, 40);
        let z = partition_log(&w, 2).unwrap();
        let bits = bits_for_digits(50);
        let target = tol_for_digits(bits, 25);
        let cut = rnew(bits, 4.0);
        let pair = |x: &Real, y: &Real| -> Real {
            let d: Real = x.clone() - y;
            d.square() * w.value(x).unwrap() * w.value(y).unwrap()
        };
        let inner = |x: &Real| -> Real {
            let head = tanh_sinh(&Float::new(bits), &cut, &target, |y| pair(x, y))
                .unwrap()
                .value;
            let tail = exp_sinh(&cut, &target, |y| pair(x, y)).unwrap().value;
            head + tail
        };
        let head = tanh_sinh(&Float::new(bits), &cut, &target, inner).unwrap().value;
        let tail = exp_sinh(&cut, &target, inner).unwrap().value;
        let brute: Real = (head + tail) / 2u32;
        let gap = (brute.ln() - Float::with_val(bits, &z)).abs();
        assert!(gap < exp10i(bits, -10), "gap {:e}", gap.to_f64());
    }

    #[test]
    fn pulling_t_out_of_the_weight_rescales_the_partition() {
        // log Z(t) = (n^2 + alpha n) log t + log det(mu~_{i+j}) with the
        // tilde moments taken from x^alpha e^(-n(tx + x^(-k)))
        let n = 3u32;
        let w = plue(n, 1, 0.3, 0.15, 40);
        let z = partition_log(&w, n).unwrap();
        // tilde moments need headroom above the certification target
        let bits = bits_for_digits(75);
        let z = Float::with_val(bits, &z);
        let a = rnew(bits, 0.3);
        let nt: Real = rnew(bits, 0.15) * n;
        let tilde = ExpWeight {
            sigma0: a.clone() + 1u32,
            a: nt,
            b: Float::with_val(bits, n),
            k: 1,
        };
        let mu = tilde.moments(5, 60).unwrap();
        let det3: Real = (mu[2].clone() * &mu[4] - mu[3].clone().square()) * &mu[0]
            - (mu[1].clone() * &mu[4] - mu[2].clone() * &mu[3]) * &mu[1]
            + (mu[1].clone() * &mu[3] - mu[2].clone().square()) * &mu[2];
        let scale: Real = (Float::with_val(bits, n) + a) * n;
        let want: Real = scale * rnew(bits, 0.15).ln() + det3.ln();
        let gap = (z - want).abs();
        assert!(gap < exp10i(bits, -30), "gap {:e}", gap.to_f64());
    }

    #[test]
    fn gaussian_partition_factorises_into_laguerre_pair() {
        let bits = bits_for_digits(60);
        for (n, k, alpha, t) in [(2u32, 1u32, 0.3, 0.05), (3, 2, 0.0, 0.02)] {
            let (even, odd) = pgue_plue_residual(
                n,
                k,
                &rnew(bits, alpha),
                &rnew(bits, t),
                prec(40),
            )
            .unwrap();
            let tol = exp10i(even.prec(), -25);
            assert!(even < tol, "even n={n} k={k}: {:e}", even.to_f64());
            assert!(odd < tol, "odd n={n} k={k}: {:e}", odd.to_f64());
        }
    }

    #[test]
    fn smallest_gaussian_case_reduces_to_two_masses() {
        // 2x2 Gaussian system: h^_0 = mu^_0, h^_1 = mu^_2 by parity, so the
        // factorisation reduces to two exponential-form masses
        let bits = bits_for_digits(60);
        let g = PerturbedWeight::pgue(2, 1, rnew(bits, 0.3), rnew(bits, 0.1), prec(40)).unwrap();
        let z = partition_log(&g, 2).unwrap();
        let wb = bits_for_digits(70);
        let mu = g.exp_form(wb).moments(2, 55).unwrap();
        let want: Real = mu[0].clone().ln() + mu[1].clone().ln();
        let gap = (Float::with_val(wb, &z) - want).abs();
        assert!(gap < exp10i(wb, -45), "gap {:e}", gap.to_f64());
    }

    #[test]
    fn simplest_differential_identity() {
        let bits = bits_for_digits(60);
        let (kernel, residue) =
            diff_identity_residual(1, 1, &Float::new(bits), &rnew(bits, 0.1), prec(40)).unwrap();
        assert!(kernel < exp10i(kernel.prec(), -12), "kernel {:e}", kernel.to_f64());
        assert!(residue < exp10i(residue.prec(), -12), "residue {:e}", residue.to_f64());
    }

    #[test]
    fn differential_identity_at_size_five() {
        let bits = bits_for_digits(60);
        let (kernel, residue) =
            diff_identity_residual(5, 1, &rnew(bits, 0.3), &rnew(bits, 0.1), prec(40)).unwrap();
        assert!(kernel < exp10i(kernel.prec(), -10), "kernel {:e}", kernel.to_f64());
        assert!(residue < exp10i(residue.prec(), -10), "residue {:e}", residue.to_f64());
    }

    #[test]
    fn differential_identity_guards() {
        let bits = bits_for_digits(60);
        assert!(diff_identity_residual(0, 1, &Float::new(bits), &rnew(bits, 0.1), prec(40))
            .is_err());
        assert!(
            diff_identity_residual(2, 1, &Float::new(bits), &Float::new(bits), prec(40)).is_err()
        );
    }
}
