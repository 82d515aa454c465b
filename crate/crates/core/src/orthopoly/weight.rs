//! Perturbed Laguerre and Gaussian weights and their power moments.
//!
//! Every moment reduces to the exponential-form integral
//! I(sigma) = int_0^inf x^(sigma-1) exp(-a x - b x^(-k)) dx, evaluated by
//! the trapezoid rule after the substitution x = e^u. The substituted
//! integrand is analytic in a strip around the real axis, so the trapezoid
//! converges geometrically once the window covers the double-exponential
//! tails; a pole of order k at the origin narrows the strip to pi/(2k).

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::real::{exp10i, ln_10, rnew, Real};
use rug::ops::Pow;
use rug::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    /// x^alpha exp(-n(x + (t/x)^k)) on (0, infinity).
    PLue,
    /// |x|^(2 alpha) exp(-(n/2)(x^2 + (t/x^2)^k)) on the real line.
    PGue,
}

#[derive(Clone, Debug)]
pub struct PerturbedWeight {
    pub ensemble: Ensemble,
    /// External scale in the exponent; equals the matrix size wherever the
    /// partition identities are invoked.
    pub n: u32,
    pub k: u32,
    pub alpha: Real,
    pub t: Real,
    pub prec: Precision,
}

impl PerturbedWeight {
    fn validate(w: Self, alpha_floor: f64) -> Result<Self> {
        if w.n == 0 || w.k == 0 {
            return Err(Error::domain("PerturbedWeight", "need n >= 1 and k >= 1"));
        }
        if w.t.is_sign_negative() {
            return Err(Error::domain("PerturbedWeight", "need t >= 0"));
        }
        if w.alpha <= alpha_floor {
            return Err(Error::domain(
                "PerturbedWeight",
                format!("need alpha > {alpha_floor} for an integrable weight"),
            ));
        }
        Ok(w)
    }

    pub fn plue(n: u32, k: u32, alpha: Real, t: Real, prec: Precision) -> Result<Self> {
        Self::validate(
            PerturbedWeight { ensemble: Ensemble::PLue, n, k, alpha, t, prec },
            -1.0,
        )
    }

    pub fn pgue(n: u32, k: u32, alpha: Real, t: Real, prec: Precision) -> Result<Self> {
        Self::validate(
            PerturbedWeight { ensemble: Ensemble::PGue, n, k, alpha, t, prec },
            -0.5,
        )
    }

    /// Exponential-form parameters of the moment integrals: for pLUE the
    /// m-th moment is I(alpha+1+m); for pGUE the (2m)-th moment is
    /// I(alpha+1/2+m) under x^2 = y, and odd moments vanish.
    pub(crate) fn exp_form(&self, bits: u32) -> ExpWeight {
        let alpha = Float::with_val(bits, &self.alpha);
        let t = Float::with_val(bits, &self.t);
        let tk: Real = t.pow(self.k);
        match self.ensemble {
            Ensemble::PLue => {
                let a = Float::with_val(bits, self.n);
                ExpWeight {
                    sigma0: alpha + 1u32,
                    b: tk * &a,
                    a,
                    k: self.k,
                }
            }
            Ensemble::PGue => {
                let a: Real = Float::with_val(bits, self.n) / 2u32;
                ExpWeight {
                    sigma0: alpha + Float::with_val(bits, 0.5),
                    b: tk * &a,
                    a,
                    k: self.k,
                }
            }
        }
    }

    /// Pointwise weight value at the precision of `x`.
    pub fn value(&self, x: &Real) -> Result<Real> {
        let bits = x.prec();
        match self.ensemble {
            Ensemble::PLue => {
                if !x.is_sign_positive() || x.is_zero() {
                    return Err(Error::domain("weight value", "pLUE weight needs x > 0"));
                }
                Ok(self.exp_form(bits).value(x))
            }
            Ensemble::PGue => {
                if x.is_zero() {
                    return Err(Error::domain("weight value", "pGUE weight needs x != 0"));
                }
                let y: Real = x.clone().square();
                let half: Real = y.clone().sqrt();
                Ok(self.exp_form(bits).value(&y) * half)
            }
        }
    }
}

/// x^(sigma0 - 1) exp(-a x - b x^(-k)) on (0, infinity).
#[derive(Clone, Debug)]
pub(crate) struct ExpWeight {
    pub sigma0: Real,
    pub a: Real,
    pub b: Real,
    pub k: u32,
}

/// Location of the maximum of sigma u - a e^u - b e^(-ku); the derivative
/// is strictly decreasing, so bracket and bisect at probe precision.
fn log_integrand_peak(sigma: &Real, a: &Real, b: &Real, k: u32) -> Result<f64> {
    let bits = 96;
    let sigma = Float::with_val(bits, sigma);
    let a = Float::with_val(bits, a);
    let b = Float::with_val(bits, b);
    let g = |u: &Real| -> Real {
        let eu: Real = u.clone().exp();
        let emku: Real = (u.clone() * -(k as i32)).exp();
        sigma.clone() - eu * &a + emku * &b * k
    };
    let mut lo: Real = (sigma.clone() / &a).ln();
    let mut hi: Real = lo.clone() + 1u32;
    let mut step = Float::with_val(bits, 1);
    let mut guard = 0;
    while g(&hi).is_sign_positive() {
        hi += &step;
        step *= 2u32;
        guard += 1;
        if guard > 80 {
            return Err(Error::NoConvergence {
                op: "moment peak",
                msg: "failed to bracket the integrand maximum".into(),
            });
        }
    }
    for _ in 0..80 {
        let mid: Real = (lo.clone() + &hi) / 2u32;
        if g(&mid).is_sign_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo.to_f64())
}

impl ExpWeight {
    pub(crate) fn bits(&self) -> u32 {
        self.sigma0.prec()
    }

    /// Weight value for x > 0.
    pub(crate) fn value(&self, x: &Real) -> Real {
        let bits = self.bits();
        let x = Float::with_val(bits, x);
        let lnx = x.clone().ln();
        let xmk: Real = x.clone().pow(-(self.k as i32));
        ((self.sigma0.clone() - 1u32) * lnx - &self.a * x - &self.b * xmk).exp()
    }

    fn log_integrand(&self, sigma: &Real, u: &Real) -> Real {
        let eu: Real = u.clone().exp();
        let emku: Real = (u.clone() * -(self.k as i32)).exp();
        sigma.clone() * u - eu * &self.a - emku * &self.b
    }

    /// One trapezoid pass over [u_lo, u_lo + steps h]; moment m accumulates
    /// exp(phi_0(u)) x^m, so each node costs three exponentials total.
    fn trapezoid(&self, u_lo: &Real, h: &Real, steps: usize, count: usize) -> Vec<Real> {
        let bits = self.bits();
        let mut mu = vec![Float::new(bits); count];
        let mut u = u_lo.clone();
        for _ in 0..=steps {
            let x: Real = u.clone().exp();
            let xmk: Real = x.clone().pow(-(self.k as i32));
            let mut term: Real =
                (self.sigma0.clone() * &u - &self.a * &x - &self.b * xmk).exp();
            for slot in mu.iter_mut() {
                *slot += &term;
                term *= &x;
            }
            u += h;
        }
        for slot in mu.iter_mut() {
            *slot *= h;
        }
        mu
    }

    /// Moments I(sigma0 + m) for m = 0..count, certified to `digits`
    /// decimal digits by step halving.
    pub(crate) fn moments(&self, count: usize, digits: u32) -> Result<Vec<Real>> {
        let bits = self.bits();
        if count == 0 {
            return Ok(Vec::new());
        }
        // the halving certificate compares sums that carry the round-off
        // of the working precision; a target below that floor can never
        // stabilise
        if digits + 7 > crate::precision::digits_for_bits(bits) {
            return Err(Error::invalid(
                "moments",
                "requested digits sit below the round-off floor of the working precision",
            ));
        }
        if !self.a.is_sign_positive() || self.b.is_sign_negative() {
            return Err(Error::domain("moments", "need a > 0 and b >= 0"));
        }
        if self.b.is_zero() {
            if !self.sigma0.is_sign_positive() {
                return Err(Error::domain("moments", "need sigma > 0 when b = 0"));
            }
            // I(sigma) = Gamma(sigma) a^(-sigma)
            let lna = self.a.clone().ln();
            return Ok((0..count)
                .map(|m| {
                    let sigma: Real = self.sigma0.clone() + m as u32;
                    let scale: Real = (sigma.clone() * &lna).exp();
                    sigma.gamma() / scale
                })
                .collect());
        }

        let sigma_hi: Real = self.sigma0.clone() + (count - 1) as u32;
        let peak_lo = log_integrand_peak(&self.sigma0, &self.a, &self.b, self.k)?;
        let peak_hi = log_integrand_peak(&sigma_hi, &self.a, &self.b, self.k)?;

        // drop threshold; the extra sigma-dependent margin absorbs the
        // growth of the shifted integrand along the strip boundary
        let margin = 30.0 + 0.2 * sigma_hi.to_f64().max(1.0);
        let cut: Real = rnew(bits, digits as f64 + margin) * ln_10(bits);
        let top_lo = self.log_integrand(&self.sigma0, &rnew(bits, peak_lo));
        let top_hi = self.log_integrand(&sigma_hi, &rnew(bits, peak_hi));

        let mut u_lo = rnew(bits, peak_lo - 1.0);
        let mut guard = 0;
        while self.log_integrand(&self.sigma0, &u_lo) > top_lo.clone() - &cut {
            u_lo -= 2u32;
            guard += 1;
            if guard > 20_000 {
                return Err(Error::NoConvergence {
                    op: "moments",
                    msg: "left tail of the log integrand does not drop".into(),
                });
            }
        }
        let mut u_hi = rnew(bits, peak_hi + 1.0);
        guard = 0;
        while self.log_integrand(&sigma_hi, &u_hi) > top_hi.clone() - &cut {
            u_hi += 1u32;
            guard += 1;
            if guard > 20_000 {
                return Err(Error::NoConvergence {
                    op: "moments",
                    msg: "right tail of the log integrand does not drop".into(),
                });
            }
        }

        // strip half-width pi/(4k) in the Poisson error bound
        let denom = (digits as f64 + margin) * std::f64::consts::LN_10;
        let h0 = std::f64::consts::PI * std::f64::consts::PI / (2.0 * self.k as f64 * denom);
        let width = (u_hi.clone() - &u_lo).to_f64();
        let tol = exp10i(bits, -(digits as i64 + 5));

        let mut h = rnew(bits, h0);
        let mut steps = (width / h0).ceil() as usize + 1;
        let mut prev = self.trapezoid(&u_lo, &h, steps, count);
        for _ in 0..4 {
            h /= 2u32;
            steps *= 2;
            let cur = self.trapezoid(&u_lo, &h, steps, count);
            let ok = cur.iter().zip(prev.iter()).all(|(c, p)| {
                let gap = (c.clone() - p).abs();
                gap <= tol.clone() * c
            });
            if ok {
                return Ok(cur);
            }
            prev = cur;
        }
        Err(Error::NoConvergence {
            op: "moments",
            msg: "trapezoid halving did not stabilise the moments".into(),
        })
    }
}
