//! Monic orthogonal polynomials from moments.
//!
//! The Hankel matrix H = (mu_{i+j}) of a positive weight is positive
//! definite, and its LDL^T factorisation hands over the whole system at
//! once: the pivots are the squared norms h_j, the rows of L^{-1} are the
//! monic coefficients, and the Jacobi entries follow from short bilinear
//! forms in the moments. Cancellation in the elimination is the only
//! enemy, so the build runs at an inflated working precision and aborts
//! if a pivot loses more digits than the inflation provides.

use crate::error::{Error, Result};
use crate::precision::bits_for_digits;
use crate::real::{log10_abs_estimate, Real};
use rug::Float;

use super::weight::{Ensemble, PerturbedWeight};

#[derive(Clone, Debug)]
pub struct OPSystem {
    pub weight: PerturbedWeight,
    /// Highest polynomial degree carried by the system.
    pub degree: usize,
    /// mu_0 .. mu_{2 degree}.
    pub moments: Vec<Real>,
    /// Leading principal Hankel minors D_0 = 1 .. D_{degree+1}.
    pub hankel: Vec<Real>,
    /// Squared norms h_0 .. h_{degree}.
    pub norms: Vec<Real>,
    /// Recurrence shifts a_0 .. a_{degree-1}.
    pub rec_a: Vec<Real>,
    /// Recurrence couplings b_j = h_j / h_{j-1} for j = 1 .. degree-1;
    /// index 0 is a zero placeholder (p_{-1} = 0 never multiplies it).
    pub rec_b: Vec<Real>,
    /// Row j holds the monic coefficients of p_j in increasing degree.
    coeffs: Vec<Vec<Real>>,
    work_bits: u32,
}

/// Working precision for a degree-m build. The 6m term tracks the digit
/// loss observed in Hankel elimination for these weights; the build still
/// verifies every pivot against the loss actually incurred.
pub(crate) fn work_digits_for(user: u32, m: usize) -> u32 {
    60u32.max(user + 20).max(12 + 6 * m as u32)
}

pub fn build_op_system(weight: &PerturbedWeight, degree: usize) -> Result<OPSystem> {
    let user = weight.prec.digits();
    let work = work_digits_for(user, degree);
    let bits = bits_for_digits(work);
    let count = 2 * degree + 1;
    let moments = match weight.ensemble {
        Ensemble::PLue => weight.exp_form(bits).moments(count, work - 8)?,
        Ensemble::PGue => {
            // odd moments vanish by parity; interleave exact zeros
            let even = weight.exp_form(bits).moments(degree + 1, work - 8)?;
            let mut all = Vec::with_capacity(count);
            for (j, m) in even.into_iter().enumerate() {
                all.push(m);
                if 2 * j + 1 < count {
                    all.push(Float::new(bits));
                }
            }
            all
        }
    };
    OPSystem::from_moments(weight.clone(), moments, degree, bits, work, user)
}

impl OPSystem {
    pub(crate) fn from_moments(
        weight: PerturbedWeight,
        moments: Vec<Real>,
        degree: usize,
        bits: u32,
        work_digits: u32,
        user_digits: u32,
    ) -> Result<Self> {
        assert_eq!(moments.len(), 2 * degree + 1);
        let size = degree + 1;

        // LDL^T elimination of H = (mu_{i+j})_{i,j <= degree}
        let mut lower: Vec<Vec<Real>> = Vec::with_capacity(size);
        let mut pivots: Vec<Real> = Vec::with_capacity(size);
        for i in 0..size {
            let mut row: Vec<Real> = Vec::with_capacity(i + 1);
            for j in 0..=i {
                let v = {
                    let other: &[Real] = if j < i { &lower[j] } else { &row };
                    let mut v = moments[i + j].clone();
                    for r in 0..j {
                        v -= (row[r].clone() * &other[r]) * &pivots[r];
                    }
                    v
                };
                if j < i {
                    row.push(v / &pivots[j]);
                } else {
                    if !v.is_sign_positive() || v.is_zero() {
                        return Err(Error::PrecisionExhausted {
                            op: "orthogonal polynomial build",
                            requested: user_digits,
                            achieved: 0,
                            hint: "Hankel pivot lost all digits; raise the precision",
                        });
                    }
                    let lost = log10_abs_estimate(&moments[2 * i]) - log10_abs_estimate(&v);
                    let left = (work_digits as f64 - lost.max(0.0)).floor() as i64;
                    if left < user_digits as i64 + 5 {
                        return Err(Error::PrecisionExhausted {
                            op: "orthogonal polynomial build",
                            requested: user_digits,
                            achieved: left,
                            hint: "Hankel elimination cancelled too many digits; raise the precision",
                        });
                    }
                    pivots.push(v);
                }
            }
            row.push(Float::with_val(bits, 1));
            lower.push(row);
        }

        // C = L^{-1}: row j gives the monic coefficients of p_j
        let mut coeffs: Vec<Vec<Real>> = Vec::with_capacity(size);
        for j in 0..size {
            let mut row = vec![Float::new(bits); j + 1];
            row[j] = Float::with_val(bits, 1);
            for i in (0..j).rev() {
                let mut s = Float::new(bits);
                for r in i..j {
                    s += lower[j][r].clone() * &coeffs[r][i];
                }
                row[i] = -s;
            }
            coeffs.push(row);
        }

        let mut hankel = Vec::with_capacity(size + 1);
        hankel.push(Float::with_val(bits, 1));
        for d in &pivots {
            let last = hankel.last().unwrap().clone();
            hankel.push(last * d);
        }

        // a_j = <x p_j, p_j> / h_j expanded over the coefficient rows
        let mut rec_a = Vec::with_capacity(degree);
        for j in 0..degree {
            let mut num = Float::new(bits);
            for i in 0..=j {
                let mut inner = Float::new(bits);
                for l in 0..=j {
                    inner += coeffs[j][l].clone() * &moments[i + l + 1];
                }
                num += inner * &coeffs[j][i];
            }
            rec_a.push(num / &pivots[j]);
        }
        let mut rec_b = vec![Float::new(bits)];
        for j in 1..degree {
            rec_b.push(pivots[j].clone() / &pivots[j - 1]);
        }

        Ok(OPSystem {
            weight,
            degree,
            moments,
            hankel,
            norms: pivots,
            rec_a,
            rec_b,
            coeffs,
            work_bits: bits,
        })
    }

    pub fn work_bits(&self) -> u32 {
        self.work_bits
    }

    /// p_j(x) by the three-term recurrence.
    pub fn op_eval(&self, j: usize, x: &Real) -> Result<Real> {
        Ok(self.op_eval_deriv(j, x)?.0)
    }

    /// (p_j(x), p_j'(x)); the derivative recurrence rides along for free.
    pub fn op_eval_deriv(&self, j: usize, x: &Real) -> Result<(Real, Real)> {
        if j > self.degree {
            return Err(Error::invalid("op_eval", "degree beyond the built system"));
        }
        let bits = self.work_bits;
        let x = Float::with_val(bits, x);
        let mut p = Float::with_val(bits, 1);
        let mut dp = Float::new(bits);
        if j == 0 {
            return Ok((p, dp));
        }
        let mut p_prev = Float::new(bits);
        let mut dp_prev = Float::new(bits);
        for i in 0..j {
            let shift: Real = x.clone() - &self.rec_a[i];
            let mut p_next: Real = shift.clone() * &p;
            let mut dp_next: Real = p.clone() + shift * &dp;
            if i > 0 {
                p_next -= self.rec_b[i].clone() * &p_prev;
                dp_next -= self.rec_b[i].clone() * &dp_prev;
            }
            p_prev = p;
            dp_prev = dp;
            p = p_next;
            dp = dp_next;
        }
        Ok((p, dp))
    }

    /// nu_{j,i} = int p_j(x) x^i w(x) dx, assembled from stored moments.
    pub fn weighted_moment(&self, j: usize, i: usize) -> Result<Real> {
        if j > self.degree || j + i > 2 * self.degree {
            return Err(Error::invalid(
                "weighted_moment",
                "index beyond the stored moments",
            ));
        }
        let mut s = Float::new(self.work_bits);
        for (l, c) in self.coeffs[j].iter().enumerate() {
            s += c.clone() * &self.moments[l + i];
        }
        Ok(s)
    }

    /// Christoffel-Darboux kernel with the weight split symmetrically:
    /// K_n(x,y) = sqrt(w(x)w(y)) sum_{j<n} p_j(x)p_j(y)/h_j, evaluated in
    /// the closed two-term form, confluent on the diagonal.
    pub fn cd_kernel(&self, n: usize, x: &Real, y: &Real) -> Result<Real> {
        if n == 0 || n > self.degree {
            return Err(Error::invalid("cd_kernel", "need 1 <= n <= degree"));
        }
        let bits = self.work_bits;
        let x = Float::with_val(bits, x);
        let y = Float::with_val(bits, y);
        let wx = self.weight.value(&x)?;
        let wy = self.weight.value(&y)?;
        let root: Real = (wx * wy).sqrt();
        let (pnx, dpnx) = self.op_eval_deriv(n, &x)?;
        let (pmx, dpmx) = self.op_eval_deriv(n - 1, &x)?;
        let core: Real = if x == y {
            (dpnx * &pmx - pnx * &dpmx) / &self.norms[n - 1]
        } else {
            let pny = self.op_eval(n, &y)?;
            let pmy = self.op_eval(n - 1, &y)?;
            let num: Real = pnx * pmy - pny * pmx;
            let den: Real = (x.clone() - &y) * &self.norms[n - 1];
            num / den
        };
        Ok(core * root)
    }
}
