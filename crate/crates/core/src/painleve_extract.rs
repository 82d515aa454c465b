//! Extraction of the hard-edge transcendent from finite-size partition data.
//!
//! Along the scaling ray t(s) = 2^(1/k) s / (c1 n^((2k+1)/k)) the log
//! partition function of the perturbed Laguerre weight carries a function
//! r(s) in its logarithmic derivative:
//! s d/ds [ log Z_n(t(s)) - n^2 t delta_{k,1} ] = (r(0) - r(s)) / 2 + O(1/n),
//! with the exact anchor r(0) = (1 - 4 alpha^2) / 8.  Everything in this
//! module is bookkeeping around that relation: differentiate partition data
//! on a log-uniform grid, anchor the constant, form
//! y(s) = -2 d/ds r(s^2) and ell1(s) = -4 s d/d(s^2) r(s^2)
//! (the same function by the chain rule, computed through two routes),
//! extrapolate the 1/n bias away with two column sizes, and check the k = 1
//! result against the Painleve III ODE it is supposed to satisfy.
//!
//! Grids are snapped to integer multiples of ln(10)/points_per_decade so the
//! squared arguments s^2 land back on grid points and r(s^2) never needs
//! interpolation.

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::hierarchy;
use crate::orthopoly::system::work_digits_for;
use crate::orthopoly::{partition_log, PerturbedWeight};
use crate::precision::{bits_for_digits, Precision};
use crate::real::{ln_10, Real};
use rug::ops::Pow;
use rug::Float;

/// Whether the scaling ray divides by the equilibrium constant c1.
///
/// Both conventions appear in practice; they differ by a fixed
/// reparameterisation s -> c1 s of the transcendent.  `WithC1` is the one
/// under which the k = 1 envelope comes out as -4 s^(1/3), and is the
/// default everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalingMode {
    WithC1,
    WithoutC1,
}

impl Default for ScalingMode {
    fn default() -> Self {
        ScalingMode::WithC1
    }
}

impl ScalingMode {
    pub fn label(self) -> &'static str {
        match self {
            ScalingMode::WithC1 => "with-c1",
            ScalingMode::WithoutC1 => "without-c1",
        }
    }
}

/// Grid and stencil knobs for [`build_table`].
#[derive(Clone, Debug)]
pub struct ExtractConfig {
    /// Log-grid density; the step is ln(10)/points_per_decade.  The
    /// differentiation stencils were sized for 12 and build_table rejects
    /// anything coarser.
    pub points_per_decade: u32,
    /// Width of the local least-squares cubic used for d/d(ln s); odd, >= 5.
    pub window: usize,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig { points_per_decade: 12, window: 7 }
    }
}

/// The map from the transcendent argument s to the weight parameter t.
///
/// t = 2^(1/k) s / (C n^((2k+1)/k)) with C = c1 under [`ScalingMode::WithC1`]
/// and C = 1 otherwise.  `c1` is read only in the former mode.
pub fn s_to_t(n: u32, k: u32, s: &Real, mode: ScalingMode, c1: &Real) -> Result<Real> {
    const OP: &str = "s_to_t";
    if n == 0 || k == 0 {
        return Err(Error::invalid(OP, format!("need n >= 1 and k >= 1, got n = {n}, k = {k}")));
    }
    if !(s.is_sign_positive() && !s.is_zero()) {
        return Err(Error::domain(OP, "s must be positive"));
    }
    let bits = s.prec();
    let root2 = Float::with_val(bits, 2u32).pow(Float::with_val(bits, 1u32) / Float::with_val(bits, k));
    let expo = Float::with_val(bits, 2 * k + 1) / Float::with_val(bits, k);
    let npow = Float::with_val(bits, n).pow(&expo);
    let mut t = root2 * s / npow;
    if let ScalingMode::WithC1 = mode {
        if !(c1.is_sign_positive() && !c1.is_zero()) {
            return Err(Error::domain(OP, "c1 must be positive"));
        }
        t /= Float::with_val(bits, c1);
    }
    Ok(t)
}

/// One extracted column: the transcendent along the scaling ray at a fixed
/// matrix size.
#[derive(Clone, Debug)]
pub struct ExtractedColumn {
    pub n: u32,
    pub s: Vec<Real>,
    pub t: Vec<Real>,
    /// r(0) + deviation, the anchored transcendent.
    pub r: Vec<Real>,
    /// The data-driven part -2 s d/ds [log Z - n^2 t delta_{k,1}] alone,
    /// so callers can see how far the data itself is from the anchor.
    pub deviation: Vec<Real>,
}

/// (1 - 4 alpha^2) / 8 at the given precision.
fn anchor_value(bits: u32, alpha: &Real) -> Real {
    let a = Float::with_val(bits, alpha);
    (Float::with_val(bits, 1u32) - Float::with_val(bits, 4u32) * a.square()) / 8u32
}

/// Validates that `s` is increasing and log-uniform; returns the step in
/// x = ln s.
fn log_step(op: &'static str, s: &[Real]) -> Result<Real> {
    if s.len() < 2 {
        return Err(Error::invalid(op, format!("need at least 2 grid points, got {}", s.len())));
    }
    let bits = s[0].prec();
    let xs: Vec<Real> = s
        .iter()
        .map(|v| Float::with_val(bits, v.ln_ref()))
        .collect();
    for v in s {
        if !(v.is_sign_positive() && !v.is_zero()) {
            return Err(Error::domain(op, "grid points must be positive"));
        }
    }
    let h = Float::with_val(bits, &xs[1]) - &xs[0];
    if !(h.is_sign_positive() && !h.is_zero()) {
        return Err(Error::GridMismatch { op, msg: "grid must be strictly increasing".into() });
    }
    for j in 1..xs.len() - 1 {
        let gap = Float::with_val(bits, &xs[j + 1]) - &xs[j];
        let dev = (gap - &h).abs() / Float::with_val(bits, h.abs_ref());
        if dev.to_f64() > 1e-9 {
            return Err(Error::GridMismatch {
                op,
                msg: format!("grid is not log-uniform near index {j}"),
            });
        }
    }
    Ok(h)
}

/// Gaussian elimination with partial pivoting; the systems fed in here are
/// small positive-definite Gram matrices, pivots never vanish.
fn solve_dense(mut m: Vec<Vec<Real>>, mut b: Vec<Real>) -> Vec<Real> {
    let bits = b[0].prec();
    let dim = b.len();
    for col in 0..dim {
        let piv = (col..dim)
            .max_by(|&i, &j| {
                m[i][col].clone().abs().partial_cmp(&m[j][col].clone().abs()).unwrap()
            })
            .unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..dim {
            let f = Float::with_val(bits, &m[row][col]) / &m[col][col];
            for c in col..dim {
                let sub = Float::with_val(bits, &f) * &m[col][c];
                m[row][c] -= sub;
            }
            let sub = f * &b[col];
            b[row] -= sub;
        }
    }
    let mut c = vec![Float::new(bits); dim];
    for row in (0..dim).rev() {
        let mut acc = Float::with_val(bits, &b[row]);
        for col in row + 1..dim {
            acc -= Float::with_val(bits, &m[row][col]) * &c[col];
        }
        c[row] = acc / &m[row][row];
    }
    c
}

/// Derivative of the least-squares cubic through `w` consecutive samples,
/// evaluated at sample `at`, for unit spacing.  Interior windows are
/// centered; near the ends the window slides inward and the evaluation
/// point moves off-center.
fn sg_unit_derivative(values: &[Real], at: usize, w: usize) -> Real {
    let bits = values[0].prec();
    let half = (w - 1) / 2;
    let lo = at.saturating_sub(half).min(values.len() - w);
    // normal equations sum_i d^(p+q) c_p = sum_i y_i d^q with d = i - at
    let mut s = vec![Float::new(bits); 7];
    let mut b = vec![Float::new(bits); 4];
    for i in lo..lo + w {
        let d = Float::with_val(bits, i as i64 - at as i64);
        let mut dp = Float::with_val(bits, 1u32);
        for p in 0..7 {
            s[p] += &dp;
            if p < 4 {
                b[p] += Float::with_val(bits, &dp) * &values[i];
            }
            dp *= &d;
        }
    }
    let m: Vec<Vec<Real>> = (0..4)
        .map(|q| (0..4).map(|p| Float::with_val(bits, &s[p + q])).collect())
        .collect();
    let mut c = solve_dense(m, b);
    c.swap_remove(1)
}

fn sg_derivative(values: &[Real], at: usize, w: usize, h: &Real) -> Real {
    sg_unit_derivative(values, at, w) / h
}

/// Extracts r(s) at one matrix size n on a log-uniform grid.
///
/// For each grid point the weight is rebuilt at t(s) and the partition
/// function recomputed, so the cost is one orthogonal-polynomial build per
/// point.  The returned `r` is `r(0) + deviation` with the anchor imposed
/// exactly; finite-n and stencil error live entirely in `deviation`.
pub fn extract_r(
    k: u32,
    alpha: &Real,
    s: &[Real],
    n: u32,
    prec: Precision,
    mode: ScalingMode,
    c1: &Real,
    window: usize,
) -> Result<ExtractedColumn> {
    const OP: &str = "extract_r";
    if window < 5 || window % 2 == 0 {
        return Err(Error::invalid(OP, format!("window must be odd and >= 5, got {window}")));
    }
    if s.len() < window {
        return Err(Error::invalid(
            OP,
            format!("need at least {window} grid points for the stencil, got {}", s.len()),
        ));
    }
    let step = log_step(OP, s)?;
    let mut t_col = Vec::with_capacity(s.len());
    let mut logz = Vec::with_capacity(s.len());
    for sj in s {
        let tj = s_to_t(n, k, sj, mode, c1)?;
        let w = PerturbedWeight::plue(n, k, alpha.clone(), tj.clone(), prec)?;
        let mut l = partition_log(&w, n)?;
        if k == 1 {
            // remove the extensive linear-in-t piece; it would otherwise
            // swamp the O(1) transcendent in the log-derivative
            let bits = l.prec();
            l -= Float::with_val(bits, n as u64 * n as u64) * Float::with_val(bits, &tj);
        }
        t_col.push(tj);
        logz.push(l);
    }
    let bits = logz[0].prec();
    let hx = Float::with_val(bits, &step);
    let r0 = anchor_value(bits, alpha);
    let mut r = Vec::with_capacity(s.len());
    let mut deviation = Vec::with_capacity(s.len());
    for j in 0..s.len() {
        let dev = Float::with_val(bits, -2i32) * sg_derivative(&logz, j, window, &hx);
        r.push(Float::with_val(bits, &r0) + &dev);
        deviation.push(dev);
    }
    Ok(ExtractedColumn { n, s: s.to_vec(), t: t_col, r, deviation })
}

/// y(s) = -2 d/ds r(s^2) from samples v_j = r(s_j^2) on a log-uniform grid.
///
/// The chain rule turns the s-derivative into (1/s) d/d(ln s), so the
/// stencil runs at unit cost on the log grid.
pub fn y_from_r(s: &[Real], r_on_s2: &[Real], window: usize) -> Result<Vec<Real>> {
    const OP: &str = "y_from_r";
    if window < 5 || window % 2 == 0 {
        return Err(Error::invalid(OP, format!("window must be odd and >= 5, got {window}")));
    }
    if r_on_s2.len() != s.len() {
        return Err(Error::invalid(
            OP,
            format!("value/grid length mismatch: {} vs {}", r_on_s2.len(), s.len()),
        ));
    }
    if s.len() < window {
        return Err(Error::invalid(
            OP,
            format!("need at least {window} grid points for the stencil, got {}", s.len()),
        ));
    }
    let step = log_step(OP, s)?;
    let bits = r_on_s2[0].prec();
    let hx = Float::with_val(bits, &step);
    let mut y = Vec::with_capacity(s.len());
    for j in 0..s.len() {
        let d = sg_derivative(r_on_s2, j, window, &hx);
        y.push(Float::with_val(bits, -2i32) * d / Float::with_val(bits, &s[j]));
    }
    Ok(y)
}

/// Extracted transcendent on a snapped log grid, with per-size columns,
/// a Richardson-extrapolated column, and the two derived functions.
///
/// All index bookkeeping lives in the private fields: the output grid is
/// m in [out_lo, out_lo + s.len()) with s_m = exp(m h), and the private
/// full grid extends far enough that every s_m^2 is itself a grid point
/// with a centered stencil around it.
#[derive(Clone, Debug)]
pub struct TranscendentTable {
    pub k: u32,
    pub alpha: Real,
    pub scaling_mode: ScalingMode,
    pub n_used: Vec<u32>,
    pub s: Vec<Real>,
    /// t(s) per entry of `n_used`.
    pub t_by_n: Vec<Vec<Real>>,
    /// r(s) per entry of `n_used`.
    pub r_by_n: Vec<Vec<Real>>,
    /// Richardson extrapolation of the two largest sizes (the single
    /// column when only one size was requested); kills the O(1/n) bias.
    pub r: Vec<Real>,
    /// -2 d/ds r(s^2), differentiated from the stride-2 samples.
    pub y: Vec<Real>,
    /// -4 s r'(s^2), differentiated on the squared grid; analytically the
    /// same function as `y`, numerically an independent stencil route.
    pub ell1: Vec<Real>,
    pub ell1_by_n: Vec<Vec<Real>>,
    step: Real,
    out_lo: i64,
    full_lo: i64,
    full_s: Vec<Real>,
    full_r: Vec<Real>,
    ext_s: Vec<Real>,
    ext_ell1: Vec<Real>,
    ext_ell1_by_n: Vec<Vec<Real>>,
}

impl TranscendentTable {
    /// Log-grid step ln(10)/points_per_decade.
    pub fn step(&self) -> &Real {
        &self.step
    }

    /// The squared-argument sample behind output index j: the grid value
    /// of s_j^2 and r at it, exactly as the y column reads them.  Useful
    /// for integral identities that pair r(s^2) with y.
    pub fn at_s_squared(&self, j: usize) -> (&Real, &Real) {
        let m = self.out_lo + j as i64;
        let idx = (2 * m - self.full_lo) as usize;
        (&self.full_s[idx], &self.full_r[idx])
    }
}

/// Builds the full extraction table over [s_lo, s_hi].
///
/// `n_list` must be strictly increasing; every size is extracted on the
/// same snapped grid and the two largest feed the Richardson column.
/// The grid extends beyond the requested interval on both sides and down
/// to the squared arguments, so expect roughly 3x the requested points in
/// partition evaluations per size.
pub fn build_table(
    k: u32,
    alpha: &Real,
    s_lo: &Real,
    s_hi: &Real,
    n_list: &[u32],
    prec: Precision,
    mode: ScalingMode,
    c1: &Real,
    cfg: &ExtractConfig,
) -> Result<TranscendentTable> {
    const OP: &str = "build_table";
    if k == 0 {
        return Err(Error::invalid(OP, "k must be at least 1"));
    }
    if n_list.is_empty() {
        return Err(Error::invalid(OP, "n_list must not be empty"));
    }
    if !n_list.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::invalid(OP, "n_list must be strictly increasing"));
    }
    if n_list[0] == 0 {
        return Err(Error::invalid(OP, "matrix sizes must be positive"));
    }
    if cfg.points_per_decade < 12 {
        return Err(Error::invalid(
            OP,
            format!(
                "points_per_decade = {} is too coarse for the stencils; need >= 12",
                cfg.points_per_decade
            ),
        ));
    }
    if cfg.window < 5 || cfg.window % 2 == 0 {
        return Err(Error::invalid(OP, format!("window must be odd and >= 5, got {}", cfg.window)));
    }
    if !(s_lo.is_sign_positive() && !s_lo.is_zero()) || s_lo >= s_hi {
        return Err(Error::domain(OP, "need 0 < s_lo < s_hi"));
    }

    let max_n = *n_list.last().unwrap();
    let bits = bits_for_digits(work_digits_for(prec.digits(), max_n.saturating_sub(1) as usize));
    let h = ln_10(bits) / Float::with_val(bits, cfg.points_per_decade);
    let hf = h.to_f64();
    let m_out_lo = (s_lo.to_f64().ln() / hf + 1e-9).floor() as i64;
    let m_out_hi = (s_hi.to_f64().ln() / hf - 1e-9).ceil() as i64;
    let out_len = (m_out_hi - m_out_lo + 1) as usize;
    if out_len < cfg.window {
        return Err(Error::invalid(
            OP,
            format!(
                "only {out_len} output points at {} per decade; widen [s_lo, s_hi] or densify",
                cfg.points_per_decade
            ),
        ));
    }

    let margin = ((cfg.window - 1) / 2) as i64;
    let ext_lo = m_out_lo - margin;
    let ext_hi = m_out_hi + margin;
    // the full grid must hold a centered stencil around every index we
    // differentiate at, including the squared points 2m for m in ext
    let full_lo = (2 * ext_lo - margin).min(ext_lo) - margin;
    let full_hi = (2 * ext_hi + margin).max(ext_hi) + margin;

    let full_s: Vec<Real> = (full_lo..=full_hi)
        .map(|m| (Float::with_val(bits, &h) * Float::with_val(bits, m)).exp())
        .collect();

    let mut full_r_by_n: Vec<Vec<Real>> = Vec::with_capacity(n_list.len());
    let mut full_t_by_n: Vec<Vec<Real>> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let col = extract_r(k, alpha, &full_s, n, prec, mode, c1, cfg.window)?;
        full_t_by_n.push(col.t);
        full_r_by_n.push(col.r);
    }

    // Richardson in 1/n on the two largest sizes: r = (nb rb - na ra)/(nb - na)
    let full_r: Vec<Real> = if n_list.len() == 1 {
        full_r_by_n[0].clone()
    } else {
        let ia = n_list.len() - 2;
        let na = Float::with_val(bits, n_list[ia]);
        let nb = Float::with_val(bits, n_list[ia + 1]);
        let den = Float::with_val(bits, &nb) - &na;
        full_r_by_n[ia]
            .iter()
            .zip(&full_r_by_n[ia + 1])
            .map(|(ra, rb)| {
                (Float::with_val(bits, &nb) * rb - Float::with_val(bits, &na) * ra)
                    / Float::with_val(bits, &den)
            })
            .collect()
    };

    let rbits = full_r[0].prec();
    let hr = Float::with_val(rbits, &h);
    let ell1_from = |col: &[Real]| -> Vec<Real> {
        (ext_lo..=ext_hi)
            .map(|m| {
                let idx2 = (2 * m - full_lo) as usize;
                let sm = &full_s[(m - full_lo) as usize];
                let d = sg_derivative(col, idx2, cfg.window, &hr);
                Float::with_val(rbits, -4i32) * d / Float::with_val(rbits, sm)
            })
            .collect()
    };
    let ext_ell1 = ell1_from(&full_r);
    let ext_ell1_by_n: Vec<Vec<Real>> = full_r_by_n.iter().map(|c| ell1_from(c)).collect();
    let ext_s: Vec<Real> = (ext_lo..=ext_hi)
        .map(|m| full_s[(m - full_lo) as usize].clone())
        .collect();

    // stride-2 route: v_m = r(s_m^2) read straight off the full grid
    let v: Vec<Real> = (ext_lo..=ext_hi)
        .map(|m| full_r[(2 * m - full_lo) as usize].clone())
        .collect();
    let y: Vec<Real> = (m_out_lo..=m_out_hi)
        .map(|m| {
            let j = (m - ext_lo) as usize;
            let d = sg_derivative(&v, j, cfg.window, &hr);
            Float::with_val(rbits, -2i32) * d / Float::with_val(rbits, &full_s[(m - full_lo) as usize])
        })
        .collect();

    let out = |col: &[Real], lo: i64| -> Vec<Real> {
        (m_out_lo..=m_out_hi).map(|m| col[(m - lo) as usize].clone()).collect()
    };
    let s = out(&full_s, full_lo);
    let t_by_n: Vec<Vec<Real>> = full_t_by_n.iter().map(|c| out(c, full_lo)).collect();
    let r_by_n: Vec<Vec<Real>> = full_r_by_n.iter().map(|c| out(c, full_lo)).collect();
    let r = out(&full_r, full_lo);
    let ell1 = out(&ext_ell1, ext_lo);
    let ell1_by_n: Vec<Vec<Real>> = ext_ell1_by_n.iter().map(|c| out(c, ext_lo)).collect();

    Ok(TranscendentTable {
        k,
        alpha: Float::with_val(bits, alpha),
        scaling_mode: mode,
        n_used: n_list.to_vec(),
        s,
        t_by_n,
        r_by_n,
        r,
        y,
        ell1,
        ell1_by_n,
        step: h,
        out_lo: m_out_lo,
        full_lo,
        full_s,
        full_r,
        ext_s,
        ext_ell1,
        ext_ell1_by_n,
    })
}

/// Least-squares fit of ln|y| against ln s over the table's output range;
/// returns (exponent, coefficient) of the power law y ~ coefficient * s^exponent.
///
/// Refuses tables whose s-range spans less than a factor of 3 or whose y
/// changes sign (both mean the window is not in the asymptotic regime).
pub fn verify_large_s(table: &TranscendentTable) -> Result<(Real, Real)> {
    const OP: &str = "verify_large_s";
    let n = table.s.len();
    let ratio = (table.s[n - 1].to_f64()) / table.s[0].to_f64();
    if ratio < 3.0 {
        return Err(Error::invalid(
            OP,
            format!("s spans only a factor of {ratio:.2}; need at least 3 for a stable fit"),
        ));
    }
    let bits = table.y[0].prec();
    let negative = table.y[0].is_sign_negative();
    for v in &table.y {
        if v.is_zero() || v.is_sign_negative() != negative {
            return Err(Error::invalid(OP, "y changes sign inside the fit window"));
        }
    }
    let mut sx = Float::new(bits);
    let mut sy = Float::new(bits);
    let mut sxx = Float::new(bits);
    let mut sxy = Float::new(bits);
    for (sv, yv) in table.s.iter().zip(&table.y) {
        let x = Float::with_val(bits, sv.ln_ref());
        let g = Float::with_val(bits, yv.abs_ref()).ln();
        sxx += Float::with_val(bits, x.square_ref());
        sxy += Float::with_val(bits, &x) * &g;
        sx += x;
        sy += g;
    }
    let count = Float::with_val(bits, n as u64);
    let slope = (Float::with_val(bits, &count) * &sxy - Float::with_val(bits, &sx) * &sy)
        / (count.clone() * &sxx - Float::with_val(bits, sx.square_ref()));
    let intercept = (sy - Float::with_val(bits, &slope) * &sx) / count;
    let mut coeff = intercept.exp();
    if negative {
        coeff = -coeff;
    }
    Ok((slope, coeff))
}

/// Residual of the k = 1 Painleve III equation on samples of ell1 over a
/// log-uniform grid.
///
/// The samples are smoothed by a least-squares Chebyshev fit in ln s over
/// their full span, the fit is evaluated on a Chebyshev grid over [lo, hi]
/// (which must sit inside the sample range), and the result goes through
/// the ODE; a small residual certifies that the function solves the
/// equation, without ever integrating it.  The fit degree is capped at
/// two thirds of the sample count so sample noise is averaged down rather
/// than differentiated up; the spectral double derivative inside the ODE
/// still amplifies whatever noise survives, so residuals on sampled data
/// are meaningful relative to each other, not against zero.  A vanishing
/// ell1 is rejected as a singularity since the equation divides by it.
pub fn piii_residual_from_ell1(
    s: &[Real],
    ell1: &[Real],
    lo: &Real,
    hi: &Real,
    degree: usize,
    tau0: &Real,
    tau1: &Real,
) -> Result<GridFunction> {
    const OP: &str = "piii_residual_from_ell1";
    if ell1.len() != s.len() {
        return Err(Error::invalid(
            OP,
            format!("value/grid length mismatch: {} vs {}", ell1.len(), s.len()),
        ));
    }
    if s.len() < 8 {
        return Err(Error::invalid(OP, "need at least 8 samples for a stable fit"));
    }
    if degree < 4 {
        return Err(Error::invalid(OP, "degree must be at least 4"));
    }
    log_step(OP, s)?;
    let bits = ell1[0].prec();
    let mut peak = Float::new(bits);
    for v in ell1 {
        if v.clone().abs() > peak {
            peak = Float::with_val(bits, v.abs_ref());
        }
    }
    if peak.to_f64() < 1e-25 {
        return Err(Error::Singularity {
            op: OP,
            location: s[0].to_f64(),
            magnitude: peak.to_f64(),
        });
    }
    if lo >= hi || lo < &s[0] || hi > &s[s.len() - 1] {
        return Err(Error::domain(OP, "[lo, hi] must sit inside the sample range"));
    }

    let d_fit = degree.min(2 * s.len() / 3);
    let xs: Vec<Real> = s.iter().map(|v| Float::with_val(bits, v.ln_ref())).collect();
    let mid = (Float::with_val(bits, &xs[xs.len() - 1]) + &xs[0]) / 2u32;
    let halfspan = (Float::with_val(bits, &xs[xs.len() - 1]) - &xs[0]) / 2u32;
    let cheb_row = |x: &Real| -> Vec<Real> {
        let z = (Float::with_val(bits, x) - &mid) / Float::with_val(bits, &halfspan);
        let mut row = Vec::with_capacity(d_fit + 1);
        row.push(Float::with_val(bits, 1u32));
        if d_fit >= 1 {
            row.push(z.clone());
        }
        for j in 2..=d_fit {
            let next = Float::with_val(bits, 2u32) * &z * &row[j - 1] - &row[j - 2];
            row.push(next);
        }
        row
    };
    let rows: Vec<Vec<Real>> = xs.iter().map(|x| cheb_row(x)).collect();
    let mut gram = vec![vec![Float::new(bits); d_fit + 1]; d_fit + 1];
    let mut rhs = vec![Float::new(bits); d_fit + 1];
    for (row, val) in rows.iter().zip(ell1) {
        for p in 0..=d_fit {
            for q in p..=d_fit {
                gram[p][q] += Float::with_val(bits, &row[p]) * &row[q];
            }
            rhs[p] += Float::with_val(bits, &row[p]) * val;
        }
    }
    for p in 0..=d_fit {
        for q in 0..p {
            gram[p][q] = Float::with_val(bits, &gram[q][p]);
        }
    }
    let coeff = solve_dense(gram, rhs);

    let grid = Grid::new(bits, Float::with_val(bits, lo), Float::with_val(bits, hi), degree);
    let gf = GridFunction::from_fn(grid, |xi| {
        let row = cheb_row(&Float::with_val(bits, xi.ln_ref()));
        let mut acc = Float::new(bits);
        for (c, t) in coeff.iter().zip(&row) {
            acc += Float::with_val(bits, c) * t;
        }
        acc
    });
    hierarchy::piii_residual_k1(&gf, tau0, tau1)
}

/// Painleve III residual of a table's ell1 column.
///
/// `column = None` checks the Richardson column, `Some(i)` the i-th entry
/// of `n_used`.  Only defined at k = 1, where tau0 = 64 and tau1 = -16 alpha.
pub fn piii_residual_extracted(
    table: &TranscendentTable,
    column: Option<usize>,
    degree: usize,
) -> Result<GridFunction> {
    const OP: &str = "piii_residual_extracted";
    if table.k != 1 {
        return Err(Error::invalid(
            OP,
            format!("the closed ODE form is only wired for k = 1, table has k = {}", table.k),
        ));
    }
    let ell1 = match column {
        None => &table.ext_ell1,
        Some(i) => table.ext_ell1_by_n.get(i).ok_or_else(|| {
            Error::invalid(OP, format!("column {i} out of range, table has {}", table.n_used.len()))
        })?,
    };
    let consts = hierarchy::hierarchy_constants(1, &table.alpha)?;
    piii_residual_from_ell1(
        &table.ext_s,
        ell1,
        &table.s[0],
        &table.s[table.s.len() - 1],
        degree,
        &consts.tau[0],
        &consts.tau[1],
    )
}
