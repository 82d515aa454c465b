//! Functions sampled on Chebyshev-Lobatto grids.
//!
//! A [`GridFunction`] holds big-float samples at the nodes
//! x_i = c - d cos(i pi / N) (ascending, endpoints included) and moves to
//! Chebyshev coefficient space for differentiation, antidifferentiation
//! and off-node evaluation. Transforms are O(N^2) dense sums, which is
//! fine at the grid sizes this crate uses (N <= a few hundred).
//!
//! Pointwise operators panic on a grid mismatch; that is always a
//! programming error, not a data error.

use crate::error::{Error, Result};
use crate::real::{pi, Real};
use rug::Float;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

pub struct Grid {
    a: Real,
    b: Real,
    degree: usize,
    bits: u32,
    nodes: Vec<Real>,
    /// cos(pi m / N) for m = 0..2N, so cos(pi j k / N) = table[(j k) mod 2N]
    cos_table: OnceLock<Vec<Real>>,
}

impl Grid {
    pub fn new(bits: u32, a: Real, b: Real, degree: usize) -> Arc<Grid> {
        assert!(degree >= 1, "grid needs at least two nodes");
        assert!(a < b, "grid needs a < b");
        let c: Real = (a.clone() + &b) / 2u32;
        let d: Real = (b.clone() - &a) / 2u32;
        let n = degree;
        let pi_n = pi(bits) / Float::with_val(bits, n as u32);
        let mut nodes = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let angle: Real = pi_n.clone() * (i as u32);
            let x: Real = c.clone() - d.clone() * angle.cos();
            nodes.push(x);
        }
        // pin endpoints exactly
        nodes[0] = a.clone();
        nodes[n] = b.clone();
        Arc::new(Grid { a, b, degree, bits, nodes, cos_table: OnceLock::new() })
    }

    pub fn from_f64(bits: u32, a: f64, b: f64, degree: usize) -> Arc<Grid> {
        Grid::new(bits, Float::with_val(bits, a), Float::with_val(bits, b), degree)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.degree + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lo(&self) -> &Real {
        &self.a
    }

    pub fn hi(&self) -> &Real {
        &self.b
    }

    pub fn nodes(&self) -> &[Real] {
        &self.nodes
    }

    fn half_width(&self) -> Real {
        (self.b.clone() - &self.a) / 2u32
    }

    /// Map x to the reference coordinate y in [-1, 1].
    fn to_ref(&self, x: &Real) -> Real {
        let c: Real = (self.a.clone() + &self.b) / 2u32;
        (x.clone() - c) / self.half_width()
    }

    fn cos_table(&self) -> &[Real] {
        self.cos_table.get_or_init(|| {
            let n = self.degree;
            let pi_n = pi(self.bits) / Float::with_val(self.bits, n as u32);
            (0..2 * n)
                .map(|m| {
                    let angle: Real = pi_n.clone() * (m as u32);
                    angle.cos()
                })
                .collect()
        })
    }

    fn same_as(&self, other: &Grid) -> bool {
        self.degree == other.degree && self.bits == other.bits && self.a == other.a && self.b == other.b
    }
}

#[derive(Clone)]
pub struct GridFunction {
    grid: Arc<Grid>,
    values: Vec<Real>,
    coeffs: OnceLock<Vec<Real>>,
}

impl GridFunction {
    pub fn from_values(grid: Arc<Grid>, values: Vec<Real>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch {
                op: "from_values",
                msg: format!("{} values for {} nodes", values.len(), grid.len()),
            });
        }
        Ok(GridFunction { grid, values, coeffs: OnceLock::new() })
    }

    pub fn from_fn<F: FnMut(&Real) -> Real>(grid: Arc<Grid>, mut f: F) -> Self {
        let values = grid.nodes().iter().map(|x| f(x)).collect();
        GridFunction { grid, values, coeffs: OnceLock::new() }
    }

    pub fn constant(grid: Arc<Grid>, v: Real) -> Self {
        let values = vec![v; grid.len()];
        GridFunction { grid, values, coeffs: OnceLock::new() }
    }

    pub fn zero(grid: Arc<Grid>) -> Self {
        let bits = grid.bits();
        GridFunction::constant(grid, Float::new(bits))
    }

    /// The grid coordinate itself as a function (identity).
    pub fn coordinate(grid: Arc<Grid>) -> Self {
        let values = grid.nodes().to_vec();
        GridFunction { grid, values, coeffs: OnceLock::new() }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn bits(&self) -> u32 {
        self.grid.bits()
    }

    pub fn values(&self) -> &[Real] {
        &self.values
    }

    pub fn map<F: FnMut(&Real) -> Real>(&self, mut f: F) -> Self {
        let values = self.values.iter().map(|v| f(v)).collect();
        GridFunction { grid: self.grid.clone(), values, coeffs: OnceLock::new() }
    }

    pub fn scale(&self, s: &Real) -> Self {
        self.map(|v| v.clone() * s)
    }

    pub fn add_constant(&self, s: &Real) -> Self {
        self.map(|v| v.clone() + s)
    }

    pub fn max_abs(&self) -> Real {
        let mut m = Float::new(self.bits());
        for v in &self.values {
            let av = v.clone().abs();
            if av > m {
                m = av;
            }
        }
        m
    }

    /// Chebyshev coefficients a_k of the interpolant, in the T_k(y) basis
    /// on the reference interval.
    pub fn coeffs(&self) -> &[Real] {
        self.coeffs.get_or_init(|| {
            let n = self.grid.degree();
            let bits = self.bits();
            let table = self.grid.cos_table();
            // standard ordering runs y_j = cos(pi j / N) from +1 down,
            // our nodes ascend, so index j maps to node N - j
            let w = |j: usize| &self.values[n - j];
            let mut coeffs = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut t = Float::new(bits);
                // halve the j = 0 and j = N boundary terms
                t += w(0).clone() / 2u32;
                let end: Real = w(n).clone() * &table[(n * k) % (2 * n)];
                t += end / 2u32;
                for j in 1..n {
                    t += w(j).clone() * &table[(j * k) % (2 * n)];
                }
                let norm: u32 = if k == 0 || k == n { 1 } else { 2 };
                coeffs.push(t * norm / Float::with_val(bits, n as u32));
            }
            coeffs
        })
    }

    /// Clenshaw evaluation of the interpolant at x (inside or slightly
    /// outside [a, b]).
    pub fn eval(&self, x: &Real) -> Real {
        let y = self.grid.to_ref(x);
        clenshaw(self.coeffs(), &y, self.bits())
    }

    /// d/dx via the coefficient recurrence; the result lives on the same
    /// grid (values are the derivative series evaluated at the nodes).
    pub fn derivative(&self) -> Self {
        let n = self.grid.degree();
        let bits = self.bits();
        let a = self.coeffs();
        let mut c = vec![Float::new(bits); n + 1];
        if n >= 1 {
            c[n - 1] = a[n].clone() * Float::with_val(bits, 2 * n as u32);
            for k in (0..n.saturating_sub(1)).rev() {
                let next = c[k + 2].clone();
                c[k] = next + a[k + 1].clone() * Float::with_val(bits, 2 * (k + 1) as u32);
            }
            c[0] /= 2u32;
        }
        let inv_d = self.grid.half_width().recip();
        let values = self
            .grid
            .nodes()
            .iter()
            .map(|x| {
                let y = self.grid.to_ref(x);
                clenshaw(&c, &y, bits) * &inv_d
            })
            .collect();
        GridFunction { grid: self.grid.clone(), values, coeffs: OnceLock::new() }
    }

    /// Antiderivative F with F(a) = 0, on the same grid.
    pub fn antiderivative(&self) -> Self {
        let n = self.grid.degree();
        let bits = self.bits();
        let a = self.coeffs();
        let d = self.grid.half_width();
        // doubled a_0 folds the T_0 integral into the generic formula
        let at = |k: usize| -> Real {
            if k > n {
                Float::new(bits)
            } else if k == 0 {
                a[0].clone() * 2u32
            } else {
                a[k].clone()
            }
        };
        let mut big = vec![Float::new(bits); n + 2];
        for (m, slot) in big.iter_mut().enumerate().skip(1) {
            let num: Real = at(m - 1) - at(m + 1);
            *slot = num * &d / Float::with_val(bits, 2 * m as u32);
        }
        // fix the constant so F(a) = 0, i.e. sum A_k (-1)^k = 0
        let mut a0 = Float::new(bits);
        for (m, coeff) in big.iter().enumerate().skip(1) {
            if m % 2 == 0 {
                a0 -= coeff;
            } else {
                a0 += coeff;
            }
        }
        big[0] = a0;
        let values = self
            .grid
            .nodes()
            .iter()
            .map(|x| {
                let y = self.grid.to_ref(x);
                clenshaw(&big, &y, bits)
            })
            .collect();
        GridFunction { grid: self.grid.clone(), values, coeffs: OnceLock::new() }
    }

    /// Definite integral over the whole grid interval.
    pub fn integral(&self) -> Real {
        self.antiderivative().eval(self.grid.hi())
    }

    /// Pointwise division; fails if the denominator vanishes at a node.
    pub fn div_pointwise(&self, rhs: &GridFunction) -> Result<Self> {
        self.check_grid(rhs, "div_pointwise")?;
        for (x, v) in self.grid.nodes().iter().zip(rhs.values.iter()) {
            if v.is_zero() {
                return Err(Error::Singularity {
                    op: "div_pointwise",
                    location: x.to_f64(),
                    magnitude: 0.0,
                });
            }
        }
        let values = self
            .values
            .iter()
            .zip(rhs.values.iter())
            .map(|(p, q)| p.clone() / q)
            .collect();
        Ok(GridFunction { grid: self.grid.clone(), values, coeffs: OnceLock::new() })
    }

    pub fn check_grid(&self, rhs: &GridFunction, op: &'static str) -> Result<()> {
        if self.grid.same_as(&rhs.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                op,
                msg: format!(
                    "[{}, {}] degree {} vs [{}, {}] degree {}",
                    self.grid.lo().to_f64(),
                    self.grid.hi().to_f64(),
                    self.grid.degree(),
                    rhs.grid.lo().to_f64(),
                    rhs.grid.hi().to_f64(),
                    rhs.grid.degree()
                ),
            })
        }
    }

    fn binary<F: FnMut(&Real, &Real) -> Real>(&self, rhs: &GridFunction, mut f: F) -> Self {
        self.check_grid(rhs, "pointwise op").expect("grid mismatch in pointwise operator");
        let values = self
            .values
            .iter()
            .zip(rhs.values.iter())
            .map(|(p, q)| f(p, q))
            .collect();
        GridFunction { grid: self.grid.clone(), values, coeffs: OnceLock::new() }
    }
}

fn clenshaw(coeffs: &[Real], y: &Real, bits: u32) -> Real {
    let two_y: Real = y.clone() * 2u32;
    let mut b1 = Float::new(bits);
    let mut b2 = Float::new(bits);
    for a in coeffs.iter().skip(1).rev() {
        let next: Real = two_y.clone() * &b1 - b2 + a;
        b2 = std::mem::replace(&mut b1, next);
    }
    coeffs[0].clone() + y.clone() * b1 - b2
}

impl Add for &GridFunction {
    type Output = GridFunction;
    fn add(self, rhs: &GridFunction) -> GridFunction {
        self.binary(rhs, |p, q| p.clone() + q)
    }
}

impl Sub for &GridFunction {
    type Output = GridFunction;
    fn sub(self, rhs: &GridFunction) -> GridFunction {
        self.binary(rhs, |p, q| p.clone() - q)
    }
}

impl Mul for &GridFunction {
    type Output = GridFunction;
    fn mul(self, rhs: &GridFunction) -> GridFunction {
        self.binary(rhs, |p, q| p.clone() * q)
    }
}

impl Neg for &GridFunction {
    type Output = GridFunction;
    fn neg(self) -> GridFunction {
        self.map(|v| -v.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{exp10i, rnew};

    #[test]
    fn nodes_ascend_and_hit_endpoints() {
        let g = Grid::from_f64(128, 0.5, 5.0, 16);
        let nodes = g.nodes();
        assert_eq!(nodes[0].to_f64(), 0.5);
        assert_eq!(nodes[16].to_f64(), 5.0);
        for w in nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn interpolant_reproduces_node_values() {
        let bits = 200;
        let g = Grid::from_f64(bits, -1.0, 3.0, 24);
        let f = GridFunction::from_fn(g.clone(), |x| x.clone().exp());
        for (x, v) in g.nodes().iter().zip(f.values().iter()) {
            let e: Real = (f.eval(x) - v).abs();
            assert!(e < exp10i(bits, -50), "node reproduction off by {:e}", e.to_f64());
        }
    }

    #[test]
    fn spectral_accuracy_off_nodes() {
        let bits = 200;
        let g = Grid::from_f64(bits, -1.0, 1.0, 40);
        let f = GridFunction::from_fn(g, |x| x.clone().exp());
        let x = rnew(bits, 0.3711);
        let e: Real = (f.eval(&x) - x.clone().exp()).abs();
        assert!(e < exp10i(bits, -40), "interpolation error {:e}", e.to_f64());
    }

    #[test]
    fn derivative_of_cubic() {
        let bits = 200;
        let g = Grid::from_f64(bits, 0.0, 2.0, 12);
        let f = GridFunction::from_fn(g.clone(), |x| {
            x.clone() * x.clone().square() - x.clone() * 2u32
        });
        let df = f.derivative();
        let x = rnew(bits, 1.234);
        let want: Real = x.clone().square() * 3u32 - 2u32;
        let e: Real = (df.eval(&x) - want).abs();
        assert!(e < exp10i(bits, -45), "cubic derivative off by {:e}", e.to_f64());
    }

    #[test]
    fn antiderivative_of_cos_is_sin() {
        let bits = 200;
        let g = Grid::from_f64(bits, 0.0, 1.0, 32);
        let f = GridFunction::from_fn(g, |x| x.clone().cos());
        let ff = f.antiderivative();
        assert!(ff.values()[0].clone().abs() < exp10i(bits, -50), "F(0) must vanish");
        let x = rnew(bits, 1.0);
        let e: Real = (ff.eval(&x) - x.sin()).abs();
        assert!(e < exp10i(bits, -45), "sin(1) off by {:e}", e.to_f64());
    }

    #[test]
    fn derivative_undoes_antiderivative() {
        let bits = 200;
        let g = Grid::from_f64(bits, 0.0, 1.5, 48);
        let f = GridFunction::from_fn(g, |x| (x.clone() * 3u32).sin() + x.clone().square());
        let round = f.antiderivative().derivative();
        let diff = (&round - &f).max_abs();
        assert!(diff < exp10i(bits, -40), "round trip off by {:e}", diff.to_f64());
    }

    #[test]
    fn integral_matches_closed_form() {
        let bits = 200;
        let g = Grid::from_f64(bits, 0.0, 3.0, 40);
        let f = GridFunction::from_fn(g, |x| x.clone().exp());
        let want: Real = rnew(bits, 3.0).exp() - 1u32;
        let e: Real = (f.integral() - want).abs();
        assert!(e < exp10i(bits, -40), "integral off by {:e}", e.to_f64());
    }

    #[test]
    fn division_by_vanishing_function_fails() {
        let bits = 128;
        let g = Grid::from_f64(bits, -1.0, 1.0, 8);
        let num = GridFunction::constant(g.clone(), Float::with_val(bits, 1));
        let mut vals = vec![Float::with_val(bits, 1); g.len()];
        vals[3] = Float::new(bits);
        let den = GridFunction::from_values(g, vals).unwrap();
        let r = num.div_pointwise(&den);
        assert!(matches!(r, Err(Error::Singularity { .. })));
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let bits = 128;
        let f = GridFunction::zero(Grid::from_f64(bits, 0.0, 1.0, 8));
        let h = GridFunction::zero(Grid::from_f64(bits, 0.0, 1.0, 10));
        assert!(f.div_pointwise(&h).is_err());
    }
}
