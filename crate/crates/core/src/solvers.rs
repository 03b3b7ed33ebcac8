//! Solution formulas built on the subordination kernels.
//!
//! * Bounded domain: with eigenpairs `(λ_j, φ_j)` of the operator, the
//!   solution of `D_t^β u = -A^α u` has modal amplitudes
//!   `E_β(-λ_j^α t^β) (v, φ_j)`.
//! * Half line: the space-time fractional advection equation
//!   `D_t^β u = -D_x^α u`, `u(x, 0) = v(x)`, is solved by
//!   `u(x, t) = ∫₀^x ψ_{α,β}(t, τ) v(x - τ) dτ`. The boundary condition
//!   `J_x^{1-α} u |_{x=0} = 0` holds by construction and is not checked.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::{psi_kernel, KernelPoint, OrderPair};
use crate::numerics::{try_integrate_finite, try_integrate_points, QuadConfig};
use crate::special::{mittag_leffler_neg, MLArg, SeriesConfig};

/// Eigenvalues `λ_j` with the modal coefficients `(v, φ_j)` of the data.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProblem {
    pub eigenvalues: Vec<f64>,
    pub coefficients: Vec<f64>,
}

impl SpectralProblem {
    pub fn new(eigenvalues: Vec<f64>, coefficients: Vec<f64>) -> Result<Self> {
        let p = Self {
            eigenvalues,
            coefficients,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eigenvalues.is_empty() {
            return Err(Error::DomainError("at least one mode is required".into()));
        }
        if self.eigenvalues.len() != self.coefficients.len() {
            return Err(Error::DomainError(format!(
                "{} eigenvalues but {} coefficients",
                self.eigenvalues.len(),
                self.coefficients.len()
            )));
        }
        if let Some(l) = self.eigenvalues.iter().find(|&&l| !(l > 0.0 && l.is_finite())) {
            return Err(Error::DomainError(format!("eigenvalues must be positive, got {l}")));
        }
        if self.eigenvalues.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::DomainError("eigenvalues must be nondecreasing".into()));
        }
        if self.coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::DomainError("coefficients must be finite".into()));
        }
        Ok(())
    }

    /// `-u'' ` on `(0, π)` with Dirichlet conditions: `λ_j = j²`,
    /// `φ_j = √(2/π) sin(jx)`, and `(v, φ_j)` by quadrature, `j = 1..=modes`.
    pub fn dirichlet_interval<V>(v: V, modes: usize, q: &QuadConfig) -> Result<Self>
    where
        V: Fn(f64) -> f64,
    {
        if modes == 0 {
            return Err(Error::DomainError("at least one mode is required".into()));
        }
        let mut eigenvalues = Vec::with_capacity(modes);
        let mut coefficients = Vec::with_capacity(modes);
        for j in 1..=modes {
            let jf = j as f64;
            // one panel per half-wavelength
            let points: Vec<f64> = (0..=j).map(|k| PI * k as f64 / jf).collect();
            let c = try_integrate_points(|x| Ok(v(x) * dirichlet_mode(j, x)), &points, q)?;
            eigenvalues.push(jf * jf);
            coefficients.push(c.value);
        }
        Self::new(eigenvalues, coefficients)
    }
}

/// `φ_j(x) = √(2/π) sin(jx)`, orthonormal on `(0, π)`.
pub fn dirichlet_mode(j: usize, x: f64) -> f64 {
    (2.0 / PI).sqrt() * (j as f64 * x).sin()
}

/// Modal amplitudes `E_β(-λ_j^α t^β) (v, φ_j)`; `e^{-λ_j t} (v, φ_j)` for
/// `α = β = 1`.
pub fn solve_spectral(p: &SpectralProblem, op: OrderPair, t: f64) -> Result<Vec<f64>> {
    op.validate()?;
    p.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::DomainError(format!("t must be positive, got {t}")));
    }
    let cfg = SeriesConfig::default();
    p.eigenvalues
        .iter()
        .zip(&p.coefficients)
        .map(|(&l, &c)| Ok(modal_factor(l, op, t, &cfg)? * c))
        .collect()
}

fn modal_factor(lambda: f64, op: OrderPair, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    if op.is_delta() {
        return Ok((-lambda * t).exp());
    }
    let x = lambda.powf(op.alpha) * t.powf(op.beta);
    mittag_leffler_neg(MLArg::new(op.beta, 1.0, x)?, cfg)
}

/// `Σ_j a_j φ_j(x)` over the first `min(len)` modes.
pub fn synthesize(amplitudes: &[f64], modes_at_x: &[f64]) -> f64 {
    amplitudes.iter().zip(modes_at_x).map(|(a, p)| a * p).sum()
}

/// Initial profile `v` on `x ≥ 0`, orders, and ascending evaluation points.
#[derive(Debug, Clone)]
pub struct AdvectionProblem<V> {
    pub initial_profile: V,
    pub orders: OrderPair,
    pub eval_grid: Vec<f64>,
}

impl<V: Fn(f64) -> f64> AdvectionProblem<V> {
    pub fn new(initial_profile: V, orders: OrderPair, eval_grid: Vec<f64>) -> Result<Self> {
        let p = Self {
            initial_profile,
            orders,
            eval_grid,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.orders.validate()?;
        if let Some(x) = self.eval_grid.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::DomainError(format!("grid points must be positive, got {x}")));
        }
        if self.eval_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::DomainError("grid must be strictly ascending".into()));
        }
        Ok(())
    }
}

/// `u(x, t)` at every grid point. For `α = β = 1` this is the exact shift
/// `H(x - t) v(x - t)` with `H(0) = 1`.
pub fn solve_advection<V>(p: &AdvectionProblem<V>, t: f64, q: &QuadConfig) -> Result<Vec<f64>>
where
    V: Fn(f64) -> f64,
{
    p.validate()?;
    q.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::DomainError(format!("t must be positive, got {t}")));
    }
    p.eval_grid.iter().map(|&x| advection_point(p, x, t, q)).collect()
}

fn advection_point<V>(p: &AdvectionProblem<V>, x: f64, t: f64, q: &QuadConfig) -> Result<f64>
where
    V: Fn(f64) -> f64,
{
    let op = p.orders;
    let v = &p.initial_profile;
    if op.is_delta() {
        return Ok(if x >= t { v(x - t) } else { 0.0 });
    }
    let integrand = |tau: f64| -> Result<f64> {
        if tau == 0.0 && op.alpha < 1.0 && op.beta < 1.0 {
            return Ok(0.0);
        }
        Ok(psi_kernel(op, KernelPoint { t, tau }, q)? * v(x - tau))
    };
    let s = t.powf(op.beta / op.alpha);
    let exponent = if op.alpha < 1.0 && op.beta < 1.0 { op.alpha - 1.0 } else { 0.0 };
    let head_end = x.min(s);
    let head = try_integrate_finite(integrand, 0.0, head_end, &q.with_singular_exponent(exponent))?;
    if x <= s {
        return Ok(head.value);
    }
    // geometric panels across the decades of the tail
    let mut points = vec![s];
    while points[points.len() - 1] * 2.0 < x {
        let next = points[points.len() - 1] * 2.0;
        points.push(next);
    }
    points.push(x);
    let tail = try_integrate_points(integrand, &points, &q.with_singular_exponent(0.0))?;
    Ok(head.value + tail.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_examples() {
        let one = SpectralProblem::new(vec![1.0], vec![1.0]).unwrap();
        let a = solve_spectral(&one, OrderPair::new(1.0, 1.0).unwrap(), 1.0).unwrap();
        assert_eq!(a[0], (-1.0f64).exp());
        let a = solve_spectral(&one, OrderPair::new(0.5, 0.5).unwrap(), 1.0).unwrap();
        assert!((a[0] - 0.427_583_576_155_807_0).abs() < 1e-14);
        let four = SpectralProblem::new(vec![4.0], vec![1.0]).unwrap();
        let a = solve_spectral(&four, OrderPair::new(0.5, 1.0).unwrap(), 1.0).unwrap();
        assert!((a[0] - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn dirichlet_generator_recovers_single_mode() {
        let q = QuadConfig::default();
        let p = SpectralProblem::dirichlet_interval(|x| (3.0 * x).sin(), 5, &q).unwrap();
        assert_eq!(p.eigenvalues, vec![1.0, 4.0, 9.0, 16.0, 25.0]);
        let norm = (PI / 2.0).sqrt();
        for (j, c) in p.coefficients.iter().enumerate() {
            let expect = if j == 2 { norm } else { 0.0 };
            assert!((c - expect).abs() < 1e-11, "mode {}", j + 1);
        }
        let amps = solve_spectral(&p, OrderPair::new(1.0, 1.0).unwrap(), 0.1).unwrap();
        let x = 0.7;
        let modes: Vec<f64> = (1..=5).map(|j| dirichlet_mode(j, x)).collect();
        let u = synthesize(&amps, &modes);
        assert!((u - (-0.9f64).exp() * (3.0 * x).sin()).abs() < 1e-12);
    }

    #[test]
    fn spectral_rejects_bad_data() {
        assert!(SpectralProblem::new(vec![], vec![]).is_err());
        assert!(SpectralProblem::new(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(SpectralProblem::new(vec![0.0], vec![1.0]).is_err());
        assert!(SpectralProblem::new(vec![2.0, 1.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn advection_shift_and_half_orders() {
        let q = QuadConfig::default();
        let p = AdvectionProblem::new(|_| 1.0, OrderPair::new(1.0, 1.0).unwrap(), vec![0.5, 1.0, 2.0]).unwrap();
        assert_eq!(solve_advection(&p, 1.0, &q).unwrap(), vec![0.0, 1.0, 1.0]);
        let grid = vec![0.1, 1.0, 3.0, 50.0];
        let p = AdvectionProblem::new(|_| 1.0, OrderPair::new(0.5, 0.5).unwrap(), grid.clone()).unwrap();
        let u = solve_advection(&p, 1.0, &q).unwrap();
        for (x, u) in grid.iter().zip(u) {
            let exact = 2.0 / PI * x.sqrt().atan();
            assert!((u - exact).abs() < 1e-8, "x={x}: {u} vs {exact}");
        }
    }

    #[test]
    fn advection_grid_must_ascend() {
        let op = OrderPair::new(0.5, 0.5).unwrap();
        assert!(AdvectionProblem::new(|_| 1.0, op, vec![1.0, 0.5]).is_err());
        assert!(AdvectionProblem::new(|_| 1.0, op, vec![0.0, 0.5]).is_err());
    }
}
