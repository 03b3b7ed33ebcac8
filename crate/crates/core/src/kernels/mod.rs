//! Subordination kernels.
//!
//! For `0 < α, β ≤ 1` the kernels are built from one-variable densities by
//! the scaling laws
//!
//! ```text
//! f_α(t,τ)     = t^{-1/α} L_α(τ t^{-1/α})
//! φ_β(t,τ)     = t^{-β}   M_β(τ t^{-β})
//! ψ_{α,β}(t,τ) = t^{-β/α} K_{α,β}(τ t^{-β/α})
//! ```
//!
//! and `ψ_{α,β}(t,τ) = ∫₀^∞ φ_β(t,σ) f_α(σ,τ) dσ`. For `α = β = 1` every
//! kernel collapses to `δ(τ - t)`; those orders are reported as
//! [`Error::DiracCase`].
//!
//! `ψ_{α,β}(t, ·)` extends analytically in `t` to a sector `|arg t| < θ₀`;
//! only real `t` is supported here.

mod densities;
mod kfun;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gammafn::sin_pi;
use crate::numerics::{try_integrate_semi_infinite, QuadConfig};

pub use densities::{levy_density, levy_density_talbot, mainardi, mainardi_talbot};
pub use kfun::{k_density, k_talbot, Representation};

/// Fractional orders `(α, β)` with `0 < α, β ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderPair {
    pub alpha: f64,
    pub beta: f64,
}

impl OrderPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let op = Self { alpha, beta };
        op.validate()?;
        Ok(op)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidOrder(format!("{name} must lie in (0, 1], got {v}")));
            }
        }
        Ok(())
    }

    /// `α = β = 1`: the subordinated semigroup is the classical one.
    pub fn is_delta(&self) -> bool {
        self.alpha == 1.0 && self.beta == 1.0
    }
}

/// Evaluation point `(t, τ)` of a two-variable kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub t: f64,
    pub tau: f64,
}

impl KernelPoint {
    pub fn new(t: f64, tau: f64) -> Result<Self> {
        let p = Self { t, tau };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::DomainError(format!("t must be finite and positive, got {}", self.t)));
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(Error::DomainError(format!(
                "tau must be finite and non-negative, got {}",
                self.tau
            )));
        }
        Ok(())
    }
}

/// `f_α(t, τ)`; zero at `τ = 0`.
pub fn f_kernel(alpha: f64, p: KernelPoint) -> Result<f64> {
    p.validate()?;
    if alpha == 1.0 {
        return Err(Error::DiracCase("f_1(t, τ) = δ(τ - t)".into()));
    }
    if p.tau == 0.0 {
        OrderPair::new(alpha, 1.0)?;
        return Ok(0.0);
    }
    let s = p.t.powf(-1.0 / alpha);
    Ok(s * levy_density(alpha, p.tau * s)?)
}

/// `φ_β(t, τ)`.
pub fn phi_kernel(beta: f64, p: KernelPoint) -> Result<f64> {
    p.validate()?;
    if beta == 1.0 {
        return Err(Error::DiracCase("φ_1(t, τ) = δ(τ - t)".into()));
    }
    let s = p.t.powf(-beta);
    Ok(s * mainardi(beta, p.tau * s)?)
}

/// `ψ_{α,α}(t, τ) = (1/π) t^α τ^{α-1} sin απ / (t^{2α} + 2 t^α τ^α cos απ + τ^{2α})`.
fn psi_equal(alpha: f64, t: f64, tau: f64) -> f64 {
    let ta = t.powf(alpha);
    let sa = tau.powf(alpha);
    ta * tau.powf(alpha - 1.0) * sin_pi(alpha) / (PI * (ta * ta + 2.0 * ta * sa * (PI * alpha).cos() + sa * sa))
}

/// `ψ_{α,β}(t, τ)` with the automatic representation.
pub fn psi_kernel(op: OrderPair, p: KernelPoint, q: &QuadConfig) -> Result<f64> {
    psi_kernel_with(op, p, Representation::Auto, q)
}

/// `ψ_{α,β}(t, τ)` with `K_{α,β}` evaluated by `rep`.
pub fn psi_kernel_with(op: OrderPair, p: KernelPoint, rep: Representation, q: &QuadConfig) -> Result<f64> {
    op.validate()?;
    p.validate()?;
    if op.is_delta() {
        return Err(Error::DiracCase("ψ_{1,1}(t, τ) = δ(τ - t)".into()));
    }
    let (a, b) = (op.alpha, op.beta);
    if p.tau == 0.0 {
        return match (a, b) {
            (a, _) if a == 1.0 => phi_kernel(b, p),
            (_, b) if b == 1.0 => Ok(0.0),
            _ => Err(Error::DomainError(format!(
                "ψ_{{{a},{b}}}(t, τ) is singular like τ^{{α-1}} at τ = 0"
            ))),
        };
    }
    if a == b && matches!(rep, Representation::Auto | Representation::ClosedForm) {
        return Ok(psi_equal(a, p.t, p.tau));
    }
    let s = p.t.powf(-b / a);
    Ok(s * k_density(op, p.tau * s, rep, q)?)
}

/// `∫₀^∞ a(t, σ) b(σ, τ) dσ`.
///
/// With `a = φ_β`, `b = f_α` this is `ψ_{α,β}`; `f_α ∘ f_{α'} = f_{αα'}`
/// and `φ_β ∘ φ_{β'} = φ_{ββ'}`. The order of the factors matters.
pub fn compose_kernels<A, B>(a: A, b: B, t: f64, tau: f64, q: &QuadConfig) -> Result<f64>
where
    A: Fn(f64, f64) -> Result<f64>,
    B: Fn(f64, f64) -> Result<f64>,
{
    KernelPoint::new(t, tau)?;
    let r = try_integrate_semi_infinite(
        |s: f64| Ok(a(t, s)? * b(s, tau)?),
        (t * tau).sqrt().max(1e-300),
        &q.with_abs_tol(0.0),
    )?;
    Ok(r.value)
}
