//! Green functions of the space-time fractional diffusion equation on `ℝⁿ`.
//!
//! All of them are radial; a query carries `ρ = |x|` directly. The general
//! route is subordination of the heat kernel,
//!
//! ```text
//! G_{α,β,n}(x,t) = ∫₀^∞ ψ_{α,β}(t,τ) G_{1,1,n}(x,τ) dτ,
//! ```
//!
//! with closed forms for `α = β` in two dimensions, for `α = β = 1/2` in any
//! dimension, and for the neutral case `(α/2, α)` in one dimension.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gammafn::{gamma, sin_pi};
use crate::kernels::{psi_kernel, KernelPoint, OrderPair};
use crate::numerics::{try_integrate_semi_infinite, QuadConfig};
use crate::special::{exp_scaled_e1, mittag_leffler_neg, tricomi_u, MLArg, SeriesConfig};

/// Point `(n, ρ, t)` at which a Green function is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenQuery {
    pub n: u32,
    pub rho: f64,
    pub t: f64,
}

impl GreenQuery {
    pub fn new(n: u32, rho: f64, t: f64) -> Result<Self> {
        let qy = Self { n, rho, t };
        qy.validate()?;
        Ok(qy)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::DomainError("dimension n must be at least 1".into()));
        }
        if !(self.rho >= 0.0 && self.rho.is_finite()) {
            return Err(Error::DomainError(format!("rho must be finite and >= 0, got {}", self.rho)));
        }
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::DomainError(format!("t must be finite and > 0, got {}", self.t)));
        }
        Ok(())
    }

    /// `ρ²/4t`.
    pub fn z(&self) -> f64 {
        self.rho * self.rho / (4.0 * self.t)
    }
}

/// Evaluation route for [`green_function`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GreenMethod {
    /// Quadrature of `ψ_{α,β}` against the heat kernel; always applicable.
    Subordination,
    /// `α = β`, `n = 2`, through `E_{α,α}`.
    ClosedForm2D,
    /// `α = β = 1/2`, any `n`, through Tricomi's `U`.
    ClosedFormHalfHalf,
    /// `α = β = 1/2`, `n = 1`, through `E₁`.
    ClosedForm1DHalf,
    /// `α = β = 1/2`, `n = 3`, through `E₁`.
    ClosedForm3DHalf,
    /// Orders `(α/2, α)`, `n = 1`, elementary.
    NeutralDiffusion,
    /// Orders `(α/2, α)`: quadrature of `ψ_{α,α}` against the Poisson kernel.
    PoissonBase,
}

impl GreenMethod {
    pub const ALL: [GreenMethod; 7] = [
        GreenMethod::Subordination,
        GreenMethod::ClosedForm2D,
        GreenMethod::ClosedFormHalfHalf,
        GreenMethod::ClosedForm1DHalf,
        GreenMethod::ClosedForm3DHalf,
        GreenMethod::NeutralDiffusion,
        GreenMethod::PoissonBase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GreenMethod::Subordination => "subordination",
            GreenMethod::ClosedForm2D => "2d",
            GreenMethod::ClosedFormHalfHalf => "half-half",
            GreenMethod::ClosedForm1DHalf => "1d-half",
            GreenMethod::ClosedForm3DHalf => "3d-half",
            GreenMethod::NeutralDiffusion => "neutral",
            GreenMethod::PoissonBase => "poisson",
        }
    }

    /// The most specific closed form for `(op, n)`, else subordination.
    pub fn default_for(op: OrderPair, n: u32) -> GreenMethod {
        let (a, b) = (op.alpha, op.beta);
        if a == 0.5 && b == 0.5 {
            match n {
                1 => GreenMethod::ClosedForm1DHalf,
                2 => GreenMethod::ClosedForm2D,
                3 => GreenMethod::ClosedForm3DHalf,
                _ => GreenMethod::ClosedFormHalfHalf,
            }
        } else if a == b && n == 2 {
            GreenMethod::ClosedForm2D
        } else if b == 2.0 * a && n == 1 {
            GreenMethod::NeutralDiffusion
        } else if b == 2.0 * a {
            GreenMethod::PoissonBase
        } else {
            GreenMethod::Subordination
        }
    }

    /// `Err(MethodNotApplicable)` unless the method covers `(op, n)`.
    pub fn check(self, op: OrderPair, n: u32) -> Result<()> {
        let (a, b) = (op.alpha, op.beta);
        let half = a == 0.5 && b == 0.5;
        let (ok, need) = match self {
            GreenMethod::Subordination => (true, ""),
            GreenMethod::ClosedForm2D => (a == b && n == 2, "alpha = beta and n = 2"),
            GreenMethod::ClosedFormHalfHalf => (half, "alpha = beta = 1/2"),
            GreenMethod::ClosedForm1DHalf => (half && n == 1, "alpha = beta = 1/2 and n = 1"),
            GreenMethod::ClosedForm3DHalf => (half && n == 3, "alpha = beta = 1/2 and n = 3"),
            GreenMethod::NeutralDiffusion => (b == 2.0 * a && n == 1, "beta = 2 alpha and n = 1"),
            GreenMethod::PoissonBase => (b == 2.0 * a, "beta = 2 alpha"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::MethodNotApplicable(
                self.name().into(),
                format!("needs {need}; got alpha = {a}, beta = {b}, n = {n}"),
            ))
        }
    }
}

impl fmt::Display for GreenMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GreenMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        GreenMethod::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            let names: Vec<_> = GreenMethod::ALL.iter().map(|m| m.name()).collect();
            format!("unknown Green method '{s}' (expected one of {})", names.join(", "))
        })
    }
}

/// `(4πt)^{-n/2} e^{-ρ²/4t}`.
pub fn heat_kernel(qy: GreenQuery) -> Result<f64> {
    qy.validate()?;
    Ok(heat(qy.n, qy.rho, qy.t))
}

fn heat(n: u32, rho: f64, t: f64) -> f64 {
    (-(n as f64) / 2.0 * (4.0 * PI * t).ln() - rho * rho / (4.0 * t)).exp()
}

/// `Γ((n+1)/2) t / (π^{(n+1)/2} (t² + ρ²)^{(n+1)/2})`.
pub fn poisson_kernel(qy: GreenQuery) -> Result<f64> {
    qy.validate()?;
    Ok(poisson(qy.n, qy.rho, qy.t))
}

fn poisson(n: u32, rho: f64, t: f64) -> f64 {
    let h = (n as f64 + 1.0) / 2.0;
    gamma(h) * t / (PI.powf(h) * (t * t + rho * rho).powf(h))
}

/// Whether `G_{α,β,n}(0, t)` is finite: `ψ_{α,β}(t,τ) ~ τ^{α-1}` near `τ = 0`
/// unless `β = 1`, so the heat kernel's `τ^{-n/2}` is integrable only for
/// `n = 1`, `α > 1/2`.
pub fn finite_at_origin(op: OrderPair, n: u32) -> bool {
    op.beta == 1.0 || (n == 1 && op.alpha > 0.5)
}

/// `G_{α,β,n}(ρ, t)` by the chosen route.
pub fn green_function(op: OrderPair, qy: GreenQuery, m: GreenMethod, q: &QuadConfig) -> Result<f64> {
    op.validate()?;
    qy.validate()?;
    q.validate()?;
    m.check(op, qy.n)?;
    if qy.rho == 0.0 {
        let finite = match m {
            GreenMethod::NeutralDiffusion | GreenMethod::PoissonBase => op.beta == 1.0 || (qy.n == 1 && op.beta > 1.0),
            _ => finite_at_origin(op, qy.n),
        };
        if !finite {
            return Err(Error::NotFinite(format!(
                "G_{{{},{},{}}}(0, t) diverges",
                op.alpha, op.beta, qy.n
            )));
        }
    }
    let v = match m {
        GreenMethod::Subordination => subordination(op, qy, q)?,
        GreenMethod::ClosedForm2D => closed_2d(op.alpha, qy)?,
        GreenMethod::ClosedFormHalfHalf => closed_half_u(qy, q)?,
        GreenMethod::ClosedForm1DHalf => closed_half_1d(qy)?,
        GreenMethod::ClosedForm3DHalf => closed_half_3d(qy)?,
        GreenMethod::NeutralDiffusion => neutral(op.beta, qy.rho, qy.t),
        GreenMethod::PoissonBase => poisson_subordination(op.beta, qy, q)?,
    };
    if !v.is_finite() {
        return Err(Error::NotFinite(format!("G = {v} at {qy:?}")));
    }
    Ok(v.max(0.0))
}

fn subordination(op: OrderPair, qy: GreenQuery, q: &QuadConfig) -> Result<f64> {
    if op.is_delta() {
        return Ok(heat(qy.n, qy.rho, qy.t));
    }
    heat_subordination(op, qy, q)
}

/// `∫₀^∞ ψ_{α,β}(t,τ) G_{1,1,n}(ρ,τ) dτ` with no finiteness guard at `ρ = 0`.
fn heat_subordination(op: OrderPair, qy: GreenQuery, q: &QuadConfig) -> Result<f64> {
    let GreenQuery { n, rho, t } = qy;
    let (a, b) = (op.alpha, op.beta);
    let scale = if rho > 0.0 { rho * rho / 4.0 } else { t.powf(b / a) };
    let s = if rho > 0.0 {
        0.0
    } else {
        let psi_exp = if b < 1.0 && a < 1.0 { a - 1.0 } else { 0.0 };
        (psi_exp - n as f64 / 2.0).max(-0.999)
    };
    let qs = q.with_abs_tol(0.0).with_singular_exponent(if rho > 0.0 { 0.0 } else { s.min(0.0) });
    let r = try_integrate_semi_infinite(
        |tau: f64| {
            let h = heat(n, rho, tau);
            if h == 0.0 {
                return Ok(0.0);
            }
            Ok(psi_kernel(op, KernelPoint { t, tau }, q)? * h)
        },
        scale,
        &qs,
    )?;
    Ok(r.value)
}

/// `G_{α,β,n}(0, t)` by subordination, without the finiteness guard;
/// `Err(Divergent)` when the contributions near `τ = 0` stop decaying.
pub fn green_at_origin(op: OrderPair, n: u32, t: f64, q: &QuadConfig) -> Result<f64> {
    op.validate()?;
    GreenQuery::new(n, 0.0, t)?;
    if op.is_delta() {
        return Ok(heat(n, 0.0, t));
    }
    let r = try_integrate_semi_infinite(
        |tau: f64| Ok(psi_kernel(op, KernelPoint { t, tau }, q)? * heat(n, 0.0, tau)),
        t.powf(op.beta / op.alpha),
        &q.with_abs_tol(0.0).with_singular_exponent(0.0),
    )?;
    Ok(r.value)
}

fn closed_2d(alpha: f64, qy: GreenQuery) -> Result<f64> {
    let z = qy.z();
    if z == 0.0 {
        return Ok(1.0 / (4.0 * PI * qy.t));
    }
    let za = z.powf(alpha);
    let e = mittag_leffler_neg(MLArg::new(alpha, alpha, za)?, &SeriesConfig::default())?;
    Ok(z.powf(alpha - 1.0) * e / (4.0 * PI * qy.t))
}

fn closed_half_u(qy: GreenQuery, q: &QuadConfig) -> Result<f64> {
    let h = (qy.n as f64 + 1.0) / 2.0;
    let nf = qy.n as f64;
    let pref = gamma(h) / (2f64.powf(nf) * PI.powf(nf / 2.0 + 1.0) * qy.t.powf(nf / 2.0));
    if qy.rho == 0.0 {
        // U(1, 1, z) ~ -ln z
        return Err(Error::NotFinite("U((n+1)/2, (n+1)/2, 0) diverges".into()));
    }
    Ok(pref * tricomi_u(h, h, qy.z(), q)?)
}

fn closed_half_1d(qy: GreenQuery) -> Result<f64> {
    Ok(exp_scaled_e1(qy.z())? / (2.0 * PI.powf(1.5) * qy.t.sqrt()))
}

fn closed_half_3d(qy: GreenQuery) -> Result<f64> {
    let t = qy.t;
    let p = PI.powf(2.5);
    Ok(1.0 / (2.0 * p * t.sqrt() * qy.rho * qy.rho) - exp_scaled_e1(qy.z())? / (8.0 * p * t * t.sqrt()))
}

/// `G_{α/2,α,1}(x,t) = (1/π) t^α x^{α-1} sin(απ/2) / (t^{2α} + 2 t^α x^α cos(απ/2) + x^{2α})`.
fn neutral(alpha: f64, x: f64, t: f64) -> f64 {
    let ta = t.powf(alpha);
    let xa = x.powf(alpha);
    ta * x.powf(alpha - 1.0) * sin_pi(alpha / 2.0)
        / (PI * (ta * ta + 2.0 * ta * xa * (PI * alpha / 2.0).cos() + xa * xa))
}

/// `∫₀^∞ ψ_{α,α}(t,τ) P_n(ρ,τ) dτ` with the Poisson kernel `P_n`.
fn poisson_subordination(alpha: f64, qy: GreenQuery, q: &QuadConfig) -> Result<f64> {
    let GreenQuery { n, rho, t } = qy;
    if alpha == 1.0 {
        return Ok(poisson(n, rho, t));
    }
    let op = OrderPair::new(alpha, alpha)?;
    let r = try_integrate_semi_infinite(
        |tau: f64| Ok(psi_kernel(op, KernelPoint { t, tau }, q)? * poisson(n, rho, tau)),
        if rho > 0.0 { rho } else { t },
        &q.with_abs_tol(0.0).with_singular_exponent(if rho > 0.0 { 0.0 } else { (alpha - 1.0 - n as f64).max(-0.999) }),
    )?;
    Ok(r.value)
}

/// The two limiting forms of `G_{1/2,1/2,1}(x, t)`, as
/// `(small, large)`: `(ln 4t - ln x²)/(2π^{3/2}√t)` for `x²/4t → 0` and
/// `2√t/(π^{3/2} x²)` for `x²/4t → ∞`.
pub fn green_1d_half_asymptotics(x: f64, t: f64) -> Result<(f64, f64)> {
    check_xt(x, t)?;
    let p = PI.powf(1.5);
    let small = ((4.0 * t).ln() - (x * x).ln()) / (2.0 * p * t.sqrt());
    let large = 2.0 * t.sqrt() / (p * x * x);
    Ok((small, large))
}

/// Elementary bounds `(lo, hi)` with `lo < G_{1/2,1/2,1}(x, t) < hi`.
pub fn green_1d_half_bracket(x: f64, t: f64) -> Result<(f64, f64)> {
    check_xt(x, t)?;
    let p = PI.powf(1.5) * t.sqrt();
    let lo = (8.0 * t / (x * x)).ln_1p() / (4.0 * p);
    let hi = (4.0 * t / (x * x)).ln_1p() / (2.0 * p);
    Ok((lo, hi))
}

fn check_xt(x: f64, t: f64) -> Result<()> {
    if !(x != 0.0 && x.is_finite() && t > 0.0 && t.is_finite()) {
        return Err(Error::DomainError(format!("needs x != 0 and t > 0, got x = {x}, t = {t}")));
    }
    Ok(())
}

/// `∫_{ℝⁿ} G(x) dx = |S^{n-1}| ∫₀^∞ G(ρ) ρ^{n-1} dρ`.
pub fn radial_mass<G>(n: u32, g: G, q: &QuadConfig) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    if n == 0 {
        return Err(Error::DomainError("dimension n must be at least 1".into()));
    }
    let nf = n as f64;
    let surface = 2.0 * PI.powf(nf / 2.0) / gamma(nf / 2.0);
    let r = try_integrate_semi_infinite(|rho: f64| Ok(g(rho)? * rho.powf(nf - 1.0)), 1.0, &q.with_abs_tol(0.0))?;
    Ok(surface * r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(a: f64, b: f64) -> OrderPair {
        OrderPair::new(a, b).unwrap()
    }

    #[test]
    fn heat_and_poisson_values() {
        let h = heat_kernel(GreenQuery::new(1, 0.0, 1.0).unwrap()).unwrap();
        assert!((h - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
        let h = heat_kernel(GreenQuery::new(2, 0.0, 1.0).unwrap()).unwrap();
        assert!((h - 1.0 / (4.0 * PI)).abs() < 1e-15);
        let h = heat_kernel(GreenQuery::new(1, 2.0, 1.0).unwrap()).unwrap();
        assert!((h - (-1.0f64).exp() / (2.0 * PI.sqrt())).abs() < 1e-15);
        let p = poisson_kernel(GreenQuery::new(1, 0.0, 1.0).unwrap()).unwrap();
        assert!((p - 1.0 / PI).abs() < 1e-15);
        let p = poisson_kernel(GreenQuery::new(1, 1.0, 1.0).unwrap()).unwrap();
        assert!((p - 0.5 / PI).abs() < 1e-15);
        let p = poisson_kernel(GreenQuery::new(3, 0.0, 1.0).unwrap()).unwrap();
        assert!((p - 1.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let q = QuadConfig::default().with_rel_tol(1e-11);
        let half = op(0.5, 0.5);
        let g = green_function(half, GreenQuery::new(1, 2.0, 1.0).unwrap(), GreenMethod::ClosedForm1DHalf, &q).unwrap();
        assert!((g - 0.053_548_153_293_278_20).abs() < 1e-13);
        let g = green_function(half, GreenQuery::new(2, 2.0, 1.0).unwrap(), GreenMethod::ClosedForm2D, &q).unwrap();
        assert!((g - 0.010_870_760_666_238_36).abs() < 1e-13);
        let g = green_function(op(0.5, 1.0), GreenQuery::new(1, 1.0, 1.0).unwrap(), GreenMethod::NeutralDiffusion, &q)
            .unwrap();
        assert!((g - 0.5 / PI).abs() < 1e-15);
    }

    #[test]
    fn method_guards() {
        let q = QuadConfig::default();
        let e = green_function(op(0.4, 0.8), GreenQuery::new(1, 1.0, 1.0).unwrap(), GreenMethod::ClosedForm2D, &q);
        assert!(matches!(e, Err(Error::MethodNotApplicable(..))));
        let e = green_function(op(0.5, 0.5), GreenQuery::new(2, 0.0, 1.0).unwrap(), GreenMethod::ClosedForm2D, &q);
        assert!(matches!(e, Err(Error::NotFinite(_))));
        let e = green_function(op(0.5, 0.5), GreenQuery::new(1, 0.0, 1.0).unwrap(), GreenMethod::Subordination, &q);
        assert!(matches!(e, Err(Error::NotFinite(_))));
        assert!(GreenQuery::new(0, 1.0, 1.0).is_err());
        assert_eq!("2d".parse::<GreenMethod>().unwrap(), GreenMethod::ClosedForm2D);
        assert_eq!(GreenMethod::default_for(op(0.4, 0.8), 1), GreenMethod::NeutralDiffusion);
    }

    #[test]
    fn large_argument_stays_finite() {
        let q = QuadConfig::default();
        let g = green_function(op(0.5, 0.5), GreenQuery::new(1, 100.0, 1e-3).unwrap(), GreenMethod::ClosedForm1DHalf, &q)
            .unwrap();
        let (_, large) = green_1d_half_asymptotics(100.0, 1e-3).unwrap();
        assert!((g / large - 1.0).abs() < 1e-6);
    }

    #[test]
    fn delta_orders_reduce_to_heat_kernel() {
        let q = QuadConfig::default();
        let qy = GreenQuery::new(3, 0.7, 0.4).unwrap();
        let g = green_function(op(1.0, 1.0), qy, GreenMethod::Subordination, &q).unwrap();
        assert_eq!(g, heat_kernel(qy).unwrap());
    }
}
