//! The one-variable kernel `K_{α,β}`, defined by `∫₀^∞ e^{-λr} K_{α,β}(r) dr = E_β(-λ^α)`.
//!
//! Away from the closed-form cases `K` is computed from one of the integral
//! representations
//!
//! ```text
//! (1) ∫₀^∞ σ^{-1/α} L_α(r σ^{-1/α}) M_β(σ) dσ
//! (2) ∫₀^∞ σ^{β/α} L_α(r σ^{β/α}) L_β(σ) dσ
//! (3) α r^{α-1} ∫₀^∞ σ M_α(σ) M_β(σ r^α) dσ
//! (4) ∫₀^∞ σ^{-β/α} L_{α/β}(r σ^{-β/α}) K_{β,β}(σ) dσ          (α < β)
//! ```
//!
//! or by Talbot inversion of `E_β(-λ^α)`. The automatic choice prefers the
//! expansions
//!
//! ```text
//! K(r) = (1/π) Σ_{k≥1} (-1)^{k+1} Γ(αk+1)/Γ(βk+1) sin(παk) r^{-αk-1}
//! K(r) = (1/π) Σ_{k≥1} (-1)^{k+1} Γ(βk)/Γ(αk) sin(πβk) r^{αk-1}
//! ```
//!
//! where they can be summed without loss: the first converges for `α < β`,
//! the second for `α > β` and is asymptotic as `r → 0` otherwise.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::densities::{levy_density, mainardi, mainardi_talbot, CANCELLATION_LIMIT};
use super::OrderPair;
use crate::error::{Error, Result};
use crate::gammafn::{gamma, ln_gamma, sin_pi};
use crate::numerics::{try_integrate_semi_infinite, try_inverse_laplace_talbot, QuadConfig, TalbotConfig};
use crate::special::mittag_leffler_complex;

/// How [`k_density`] evaluates `K_{α,β}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Closed form if available, then series, then (1), then Talbot.
    Auto,
    ClosedForm,
    /// Representation (1), Lévy × Mainardi.
    LevyMainardi,
    /// Representation (2), Lévy × Lévy.
    LevyLevy,
    /// Representation (3), Mainardi × Mainardi.
    MainardiMainardi,
    /// Representation (4), composition through `K_{β,β}`.
    HalfComposition,
    /// Talbot inversion of `E_β(-λ^α)`.
    Talbot,
}

impl Representation {
    pub const ALL: [Representation; 7] = [
        Representation::Auto,
        Representation::ClosedForm,
        Representation::LevyMainardi,
        Representation::LevyLevy,
        Representation::MainardiMainardi,
        Representation::HalfComposition,
        Representation::Talbot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Representation::Auto => "auto",
            Representation::ClosedForm => "closed",
            Representation::LevyMainardi => "rep1",
            Representation::LevyLevy => "rep2",
            Representation::MainardiMainardi => "rep3",
            Representation::HalfComposition => "rep4",
            Representation::Talbot => "talbot",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Representation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Representation::ALL.iter().map(|r| r.name()).collect();
                format!("unknown representation '{s}' (expected one of {})", names.join(", "))
            })
    }
}

/// `K_{α,α}(r) = (1/π) r^{α-1} sin απ / (r^{2α} + 2r^α cos απ + 1)`.
fn k_equal(alpha: f64, r: f64) -> f64 {
    let ra = r.powf(alpha);
    r.powf(alpha - 1.0) * sin_pi(alpha) / (PI * (ra * ra + 2.0 * ra * (PI * alpha).cos() + 1.0))
}

fn closed_form(op: OrderPair, r: f64) -> Option<Result<f64>> {
    if op.alpha == op.beta {
        Some(Ok(k_equal(op.alpha, r)))
    } else if op.beta == 1.0 {
        Some(levy_density(op.alpha, r))
    } else if op.alpha == 1.0 {
        Some(mainardi(op.beta, r))
    } else {
        None
    }
}

/// `K_{α,β}(r)`, `r > 0`.
pub fn k_density(op: OrderPair, r: f64, rep: Representation, q: &QuadConfig) -> Result<f64> {
    if op.is_delta() {
        return Err(Error::DiracCase("K_{1,1} is the point mass at r = 1".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::DomainError(format!("K needs finite r > 0, got {r}")));
    }
    q.validate()?;
    let (a, b) = (op.alpha, op.beta);
    let v = match rep {
        Representation::Auto => {
            if let Some(v) = closed_form(op, r) {
                v?
            } else if let Some(v) = k_series(a, b, r) {
                v
            } else {
                match rep1(a, b, r, q) {
                    Err(Error::QuadratureFailure(_)) => k_talbot(op, r, &TalbotConfig::default())?,
                    other => other?,
                }
            }
        }
        Representation::ClosedForm => closed_form(op, r).ok_or_else(|| {
            Error::RepNotApplicable(
                rep.name().into(),
                format!("no closed form for alpha = {a}, beta = {b}; needs alpha = beta, alpha = 1 or beta = 1"),
            )
        })??,
        Representation::LevyMainardi | Representation::LevyLevy | Representation::MainardiMainardi => {
            if a == 1.0 || b == 1.0 {
                return Err(Error::RepNotApplicable(
                    rep.name().into(),
                    "needs alpha < 1 and beta < 1 (a factor degenerates to a point mass)".into(),
                ));
            }
            match rep {
                Representation::LevyMainardi => rep1(a, b, r, q)?,
                Representation::LevyLevy => rep2(a, b, r, q)?,
                _ => rep3(a, b, r, q)?,
            }
        }
        Representation::HalfComposition => {
            if !(a < b && b < 1.0) {
                return Err(Error::RepNotApplicable(
                    rep.name().into(),
                    format!("needs alpha < beta < 1, got alpha = {a}, beta = {b}"),
                ));
            }
            rep4(a, b, r, q)?
        }
        Representation::Talbot => k_talbot(op, r, &TalbotConfig::default())?,
    };
    if !v.is_finite() {
        return Err(Error::NotFinite(format!("K_{{{a},{b}}}({r}) = {v}")));
    }
    Ok(v.max(0.0))
}

/// `K_{α,β}(r)` by Talbot inversion of its Laplace transform; for `α = 1`
/// the Mainardi function is inverted through `exp(-λ^β)` instead.
pub fn k_talbot(op: OrderPair, r: f64, cfg: &TalbotConfig) -> Result<f64> {
    if op.is_delta() {
        return Err(Error::DiracCase("K_{1,1} is the point mass at r = 1".into()));
    }
    let (a, b) = (op.alpha, op.beta);
    if a == 1.0 {
        return mainardi_talbot(b, r, cfg);
    }
    if b == 1.0 {
        return try_inverse_laplace_talbot(|z: Complex64| Ok((-z.powf(a)).exp()), r, cfg);
    }
    let qc = QuadConfig::default().with_rel_tol(1e-12);
    try_inverse_laplace_talbot(|z: Complex64| mittag_leffler_complex(b, 1.0, -z.powf(a), &qc), r, cfg)
}

/// Sums whichever expansion is usable at `r`; `None` if neither is.
pub(crate) fn k_series(a: f64, b: f64, r: f64) -> Option<f64> {
    if a < b {
        large_r_series(a, b, r).or_else(|| small_r_asymptotic(a, b, r))
    } else {
        small_r_series(a, b, r)
    }
}

struct Acc {
    sum: f64,
    comp: f64,
    max_env: f64,
}

impl Acc {
    fn new() -> Self {
        Self {
            sum: 0.0,
            comp: 0.0,
            max_env: 0.0,
        }
    }

    fn add(&mut self, term: f64, env: f64) {
        self.max_env = self.max_env.max(env);
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `Γ(x)/Γ(y)` for positive arguments.
fn gamma_ratio(x: f64, y: f64) -> f64 {
    if x < 170.0 && y < 170.0 {
        gamma(x) / gamma(y)
    } else {
        (ln_gamma(x) - ln_gamma(y)).exp()
    }
}

fn large_r_series(a: f64, b: f64, r: f64) -> Option<f64> {
    let k_peak = (a.powf(a) * b.powf(-b) * r.powf(-a)).powf(1.0 / (b - a));
    if k_peak > 150.0 {
        return None;
    }
    let mut acc = Acc::new();
    for k in 1..2000usize {
        let kf = k as f64;
        let env = gamma_ratio(a * kf + 1.0, b * kf + 1.0) * r.powf(-a * kf - 1.0) / PI;
        let term = if k % 2 == 1 { env } else { -env } * sin_pi(a * kf);
        acc.add(term, env);
        if kf > k_peak + 1.0 && (env <= 1e-17 * acc.value().abs() || env <= 1e-24 * acc.max_env) {
            let v = acc.value();
            return (acc.max_env <= CANCELLATION_LIMIT * v.abs()).then_some(v);
        }
    }
    None
}

fn small_r_series(a: f64, b: f64, r: f64) -> Option<f64> {
    let k_peak = (b.powf(b) * a.powf(-a) * r.powf(a)).powf(1.0 / (a - b));
    if k_peak > 150.0 {
        return None;
    }
    let mut acc = Acc::new();
    for k in 1..2000usize {
        let kf = k as f64;
        let env = gamma_ratio(b * kf, a * kf) * r.powf(a * kf - 1.0) / PI;
        let term = if k % 2 == 1 { env } else { -env } * sin_pi(b * kf);
        acc.add(term, env);
        if kf > k_peak + 1.0 && (env <= 1e-17 * acc.value().abs() || env <= 1e-24 * acc.max_env) {
            let v = acc.value();
            return (acc.max_env <= CANCELLATION_LIMIT * v.abs()).then_some(v);
        }
    }
    None
}

/// The small-`r` expansion for `α < β`, truncated before its smallest term;
/// accepted only if that term is negligible.
fn small_r_asymptotic(a: f64, b: f64, r: f64) -> Option<f64> {
    let mut acc = Acc::new();
    let mut prev_env = f64::INFINITY;
    for k in 1..400usize {
        let kf = k as f64;
        let env = gamma_ratio(b * kf, a * kf) * r.powf(a * kf - 1.0) / PI;
        if env > prev_env {
            break;
        }
        let v = acc.value();
        if k > 1 && env <= 1e-16 * v.abs() {
            return (acc.max_env <= CANCELLATION_LIMIT * v.abs()).then_some(v);
        }
        let term = if k % 2 == 1 { env } else { -env } * sin_pi(b * kf);
        acc.add(term, env);
        prev_env = env;
    }
    None
}

/// `L_α(x)` extended by its limits at `0` and `∞`.
fn levy0(a: f64, x: f64) -> Result<f64> {
    if x == 0.0 || x.is_infinite() {
        Ok(0.0)
    } else {
        levy_density(a, x)
    }
}

fn mainardi0(b: f64, x: f64) -> Result<f64> {
    if x.is_infinite() {
        Ok(0.0)
    } else {
        mainardi(b, x)
    }
}

fn quad_config(q: &QuadConfig) -> QuadConfig {
    q.with_abs_tol(0.0).with_singular_exponent(0.0)
}

fn rep1(a: f64, b: f64, r: f64, q: &QuadConfig) -> Result<f64> {
    let res = try_integrate_semi_infinite(
        |s: f64| {
            let m = mainardi0(b, s)?;
            if m == 0.0 {
                return Ok(0.0);
            }
            let x = r * s.powf(-1.0 / a);
            Ok(x / r * levy0(a, x)? * m)
        },
        1.0,
        &quad_config(q),
    )?;
    Ok(res.value)
}

fn rep2(a: f64, b: f64, r: f64, q: &QuadConfig) -> Result<f64> {
    let res = try_integrate_semi_infinite(
        |s: f64| {
            let l = levy0(b, s)?;
            if l == 0.0 {
                return Ok(0.0);
            }
            let w = s.powf(b / a);
            Ok(w * levy0(a, r * w)? * l)
        },
        1.0,
        &quad_config(q),
    )?;
    Ok(res.value)
}

fn rep3(a: f64, b: f64, r: f64, q: &QuadConfig) -> Result<f64> {
    let ra = r.powf(a);
    let res = try_integrate_semi_infinite(
        |s: f64| {
            let m = mainardi0(a, s)?;
            if m == 0.0 {
                return Ok(0.0);
            }
            Ok(s * m * mainardi0(b, s * ra)?)
        },
        1.0f64.min(1.0 / ra),
        &quad_config(q),
    )?;
    Ok(a * r.powf(a - 1.0) * res.value)
}

fn rep4(a: f64, b: f64, r: f64, q: &QuadConfig) -> Result<f64> {
    let c = a / b;
    let res = try_integrate_semi_infinite(
        |s: f64| {
            let w = s.powf(-b / a);
            let k = k_equal(b, s);
            if k == 0.0 || !k.is_finite() {
                return Ok(0.0);
            }
            Ok(w * levy0(c, r * w)? * k)
        },
        r.powf(c),
        &quad_config(q),
    )?;
    Ok(res.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(a: f64, b: f64) -> OrderPair {
        OrderPair::new(a, b).unwrap()
    }

    #[test]
    fn closed_form_values() {
        let q = QuadConfig::default();
        let v = k_density(op(0.5, 0.5), 1.0, Representation::Auto, &q).unwrap();
        assert!((v - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let v = k_density(op(0.5, 0.5), 4.0, Representation::ClosedForm, &q).unwrap();
        assert!((v - 1.0 / (10.0 * PI)).abs() < 1e-15);
        assert!(matches!(
            k_density(op(0.4, 0.8), 1.0, Representation::ClosedForm, &q),
            Err(Error::RepNotApplicable(..))
        ));
        assert!(matches!(
            k_density(op(0.8, 0.4), 1.0, Representation::HalfComposition, &q),
            Err(Error::RepNotApplicable(..))
        ));
        assert!(matches!(
            k_density(op(1.0, 1.0), 1.0, Representation::Auto, &q),
            Err(Error::DiracCase(_))
        ));
    }

    #[test]
    fn representations_agree_on_equal_orders() {
        let q = QuadConfig::default().with_rel_tol(1e-10);
        for &r in &[0.25, 1.0, 4.0] {
            let exact = k_equal(0.6, r);
            for rep in [Representation::LevyMainardi, Representation::LevyLevy, Representation::MainardiMainardi] {
                let v = k_density(op(0.6, 0.6), r, rep, &q).unwrap();
                assert!((v - exact).abs() < 1e-8 * exact, "{rep} r={r}: {v} vs {exact}");
            }
            let v = k_talbot(op(0.6, 0.6), r, &TalbotConfig::default()).unwrap();
            assert!((v - exact).abs() < 1e-8 * exact, "talbot r={r}: {v} vs {exact}");
        }
    }

    #[test]
    fn series_match_quadrature() {
        let q = QuadConfig::default().with_rel_tol(1e-11);
        for &(a, b) in &[(0.4, 0.8), (0.5, 0.8), (0.3, 0.6), (0.8, 0.4), (0.7, 0.5)] {
            let mut r = 1e-3;
            while r < 300.0 {
                if let Some(s) = k_series(a, b, r) {
                    let i = rep1(a, b, r, &q).unwrap_or_else(|e| panic!("({a},{b}) r={r}: {e}"));
                    assert!((s - i).abs() < 1e-9 * i, "({a},{b}) r={r}: series {s} quadrature {i}");
                }
                r *= 2.3;
            }
        }
    }

    #[test]
    fn auto_is_continuous_across_regimes() {
        let q = QuadConfig::default();
        let mut prev = k_density(op(0.4, 0.8), 1e-3, Representation::Auto, &q).unwrap();
        let mut r = 1e-3;
        while r < 100.0 {
            let rn = r * 1.05;
            let v = k_density(op(0.4, 0.8), rn, Representation::Auto, &q).unwrap();
            assert!(v > 0.0 && v < prev, "K_(0.4,0.8) must decrease: r={rn}");
            prev = v;
            r = rn;
        }
    }
}
