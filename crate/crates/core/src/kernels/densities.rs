//! The Lévy extremal density `L_α` and the Mainardi function `M_β`.
//!
//! Both are tied by `M_β(r) = (1/β) r^{-1-1/β} L_β(r^{-1/β})`. The Mainardi
//! power series
//!
//! ```text
//! M_β(r) = Σ_{k≥0} (-r)^k / (k! Γ(1 - β - βk)) = (1/π) Σ_{k≥0} (-r)^k Γ(β(k+1)) sin(πβ(k+1)) / k!
//! ```
//!
//! is used wherever its terms do not cancel badly, i.e. for small `r` (and
//! through the relation above, for large arguments of `L_α`). Elsewhere `L_α`
//! is computed from the integral representation
//!
//! ```text
//! L_α(x) = (α/(1-α)) x^{-1/(1-α)} (1/π) ∫₀^π A(φ) exp(-x^{-α/(1-α)} A(φ)) dφ,
//! A(φ) = (sin αφ / sin φ)^{1/(1-α)} sin((1-α)φ) / sin αφ,
//! ```
//!
//! whose integrand is positive and unimodal.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gammafn::{gamma, ln_gamma, rgamma, sin_pi};
use crate::numerics::{try_integrate_points, try_inverse_laplace_talbot, QuadConfig, TalbotConfig};

/// Largest tolerated ratio between the biggest series term and the sum.
pub(crate) const CANCELLATION_LIMIT: f64 = 1e3;

fn check_order(v: f64, name: &str) -> Result<()> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::InvalidOrder(format!("{name} must lie in (0, 1], got {v}")));
    }
    Ok(())
}

/// `L_α(r)`, the density with Laplace transform `exp(-λ^α)`.
pub fn levy_density(alpha: f64, r: f64) -> Result<f64> {
    check_order(alpha, "alpha")?;
    if alpha == 1.0 {
        return Err(Error::DiracCase("L_1 is the point mass at r = 1".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::DomainError(format!("L_alpha needs finite r > 0, got {r}")));
    }
    if alpha == 0.5 {
        return Ok((-0.25 / r).exp() / (2.0 * PI.sqrt() * r * r.sqrt()));
    }
    let y = r.powf(-alpha);
    if let Some(m) = mainardi_series(alpha, y) {
        return Ok((alpha * y / r * m).max(0.0));
    }
    levy_integral(alpha, r)
}

/// `M_β(r)`, the density with Laplace transform `E_β(-λ)`.
pub fn mainardi(beta: f64, r: f64) -> Result<f64> {
    check_order(beta, "beta")?;
    if beta == 1.0 {
        return Err(Error::DiracCase("M_1 is the point mass at r = 1".into()));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::DomainError(format!("M_beta needs finite r >= 0, got {r}")));
    }
    if beta == 0.5 {
        return Ok((-0.25 * r * r).exp() / PI.sqrt());
    }
    if let Some(m) = mainardi_series(beta, r) {
        return Ok(m.max(0.0));
    }
    let x = r.powf(-1.0 / beta);
    Ok(x / (beta * r) * levy_integral(beta, x)?)
}

/// Sum of the Mainardi series, or `None` when cancellation would cost more
/// than about three digits.
pub(crate) fn mainardi_series(beta: f64, r: f64) -> Option<f64> {
    if r == 0.0 {
        return Some(rgamma(1.0 - beta));
    }
    // index of the largest term
    let k_peak = (r * beta.powf(beta)).powf(1.0 / (1.0 - beta));
    if k_peak > 150.0 {
        return None;
    }
    let ln_r = r.ln();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut max_env = 0.0f64;
    // r^k / k!
    let mut w = 1.0f64;
    for k in 0..1000usize {
        let kf = k as f64;
        if k > 0 {
            w *= r / kf;
        }
        let g_arg = beta * (kf + 1.0);
        let env = if g_arg < 170.0 && w > 1e-290 {
            w * gamma(g_arg) / PI
        } else {
            (kf * ln_r + ln_gamma(g_arg) - ln_gamma(kf + 1.0)).exp() / PI
        };
        max_env = max_env.max(env);
        let mut term = env * sin_pi(beta * (kf + 1.0));
        if k % 2 == 1 {
            term = -term;
        }
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if kf > k_peak + 1.0 {
            let s = (sum + comp).abs();
            if env <= 1e-17 * s || env <= 1e-24 * max_env {
                break;
            }
        }
    }
    let s = sum + comp;
    if max_env > CANCELLATION_LIMIT * s.abs() {
        return None;
    }
    Some(s)
}

/// `ln A(φ)` for the integral representation of `L_α`.
fn ln_a(alpha: f64, e: f64, phi: f64) -> f64 {
    let sa = (alpha * phi).sin().ln();
    e * (sa - phi.sin().ln()) + ((1.0 - alpha) * phi).sin().ln() - sa
}

/// `L_α(x)` from the integral over `(0, π)`; accurate for all `x > 0`, used
/// where the series cancels.
pub(crate) fn levy_integral(alpha: f64, x: f64) -> Result<f64> {
    let e = 1.0 / (1.0 - alpha);
    let ln_x = x.ln();
    let ln_c = -alpha * e * ln_x;
    let ln_pref = (alpha * e).ln() - e * ln_x - PI.ln();
    let ln_a0 = e * alpha * alpha.ln() + ((1.0 - alpha) / alpha).ln();
    // the integrand A e^{-cA} peaks where c·A = 1; A increases on (0, π)
    let peak = if ln_c + ln_a0 >= 0.0 {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0, PI);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if ln_c + ln_a(alpha, e, mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let mut points = vec![0.0, PI];
    if peak > 0.0 && peak < PI {
        points.push(peak);
    }
    let mut w = PI;
    for _ in 0..40 {
        w *= 0.5;
        for p in [peak - w, peak + w] {
            if p > 0.0 && p < PI {
                points.push(p);
            }
        }
    }
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    let q = QuadConfig::default().with_rel_tol(1e-13).with_abs_tol(0.0);
    let r = try_integrate_points(
        |phi| {
            let la = ln_a(alpha, e, phi);
            let ca = (ln_c + la).exp();
            let v = (ln_pref + la - ca).exp();
            Ok(if v.is_finite() { v } else { 0.0 })
        },
        &points,
        &q,
    );
    match r {
        Ok(r) => Ok(r.value.max(0.0)),
        // the integrand has underflowed everywhere
        Err(Error::QuadratureFailure(_)) if ln_pref + ln_a0 - (ln_c + ln_a0).exp() < -700.0 => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `L_α(r)` by Talbot inversion of `exp(-λ^α)`.
pub fn levy_density_talbot(alpha: f64, r: f64, cfg: &TalbotConfig) -> Result<f64> {
    check_order(alpha, "alpha")?;
    if alpha == 1.0 {
        return Err(Error::DiracCase("L_1 is the point mass at r = 1".into()));
    }
    try_inverse_laplace_talbot(|z: Complex64| Ok((-z.powf(alpha)).exp()), r, cfg)
}

/// `M_β(r)` from the Talbot inversion of `exp(-λ^β)` through the relation
/// with `L_β`; `E_β(-λ)` itself grows too fast in the left half-plane to be
/// inverted on a contour.
pub fn mainardi_talbot(beta: f64, r: f64, cfg: &TalbotConfig) -> Result<f64> {
    check_order(beta, "beta")?;
    if beta == 1.0 {
        return Err(Error::DiracCase("M_1 is the point mass at r = 1".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::DomainError(format!("Talbot route needs r > 0, got {r}")));
    }
    let x = r.powf(-1.0 / beta);
    Ok(x / (beta * r) * levy_density_talbot(beta, x, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 150-digit series sums
    const L_REF: &[(f64, f64, f64)] = &[
        (0.25, 1.0, 0.095_833_854_142_651_059),
        (0.7, 1.0, 0.387_395_010_146_592_44),
        (0.7, 0.2, 0.049_842_343_922_514_093),
        (0.3, 0.02, 2.411_065_539_358_907_2),
        (0.6, 0.1, 0.052_575_556_664_373_525),
        (0.8, 0.3, 0.000_769_172_183_726_965_38),
        (0.4, 3.0, 0.043_580_162_768_645_699),
        (0.9, 0.5, 8.203_967_675_351_146_3e-8),
    ];
    const M_REF: &[(f64, f64, f64)] = &[
        (0.6, 1.0, 0.483_235_433_348_061_84),
        (0.25, 1.0, 0.383_335_416_570_683_54),
        (0.8, 3.0, 7.519_718_544_541_236_8e-9),
        (0.6, 5.0, 2.550_452_847_652_385_5e-5),
        (0.3, 8.0, 0.000_106_084_800_263_150_99),
        (0.8, 1.5, 0.655_428_354_175_105_26),
    ];

    #[test]
    fn levy_reference_values() {
        for &(a, x, exact) in L_REF {
            let v = levy_density(a, x).unwrap();
            assert!((v - exact).abs() < 1e-11 * exact, "L_{a}({x}) = {v}, want {exact}");
            let w = levy_integral(a, x).unwrap();
            assert!((w - exact).abs() < 1e-11 * exact, "integral L_{a}({x}) = {w}, want {exact}");
        }
    }

    #[test]
    fn mainardi_reference_values() {
        for &(b, r, exact) in M_REF {
            let v = mainardi(b, r).unwrap();
            assert!((v - exact).abs() < 1e-11 * exact, "M_{b}({r}) = {v}, want {exact}");
        }
    }

    #[test]
    fn half_order_closed_forms() {
        let v = levy_density(0.5, 1.0).unwrap();
        assert!((v - 0.219_695_644_733_861_3).abs() < 1e-15);
        assert!((mainardi(0.5, 0.0).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert!((mainardi(0.5, 2.0).unwrap() - (-1.0f64).exp() / PI.sqrt()).abs() < 1e-15);
        assert!(levy_density(0.5, 1e-3).unwrap() < 1e-100);
        // the general routes reproduce the closed forms
        for &x in &[0.05, 0.3, 1.0, 4.0, 30.0] {
            let exact = levy_density(0.5, x).unwrap();
            let w = levy_integral(0.5, x).unwrap();
            assert!((w - exact).abs() < 1e-11 * exact, "x={x}");
            let y = x.powf(-0.5);
            if let Some(m) = mainardi_series(0.5, y) {
                assert!((0.5 * y / x * m - exact).abs() < 1e-11 * exact, "x={x}");
            }
        }
    }

    #[test]
    fn series_and_integral_meet() {
        for &a in &[0.2, 0.35, 0.6, 0.75, 0.9] {
            let mut r = 0.05;
            while r < 20.0 {
                if let Some(m) = mainardi_series(a, r) {
                    let x = r.powf(-1.0 / a);
                    let w = x / (a * r) * levy_integral(a, x).unwrap();
                    assert!((m - w).abs() < 1e-10 * m.abs().max(1e-300), "a={a} r={r}: {m} vs {w}");
                }
                r *= 1.3;
            }
        }
    }

    #[test]
    fn talbot_cross_check() {
        let cfg = TalbotConfig::default();
        for &(a, x, exact) in &L_REF[..4] {
            let v = levy_density_talbot(a, x, &cfg).unwrap();
            assert!((v - exact).abs() < 1e-8 * exact, "L_{a}({x}) talbot {v}");
        }
        let v = mainardi_talbot(0.6, 1.0, &cfg).unwrap();
        assert!((v - M_REF[0].2).abs() < 1e-8);
    }

    #[test]
    fn dirac_and_domain() {
        assert!(matches!(levy_density(1.0, 1.0), Err(Error::DiracCase(_))));
        assert!(matches!(mainardi(1.0, 1.0), Err(Error::DiracCase(_))));
        assert!(matches!(levy_density(0.5, 0.0), Err(Error::DomainError(_))));
        assert!(matches!(mainardi(0.5, -1.0), Err(Error::DomainError(_))));
        assert!(matches!(levy_density(1.5, 1.0), Err(Error::InvalidOrder(_))));
    }

    #[test]
    fn tiny_argument_underflows_to_zero() {
        assert_eq!(levy_density(0.7, 1e-4).unwrap(), 0.0);
        assert!(mainardi(0.6, 200.0).unwrap() >= 0.0);
    }
}
