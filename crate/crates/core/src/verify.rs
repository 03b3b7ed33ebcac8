//! Named invariant checks, each comparing an observed value with an
//! expected one under a stated tolerance.

use std::f64::consts::PI;
use std::fmt;

use crate::error::Result;
use crate::green::{
    green_1d_half_asymptotics, green_1d_half_bracket, green_at_origin, green_function, poisson_kernel, GreenMethod,
    GreenQuery,
};
use crate::kernels::{
    compose_kernels, f_kernel, k_density, k_talbot, levy_density_talbot, mainardi_talbot, phi_kernel, psi_kernel,
    KernelPoint, OrderPair, Representation,
};
use crate::numerics::{try_forward_laplace, try_integrate_semi_infinite, QuadConfig, TalbotConfig};
use crate::solvers::{solve_advection, solve_spectral, AdvectionProblem, SpectralProblem};
use crate::special::{
    exp_integral_e1, gamma_upper, mittag_leffler_neg, tricomi_u, MLArg, SeriesConfig,
};
use crate::Error;

/// Outcome of one check. With `relative` set the tolerance applies to
/// `|observed - expected| / |expected|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: String,
    pub observed: f64,
    pub expected: f64,
    pub tol: f64,
    pub relative: bool,
}

impl Check {
    fn rel(id: impl Into<String>, observed: Result<f64>, expected: f64, tol: f64) -> Self {
        Self {
            id: id.into(),
            observed: observed.unwrap_or(f64::NAN),
            expected,
            tol,
            relative: true,
        }
    }

    fn abs(id: impl Into<String>, observed: Result<f64>, expected: f64, tol: f64) -> Self {
        Self {
            relative: false,
            ..Self::rel(id, observed, expected, tol)
        }
    }

    /// Boolean property, reported as `1` when it holds.
    fn holds(id: impl Into<String>, ok: bool) -> Self {
        Self::abs(id, Ok(if ok { 1.0 } else { 0.0 }), 1.0, 0.0)
    }

    pub fn error(&self) -> f64 {
        let d = (self.observed - self.expected).abs();
        if self.relative {
            d / self.expected.abs()
        } else {
            d
        }
    }

    pub fn passed(&self) -> bool {
        self.error() <= self.tol
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} observed={:.12e} expected={:.12e} tol={:.1e}{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.observed,
            self.expected,
            self.tol,
            if self.relative { " (relative)" } else { "" }
        )
    }
}

fn op(a: f64, b: f64) -> OrderPair {
    OrderPair { alpha: a, beta: b }
}

fn kp(t: f64, tau: f64) -> KernelPoint {
    KernelPoint { t, tau }
}

fn quad() -> QuadConfig {
    QuadConfig::default().with_rel_tol(1e-10)
}

/// Closed forms of the half-order kernels against composition and Talbot.
pub fn kernel_closed_forms() -> Vec<Check> {
    let q = quad();
    let tc = TalbotConfig::default();
    let half = op(0.5, 0.5);
    let fwd = 1.0 / (2.0 * PI);
    let rev = 1.0 / PI;
    let phi = |t, s| phi_kernel(0.5, kp(t, s));
    let f = |t, s| f_kernel(0.5, kp(t, s));
    let phi_t = |t: f64, s: f64| Ok(t.powf(-0.5) * mainardi_talbot(0.5, s * t.powf(-0.5), &tc)?);
    let f_t = |t: f64, s: f64| Ok(t.powf(-2.0) * levy_density_talbot(0.5, s * t.powf(-2.0), &tc)?);
    vec![
        Check::rel("psi.half.closed", psi_kernel(half, kp(1.0, 1.0), &q), fwd, 1e-14),
        Check::rel("psi.half.compose", compose_kernels(phi, f, 1.0, 1.0, &q), fwd, 1e-5),
        Check::rel("psi.half.talbot", k_talbot(half, 1.0, &tc), fwd, 1e-5),
        Check::rel("psi.reversed.compose", compose_kernels(f, phi, 1.0, 1.0, &q), rev, 1e-5),
        Check::rel("psi.reversed.talbot", compose_kernels(f_t, phi_t, 1.0, 1.0, &q), rev, 1e-5),
        Check::rel("k.half.closed", k_density(half, 1.0, Representation::ClosedForm, &q), fwd, 1e-14),
        Check::rel("k.half.talbot", k_density(half, 1.0, Representation::Talbot, &q), fwd, 1e-5),
    ]
}

fn psi_integral<W>(o: OrderPair, t: f64, weight: W, q: &QuadConfig) -> Result<f64>
where
    W: Fn(f64) -> f64,
{
    let s = if o.alpha < 1.0 && o.beta < 1.0 { o.alpha - 1.0 } else { 0.0 };
    let r = try_integrate_semi_infinite(
        |tau: f64| {
            if tau == 0.0 {
                return Ok(0.0);
            }
            Ok(psi_kernel(o, kp(t, tau), q)? * weight(tau))
        },
        t.powf(o.beta / o.alpha),
        &q.with_abs_tol(0.0).with_singular_exponent(s),
    )?;
    Ok(r.value)
}

const PDF_PAIRS: [(f64, f64); 5] = [(0.3, 0.3), (0.5, 0.5), (0.5, 0.8), (0.7, 1.0), (1.0, 0.5)];

/// `ψ_{α,β}(t, ·) ≥ 0` with unit mass.
pub fn kernel_pdf() -> Vec<Check> {
    let q = quad();
    let mut out = Vec::new();
    for (a, b) in PDF_PAIRS {
        for t in [0.5, 1.0, 2.0] {
            let o = op(a, b);
            let id = format!("psi.pdf.mass[{a},{b},t={t}]");
            out.push(Check::abs(id, psi_integral(o, t, |_| 1.0, &q), 1.0, 1e-6));
            let nonneg = (0..40).all(|k| {
                let tau = 1e-4 * 1.5f64.powi(k);
                psi_kernel(o, kp(t, tau), &q).map_or(false, |v| v >= 0.0)
            });
            out.push(Check::holds(format!("psi.pdf.nonneg[{a},{b},t={t}]"), nonneg));
        }
    }
    out
}

/// `∫ ψ_{α,β}(t,τ) e^{-λτ} dτ = E_β(-λ^α t^β)`.
pub fn kernel_subscalar() -> Vec<Check> {
    let q = quad();
    let cfg = SeriesConfig::default();
    let mut out = Vec::new();
    for (a, b) in [(0.5, 0.5), (0.5, 0.8), (0.7, 1.0), (1.0, 0.5)] {
        for lambda in [0.5, 1.0, 2.0] {
            for t in [0.5, 1.0] {
                let o = op(a, b);
                let lhs = psi_integral(o, t, |tau| (-lambda * tau).exp(), &q);
                let rhs = MLArg::new(b, 1.0, lambda.powf(a) * t.powf(b))
                    .and_then(|m| mittag_leffler_neg(m, &cfg))
                    .unwrap_or(f64::NAN);
                out.push(Check::abs(format!("psi.subscalar[{a},{b},lambda={lambda},t={t}]"), lhs, rhs, 1e-6));
            }
        }
    }
    out
}

/// Laplace transform in `t`: `s^{β-1} τ^{α-1} E_{α,α}(-s^β τ^α)`.
pub fn kernel_laplace_in_t() -> Vec<Check> {
    let q = quad();
    let cfg = SeriesConfig::default();
    let mut out = Vec::new();
    for (a, b) in [(0.5, 0.5), (0.5, 0.8)] {
        for s in [1.0, 2.0] {
            let tau = 0.7;
            let o = op(a, b);
            let lhs = try_forward_laplace(|t| psi_kernel(o, kp(t, tau), &q), s, &q.with_abs_tol(0.0));
            let rhs = s.powf(b - 1.0)
                * tau.powf(a - 1.0)
                * MLArg::new(a, a, s.powf(b) * tau.powf(a))
                    .and_then(|m| mittag_leffler_neg(m, &cfg))
                    .unwrap_or(f64::NAN);
            out.push(Check::rel(format!("psi.laplace_t[{a},{b},s={s}]"), lhs, rhs, 1e-5));
        }
    }
    out
}

/// The four integral representations of `K_{0.4,0.8}` against Talbot.
pub fn kernel_representations() -> Vec<Check> {
    let q = quad();
    let o = op(0.4, 0.8);
    let reps = [
        Representation::LevyMainardi,
        Representation::LevyLevy,
        Representation::MainardiMainardi,
        Representation::HalfComposition,
    ];
    let mut out = Vec::new();
    for r in [0.25, 1.0, 4.0] {
        let reference = k_talbot(o, r, &TalbotConfig::default()).unwrap_or(f64::NAN);
        for rep in reps {
            out.push(Check::rel(format!("k.{rep}[0.4,0.8,r={r}]"), k_density(o, r, rep, &q), reference, 1e-5));
        }
    }
    out
}

/// `f_{1/2} ∘ f_{1/2} = f_{1/4}` and `φ_{1/2} ∘ φ_{1/2} = φ_{1/4}` at `t = τ = 1`.
pub fn kernel_semigroup() -> Vec<Check> {
    let q = quad();
    let tc = TalbotConfig::default();
    let f = |t, s| f_kernel(0.5, kp(t, s));
    let phi = |t, s| phi_kernel(0.5, kp(t, s));
    vec![
        Check::rel(
            "f.semigroup[1/2,1/2]",
            compose_kernels(f, f, 1.0, 1.0, &q),
            levy_density_talbot(0.25, 1.0, &tc).unwrap_or(f64::NAN),
            1e-5,
        ),
        Check::rel(
            "phi.semigroup[1/2,1/2]",
            compose_kernels(phi, phi, 1.0, 1.0, &q),
            mainardi_talbot(0.25, 1.0, &tc).unwrap_or(f64::NAN),
            1e-5,
        ),
    ]
}

/// `K_{α,β}(r) r^{1-α} Γ(α) Γ(1-β) → 1` as `r → 0`.
pub fn kernel_small_r() -> Vec<Check> {
    let q = quad();
    let mut out = Vec::new();
    // the first correction is O(r^α); for α = 0.4 it is still 6% at r = 1e-4
    for (a, b, rs) in [(0.5, 0.5, [1e-4, 1e-6]), (0.4, 0.8, [1e-6, 1e-8])] {
        for r in rs {
            let v = k_density(op(a, b), r, Representation::Auto, &q)
                .map(|k| k * r.powf(1.0 - a) * crate::gammafn::gamma(a) * crate::gammafn::gamma(1.0 - b));
            out.push(Check::abs(format!("k.small_r[{a},{b},r={r}]"), v, 1.0, 0.02));
        }
    }
    out
}

/// Closed-form Green functions against subordination, and the two
/// half-order forms in two dimensions against each other.
pub fn green_closed_forms() -> Vec<Check> {
    let q = quad();
    let half = op(0.5, 0.5);
    let cases = [
        (2, GreenMethod::ClosedForm2D),
        (1, GreenMethod::ClosedFormHalfHalf),
        (2, GreenMethod::ClosedFormHalfHalf),
        (3, GreenMethod::ClosedFormHalfHalf),
        (1, GreenMethod::ClosedForm1DHalf),
        (3, GreenMethod::ClosedForm3DHalf),
    ];
    let mut out = Vec::new();
    for (n, m) in cases {
        for z in [0.25f64, 1.0, 4.0] {
            let qy = GreenQuery { n, rho: (4.0 * z).sqrt(), t: 1.0 };
            let sub = green_function(half, qy, GreenMethod::Subordination, &q).unwrap_or(f64::NAN);
            out.push(Check::rel(format!("green.{m}[n={n},z={z}]"), green_function(half, qy, m, &q), sub, 1e-5));
        }
    }
    for z in [0.25f64, 1.0, 4.0] {
        let qy = GreenQuery { n: 2, rho: (4.0 * z).sqrt(), t: 1.0 };
        let ml = green_function(half, qy, GreenMethod::ClosedForm2D, &q).unwrap_or(f64::NAN);
        out.push(Check::rel(
            format!("green.half-half-vs-2d[z={z}]"),
            green_function(half, qy, GreenMethod::ClosedFormHalfHalf, &q),
            ml,
            1e-8,
        ));
    }
    out
}

/// Limiting forms and bracket of `G_{1/2,1/2,1}`.
pub fn green_asymptotics() -> Vec<Check> {
    let q = quad();
    let half = op(0.5, 0.5);
    let g = |x: f64| green_function(half, GreenQuery { n: 1, rho: x, t: 1.0 }, GreenMethod::ClosedForm1DHalf, &q);
    let x_large = 20.0;
    let x_small = 2e-3;
    let mut out = vec![
        Check::abs(
            "green.1d-half.large",
            g(x_large).and_then(|v| Ok(v / green_1d_half_asymptotics(x_large, 1.0)?.1)),
            1.0,
            0.02,
        ),
        Check::abs(
            "green.1d-half.small",
            g(x_small).and_then(|v| Ok(v / green_1d_half_asymptotics(x_small, 1.0)?.0)),
            1.0,
            0.05,
        ),
    ];
    let inside = (0..10).all(|k| {
        let x = 0.05 * 2f64.powi(k);
        match (g(x), green_1d_half_bracket(x, 1.0)) {
            (Ok(v), Ok((lo, hi))) => lo < v && v < hi,
            _ => false,
        }
    });
    out.push(Check::holds("green.1d-half.bracket", inside));
    out
}

/// Divergence at `ρ = 0` except for `n = 1`, `α > 1/2`.
pub fn green_origin() -> Vec<Check> {
    let q = QuadConfig::default();
    let mut out = Vec::new();
    for (a, n) in [(0.6, 2), (0.4, 1)] {
        let r = green_at_origin(op(a, a), n, 1.0, &q);
        out.push(Check::holds(format!("green.origin.diverges[{a},n={n}]"), matches!(r, Err(Error::Divergent(_)))));
    }
    let r = green_at_origin(op(0.8, 0.8), 1, 1.0, &q);
    out.push(Check::holds("green.origin.finite[0.8,n=1]", r.map_or(false, |v| v.is_finite() && v > 0.0)));
    out
}

/// The neutral closed form against Poisson-kernel subordination.
pub fn green_neutral() -> Vec<Check> {
    let q = quad();
    let o = op(0.4, 0.8);
    let mut out = Vec::new();
    for (x, t) in [(0.5, 0.5), (0.5, 1.0), (1.0, 1.0), (1.0, 2.0), (2.0, 0.5), (2.0, 2.0)] {
        let qy = GreenQuery { n: 1, rho: x, t };
        let base = green_function(o, qy, GreenMethod::PoissonBase, &q).unwrap_or(f64::NAN);
        out.push(Check::rel(
            format!("green.neutral[0.8,x={x},t={t}]"),
            green_function(o, qy, GreenMethod::NeutralDiffusion, &q),
            base,
            1e-4,
        ));
    }
    let qy = GreenQuery { n: 1, rho: 1.0, t: 1.0 };
    out.push(Check::rel(
        "green.neutral.poisson-limit",
        green_function(op(0.5, 1.0), qy, GreenMethod::NeutralDiffusion, &q),
        poisson_kernel(qy).unwrap_or(f64::NAN),
        1e-15,
    ));
    out
}

/// Heaviside shift and the half-order arctangent profile.
pub fn solver_advection() -> Vec<Check> {
    let q = quad();
    let grid: Vec<f64> = (1..=100).map(|k| 0.03 * k as f64).collect();
    let shift = AdvectionProblem {
        initial_profile: |x: f64| (-x).exp(),
        orders: op(1.0, 1.0),
        eval_grid: grid.clone(),
    };
    let exact = solve_advection(&shift, 1.0, &q).map(|u| {
        u.iter()
            .zip(&grid)
            .all(|(&u, &x)| u == if x >= 1.0 { (-(x - 1.0)).exp() } else { 0.0 })
    });
    let mut out = vec![Check::holds("advection.shift", exact.unwrap_or(false))];
    let grid = vec![0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0];
    let half = AdvectionProblem {
        initial_profile: |_: f64| 1.0,
        orders: op(0.5, 0.5),
        eval_grid: grid.clone(),
    };
    match solve_advection(&half, 1.0, &q) {
        Ok(u) => {
            for (u, x) in u.into_iter().zip(grid) {
                out.push(Check::abs(format!("advection.half[x={x}]"), Ok(u), 2.0 / PI * x.sqrt().atan(), 1e-6));
            }
        }
        Err(e) => out.push(Check::abs("advection.half", Err(e), 0.0, 1e-6)),
    }
    out
}

/// Classical decay and monotone modal amplitudes.
pub fn solver_spectral() -> Vec<Check> {
    let lambdas: Vec<f64> = (1..=8).map(|j| (j * j) as f64).collect();
    let p = SpectralProblem {
        eigenvalues: lambdas.clone(),
        coefficients: vec![1.0; lambdas.len()],
    };
    let mut out = Vec::new();
    let worst = solve_spectral(&p, op(1.0, 1.0), 0.3).map(|a| {
        a.iter()
            .zip(&lambdas)
            .map(|(a, l)| (a - (-l * 0.3f64).exp()).abs())
            .fold(0.0, f64::max)
    });
    out.push(Check::abs("spectral.classical", worst, 0.0, 1e-16));
    let times: Vec<f64> = (0..12).map(|k| 0.01 * 2f64.powi(k)).collect();
    for (a, b) in [(0.5, 0.5), (0.3, 0.7), (0.5, 1.0), (1.0, 0.6), (0.8, 0.9)] {
        let amps: Result<Vec<Vec<f64>>> = times.iter().map(|&t| solve_spectral(&p, op(a, b), t)).collect();
        let ok = amps.map_or(false, |amps| {
            (0..lambdas.len()).all(|j| {
                amps.iter().all(|row| row[j] > 0.0 && row[j] <= 1.0) && amps.windows(2).all(|w| w[1][j] < w[0][j])
            })
        });
        out.push(Check::holds(format!("spectral.monotone[{a},{b}]"), ok));
    }
    out
}

/// Identities among `U`, `Γ(a, z)`, `E₁` and the Mittag-Leffler functions.
pub fn special_identities() -> Vec<Check> {
    let q = QuadConfig::default().with_rel_tol(1e-12);
    let cfg = SeriesConfig::default();
    let mut out = Vec::new();
    for a in [0.5, 1.0, 1.5] {
        for z in [0.25, 1.0, 4.0] {
            let u = tricomi_u(a, a, z, &q);
            let g = gamma_upper(1.0 - a, z).map(|g| z.exp() * g).unwrap_or(f64::NAN);
            out.push(Check::rel(format!("tricomi.relation[a={a},z={z}]"), u, g, 1e-8));
        }
    }
    for a in [-2.5, -1.0, -0.5, 0.0, 0.5, 1.7] {
        for z in [0.25, 1.0, 4.0] {
            let res = gamma_upper(a + 1.0, z).and_then(|g1| {
                let ga = gamma_upper(a, z)?;
                Ok((g1 - z.powf(a) * (-z).exp() - a * ga).abs() / g1)
            });
            out.push(Check::abs(format!("gamma_upper.recurrence[a={a},z={z}]"), res, 0.0, 1e-10));
        }
    }
    let mut bracket = true;
    let mut z = 1e-4;
    while z <= 100.0 {
        bracket &= exp_integral_e1(z).map_or(false, |e| {
            0.5 * (-z).exp() * (2.0 / z).ln_1p() < e && e < (-z).exp() * (1.0 / z).ln_1p()
        });
        z *= 1.25;
    }
    out.push(Check::holds("e1.bracket", bracket));
    for (a, b, lambda) in [(0.5, 0.5, 1.0), (0.5, 1.0, 2.0), (0.7, 0.9, 0.5)] {
        for s in [0.5, 1.0, 2.0] {
            let lhs = try_forward_laplace(
                |t| Ok(t.powf(b - 1.0) * mittag_leffler_neg(MLArg::new(a, b, lambda * t.powf(a))?, &cfg)?),
                s,
                &q.with_rel_tol(1e-10).with_abs_tol(0.0).with_singular_exponent(b - 1.0),
            );
            let rhs = s.powf(a - b) / (s.powf(a) + lambda);
            out.push(Check::rel(format!("ml.laplace_pair[{a},{b},lambda={lambda},s={s}]"), lhs, rhs, 1e-6));
        }
    }
    for t in [0.25f64, 1.0, 4.0] {
        let e1 = MLArg::new(0.5, 1.0, t.sqrt()).and_then(|m| mittag_leffler_neg(m, &cfg)).unwrap_or(f64::NAN);
        out.push(Check::rel(
            format!("ml.tricomi[1/2,1/2,t={t}]"),
            tricomi_u(0.5, 0.5, t, &q).map(|u| u / PI.sqrt()),
            e1,
            1e-8,
        ));
        let e2 = MLArg::new(0.5, 0.5, t.sqrt()).and_then(|m| mittag_leffler_neg(m, &cfg)).unwrap_or(f64::NAN);
        out.push(Check::rel(
            format!("ml.tricomi[3/2,3/2,t={t}]"),
            tricomi_u(1.5, 1.5, t, &q).map(|u| u * t.sqrt() / (2.0 * PI.sqrt())),
            e2,
            1e-8,
        ));
    }
    out
}

/// Every check group, by name.
pub const GROUPS: [(&str, fn() -> Vec<Check>); 15] = [
    ("kernel-closed-forms", kernel_closed_forms),
    ("kernel-pdf", kernel_pdf),
    ("kernel-subscalar", kernel_subscalar),
    ("kernel-laplace-t", kernel_laplace_in_t),
    ("kernel-representations", kernel_representations),
    ("kernel-semigroup", kernel_semigroup),
    ("kernel-small-r", kernel_small_r),
    ("green-closed-forms", green_closed_forms),
    ("green-asymptotics", green_asymptotics),
    ("green-origin", green_origin),
    ("green-neutral", green_neutral),
    ("advection", solver_advection),
    ("spectral", solver_spectral),
    ("special-identities", special_identities),
    ("determinism", determinism),
];

/// Repeated and concurrent evaluation give bit-identical values.
pub fn determinism() -> Vec<Check> {
    let q = quad();
    let o = op(0.4, 0.8);
    let taus: Vec<f64> = (0..16).map(|k| 0.05 * 1.6f64.powi(k)).collect();
    let eval = |tau: f64| psi_kernel(o, kp(1.0, tau), &q).map(f64::to_bits).ok();
    let serial: Vec<_> = taus.iter().map(|&t| eval(t)).collect();
    let parallel: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = taus.iter().map(|&t| s.spawn(move || eval(t))).collect();
        handles.into_iter().map(|h| h.join().ok().flatten()).collect()
    });
    vec![Check::holds(
        "determinism.psi",
        serial.iter().all(Option::is_some) && serial == parallel,
    )]
}

/// All checks in group order.
pub fn all_checks() -> Vec<Check> {
    GROUPS.iter().flat_map(|(_, g)| g()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_arithmetic() {
        let c = Check::rel("x", Ok(1.0 + 1e-7), 1.0, 1e-6);
        assert!(c.passed());
        let c = Check::abs("x", Err(Error::NoConvergence("".into())), 1.0, 1e-6);
        assert!(!c.passed());
        assert!(c.to_string().starts_with("FAIL x observed=NaN"));
        assert!(Check::holds("y", true).passed());
        assert!(!Check::holds("y", false).passed());
    }

    #[test]
    fn cheap_groups_pass() {
        for c in kernel_closed_forms().into_iter().chain(solver_spectral()).chain(green_asymptotics()) {
            assert!(c.passed(), "{c}");
        }
    }
}
