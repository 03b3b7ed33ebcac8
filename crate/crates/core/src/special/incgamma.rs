//! Upper incomplete gamma, exponential integral, and Tricomi's `U`.

use crate::error::{Error, Result};
use crate::gammafn::{gamma, rgamma};
use crate::numerics::{try_integrate_semi_infinite, QuadConfig};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Series / continued-fraction switch for [`exp_integral_e1`].
pub const E1_SWITCH: f64 = 1.0;

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

fn check_positive(z: f64, what: &str) -> Result<()> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::DomainError(format!(
            "{what} requires a finite argument z > 0, got {z}"
        )));
    }
    Ok(())
}

/// `E₁(z) = ∫_z^∞ e^{-u}/u du`, `z > 0`.
pub fn exp_integral_e1(z: f64) -> Result<f64> {
    check_positive(z, "E1")?;
    if z <= E1_SWITCH {
        return Ok(e1_series(z));
    }
    Ok(e1_fraction(z)? * (-z).exp())
}

/// `e^z E₁(z)`, finite for all `z > 0`.
pub fn exp_scaled_e1(z: f64) -> Result<f64> {
    check_positive(z, "E1")?;
    if z <= E1_SWITCH {
        return Ok(z.exp() * e1_series(z));
    }
    e1_fraction(z)
}

fn e1_series(z: f64) -> f64 {
    // E₁(z) = -γ - ln z - Σ_{k≥1} (-z)^k / (k·k!)
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..MAX_ITER {
        term *= -z / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() < EPS * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn e1_fraction(z: f64) -> Result<f64> {
    // modified Lentz on e^z E₁(z) = 1 / (z + 1 - 1²/(z + 3 - 2²/(z + 5 - ...)))
    let mut b = z + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(h);
        }
    }
    Err(Error::NoConvergence(format!("E1 continued fraction at z = {z}")))
}

/// `Γ(a, z) = ∫_z^∞ u^{a-1} e^{-u} du` for real `a` and `z > 0`.
///
/// For `a ≤ 0` the value is reached by the downward recurrence
/// `Γ(a, z) = (Γ(a+1, z) - z^a e^{-z}) / a`, starting from `E₁(z)` when `a`
/// is an integer and from a positive order otherwise.
pub fn gamma_upper(a: f64, z: f64) -> Result<f64> {
    check_positive(z, "upper incomplete gamma")?;
    if !a.is_finite() {
        return Err(Error::DomainError(format!("order a must be finite, got {a}")));
    }
    if a > 0.0 {
        return gamma_upper_positive(a, z);
    }
    let (start, steps) = if a == a.round() {
        (0.0, (-a) as usize)
    } else {
        let n = (-a).ceil() + 1.0;
        (a + n, n as usize)
    };
    let mut g = if start == 0.0 {
        exp_integral_e1(z)?
    } else {
        gamma_upper_positive(start, z)?
    };
    let ln_z = z.ln();
    let mut b = start;
    for _ in 0..steps {
        b -= 1.0;
        g = (g - (b * ln_z - z).exp()) / b;
    }
    Ok(g)
}

fn gamma_upper_positive(a: f64, z: f64) -> Result<f64> {
    let prefactor = (a * z.ln() - z).exp();
    if z < a + 1.0 {
        // Γ(a) - γ(a, z), with γ(a, z) = z^a e^{-z} Σ z^n / (a(a+1)...(a+n))
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..MAX_ITER {
            ap += 1.0;
            del *= z / ap;
            sum += del;
            if del.abs() < sum.abs() * EPS {
                return Ok(gamma(a) - sum * prefactor);
            }
        }
        return Err(Error::NoConvergence(format!("lower incomplete gamma series at a = {a}, z = {z}")));
    }
    let mut b = z + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            return Ok(prefactor * h);
        }
    }
    Err(Error::NoConvergence(format!("incomplete gamma continued fraction at a = {a}, z = {z}")))
}

/// Tricomi's confluent hypergeometric function by its Laplace integral
/// `U(a, c, z) = (1/Γ(a)) ∫₀^∞ e^{-zξ} ξ^{a-1} (1+ξ)^{c-a-1} dξ`.
pub fn tricomi_u(a: f64, c: f64, z: f64, q: &QuadConfig) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::DomainError(format!("Tricomi U needs a > 0, got {a}")));
    }
    if !c.is_finite() {
        return Err(Error::DomainError(format!("Tricomi U needs finite c, got {c}")));
    }
    check_positive(z, "Tricomi U")?;
    q.validate()?;
    let qs = q.with_singular_exponent((a - 1.0).min(0.0));
    let e = c - a - 1.0;
    let r = try_integrate_semi_infinite(
        |xi| Ok((-z * xi + (a - 1.0) * xi.ln() + e * xi.ln_1p()).exp()),
        1.0 / z,
        &qs,
    )?;
    let v = r.value * rgamma(a);
    if !v.is_finite() {
        return Err(Error::QuadratureFailure(format!("Tricomi U({a}, {c}, {z}) is not finite")));
    }
    Ok(v)
}
