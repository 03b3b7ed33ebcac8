//! Adaptive Gauss-Kronrod (7/15) quadrature.
//!
//! Finite intervals are refined by global bisection of the panel with the
//! largest error estimate. Semi-infinite intervals `(0, ∞)` are covered by a
//! two-sided sequence of dyadic panels `[c·2^k, c·2^(k+1)]` around a scale
//! `c`; each panel is integrated adaptively and the march in either direction
//! stops once contributions are negligible or decay geometrically, in which
//! case the geometric remainder is added. A declared algebraic endpoint
//! factor `x^s` at the origin is removed first by `x = u^(1/(1+s))`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: real or complex.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn norm(self) -> f64;
    fn is_finite(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Tolerances and limits for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of any panel.
    pub max_depth: u32,
    /// Exponent `s > -1` of an `x^s` factor at the lower limit.
    pub singular_exponent: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_depth: 40,
            singular_exponent: 0.0,
        }
    }
}

impl QuadConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_singular_exponent(mut self, s: f64) -> Self {
        self.singular_exponent = s;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let tol_ok = (self.rel_tol > 0.0 || self.abs_tol > 0.0)
            && self.rel_tol >= 0.0
            && self.abs_tol >= 0.0;
        if !tol_ok {
            return Err(Error::DomainError(format!(
                "quadrature tolerances must be non-negative and not both zero (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_depth < 1 {
            return Err(Error::DomainError("max_depth must be at least 1".into()));
        }
        if !(self.singular_exponent > -1.0) || !self.singular_exponent.is_finite() {
            return Err(Error::DomainError(format!(
                "singular_exponent must exceed -1, got {}",
                self.singular_exponent
            )));
        }
        Ok(())
    }
}

/// Value, error estimate, and integrand evaluation count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T = f64> {
    pub value: T,
    pub err_estimate: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_EVALUATIONS: usize = 4_000_000;
const MAX_DYADIC_STEPS: i32 = 1000;
/// Panels beyond this many octaves from the scale may be declared divergent.
const DIVERGENCE_OCTAVES: i32 = 60;

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    depth: u32,
}

fn check<T: QuadValue>(v: T, x: f64) -> Result<T> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::QuadratureFailure(format!(
            "non-finite integrand value at x = {x:e}"
        )))
    }
}

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate.
fn gk15<T, F>(f: &mut F, a: f64, b: f64) -> Result<(T, f64)>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T> + ?Sized,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = check(f(c)?, c)?;
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];
    let mut f1s = [T::zero(); 7];
    let mut f2s = [T::zero(); 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = check(f(c - dx)?, c - dx)?;
        let f2 = check(f(c + dx)?, c + dx)?;
        f1s[j] = f1;
        f2s[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((f1s[j] - mean).norm() + (f2s[j] - mean).norm());
    }
    let hh = h.abs();
    let value = resk * h;
    resabs *= hh;
    resasc *= hh;
    let mut err = ((resk - resg) * h).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((value, err))
}

/// Global adaptive bisection starting from the partition `points`.
fn adaptive<T, F>(
    f: &mut F,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T> + ?Sized,
{
    let mut panels = Vec::with_capacity(points.len() + 16);
    let mut evaluations = 0usize;
    for w in points.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (value, err) = gk15(f, w[0], w[1])?;
        evaluations += 15;
        panels.push(Panel {
            a: w[0],
            b: w[1],
            value,
            err,
            depth: 0,
        });
    }
    loop {
        let mut total = T::zero();
        let mut err_total = 0.0;
        let mut worst = 0usize;
        for (i, p) in panels.iter().enumerate() {
            total = total + p.value;
            err_total += p.err;
            if p.err > panels[worst].err {
                worst = i;
            }
        }
        let tol = abs_tol.max(rel_tol * total.norm());
        if err_total <= tol || panels.is_empty() {
            return Ok(QuadResult {
                value: total,
                err_estimate: err_total,
                evaluations,
            });
        }
        let p = &panels[worst];
        if p.depth >= max_depth {
            return Err(Error::QuadratureFailure(format!(
                "bisection depth {max_depth} exhausted on [{:e}, {:e}] (error {err_total:.3e} > tolerance {tol:.3e})",
                p.a, p.b
            )));
        }
        if evaluations > MAX_EVALUATIONS {
            return Err(Error::QuadratureFailure(format!(
                "evaluation budget exhausted (error {err_total:.3e} > tolerance {tol:.3e})"
            )));
        }
        let (a, b, depth) = (p.a, p.b, p.depth);
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            return Err(Error::QuadratureFailure(format!(
                "panel [{a:e}, {b:e}] cannot be bisected further"
            )));
        }
        let (v1, e1) = gk15(f, a, m)?;
        let (v2, e2) = gk15(f, m, b)?;
        evaluations += 30;
        panels[worst] = Panel {
            a,
            b: m,
            value: v1,
            err: e1,
            depth: depth + 1,
        };
        panels.push(Panel {
            a: m,
            b,
            value: v2,
            err: e2,
            depth: depth + 1,
        });
    }
}

/// `∫_a^b f(x) dx`, honouring `q.singular_exponent` at `a`.
pub fn try_integrate_finite<T, F>(mut f: F, a: f64, b: f64, q: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    q.validate()?;
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::DomainError(format!(
            "finite integration needs a ≤ b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            err_estimate: 0.0,
            evaluations: 0,
        });
    }
    let s = q.singular_exponent;
    let len = b - a;
    if s == 0.0 {
        return adaptive(&mut f, &[a, b], q.rel_tol, q.abs_tol, q.max_depth);
    }
    // x = a + len·u^p, dx = len·p·u^(p-1) du
    let p = 1.0 / (1.0 + s);
    let mut g = |u: f64| -> Result<T> {
        let x = a + len * u.powf(p);
        Ok(f(x)? * (len * p * u.powf(p - 1.0)))
    };
    adaptive(&mut g, &[0.0, 1.0], q.rel_tol, q.abs_tol, q.max_depth)
}

/// `∫_a^b f(x) dx` over the initial partition `points` (ascending).
pub fn try_integrate_points<T, F>(mut f: F, points: &[f64], q: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    q.validate()?;
    if points.len() < 2 || points.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::DomainError(
            "partition must contain at least two ascending points".into(),
        ));
    }
    adaptive(&mut f, points, q.rel_tol, q.abs_tol, q.max_depth)
}

pub fn integrate_finite<F>(f: F, a: f64, b: f64, q: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_finite(|x| Ok(f(x)), a, b, q)
}

/// `∫₀^∞ f(x) dx` with dyadic panels around `x = 1`.
pub fn integrate_semi_infinite<F>(f: F, q: &QuadConfig) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_semi_infinite(|x| Ok(f(x)), 1.0, q)
}

/// Progress of the dyadic march in one direction.
struct March {
    prev: Option<f64>,
    ratios: Vec<f64>,
    negligible_run: u32,
}

enum Step<T> {
    Continue,
    Done { remainder: T, remainder_err: f64 },
}

impl March {
    fn new() -> Self {
        Self {
            prev: None,
            ratios: Vec::new(),
            negligible_run: 0,
        }
    }

    fn observe<T: QuadValue>(
        &mut self,
        octave: i32,
        contribution: T,
        total: T,
        rel_tol: f64,
        abs_tol: f64,
    ) -> Result<Step<T>> {
        let mag = contribution.norm();
        let total_mag = total.norm();
        let tol = abs_tol.max(rel_tol * total_mag);
        if let Some(p) = self.prev {
            let ratio = if p > 0.0 {
                mag / p
            } else if mag > 0.0 {
                f64::INFINITY
            } else {
                0.0
            };
            self.ratios.push(ratio);
        }
        self.prev = Some(mag);

        if octave.abs() >= DIVERGENCE_OCTAVES && self.ratios.len() >= 5 {
            let tail = &self.ratios[self.ratios.len() - 5..];
            if mag > 0.0 && tail.iter().all(|&r| r >= 0.999) {
                return Err(Error::Divergent(format!(
                    "dyadic contributions stopped decaying {} octaves from the scale (last ratio {:.4})",
                    octave.abs(),
                    tail[4]
                )));
            }
        }
        if total_mag == 0.0 {
            self.negligible_run = 0;
            if octave.abs() >= DIVERGENCE_OCTAVES {
                // identically zero as far as it can be resolved
                return Ok(Step::Done {
                    remainder: T::zero(),
                    remainder_err: 0.0,
                });
            }
            return Ok(Step::Continue);
        }
        let decreasing = self.ratios.last().map_or(false, |&r| r < 1.0);
        if mag <= 0.1 * tol && (decreasing || mag == 0.0) {
            self.negligible_run += 1;
        } else {
            self.negligible_run = 0;
        }
        if self.negligible_run >= 2 {
            return Ok(Step::Done {
                remainder: T::zero(),
                remainder_err: mag,
            });
        }
        let n = self.ratios.len();
        if n >= 3 {
            let (r2, r1, r0) = (self.ratios[n - 3], self.ratios[n - 2], self.ratios[n - 1]);
            let stable = [r2, r1, r0].iter().all(|&r| r > 0.0 && r < 0.97)
                && (r0 - r1).abs() <= 0.02 * (1.0 - r0)
                && (r1 - r2).abs() <= 0.05 * (1.0 - r0);
            if stable {
                let factor = r0 / (1.0 - r0);
                let remainder_mag = mag * factor;
                if remainder_mag <= tol {
                    let spread = (r0 - r1).abs() / (1.0 - r0);
                    return Ok(Step::Done {
                        remainder: contribution * factor,
                        remainder_err: remainder_mag * spread.max(1e-3) + 0.1 * tol,
                    });
                }
            }
        }
        Ok(Step::Continue)
    }
}

/// `∫₀^∞ f(x) dx` with dyadic panels around `scale`.
pub fn try_integrate_semi_infinite<T, F>(mut f: F, scale: f64, q: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    q.validate()?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::DomainError(format!(
            "integration scale must be positive, got {scale}"
        )));
    }
    let s = q.singular_exponent;
    let p = 1.0 / (1.0 + s);
    let mut g = |u: f64| -> Result<T> {
        if s == 0.0 {
            f(u)
        } else {
            // x = u^p, dx = p·x/u du
            let x = u.powf(p);
            Ok(f(x)? * (p * x / u))
        }
    };
    let c = if s == 0.0 { scale } else { scale.powf(1.0 + s) };
    let panel_rel = q.rel_tol;
    let panel_abs = q.abs_tol * 1e-3;

    let mut total = T::zero();
    let mut err = 0.0;
    let mut evaluations = 0usize;
    // panels far from the bulk only need accuracy relative to the running total
    let run_panel = |g: &mut dyn FnMut(f64) -> Result<T>, k: i32, total: T| -> Result<QuadResult<T>> {
        let a = c * 2f64.powi(k);
        let b = 2.0 * a;
        if !(a > 0.0 && b.is_finite() && b < 1e300) {
            return Err(Error::QuadratureFailure(format!(
                "dyadic march left the representable range at octave {k}"
            )));
        }
        let floor = panel_abs.max(0.01 * panel_rel * total.norm());
        adaptive(g, &[a, b], panel_rel, floor, q.max_depth)
    };

    const INITIAL: i32 = 3;
    let mut lower = Vec::new();
    for k in -INITIAL..INITIAL {
        let r = run_panel(&mut g, k, total)?;
        total = total + r.value;
        err += r.err_estimate;
        evaluations += r.evaluations;
        if k < 0 {
            lower.push(r.value);
        }
    }

    // upward
    let mut march = March::new();
    let mut k = INITIAL;
    loop {
        if k - INITIAL > MAX_DYADIC_STEPS {
            return Err(Error::QuadratureFailure(
                "upper tail did not converge within the octave budget".into(),
            ));
        }
        let r = run_panel(&mut g, k, total)?;
        total = total + r.value;
        err += r.err_estimate;
        evaluations += r.evaluations;
        match march.observe(k, r.value, total, q.rel_tol, q.abs_tol)? {
            Step::Continue => k += 1,
            Step::Done {
                remainder,
                remainder_err,
            } => {
                total = total + remainder;
                err += remainder_err;
                break;
            }
        }
    }

    // downward; seed the ratio history with the initial panels nearest 0
    let mut march = March::new();
    for v in lower.iter().rev().take(1) {
        march.prev = Some(v.norm());
    }
    let mut k = -INITIAL - 1;
    loop {
        if -k - INITIAL > MAX_DYADIC_STEPS {
            return Err(Error::QuadratureFailure(
                "integrand near the origin did not converge within the octave budget".into(),
            ));
        }
        let r = run_panel(&mut g, k, total)?;
        total = total + r.value;
        err += r.err_estimate;
        evaluations += r.evaluations;
        match march.observe(k, r.value, total, q.rel_tol, q.abs_tol)? {
            Step::Continue => k -= 1,
            Step::Done {
                remainder,
                remainder_err,
            } => {
                total = total + remainder;
                err += remainder_err;
                break;
            }
        }
    }

    if !total.is_finite() {
        return Err(Error::QuadratureFailure("non-finite integral".into()));
    }
    let err = err.max(4.0 * f64::EPSILON * total.norm());
    Ok(QuadResult {
        value: total,
        err_estimate: err,
        evaluations,
    })
}
