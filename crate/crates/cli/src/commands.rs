use std::fmt;
use std::io::{self, Write};

use subfrac::green::{green_function, GreenMethod, GreenQuery};
use subfrac::kernels::{
    k_density, k_talbot, levy_density, levy_density_talbot, mainardi, mainardi_talbot, psi_kernel_with,
};
use subfrac::solvers::{solve_advection, solve_spectral, AdvectionProblem, SpectralProblem};
use subfrac::special::{mittag_leffler_neg, MLArg, SeriesConfig};
use subfrac::verify::all_checks;
use subfrac::{KernelPoint, OrderPair, QuadConfig, Representation, TalbotConfig};

use crate::grid::GridSpec;
use crate::{EvalTarget, Params, Profile, SolveTarget};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed { op: String, source: subfrac::Error },
    ChecksFailed(usize),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed { op, source } => write!(f, "{op} failed: {source}"),
            CliError::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
            CliError::Io(e) => write!(f, "write error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

struct Axis {
    name: &'static str,
    values: Vec<f64>,
    swept: bool,
}

fn axis(name: &'static str, scalar: Option<f64>, grid: Option<GridSpec>, default: Option<f64>) -> Result<Axis> {
    match (scalar, grid) {
        (Some(_), Some(_)) => Err(usage(format!("give either --{name} or --{name}-grid, not both"))),
        (Some(v), None) => Ok(Axis {
            name,
            values: vec![v],
            swept: false,
        }),
        (None, Some(g)) => Ok(Axis {
            name,
            values: g.points(),
            swept: true,
        }),
        (None, None) => match default {
            Some(v) => Ok(Axis {
                name,
                values: vec![v],
                swept: false,
            }),
            None => Err(usage(format!("--{name} or --{name}-grid is required"))),
        },
    }
}

fn required<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{name} is required")))
}

fn quad(p: &Params) -> Result<QuadConfig> {
    let q = QuadConfig::default().with_rel_tol(p.rel_tol.unwrap_or(1e-9));
    q.validate().map_err(usage)?;
    Ok(q)
}

fn talbot(p: &Params) -> Result<TalbotConfig> {
    let c = p.nodes.map_or_else(TalbotConfig::default, TalbotConfig::with_nodes);
    c.validate().map_err(usage)?;
    Ok(c)
}

fn orders(p: &Params) -> Result<OrderPair> {
    OrderPair::new(required(p.alpha, "alpha")?, required(p.beta, "beta")?).map_err(usage)
}

fn header(out: &mut impl Write, names: &[&str]) -> Result<()> {
    writeln!(out, "# columns: {}", names.join(","))?;
    Ok(())
}

fn row(out: &mut impl Write, values: &[f64]) -> Result<()> {
    let cells: Vec<String> = values.iter().map(|v| format!("{v:.11e}")).collect();
    writeln!(out, "{}", cells.join(","))?;
    Ok(())
}

/// Evaluates `f` over the (at most one) swept axis and writes
/// `swept-variable,value` rows.
fn sweep<F>(out: &mut impl Write, axes: &[Axis], value: &str, op: &str, f: F) -> Result<()>
where
    F: Fn(&[f64]) -> subfrac::Result<f64>,
{
    let swept: Vec<usize> = (0..axes.len()).filter(|&i| axes[i].swept).collect();
    if swept.len() > 1 {
        let names: Vec<String> = swept.iter().map(|&i| format!("--{}-grid", axes[i].name)).collect();
        return Err(usage(format!("only one grid at a time, got {}", names.join(" and "))));
    }
    let key = swept.first().copied().unwrap_or(0);
    header(out, &[axes[key].name, value])?;
    let rows = axes[key].values.len();
    for i in 0..rows {
        let point: Vec<f64> = axes
            .iter()
            .enumerate()
            .map(|(j, a)| if j == key { a.values[i] } else { a.values[0] })
            .collect();
        let v = f(&point).map_err(|source| {
            let at: Vec<String> = axes.iter().zip(&point).map(|(a, v)| format!("{}={v}", a.name)).collect();
            CliError::Failed {
                op: format!("{op}({})", at.join(", ")),
                source,
            }
        })?;
        row(out, &[point[key], v])?;
    }
    Ok(())
}

pub fn eval(target: EvalTarget, p: &Params, out: &mut impl Write) -> Result<()> {
    let q = quad(p)?;
    let tc = talbot(p)?;
    let talbot_rep = p.rep == Some(Representation::Talbot);
    match target {
        EvalTarget::Ml => {
            let alpha = required(p.alpha, "alpha")?;
            let beta = p.beta.unwrap_or(1.0);
            MLArg::new(alpha, beta, 0.0).map_err(usage)?;
            let cfg = SeriesConfig::default();
            let axes = [axis("x", p.x, p.x_grid, None)?];
            sweep(out, &axes, "ml", "mittag_leffler", |v| {
                mittag_leffler_neg(MLArg::new(alpha, beta, v[0])?, &cfg)
            })
        }
        EvalTarget::Levy => {
            let alpha = required(p.alpha, "alpha")?;
            let axes = [axis("x", p.x, p.x_grid, None)?];
            sweep(out, &axes, "levy", "levy_density", |v| {
                if talbot_rep {
                    levy_density_talbot(alpha, v[0], &tc)
                } else {
                    levy_density(alpha, v[0])
                }
            })
        }
        EvalTarget::Mainardi => {
            let beta = required(p.beta, "beta")?;
            let axes = [axis("x", p.x, p.x_grid, None)?];
            sweep(out, &axes, "mainardi", "mainardi", |v| {
                if talbot_rep {
                    mainardi_talbot(beta, v[0], &tc)
                } else {
                    mainardi(beta, v[0])
                }
            })
        }
        EvalTarget::K => {
            let op = orders(p)?;
            let rep = p.rep.unwrap_or(Representation::Auto);
            let axes = [axis("x", p.x, p.x_grid, None)?];
            sweep(out, &axes, "k", "k_density", |v| {
                if talbot_rep {
                    k_talbot(op, v[0], &tc)
                } else {
                    k_density(op, v[0], rep, &q)
                }
            })
        }
        EvalTarget::Psi => {
            let op = orders(p)?;
            let rep = p.rep.unwrap_or(Representation::Auto);
            let axes = [axis("t", p.t, p.t_grid, None)?, axis("tau", p.tau, p.tau_grid, None)?];
            sweep(out, &axes, "psi", "psi_kernel", |v| {
                let pt = KernelPoint::new(v[0], v[1])?;
                if talbot_rep {
                    let s = pt.t.powf(-op.beta / op.alpha);
                    Ok(s * k_talbot(op, pt.tau * s, &tc)?)
                } else {
                    psi_kernel_with(op, pt, rep, &q)
                }
            })
        }
        EvalTarget::Green => {
            let op = orders(p)?;
            let n = p.n.unwrap_or(1);
            let m = p.method.unwrap_or_else(|| GreenMethod::default_for(op, n));
            m.check(op, n).map_err(usage)?;
            let axes = [axis("rho", p.rho, p.rho_grid, None)?, axis("t", p.t, p.t_grid, None)?];
            sweep(out, &axes, "green", "green_function", |v| {
                green_function(op, GreenQuery::new(n, v[0], v[1])?, m, &q)
            })
        }
    }
}

pub fn solve(target: SolveTarget, p: &Params, out: &mut impl Write) -> Result<()> {
    let op = orders(p)?;
    let q = quad(p)?;
    match target {
        SolveTarget::Spectral => {
            let lambda = axis("lambda", p.lambda, p.lambda_grid, None)?;
            let t = axis("t", p.t, p.t_grid, None)?;
            if lambda.swept && t.swept {
                return Err(usage("only one grid at a time, got --lambda-grid and --t-grid"));
            }
            let fail = |source| CliError::Failed {
                op: "solve_spectral".into(),
                source,
            };
            if t.swept {
                let prob = SpectralProblem::new(lambda.values.clone(), vec![1.0]).map_err(usage)?;
                header(out, &["t", "amplitude"])?;
                for &tv in &t.values {
                    let a = solve_spectral(&prob, op, tv).map_err(fail)?;
                    row(out, &[tv, a[0]])?;
                }
            } else {
                let k = lambda.values.len();
                let prob = SpectralProblem::new(lambda.values.clone(), vec![1.0; k]).map_err(usage)?;
                let a = solve_spectral(&prob, op, t.values[0]).map_err(fail)?;
                header(out, &["lambda", "amplitude"])?;
                for (l, a) in lambda.values.iter().zip(a) {
                    row(out, &[*l, a])?;
                }
            }
            Ok(())
        }
        SolveTarget::Advection => {
            let t = required(p.t, "t")?;
            let x = axis("x", p.x, p.x_grid, None)?;
            let profile = p.profile.unwrap_or_default();
            let v = move |s: f64| match profile {
                Profile::One => 1.0,
                Profile::Exp => (-s).exp(),
            };
            let prob = AdvectionProblem::new(v, op, x.values.clone()).map_err(usage)?;
            let u = solve_advection(&prob, t, &q).map_err(|source| CliError::Failed {
                op: "solve_advection".into(),
                source,
            })?;
            header(out, &["x", "u"])?;
            for (x, u) in x.values.iter().zip(u) {
                row(out, &[*x, u])?;
            }
            Ok(())
        }
    }
}

pub fn verify(out: &mut impl Write) -> Result<()> {
    let checks = all_checks();
    let mut failed = 0;
    for c in &checks {
        writeln!(out, "{c}")?;
        if !c.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
