//! Numerics for the subordination principle of space-time fractional
//! evolution equations
//!
//! ```text
//! D_t^β u = -A^α u,   u(0) = v,   0 < α, β ≤ 1
//! ```
//!
//! whose solution operator is a superposition of the classical semigroup
//! `S(τ)` weighted by a probability density `ψ_{α,β}(t, τ)`:
//!
//! ```text
//! S_{α,β}(t) = ∫₀^∞ ψ_{α,β}(t, τ) S(τ) dτ
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive Gauss-Kronrod quadrature on finite and
//!   semi-infinite intervals, forward Laplace transform, and a Talbot-contour
//!   inverse Laplace transform used as an independent oracle.
//! * [`special`]: Mittag-Leffler functions, incomplete gamma, `E₁`, and
//!   Tricomi's `U`.
//! * [`kernels`]: the Lévy extremal density `L_α`, the Mainardi function
//!   `M_β`, the one-variable kernel `K_{α,β}`, and the two-variable
//!   subordination kernels `f_α`, `φ_β`, `ψ_{α,β}`.
//! * [`green`]: heat and Poisson kernels and the subordinated Green
//!   functions `G_{α,β,n}` on `ℝⁿ`.
//! * [`solvers`]: the eigenfunction-expansion solver on a bounded domain and
//!   the space-time fractional advection solver.
//! * [`verify`]: self-contained invariant checks used by the `verify` CLI
//!   command.
//!
//! The relation `ψ_{α,β}(t,τ) = 2 G^{-α}_{α,β}(x,t)|_{x=τ}` with the
//! Riesz-Feller Green function of skewness `-α` is not computed here.

pub mod error;
pub mod green;
pub mod kernels;
pub mod numerics;
pub mod solvers;
pub mod special;
pub mod verify;

mod gammafn;

pub use error::{Error, Result};

pub use kernels::{KernelPoint, OrderPair, Representation};
pub use numerics::{QuadConfig, QuadResult, TalbotConfig};
