//! Shared numerical engines.

mod laplace;
mod quad;

pub use laplace::{
    forward_laplace, inverse_laplace_talbot, try_forward_laplace, try_inverse_laplace_talbot, MU_NODES,
    TalbotConfig,
};
pub use quad::{
    integrate_finite, integrate_semi_infinite, try_integrate_finite, try_integrate_points,
    try_integrate_semi_infinite, QuadConfig, QuadResult, QuadValue,
};
