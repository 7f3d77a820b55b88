//! Rating solvers for the weighted ℓp objective.
//!
//! - [`solve_l2`]: conjugate gradient on the weighted graph Laplacian,
//!   per connected component.
//! - [`solve_l1`]: exact minimum-cost circulation via network simplex;
//!   optimal node potentials are the ratings and the circulation objective
//!   certifies the loss.
//! - [`solve_irls`]: iteratively reweighted least squares for p > 1.
//! - [`solve_bruteforce`]: exhaustive grid search for tiny instances,
//!   kept free of the other solver paths so it can serve as an oracle.

mod bruteforce;
mod circulation;
mod irls;
mod laplacian;

pub use bruteforce::solve_bruteforce;
pub use circulation::solve_l1;
pub use irls::solve_irls;
pub use laplacian::solve_l2;

use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::instance::{LossSpec, QrjaInstance, RatingVector};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("exponent p = {0} unsupported: p = 1 uses the circulation solver, p < 1 has no efficient solver")]
    UnsupportedExponent(f64),
    #[error("instance has {n} candidates, exhaustive search limited to {max}")]
    InstanceTooLarge { n: usize, max: usize },
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("internal solver error: {0}")]
    Internal(String),
}

/// Tolerances and iteration limits shared by the iterative solvers.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SolveOptions {
    /// Objective / residual tolerance.
    pub tolerance: f64,
    /// Iteration cap; exceeded runs are returned with `converged = false`.
    pub max_iterations: usize,
    /// Residual clamp for reweighting, prevents division blowup near zero.
    pub irls_clamp: f64,
    /// Seed for any randomized tie-breaking (currently none is randomized).
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tolerance: 1e-8,
            max_iterations: 10_000,
            irls_clamp: 1e-10,
            seed: 0,
        }
    }
}

impl SolveOptions {
    pub(crate) fn validate(&self) -> Result<(), SolverError> {
        if !(self.tolerance > 0.0) {
            return Err(SolverError::InvalidOption(format!(
                "tolerance must be > 0, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(SolverError::InvalidOption("max_iterations must be >= 1".into()));
        }
        if !(self.irls_clamp > 0.0) {
            return Err(SolverError::InvalidOption(format!(
                "irls_clamp must be > 0, got {}",
                self.irls_clamp
            )));
        }
        Ok(())
    }
}

/// Solver output: gauge-normalized ratings plus diagnostics.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub x: RatingVector,
    pub loss: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Circulation objective `Σ fᵢ·yᵢ`; present for the ℓ1 solver only and
    /// bounded above by the loss (weak duality).
    pub dual_objective: Option<f64>,
}

impl Serialize for SolveResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SolveResult", 5)?;
        s.serialize_field("x", &self.x)?;
        s.serialize_field("loss", &self.loss)?;
        s.serialize_field("iterations", &self.iterations)?;
        s.serialize_field("converged", &self.converged)?;
        s.serialize_field("dual_objective", &self.dual_objective)?;
        s.end()
    }
}

/// Dispatches on the exponent: p = 1 circulation, p = 2 Laplacian CG,
/// p > 1 IRLS; p < 1 is rejected.
pub fn solve(
    instance: &QrjaInstance,
    spec: &LossSpec,
    opts: &SolveOptions,
) -> Result<SolveResult, SolverError> {
    let p = spec.p();
    if p == 1.0 {
        solve_l1(instance, opts)
    } else if p == 2.0 {
        Ok(solve_l2(instance, opts))
    } else if p > 1.0 {
        solve_irls(instance, spec, opts)
    } else {
        Err(SolverError::UnsupportedExponent(p))
    }
}
