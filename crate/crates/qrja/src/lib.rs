//! Aggregation of weighted quantitative relative judgments.
//!
//! Judgments of the form "candidate `a` beats candidate `b` by `y` units,
//! with weight `w`" are aggregated into one-dimensional ratings by
//! minimizing `Σ wᵢ·|x[aᵢ] − x[bᵢ] − yᵢ|^p`. Contest results are a natural
//! source of such judgments (each contest judges every pair of its
//! contestants by their score difference), and the fitted ratings predict
//! future contests.
//!
//! The crate provides:
//! - exact solvers for p = 1 (minimum-cost circulation) and p = 2 (graph
//!   Laplacian least squares), IRLS for general p > 1, and a brute-force
//!   grid oracle for tiny instances ([`solvers`]);
//! - judgment subsampling with uniform or Lewis-weight distributions
//!   ([`subsample`]);
//! - comparison methods: mean, median, Borda, Kemeny-Young, and matrix
//!   factorization ([`baselines`]);
//! - a chronological train/predict evaluation harness with ordinal and
//!   quantitative metrics, plus a synthetic contest generator ([`harness`]);
//! - the Max-Cut reduction showing the p < 1 objective is intractable,
//!   with rounding and small-scale verification ([`hardness`]).
//!
//! Runnable walkthroughs live in `examples/`; the `qrja` binary exposes the
//! same functionality as subcommands.

pub mod baselines;
pub mod cli;
pub mod hardness;
pub mod harness;
pub mod instance;
pub mod solvers;
pub mod subsample;

pub use instance::{
    connected_components, normalize_gauge, qrja_loss, Components, InstanceError, Judgment,
    LossSpec, QrjaInstance, RatingVector,
};
pub use solvers::{
    solve, solve_bruteforce, solve_irls, solve_l1, solve_l2, SolveOptions, SolveResult,
    SolverError,
};
