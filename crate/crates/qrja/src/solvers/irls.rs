//! Iteratively reweighted least squares for exponents p > 1.
//!
//! Each iteration solves a weighted least-squares problem with per-judgment
//! weights `wᵢ·max(|rᵢ|, ε)^{p−2}` built from the current residuals. For
//! p ≤ 2 the reweighted quadratic majorizes the true objective, so the full
//! step never increases the loss; for p > 2 it can overshoot, so a halving
//! line search back toward the previous iterate restores monotonicity.

use crate::instance::{normalize_gauge, qrja_loss, LossSpec, QrjaInstance};

use super::{solve_l2, SolveOptions, SolveResult, SolverError};

pub fn solve_irls(
    instance: &QrjaInstance,
    spec: &LossSpec,
    opts: &SolveOptions,
) -> Result<SolveResult, SolverError> {
    opts.validate()?;
    let p = spec.p();
    if p <= 1.0 {
        return Err(SolverError::UnsupportedExponent(p));
    }
    let n = instance.candidate_count();
    let m = instance.judgment_count();

    if m == 0 {
        let x = normalize_gauge(&vec![0.0; n], instance).expect("lengths match");
        return Ok(SolveResult { x, loss: 0.0, iterations: 0, converged: true, dual_objective: None });
    }

    // Inner least-squares solves keep their own generous iteration budget;
    // `max_iterations` caps the outer reweighting loop.
    let inner_opts = SolveOptions { max_iterations: opts.max_iterations.max(10_000), ..*opts };

    // Start from the plain least-squares solution.
    let init = solve_l2(instance, &inner_opts);
    let mut x: Vec<f64> = init.x.values().to_vec();
    let mut loss = qrja_loss(instance, &x, spec).expect("lengths match");
    let mut iterations = 0usize;
    let mut converged = false;
    let mut inner_converged = init.converged;

    while iterations < opts.max_iterations {
        iterations += 1;
        let weights: Vec<f64> = instance
            .judgments()
            .iter()
            .map(|j| {
                let r = (x[j.a] - x[j.b] - j.y).abs().max(opts.irls_clamp);
                j.w * r.powf(p - 2.0)
            })
            .collect();
        let reweighted = instance.with_weights(&weights).expect("weights are positive");
        let inner = solve_l2(&reweighted, &inner_opts);
        inner_converged &= inner.converged;
        let mut candidate: Vec<f64> = inner.x.values().to_vec();
        let mut candidate_loss = qrja_loss(instance, &candidate, spec).expect("lengths match");

        // Halving line search; only ever triggers for p > 2.
        let mut halvings = 0;
        while candidate_loss > loss && halvings < 60 {
            for i in 0..n {
                candidate[i] = 0.5 * (candidate[i] + x[i]);
            }
            candidate_loss = qrja_loss(instance, &candidate, spec).expect("lengths match");
            halvings += 1;
        }
        if candidate_loss > loss {
            // No further progress representable; accept the current point.
            converged = true;
            break;
        }

        let decrease = loss - candidate_loss;
        x = candidate;
        loss = candidate_loss;
        if decrease <= opts.tolerance * loss.max(1e-300) {
            converged = true;
            break;
        }
    }

    let rating = normalize_gauge(&x, instance).expect("lengths match");
    let loss = qrja_loss(instance, rating.values(), spec).expect("lengths match");
    Ok(SolveResult {
        x: rating,
        loss,
        iterations,
        converged: converged && inner_converged,
        dual_objective: None,
    })
}
