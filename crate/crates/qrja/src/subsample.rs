//! Judgment subsampling with importance weights.
//!
//! [`subsample`] draws `M` judgments i.i.d. with probabilities proportional
//! to a sampling-weight vector `s` and rescales each copy's weight to
//! `w_x / (M·q_x)`, so the expected total weight attributable to every
//! original judgment is preserved exactly. Sampling is with replacement and
//! repeated draws are kept as separate judgments.
//!
//! [`lewis_weights`] computes per-judgment importance scores for p ∈ [1, 2]
//! by a fixed-point iteration on the augmented row matrix (the judgment's
//! signed incidence entries `±w^{1/p}` plus an offset column `−w^{1/p}·y`).
//! For p = 2 they are ordinary leverage scores and one step suffices.
//! Uniform weights (`s` all ones) are first-class: they work well in
//! practice and need no precomputation.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{InstanceError, Judgment, QrjaInstance};

#[derive(Debug, Error)]
pub enum SubsampleError {
    #[error("subsample count must be >= 1")]
    EmptyCount,
    #[error("sampling weight s[{0}] must be > 0, got {1}")]
    InvalidWeights(usize, f64),
    #[error("sampling weights have length {got}, instance has {expected} judgments")]
    LengthMismatch { got: usize, expected: usize },
    #[error("lewis weights require a nonempty instance")]
    EmptyInstance,
    #[error("lewis weights are defined for p in [1, 2], got {0}")]
    UnsupportedExponent(f64),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Sampling distribution for [`subsample_with_mode`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightsMode {
    Uniform,
    Lewis { p: f64 },
}

#[derive(Debug, Clone)]
pub struct SubsampleOptions {
    /// Number of draws `M`.
    pub count: usize,
    pub mode: WeightsMode,
    /// Fixed-point iterations for Lewis weights; a fixed budget keeps runs
    /// deterministic and the iteration contracts geometrically for p ∈ [1,2].
    pub lewis_iterations: usize,
    pub seed: u64,
}

impl SubsampleOptions {
    pub fn uniform(count: usize, seed: u64) -> Self {
        SubsampleOptions { count, mode: WeightsMode::Uniform, lewis_iterations: 20, seed }
    }

    pub fn lewis(count: usize, p: f64, seed: u64) -> Self {
        SubsampleOptions { count, mode: WeightsMode::Lewis { p }, lewis_iterations: 20, seed }
    }
}

/// Lewis-weight vector plus a flag recording whether the Gram matrix needed
/// ridge regularization (rank-deficient input).
#[derive(Debug, Clone)]
pub struct LewisWeights {
    pub s: Vec<f64>,
    pub regularized: bool,
}

/// Draws `count` judgments i.i.d. with probability `qᵢ = sᵢ/Σs`, each copy
/// reweighted to `w_x/(M·q_x)`. The output instance keeps the candidate set.
pub fn subsample(
    instance: &QrjaInstance,
    s: &[f64],
    count: usize,
    seed: u64,
) -> Result<QrjaInstance, SubsampleError> {
    let m = instance.judgment_count();
    if s.len() != m {
        return Err(SubsampleError::LengthMismatch { got: s.len(), expected: m });
    }
    if count == 0 {
        return Err(SubsampleError::EmptyCount);
    }
    for (i, &si) in s.iter().enumerate() {
        if !(si > 0.0) || !si.is_finite() {
            return Err(SubsampleError::InvalidWeights(i, si));
        }
    }
    let total: f64 = s.iter().sum();
    // Cumulative distribution for inverse-CDF sampling.
    let mut cdf = Vec::with_capacity(m);
    let mut acc = 0.0;
    for &si in s {
        acc += si;
        cdf.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut judgments = Vec::with_capacity(count);
    let mf = count as f64;
    for _ in 0..count {
        let u: f64 = rng.gen::<f64>() * total;
        let idx = match cdf.binary_search_by(|c| c.partial_cmp(&u).expect("finite cdf")) {
            Ok(i) => (i + 1).min(m - 1),
            Err(i) => i.min(m - 1),
        };
        let j = instance.judgments()[idx];
        let q = s[idx] / total;
        judgments.push(Judgment::new(j.a, j.b, j.y, j.w / (mf * q))?);
    }
    Ok(QrjaInstance::new(instance.candidate_count(), judgments)?)
}

/// Computes the sampling weights for the requested mode, then samples.
/// Returns the subsampled instance and the Lewis diagnostics when used.
pub fn subsample_with_mode(
    instance: &QrjaInstance,
    opts: &SubsampleOptions,
) -> Result<(QrjaInstance, Option<LewisWeights>), SubsampleError> {
    match opts.mode {
        WeightsMode::Uniform => {
            let s = vec![1.0; instance.judgment_count()];
            let out = subsample(instance, &s, opts.count, opts.seed)?;
            Ok((out, None))
        }
        WeightsMode::Lewis { p } => {
            let lw = lewis_weights(instance, p, opts.lewis_iterations)?;
            let out = subsample(instance, &lw.s, opts.count, opts.seed)?;
            Ok((out, Some(lw)))
        }
    }
}

/// Importance scores `sᵢ ∈ (0, 1]` for p ∈ [1, 2] via the fixed point
/// `sᵢ ← (aᵢ·(AᵀS^{1−2/p}A)⁻¹·aᵢᵀ)^{p/2}` on the augmented matrix whose row
/// i is `+w^{1/p}` at column aᵢ, `−w^{1/p}` at column bᵢ, and `−w^{1/p}·yᵢ`
/// in the trailing offset column. Starts from all ones.
pub fn lewis_weights(
    instance: &QrjaInstance,
    p: f64,
    iterations: usize,
) -> Result<LewisWeights, SubsampleError> {
    if instance.is_empty() {
        return Err(SubsampleError::EmptyInstance);
    }
    if !(1.0..=2.0).contains(&p) {
        return Err(SubsampleError::UnsupportedExponent(p));
    }
    let n = instance.candidate_count();
    let m = instance.judgment_count();

    // The candidate columns carry a constant null direction per connected
    // component (the gauge), so work in a reduced basis that drops one
    // candidate column per component. Leverage scores only depend on the
    // row space and are unchanged; the ridge fallback is then reserved for
    // genuine rank deficiency in the data.
    let components = crate::instance::connected_components(instance);
    let mut col_of = vec![usize::MAX; n];
    let mut d = 0usize;
    for group in components.groups() {
        for &v in &group[1..] {
            col_of[v] = d;
            d += 1;
        }
    }
    let offset_col = d;
    d += 1;

    // Sparse row representation: (column, value) pairs per row; a dropped
    // endpoint contributes nothing.
    let rows: Vec<Vec<(usize, f64)>> = instance
        .judgments()
        .iter()
        .map(|j| {
            let wp = j.w.powf(1.0 / p);
            let mut row = Vec::with_capacity(3);
            if col_of[j.a] != usize::MAX {
                row.push((col_of[j.a], wp));
            }
            if col_of[j.b] != usize::MAX {
                row.push((col_of[j.b], -wp));
            }
            row.push((offset_col, -wp * j.y));
            row
        })
        .collect();

    let mut s = vec![1.0f64; m];
    let mut regularized = false;
    // p = 2 has exponent 1 − 2/p = 0: the Gram matrix ignores s, so the
    // first pass already returns the leverage scores.
    let passes = if p == 2.0 { 1 } else { iterations.max(1) };
    let exponent = 1.0 - 2.0 / p;

    for _ in 0..passes {
        let mut gram = DMatrix::<f64>::zeros(d, d);
        for (i, row) in rows.iter().enumerate() {
            let scale = s[i].powf(exponent);
            for &(c1, v1) in row.iter() {
                for &(c2, v2) in row.iter() {
                    gram[(c1, c2)] += scale * v1 * v2;
                }
            }
        }
        let chol = match Cholesky::new(gram.clone()) {
            Some(c) => c,
            None => {
                // Rank-deficient Gram matrix: add a small ridge and retry.
                regularized = true;
                let mut ridge = 1e-12 * gram.trace().max(f64::MIN_POSITIVE);
                loop {
                    let mut g = gram.clone();
                    for k in 0..d {
                        g[(k, k)] += ridge;
                    }
                    if let Some(c) = Cholesky::new(g) {
                        break c;
                    }
                    ridge *= 10.0;
                }
            }
        };
        for (i, row) in rows.iter().enumerate() {
            let mut a = DVector::<f64>::zeros(d);
            for &(c, v) in row.iter() {
                a[c] += v;
            }
            let u = chol.solve(&a);
            let lev = a.dot(&u).max(0.0);
            s[i] = lev.powf(p / 2.0).clamp(f64::MIN_POSITIVE, 1.0);
        }
    }

    Ok(LewisWeights { s, regularized })
}
