//! Matrix factorization over the contestant × contest score table.
//!
//! Two model classes: low-rank `A ≈ U·Vᵀ` and additive `A ≈ xᵢ + yⱼ`
//! (contestant skill plus contest easiness). Both are fitted by full-batch
//! gradient descent on the sum of squared errors over observed entries with
//! a deterministic initialization, for a fixed number of epochs. Predicting
//! an entirely unknown column averages the model's predictions over the
//! training columns.

use std::collections::BTreeMap;

use thiserror::Error;

use super::ScoreTable;

#[derive(Debug, Error)]
pub enum MfError {
    #[error("score table has no observed entries")]
    EmptyTable,
    #[error("training diverged at epoch {epoch} (loss {loss:.3e}); try a smaller learning rate")]
    Diverged { epoch: usize, loss: f64 },
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MfRank {
    LowRank(usize),
    Additive,
}

#[derive(Debug, Clone)]
pub struct MfOptions {
    pub rank: MfRank,
    pub learning_rate: f64,
    pub epochs: usize,
    /// Initial value for every factor entry. Zero is a saddle point of the
    /// multiplicative model, so the default is 0.1; the additive model
    /// starts at zero regardless.
    pub init_value: f64,
}

impl Default for MfOptions {
    fn default() -> Self {
        MfOptions { rank: MfRank::LowRank(1), learning_rate: 0.01, epochs: 1000, init_value: 0.1 }
    }
}

impl MfOptions {
    pub fn low_rank(r: usize) -> Self {
        MfOptions { rank: MfRank::LowRank(r), ..Default::default() }
    }

    pub fn additive() -> Self {
        MfOptions { rank: MfRank::Additive, ..Default::default() }
    }

    fn validate(&self) -> Result<(), MfError> {
        if let MfRank::LowRank(r) = self.rank {
            if r == 0 {
                return Err(MfError::InvalidOption("rank must be >= 1".into()));
            }
        }
        if !(self.learning_rate > 0.0) {
            return Err(MfError::InvalidOption("learning_rate must be > 0".into()));
        }
        if self.epochs == 0 {
            return Err(MfError::InvalidOption("epochs must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum MfFactors {
    /// Row factors `U` (contestants × r) and column factors `V` (contests × r).
    LowRank { u: Vec<Vec<f64>>, v: Vec<Vec<f64>> },
    /// Contestant offsets plus contest offsets.
    Additive { x: Vec<f64>, y: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct MfModel {
    pub factors: MfFactors,
    /// Training loss after each epoch, preceded by the initial loss.
    pub loss_trace: Vec<f64>,
}

impl MfModel {
    pub fn predict_entry(&self, row: usize, col: usize) -> f64 {
        match &self.factors {
            MfFactors::LowRank { u, v } => {
                u[row].iter().zip(&v[col]).map(|(a, b)| a * b).sum()
            }
            MfFactors::Additive { x, y } => x[row] + y[col],
        }
    }

    pub fn final_loss(&self) -> f64 {
        *self.loss_trace.last().expect("trace has the initial loss")
    }
}

const DIVERGENCE_LIMIT: f64 = 1e12;

/// Full-batch gradient descent on `Σ (prediction − score)²` over observed
/// entries.
pub fn mf_fit(table: &ScoreTable, opts: &MfOptions) -> Result<MfModel, MfError> {
    opts.validate()?;
    if table.is_empty() {
        return Err(MfError::EmptyTable);
    }
    let observed: Vec<(usize, usize, f64)> = table.observed().collect();
    let n = table.row_count();
    let m = table.col_count();
    let lr = opts.learning_rate;

    match opts.rank {
        MfRank::LowRank(r) => {
            let mut u = vec![vec![opts.init_value; r]; n];
            let mut v = vec![vec![opts.init_value; r]; m];
            let loss_of = |u: & [Vec<f64>], v: &[Vec<f64>]| {
                observed
                    .iter()
                    .map(|&(i, j, a)| {
                        let e: f64 = u[i].iter().zip(&v[j]).map(|(x, y)| x * y).sum::<f64>() - a;
                        e * e
                    })
                    .sum::<f64>()
            };
            let mut trace = Vec::with_capacity(opts.epochs + 1);
            trace.push(loss_of(&u, &v));
            let mut gu = vec![vec![0.0f64; r]; n];
            let mut gv = vec![vec![0.0f64; r]; m];
            for epoch in 1..=opts.epochs {
                for g in gu.iter_mut().chain(gv.iter_mut()) {
                    g.iter_mut().for_each(|x| *x = 0.0);
                }
                for &(i, j, a) in &observed {
                    let e: f64 = u[i].iter().zip(&v[j]).map(|(x, y)| x * y).sum::<f64>() - a;
                    for t in 0..r {
                        gu[i][t] += 2.0 * e * v[j][t];
                        gv[j][t] += 2.0 * e * u[i][t];
                    }
                }
                for i in 0..n {
                    for t in 0..r {
                        u[i][t] -= lr * gu[i][t];
                    }
                }
                for j in 0..m {
                    for t in 0..r {
                        v[j][t] -= lr * gv[j][t];
                    }
                }
                let loss = loss_of(&u, &v);
                if !loss.is_finite() || loss > DIVERGENCE_LIMIT {
                    return Err(MfError::Diverged { epoch, loss });
                }
                trace.push(loss);
            }
            Ok(MfModel { factors: MfFactors::LowRank { u, v }, loss_trace: trace })
        }
        MfRank::Additive => {
            let mut x = vec![0.0f64; n];
            let mut y = vec![0.0f64; m];
            let loss_of = |x: &[f64], y: &[f64]| {
                observed.iter().map(|&(i, j, a)| {
                    let e = x[i] + y[j] - a;
                    e * e
                }).sum::<f64>()
            };
            let mut trace = Vec::with_capacity(opts.epochs + 1);
            trace.push(loss_of(&x, &y));
            let mut gx = vec![0.0f64; n];
            let mut gy = vec![0.0f64; m];
            for epoch in 1..=opts.epochs {
                gx.iter_mut().for_each(|g| *g = 0.0);
                gy.iter_mut().for_each(|g| *g = 0.0);
                for &(i, j, a) in &observed {
                    let e = x[i] + y[j] - a;
                    gx[i] += 2.0 * e;
                    gy[j] += 2.0 * e;
                }
                for i in 0..n {
                    x[i] -= lr * gx[i];
                }
                for j in 0..m {
                    y[j] -= lr * gy[j];
                }
                let loss = loss_of(&x, &y);
                if !loss.is_finite() || loss > DIVERGENCE_LIMIT {
                    return Err(MfError::Diverged { epoch, loss });
                }
                trace.push(loss);
            }
            Ok(MfModel { factors: MfFactors::Additive { x, y }, loss_trace: trace })
        }
    }
}

/// Predicts a brand-new contest column: for each contestant, the mean of the
/// model's predictions over all training columns. Contestants absent from
/// the table are absent from the map.
pub fn mf_predict_new_contest(model: &MfModel, table: &ScoreTable) -> BTreeMap<String, f64> {
    let m = table.col_count();
    let mut out = BTreeMap::new();
    if m == 0 {
        return out;
    }
    for (row, name) in table.contestants().iter().enumerate() {
        let mean = (0..m).map(|col| model.predict_entry(row, col)).sum::<f64>() / m as f64;
        out.insert(name.clone(), mean);
    }
    out
}
