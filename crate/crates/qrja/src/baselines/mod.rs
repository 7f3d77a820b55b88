//! Comparison methods: mean/median score imputation, the normalized Borda
//! rule, Kemeny-Young rank aggregation, and matrix factorization.

mod kemeny;
mod mf;

pub use kemeny::{kemeny_from_preferences, kemeny_ranking, KemenyRanking};
pub use mf::{mf_fit, mf_predict_new_contest, MfError, MfModel, MfOptions, MfRank};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::harness::Contest;

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("empty input")]
    EmptyInput,
    #[error("duplicate score for contestant {contestant} in contest {contest}")]
    DuplicateEntry { contestant: String, contest: String },
}

/// Sparse contestant × contest score table.
///
/// Rows are contestants (sorted by name for determinism), columns are
/// contests in the order given; at most one entry per cell.
#[derive(Debug, Clone)]
pub struct ScoreTable {
    contestants: Vec<String>,
    contests: Vec<String>,
    row_of: BTreeMap<String, usize>,
    /// (row, col) → score
    entries: BTreeMap<(usize, usize), f64>,
}

impl ScoreTable {
    pub fn from_contests(contests: &[Contest]) -> Result<Self, BaselineError> {
        let mut names: Vec<String> = contests
            .iter()
            .flat_map(|c| c.entries.iter().map(|(name, _)| name.clone()))
            .collect();
        names.sort();
        names.dedup();
        let row_of: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();

        let mut entries = BTreeMap::new();
        let mut contest_ids = Vec::with_capacity(contests.len());
        for (col, contest) in contests.iter().enumerate() {
            contest_ids.push(contest.id.clone());
            for (name, score) in &contest.entries {
                let row = row_of[name];
                if entries.insert((row, col), *score).is_some() {
                    return Err(BaselineError::DuplicateEntry {
                        contestant: name.clone(),
                        contest: contest.id.clone(),
                    });
                }
            }
        }
        Ok(ScoreTable { contestants: names, contests: contest_ids, row_of, entries })
    }

    pub fn contestants(&self) -> &[String] {
        &self.contestants
    }

    pub fn contests(&self) -> &[String] {
        &self.contests
    }

    pub fn row_count(&self) -> usize {
        self.contestants.len()
    }

    pub fn col_count(&self) -> usize {
        self.contests.len()
    }

    pub fn get(&self, contestant: &str, col: usize) -> Option<f64> {
        let row = *self.row_of.get(contestant)?;
        self.entries.get(&(row, col)).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Observed entries as (row, col, score), in deterministic order.
    pub fn observed(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    fn row_scores(&self, row: usize) -> Vec<f64> {
        (0..self.contests.len())
            .filter_map(|c| self.entries.get(&(row, c)).copied())
            .collect()
    }
}

/// Arithmetic mean of each contestant's scores; contestants with no data
/// are absent from the map.
pub fn mean_ratings(table: &ScoreTable) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    for (row, name) in table.contestants.iter().enumerate() {
        let scores = table.row_scores(row);
        if !scores.is_empty() {
            out.insert(name.clone(), scores.iter().sum::<f64>() / scores.len() as f64);
        }
    }
    out
}

/// Lower median of each contestant's scores (the ⌈k/2⌉-th order statistic),
/// so even counts pick the smaller of the two middle values.
pub fn median_ratings(table: &ScoreTable) -> BTreeMap<String, f64> {
    let mut out = BTreeMap::new();
    for (row, name) in table.contestants.iter().enumerate() {
        let mut scores = table.row_scores(row);
        if scores.is_empty() {
            continue;
        }
        scores.sort_by(|a, b| a.partial_cmp(b).expect("finite scores"));
        out.insert(name.clone(), scores[(scores.len() - 1) / 2]);
    }
    out
}

/// Normalized Borda points for one contest: the i-th ranked of n receives
/// `1 − 2(i−1)/(n−1)`. Tied scores share the average of the positions they
/// cover. A single-contestant contest contributes 0 points.
pub fn borda_contest_points(entries: &[(String, f64)]) -> Vec<(String, f64)> {
    let n = entries.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![(entries[0].0.clone(), 0.0)];
    }
    // Sort descending by score; higher score ranks first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        entries[j].1.partial_cmp(&entries[i].1).expect("finite scores").then(entries[i].0.cmp(&entries[j].0))
    });
    let mut points = vec![0.0f64; n];
    let mut pos = 0usize;
    while pos < n {
        let mut end = pos + 1;
        while end < n && entries[order[end]].1 == entries[order[pos]].1 {
            end += 1;
        }
        // positions pos+1 ..= end (1-based) share their average rank
        let avg_rank = (pos + 1 + end) as f64 / 2.0;
        let pts = 1.0 - 2.0 * (avg_rank - 1.0) / (n as f64 - 1.0);
        for &idx in &order[pos..end] {
            points[idx] = pts;
        }
        pos = end;
    }
    entries.iter().zip(points).map(|((name, _), p)| (name.clone(), p)).collect()
}

/// Total normalized Borda points per contestant over a series of contests.
pub fn borda_ratings(contests: &[Contest]) -> BTreeMap<String, f64> {
    let mut out: BTreeMap<String, f64> = BTreeMap::new();
    for contest in contests {
        for (name, pts) in borda_contest_points(&contest.entries) {
            *out.entry(name).or_insert(0.0) += pts;
        }
    }
    out
}
