//! Chronological train/predict evaluation of rating methods on contest data.
//!
//! A [`ContestSeries`] is a chronologically ordered list of contests, each a
//! list of (contestant, score) pairs. For every contest index i ≥ 2, each
//! method is trained on contests 1..i−1 and predicts pairwise score
//! differences for contest i; predictions are scored by ordinal accuracy and
//! normalized quantitative loss over the pairs whose contestants have both
//! appeared in training. Every method is scored on the identical eligible
//! pair set per contest.

mod ingest;
mod metrics;
mod synth;

pub use ingest::{read_contest_csv, read_contest_csv_path, write_contest_csv, write_contest_csv_path};
pub use metrics::{ordinal_accuracy, quantitative_loss};
pub use synth::{synth_series, SynthParams};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::baselines::{
    borda_ratings, kemeny_from_preferences, mean_ratings, median_ratings, mf_fit,
    mf_predict_new_contest, BaselineError, MfError, MfOptions, MfRank, ScoreTable,
};
use crate::instance::{InstanceError, Judgment, QrjaInstance};
use crate::solvers::{solve, SolveOptions, SolverError};
use crate::subsample::{subsample_with_mode, SubsampleError, SubsampleOptions, WeightsMode};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("row {row}: {msg}")]
    Malformed { row: usize, msg: String },
    #[error("duplicate entry for contestant {contestant:?} in contest {contest:?} (rows {first_row} and {second_row})")]
    DuplicateEntry { contest: String, contestant: String, first_row: usize, second_row: usize },
    #[error("contests {0:?} and {1:?} have equal sort keys")]
    EqualContestKeys(String, String),
    #[error("evaluation needs at least 2 contests, got {0}")]
    NotEnoughContests(usize),
    #[error("unknown method {name:?}; known methods: {registry}")]
    UnknownMethod { name: String, registry: String },
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Subsample(#[from] SubsampleError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// One contest: a sortable id plus (contestant, score) entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Contest {
    pub id: String,
    pub entries: Vec<(String, f64)>,
}

/// Chronologically ordered contests with unique per-contest contestants.
#[derive(Debug, Clone, PartialEq)]
pub struct ContestSeries {
    contests: Vec<Contest>,
}

impl ContestSeries {
    /// Sorts the contests by key (numerically when every id parses as a
    /// number, lexicographically otherwise; stable within equal keys) and
    /// validates strict key ordering and per-contest contestant uniqueness.
    pub fn new(mut contests: Vec<Contest>) -> Result<Self, HarnessError> {
        let all_numeric = contests.iter().all(|c| c.id.trim().parse::<f64>().is_ok());
        if all_numeric {
            contests.sort_by(|a, b| {
                let ka: f64 = a.id.trim().parse().expect("checked");
                let kb: f64 = b.id.trim().parse().expect("checked");
                ka.partial_cmp(&kb).expect("finite keys")
            });
            for pair in contests.windows(2) {
                let ka: f64 = pair[0].id.trim().parse().expect("checked");
                let kb: f64 = pair[1].id.trim().parse().expect("checked");
                if ka == kb {
                    return Err(HarnessError::EqualContestKeys(pair[0].id.clone(), pair[1].id.clone()));
                }
            }
        } else {
            contests.sort_by(|a, b| a.id.cmp(&b.id));
            for pair in contests.windows(2) {
                if pair[0].id == pair[1].id {
                    return Err(HarnessError::EqualContestKeys(pair[0].id.clone(), pair[1].id.clone()));
                }
            }
        }
        for contest in &contests {
            let mut seen = BTreeSet::new();
            for (name, _) in &contest.entries {
                if !seen.insert(name) {
                    return Err(HarnessError::DuplicateEntry {
                        contest: contest.id.clone(),
                        contestant: name.clone(),
                        first_row: 0,
                        second_row: 0,
                    });
                }
            }
        }
        Ok(ContestSeries { contests })
    }

    pub fn contests(&self) -> &[Contest] {
        &self.contests
    }

    pub fn len(&self) -> usize {
        self.contests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contests.is_empty()
    }
}

/// Builds the judgment pool from a training prefix: one judgment per contest
/// and per pair of its contestants, `y` the score difference oriented from
/// the lower contestant index, all weights 1. Returns the instance and the
/// contestant names backing the candidate index space (sorted).
pub fn contests_to_judgments(training: &[Contest]) -> Result<(QrjaInstance, Vec<String>), HarnessError> {
    let mut names: Vec<String> = training
        .iter()
        .flat_map(|c| c.entries.iter().map(|(n, _)| n.clone()))
        .collect();
    names.sort();
    names.dedup();
    let index: BTreeMap<&str, usize> =
        names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();

    let mut judgments = Vec::new();
    for contest in training {
        let mut present: Vec<(usize, f64)> = contest
            .entries
            .iter()
            .map(|(n, s)| (index[n.as_str()], *s))
            .collect();
        present.sort_by_key(|&(i, _)| i);
        for i in 0..present.len() {
            for j in i + 1..present.len() {
                let (a, sa) = present[i];
                let (b, sb) = present[j];
                judgments.push(Judgment::new(a, b, sa - sb, 1.0)?);
            }
        }
    }
    let instance = QrjaInstance::new(names.len(), judgments)?;
    Ok((instance, names))
}

/// Method registry names accepted by [`parse_method`] and the CLI.
pub const METHOD_REGISTRY: [&str; 11] = [
    "mean",
    "median",
    "borda",
    "kemeny",
    "mf-r1",
    "mf-r2",
    "mf-r5",
    "mf-additive",
    "qrja-l1",
    "qrja-l2",
    "qrja-lp:<p>",
];

#[derive(Debug, Clone, PartialEq)]
pub enum MethodKind {
    Mean,
    Median,
    Borda,
    Kemeny,
    Mf(MfRank),
    QrjaL1,
    QrjaL2,
    QrjaLp(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Method {
    pub name: String,
    pub kind: MethodKind,
}

pub fn parse_method(name: &str) -> Result<Method, HarnessError> {
    let kind = match name {
        "mean" => MethodKind::Mean,
        "median" => MethodKind::Median,
        "borda" => MethodKind::Borda,
        "kemeny" => MethodKind::Kemeny,
        "mf-r1" => MethodKind::Mf(MfRank::LowRank(1)),
        "mf-r2" => MethodKind::Mf(MfRank::LowRank(2)),
        "mf-r5" => MethodKind::Mf(MfRank::LowRank(5)),
        "mf-additive" => MethodKind::Mf(MfRank::Additive),
        "qrja-l1" => MethodKind::QrjaL1,
        "qrja-l2" => MethodKind::QrjaL2,
        _ => {
            if let Some(p_str) = name.strip_prefix("qrja-lp:") {
                let p: f64 = p_str.parse().map_err(|_| HarnessError::UnknownMethod {
                    name: name.to_string(),
                    registry: METHOD_REGISTRY.join(", "),
                })?;
                if p == 1.0 {
                    MethodKind::QrjaL1
                } else if p == 2.0 {
                    MethodKind::QrjaL2
                } else {
                    MethodKind::QrjaLp(p)
                }
            } else {
                return Err(HarnessError::UnknownMethod {
                    name: name.to_string(),
                    registry: METHOD_REGISTRY.join(", "),
                });
            }
        }
    };
    Ok(Method { name: name.to_string(), kind })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregateWeighting {
    /// Weight each contest by its eligible pair count (the default).
    Pair,
    /// Weight each contest equally.
    Contest,
}

#[derive(Debug, Clone)]
pub struct EvalSubsample {
    /// Subsample rate α; the per-contest judgment pool is resampled to
    /// M = ⌊α·m⌋ draws.
    pub alpha: f64,
    pub mode: WeightsMode,
    pub lewis_iterations: usize,
}

#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub solve: SolveOptions,
    pub subsample: Option<EvalSubsample>,
    pub weighting: AggregateWeighting,
    pub seed: u64,
    pub mf_learning_rate: f64,
    pub mf_epochs: usize,
    pub mf_init: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            solve: SolveOptions::default(),
            subsample: None,
            weighting: AggregateWeighting::Pair,
            seed: 0,
            mf_learning_rate: 0.01,
            mf_epochs: 1000,
            mf_init: 0.1,
        }
    }
}

/// Per-contest metric values for one method.
#[derive(Debug, Clone, Serialize)]
pub struct ContestRecord {
    pub contest: String,
    pub ordinal_accuracy: Option<f64>,
    /// Eligible pairs with distinct scores (the ordinal denominator).
    pub ordinal_pairs: usize,
    pub quantitative_loss_l1: Option<f64>,
    pub quantitative_loss_l2: Option<f64>,
    /// Eligible pairs (both contestants seen in training).
    pub pair_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalAggregate {
    pub ordinal_accuracy: Option<f64>,
    pub quantitative_loss_l1: Option<f64>,
    pub quantitative_loss_l2: Option<f64>,
    pub ordinal_pairs: usize,
    pub pair_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub method: String,
    pub contests: Vec<ContestRecord>,
    pub aggregate: EvalAggregate,
    /// Entrywise normalized losses on test-contest scores; only methods that
    /// predict absolute scores (mean, median, low-rank MF) report them.
    pub entrywise_l1: Option<f64>,
    pub entrywise_l2: Option<f64>,
}

/// Eligible pair for one test contest: names ordered, actual score difference.
struct EligiblePair {
    u: String,
    v: String,
    actual: f64,
}

/// Per-method trained state for one test contest.
enum Predictor {
    /// Quantitative score-difference predictions keyed by contestant.
    Scores(BTreeMap<String, f64>),
    /// Ratings plus component labels: same component predicts the rating
    /// difference, cross-component pairs predict 0 by the gauge convention.
    Ratings { values: BTreeMap<String, f64>, component: BTreeMap<String, usize> },
    /// Order-only predictions (sign information, no quantitative loss).
    Order(BTreeMap<String, f64>),
}

impl Predictor {
    fn quantitative(&self) -> bool {
        !matches!(self, Predictor::Order(_))
    }

    fn predict(&self, u: &str, v: &str) -> f64 {
        match self {
            Predictor::Scores(map) | Predictor::Order(map) => map[u] - map[v],
            Predictor::Ratings { values, component } => {
                if component[u] == component[v] {
                    values[u] - values[v]
                } else {
                    0.0
                }
            }
        }
    }
}

/// Derives a per-contest subsample seed from the run seed.
fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_evaluation(
    series: &ContestSeries,
    methods: &[Method],
    opts: &EvalOptions,
) -> Result<Vec<EvalReport>, HarnessError> {
    if series.len() < 2 {
        return Err(HarnessError::NotEnoughContests(series.len()));
    }
    let contests = series.contests();
    let mut records: Vec<Vec<ContestRecord>> = vec![Vec::new(); methods.len()];
    let mut entry_acc: Vec<[f64; 4]> = vec![[0.0; 4]; methods.len()]; // Σ|e|, Σ|a|, Σe², Σa²
    let mut entry_applicable = vec![false; methods.len()];

    let needs_qrja = methods
        .iter()
        .any(|m| matches!(m.kind, MethodKind::QrjaL1 | MethodKind::QrjaL2 | MethodKind::QrjaLp(_)));

    for i in 1..contests.len() {
        let training = &contests[..i];
        let test = &contests[i];

        let mut seen = BTreeSet::new();
        for c in training {
            for (n, _) in &c.entries {
                seen.insert(n.clone());
            }
        }

        // Eligible pairs: both contestants have appeared before.
        let mut eligible = Vec::new();
        for (ai, (u, su)) in test.entries.iter().enumerate() {
            if !seen.contains(u) {
                continue;
            }
            for (v, sv) in test.entries.iter().skip(ai + 1) {
                if !seen.contains(v) {
                    continue;
                }
                let (u, v, actual) =
                    if u < v { (u.clone(), v.clone(), su - sv) } else { (v.clone(), u.clone(), sv - su) };
                eligible.push(EligiblePair { u, v, actual });
            }
        }

        // The judgment pool (optionally subsampled) is shared by all
        // rating-based methods at this contest index.
        let qrja_state = if needs_qrja {
            let (instance, names) = contests_to_judgments(training)?;
            let instance = match (&opts.subsample, instance.is_empty()) {
                (Some(sub), false) => {
                    let m = instance.judgment_count();
                    let count = ((sub.alpha * m as f64).floor() as usize).max(1);
                    let sopts = SubsampleOptions {
                        count,
                        mode: sub.mode,
                        lewis_iterations: sub.lewis_iterations,
                        seed: mix_seed(opts.seed, i as u64),
                    };
                    subsample_with_mode(&instance, &sopts)?.0
                }
                _ => instance,
            };
            Some((instance, names))
        } else {
            None
        };

        let score_table = ScoreTable::from_contests(training)?;

        for (mi, method) in methods.iter().enumerate() {
            let predictor = match &method.kind {
                MethodKind::Mean => Predictor::Scores(mean_ratings(&score_table)),
                MethodKind::Median => Predictor::Scores(median_ratings(&score_table)),
                MethodKind::Borda => Predictor::Order(borda_ratings(training)),
                MethodKind::Kemeny => Predictor::Order(kemeny_scores(training, test, &seen)?),
                MethodKind::Mf(rank) => {
                    let mf_opts = MfOptions {
                        rank: *rank,
                        learning_rate: opts.mf_learning_rate,
                        epochs: opts.mf_epochs,
                        init_value: opts.mf_init,
                    };
                    let model = mf_fit(&score_table, &mf_opts)?;
                    Predictor::Scores(mf_predict_new_contest(&model, &score_table))
                }
                MethodKind::QrjaL1 | MethodKind::QrjaL2 | MethodKind::QrjaLp(_) => {
                    let (instance, names) = qrja_state.as_ref().expect("prepared above");
                    let spec = match &method.kind {
                        MethodKind::QrjaL1 => crate::instance::LossSpec::l1(),
                        MethodKind::QrjaL2 => crate::instance::LossSpec::l2(),
                        MethodKind::QrjaLp(p) => crate::instance::LossSpec::new(*p)
                            .map_err(HarnessError::Instance)?,
                        _ => unreachable!(),
                    };
                    let result = solve(instance, &spec, &opts.solve)?;
                    let values = names
                        .iter()
                        .enumerate()
                        .map(|(idx, n)| (n.clone(), result.x.get(idx)))
                        .collect();
                    let component = names
                        .iter()
                        .enumerate()
                        .map(|(idx, n)| (n.clone(), result.x.components().label(idx)))
                        .collect();
                    Predictor::Ratings { values, component }
                }
            };

            // Pairwise predictions over the shared eligible set.
            let mut predictions = BTreeMap::new();
            for pair in &eligible {
                predictions
                    .insert((pair.u.clone(), pair.v.clone()), predictor.predict(&pair.u, &pair.v));
            }
            let ord = ordinal_accuracy(&predictions, &test.entries);
            let ordinal_pairs = eligible.iter().filter(|p| p.actual != 0.0).count();
            let (ql1, ql2) = if predictor.quantitative() {
                (
                    quantitative_loss(&predictions, &test.entries, 1),
                    quantitative_loss(&predictions, &test.entries, 2),
                )
            } else {
                (None, None)
            };
            records[mi].push(ContestRecord {
                contest: test.id.clone(),
                ordinal_accuracy: ord,
                ordinal_pairs,
                quantitative_loss_l1: ql1,
                quantitative_loss_l2: ql2,
                pair_count: eligible.len(),
            });

            // Entrywise score predictions, where the method supports them.
            let entry_preds: Option<&BTreeMap<String, f64>> = match (&method.kind, &predictor) {
                (MethodKind::Mean | MethodKind::Median, Predictor::Scores(map)) => Some(map),
                (MethodKind::Mf(MfRank::LowRank(_)), Predictor::Scores(map)) => Some(map),
                _ => None,
            };
            if let Some(map) = entry_preds {
                entry_applicable[mi] = true;
                for (name, actual) in &test.entries {
                    if let Some(pred) = map.get(name) {
                        let e = pred - actual;
                        entry_acc[mi][0] += e.abs();
                        entry_acc[mi][1] += actual.abs();
                        entry_acc[mi][2] += e * e;
                        entry_acc[mi][3] += actual * actual;
                    }
                }
            }
        }
    }

    let reports = methods
        .iter()
        .enumerate()
        .map(|(mi, method)| {
            let contests = std::mem::take(&mut records[mi]);
            let aggregate = aggregate_records(&contests, opts.weighting);
            let [e1, a1, e2, a2] = entry_acc[mi];
            let entrywise_l1 = (entry_applicable[mi] && a1 > 0.0).then(|| e1 / a1);
            let entrywise_l2 = (entry_applicable[mi] && a2 > 0.0).then(|| e2 / a2);
            EvalReport { method: method.name.clone(), contests, aggregate, entrywise_l1, entrywise_l2 }
        })
        .collect();
    Ok(reports)
}

/// Kemeny ranking restricted to the test contest's previously-seen
/// contestants; returns order scores (higher is better) for sign prediction.
fn kemeny_scores(
    training: &[Contest],
    test: &Contest,
    seen: &BTreeSet<String>,
) -> Result<BTreeMap<String, f64>, HarnessError> {
    let mut candidates: Vec<String> = test
        .entries
        .iter()
        .filter(|(n, _)| seen.contains(n))
        .map(|(n, _)| n.clone())
        .collect();
    candidates.sort();
    let mut scores = BTreeMap::new();
    if candidates.len() < 2 {
        for name in candidates {
            scores.insert(name, 0.0);
        }
        return Ok(scores);
    }
    let index: BTreeMap<&str, usize> =
        candidates.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let k = candidates.len();
    let mut prefer = vec![vec![0u64; k]; k];
    for contest in training {
        let present: Vec<(usize, f64)> = contest
            .entries
            .iter()
            .filter_map(|(n, s)| index.get(n.as_str()).map(|&i| (i, *s)))
            .collect();
        for (ai, &(u, su)) in present.iter().enumerate() {
            for &(v, sv) in present.iter().skip(ai + 1) {
                // strict preferences only; tied scores say nothing
                if su > sv {
                    prefer[u][v] += 1;
                } else if sv > su {
                    prefer[v][u] += 1;
                }
            }
        }
    }
    let ranking = kemeny_from_preferences(&prefer)?;
    for (pos, &ci) in ranking.order.iter().enumerate() {
        scores.insert(candidates[ci].clone(), -(pos as f64));
    }
    Ok(scores)
}

fn aggregate_records(records: &[ContestRecord], weighting: AggregateWeighting) -> EvalAggregate {
    let mut ord_num = 0.0;
    let mut ord_den = 0.0;
    let mut q1_num = 0.0;
    let mut q1_den = 0.0;
    let mut q2_num = 0.0;
    let mut q2_den = 0.0;
    let mut ordinal_pairs = 0usize;
    let mut pair_count = 0usize;
    for r in records {
        ordinal_pairs += r.ordinal_pairs;
        pair_count += r.pair_count;
        let (w_ord, w_pair) = match weighting {
            AggregateWeighting::Pair => (r.ordinal_pairs as f64, r.pair_count as f64),
            AggregateWeighting::Contest => (1.0, 1.0),
        };
        if let Some(a) = r.ordinal_accuracy {
            ord_num += a * w_ord;
            ord_den += w_ord;
        }
        if let Some(q) = r.quantitative_loss_l1 {
            q1_num += q * w_pair;
            q1_den += w_pair;
        }
        if let Some(q) = r.quantitative_loss_l2 {
            q2_num += q * w_pair;
            q2_den += w_pair;
        }
    }
    EvalAggregate {
        ordinal_accuracy: (ord_den > 0.0).then(|| ord_num / ord_den),
        quantitative_loss_l1: (q1_den > 0.0).then(|| q1_num / q1_den),
        quantitative_loss_l2: (q2_den > 0.0).then(|| q2_num / q2_den),
        ordinal_pairs,
        pair_count,
    }
}
