//! Max-Cut reduction showing the p < 1 objective is intractable.
//!
//! Given a graph on n vertices with m edges and an exponent p ∈ (0, 1), the
//! reduction builds an instance over n + 2 candidates (the vertices plus two
//! anchors) whose judgments are, in order:
//!
//! - `(v_t, v_s, 1)` with weight `w₁ = n·w₂ + 1`,
//! - `(v_s, u, 0)` with weight `w₂ = 2n/(1−p) + 1` for every vertex u,
//! - `(v_t, u, 0)` with weight `w₂` for every vertex u,
//! - `(u, v, 1)` and `(v, u, 1)` with weight 1 for every edge.
//!
//! With the anchors pinned at 0 and 1, any vertex assignment in {0, 1}
//! attains loss `n·w₂ + 2(m−k) + k·2^p` where k is the induced cut size;
//! since `2^p < 2`, minimizing the loss maximizes the cut. Rounding any
//! fractional vector coordinate-by-coordinate to the nearer anchor value
//! never increases the loss, which is what makes the equivalence exact.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::instance::{qrja_loss, InstanceError, Judgment, LossSpec, QrjaInstance};

#[derive(Debug, Error)]
pub enum HardnessError {
    #[error("exponent must satisfy 0 < p < 1, got {0}")]
    InvalidExponent(f64),
    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("edge ({0}, {1}) is invalid: {2}")]
    BadEdge(usize, usize, String),
    #[error("ratings are not integral on {{0, 1}}: x[{0}] = {1}")]
    NonIntegral(usize, f64),
    #[error("rating vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("({p}, {d}) outside the domain p in (0,1), d in (0, 1/2]")]
    DomainViolation { p: f64, d: f64 },
    #[error("malformed graph text: {0}")]
    Malformed(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Undirected graph without self-loops or duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCutGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MaxCutGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, HardnessError> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u == v {
                return Err(HardnessError::BadEdge(u, v, "self-loop".into()));
            }
            if u >= n || v >= n {
                return Err(HardnessError::BadEdge(u, v, format!("vertex out of range for n = {n}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(HardnessError::BadEdge(u, v, "duplicate edge".into()));
            }
        }
        Ok(MaxCutGraph { n, edges })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        MaxCutGraph { n, edges }
    }

    pub fn path(n: usize) -> Self {
        MaxCutGraph { n, edges: (0..n.saturating_sub(1)).map(|u| (u, u + 1)).collect() }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|u| (u, u + 1)).collect();
        edges.push((0, n - 1));
        MaxCutGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges crossing the partition given by `side[u]`.
    pub fn cut_size(&self, side: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| side[u] != side[v]).count()
    }
}

/// Parses the edge-list text format: first line `n`, one `u v` pair per
/// following non-empty line.
pub fn parse_graph(text: &str) -> Result<MaxCutGraph, HardnessError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| HardnessError::Malformed("empty input".into()))?
        .parse()
        .map_err(|e| HardnessError::Malformed(format!("bad vertex count: {e}")))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .ok_or_else(|| HardnessError::Malformed(format!("bad edge line {line:?}")))?
            .parse()
            .map_err(|e| HardnessError::Malformed(format!("bad edge line {line:?}: {e}")))?;
        let v: usize = it
            .next()
            .ok_or_else(|| HardnessError::Malformed(format!("bad edge line {line:?}")))?
            .parse()
            .map_err(|e| HardnessError::Malformed(format!("bad edge line {line:?}: {e}")))?;
        if it.next().is_some() {
            return Err(HardnessError::Malformed(format!("trailing tokens in {line:?}")));
        }
        edges.push((u, v));
    }
    MaxCutGraph::new(n, edges)
}

/// The constructed instance plus its parameters and anchor indices.
#[derive(Debug, Clone)]
pub struct ReductionInstance {
    pub instance: QrjaInstance,
    pub p: f64,
    pub w1: f64,
    pub w2: f64,
    /// Vertices are candidates `0..n`; the anchors follow.
    pub v_s: usize,
    pub v_t: usize,
}

pub fn build_reduction(graph: &MaxCutGraph, p: f64) -> Result<ReductionInstance, HardnessError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(HardnessError::InvalidExponent(p));
    }
    let n = graph.vertex_count();
    let w2 = 2.0 * n as f64 / (1.0 - p) + 1.0;
    let w1 = n as f64 * w2 + 1.0;
    let v_s = n;
    let v_t = n + 1;

    let mut judgments = Vec::with_capacity(1 + 2 * n + 2 * graph.edge_count());
    judgments.push(Judgment::new(v_t, v_s, 1.0, w1)?);
    for u in 0..n {
        judgments.push(Judgment::new(v_s, u, 0.0, w2)?);
    }
    for u in 0..n {
        judgments.push(Judgment::new(v_t, u, 0.0, w2)?);
    }
    for &(u, v) in graph.edges() {
        judgments.push(Judgment::new(u, v, 1.0, 1.0)?);
        judgments.push(Judgment::new(v, u, 1.0, 1.0)?);
    }
    Ok(ReductionInstance { instance: QrjaInstance::new(n + 2, judgments)?, p, w1, w2, v_s, v_t })
}

/// Shifts so the source anchor sits at 0, pins the target anchor to 1, and
/// snaps every vertex to the nearer of {0, 1} (ties to 0). Each move weakly
/// decreases the loss, so the rounded vector never does worse than the
/// input; this is asserted.
pub fn round_solution(x: &[f64], reduction: &ReductionInstance) -> Result<Vec<f64>, HardnessError> {
    let n = reduction.instance.candidate_count();
    if x.len() != n {
        return Err(HardnessError::DimensionMismatch { got: x.len(), expected: n });
    }
    let spec = LossSpec::new(reduction.p).expect("validated exponent");
    let before = qrja_loss(&reduction.instance, x, &spec)?;

    let shift = x[reduction.v_s];
    let mut out: Vec<f64> = x.iter().map(|v| v - shift).collect();
    out[reduction.v_t] = 1.0;
    for u in 0..n - 2 {
        out[u] = if out[u] <= 0.5 { 0.0 } else { 1.0 };
    }
    let after = qrja_loss(&reduction.instance, &out, &spec)?;
    assert!(
        after <= before + 1e-9 * before.abs().max(1.0),
        "rounding increased the loss: {before} -> {after}"
    );
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CutExtraction {
    pub side_s: Vec<usize>,
    pub side_t: Vec<usize>,
    pub cut_size: usize,
    pub loss: f64,
}

/// Reads the partition out of an integral rating vector and checks the loss
/// identity `loss = n·w₂ + 2(m−k) + k·2^p`.
pub fn extract_cut(x: &[f64], reduction: &ReductionInstance) -> Result<CutExtraction, HardnessError> {
    let n_all = reduction.instance.candidate_count();
    if x.len() != n_all {
        return Err(HardnessError::DimensionMismatch { got: x.len(), expected: n_all });
    }
    if x[reduction.v_s] != 0.0 {
        return Err(HardnessError::NonIntegral(reduction.v_s, x[reduction.v_s]));
    }
    if x[reduction.v_t] != 1.0 {
        return Err(HardnessError::NonIntegral(reduction.v_t, x[reduction.v_t]));
    }
    let n = n_all - 2;
    let mut side_s = Vec::new();
    let mut side_t = Vec::new();
    for u in 0..n {
        if x[u] == 0.0 {
            side_s.push(u);
        } else if x[u] == 1.0 {
            side_t.push(u);
        } else {
            return Err(HardnessError::NonIntegral(u, x[u]));
        }
    }
    let spec = LossSpec::new(reduction.p).expect("validated exponent");
    let loss = qrja_loss(&reduction.instance, x, &spec)?;
    let m = (reduction.instance.judgment_count() - 1 - 2 * n) / 2;
    let k = {
        let mut in_t = vec![false; n];
        for &u in &side_t {
            in_t[u] = true;
        }
        reduction
            .instance
            .judgments()
            .iter()
            .skip(1 + 2 * n)
            .step_by(2)
            .filter(|j| in_t[j.a] != in_t[j.b])
            .count()
    };
    let expected = n as f64 * reduction.w2 + 2.0 * (m - k) as f64 + k as f64 * 2f64.powf(reduction.p);
    if (loss - expected).abs() > 1e-9 * expected.max(1.0) {
        return Err(HardnessError::Malformed(format!(
            "loss identity violated: loss {loss}, expected {expected}"
        )));
    }
    Ok(CutExtraction { side_s, side_t, cut_size: k, loss })
}

const BRUTEFORCE_LIMIT: usize = 20;

/// Exact maximum cut by enumerating all 2^{n−1} partitions (vertex 0 fixed).
pub fn bruteforce_maxcut(graph: &MaxCutGraph) -> Result<usize, HardnessError> {
    let n = graph.vertex_count();
    if n > BRUTEFORCE_LIMIT {
        return Err(HardnessError::TooLarge { n, max: BRUTEFORCE_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut best = 0;
    let mut side = vec![false; n];
    for mask in 0..(1usize << (n - 1)) {
        for (v, s) in side.iter_mut().enumerate().skip(1) {
            *s = mask & (1 << (v - 1)) != 0;
        }
        best = best.max(graph.cut_size(&side));
    }
    Ok(best)
}

/// Evaluates `1 − (1−d)^p ≤ p·d^p` on its stated domain.
pub fn check_relaxation_inequality(p: f64, d: f64) -> Result<bool, HardnessError> {
    if !(p > 0.0 && p < 1.0) || !(d > 0.0 && d <= 0.5) {
        return Err(HardnessError::DomainViolation { p, d });
    }
    Ok(1.0 - (1.0 - d).powf(p) <= p * d.powf(p))
}

const VERIFY_LIMIT: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub maxcut: usize,
    pub min_integral_loss: f64,
    pub expected_loss: f64,
    pub identity_holds: bool,
}

/// Exhaustively checks, for a small graph, that the minimum loss over all
/// integral vertex assignments (anchors pinned) equals
/// `n·w₂ + 2(m−k*) + k*·2^p` with k* the brute-force maximum cut.
pub fn verify_reduction(
    graph: &MaxCutGraph,
    reduction: &ReductionInstance,
) -> Result<VerificationReport, HardnessError> {
    let n = graph.vertex_count();
    if n > VERIFY_LIMIT {
        return Err(HardnessError::TooLarge { n, max: VERIFY_LIMIT });
    }
    let spec = LossSpec::new(reduction.p).expect("validated exponent");
    let mut x = vec![0.0; n + 2];
    x[reduction.v_t] = 1.0;
    let mut min_loss = f64::INFINITY;
    for mask in 0..(1usize << n) {
        for u in 0..n {
            x[u] = if mask & (1 << u) != 0 { 1.0 } else { 0.0 };
        }
        let loss = qrja_loss(&reduction.instance, &x, &spec)?;
        min_loss = min_loss.min(loss);
    }
    let maxcut = bruteforce_maxcut(graph)?;
    let m = graph.edge_count();
    let expected = n as f64 * reduction.w2
        + 2.0 * (m - maxcut) as f64
        + maxcut as f64 * 2f64.powf(reduction.p);
    let identity_holds = (min_loss - expected).abs() <= 1e-9 * expected.max(1.0);
    Ok(VerificationReport { maxcut, min_integral_loss: min_loss, expected_loss: expected, identity_holds })
}
