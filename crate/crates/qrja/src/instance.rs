//! Core domain types: judgments, instances, rating vectors, and the ℓp loss.
//!
//! A [`Judgment`] states that candidate `a` beats candidate `b` by `y` units,
//! with positive weight `w`. A [`QrjaInstance`] is a candidate count plus an
//! ordered list of judgments; solvers search for a rating vector `x` that
//! minimizes `Σ wᵢ·|x[aᵢ] − x[bᵢ] − yᵢ|^p`.
//!
//! The loss is invariant under adding a constant to all ratings within a
//! connected component of the judgment graph, so rating vectors are reported
//! in a fixed gauge: mean zero per component, isolated candidates pinned to 0.

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("judgment compares candidate {0} with itself")]
    SelfJudgment(usize),
    #[error("judgment weight must be positive and finite, got {0}")]
    InvalidWeight(f64),
    #[error("judgment offset must be finite, got {0}")]
    InvalidOffset(f64),
    #[error("candidate id {id} out of range for {n} candidates")]
    CandidateOutOfRange { id: usize, n: usize },
    #[error("rating vector has length {got}, instance has {expected} candidates")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("loss exponent must be positive and finite, got {0}")]
    InvalidExponent(f64),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("row {row}: {msg}")]
    Malformed { row: usize, msg: String },
}

/// One weighted relative claim: `a` is better than `b` by `y` units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Judgment {
    pub a: usize,
    pub b: usize,
    pub y: f64,
    pub w: f64,
}

impl Judgment {
    /// Rejects self-comparisons (they contribute a constant `|y|^p` and
    /// usually indicate an ingestion bug) and non-finite or non-positive data.
    pub fn new(a: usize, b: usize, y: f64, w: f64) -> Result<Self, InstanceError> {
        if a == b {
            return Err(InstanceError::SelfJudgment(a));
        }
        if !w.is_finite() || w <= 0.0 {
            return Err(InstanceError::InvalidWeight(w));
        }
        if !y.is_finite() {
            return Err(InstanceError::InvalidOffset(y));
        }
        Ok(Judgment { a, b, y, w })
    }
}

/// A candidate set of size `n` plus an ordered judgment list.
///
/// Duplicate `(a, b)` pairs are kept as separate judgments; merging them
/// would change the loss for p ≠ 1. Isolated candidates (no judgments) are
/// permitted; their rating is pinned to 0 by the gauge convention.
#[derive(Debug, Clone, PartialEq)]
pub struct QrjaInstance {
    n: usize,
    judgments: Vec<Judgment>,
}

impl QrjaInstance {
    pub fn new(n: usize, judgments: Vec<Judgment>) -> Result<Self, InstanceError> {
        for j in &judgments {
            let id = j.a.max(j.b);
            if id >= n {
                return Err(InstanceError::CandidateOutOfRange { id, n });
            }
        }
        Ok(QrjaInstance { n, judgments })
    }

    /// Convenience constructor from `(a, b, y, w)` tuples.
    pub fn from_tuples(n: usize, tuples: &[(usize, usize, f64, f64)]) -> Result<Self, InstanceError> {
        let judgments = tuples
            .iter()
            .map(|&(a, b, y, w)| Judgment::new(a, b, y, w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, judgments)
    }

    /// Convenience constructor for unit-weight judgments `(a, b, y)`.
    pub fn with_unit_weights(n: usize, tuples: &[(usize, usize, f64)]) -> Result<Self, InstanceError> {
        let judgments = tuples
            .iter()
            .map(|&(a, b, y)| Judgment::new(a, b, y, 1.0))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, judgments)
    }

    pub fn candidate_count(&self) -> usize {
        self.n
    }

    pub fn judgments(&self) -> &[Judgment] {
        &self.judgments
    }

    pub fn judgment_count(&self) -> usize {
        self.judgments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.judgments.is_empty()
    }

    /// Same judgment list with every weight replaced; used by reweighted solvers.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self, InstanceError> {
        assert_eq!(weights.len(), self.judgments.len());
        let judgments = self
            .judgments
            .iter()
            .zip(weights)
            .map(|(j, &w)| Judgment::new(j.a, j.b, j.y, w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QrjaInstance { n: self.n, judgments })
    }
}

/// Loss exponent p > 0; the per-judgment loss is `|x[a] − x[b] − y|^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossSpec {
    p: f64,
}

impl LossSpec {
    pub fn new(p: f64) -> Result<Self, InstanceError> {
        if !p.is_finite() || p <= 0.0 {
            return Err(InstanceError::InvalidExponent(p));
        }
        Ok(LossSpec { p })
    }

    pub fn l1() -> Self {
        LossSpec { p: 1.0 }
    }

    pub fn l2() -> Self {
        LossSpec { p: 2.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl fmt::Display for LossSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.p)
    }
}

/// Partition of candidates into connected components of the judgment graph.
///
/// Component labels are the smallest member id. Groups are sorted by label
/// and members within a group are sorted, so the partition is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Components {
    labels: Vec<usize>,
    groups: Vec<Vec<usize>>,
}

impl Components {
    /// Component label (smallest member id) for a candidate.
    pub fn label(&self, candidate: usize) -> usize {
        self.labels[candidate]
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn candidate_count(&self) -> usize {
        self.labels.len()
    }
}

/// Union-find over the undirected judgment graph.
pub fn connected_components(instance: &QrjaInstance) -> Components {
    let n = instance.candidate_count();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }

    for j in instance.judgments() {
        let ra = find(&mut parent, j.a);
        let rb = find(&mut parent, j.b);
        if ra != rb {
            // Root at the smaller id so labels come out as smallest members.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }

    let mut labels = vec![0usize; n];
    for v in 0..n {
        labels[v] = find(&mut parent, v);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    for v in 0..n {
        let root = labels[v];
        if group_of[root] == usize::MAX {
            group_of[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[root]].push(v);
    }
    // Roots are smallest members and candidates are visited in order, so
    // groups are already sorted by label with sorted members.
    Components { labels, groups }
}

/// Per-candidate ratings in the mean-zero-per-component gauge.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingVector {
    x: Vec<f64>,
    components: Components,
}

impl RatingVector {
    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn get(&self, candidate: usize) -> f64 {
        self.x[candidate]
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn components(&self) -> &Components {
        &self.components
    }
}

impl Serialize for RatingVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.x.serialize(serializer)
    }
}

/// Weighted ℓp loss `Σ wᵢ·|x[aᵢ] − x[bᵢ] − yᵢ|^p`.
pub fn qrja_loss(instance: &QrjaInstance, x: &[f64], spec: &LossSpec) -> Result<f64, InstanceError> {
    if x.len() != instance.candidate_count() {
        return Err(InstanceError::DimensionMismatch {
            got: x.len(),
            expected: instance.candidate_count(),
        });
    }
    let p = spec.p();
    let mut total = 0.0;
    if p == 1.0 {
        for j in instance.judgments() {
            total += j.w * (x[j.a] - x[j.b] - j.y).abs();
        }
    } else if p == 2.0 {
        for j in instance.judgments() {
            let r = x[j.a] - x[j.b] - j.y;
            total += j.w * r * r;
        }
    } else {
        for j in instance.judgments() {
            total += j.w * (x[j.a] - x[j.b] - j.y).abs().powf(p);
        }
    }
    Ok(total)
}

/// Shifts a raw rating vector into the reporting gauge: per connected
/// component subtract the component mean; isolated candidates become 0.
/// The loss is unchanged for every p.
pub fn normalize_gauge(x: &[f64], instance: &QrjaInstance) -> Result<RatingVector, InstanceError> {
    if x.len() != instance.candidate_count() {
        return Err(InstanceError::DimensionMismatch {
            got: x.len(),
            expected: instance.candidate_count(),
        });
    }
    let components = connected_components(instance);
    let mut out = x.to_vec();
    for group in components.groups() {
        if group.len() == 1 {
            out[group[0]] = 0.0;
            continue;
        }
        let mean = group.iter().map(|&v| x[v]).sum::<f64>() / group.len() as f64;
        for &v in group {
            out[v] = x[v] - mean;
        }
    }
    Ok(RatingVector { x: out, components })
}

/// Reads a judgment list from CSV with header `a,b,y,w`. The candidate count
/// is the largest id seen plus one.
pub fn read_judgments_csv<R: Read>(reader: R) -> Result<QrjaInstance, InstanceError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let mut judgments = Vec::new();
    let mut n = 0usize;
    for (idx, record) in rdr.records().enumerate() {
        let row = idx + 2; // header is row 1
        let record = record?;
        if record.len() != 4 {
            return Err(InstanceError::Malformed {
                row,
                msg: format!("expected 4 fields a,b,y,w, got {}", record.len()),
            });
        }
        let parse_usize = |i: usize, name: &str| -> Result<usize, InstanceError> {
            record[i].trim().parse::<usize>().map_err(|e| InstanceError::Malformed {
                row,
                msg: format!("bad {name} {:?}: {e}", &record[i]),
            })
        };
        let parse_f64 = |i: usize, name: &str| -> Result<f64, InstanceError> {
            record[i].trim().parse::<f64>().map_err(|e| InstanceError::Malformed {
                row,
                msg: format!("bad {name} {:?}: {e}", &record[i]),
            })
        };
        let a = parse_usize(0, "candidate a")?;
        let b = parse_usize(1, "candidate b")?;
        let y = parse_f64(2, "offset y")?;
        let w = parse_f64(3, "weight w")?;
        n = n.max(a + 1).max(b + 1);
        judgments.push(Judgment::new(a, b, y, w)?);
    }
    QrjaInstance::new(n, judgments)
}

pub fn read_judgments_csv_path<P: AsRef<Path>>(path: P) -> Result<QrjaInstance, InstanceError> {
    read_judgments_csv(File::open(path)?)
}

/// Writes a judgment list as CSV with header `a,b,y,w`.
pub fn write_judgments_csv<W: Write>(instance: &QrjaInstance, writer: W) -> Result<(), InstanceError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["a", "b", "y", "w"])?;
    for j in instance.judgments() {
        wtr.write_record([j.a.to_string(), j.b.to_string(), j.y.to_string(), j.w.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_judgments_csv_path<P: AsRef<Path>>(instance: &QrjaInstance, path: P) -> Result<(), InstanceError> {
    write_judgments_csv(instance, File::create(path)?)
}

/// Writes ratings as CSV with header `candidate,x`.
pub fn write_ratings_csv<W: Write>(ratings: &RatingVector, writer: W) -> Result<(), InstanceError> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["candidate", "x"])?;
    for (i, v) in ratings.values().iter().enumerate() {
        wtr.write_record([i.to_string(), v.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_ratings_csv_path<P: AsRef<Path>>(ratings: &RatingVector, path: P) -> Result<(), InstanceError> {
    write_ratings_csv(ratings, File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> QrjaInstance {
        QrjaInstance::with_unit_weights(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap()
    }

    #[test]
    fn judgment_rejects_self_comparison() {
        assert!(matches!(Judgment::new(2, 2, 1.0, 1.0), Err(InstanceError::SelfJudgment(2))));
    }

    #[test]
    fn judgment_rejects_bad_weight_and_offset() {
        assert!(Judgment::new(0, 1, 1.0, 0.0).is_err());
        assert!(Judgment::new(0, 1, 1.0, -2.0).is_err());
        assert!(Judgment::new(0, 1, 1.0, f64::NAN).is_err());
        assert!(Judgment::new(0, 1, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn instance_rejects_out_of_range_ids() {
        let j = Judgment::new(0, 3, 1.0, 1.0).unwrap();
        assert!(QrjaInstance::new(3, vec![j]).is_err());
    }

    #[test]
    fn loss_single_judgment_exact_fit() {
        let inst = QrjaInstance::with_unit_weights(2, &[(0, 1, 5.0)]).unwrap();
        let loss = qrja_loss(&inst, &[2.5, -2.5], &LossSpec::l1()).unwrap();
        assert_eq!(loss, 0.0);
    }

    #[test]
    fn loss_triangle_l1_hand_value() {
        // |0| + |0| + |2 − 3| = 1 at x = (1, 0, −1)
        let loss = qrja_loss(&triangle(), &[1.0, 0.0, -1.0], &LossSpec::l1()).unwrap();
        assert!((loss - 1.0).abs() < 1e-12);
    }

    #[test]
    fn loss_two_judgments_l2_hand_value() {
        // (4−3)² + (4−5)² = 2 at x = (2, −2)
        let inst = QrjaInstance::from_tuples(2, &[(0, 1, 3.0, 1.0), (0, 1, 5.0, 1.0)]).unwrap();
        let loss = qrja_loss(&inst, &[2.0, -2.0], &LossSpec::l2()).unwrap();
        assert!((loss - 2.0).abs() < 1e-12);
    }

    #[test]
    fn loss_length_mismatch_is_error() {
        assert!(matches!(
            qrja_loss(&triangle(), &[0.0, 0.0], &LossSpec::l1()),
            Err(InstanceError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn components_no_judgments_all_singletons() {
        let inst = QrjaInstance::new(3, vec![]).unwrap();
        let c = connected_components(&inst);
        assert_eq!(c.groups(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn components_chain_plus_isolate() {
        let inst = QrjaInstance::with_unit_weights(4, &[(0, 1, 0.0), (1, 2, 0.0)]).unwrap();
        let c = connected_components(&inst);
        assert_eq!(c.groups(), &[vec![0, 1, 2], vec![3]]);
        assert_eq!(c.label(2), 0);
        assert_eq!(c.label(3), 3);
    }

    #[test]
    fn components_two_pairs() {
        let inst = QrjaInstance::with_unit_weights(4, &[(0, 1, 0.0), (2, 3, 0.0)]).unwrap();
        let c = connected_components(&inst);
        assert_eq!(c.groups(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn gauge_removes_component_mean() {
        let inst = QrjaInstance::with_unit_weights(2, &[(0, 1, 0.0)]).unwrap();
        let r = normalize_gauge(&[5.0, 5.0], &inst).unwrap();
        assert_eq!(r.values(), &[0.0, 0.0]);
    }

    #[test]
    fn gauge_pins_isolated_candidates_to_zero() {
        let inst = QrjaInstance::new(2, vec![]).unwrap();
        let r = normalize_gauge(&[1.0, 3.0], &inst).unwrap();
        assert_eq!(r.values(), &[0.0, 0.0]);
    }

    #[test]
    fn gauge_subtracts_mean_on_connected_triangle() {
        let r = normalize_gauge(&[10.0, 8.0, 6.0], &triangle()).unwrap();
        assert_eq!(r.values(), &[2.0, 0.0, -2.0]);
    }

    #[test]
    fn gauge_preserves_loss() {
        let inst = triangle();
        for p in [0.5, 1.0, 1.5, 2.0, 3.0] {
            let spec = LossSpec::new(p).unwrap();
            let raw = [4.0, -1.0, 2.5];
            let before = qrja_loss(&inst, &raw, &spec).unwrap();
            let after = qrja_loss(&inst, normalize_gauge(&raw, &inst).unwrap().values(), &spec).unwrap();
            assert!((before - after).abs() < 1e-9 * before.max(1.0));
        }
    }

    #[test]
    fn judgments_csv_round_trip() {
        let inst = QrjaInstance::from_tuples(3, &[(0, 1, 1.5, 2.0), (1, 2, -0.25, 1.0)]).unwrap();
        let mut buf = Vec::new();
        write_judgments_csv(&inst, &mut buf).unwrap();
        let back = read_judgments_csv(buf.as_slice()).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn judgments_csv_reports_bad_rows() {
        let data = "a,b,y,w\n0,1,2.0,1.0\n1,1x,3.0,1.0\n";
        let err = read_judgments_csv(data.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("row 3"), "{err}");
    }

    #[test]
    fn ratings_csv_has_expected_shape() {
        let inst = QrjaInstance::with_unit_weights(2, &[(0, 1, 4.0)]).unwrap();
        let r = normalize_gauge(&[2.0, -2.0], &inst).unwrap();
        let mut buf = Vec::new();
        write_ratings_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "candidate,x\n0,2\n1,-2\n");
    }
}
