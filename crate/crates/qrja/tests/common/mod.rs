//! Shared fixtures and generators for the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qrja::harness::{Contest, ContestSeries};
use qrja::instance::{connected_components, QrjaInstance};

/// Deterministic small random instance: n in 2..=max_n, m in 1..=max_m,
/// integer offsets in [−y_range, y_range], weights drawn from `weights`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_m: usize,
    y_range: i64,
    weights: &[f64],
) -> QrjaInstance {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..=max_m);
    let mut tuples = Vec::with_capacity(m);
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let y = rng.gen_range(-y_range..=y_range) as f64;
        let w = weights[rng.gen_range(0..weights.len())];
        tuples.push((a, b, y, w));
    }
    QrjaInstance::from_tuples(n, &tuples).expect("valid tuples")
}

/// Safe grid radius for the brute-force oracle. For p in {1, 2} some optimum
/// has every coordinate within the largest spanning-tree path offset of its
/// component's pinned candidate (an l1 vertex solution zeroes the residuals
/// of a spanning forest; the l2 solution is a convex combination of such
/// tree solutions), and any tree path offset is at most the sum of the
/// (component size − 1) largest |y| in the component.
pub fn oracle_radius(instance: &QrjaInstance) -> f64 {
    let comps = connected_components(instance);
    let mut radius = 0.0f64;
    for group in comps.groups() {
        if group.len() < 2 {
            continue;
        }
        let label = group[0];
        let mut magnitudes: Vec<f64> = instance
            .judgments()
            .iter()
            .filter(|j| comps.label(j.a) == label)
            .map(|j| j.y.abs())
            .collect();
        magnitudes.sort_by(|a, b| b.partial_cmp(a).expect("finite offsets"));
        let bound: f64 = magnitudes.iter().take(group.len() - 1).sum();
        radius = radius.max(bound);
    }
    radius
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn contest(id: &str, entries: &[(&str, f64)]) -> Contest {
    Contest {
        id: id.to_string(),
        entries: entries.iter().map(|(n, s)| (n.to_string(), *s)).collect(),
    }
}

/// The three-race table where a contestant entered only the easiest race
/// (finishing times in minutes; scores are negated minutes).
pub fn figure1_series() -> ContestSeries {
    ContestSeries::new(vec![
        contest("1", &[("alice", -240.0), ("bob", -251.0)]),
        contest("2", &[("alice", -250.0), ("bob", -258.0)]),
        contest("3", &[("alice", -230.0), ("bob", -241.0), ("charlie", -249.0)]),
    ])
    .expect("valid series")
}

/// The missing-data variant: the transitive chain alice > bob > charlie is
/// the only information connecting alice and charlie.
pub fn figure2_series() -> ContestSeries {
    ContestSeries::new(vec![
        contest("1", &[("bob", -251.0)]),
        contest("2", &[("alice", -250.0), ("bob", -258.0)]),
        contest("3", &[("bob", -241.0), ("charlie", -249.0)]),
    ])
    .expect("valid series")
}

/// The high-variance table where everyone's median race is the same one.
pub fn figure3_series() -> ContestSeries {
    ContestSeries::new(vec![
        contest("1", &[("alice", -240.0), ("bob", -251.0), ("charlie", -250.0)]),
        contest("2", &[("alice", -250.0), ("bob", -258.0), ("charlie", -272.0)]),
        contest("3", &[("alice", -230.0), ("bob", -241.0), ("charlie", -249.0)]),
    ])
    .expect("valid series")
}
