//! Pairwise prediction metrics.

use std::collections::BTreeMap;

/// Fraction of predicted pair orderings whose sign matches the realized
/// score difference, over pairs present in `predictions` whose contestants
/// have different scores in the contest. A predicted exact tie earns half
/// credit. `None` when no pair is eligible.
pub fn ordinal_accuracy(
    predictions: &BTreeMap<(String, String), f64>,
    results: &[(String, f64)],
) -> Option<f64> {
    let scores: BTreeMap<&str, f64> = results.iter().map(|(n, s)| (n.as_str(), *s)).collect();
    let mut correct = 0.0;
    let mut total = 0usize;
    for ((u, v), &pred) in predictions {
        let (Some(&su), Some(&sv)) = (scores.get(u.as_str()), scores.get(v.as_str())) else {
            continue;
        };
        let actual = su - sv;
        if actual == 0.0 {
            continue;
        }
        total += 1;
        if pred == 0.0 {
            correct += 0.5;
        } else if (pred > 0.0) == (actual > 0.0) {
            correct += 1.0;
        }
    }
    (total > 0).then(|| correct / total as f64)
}

/// Mean |prediction − realized difference|^exponent over pairs present in
/// `predictions`, normalized by the same mean for the all-zeros prediction.
/// `None` when no pair is eligible or the normalizer is zero (every realized
/// difference is a tie).
pub fn quantitative_loss(
    predictions: &BTreeMap<(String, String), f64>,
    results: &[(String, f64)],
    exponent: u32,
) -> Option<f64> {
    assert!(exponent == 1 || exponent == 2, "exponent must be 1 or 2");
    let scores: BTreeMap<&str, f64> = results.iter().map(|(n, s)| (n.as_str(), *s)).collect();
    let mut err = 0.0;
    let mut base = 0.0;
    let mut any = false;
    for ((u, v), &pred) in predictions {
        let (Some(&su), Some(&sv)) = (scores.get(u.as_str()), scores.get(v.as_str())) else {
            continue;
        };
        any = true;
        let actual = su - sv;
        let e = (pred - actual).abs();
        if exponent == 1 {
            err += e;
            base += actual.abs();
        } else {
            err += e * e;
            base += actual * actual;
        }
    }
    (any && base > 0.0).then(|| err / base)
}
