//! Harness-level invariants: shift invariance of judgment construction,
//! metric bounds, shared pair eligibility, and aggregate consistency.

mod common;

use common::contest;
use qrja::harness::{
    parse_method, run_evaluation, synth_series, AggregateWeighting, ContestSeries, EvalOptions,
    EvalSubsample, SynthParams,
};
use qrja::solvers::SolveOptions;
use qrja::subsample::WeightsMode;

fn synth(seed: u64, noise: f64) -> ContestSeries {
    synth_series(&SynthParams {
        n_contestants: 7,
        n_contests: 8,
        participation_rate: 0.75,
        ability_sd: 1.0,
        difficulty_sd: 1.5,
        noise_sd: noise,
        seed,
    })
    .unwrap()
}

/// Adding a constant to every score of one training contest cancels in all
/// within-contest differences, so rating-method reports are unchanged.
#[test]
fn shift_invariance_of_training_contest() {
    let series = synth(3, 0.4);
    let mut shifted_contests = series.contests().to_vec();
    for entry in &mut shifted_contests[1].entries {
        entry.1 += 250.0;
    }
    let shifted = ContestSeries::new(shifted_contests).unwrap();

    let methods = [parse_method("qrja-l1").unwrap(), parse_method("qrja-l2").unwrap()];
    let opts = EvalOptions::default();
    let a = run_evaluation(&series, &methods, &opts).unwrap();
    let b = run_evaluation(&shifted, &methods, &opts).unwrap();
    for (ra, rb) in a.iter().zip(&b) {
        for (ca, cb) in ra.contests.iter().zip(&rb.contests) {
            // contest 2 itself is also a test contest once; its own metrics
            // legitimately change when its scores move, so skip that index
            if ca.contest == "0002" {
                continue;
            }
            assert_eq!(ca.pair_count, cb.pair_count);
            match (ca.ordinal_accuracy, cb.ordinal_accuracy) {
                (Some(x), Some(y)) => assert!((x - y).abs() < 1e-9, "{}", ca.contest),
                (None, None) => {}
                other => panic!("accuracy presence diverged: {other:?}"),
            }
            match (ca.quantitative_loss_l1, cb.quantitative_loss_l1) {
                (Some(x), Some(y)) => assert!((x - y).abs() < 1e-6, "{}", ca.contest),
                (None, None) => {}
                other => panic!("loss presence diverged: {other:?}"),
            }
        }
    }
}

#[test]
fn metric_bounds_hold_on_noisy_data() {
    let methods = [
        parse_method("qrja-l1").unwrap(),
        parse_method("qrja-l2").unwrap(),
        parse_method("qrja-lp:1.5").unwrap(),
        parse_method("mean").unwrap(),
        parse_method("median").unwrap(),
        parse_method("borda").unwrap(),
        parse_method("kemeny").unwrap(),
        parse_method("mf-additive").unwrap(),
    ];
    for seed in [0, 1, 2] {
        let series = synth(seed, 1.0);
        let reports = run_evaluation(&series, &methods, &EvalOptions::default()).unwrap();
        for rep in &reports {
            for rec in &rep.contests {
                if let Some(a) = rec.ordinal_accuracy {
                    assert!((0.0..=1.0).contains(&a), "{} {}: accuracy {a}", rep.method, rec.contest);
                }
                for q in [rec.quantitative_loss_l1, rec.quantitative_loss_l2].into_iter().flatten() {
                    assert!(q >= 0.0, "{} {}: loss {q}", rep.method, rec.contest);
                }
            }
            if let Some(a) = rep.aggregate.ordinal_accuracy {
                assert!((0.0..=1.0).contains(&a));
            }
        }
    }
}

/// Every method is scored on the identical eligible pair set per contest.
#[test]
fn pair_eligibility_is_method_agnostic() {
    let methods = [
        parse_method("qrja-l1").unwrap(),
        parse_method("mean").unwrap(),
        parse_method("borda").unwrap(),
        parse_method("mf-r1").unwrap(),
    ];
    let series = synth(9, 0.5);
    let reports = run_evaluation(&series, &methods, &EvalOptions::default()).unwrap();
    for i in 0..reports[0].contests.len() {
        let counts: Vec<usize> = reports.iter().map(|r| r.contests[i].pair_count).collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "contest {i}: {counts:?}");
        let ord: Vec<usize> = reports.iter().map(|r| r.contests[i].ordinal_pairs).collect();
        assert!(ord.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn aggregates_match_both_weighting_modes() {
    let series = synth(4, 0.6);
    let methods = [parse_method("qrja-l2").unwrap()];
    for weighting in [AggregateWeighting::Pair, AggregateWeighting::Contest] {
        let opts = EvalOptions { weighting, ..EvalOptions::default() };
        let rep = &run_evaluation(&series, &methods, &opts).unwrap()[0];
        let mut num = 0.0;
        let mut den = 0.0;
        for rec in &rep.contests {
            if let Some(q) = rec.quantitative_loss_l1 {
                let w = match weighting {
                    AggregateWeighting::Pair => rec.pair_count as f64,
                    AggregateWeighting::Contest => 1.0,
                };
                num += q * w;
                den += w;
            }
        }
        let expected = num / den;
        let got = rep.aggregate.quantitative_loss_l1.unwrap();
        assert!((got - expected).abs() < 1e-12, "{weighting:?}: {got} vs {expected}");
    }
}

/// An evaluation with uniform resampling at rate 1.0 changes metrics only
/// through the resampled weights, stays deterministic, and keeps bounds.
#[test]
fn subsampled_evaluation_is_sane() {
    let series = synth(12, 0.3);
    let methods = [parse_method("qrja-l1").unwrap(), parse_method("qrja-l2").unwrap()];
    let opts = EvalOptions {
        subsample: Some(EvalSubsample {
            alpha: 1.0,
            mode: WeightsMode::Uniform,
            lewis_iterations: 20,
        }),
        seed: 21,
        ..EvalOptions::default()
    };
    let a = run_evaluation(&series, &methods, &opts).unwrap();
    let b = run_evaluation(&series, &methods, &opts).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap(),
        "same seed must reproduce the run"
    );
    for rep in &a {
        for rec in &rep.contests {
            if let Some(acc) = rec.ordinal_accuracy {
                assert!((0.0..=1.0).contains(&acc));
            }
        }
    }
    // a different seed resamples differently
    let opts2 = EvalOptions { seed: 22, ..opts };
    let c = run_evaluation(&series, &methods, &opts2).unwrap();
    assert_ne!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&c).unwrap(),
        "different seeds should draw different subsamples"
    );
}

/// Tightening the solve tolerance changes qrja-l2 losses only marginally.
#[test]
fn tolerance_stability() {
    let series = synth(5, 0.2);
    let methods = [parse_method("qrja-l2").unwrap()];
    let loose = run_evaluation(&series, &methods, &EvalOptions::default()).unwrap();
    let tight = run_evaluation(
        &series,
        &methods,
        &EvalOptions {
            solve: SolveOptions { tolerance: 1e-13, ..SolveOptions::default() },
            ..EvalOptions::default()
        },
    )
    .unwrap();
    for (a, b) in loose[0].contests.iter().zip(&tight[0].contests) {
        if let (Some(x), Some(y)) = (a.quantitative_loss_l1, b.quantitative_loss_l1) {
            assert!((x - y).abs() < 1e-6);
        }
    }
}

/// Contest entries that tie exactly drop out of the ordinal pair count but
/// stay in the quantitative one.
#[test]
fn tied_scores_split_the_two_pair_counts() {
    let series = ContestSeries::new(vec![
        contest("1", &[("a", 3.0), ("b", 2.0), ("c", 1.0)]),
        contest("2", &[("a", 5.0), ("b", 5.0), ("c", 1.0)]),
    ])
    .unwrap();
    let methods = [parse_method("mean").unwrap()];
    let reports = run_evaluation(&series, &methods, &EvalOptions::default()).unwrap();
    let rec = &reports[0].contests[0];
    assert_eq!(rec.pair_count, 3);
    assert_eq!(rec.ordinal_pairs, 2); // the (a, b) tie is excluded
}
