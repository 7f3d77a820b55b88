//! Chronological backtest on a synthetic contest series: train each method
//! on contests 1..i−1, predict contest i, and compare ordinal accuracy and
//! normalized quantitative loss.
//!
//! ```bash
//! cargo run --example backtesting
//! ```

use qrja::harness::{parse_method, run_evaluation, synth_series, EvalOptions, SynthParams};

fn main() {
    // Latent additive world: score = ability + contest difficulty + noise.
    let series = synth_series(&SynthParams {
        n_contestants: 12,
        n_contests: 25,
        participation_rate: 0.6,
        ability_sd: 1.0,
        difficulty_sd: 2.0,
        noise_sd: 0.3,
        seed: 42,
    })
    .expect("valid parameters");

    let methods: Vec<_> = ["qrja-l1", "qrja-l2", "mean", "median", "borda", "kemeny", "mf-additive"]
        .iter()
        .map(|name| parse_method(name).expect("registered method"))
        .collect();

    let reports = run_evaluation(&series, &methods, &EvalOptions::default()).expect("evaluable");

    println!(
        "{} contests, {} contestants, noise sd 0.3, difficulty sd 2.0\n",
        series.len(),
        12
    );
    println!("{:<12} {:>9} {:>12} {:>12} {:>7}", "method", "accuracy", "quant-l1", "quant-l2", "pairs");
    for report in &reports {
        let agg = &report.aggregate;
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.4}"));
        println!(
            "{:<12} {:>9} {:>12} {:>12} {:>7}",
            report.method,
            fmt(agg.ordinal_accuracy),
            fmt(agg.quantitative_loss_l1),
            fmt(agg.quantitative_loss_l2),
            agg.pair_count
        );
    }

    // Accuracy trajectory of the two rating methods over the series.
    println!("\nper-contest ordinal accuracy:");
    println!("{:<8} {:>8} {:>8}", "contest", "qrja-l1", "mean");
    let l1 = &reports[0];
    let mean = &reports[2];
    for (a, b) in l1.contests.iter().zip(&mean.contests) {
        let fmt = |v: Option<f64>| v.map_or("   -".to_string(), |x| format!("{x:.2}"));
        println!("{:<8} {:>8} {:>8}", a.contest, fmt(a.ordinal_accuracy), fmt(b.ordinal_accuracy));
    }
}
