//! Tour of the comparison methods: mean/median imputation, normalized Borda
//! points, exact Kemeny-Young aggregation, and matrix factorization.
//!
//! ```bash
//! cargo run --example baseline_methods
//! ```

use qrja::baselines::{
    borda_contest_points, kemeny_ranking, mean_ratings, median_ratings, mf_fit,
    mf_predict_new_contest, MfOptions, ScoreTable,
};
use qrja::harness::Contest;

fn contest(id: &str, entries: &[(&str, f64)]) -> Contest {
    Contest {
        id: id.to_string(),
        entries: entries.iter().map(|(n, s)| (n.to_string(), *s)).collect(),
    }
}

fn main() {
    let contests = vec![
        contest("week1", &[("dana", 9.0), ("eli", 7.0), ("fred", 4.0)]),
        contest("week2", &[("dana", 6.0), ("eli", 8.0)]),
        contest("week3", &[("eli", 5.0), ("fred", 5.0), ("dana", 8.0)]),
    ];
    let table = ScoreTable::from_contests(&contests).expect("valid");

    println!("mean scores:   {:?}", mean_ratings(&table));
    println!("median scores: {:?}\n", median_ratings(&table));

    // Normalized Borda: rank i of n earns 1 − 2(i−1)/(n−1); ties share the
    // average of the positions they cover.
    for c in &contests {
        println!("borda points in {}: {:?}", c.id, borda_contest_points(&c.entries));
    }

    // Kemeny-Young on a profile with a preference cycle: the exact subset
    // DP finds an order with the minimum number of pairwise disagreements.
    let rankings = vec![
        vec![0, 1, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![0, 1, 2],
    ];
    let kemeny = kemeny_ranking(&rankings).expect("nonempty");
    println!(
        "\nkemeny over a cyclic profile: order {:?}, {} disagreements, exact = {}",
        kemeny.order, kemeny.disagreements, kemeny.exact
    );

    // Rank-1 matrix factorization on an exactly factorable table.
    let exact = vec![
        contest("c1", &[("p", 1.0), ("q", 2.0)]),
        contest("c2", &[("p", 3.0), ("q", 6.0)]),
    ];
    let table = ScoreTable::from_contests(&exact).expect("valid");
    let model = mf_fit(&table, &MfOptions { learning_rate: 0.05, ..MfOptions::low_rank(1) })
        .expect("converges");
    println!(
        "\nrank-1 factorization: final training loss {:.2e} after {} epochs",
        model.final_loss(),
        model.loss_trace.len() - 1
    );
    println!("new-contest predictions: {:?}", mf_predict_new_contest(&model, &table));
}
