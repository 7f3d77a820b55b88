//! Three small race tables where per-contestant means or medians point the
//! wrong way, while relative-judgment aggregation gets the order right.
//!
//! Scores are negated finishing times in minutes, so larger is better.
//!
//! ```bash
//! cargo run --example race_tables
//! ```

use qrja::baselines::{mean_ratings, median_ratings, ScoreTable};
use qrja::harness::{contests_to_judgments, Contest};
use qrja::solvers::{solve_l1, solve_l2, SolveOptions};

fn contest(id: &str, entries: &[(&str, f64)]) -> Contest {
    Contest {
        id: id.to_string(),
        entries: entries.iter().map(|(n, s)| (n.to_string(), *s)).collect(),
    }
}

fn show(label: &str, contests: &[Contest], pair: (&str, &str), baseline: &str) {
    let (inst, names) = contests_to_judgments(contests).expect("valid contests");
    let opts = SolveOptions::default();
    let l1 = solve_l1(&inst, &opts).expect("solvable");
    let l2 = solve_l2(&inst, &opts);
    let idx = |name: &str| names.iter().position(|n| n == name).expect("known name");

    let table = ScoreTable::from_contests(contests).expect("valid table");
    let base = match baseline {
        "mean" => mean_ratings(&table),
        _ => median_ratings(&table),
    };

    let (u, v) = pair;
    println!("{label}");
    println!("  ratings (l1):  {u} {:+.3}  {v} {:+.3}", l1.x.get(idx(u)), l1.x.get(idx(v)));
    println!("  ratings (l2):  {u} {:+.3}  {v} {:+.3}", l2.x.get(idx(u)), l2.x.get(idx(v)));
    println!("  {baseline} scores: {u} {:+.3}  {v} {:+.3}", base[u], base[v]);
    let rating_order = if l2.x.get(idx(u)) > l2.x.get(idx(v)) { format!("{u} > {v}") } else { format!("{v} > {u}") };
    let base_order = if base[u] > base[v] { format!("{u} > {v}") } else { format!("{v} > {u}") };
    println!("  -> ratings say {rating_order}, {baseline} says {base_order}\n");
}

fn main() {
    // Charlie only entered the easiest race, so his raw average looks better
    // than Bob's even though Bob beat him head-to-head.
    show(
        "Table 1: one contestant only enters the easy race",
        &[
            contest("boston", &[("alice", -240.0), ("bob", -251.0)]),
            contest("newyork", &[("alice", -250.0), ("bob", -258.0)]),
            contest("chicago", &[("alice", -230.0), ("bob", -241.0), ("charlie", -249.0)]),
        ],
        ("bob", "charlie"),
        "mean",
    );

    // Alice and Charlie never met; only the chain alice > bob > charlie
    // connects them, and averages ignore it.
    show(
        "Table 2: transitive evidence through a shared opponent",
        &[
            contest("boston", &[("bob", -251.0)]),
            contest("newyork", &[("alice", -250.0), ("bob", -258.0)]),
            contest("chicago", &[("bob", -241.0), ("charlie", -249.0)]),
        ],
        ("alice", "charlie"),
        "mean",
    );

    // With high difficulty variance everyone's median lands in the same
    // race, discarding the other two.
    show(
        "Table 3: medians collapse to a single race",
        &[
            contest("boston", &[("alice", -240.0), ("bob", -251.0), ("charlie", -250.0)]),
            contest("newyork", &[("alice", -250.0), ("bob", -258.0), ("charlie", -272.0)]),
            contest("chicago", &[("alice", -230.0), ("bob", -241.0), ("charlie", -249.0)]),
        ],
        ("bob", "charlie"),
        "median",
    );
}
