//! File-based workflow: parse a contest CSV, build judgments, solve, and
//! serialize ratings — the same steps the `qrja` binary wires together.
//!
//! ```bash
//! cargo run --example csv_workflow
//! ```

use qrja::harness::{contests_to_judgments, read_contest_csv, write_contest_csv};
use qrja::instance::{read_judgments_csv, write_judgments_csv, write_ratings_csv};
use qrja::solvers::{solve_l1, SolveOptions};

fn main() {
    let csv = "\
contest,contestant,score
2023-01,ada,14.5
2023-01,ben,12.0
2023-02,ada,9.0
2023-02,cal,11.0
2023-03,ben,13.0
2023-03,cal,12.5
";
    let series = read_contest_csv(csv.as_bytes()).expect("well-formed csv");
    println!("parsed {} contests", series.len());

    // Judgments from the whole series: one per contest and pair, offset =
    // score difference, unit weights.
    let (instance, names) = contests_to_judgments(series.contests()).expect("valid");
    let mut judgments_csv = Vec::new();
    write_judgments_csv(&instance, &mut judgments_csv).expect("serializable");
    println!("\njudgments ({} rows):", instance.judgment_count());
    print!("{}", String::from_utf8(judgments_csv.clone()).unwrap());

    // Round-trip through the CSV form, then solve.
    let reread = read_judgments_csv(judgments_csv.as_slice()).expect("round trip");
    let result = solve_l1(&reread, &SolveOptions::default()).expect("solvable");
    println!("\nl1 loss {:.4}, converged = {}", result.loss, result.converged);

    let mut ratings_csv = Vec::new();
    write_ratings_csv(&result.x, &mut ratings_csv).expect("serializable");
    println!("\nratings:");
    print!("{}", String::from_utf8(ratings_csv).unwrap());
    println!("\ncandidate order: {names:?}");

    let mut contests_out = Vec::new();
    write_contest_csv(&series, &mut contests_out).expect("serializable");
    assert_eq!(read_contest_csv(contests_out.as_slice()).unwrap(), series);
    println!("\ncontest csv round-trips losslessly");
}
