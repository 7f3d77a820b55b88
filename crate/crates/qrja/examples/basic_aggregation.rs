//! Build a judgment list in code, solve it under three different loss
//! exponents, and compare the fitted ratings.
//!
//! ```bash
//! cargo run --example basic_aggregation
//! ```

use qrja::instance::{LossSpec, QrjaInstance};
use qrja::solvers::{solve, solve_l1, SolveOptions};

fn main() {
    // Five candidates, a mix of consistent and conflicting claims.
    // (a, b, y, w) reads "a beats b by y units, with weight w".
    let instance = QrjaInstance::from_tuples(
        5,
        &[
            (0, 1, 2.0, 1.0),
            (1, 2, 1.5, 2.0),
            (0, 2, 4.5, 1.0), // slightly more than 2.0 + 1.5
            (2, 3, 3.0, 1.0),
            (3, 4, 1.0, 1.0),
            (2, 4, 3.0, 0.5), // slightly less than 3.0 + 1.0
        ],
    )
    .expect("valid judgments");

    let opts = SolveOptions::default();
    println!("{} candidates, {} judgments\n", instance.candidate_count(), instance.judgment_count());

    for p in [1.0, 1.5, 2.0] {
        let spec = LossSpec::new(p).expect("valid exponent");
        let result = solve(&instance, &spec, &opts).expect("p >= 1 is solvable");
        println!("p = {p}");
        println!("  loss       = {:.6}", result.loss);
        println!("  iterations = {}", result.iterations);
        if let Some(dual) = result.dual_objective {
            println!("  dual       = {:.6} (gap {:.2e})", dual, result.loss - dual);
        }
        let ratings: Vec<String> =
            result.x.values().iter().map(|v| format!("{v:+.4}")).collect();
        println!("  ratings    = [{}]\n", ratings.join(", "));
    }

    // The l1 solution is certified by its circulation dual: the reported
    // dual objective can never exceed the loss, and at the optimum they
    // coincide.
    let exact = solve_l1(&instance, &opts).expect("solvable");
    assert!(exact.dual_objective.unwrap() <= exact.loss + 1e-9);
    println!("l1 optimality certificate: loss == dual objective within 1e-9");
}
