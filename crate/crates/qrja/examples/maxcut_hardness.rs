//! Why exponents below 1 are off the menu: judgments can encode Max-Cut.
//!
//! Builds the reduction instance for a small graph, shows that integral
//! assignments realize the loss formula `n·w2 + 2(m−k) + k·2^p`, and that
//! rounding any fractional vector toward the anchors never hurts.
//!
//! ```bash
//! cargo run --example maxcut_hardness
//! ```

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qrja::hardness::{
    build_reduction, bruteforce_maxcut, extract_cut, round_solution, verify_reduction, MaxCutGraph,
};
use qrja::instance::{qrja_loss, LossSpec};

fn main() {
    let p = 0.5;
    for (name, graph) in [
        ("K3", MaxCutGraph::complete(3)),
        ("K4", MaxCutGraph::complete(4)),
        ("C5", MaxCutGraph::cycle(5)),
    ] {
        let reduction = build_reduction(&graph, p).expect("0 < p < 1");
        let report = verify_reduction(&graph, &reduction).expect("small graph");
        println!(
            "{name}: n={} m={} w1={} w2={} judgments={}",
            graph.vertex_count(),
            graph.edge_count(),
            reduction.w1,
            reduction.w2,
            reduction.instance.judgment_count()
        );
        println!(
            "  max cut k* = {} (brute force {})",
            report.maxcut,
            bruteforce_maxcut(&graph).unwrap()
        );
        println!(
            "  min integral loss = {:.6}, formula n*w2 + 2(m-k*) + k**2^p = {:.6} -> {}",
            report.min_integral_loss,
            report.expected_loss,
            if report.identity_holds { "match" } else { "MISMATCH" }
        );

        // Round an arbitrary fractional vector and read the cut out of it.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spec = LossSpec::new(p).unwrap();
        let fractional: Vec<f64> =
            (0..graph.vertex_count() + 2).map(|_| rng.gen_range(-1.0..2.0)).collect();
        let before = qrja_loss(&reduction.instance, &fractional, &spec).unwrap();
        let rounded = round_solution(&fractional, &reduction).expect("roundable");
        let cut = extract_cut(&rounded, &reduction).expect("integral");
        println!(
            "  random fractional vector: loss {before:.3} -> rounded {:.3}, cut size {}\n",
            cut.loss, cut.cut_size
        );
    }
    println!("a polynomial-time solver for p < 1 would therefore solve Max-Cut");
}
