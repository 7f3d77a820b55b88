//! Shrink a large judgment pool by importance subsampling and measure how
//! well solutions of the smaller instance do on the original objective.
//!
//! ```bash
//! cargo run --release --example subsample_speedup
//! ```

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use qrja::instance::{qrja_loss, LossSpec, QrjaInstance};
use qrja::solvers::{solve_l1, solve_l2, SolveOptions};
use qrja::subsample::{subsample_with_mode, SubsampleOptions, WeightsMode};

fn main() {
    let n = 30usize;
    let m = 3000usize;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let abilities: Vec<f64> = (0..n).map(|_| normal.sample(&mut rng)).collect();
    let tuples: Vec<(usize, usize, f64, f64)> = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            (a, b, abilities[a] - abilities[b] + normal.sample(&mut rng), 1.0)
        })
        .collect();
    let original = QrjaInstance::from_tuples(n, &tuples).expect("valid");

    let opts = SolveOptions::default();
    for (label, p) in [("l1", 1.0), ("l2", 2.0)] {
        let spec = LossSpec::new(p).unwrap();
        let optimal = if p == 1.0 {
            solve_l1(&original, &opts).unwrap().loss
        } else {
            solve_l2(&original, &opts).loss
        };
        println!("{label}: optimal loss on the full {m}-judgment instance = {optimal:.2}");
        println!("{:>6} {:>7} {:>14} {:>14}", "alpha", "kept", "uniform", "lewis");
        for alpha in [0.05, 0.1, 0.2, 0.4] {
            let count = (alpha * m as f64).floor() as usize;
            let mut row = format!("{alpha:>6} {count:>7}");
            for mode in [WeightsMode::Uniform, WeightsMode::Lewis { p }] {
                let sub_opts = SubsampleOptions { count, mode, lewis_iterations: 20, seed: 77 };
                let (small, _) = subsample_with_mode(&original, &sub_opts).unwrap();
                let solved = if p == 1.0 {
                    solve_l1(&small, &opts).unwrap()
                } else {
                    solve_l2(&small, &opts)
                };
                let on_original = qrja_loss(&original, solved.x.values(), &spec).unwrap();
                row.push_str(&format!(" {:>13.4}x", on_original / optimal));
            }
            println!("{row}");
        }
        println!();
    }
    println!("values are loss-on-original relative to the optimum (1.0 = no degradation)");
}
