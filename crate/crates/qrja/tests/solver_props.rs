//! Property tests for the loss and the solvers: gauge and antisymmetry
//! invariances, weight scaling, translation equivariance, oracle dominance,
//! and IRLS consistency near p = 1.

mod common;

use proptest::prelude::*;

use common::{oracle_radius, random_instance, seeded_rng};
use rand::Rng;
use qrja::instance::{
    connected_components, normalize_gauge, qrja_loss, LossSpec, QrjaInstance,
};
use qrja::solvers::{solve_bruteforce, solve_irls, solve_l1, solve_l2, SolveOptions};

/// Strategy: a small instance plus a rating vector of matching length.
fn instance_and_ratings() -> impl Strategy<Value = (QrjaInstance, Vec<f64>)> {
    (2usize..=5, 1usize..=7)
        .prop_flat_map(|(n, m)| {
            let judgments = proptest::collection::vec(
                (0..n, 0..n - 1, -5.0f64..5.0, 0.1f64..3.0),
                m,
            );
            let ratings = proptest::collection::vec(-10.0f64..10.0, n);
            (Just(n), judgments, ratings)
        })
        .prop_map(|(n, judgments, ratings)| {
            let tuples: Vec<(usize, usize, f64, f64)> = judgments
                .into_iter()
                .map(|(a, b_raw, y, w)| {
                    let b = if b_raw >= a { b_raw + 1 } else { b_raw };
                    (a, b, y, w)
                })
                .collect();
            (QrjaInstance::from_tuples(n, &tuples).expect("valid"), ratings)
        })
}

proptest! {
    /// Adding an arbitrary constant per connected component leaves the loss
    /// unchanged for every exponent.
    #[test]
    fn gauge_invariance((inst, x) in instance_and_ratings(), shifts in proptest::collection::vec(-20.0f64..20.0, 5), p in 0.5f64..3.0) {
        let spec = LossSpec::new(p).unwrap();
        let comps = connected_components(&inst);
        let mut shifted = x.clone();
        for (gi, group) in comps.groups().iter().enumerate() {
            for &v in group {
                shifted[v] += shifts[gi % shifts.len()];
            }
        }
        let a = qrja_loss(&inst, &x, &spec).unwrap();
        let b = qrja_loss(&inst, &shifted, &spec).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    /// Scaling all weights by λ scales the loss by exactly λ.
    #[test]
    fn weight_scaling_scales_loss((inst, x) in instance_and_ratings(), lambda in 0.1f64..10.0, p in 0.5f64..3.0) {
        let spec = LossSpec::new(p).unwrap();
        let weights: Vec<f64> = inst.judgments().iter().map(|j| j.w * lambda).collect();
        let scaled = inst.with_weights(&weights).unwrap();
        let a = qrja_loss(&inst, &x, &spec).unwrap();
        let b = qrja_loss(&scaled, &x, &spec).unwrap();
        prop_assert!((b - lambda * a).abs() <= 1e-9 * (lambda * a).abs().max(1.0));
    }

    /// Reversing a judgment's direction and negating its offset changes
    /// nothing.
    #[test]
    fn antisymmetry((inst, x) in instance_and_ratings(), p in 0.5f64..3.0) {
        let spec = LossSpec::new(p).unwrap();
        let flipped: Vec<(usize, usize, f64, f64)> = inst
            .judgments()
            .iter()
            .map(|j| (j.b, j.a, -j.y, j.w))
            .collect();
        let flipped = QrjaInstance::from_tuples(inst.candidate_count(), &flipped).unwrap();
        let a = qrja_loss(&inst, &x, &spec).unwrap();
        let b = qrja_loss(&flipped, &x, &spec).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    /// The reporting gauge never changes the loss.
    #[test]
    fn normalization_preserves_loss((inst, x) in instance_and_ratings(), p in 0.5f64..3.0) {
        let spec = LossSpec::new(p).unwrap();
        let normalized = normalize_gauge(&x, &inst).unwrap();
        let a = qrja_loss(&inst, &x, &spec).unwrap();
        let b = qrja_loss(&inst, normalized.values(), &spec).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        // and the result is mean-zero per component
        for group in normalized.components().groups() {
            if group.len() > 1 {
                let mean: f64 = group.iter().map(|&v| normalized.get(v)).sum::<f64>() / group.len() as f64;
                prop_assert!(mean.abs() < 1e-9);
            } else {
                prop_assert_eq!(normalized.get(group[0]), 0.0);
            }
        }
    }
}

/// The least-squares solution can never lose to a grid point.
#[test]
fn l2_never_beats_oracle_and_vice_versa() {
    let mut rng = seeded_rng(101);
    let opts = SolveOptions::default();
    for _ in 0..200 {
        let inst = random_instance(&mut rng, 4, 6, 5, &[1.0, 2.0]);
        let l2 = solve_l2(&inst, &opts);
        let oracle = solve_bruteforce(&inst, &LossSpec::l2(), 0.05, oracle_radius(&inst)).unwrap();
        assert!(
            l2.loss <= oracle.loss + 1e-6,
            "solver loss {} exceeds grid loss {}",
            l2.loss,
            oracle.loss
        );
    }
}

/// Adding a constant c to the offset of every judgment leaving a fixed
/// candidate (and −c on judgments entering it) shifts that candidate's
/// rating by c and no other, up to the reporting gauge: all pairwise
/// differences not involving the candidate are unchanged and differences
/// against it shift by exactly c.
#[test]
fn translation_equivariance() {
    let mut rng = seeded_rng(2024);
    let opts = SolveOptions::default();
    for trial in 0..40 {
        // continuous offsets keep the optimum unique with probability one
        let n = rng.gen_range(3..=5usize);
        let m = rng.gen_range(n..=8usize);
        let mut tuples = Vec::new();
        for _ in 0..m {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            tuples.push((a, b, rng.gen_range(-5.0..5.0), 1.0 + rng.gen_range(0.0..2.0)));
        }
        let inst = QrjaInstance::from_tuples(n, &tuples).unwrap();
        let s = rng.gen_range(0..n);
        let c = rng.gen_range(-3.0..3.0);
        let shifted: Vec<(usize, usize, f64, f64)> = tuples
            .iter()
            .map(|&(a, b, y, w)| {
                if a == s {
                    (a, b, y + c, w)
                } else if b == s {
                    (a, b, y - c, w)
                } else {
                    (a, b, y, w)
                }
            })
            .collect();
        let shifted = QrjaInstance::from_tuples(n, &shifted).unwrap();

        for p in [1.0, 2.0] {
            let (base, moved) = if p == 1.0 {
                (solve_l1(&inst, &opts).unwrap(), solve_l1(&shifted, &opts).unwrap())
            } else {
                (solve_l2(&inst, &opts), solve_l2(&shifted, &opts))
            };
            assert!(
                (base.loss - moved.loss).abs() <= 1e-6 * base.loss.max(1.0),
                "trial {trial} p={p}: loss changed {} -> {}",
                base.loss,
                moved.loss
            );
            let spec = LossSpec::new(p).unwrap();
            // Shifting the base optimum's s-coordinate by c must be optimal
            // for the transformed instance, and vice versa. (The l1 optimum
            // can be a face, so solutions are compared through their losses
            // rather than coordinatewise.)
            let mut base_shifted: Vec<f64> = base.x.values().to_vec();
            base_shifted[s] += c;
            let forward = qrja_loss(&shifted, &base_shifted, &spec).unwrap();
            assert!(
                (forward - moved.loss).abs() <= 1e-6 * moved.loss.max(1.0),
                "trial {trial} p={p}: shifted base optimum has loss {forward}, solver found {}",
                moved.loss
            );
            let mut moved_unshifted: Vec<f64> = moved.x.values().to_vec();
            moved_unshifted[s] -= c;
            let backward = qrja_loss(&inst, &moved_unshifted, &spec).unwrap();
            assert!(
                (backward - base.loss).abs() <= 1e-6 * base.loss.max(1.0),
                "trial {trial} p={p}: unshifted moved optimum has loss {backward}, solver found {}",
                base.loss
            );
            if p == 2.0 {
                // unique optimum: same-component differences must match
                // exactly (cross-component differences are gauge artifacts)
                let comps = base.x.components();
                for u in 0..n {
                    for v in u + 1..n {
                        if !comps.same_component(u, v) {
                            continue;
                        }
                        let before = base.x.get(u) - base.x.get(v);
                        let after = moved.x.get(u) - moved.x.get(v);
                        let expected = if u == s {
                            before + c
                        } else if v == s {
                            before - c
                        } else {
                            before
                        };
                        assert!(
                            (after - expected).abs() <= 1e-6,
                            "trial {trial} pair ({u},{v}): {after} vs expected {expected}"
                        );
                    }
                }
            }
        }
    }
}

/// Scaling every weight by λ leaves the argmin unchanged and scales the
/// attained loss by λ.
#[test]
fn weight_scaling_leaves_solutions_fixed() {
    let mut rng = seeded_rng(7);
    let opts = SolveOptions::default();
    for _ in 0..40 {
        let inst = random_instance(&mut rng, 4, 6, 5, &[1.0, 2.0]);
        for lambda in [0.5, 3.0] {
            let weights: Vec<f64> = inst.judgments().iter().map(|j| j.w * lambda).collect();
            let scaled = inst.with_weights(&weights).unwrap();
            let l2a = solve_l2(&inst, &opts);
            let l2b = solve_l2(&scaled, &opts);
            assert!((l2b.loss - lambda * l2a.loss).abs() <= 1e-6 * (lambda * l2a.loss).max(1.0));
            for v in 0..inst.candidate_count() {
                assert!((l2a.x.get(v) - l2b.x.get(v)).abs() <= 1e-6);
            }
            let l1a = solve_l1(&inst, &opts).unwrap();
            let l1b = solve_l1(&scaled, &opts).unwrap();
            assert!((l1b.loss - lambda * l1a.loss).abs() <= 1e-9 * (lambda * l1a.loss).max(1.0));
            // identical pivoting: costs unchanged, capacities scaled
            for v in 0..inst.candidate_count() {
                assert!((l1a.x.get(v) - l1b.x.get(v)).abs() <= 1e-9);
            }
        }
    }
}

/// Near p = 1 the IRLS solution is also near-optimal for the plain l1
/// objective itself, on the full random family.
#[test]
fn irls_solution_is_l1_consistent_at_low_p() {
    let mut rng = seeded_rng(101);
    let opts = SolveOptions::default();
    let spec = LossSpec::new(1.01).unwrap();
    for trial in 0..50 {
        let inst = random_instance(&mut rng, 4, 6, 5, &[1.0, 2.0]);
        let l1 = solve_l1(&inst, &opts).unwrap();
        let irls = solve_irls(&inst, &spec, &opts).unwrap();
        let l1_at_irls = qrja_loss(&inst, irls.x.values(), &LossSpec::l1()).unwrap();
        assert!(
            l1_at_irls <= 1.01 * l1.loss + 1e-6,
            "trial {trial}: l1 value at the irls point {} vs optimum {}",
            l1_at_irls,
            l1.loss
        );
    }
}

/// IRLS's reported loss is close to the grid oracle's at its own exponent.
#[test]
fn irls_matches_oracle_at_its_exponent() {
    let mut rng = seeded_rng(515);
    let opts = SolveOptions::default();
    for p in [1.3, 1.5, 2.5] {
        let spec = LossSpec::new(p).unwrap();
        for _ in 0..10 {
            let inst = random_instance(&mut rng, 3, 4, 2, &[1.0]);
            let irls = solve_irls(&inst, &spec, &opts).unwrap();
            let oracle = solve_bruteforce(&inst, &spec, 0.02, oracle_radius(&inst)).unwrap();
            // the oracle is itself discretized; allow its grid slack
            let w_sum: f64 = inst.judgments().iter().map(|j| j.w).sum();
            let slack = 0.02 * w_sum * (1.0 + oracle.loss);
            assert!(
                irls.loss <= oracle.loss + 10.0 * opts.tolerance * oracle.loss.max(1.0) + 1e-9,
                "p={p}: irls {} vs oracle {}",
                irls.loss,
                oracle.loss
            );
            assert!(
                oracle.loss <= irls.loss + slack,
                "p={p}: oracle {} should not beat irls {} by more than {slack}",
                oracle.loss,
                irls.loss
            );
        }
    }
}
