//! Synthetic contest generator with latent additive structure.
//!
//! Scores follow `score(i, j) = ability_i + difficulty_j + noise`, with
//! abilities and per-contest difficulties drawn from centered normals and a
//! Bernoulli participation mask (resampled until a contest has at least two
//! participants). With zero noise the scores are exactly additive, so
//! pairwise score differences within a contest reveal ability differences
//! exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{Contest, ContestSeries, HarnessError};

#[derive(Debug, Clone, Copy)]
pub struct SynthParams {
    pub n_contestants: usize,
    pub n_contests: usize,
    /// Bernoulli participation probability, in (0, 1].
    pub participation_rate: f64,
    pub ability_sd: f64,
    pub difficulty_sd: f64,
    pub noise_sd: f64,
    pub seed: u64,
}

impl SynthParams {
    fn validate(&self) -> Result<(), HarnessError> {
        if self.n_contestants < 2 {
            return Err(HarnessError::DegenerateParams(format!(
                "need at least 2 contestants, got {}",
                self.n_contestants
            )));
        }
        if self.n_contests == 0 {
            return Err(HarnessError::DegenerateParams("need at least 1 contest".into()));
        }
        if !(self.participation_rate > 0.0 && self.participation_rate <= 1.0) {
            return Err(HarnessError::DegenerateParams(format!(
                "participation_rate must be in (0, 1], got {}",
                self.participation_rate
            )));
        }
        for (name, sd) in [
            ("ability_sd", self.ability_sd),
            ("difficulty_sd", self.difficulty_sd),
            ("noise_sd", self.noise_sd),
        ] {
            if !(sd >= 0.0) || !sd.is_finite() {
                return Err(HarnessError::DegenerateParams(format!("{name} must be >= 0, got {sd}")));
            }
        }
        Ok(())
    }
}

fn sample_normal(rng: &mut ChaCha8Rng, sd: f64) -> f64 {
    if sd == 0.0 {
        return 0.0;
    }
    Normal::new(0.0, sd).expect("validated sd").sample(rng)
}

/// Generates a deterministic series for the given seed. Contest ids are
/// zero-padded indices, contestant names `p000`, `p001`, ….
pub fn synth_series(params: &SynthParams) -> Result<ContestSeries, HarnessError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n_contestants;

    let abilities: Vec<f64> = (0..n).map(|_| sample_normal(&mut rng, params.ability_sd)).collect();

    let mut contests = Vec::with_capacity(params.n_contests);
    for j in 0..params.n_contests {
        let difficulty = sample_normal(&mut rng, params.difficulty_sd);
        let mut participants: Vec<usize>;
        let mut guard = 0;
        loop {
            participants = (0..n).filter(|_| rng.gen::<f64>() < params.participation_rate).collect();
            if participants.len() >= 2 {
                break;
            }
            guard += 1;
            if guard > 100_000 {
                participants = vec![0, 1];
                break;
            }
        }
        let entries = participants
            .into_iter()
            .map(|i| {
                let noise = sample_normal(&mut rng, params.noise_sd);
                (format!("p{i:03}"), abilities[i] + difficulty + noise)
            })
            .collect();
        contests.push(Contest { id: format!("{:04}", j + 1), entries });
    }
    ContestSeries::new(contests)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::write_contest_csv;

    fn base_params() -> SynthParams {
        SynthParams {
            n_contestants: 6,
            n_contests: 5,
            participation_rate: 0.8,
            ability_sd: 1.0,
            difficulty_sd: 2.0,
            noise_sd: 0.0,
            seed: 11,
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = synth_series(&base_params()).unwrap();
        let b = synth_series(&base_params()).unwrap();
        assert_eq!(a, b);
        let mut buf_a = Vec::new();
        let mut buf_b = Vec::new();
        write_contest_csv(&a, &mut buf_a).unwrap();
        write_contest_csv(&b, &mut buf_b).unwrap();
        assert_eq!(buf_a, buf_b);
        let c = synth_series(&SynthParams { seed: 12, ..base_params() }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn noiseless_equal_difficulty_ranks_by_ability() {
        let params = SynthParams { difficulty_sd: 0.0, participation_rate: 1.0, ..base_params() };
        let series = synth_series(&params).unwrap();
        // every contest ranks contestants identically by ability
        let order_of = |c: &Contest| {
            let mut names: Vec<&String> = c.entries.iter().map(|(n, _)| n).collect();
            names.sort_by(|a, b| {
                let sa = c.entries.iter().find(|(n, _)| &n == a).unwrap().1;
                let sb = c.entries.iter().find(|(n, _)| &n == b).unwrap().1;
                sb.partial_cmp(&sa).unwrap()
            });
            names.into_iter().cloned().collect::<Vec<_>>()
        };
        let first = order_of(&series.contests()[0]);
        for c in series.contests() {
            assert_eq!(order_of(c), first);
        }
    }

    #[test]
    fn every_contest_has_at_least_two_entrants() {
        let params = SynthParams { participation_rate: 0.35, n_contests: 40, ..base_params() };
        let series = synth_series(&params).unwrap();
        assert!(series.contests().iter().all(|c| c.entries.len() >= 2));
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(synth_series(&SynthParams { n_contestants: 1, ..base_params() }).is_err());
        assert!(synth_series(&SynthParams { participation_rate: 0.0, ..base_params() }).is_err());
        assert!(synth_series(&SynthParams { noise_sd: -1.0, ..base_params() }).is_err());
        assert!(synth_series(&SynthParams { n_contests: 0, ..base_params() }).is_err());
    }
}
