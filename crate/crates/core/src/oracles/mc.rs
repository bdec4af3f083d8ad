use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::haar::{sample_cue_phases, v_values};
use crate::error::{Error, Result};
use crate::moments::MomentOrder;

/// Sample mean of a Monte Carlo run with its standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct MCEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by `√trials`.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
    /// Samples discarded because a phase hit the cotangent pole.
    pub redraws: u64,
}

impl MCEstimate {
    /// `(mean - exact) / stderr`.
    pub fn z_score(&self, exact: f64) -> f64 {
        (self.mean - exact) / self.stderr
    }
}

/// Random stream for one trial: a ChaCha8 key from `seed`, stream id from
/// the trial index. Trials are independent of scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

const MAX_REDRAWS: u32 = 64;

fn one_trial(n: usize, order: MomentOrder, seed: u64, trial: u64) -> Result<(f64, u64)> {
    let mut rng = trial_rng(seed, trial);
    let v_exp = (2 * order.k() - order.two_h()) as i32;
    let dv_exp = order.two_h() as i32;
    for redraws in 0..MAX_REDRAWS {
        let phases = sample_cue_phases(n, &mut rng)?;
        match v_values(&phases) {
            Ok((v, dv)) => return Ok((v.powi(v_exp) * dv.powi(dv_exp), u64::from(redraws))),
            Err(Error::CotangentPole) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampler(format!(
        "trial {trial}: {MAX_REDRAWS} consecutive samples hit the cotangent pole"
    )))
}

/// Monte Carlo estimate of `F̃_N(h, k) = E[|V|^{2k-2h} |V'|^{2h}]`.
///
/// Trials run in parallel; each value is stored at its trial index and
/// reduced sequentially, so the result is bit-identical for a given
/// `(seed, trials)` on any number of threads.
pub fn mc_moment(n: u32, two_h: u32, k: u32, trials: u64, seed: u64) -> Result<MCEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if trials < 2 {
        return Err(Error::InvalidArgument(
            "need at least two trials for a standard error".into(),
        ));
    }
    let order = MomentOrder::new(two_h, k)?;
    let samples: Vec<(f64, u64)> = (0..trials)
        .into_par_iter()
        .map(|t| one_trial(n as usize, order, seed, t))
        .collect::<Result<_>>()?;

    // Welford, in trial order
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut redraws = 0;
    for (i, &(x, r)) in samples.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
        redraws += r;
    }
    let variance = m2 / (trials - 1) as f64;
    Ok(MCEstimate {
        mean,
        stderr: (variance / trials as f64).sqrt(),
        trials,
        seed,
        redraws,
    })
}
