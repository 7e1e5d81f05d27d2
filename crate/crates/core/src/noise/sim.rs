use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::model::{DiscState, NoiseModel};
use super::moments::MomentReport;
use crate::error::{Error, Result};

/// Where the noise zone lives.
///
/// In the lab frame the zone is fixed on the trailing cells and the disc
/// content rotates after every step. In the disc frame the content stays put
/// and the zone walks backwards around the disc. Both frames consume the
/// random stream identically, so a given seed yields the same error counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    #[default]
    Lab,
    Disc,
}

/// Sample mean and variance of the error count after one full turn
/// (`r` steps), in the lab frame.
pub fn simulate_full_cycle(model: &NoiseModel, initial: &DiscState, seed: u64, n_trials: u64) -> Result<MomentReport> {
    let hist = simulate_histogram(model, initial, seed, n_trials, Frame::Lab)?;
    Ok(MomentReport::from_histogram(&hist))
}

/// Counts of trials ending with `k = 0..=r` errors.
///
/// Trial `i` draws from its own ChaCha8 stream `(seed, i)`, and the per-trial
/// counts are summed as integers, so the result does not depend on the number
/// of threads or the order in which trials run.
pub fn simulate_histogram(
    model: &NoiseModel,
    initial: &DiscState,
    seed: u64,
    n_trials: u64,
    frame: Frame,
) -> Result<Vec<u64>> {
    if n_trials == 0 {
        return Err(Error::InvalidParams("n_trials must be at least 1".into()));
    }
    if initial.p() != model.p() || initial.r() != model.r() {
        return Err(Error::InvalidWord(format!(
            "initial word {initial} does not match p = {}, r = {}",
            model.p(),
            model.r()
        )));
    }
    let gamma_dist =
        WeightedIndex::new(model.weights()).map_err(|e| Error::InvalidParams(format!("noise weights: {e}")))?;
    let r = model.r();
    let start = initial.symbols();

    let hist = (0..n_trials)
        .into_par_iter()
        .fold(
            || vec![0u64; r + 1],
            |mut hist, trial| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(trial);
                let end = run_trial(model.p(), start, &gamma_dist, frame, &mut rng);
                let k = end.iter().zip(start).filter(|(a, b)| a != b).count();
                hist[k] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; r + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

/// One full turn of `r` steps. Each step randomizes the `γ` trailing tensor
/// slots in ascending order and then rotates the word right by one.
fn run_trial(p: usize, start: &[u8], gamma_dist: &WeightedIndex<f64>, frame: Frame, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let r = start.len();
    let mut cells = start.to_vec();
    for t in 0..r {
        let gamma = gamma_dist.sample(rng);
        for slot in r - gamma..r {
            let symbol = rng.random_range(0..p) as u8;
            match frame {
                Frame::Lab => cells[slot] = symbol,
                // slot i of the rotated word sits in cell i − t of the disc
                Frame::Disc => cells[(slot + r - t % r) % r] = symbol,
            }
        }
        if frame == Frame::Lab {
            cells.rotate_right(1);
        }
    }
    cells
}
