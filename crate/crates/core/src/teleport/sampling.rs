//! Monte Carlo estimate of the input-averaged fidelity.
//!
//! Generator: ChaCha20 (`rand_chacha::ChaCha20Rng`) keyed with
//! `seed_from_u64(seed)`. Samples are drawn in blocks of
//! [`SAMPLES_PER_STREAM`]; block `k` uses ChaCha stream `k`, so a run is a
//! pure function of `(seed, n)` no matter how blocks are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::TeleportChannel;
use crate::error::{Error, Result};
use crate::states::pure_from_bloch;

pub const SAMPLES_PER_STREAM: usize = 4096;
pub const MIN_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(samples)`.
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Averages `<psi|Lambda(|psi><psi|)|psi>` over `n` Haar-random inputs
/// (`cos theta` uniform on `[-1, 1]`, `phi` uniform on `[0, 2 pi)`).
pub fn average_fidelity_mc(ch: &TeleportChannel, n: usize, seed: u64) -> Result<FidelityEstimate> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    let blocks = n.div_ceil(SAMPLES_PER_STREAM);
    let run = |b: usize| -> Vec<f64> {
        let len = SAMPLES_PER_STREAM.min(n - b * SAMPLES_PER_STREAM);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        (0..len)
            .map(|_| {
                let cos_theta = 1.0 - 2.0 * rng.gen::<f64>();
                let phi = std::f64::consts::TAU * rng.gen::<f64>();
                let psi = pure_from_bloch(cos_theta.acos(), phi);
                let a = psi.amplitudes();
                ch.fidelity_for([a[0], a[1]])
            })
            .collect()
    };

    #[cfg(feature = "parallel")]
    let values: Vec<Vec<f64>> = {
        use rayon::prelude::*;
        (0..blocks).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<Vec<f64>> = (0..blocks).map(run).collect();

    let values = values.concat();
    let mean = neumaier_sum(values.iter().copied()) / n as f64;
    let var = neumaier_sum(values.iter().map(|f| (f - mean) * (f - mean))) / (n - 1) as f64;
    Ok(FidelityEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
        samples: n,
        seed,
    })
}

/// Compensated summation (Neumaier's variant of Kahan).
pub(crate) fn neumaier_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
