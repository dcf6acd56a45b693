//! Diagnostics of the deletion output over a grid of `alpha`.

use serde::{Deserialize, Serialize};

use crate::criteria::analyze;
use crate::error::{Error, Result};
use crate::states::{deletion_output, DeletionParams};
use crate::teleport::verify_fidelity;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub alpha_start: f64,
    pub alpha_stop: f64,
    pub alpha_step: f64,
    pub m1: f64,
    /// Zero disables the Monte Carlo columns.
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            alpha_start: 0.01,
            alpha_stop: 0.99,
            alpha_step: 0.01,
            m1: crate::DEFAULT_M1,
            mc_samples: 0,
            seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let open = |x: f64| x > 0.0 && x < 1.0;
        if !(open(self.alpha_start) && open(self.alpha_stop) && open(self.alpha_step)) {
            return Err(Error::InvalidParameter(format!(
                "sweep bounds and step must lie in (0, 1), got {}:{}:{}",
                self.alpha_start, self.alpha_stop, self.alpha_step
            )));
        }
        if self.alpha_start >= self.alpha_stop {
            return Err(Error::InvalidParameter(format!(
                "sweep start {} must be below stop {}",
                self.alpha_start, self.alpha_stop
            )));
        }
        if !(0.0..=1.0).contains(&self.m1) {
            return Err(Error::InvalidParameter(format!(
                "m1 = {} outside [0, 1]",
                self.m1
            )));
        }
        if self.mc_samples != 0 && self.mc_samples < crate::teleport::MIN_SAMPLES {
            return Err(Error::InvalidParameter(format!(
                "mc samples must be 0 or at least {}",
                crate::teleport::MIN_SAMPLES
            )));
        }
        Ok(())
    }

    /// Grid points `start + k step` up to `stop` (inclusive within 1e-9
    /// steps), each rounded to 12 decimals so `0.07` prints as `0.07`.
    pub fn grid(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let count =
            ((self.alpha_stop - self.alpha_start) / self.alpha_step + 1e-9).floor() as usize + 1;
        Ok((0..count)
            .map(|k| {
                let x = self.alpha_start + k as f64 * self.alpha_step;
                (x * 1e12).round() / 1e12
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub w3: f64,
    pub w4: f64,
    pub ppt_min: f64,
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
    pub big_m: f64,
    pub big_n: f64,
    pub f_max: f64,
    pub f_mc: Option<f64>,
    pub f_mc_stderr: Option<f64>,
}

impl SweepRow {
    /// Monte Carlo estimate within `3 sigma` of `F_max` (plus the rounding
    /// floor); `None` without sampling.
    pub fn mc_consistent(&self) -> Option<bool> {
        Some(
            (self.f_mc? - self.f_max).abs()
                <= 3.0 * self.f_mc_stderr? + crate::teleport::CONSISTENCY_FLOOR,
        )
    }
}

pub fn sweep_row(alpha: f64, cfg: &SweepConfig) -> Result<SweepRow> {
    let rho = deletion_output(&DeletionParams::new(alpha, cfg.m1)?);
    let r = analyze(&rho)?;
    let (f_mc, f_mc_stderr) = if cfg.mc_samples > 0 {
        let v = verify_fidelity(&rho, cfg.mc_samples, cfg.seed)?;
        (Some(v.simulated.mean), Some(v.simulated.std_error))
    } else {
        (None, None)
    };
    Ok(SweepRow {
        alpha,
        w3: r.w3,
        w4: r.w4,
        ppt_min: r.ppt_min(),
        u1: r.u[0],
        u2: r.u[1],
        u3: r.u[2],
        big_m: r.big_m,
        big_n: r.big_n,
        f_max: r.f_max,
        f_mc,
        f_mc_stderr,
    })
}

/// Rows in grid order. Rows are computed in parallel with the `parallel`
/// feature; the result does not depend on scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let grid = cfg.grid()?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        grid.par_iter().map(|&a| sweep_row(a, cfg)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        grid.iter().map(|&a| sweep_row(a, cfg)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let g = SweepConfig::default().grid().unwrap();
        assert_eq!(g.len(), 99);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[6], 0.07);
        assert_eq!(g[98], 0.99);
    }

    #[test]
    fn uneven_grid_stops_before_stop() {
        let cfg = SweepConfig {
            alpha_start: 0.1,
            alpha_stop: 0.35,
            alpha_step: 0.1,
            ..Default::default()
        };
        assert_eq!(cfg.grid().unwrap(), vec![0.1, 0.2, 0.3]);
    }

    #[test]
    fn invalid_configs() {
        let base = SweepConfig::default();
        for cfg in [
            SweepConfig {
                alpha_start: 0.5,
                alpha_stop: 0.4,
                ..base
            },
            SweepConfig {
                alpha_step: 0.0,
                ..base
            },
            SweepConfig {
                alpha_stop: 1.0,
                ..base
            },
            SweepConfig { m1: 1.5, ..base },
            SweepConfig {
                mc_samples: 10,
                ..base
            },
        ] {
            assert!(
                matches!(cfg.grid(), Err(Error::InvalidParameter(_))),
                "{cfg:?}"
            );
        }
    }

    #[test]
    fn rows_satisfy_claims() {
        let rows = run_sweep(&SweepConfig::default()).unwrap();
        for r in &rows {
            assert!(r.big_m <= 1.0 && r.f_max > 2.0 / 3.0 && r.ppt_min < 0.0);
            assert!(r.u1 >= r.u2 && r.u2 >= r.u3);
            assert!(r.f_mc.is_none() && r.mc_consistent().is_none());
        }
    }
}
