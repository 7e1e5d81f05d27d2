use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::model::{DiscState, NoiseModel};
use super::moments::analytic_moments;
use super::sim::simulate_full_cycle;
use crate::error::{Error, Result};
use crate::oracle::exact_moments;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// `points` values of β from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl BetaGrid {
    pub fn new(start: f64, stop: f64, points: usize, spacing: Spacing) -> Result<Self> {
        let grid = Self {
            start,
            stop,
            points,
            spacing,
        };
        if !(start > 0.0 && start.is_finite() && stop.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "beta grid {grid}: bounds must be positive and finite"
            )));
        }
        if points == 0 || (points > 1 && stop <= start) || (points == 1 && stop != start) {
            return Err(Error::InvalidParams(format!(
                "beta grid {grid} is not strictly increasing"
            )));
        }
        Ok(grid)
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let n = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / n;
                if i == 0 {
                    return self.start;
                }
                if i == self.points - 1 {
                    return self.stop;
                }
                match self.spacing {
                    Spacing::Linear => self.start + t * (self.stop - self.start),
                    Spacing::Log => (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp(),
                }
            })
            .collect()
    }
}

impl fmt::Display for BetaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = match self.spacing {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        };
        write!(f, "{}:{}:{}:{}", self.start, self.stop, self.points, spacing)
    }
}

/// Parses `start:stop:points[:linear|log]`; spacing defaults to linear.
impl FromStr for BetaGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidParams(format!(
                "cannot parse beta grid '{s}', expected start:stop:points[:linear|log]"
            ))
        };
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let start = parts[0].parse().map_err(|_| bad())?;
        let stop = parts[1].parse().map_err(|_| bad())?;
        let points = parts[2].parse().map_err(|_| bad())?;
        let spacing = match parts.get(3).copied() {
            None | Some("linear") | Some("lin") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(_) => return Err(bad()),
        };
        Self::new(start, stop, points, spacing)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub beta: f64,
    /// Empty unless `p = 2`.
    pub mean_analytic: Option<f64>,
    pub var_analytic: Option<f64>,
    pub mean_mc: f64,
    pub var_mc: f64,
    pub stderr_mean: f64,
    pub n_trials: u64,
    pub r: usize,
    pub p: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean_exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub var_exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub p: usize,
    pub r: usize,
    pub n_trials: u64,
    pub seed: u64,
    /// Largest `p^r` for which exact-oracle columns are added.
    pub exact_cap: usize,
}

/// Boltzmann moments across a β grid. Every β reuses the same seed and
/// starts from the all-zero word.
pub fn beta_sweep(grid: &BetaGrid, opts: &SweepOptions) -> Result<Vec<SweepRow>> {
    let exact = opts.p == 2 && (opts.p as f64).powi(opts.r as i32) <= opts.exact_cap as f64;
    let initial = DiscState::zeros(opts.p, opts.r);
    grid.values()
        .into_iter()
        .map(|beta| {
            let model = NoiseModel::boltzmann(opts.p, opts.r, beta)?;
            let analytic = if opts.p == 2 {
                Some(analytic_moments(&model)?)
            } else {
                None
            };
            let mc = simulate_full_cycle(&model, &initial, opts.seed, opts.n_trials)?;
            let exact = if exact {
                let params = model.params().with_dense_cap(opts.exact_cap);
                Some(exact_moments(&params, opts.r, &initial)?)
            } else {
                None
            };
            Ok(SweepRow {
                beta,
                mean_analytic: analytic.as_ref().map(|m| m.mean),
                var_analytic: analytic.as_ref().map(|m| m.variance),
                mean_mc: mc.mean,
                var_mc: mc.variance,
                stderr_mean: mc.std_error_mean,
                n_trials: mc.n_trials,
                r: opts.r,
                p: opts.p,
                seed: opts.seed,
                mean_exact: exact.as_ref().map(|m| m.mean),
                var_exact: exact.as_ref().map(|m| m.variance),
            })
        })
        .collect()
}

pub const CSV_HEADER: [&str; 10] = [
    "beta",
    "mean_analytic",
    "var_analytic",
    "mean_mc",
    "var_mc",
    "stderr_mean",
    "n_trials",
    "r",
    "p",
    "seed",
];

/// Writes the rows as CSV. The `mean_exact,var_exact` columns are appended
/// when any row carries them.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let with_exact = rows.iter().any(|r| r.mean_exact.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if with_exact {
        header.extend(["mean_exact", "var_exact"]);
    }
    w.write_record(&header)?;
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    for row in rows {
        let mut record = vec![
            row.beta.to_string(),
            opt(row.mean_analytic),
            opt(row.var_analytic),
            row.mean_mc.to_string(),
            row.var_mc.to_string(),
            row.stderr_mean.to_string(),
            row.n_trials.to_string(),
            row.r.to_string(),
            row.p.to_string(),
            row.seed.to_string(),
        ];
        if with_exact {
            record.push(opt(row.mean_exact));
            record.push(opt(row.var_exact));
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_log_grid() {
        let grid: BetaGrid = "0.1:8:80:log".parse().unwrap();
        let v = grid.values();
        assert_eq!(v.len(), 80);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[79], 8.0);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        let ratio = v[1] / v[0];
        assert!((v[41] / v[40] - ratio).abs() < 1e-12);
    }

    #[test]
    fn linear_grid_and_errors() {
        let grid: BetaGrid = "1:2:5".parse().unwrap();
        assert_eq!(grid.values(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert!("2:1:5:log".parse::<BetaGrid>().is_err());
        assert!("0:1:5:log".parse::<BetaGrid>().is_err());
        assert!("1:2".parse::<BetaGrid>().is_err());
        assert!("1:2:3:cubic".parse::<BetaGrid>().is_err());
    }

    #[test]
    fn csv_has_exact_columns_for_small_r() {
        let grid: BetaGrid = "0.5:2:3:log".parse().unwrap();
        let opts = SweepOptions {
            p: 2,
            r: 6,
            n_trials: 200,
            seed: 1,
            exact_cap: 4096,
        };
        let rows = beta_sweep(&grid, &opts).unwrap();
        for row in &rows {
            let diff = row.mean_analytic.unwrap() - row.mean_exact.unwrap();
            assert!(diff.abs() < 1e-10);
        }
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(first, format!("{},mean_exact,var_exact", CSV_HEADER.join(",")));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn ternary_rows_leave_analytic_empty() {
        let grid: BetaGrid = "1:1:1".parse().unwrap();
        let opts = SweepOptions {
            p: 3,
            r: 4,
            n_trials: 50,
            seed: 2,
            exact_cap: 4096,
        };
        let rows = beta_sweep(&grid, &opts).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("1,,,"));
    }
}
