// A β-sweep written as CSV, the data behind a mean/variance versus β plot.

use ultraspec::noise::{beta_sweep, write_sweep_csv, BetaGrid, SweepOptions};

pub fn run_example() -> ultraspec::Result<()> {
    let grid: BetaGrid = "0.25:6:8:log".parse()?;
    let opts = SweepOptions {
        p: 2,
        r: 10,
        n_trials: 5_000,
        seed: 7,
        exact_cap: 4096,
    };
    let rows = beta_sweep(&grid, &opts)?;
    write_sweep_csv(&rows, std::io::stdout().lock())?;
    Ok(())
}

fn main() {
    run_example().expect("beta_sweep failed");
}
