// Equilibration time of the pure walk and the gap of the rotating dynamics.

use ultraspec::noise::{equilibration_report, NoiseModel};

pub fn run_example() -> ultraspec::Result<()> {
    for beta in [0.5, 1.0, 2.0, 4.0] {
        let rep = equilibration_report(&NoiseModel::boltzmann(2, 20, beta)?)?;
        let (lo, hi) = rep.bounds.expect("boltzmann model");
        println!(
            "beta {beta}: tau {:.3e}, gap {:.6} in [{lo:.6}, {hi:.6}]",
            rep.tau_pure, rep.gap_shifted
        );
        assert_eq!(rep.bounds_hold, Some(true));
    }
    Ok(())
}

fn main() {
    run_example().expect("equilibration failed");
}
