// Seeded Monte Carlo of the rotating disc against the closed form.

use ultraspec::noise::{analytic_moments, simulate_full_cycle, DiscState, NoiseModel};

pub fn run_example() -> ultraspec::Result<()> {
    let model = NoiseModel::boltzmann(2, 20, 1.0)?;
    let initial = DiscState::zeros(2, 20);
    let mc = simulate_full_cycle(&model, &initial, 42, 20_000)?;
    let exact = analytic_moments(&model)?;
    let z = (mc.mean - exact.mean) / mc.std_error_mean;
    println!(
        "mean {:.4} +- {:.4} (closed form {:.4}, z = {z:.2}), variance {:.4}",
        mc.mean, mc.std_error_mean, exact.mean, mc.variance
    );
    assert!(z.abs() < 4.0);

    let again = simulate_full_cycle(&model, &initial, 42, 20_000)?;
    assert_eq!(mc, again);
    Ok(())
}

fn main() {
    run_example().expect("monte_carlo failed");
}
