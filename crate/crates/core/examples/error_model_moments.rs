// Mean and variance of the error count after one turn of the disc: closed
// form, exact probability evolution, and the large-r limit.

use ultraspec::noise::{analytic_moments, asymptotic_moments, DiscState, NoiseModel};
use ultraspec::oracle::exact_moments;

pub fn run_example() -> ultraspec::Result<()> {
    for beta in [0.5, 1.0, 2.0] {
        let model = NoiseModel::boltzmann(2, 10, beta)?;
        let closed = analytic_moments(&model)?;
        let exact = exact_moments(&model.params(), 10, &DiscState::zeros(2, 10))?;
        println!(
            "beta {beta}: mean {:.6} (exact {:.6}), var {:.6} (exact {:.6})",
            closed.mean, exact.mean, closed.variance, exact.variance
        );
        assert!((closed.mean - exact.mean).abs() < 1e-10);
        assert!((closed.variance - exact.variance).abs() < 1e-10);
    }

    let model = NoiseModel::boltzmann(2, 100, 1.0)?;
    let finite = analytic_moments(&model)?;
    let limit = asymptotic_moments(&model)?;
    println!(
        "r = 100: mean {:.3} vs limit {:.3}, var {:.3} vs limit {:.3}",
        finite.mean, limit.mean, finite.variance, limit.variance
    );
    Ok(())
}

fn main() {
    run_example().expect("error_model_moments failed");
}
