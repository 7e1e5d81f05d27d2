// Dense rank and residual checks of every closed-form spectral line.

use ultraspec::noise::NoiseModel;
use ultraspec::oracle::{verify_spectrum, Status, Which};

pub fn run_example() -> ultraspec::Result<()> {
    let params = NoiseModel::boltzmann(2, 5, 1.0)?.params();
    for which in [Which::Q, Which::QrectPower, Which::Qrect] {
        let report = verify_spectrum(&params, which)?;
        let failed = report.checks.iter().filter(|c| c.status == Status::Fail).count();
        println!("{which:>5}: {} checks, {failed} failed", report.checks.len());
        if let Some(check) = report.check("phase-convention") {
            println!("       {}", check.detail);
        }
        assert!(report.all_passed());
    }
    Ok(())
}

fn main() {
    run_example().expect("verify_oracle failed");
}
