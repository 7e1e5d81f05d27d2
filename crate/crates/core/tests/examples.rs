macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(coefficient_forms, "coefficient_forms.rs");
example!(parisi_spectrum, "parisi_spectrum.rs");
example!(block_rectangular_spectrum, "block_rectangular_spectrum.rs");
example!(eigenvectors, "eigenvectors.rs");
example!(verify_oracle, "verify_oracle.rs");
example!(error_model_moments, "error_model_moments.rs");
example!(monte_carlo, "monte_carlo.rs");
example!(beta_sweep, "beta_sweep.rs");
example!(equilibration, "equilibration.rs");

#[test]
fn coefficient_forms_runs() {
    coefficient_forms::run_example().unwrap();
}

#[test]
fn parisi_spectrum_runs() {
    parisi_spectrum::run_example().unwrap();
}

#[test]
fn block_rectangular_spectrum_runs() {
    block_rectangular_spectrum::run_example().unwrap();
}

#[test]
fn eigenvectors_runs() {
    eigenvectors::run_example().unwrap();
}

#[test]
fn verify_oracle_runs() {
    verify_oracle::run_example().unwrap();
}

#[test]
fn error_model_moments_runs() {
    error_model_moments::run_example().unwrap();
}

#[test]
fn monte_carlo_runs() {
    monte_carlo::run_example().unwrap();
}

#[test]
fn beta_sweep_runs() {
    beta_sweep::run_example().unwrap();
}

#[test]
fn equilibration_runs() {
    equilibration::run_example().unwrap();
}
