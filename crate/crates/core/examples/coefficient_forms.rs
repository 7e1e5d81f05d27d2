// The same operator written in the four coefficient forms.
//
// ```bash
// cargo run --example coefficient_forms
// ```

use ultraspec::{CoeffForm, HierParams};

pub fn run_example() -> ultraspec::Result<()> {
    let params = HierParams::from_a(2, 3, vec![0.4, 0.3, 0.2, 0.1])?;
    for form in [CoeffForm::A, CoeffForm::Q, CoeffForm::B, CoeffForm::C] {
        let converted = params.convert(form)?;
        println!("{form}: {:?}", converted.coeffs());
        let back = converted.a_coeffs()?;
        for (x, y) in back.iter().zip(params.coeffs()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("coefficient_forms failed");
}
