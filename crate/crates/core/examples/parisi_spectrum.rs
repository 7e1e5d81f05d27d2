// Closed-form spectrum of a Parisi matrix `Q`, checked against the dense
// matrix.

use ultraspec::hiermat::build_q;
use ultraspec::oracle::relative_residual;
use ultraspec::spectra::{eigenvector_q, spectrum_q, total_multiplicity, EncodingSequence};
use ultraspec::HierParams;

pub fn run_example() -> ultraspec::Result<()> {
    let params = HierParams::from_a(3, 3, vec![0.5, 0.25, 0.15, 0.1])?;
    let lines = spectrum_q(&params)?;
    for line in &lines {
        println!("{:>8.4}  x{:<3} {}", line.value.re, line.multiplicity, line.label);
    }
    assert_eq!(total_multiplicity(&lines), 27);

    let q = build_q(&params)?;
    let word = EncodingSequence::parse(3, "210")?;
    let pair = eigenvector_q(&params, &word)?;
    let res = relative_residual(q.entries(), &pair.vector, pair.value);
    println!("word {word}: lambda = {:.4}, residual {res:.1e}", pair.value.re);
    assert!(res < 1e-12);
    Ok(())
}

fn main() {
    run_example().expect("parisi_spectrum failed");
}
