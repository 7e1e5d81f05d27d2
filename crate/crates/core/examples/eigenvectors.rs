// Eigenvectors of `T·Q` built as Krylov combinations of a character vector.

use ultraspec::hiermat::build_qrect;
use ultraspec::oracle::relative_residual;
use ultraspec::spectra::{eigenvector_qrect, EncodingSequence};
use ultraspec::HierParams;

pub fn run_example() -> ultraspec::Result<()> {
    let params = HierParams::from_a(2, 3, vec![0.45, 0.3, 0.15, 0.1])?;
    let qrect = build_qrect(&params)?;
    let word = EncodingSequence::parse(2, "100")?;
    for j in 0..3 {
        let pair = eigenvector_qrect(&params, &word, j)?;
        let res = relative_residual(qrect.entries(), &pair.vector, pair.value);
        println!(
            "{}: {:.6} {:+.6}i  residual {res:.1e}",
            pair.label, pair.value.re, pair.value.im
        );
        assert!(res < 1e-10);
    }
    Ok(())
}

fn main() {
    run_example().expect("eigenvectors failed");
}
