// Spectra of `(T·Q)^r`, grouped by zero-cluster class, and of `T·Q` for
// prime `r`.

use ultraspec::spectra::{classify_word, spectrum_qrect, spectrum_qrect_power, EncodingSequence};
use ultraspec::HierParams;

pub fn run_example() -> ultraspec::Result<()> {
    let params = HierParams::from_a(2, 5, vec![0.3, 0.25, 0.2, 0.15, 0.07, 0.03])?;

    println!("(T.Q)^5:");
    for line in spectrum_qrect_power(&params)? {
        println!("  {:>12.6e}  x{:<2} {}", line.value.re, line.multiplicity, line.label);
    }

    println!("T.Q:");
    for line in spectrum_qrect(&params)? {
        println!(
            "  {:>9.5} {:+.5}i  x{:<2} {}",
            line.value.re, line.value.im, line.multiplicity, line.label
        );
    }

    // the class of a word is read cyclically: 01100 has one run of three zeros
    let part = classify_word(&EncodingSequence::parse(2, "01100")?)?;
    println!("01100 -> {part}");
    assert_eq!(part.m(), 3);
    Ok(())
}

fn main() {
    run_example().expect("block_rectangular_spectrum failed");
}
