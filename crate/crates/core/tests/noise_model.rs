use std::collections::HashMap;

use num_rational::Ratio;
use ultraspec::noise::{
    analytic_moments, simulate_full_cycle, simulate_histogram, DiscState, Frame, MomentReport, NoiseModel,
};
use ultraspec::oracle::exact_moments;

type Q = Ratio<i128>;

/// Exact distribution of the error count after `r` steps, obtained by
/// following every random path with rational weights.
fn exact_k_distribution(p: usize, weights: &[Q], start: &[u8], frame: Frame) -> Vec<Q> {
    let r = start.len();
    let mut states: HashMap<Vec<u8>, Q> = HashMap::from([(start.to_vec(), Q::from_integer(1))]);
    for t in 0..r {
        let mut next: HashMap<Vec<u8>, Q> = HashMap::new();
        for (cells, prob) in &states {
            for (gamma, &w) in weights.iter().enumerate() {
                if w == Q::from_integer(0) {
                    continue;
                }
                let branch = *prob * w / Q::from_integer((p as i128).pow(gamma as u32));
                for fill in 0..p.pow(gamma as u32) {
                    let mut c = cells.clone();
                    let mut digits = fill;
                    for slot in r - gamma..r {
                        let symbol = (digits % p) as u8;
                        digits /= p;
                        match frame {
                            Frame::Lab => c[slot] = symbol,
                            Frame::Disc => c[(slot + r - t) % r] = symbol,
                        }
                    }
                    if frame == Frame::Lab {
                        c.rotate_right(1);
                    }
                    *next.entry(c).or_default() += branch;
                }
            }
        }
        states = next;
    }
    let mut dist = vec![Q::from_integer(0); r + 1];
    for (cells, prob) in states {
        let k = cells.iter().zip(start).filter(|(a, b)| a != b).count();
        dist[k] += prob;
    }
    dist
}

fn dyadic_weights(r: usize) -> Vec<Q> {
    // 1/2, 1/4, ..., with the remainder on a_r
    let mut w: Vec<Q> = (0..r).map(|g| Q::new(1, 2i128.pow(g as u32 + 1))).collect();
    let used: Q = w.iter().copied().sum();
    w.push(Q::from_integer(1) - used);
    w
}

#[test]
fn lab_and_disc_frames_have_identical_distributions() {
    for (p, r) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4)] {
        let weights = dyadic_weights(r);
        let start: Vec<u8> = (0..r).map(|i| (i * 7 % p) as u8).collect();
        let lab = exact_k_distribution(p, &weights, &start, Frame::Lab);
        let disc = exact_k_distribution(p, &weights, &start, Frame::Disc);
        assert_eq!(lab, disc, "p={p} r={r}");
        assert_eq!(lab.iter().copied().sum::<Q>(), Q::from_integer(1));

        if p == 2 {
            // the rational enumeration agrees with the floating-point evolution
            let a: Vec<f64> = weights.iter().map(|w| *w.numer() as f64 / *w.denom() as f64).collect();
            let model = NoiseModel::new(p, r, a).unwrap();
            let initial = DiscState::new(p, start.clone()).unwrap();
            let oracle = exact_moments(&model.params(), r, &initial).unwrap();
            for (x, y) in lab.iter().zip(&oracle.distribution) {
                assert!((*x.numer() as f64 / *x.denom() as f64 - y).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn full_turn_forgets_the_initial_word() {
    for r in [4, 6, 8] {
        let params = NoiseModel::boltzmann(2, r, 0.7).unwrap().params();
        let reference = exact_moments(&params, r, &DiscState::zeros(2, r)).unwrap().distribution;
        for word in DiscState::all(2, r) {
            let dist = exact_moments(&params, r, &word).unwrap().distribution;
            for (x, y) in dist.iter().zip(&reference) {
                assert!((x - y).abs() < 1e-13, "r={r} word={word}");
            }
        }
    }
}

#[test]
fn analytic_moments_match_exact_evolution() {
    for r in [2, 3, 6, 8, 10] {
        for beta in [0.5, 1.0, 2.0] {
            let model = NoiseModel::boltzmann(2, r, beta).unwrap();
            let closed = analytic_moments(&model).unwrap();
            let exact = exact_moments(&model.params(), r, &DiscState::zeros(2, r)).unwrap();
            assert!((closed.mean - exact.mean).abs() < 1e-10, "r={r} beta={beta}");
            assert!((closed.variance - exact.variance).abs() < 1e-10, "r={r} beta={beta}");
            assert!((exact.generator_variance - exact.variance).abs() < 1e-10);
        }
    }
}

fn within_four_se(mc: &MomentReport, mean: f64, variance: f64) -> bool {
    (mc.mean - mean).abs() <= 4.0 * mc.std_error_mean && (mc.variance - variance).abs() <= 4.0 * mc.std_error_variance
}

#[test]
fn monte_carlo_matches_exact_oracle_r8() {
    let model = NoiseModel::boltzmann(2, 8, 1.0).unwrap();
    let initial = DiscState::parse(2, "01101001").unwrap();
    let exact = exact_moments(&model.params(), 8, &initial).unwrap();
    let mc = simulate_full_cycle(&model, &initial, 2024, 100_000).unwrap();
    assert!(within_four_se(&mc, exact.mean, exact.variance), "{mc:?} vs {exact:?}");
}

#[test]
fn monte_carlo_matches_closed_form() {
    for r in [8, 20] {
        for (i, beta) in [0.5, 1.0, 2.0].into_iter().enumerate() {
            let model = NoiseModel::boltzmann(2, r, beta).unwrap();
            let closed = analytic_moments(&model).unwrap();
            let mc = simulate_full_cycle(&model, &DiscState::zeros(2, r), 100 + i as u64, 100_000).unwrap();
            assert!(
                within_four_se(&mc, closed.mean, closed.variance),
                "r={r} beta={beta}: {mc:?} vs {closed:?}"
            );
        }
    }
}

#[test]
fn disc_frame_simulation_is_the_same_experiment() {
    let model = NoiseModel::boltzmann(3, 6, 0.9).unwrap();
    let initial = DiscState::parse(3, "012210").unwrap();
    let lab = simulate_histogram(&model, &initial, 8, 20_000, Frame::Lab).unwrap();
    let disc = simulate_histogram(&model, &initial, 8, 20_000, Frame::Disc).unwrap();
    assert_eq!(lab, disc);
}

#[test]
fn seeds_change_the_sample() {
    let model = NoiseModel::boltzmann(2, 12, 1.0).unwrap();
    let initial = DiscState::zeros(2, 12);
    let a = simulate_full_cycle(&model, &initial, 1, 10_000).unwrap();
    let b = simulate_full_cycle(&model, &initial, 2, 10_000).unwrap();
    assert_ne!(a, b);
    assert_eq!(a, simulate_full_cycle(&model, &initial, 1, 10_000).unwrap());
}
