//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ultraspec::hiermat::{build_q, build_qrect, build_s, build_t};
use ultraspec::noise::{
    analytic_moments, asymptotic_moments, beta_sweep, equilibration_report, simulate_full_cycle, BetaGrid, DiscState,
    NoiseModel, SweepOptions,
};
use ultraspec::oracle::{exact_moments, verify_spectrum, Status, VerificationReport, Which};
use ultraspec::spectra::{
    collapse_values, enumerate_partitions, spectrum_q, spectrum_q_qform, spectrum_qrect, spectrum_qrect_power,
    total_multiplicity, EncodingSequence, LineLabel, WordClass,
};
use ultraspec::{CoeffForm, HierParams};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn random_a(rng: &mut ChaCha8Rng, r: usize) -> Vec<f64> {
    (0..=r).map(|_| rng.random_range(0.1..=1.0)).collect()
}

fn max_residual(report: &VerificationReport) -> f64 {
    report.checks.iter().filter_map(|c| c.max_residual).fold(0.0, f64::max)
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed < Duration::from_secs(limit_s)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut cases, mut worst, mut bad) = (0, 0.0f64, Vec::new());
    for p in [2, 3] {
        for r in [2, 3, 5] {
            for _ in 0..20 {
                let params = HierParams::from_a(p, r, random_a(&mut rng, r)).unwrap();
                let report = verify_spectrum(&params, Which::Q).unwrap();
                let total = total_multiplicity(&spectrum_q(&params).unwrap());
                worst = worst.max(max_residual(&report));
                if !report.all_passed() || total != (p as u64).pow(r as u32) {
                    bad.push(format!("p={p} r={r}"));
                }
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && worst <= 1e-10 && within(elapsed, 30),
        format!("{cases} random Q spectra vs dense oracle, max residual {worst:.1e}, {elapsed:.1?}, failures {bad:?}"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for p in [2, 3] {
        for r in [2, 3, 5] {
            for _ in 0..20 {
                let params = HierParams::from_a(p, r, random_a(&mut rng, r)).unwrap();
                let q_params = params.convert(CoeffForm::Q).unwrap();
                let a_lines = spectrum_q(&params).unwrap();
                let q_lines = spectrum_q_qform(&q_params).unwrap();
                for (x, y) in a_lines.iter().zip(&q_lines) {
                    worst = worst.max((x.value - y.value).norm());
                    if x.multiplicity != y.multiplicity {
                        worst = f64::INFINITY;
                    }
                }
                cases += 1;
            }
        }
    }
    outcome(
        worst <= 1e-12,
        format!("{cases} cases, entry-value vs weight form max deviation {worst:.1e}"),
    )
}

fn brute_force_partitions(r: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut nu = vec![0usize; m];
    loop {
        let weight: usize = nu.iter().enumerate().map(|(i, n)| (i + 1) * n).sum();
        let clusters: usize = nu.iter().sum();
        if weight == m && clusters >= 1 && clusters <= r - m {
            out.push(nu.clone());
        }
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            if nu[i] < m / (i + 1) {
                nu[i] += 1;
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}

fn class_label(word: &EncodingSequence) -> String {
    let r = word.r();
    match word.class() {
        WordClass::ZeroFree => LineLabel::Prop2 { m: 0, nu: vec![] },
        WordClass::AllZero => LineLabel::Prop2 { m: r, nu: vec![] },
        WordClass::Clustered(part) => LineLabel::Prop2 {
            m: part.m(),
            nu: part.nu().to_vec(),
        },
    }
    .to_string()
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut problems = Vec::new();
    let mut worst = 0.0f64;
    for (p, r) in [(2, 3), (2, 5), (3, 3)] {
        let mut counts = std::collections::BTreeMap::<String, u64>::new();
        for word in EncodingSequence::all(p, r) {
            *counts.entry(class_label(&word)).or_default() += 1;
        }
        for _ in 0..5 {
            let params = HierParams::from_a(p, r, random_a(&mut rng, r)).unwrap();
            let expected: std::collections::BTreeMap<String, u64> = spectrum_qrect_power(&params)
                .unwrap()
                .iter()
                .map(|l| (l.label.to_string(), l.multiplicity))
                .collect();
            if expected != counts {
                problems.push(format!("class counts p={p} r={r}"));
            }
            let report = verify_spectrum(&params, Which::QrectPower).unwrap();
            worst = worst.max(max_residual(&report));
            if !report.all_passed() {
                problems.push(format!("dense check p={p} r={r}"));
            }
        }
    }
    let mut partitions = 0;
    for r in 2..=12 {
        for m in 1..r {
            let mut got: Vec<Vec<usize>> = enumerate_partitions(r, m)
                .unwrap()
                .iter()
                .map(|c| c.nu().to_vec())
                .collect();
            let mut want = brute_force_partitions(r, m);
            let sorted = got.windows(2).all(|w| w[0] < w[1]);
            got.sort();
            want.sort();
            partitions += got.len();
            if got != want || !sorted {
                problems.push(format!("partitions r={r} m={m}"));
            }
        }
    }
    outcome(
        problems.is_empty() && worst <= 1e-10,
        format!(
            "class counts exact, (TQ)^r dense residual {worst:.1e}, {partitions} partitions vs brute force, problems {problems:?}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut problems = Vec::new();
    let (mut worst_root, mut worst_res, mut phase_checks) = (0.0f64, 0.0f64, 0);
    for (p, r) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)] {
        for _ in 0..3 {
            let params = HierParams::from_a(p, r, random_a(&mut rng, r)).unwrap();
            let lines = spectrum_qrect(&params).unwrap();
            if total_multiplicity(&lines) != (p as u64).pow(r as u32) {
                problems.push(format!("total p={p} r={r}"));
            }
            let mut powered = lines.clone();
            for line in &mut powered {
                line.value = line.value.powu(r as u32);
            }
            let a = collapse_values(&powered, 1e-10);
            let b = collapse_values(&spectrum_qrect_power(&params).unwrap(), 1e-10);
            if a.len() != b.len() {
                problems.push(format!("root multiset p={p} r={r}"));
            }
            for ((x, m), (y, n)) in a.iter().zip(&b) {
                worst_root = worst_root.max((x - y).norm());
                if m != n {
                    problems.push(format!("root multiplicity p={p} r={r}"));
                }
            }
            let report = verify_spectrum(&params, Which::Qrect).unwrap();
            worst_res = worst_res.max(
                report
                    .checks
                    .iter()
                    .filter(|c| c.name.starts_with("P3"))
                    .filter_map(|c| c.max_residual)
                    .fold(0.0, f64::max),
            );
            match report.check("phase-convention") {
                Some(c) if c.status == Status::Pass => phase_checks += 1,
                _ => problems.push(format!("phase convention p={p} r={r}")),
            }
            if !report.all_passed() {
                let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
                problems.push(format!("p={p} r={r}: {failed:?}"));
            }
        }
    }
    outcome(
        problems.is_empty() && worst_root <= 1e-10 && worst_res <= 1e-10,
        format!(
            "r-th powers vs (TQ)^r multiset {worst_root:.1e}, eigenvector residual {worst_res:.1e}, \
             {phase_checks} phase-convention checks recorded, problems {problems:?}"
        ),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for r in [6, 8, 10] {
        for beta in [0.5, 1.0, 2.0] {
            let model = NoiseModel::boltzmann(2, r, beta).unwrap();
            let closed = analytic_moments(&model).unwrap();
            let exact = exact_moments(&model.params(), r, &DiscState::zeros(2, r)).unwrap();
            worst = worst
                .max((closed.mean - exact.mean).abs())
                .max((closed.variance - exact.variance).abs());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-10 && within(elapsed, 60),
        format!("closed-form vs exact evolution, max deviation {worst:.1e}, {elapsed:.1?}"),
    )
}

fn criterion_6() -> Outcome {
    let model = NoiseModel::boltzmann(2, 20, 1.0).unwrap();
    let initial = DiscState::zeros(2, 20);
    let mc = simulate_full_cycle(&model, &initial, 20_240_601, 100_000).unwrap();
    let again = simulate_full_cycle(&model, &initial, 20_240_601, 100_000).unwrap();
    let closed = analytic_moments(&model).unwrap();
    let z = (mc.mean - closed.mean) / mc.std_error_mean;
    let identical =
        mc.mean.to_bits() == again.mean.to_bits() && mc.variance.to_bits() == again.variance.to_bits() && mc == again;
    outcome(
        z.abs() <= 4.0 && identical,
        format!(
            "mean {:.5} +- {:.5} vs {:.5} (z = {z:.2}), rerun bit-identical: {identical}",
            mc.mean, mc.std_error_mean, closed.mean
        ),
    )
}

fn criterion_7() -> Outcome {
    let grid: BetaGrid = "0.1:8:80:log".parse().unwrap();
    let opts = SweepOptions {
        p: 2,
        r: 100,
        n_trials: 20_000,
        seed: 7,
        exact_cap: 4096,
    };
    let rows = beta_sweep(&grid, &opts).unwrap();
    let mean: Vec<f64> = rows.iter().map(|r| r.mean_analytic.unwrap()).collect();
    let var: Vec<f64> = rows.iter().map(|r| r.var_analytic.unwrap()).collect();

    let low = (mean[0] - 50.0).abs() <= 1.0 && (var[0] - 25.0).abs() <= 1.0;
    let mut tail = true;
    let mut tail_points = 0;
    for (i, row) in rows.iter().enumerate().filter(|(_, row)| row.beta >= 5.0) {
        let scale = 50.0 * (-row.beta).exp();
        tail &= (mean[i] - var[i]).abs() / mean[i] <= 0.05;
        tail &= (mean[i] - scale).abs() <= 0.1 * scale && (var[i] - scale).abs() <= 0.1 * scale;
        tail_points += 1;
    }
    let (peak_at, peak) = var
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::MIN), |b, (i, v)| if v > b.1 { (i, v) } else { b });
    let interior = peak > var[0] && peak > var[var.len() - 1];
    // the simulated curve must follow the closed form
    let outliers = rows
        .iter()
        .filter(|r| (r.mean_mc - r.mean_analytic.unwrap()).abs() > 4.0 * r.stderr_mean.max(1e-12))
        .count();
    outcome(
        low && tail && tail_points > 0 && interior && outliers <= 1,
        format!(
            "beta=0.1: mean {:.3} var {:.3}; {tail_points} tail points ok: {tail}; variance peak {peak:.3} at beta {:.3}; \
             MC points beyond 4 SE: {outliers}/80",
            mean[0], var[0], rows[peak_at].beta
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut worst_mean = 0.0f64;
    let mut worst_var = 0.0f64;
    for beta in [0.5, 1.0, 2.0] {
        let model = NoiseModel::boltzmann(2, 100, beta).unwrap();
        let finite = analytic_moments(&model).unwrap();
        let limit = asymptotic_moments(&model).unwrap();
        worst_mean = worst_mean.max((finite.mean - limit.mean).abs());
        worst_var = worst_var.max((finite.variance - limit.variance).abs());
    }
    outcome(
        worst_mean <= 2.0 && worst_var <= 2.0,
        format!("r=100 large-r limit: max |diff| mean {worst_mean:.2e}, variance {worst_var:.2e}"),
    )
}

fn criterion_9() -> Outcome {
    let mut problems = Vec::new();
    let mut tightest = f64::INFINITY;
    for r in [20, 100] {
        for beta in [0.5, 1.0, 2.0, 4.0] {
            let rep = equilibration_report(&NoiseModel::boltzmann(2, r, beta).unwrap()).unwrap();
            let (lo, hi) = rep.bounds.unwrap();
            tightest = tightest.min(rep.gap_shifted - lo).min(hi - rep.gap_shifted);
            if !(lo - 1e-12 <= rep.gap_shifted && rep.gap_shifted <= hi + 1e-12) {
                problems.push(format!("r={r} beta={beta}"));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!("8 (r, beta) pairs, smallest margin {tightest:.2e}, violations {problems:?}"),
    )
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let shapes = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)];
    let mut problems = Vec::new();
    for case in 0..100 {
        let (p, r) = shapes[rng.random_range(0..shapes.len())];
        let raw = random_a(&mut rng, r);
        let z: f64 = raw.iter().sum();
        let a: Vec<f64> = raw.iter().map(|x| x / z).collect();
        let params = HierParams::from_a(p, r, a.clone()).unwrap();
        let dim = params.dim();
        let id = DMatrix::<Complex64>::identity(dim, dim);

        let g = rng.random_range(0..=r);
        let h = rng.random_range(0..=r);
        let sg = build_s(&params, g).unwrap();
        let sh = build_s(&params, h).unwrap();
        let smax = build_s(&params, g.max(h)).unwrap();
        let semigroup = max_diff(sg.matmul(&sg).entries(), sg.entries()) < 1e-14
            && max_diff(sg.matmul(&sh).entries(), smax.entries()) < 1e-14;

        let t = build_t(&params).unwrap();
        let orthogonal = max_diff(&(t.entries().transpose() * t.entries()), &id) < 1e-15
            && max_diff(t.pow(r as u32).entries(), &id) < 1e-15;

        let qrect = build_qrect(&params).unwrap();
        let q = build_q(&params).unwrap();
        let stochastic = [q.entries(), qrect.entries()].iter().all(|m| {
            m.iter().all(|z| z.re >= -1e-15)
                && m.column_iter()
                    .all(|c| (c.iter().map(|z| z.re).sum::<f64>() - 1.0).abs() < 1e-12)
        });

        let round_trip = [CoeffForm::Q, CoeffForm::B, CoeffForm::C].iter().all(|&form| {
            let back = params.convert(form).unwrap().convert(CoeffForm::A).unwrap();
            back.coeffs().iter().zip(&a).all(|(x, y)| (x - y).abs() < 1e-12)
        });

        if !(semigroup && orthogonal && stochastic && round_trip) {
            problems.push(format!(
                "case {case} p={p} r={r}: semigroup {semigroup} orthogonal {orthogonal} stochastic {stochastic} round-trip {round_trip}"
            ));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        problems.is_empty() && within(elapsed, 10),
        format!("100 random cases, {elapsed:.1?}, problems {problems:?}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Q spectrum and multiplicities vs dense rank/residual", criterion_1),
        ("entry-value form and weight form spectra agree", criterion_2),
        ("(TQ)^r classes: word counts, dense checks, partitions", criterion_3),
        ("TQ phase-split spectrum and eigenvectors, prime r", criterion_4),
        ("closed-form error moments vs exact evolution", criterion_5),
        ("Monte Carlo mean within 4 SE, deterministic rerun", criterion_6),
        ("r=100 beta sweep: limits, tail, interior variance peak", criterion_7),
        ("large-r moments within 2 of finite-r moments", criterion_8),
        ("equilibration gap bounds", criterion_9),
        ("structural invariants on 100 random cases", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        if !result.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if result.ok { "PASS" } else { "FAIL" },
            result.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
