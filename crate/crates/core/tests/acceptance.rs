//! Acceptance criteria, one test per criterion. Each prints a single
//! `PASS`/`FAIL` line with the measured error and runtime.

use std::process::Command;
use std::time::{Duration, Instant};

use jacobi_spectra::green::{green, kernel_j};
use jacobi_spectra::spectrum::{discrete_spectrum, eigenvector_check, ReconcileOptions};
use jacobi_spectra::verify::{self, CorpusShape};
use jacobi_spectra::{jost_backsubstitute, jost_function, omega_constant, truncated_eigenvalues, Complex64};
use jacobi_spectra::{ComplexJacobiOperator, JostSolution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(id: u32, title: &str, ok: bool, detail: String, elapsed: Duration, limit: Duration) {
    let in_time = elapsed <= limit;
    let verdict = if ok && in_time { "PASS" } else { "FAIL" };
    println!(
        "criterion {id:>2} {verdict} {title}: {detail}; {:.3} s (limit {} s)",
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(ok, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} exceeded its time limit");
}

fn summarize(outcomes: &[verify::SuiteOutcome]) -> (bool, String) {
    let ok = outcomes.iter().all(|o| o.ok());
    let parts: Vec<String> = outcomes
        .iter()
        .map(|o| {
            let mut s = format!("{} {}/{}", o.name, o.passed, o.total);
            if let Some(f) = &o.first_failure {
                s.push_str(&format!(" [{f}]"));
            }
            s
        })
        .collect();
    (ok, parts.join(", "))
}

/// Bisection on `t e^t = 1`.
fn omega_oracle() -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid.exp() < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `U_k(x)` from `U_0 = 1`, `U_1 = 2x`, `U_{k+1} = 2x U_k - U_{k-1}`.
fn chebyshev_u(k: usize, x: Complex64) -> Complex64 {
    let (mut u0, mut u1) = (c(1.0, 0.0), 2.0 * x);
    if k == 0 {
        return u0;
    }
    for _ in 1..k {
        let u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    u1
}

#[test]
fn criterion_01_omega_constant() {
    let start = Instant::now();
    let t = omega_constant();
    let elapsed = start.elapsed();
    let residual = (t * t.exp() - 1.0).abs();
    let ok = residual < 1e-15 && (t - 0.567).abs() < 5e-4 && (t - omega_oracle()).abs() < 1e-15;
    report(
        1,
        "Omega constant",
        ok,
        format!("t = {t}, |t e^t - 1| = {residual:.1e}"),
        elapsed,
        Duration::from_millis(1),
    );
}

/// Checks a two-root or one-root anchor: Jost coefficients, spectrum from
/// zeros, truncation at `N = 400`.
fn anchor(op: &ComplexJacobiOperator, coefficients: &[Complex64], eigenvalues: &[f64]) -> (bool, String) {
    let v0 = jost_function(op);
    let coef_err = v0
        .coefficients()
        .iter()
        .zip(coefficients)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let coef_ok = v0.coefficients().len() == coefficients.len() && coef_err < 1e-15;

    let spectrum = discrete_spectrum(op);
    let spec_err = eigenvalues
        .iter()
        .map(|&e| spectrum.iter().map(|s| (s.lambda - c(e, 0.0)).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let spec_ok = spectrum.len() == eigenvalues.len() && spec_err < 1e-12;

    let oracle = truncated_eigenvalues(op, 400).unwrap();
    let oracle_err = eigenvalues
        .iter()
        .map(|&e| oracle.iter().map(|w| (w - c(e, 0.0)).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let oracle_ok = oracle_err < 1e-6;
    (
        coef_ok && spec_ok && oracle_ok,
        format!("coefficient error {coef_err:.1e}, spectrum error {spec_err:.1e}, truncation error {oracle_err:.1e}"),
    )
}

#[test]
fn criterion_02_rank_one_anchor() {
    let start = Instant::now();
    let op = ComplexJacobiOperator::diagonal(&[(1, c(3.0, 0.0))]).unwrap();
    // z = 1/3 is the root of 1 - 3z and z + 1/z = 1/3 + 3
    let (ok, detail) = anchor(&op, &[c(1.0, 0.0), c(-3.0, 0.0)], &[1.0 / 3.0 + 3.0]);
    report(2, "rank-one anchor b1 = 3", ok, detail, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_03_off_diagonal_anchor() {
    let start = Instant::now();
    let two = [(1, c(2.0, 0.0))];
    let op = ComplexJacobiOperator::new(&two, &[], &two).unwrap();
    // roots ±1/√3 of 1 - 3z², z + 1/z = ±(1/√3 + √3)
    let e = 1.0 / 3f64.sqrt() + 3f64.sqrt();
    let (ok, detail) = anchor(&op, &[c(1.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0)], &[-e, e]);
    report(3, "off-diagonal anchor a1 = c1 = 2", ok, detail, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_04_green_kernel_identities() {
    let start = Instant::now();
    let mut outcomes = vec![
        verify::green_recurrence_m(SEED, 100),
        verify::green_recurrence_n(SEED, 100),
        verify::kernel_three_term(&verify::corpus(SEED, 100, CorpusShape::default()), SEED, 100),
    ];

    // closed form against the Chebyshev recurrence, all n < m ≤ 20
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for k in 0..100 {
        let z = if k == 0 { c(1.0, 0.0) } else { verify::random_in_annulus(&mut rng, 0.5, 1.0) };
        for m in 1..=20 {
            for n in 0..m {
                let g = green(n, m, z).unwrap();
                let u = chebyshev_u(m - n - 1, (z + z.inv()) / 2.0);
                worst = worst.max((g - u).norm() / u.norm().max(1.0));
                checks += 1;
            }
        }
    }
    outcomes.push(verify::SuiteOutcome {
        name: "chebyshev",
        passed: if worst < 1e-10 { checks } else { 0 },
        total: checks,
        worst_ratio: worst / 1e-10,
        first_failure: None,
    });

    // J(n, m) itself for the free operator is zero
    let free = ComplexJacobiOperator::free();
    let free_ok = (0..20).all(|n| kernel_j(&free, n, n + 3, c(0.5, 0.5)).unwrap() == c(0.0, 0.0));

    let (ok, detail) = summarize(&outcomes);
    report(4, "Green kernel identities", ok && free_ok, detail, start.elapsed(), Duration::from_secs(5));
}

fn solutions(ops: &[ComplexJacobiOperator]) -> Vec<JostSolution> {
    ops.iter().map(jost_backsubstitute).collect()
}

#[test]
fn criterion_05_jost_bounds() {
    let start = Instant::now();
    let ops = verify::corpus(SEED, 200, CorpusShape::default());
    let sols = solutions(&ops);
    let (agree, iterates) = verify::successive_approximations(&sols, SEED, 50);
    let (first, second) = verify::jost_error_bounds(&sols, SEED, 50);
    let outcomes = [agree, iterates, first, second, verify::degree_bound(&sols)];
    let (ok, detail) = summarize(&outcomes);
    report(5, "Jost solution bounds", ok, detail, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_06_zero_free_region() {
    let start = Instant::now();
    let ops = verify::corpus(SEED ^ 6, 500, CorpusShape::default());
    let sols = solutions(&ops);
    let outcomes = [
        verify::zero_free_omega(&sols, SEED, 200),
        verify::no_spectrum_rescaled(&ops, SEED),
    ];
    let (ok, detail) = summarize(&outcomes);
    report(6, "zero-free region and no-spectrum criterion", ok, detail, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_07_08_reconciliation_and_rectangles() {
    let start = Instant::now();
    let ops = verify::corpus(SEED, 200, CorpusShape::default());
    let sols = solutions(&ops);
    let options = ReconcileOptions {
        n: 400,
        band_margin: 0.1,
        match_tol: 1e-4,
        stability_tol: 1e-6,
    };
    let rec = verify::reconcile_corpus(&ops, options);

    let mut residual_worst: f64 = 0.0;
    let mut residual_ok = true;
    for op in &ops {
        for ev in discrete_spectrum(op) {
            match eigenvector_check(op, ev.z, op.support_bound() + 50) {
                Ok(r) => residual_worst = residual_worst.max(r),
                Err(_) => residual_ok = false,
            }
        }
    }
    residual_ok &= residual_worst < 1e-10;

    let outcomes = [
        verify::zeros_to_oracle(&ops, &rec),
        verify::oracle_to_zeros(&rec),
        verify::free_region_excludes_spectrum(&ops, &rec),
        verify::eigenvector_simplicity(&sols),
    ];
    let (ok, detail) = summarize(&outcomes);
    let elapsed = start.elapsed();
    report(
        7,
        "truncation reconciliation",
        ok && residual_ok,
        format!("{detail}, eigenvector residual {residual_worst:.1e}"),
        elapsed,
        Duration::from_secs(300),
    );

    // rectangles: the corpus plus a dedicated sweep of operators with
    // σ₀(0) just below t, where the rectangles apply
    let rect_start = Instant::now();
    let mut outcomes = vec![verify::rectangle_enclosure(&ops, SEED)];
    let extra = verify::corpus(SEED ^ 8, 3000, CorpusShape::default());
    outcomes.push(verify::rectangle_enclosure(&extra, SEED ^ 8));
    let (ok, detail) = summarize(&outcomes);
    report(8, "rectangle enclosure", ok, detail, elapsed + rect_start.elapsed(), Duration::from_secs(300));
}

#[test]
fn criterion_09_oracle_self_test() {
    let start = Instant::now();
    let free = ComplexJacobiOperator::free();
    let mut worst: f64 = 0.0;
    for n in [3usize, 10, 100] {
        let eig = truncated_eigenvalues(&free, n).unwrap();
        let mut exact: Vec<f64> = (1..=n)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos())
            .collect();
        exact.sort_by(f64::total_cmp);
        assert_eq!(eig.len(), n);
        for (w, e) in eig.iter().zip(&exact) {
            worst = worst.max((w - c(*e, 0.0)).norm());
        }
    }
    report(
        9,
        "truncation oracle on the free operator",
        worst < 1e-10,
        format!("max error {worst:.1e}"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_10_cli_determinism_and_exit_codes() {
    let start = Instant::now();
    let exe = env!("CARGO_BIN_EXE_jacobi-spectra");
    let run = || {
        Command::new(exe)
            .args(["verify", "--seed", "7", "--corpus-size", "10"])
            .env_remove("JACOBI_SPECTRA_SEED")
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    let identical = first.stdout == second.stdout && !first.stdout.is_empty();
    let verify_ok = first.status.code() == Some(0) && second.status.code() == Some(0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"b": [{"n": 0, "re": 1, "im": 0}]}"#).unwrap();
    let out = Command::new(exe).arg("jost").arg(&bad).output().unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr);
    let schema_ok = out.status.code() == Some(2) && stderr.contains("b[0].n");

    report(
        10,
        "CLI determinism and exit codes",
        identical && verify_ok && schema_ok,
        format!(
            "identical reports: {identical}, verify exit {:?}, schema error exit {:?}",
            first.status.code(),
            out.status.code()
        ),
        start.elapsed() / 2,
        Duration::from_secs(10),
    );
}

#[test]
fn random_annulus_sampler_stays_in_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let r = rng.gen_range(0.5..=1.0);
        let z = verify::random_in_annulus(&mut rng, r, r);
        assert!((z.norm() - r).abs() < 1e-12);
    }
}
