//! Seeded property suites over random finitely supported operators.
//!
//! Every suite counts individual checks and records the worst ratio
//! `error / tolerance` seen; a suite passes when every check does. Reports
//! contain no timings, so a fixed seed gives byte-identical output.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::green::{green, kernel_bound_margin, kernel_j, kernel_j_tilde_poly};
use crate::jost::{
    bound_margin_i, bound_margin_ii, default_max_iter, iterate_bound, iterate_bound_ii,
    jost_backsubstitute, jost_successive, JostSolution,
};
use crate::operator::{
    extend_solution, inverse_joukowski, joukowski, wronskian, ComplexJacobiOperator,
    SolutionSegment,
};
use crate::regions::{
    in_omega, in_spectrum_free_region, omega_constant, omega_threshold, spectral_rectangles,
};
use crate::spectrum::{
    discrete_spectrum, eigenvector, eigenvector_check, reconcile, truncated_eigenvalues,
    ReconcileOptions, SpectrumResult,
};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Independent reference computations used by the suites.
pub mod oracles {
    use num_complex::Complex64;

    /// `U_k(x)` by the three-term recurrence `U_{k+1} = 2x U_k - U_{k-1}`.
    pub fn chebyshev_u(k: usize, x: Complex64) -> Complex64 {
        let mut prev = Complex64::new(1.0, 0.0);
        if k == 0 {
            return prev;
        }
        let mut cur = 2.0 * x;
        for _ in 1..k {
            let next = 2.0 * x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Root of `t e^t = 1` by bisection on `[0.5, 0.6]`.
    pub fn omega_by_bisection() -> f64 {
        let (mut lo, mut hi) = (0.5f64, 0.6f64);
        while hi - lo > 1e-16 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if mid * mid.exp() < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Minimal solution `h_m` for `1 ≤ m ≤ len` of the recurrence
    /// `a_{m-1}h_{m-1} + b_m h_m + c_m h_{m+1} = λ h_m`, obtained by
    /// backward recurrence from the free tail `h_m = k z^m` beyond the
    /// perturbation.
    pub fn backward_minimal_solution(
        op: &crate::operator::ComplexJacobiOperator,
        z: Complex64,
        len: usize,
    ) -> Vec<Complex64> {
        let lambda = z + z.inv();
        let tail = op.max_stored_index() + 2;
        let top = tail.max(len) + 1;
        // h[i] = h_i for 0 ≤ i ≤ top
        let mut h = vec![Complex64::new(0.0, 0.0); top + 1];
        h[top] = z.powu(top as u32);
        h[top - 1] = z.powu((top - 1) as u32);
        for m in (1..top).rev() {
            h[m - 1] = ((lambda - op.b(m)) * h[m] - op.c(m) * h[m + 1]) / op.a(m - 1);
        }
        h[1..=len].to_vec()
    }
}

/// Result of one property suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// Largest `error / tolerance` over all checks.
    pub worst_ratio: f64,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

struct Tally {
    name: &'static str,
    passed: usize,
    total: usize,
    worst_ratio: f64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            total: 0,
            worst_ratio: 0.0,
            first_failure: None,
        }
    }

    /// Records a check passing iff `error <= tol`.
    fn check(&mut self, error: f64, tol: f64, context: impl FnOnce() -> String) {
        self.total += 1;
        let ratio = if error <= 0.0 { 0.0 } else { error / tol };
        if ratio.is_nan() || ratio > self.worst_ratio {
            self.worst_ratio = if ratio.is_nan() { f64::INFINITY } else { ratio };
        }
        if error <= tol {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(format!("{} (error {error:.3e}, tol {tol:.1e})", context()));
        }
    }

    fn require(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.check(if ok { 0.0 } else { 1.0 }, 0.5, context);
    }

    fn finish(self) -> SuiteOutcome {
        SuiteOutcome {
            name: self.name,
            passed: self.passed,
            total: self.total,
            worst_ratio: self.worst_ratio,
            first_failure: self.first_failure,
        }
    }
}

/// Shape of the random operator corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusShape {
    pub max_support: usize,
    /// Largest `|a_n - 1|`, `|b_n|`, `|c_n - 1|`.
    pub max_deviation: f64,
}

impl Default for CorpusShape {
    fn default() -> Self {
        Self {
            max_support: 10,
            max_deviation: 3.0,
        }
    }
}

fn random_in_disk<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// Uniform modulus in `[r0, r1]`, uniform argument.
pub fn random_in_annulus<R: Rng>(rng: &mut R, r0: f64, r1: f64) -> Complex64 {
    let r = rng.gen_range(r0..=r1);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// A random operator with support bound at most `shape.max_support`.
///
/// The perturbation amplitude is log-uniform between 1% and 100% of
/// `max_deviation`, so the corpus mixes weak and strong perturbations.
pub fn random_operator<R: Rng>(rng: &mut R, shape: CorpusShape) -> ComplexJacobiOperator {
    let support = rng.gen_range(1..=shape.max_support);
    let amplitude = shape.max_deviation * 10f64.powf(rng.gen_range(-2.0..=0.0));
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    let off_diagonal = |rng: &mut R| loop {
        let v = ONE + random_in_disk(rng, amplitude);
        if v.norm() > 0.05 {
            break v;
        }
    };
    for n in 1..=support {
        if rng.gen_bool(0.7) || n == support {
            b.push((n, random_in_disk(rng, amplitude)));
        }
        // a_n, c_n enter d_{n+1}
        if n < support {
            if rng.gen_bool(0.5) {
                a.push((n, off_diagonal(rng)));
            }
            if rng.gen_bool(0.5) {
                c.push((n, off_diagonal(rng)));
            }
        }
    }
    ComplexJacobiOperator::new(&a, &b, &c).expect("random entries are valid")
}

pub fn corpus(seed: u64, size: usize, shape: CorpusShape) -> Vec<ComplexJacobiOperator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size).map(|_| random_operator(&mut rng, shape)).collect()
}

/// The same operator with every `d_m` multiplied by `s`: `b → s b` and
/// `c_n` adjusted so that `1 - a_n c_n → s (1 - a_n c_n)`.
pub fn scale_perturbation(op: &ComplexJacobiOperator, s: f64) -> Option<ComplexJacobiOperator> {
    let top = op.max_stored_index();
    let b: Vec<_> = (1..=top).map(|n| (n, op.b(n) * s)).collect();
    let a: Vec<_> = (1..=top).map(|n| (n, op.a(n))).collect();
    let mut c = Vec::new();
    for n in 1..=top {
        let ac = ONE + (op.a(n) * op.c(n) - ONE) * s;
        if ac == ZERO {
            return None;
        }
        c.push((n, ac / op.a(n)));
    }
    ComplexJacobiOperator::new(&a, &b, &c).ok()
}

fn suite_rng(seed: u64, suite: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

// ---------------------------------------------------------------- operator

pub fn recurrence_residual(ops: &[ComplexJacobiOperator], seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 1);
    let mut t = Tally::new("operator.recurrence_residual");
    for (i, op) in ops.iter().enumerate() {
        for _ in 0..5 {
            let z = random_in_annulus(&mut rng, 0.1, 0.9);
            let y0 = random_in_disk(&mut rng, 1.0);
            let y1 = random_in_disk(&mut rng, 1.0);
            let seg = extend_solution(op, z, y0, y1, op.support_bound() + 20).unwrap();
            let res = op.recurrence_residual(z, &seg);
            t.check(res, 1e-12 * (1.0 + seg.max_abs()), || format!("op {i}, z = {z}"));
        }
    }
    t.finish()
}

pub fn wronskian_identity(ops: &[ComplexJacobiOperator], seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 2);
    let mut t = Tally::new("operator.wronskian_identity");
    for (i, op) in ops.iter().enumerate() {
        let z = random_in_annulus(&mut rng, 0.1, 0.9);
        let len = op.support_bound() + 6;
        let g = extend_solution(op, z, random_in_disk(&mut rng, 1.0), random_in_disk(&mut rng, 1.0), len).unwrap();
        let h = extend_solution(op, z, random_in_disk(&mut rng, 1.0), random_in_disk(&mut rng, 1.0), len).unwrap();
        let w0 = wronskian(&g, &h, 0).unwrap();
        let scale0 = (g.values[0] * h.values[1]).norm() + (g.values[1] * h.values[0]).norm();
        let mut c_prod = ONE;
        let mut a_prod = ONE;
        for n in 1..len {
            c_prod *= op.c(n);
            a_prod *= op.a(n - 1);
            let wn = wronskian(&g, &h, n).unwrap();
            let lhs = wn * c_prod;
            let rhs = w0 * a_prod;
            let scale_n = (g.values[n] * h.values[n + 1]).norm() + (g.values[n + 1] * h.values[n]).norm();
            let scale = c_prod.norm() * scale_n + a_prod.norm() * scale0;
            t.check((lhs - rhs).norm() / scale, 1e-10, || format!("op {i}, n = {n}, z = {z}"));
        }
    }
    t.finish()
}

pub fn joukowski_roundtrip(seed: u64, samples: usize) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 3);
    let mut t = Tally::new("operator.joukowski_roundtrip");
    for k in 0..samples {
        let lambda = match k {
            0 => Complex64::new(2.0, 0.0),
            1 => Complex64::new(-2.0, 0.0),
            2 => Complex64::new(0.5, 0.0),
            _ => random_in_disk(&mut rng, 10.0),
        };
        let z = inverse_joukowski(lambda);
        let back = joukowski(z).unwrap();
        t.check((back - lambda).norm(), 1e-12, || format!("λ = {lambda}"));
        t.check(z.norm() - 1.0, 1e-14, || format!("|z| for λ = {lambda}"));
    }
    t.finish()
}

pub fn sigma_monotone(ops: &[ComplexJacobiOperator]) -> SuiteOutcome {
    let mut t = Tally::new("operator.sigma_monotone");
    for (i, op) in ops.iter().enumerate() {
        let m = op.support_bound();
        for n in 0..m + 3 {
            let s0 = (op.sigma0(n), op.sigma0(n + 1));
            let s1 = (op.sigma1(n), op.sigma1(n + 1));
            t.check(s0.1 - s0.0, 0.0, || format!("op {i}, σ₀ at n = {n}"));
            t.check(s1.1 - s1.0, 0.0, || format!("op {i}, σ₁ at n = {n}"));
            if n >= m {
                t.require(s0.0 == 0.0 && s1.0 == 0.0, || format!("op {i}, σ nonzero at n = {n} ≥ M"));
            }
        }
    }
    t.finish()
}

// ---------------------------------------------------------------- green

/// `z` samples for the Green-kernel sweeps: annulus `0.5 ≤ |z| ≤ 1` plus `±1`.
fn green_sample_points(seed: u64, suite: u64, count: usize) -> Vec<Complex64> {
    let mut rng = suite_rng(seed, suite);
    let mut zs = vec![ONE, -ONE];
    while zs.len() < count {
        zs.push(random_in_annulus(&mut rng, 0.5, 1.0));
    }
    zs.truncate(count);
    zs
}

fn delta(n: usize, m: usize) -> f64 {
    if n == m {
        1.0
    } else {
        0.0
    }
}

/// `G(n, m+1) + G(n, m-1) - λ G(n, m) = δ(n, m)`, error scaled by `1 + Σ|terms|`.
pub fn green_recurrence_m(seed: u64, z_count: usize) -> SuiteOutcome {
    let mut t = Tally::new("green.recurrence_m");
    for z in green_sample_points(seed, 4, z_count) {
        let lambda = z + z.inv();
        for n in 0..=20 {
            for m in 1..=20 {
                let terms = [
                    green(n, m + 1, z).unwrap(),
                    green(n, m - 1, z).unwrap(),
                    -lambda * green(n, m, z).unwrap(),
                ];
                let sum: Complex64 = terms.iter().sum();
                let scale = 1.0 + terms.iter().map(|v| v.norm()).sum::<f64>();
                let err = (sum - delta(n, m)).norm() / scale;
                t.check(err, 1e-10, || format!("n = {n}, m = {m}, z = {z}"));
            }
        }
    }
    t.finish()
}

/// `G(n-1, m) + G(n+1, m) - λ G(n, m) = δ(n, m)`.
pub fn green_recurrence_n(seed: u64, z_count: usize) -> SuiteOutcome {
    let mut t = Tally::new("green.recurrence_n");
    for z in green_sample_points(seed, 5, z_count) {
        let lambda = z + z.inv();
        for n in 1..=20 {
            for m in 0..=20 {
                let terms = [
                    green(n - 1, m, z).unwrap(),
                    green(n + 1, m, z).unwrap(),
                    -lambda * green(n, m, z).unwrap(),
                ];
                let sum: Complex64 = terms.iter().sum();
                let scale = 1.0 + terms.iter().map(|v| v.norm()).sum::<f64>();
                let err = (sum - delta(n, m)).norm() / scale;
                t.check(err, 1e-10, || format!("n = {n}, m = {m}, z = {z}"));
            }
        }
    }
    t.finish()
}

/// `G(n, m; z) = U_{m-n-1}((z + 1/z)/2)`.
pub fn green_chebyshev(seed: u64, z_count: usize) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 6);
    let mut t = Tally::new("green.chebyshev");
    for z in green_sample_points(seed, 7, z_count) {
        for _ in 0..10 {
            let m = rng.gen_range(1..=10);
            let n = rng.gen_range(0..m);
            let g = green(n, m, z).unwrap();
            let u = oracles::chebyshev_u(m - n - 1, (z + z.inv()) / 2.0);
            t.check((g - u).norm() / u.norm().max(1.0), 1e-10, || format!("n = {n}, m = {m}, z = {z}"));
        }
    }
    t.finish()
}

/// `J(n-1, m) + J(n+1, m) = λ J(n, m)` for `m ≥ n + 2`.
pub fn kernel_three_term(ops: &[ComplexJacobiOperator], seed: u64, z_count: usize) -> SuiteOutcome {
    let mut t = Tally::new("green.kernel_three_term");
    let zs = green_sample_points(seed, 8, z_count);
    for (i, op) in ops.iter().enumerate() {
        // one z per operator keeps the sweep linear in the corpus size
        let z = zs[i % zs.len()];
        let lambda = z + z.inv();
        for n in 1..=18 {
            for m in n + 2..=20 {
                let terms = [
                    kernel_j(op, n - 1, m, z).unwrap(),
                    kernel_j(op, n + 1, m, z).unwrap(),
                    -lambda * kernel_j(op, n, m, z).unwrap(),
                ];
                let sum: Complex64 = terms.iter().sum();
                let scale = 1.0 + terms.iter().map(|v| v.norm()).sum::<f64>();
                t.check(sum.norm() / scale, 1e-10, || format!("op {i}, n = {n}, m = {m}, z = {z}"));
            }
        }
    }
    t.finish()
}

pub fn kernel_bound(ops: &[ComplexJacobiOperator], seed: u64, samples_per_op: usize) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 9);
    let mut t = Tally::new("green.kernel_bound");
    for (i, op) in ops.iter().enumerate() {
        let top = op.support_bound() + 2;
        for _ in 0..samples_per_op {
            let m = rng.gen_range(1..=top);
            let n = rng.gen_range(0..m);
            let z = random_in_annulus(&mut rng, 0.01, 1.0);
            if (z * z - ONE).norm() == 0.0 {
                continue;
            }
            let margin = kernel_bound_margin(op, n, m, z).unwrap();
            t.check(-margin, 1e-12, || format!("op {i}, n = {n}, m = {m}, z = {z}"));
        }
    }
    t.finish()
}

pub fn kernel_poly_consistency(ops: &[ComplexJacobiOperator], seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 10);
    let mut t = Tally::new("green.poly_consistency");
    for (i, op) in ops.iter().enumerate() {
        let top = op.support_bound() + 1;
        for _ in 0..10 {
            let m = rng.gen_range(1..=top);
            let n = rng.gen_range(0..m);
            let z = random_in_annulus(&mut rng, 0.2, 1.0);
            let poly = kernel_j_tilde_poly(op, n, m);
            let from_poly = poly.eval(z);
            let direct = kernel_j(op, n, m, z).unwrap() * z.powi((m - n) as i32);
            let scale = poly.eval_scale(z).max(direct.norm()).max(f64::MIN_POSITIVE);
            t.check((from_poly - direct).norm() / scale, 1e-12, || format!("op {i}, n = {n}, m = {m}, z = {z}"));
        }
    }
    t.finish()
}

// ---------------------------------------------------------------- jost

/// Points in the open annulus `0.05 < |z| < 0.95`.
fn interior_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<Complex64> {
    (0..count).map(|_| random_in_annulus(rng, 0.05, 0.95)).collect()
}

/// `v_n = ṽ_n(z) z^n` solves the gauged recurrence.
pub fn integral_equation_roundtrip(sols: &[JostSolution], seed: u64, z_count: usize) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 11);
    let mut t = Tally::new("jost.integral_equation_solves_recurrence");
    for (i, jost) in sols.iter().enumerate() {
        let op = jost.operator();
        for z in interior_points(&mut rng, z_count) {
            let seg = jost.segment(z, op.support_bound() + 6);
            let res = op.gauged_residual(z, &seg);
            t.check(res, 1e-10, || format!("op {i}, z = {z}"));
        }
    }
    t.finish()
}

/// Back-substitution and successive approximations agree, and the iterates
/// respect both iterate bounds.
pub fn successive_approximations(sols: &[JostSolution], seed: u64, z_count: usize) -> (SuiteOutcome, SuiteOutcome) {
    let mut rng = suite_rng(seed, 12);
    let mut agree = Tally::new("jost.method_agreement");
    let mut bounds = Tally::new("jost.iterate_bound");
    for (i, jost) in sols.iter().enumerate() {
        let op = jost.operator();
        for z in interior_points(&mut rng, z_count) {
            let s = jost_successive(op, z, default_max_iter(op), 0.0).unwrap();
            for (n, v) in s.values.iter().enumerate() {
                let exact = jost.tilde_at(n, z);
                let scale = 1.0 + (1..=s.iterations()).map(|j| s.iterate(n, j).norm()).sum::<f64>();
                agree.check((v - exact).norm() / scale, 1e-10, || format!("op {i}, n = {n}, z = {z}"));
                let far_from_edges = (z * z - ONE).norm() >= 0.05;
                for j in 1..=s.iterations() {
                    let f = s.iterate(n, j).norm();
                    if far_from_edges {
                        let b = iterate_bound(op, z, n, j);
                        bounds.check(f - b, 1e-12 * b.max(1.0), || format!("op {i}, n = {n}, j = {j}, z = {z}"));
                    }
                    let b = iterate_bound_ii(op, n, j);
                    bounds.check(f - b, 1e-12 * b.max(1.0), || format!("op {i}, n = {n}, j = {j}, z = {z} (σ₁)"));
                }
            }
        }
    }
    (agree.finish(), bounds.finish())
}

pub fn degree_bound(sols: &[JostSolution]) -> SuiteOutcome {
    let mut t = Tally::new("jost.degree_bound");
    for (i, jost) in sols.iter().enumerate() {
        let m = jost.operator().support_bound();
        for (n, p) in jost.tilde_polynomials().iter().enumerate() {
            let bound = (2 * (m - n)).saturating_sub(1);
            t.require(p.degree() <= bound, || format!("op {i}, n = {n}: degree {} > {bound}", p.degree()));
            t.require(p.coefficients()[0] == ONE, || format!("op {i}, n = {n}: constant term {}", p.coefficients()[0]));
        }
        for n in m..m + 3 {
            t.require(jost.tilde(n).coefficients() == [ONE], || format!("op {i}: ṽ_{n} ≠ 1"));
        }
    }
    t.finish()
}

/// Error bounds for the Jost solution: `φ σ₀` form off the ring
/// `|z² - 1| < 0.05`, `σ₁` form on the whole closed disk.
pub fn jost_error_bounds(sols: &[JostSolution], seed: u64, z_count: usize) -> (SuiteOutcome, SuiteOutcome) {
    let mut rng = suite_rng(seed, 13);
    let mut first = Tally::new("jost.bound_phi_sigma0");
    let mut second = Tally::new("jost.bound_sigma1");
    let fixed = [ONE, -ONE, ZERO, Complex64::new(0.0, 1.0)];
    for (i, jost) in sols.iter().enumerate() {
        let m = jost.operator().support_bound();
        for k in 0..z_count {
            let z = match fixed.get(k) {
                Some(&z) => z,
                None => random_in_annulus(&mut rng, 0.0, 1.0),
            };
            for n in 0..=m {
                if z != ZERO && z.norm() <= 0.95 && (z * z - ONE).norm() >= 0.05 {
                    let margin = bound_margin_i(jost, z, n).unwrap();
                    first.check(-margin, 1e-12, || format!("op {i}, n = {n}, z = {z}"));
                }
                let margin = bound_margin_ii(jost, z, n).unwrap();
                second.check(-margin, 1e-12, || format!("op {i}, n = {n}, z = {z}"));
            }
        }
    }
    (first.finish(), second.finish())
}

// ---------------------------------------------------------------- regions

pub fn omega_constant_suite() -> SuiteOutcome {
    let mut t = Tally::new("regions.omega_constant");
    let w = omega_constant();
    t.check((w * w.exp() - 1.0).abs(), 1e-15, || format!("t e^t - 1 at t = {w}"));
    t.check((w - oracles::omega_by_bisection()).abs(), 1e-15, || "bisection disagrees".into());
    t.check((w - 0.567).abs(), 5e-4, || "t ≈ 0.567".into());
    t.finish()
}

/// No Jost zero in `Ω`, and the Jost function does not vanish at sampled
/// points of `Ω`.
pub fn zero_free_omega(sols: &[JostSolution], seed: u64, z_count: usize) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 14);
    let mut tally = Tally::new("regions.zero_free_omega");
    let t = omega_constant();
    for (i, jost) in sols.iter().enumerate() {
        let op = jost.operator();
        let d0 = op.sigma0(0);
        let v0 = jost.jost_function();
        for z in v0.roots().into_iter().filter(|z| z.norm() < 1.0) {
            tally.require(!in_omega(z, d0, t), || format!("op {i}: zero {z} inside Ω"));
        }
        for _ in 0..z_count {
            let z = random_in_annulus(&mut rng, 0.0, 1.0);
            if z == ZERO || !in_omega(z, d0, t) {
                continue;
            }
            let value = v0.eval(z).norm();
            tally.check(1e-9 - value, 0.0, || format!("op {i}: |v₀({z})| = {value:e} in Ω"));
        }
    }
    tally.finish()
}

/// Operators rescaled to `σ₁(0) < t` have no Jost zeros in the disk.
pub fn no_spectrum_rescaled(ops: &[ComplexJacobiOperator], seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 15);
    let mut tally = Tally::new("regions.no_spectrum_criterion");
    let t = omega_constant();
    for (i, op) in ops.iter().enumerate() {
        let s1 = op.sigma1(0);
        if s1 == 0.0 {
            continue;
        }
        let factor = rng.gen_range(0.3..0.99) * t / s1;
        let Some(scaled) = scale_perturbation(op, factor) else {
            continue;
        };
        tally.require(crate::regions::no_spectrum_criterion(&scaled, t), || {
            format!("op {i}: rescaled σ₁ = {} not below t", scaled.sigma1(0))
        });
        let v0 = crate::jost::jost_function(&scaled);
        let min_modulus = v0.roots().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        tally.check((1.0 - 1e-9) - min_modulus, 0.0, || format!("op {i}: root of modulus {min_modulus}"));
    }
    tally.finish()
}

/// Increasing `|b_m|` never lowers the `Ω` threshold.
pub fn threshold_monotone(ops: &[ComplexJacobiOperator], seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 16);
    let mut tally = Tally::new("regions.threshold_monotone");
    let t = omega_constant();
    for (i, op) in ops.iter().enumerate() {
        let m = rng.gen_range(1..=op.support_bound().max(1));
        let top = op.max_stored_index().max(m);
        let grow = 1.0 + rng.gen_range(0.0..2.0);
        let bump = if op.b(m) == ZERO {
            random_in_disk(&mut rng, 1.0)
        } else {
            op.b(m) * grow
        };
        let a: Vec<_> = (1..=top).map(|n| (n, op.a(n))).collect();
        let c: Vec<_> = (1..=top).map(|n| (n, op.c(n))).collect();
        let b: Vec<_> = (1..=top).map(|n| (n, if n == m { bump } else { op.b(n) })).collect();
        let bigger = ComplexJacobiOperator::new(&a, &b, &c).unwrap();
        let before = omega_threshold(op.sigma0(0), t);
        let after = omega_threshold(bigger.sigma0(0), t);
        tally.check(before - after, 1e-12 * before.max(1.0), || format!("op {i}, m = {m}"));
    }
    tally.finish()
}

// ---------------------------------------------------------------- spectrum

pub fn qr_self_check() -> SuiteOutcome {
    let mut t = Tally::new("spectrum.qr_self_check");
    let free = ComplexJacobiOperator::free();
    for n in [3usize, 10, 100] {
        let eig = truncated_eigenvalues(&free, n).unwrap();
        let mut exact: Vec<f64> = (1..=n)
            .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos())
            .collect();
        exact.sort_by(f64::total_cmp);
        for (k, (got, want)) in eig.iter().zip(&exact).enumerate() {
            t.check((got - Complex64::new(*want, 0.0)).norm(), 1e-10, || format!("N = {n}, k = {k}"));
        }
    }
    t.finish()
}

/// Results of the truncation reconciliation over a corpus, reused by
/// several suites.
pub struct Reconciled {
    pub results: Vec<SpectrumResult>,
    pub errors: Vec<(usize, String)>,
}

pub fn reconcile_corpus(ops: &[ComplexJacobiOperator], options: ReconcileOptions) -> Reconciled {
    let mut results = Vec::with_capacity(ops.len());
    let mut errors = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        match reconcile(op, options) {
            Ok(r) => results.push(r),
            Err(e) => errors.push((i, e.to_string())),
        }
    }
    Reconciled { results, errors }
}

/// Every resolvable Jost-zero eigenvalue is an eigenvalue of the truncation.
pub fn zeros_to_oracle(ops: &[ComplexJacobiOperator], rec: &Reconciled) -> SuiteOutcome {
    let mut t = Tally::new("spectrum.zeros_in_truncation");
    for &(i, ref e) in &rec.errors {
        t.require(false, || format!("op {i}: {e}"));
    }
    let _ = ops;
    for (i, r) in rec.results.iter().enumerate() {
        for m in r.matches.iter().chain(&r.unmatched_zeros) {
            t.check(m.distance, r.options.match_tol, || format!("op {i}: λ = {}", m.eigenvalue.lambda));
        }
    }
    t.finish()
}

/// Every stable off-band truncation eigenvalue comes from a Jost zero.
pub fn oracle_to_zeros(rec: &Reconciled) -> SuiteOutcome {
    let mut t = Tally::new("spectrum.truncation_in_zeros");
    for &(i, ref e) in &rec.errors {
        t.require(false, || format!("op {i}: {e}"));
    }
    for (i, r) in rec.results.iter().enumerate() {
        for &w in &r.stable_off_band {
            let d = r.unmatched_oracle.iter().find(|(u, _)| *u == w).map_or(0.0, |(_, d)| *d);
            t.check(d, r.options.match_tol, || format!("op {i}: oracle λ = {w}"));
        }
    }
    t.finish()
}

/// No eigenvalue lies in the spectrum-free region.
pub fn free_region_excludes_spectrum(ops: &[ComplexJacobiOperator], rec: &Reconciled) -> SuiteOutcome {
    let mut tally = Tally::new("spectrum.free_region_excludes_eigenvalues");
    let t = omega_constant();
    for (op, r) in ops.iter().zip(&rec.results) {
        for ev in &r.eigenvalues_from_zeros {
            tally.require(!in_spectrum_free_region(op, ev.lambda, t), || format!("λ = {} in G(J)", ev.lambda));
        }
        for m in &r.matches {
            tally.require(!in_spectrum_free_region(op, m.oracle, t), || format!("oracle λ = {} in G(J)", m.oracle));
        }
    }
    tally.finish()
}

/// With `c < 2`, all eigenvalues lie in the two rectangles. Besides the
/// corpus itself, each operator is rescaled so that `σ₀(0)` falls just
/// below `t`, where `c < 2` holds and eigenvalues still occur.
pub fn rectangle_enclosure(ops: &[ComplexJacobiOperator], seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 17);
    let mut tally = Tally::new("spectrum.rectangle_enclosure");
    let t = omega_constant();
    for (i, op) in ops.iter().enumerate() {
        let s0 = op.sigma0(0);
        let factor = rng.gen_range(0.5..0.999) * t / s0;
        let scaled = scale_perturbation(op, factor);
        for candidate in std::iter::once(op).chain(scaled.as_ref()) {
            let Some(rect) = spectral_rectangles(candidate, t) else {
                continue;
            };
            for ev in discrete_spectrum(candidate) {
                tally.require(rect.contains(ev.lambda, 1e-9), || {
                    format!("op {i}: λ = {} outside rectangles (c = {})", ev.lambda, rect.c)
                });
            }
        }
    }
    tally.finish()
}

pub fn eigenvector_residuals(ops: &[ComplexJacobiOperator]) -> SuiteOutcome {
    let mut t = Tally::new("spectrum.eigenvector_residual");
    for (i, op) in ops.iter().enumerate() {
        let n = op.support_bound() + 50;
        for ev in discrete_spectrum(op) {
            match eigenvector_check(op, ev.z, n) {
                Ok(res) => t.check(res, 1e-10, || format!("op {i}, z₀ = {}", ev.z)),
                Err(e) => t.require(false, || format!("op {i}: {e}")),
            }
        }
    }
    t.finish()
}

/// At a Jost zero the Jost solution and the solution with `h₀ = 0, h₁ = 1`
/// have vanishing Wronskian.
pub fn wronskian_at_zeros(sols: &[JostSolution]) -> SuiteOutcome {
    let mut t = Tally::new("spectrum.wronskian_vanishes");
    for (i, jost) in sols.iter().enumerate() {
        let op = jost.operator();
        for ev in discrete_spectrum(op) {
            let z = ev.z;
            let g: Vec<Complex64> = (0..2).map(|n| jost.value(n, z) / op.gauge_factor(n)).collect();
            let g = SolutionSegment::new(0, g);
            let h = extend_solution(op, z, ZERO, ONE, 1).unwrap();
            let w = wronskian(&g, &h, 0).unwrap();
            // W₀ = v₀(z₀)/k(0): measured against the rounding level of the
            // Jost polynomial at z₀
            let g0_scale = jost.jost_function().eval_scale(z) / op.gauge_factor(0).norm();
            let scale = (g0_scale + g.values[1].norm()) * (h.values[0].norm() + h.values[1].norm());
            t.check(w.norm() / scale, 1e-9, || format!("op {i}, z₀ = {z}"));
        }
    }
    t.finish()
}

/// The eigenvector built from the Jost polynomials and the minimal
/// solution from backward recurrence are proportional.
pub fn eigenvector_simplicity(sols: &[JostSolution]) -> SuiteOutcome {
    let mut t = Tally::new("spectrum.eigenvector_simplicity");
    for (i, jost) in sols.iter().enumerate() {
        let op = jost.operator();
        let len = op.max_stored_index() + 5;
        for ev in discrete_spectrum(op) {
            let h1 = eigenvector(jost, ev.z, len);
            let h2 = oracles::backward_minimal_solution(op, ev.z, len);
            let n1: f64 = h1.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            let n2: f64 = h2.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            let mut worst: f64 = 0.0;
            for p in 0..len {
                for q in p + 1..len {
                    worst = worst.max((h1[p] * h2[q] - h1[q] * h2[p]).norm());
                }
            }
            t.check(worst / (n1 * n2), 1e-9, || format!("op {i}, z₀ = {}", ev.z));
        }
    }
    t.finish()
}

// ---------------------------------------------------------------- runner

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub corpus_size: usize,
    pub z_samples: usize,
    pub reconcile: ReconcileOptions,
    pub shape: CorpusShape,
}

impl VerifyConfig {
    pub fn new(seed: u64, corpus_size: usize) -> Self {
        Self {
            seed,
            corpus_size,
            z_samples: 50,
            reconcile: ReconcileOptions {
                band_margin: 0.1,
                ..ReconcileOptions::default()
            },
            shape: CorpusShape::default(),
        }
    }
}

/// Runs every suite in a fixed order.
pub fn run_all(config: &VerifyConfig) -> Vec<SuiteOutcome> {
    let seed = config.seed;
    let ops = corpus(seed, config.corpus_size, config.shape);
    let sols: Vec<JostSolution> = ops.iter().map(jost_backsubstitute).collect();
    let z = config.z_samples;

    let mut out = vec![
        recurrence_residual(&ops, seed),
        wronskian_identity(&ops, seed),
        joukowski_roundtrip(seed, 1000),
        sigma_monotone(&ops),
        green_recurrence_m(seed, 100),
        green_recurrence_n(seed, 100),
        green_chebyshev(seed, 100),
        kernel_three_term(&ops, seed, 100),
        kernel_bound(&ops, seed, 20),
        kernel_poly_consistency(&ops, seed),
        integral_equation_roundtrip(&sols, seed, z),
    ];
    let (agree, iterates) = successive_approximations(&sols, seed, z);
    out.push(agree);
    out.push(iterates);
    out.push(degree_bound(&sols));
    let (first, second) = jost_error_bounds(&sols, seed, z);
    out.push(first);
    out.push(second);
    out.push(omega_constant_suite());
    out.push(zero_free_omega(&sols, seed, 200));
    out.push(no_spectrum_rescaled(&ops, seed));
    out.push(threshold_monotone(&ops, seed));
    out.push(qr_self_check());
    let rec = reconcile_corpus(&ops, config.reconcile);
    out.push(zeros_to_oracle(&ops, &rec));
    out.push(oracle_to_zeros(&rec));
    out.push(free_region_excludes_spectrum(&ops, &rec));
    out.push(rectangle_enclosure(&ops, seed));
    out.push(eigenvector_residuals(&ops));
    out.push(wronskian_at_zeros(&sols));
    out.push(eigenvector_simplicity(&sols));
    out
}

/// Plain-text report, one line per suite.
pub fn render_report(config: &VerifyConfig, outcomes: &[SuiteOutcome]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "jacobi-spectra verify: seed {} corpus-size {}",
        config.seed, config.corpus_size
    );
    for o in outcomes {
        let _ = writeln!(
            s,
            "{:<46} {:>8}/{:<8} worst {:.3e}  {}",
            o.name,
            o.passed,
            o.total,
            o.worst_ratio,
            if o.ok() { "PASS" } else { "FAIL" }
        );
        if let Some(f) = &o.first_failure {
            let _ = writeln!(s, "    first failure: {f}");
        }
    }
    let passed = outcomes.iter().filter(|o| o.ok()).count();
    let _ = writeln!(s, "suites passed: {passed}/{}", outcomes.len());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_oracle_values() {
        let x = Complex64::new(0.3, 0.0);
        assert_eq!(oracles::chebyshev_u(0, x), ONE);
        assert!((oracles::chebyshev_u(1, x) - 0.6).norm() < 1e-15);
        assert!((oracles::chebyshev_u(2, x) - (4.0 * 0.09 - 1.0)).norm() < 1e-15);
    }

    #[test]
    fn bisection_oracle_matches_known_constant() {
        assert!((oracles::omega_by_bisection() - 0.567_143_290_409_783_8).abs() < 1e-15);
    }

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let a = corpus(3, 20, CorpusShape::default());
        let b = corpus(3, 20, CorpusShape::default());
        assert_eq!(a, b);
        for op in &a {
            assert!(op.support_bound() <= 10);
            for n in 1..=op.max_stored_index() {
                assert!(op.b(n).norm() <= 3.0);
                assert!((op.a(n) - ONE).norm() <= 3.0);
                assert!((op.c(n) - ONE).norm() <= 3.0);
            }
        }
    }

    #[test]
    fn scaling_multiplies_weights() {
        let op = corpus(5, 1, CorpusShape::default()).remove(0);
        let scaled = scale_perturbation(&op, 0.25).unwrap();
        for m in 1..=op.support_bound() + 1 {
            assert!((scaled.weight_d(m) - 0.25 * op.weight_d(m)).abs() < 1e-12);
        }
    }

    #[test]
    fn backward_solution_is_jost_solution() {
        let op = ComplexJacobiOperator::diagonal(&[(1, Complex64::new(3.0, 0.0))]).unwrap();
        let z = Complex64::new(1.0 / 3.0, 0.0);
        let h = oracles::backward_minimal_solution(&op, z, 6);
        for (k, v) in h.iter().enumerate() {
            assert!((v - z.powu(k as u32 + 1)).norm() < 1e-14);
        }
    }

    #[test]
    fn small_run_passes() {
        let config = VerifyConfig::new(11, 4);
        let outcomes = run_all(&config);
        let report = render_report(&config, &outcomes);
        assert!(outcomes.iter().all(|o| o.ok()), "{report}");
    }
}
