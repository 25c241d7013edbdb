//! Discrete spectrum from the zeros of the Jost function, and its
//! cross-check against eigenvalues of finite truncations.

pub mod qr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jost::{jost_backsubstitute, JostSolution};
use crate::operator::ComplexJacobiOperator;
use crate::regions::band_distance;

pub use qr::{hessenberg_eigenvalues, truncated_eigenvalues, Tridiagonal};

/// Roots closer than this to the unit circle are not counted as zeros in 𝔻.
pub const DISK_EXCLUSION: f64 = 1e-12;
/// Roots with `|z|` above `1 - NEAR_BOUNDARY` are band-edge sensitive.
pub const NEAR_BOUNDARY: f64 = 1e-3;
/// Computed roots closer than this (relative) are merged into one zero.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Relative residual `|v₀(z)| / Σ|c_k||z|^k` accepted for a Jost zero.
pub const ZERO_RESIDUAL_TOL: f64 = 1e-10;

/// Roots of the Jost function with `|z| < 1 - 1e-12`, with multiplicity.
pub fn jost_zeros(op: &ComplexJacobiOperator) -> Vec<Complex64> {
    let mut roots: Vec<Complex64> = crate::jost::jost_function(op)
        .roots()
        .into_iter()
        .filter(|z| z.norm() < 1.0 - DISK_EXCLUSION)
        .collect();
    qr::sort_eigenvalues(&mut roots);
    roots
}

/// Roots of the Jost function within `1e-12` of the unit circle.
pub fn boundary_roots(op: &ComplexJacobiOperator) -> Vec<Complex64> {
    let mut roots: Vec<Complex64> = crate::jost::jost_function(op)
        .roots()
        .into_iter()
        .filter(|z| (z.norm() - 1.0).abs() <= DISK_EXCLUSION)
        .collect();
    qr::sort_eigenvalues(&mut roots);
    roots
}

/// A point of the discrete spectrum with its Jost zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteEigenvalue {
    pub lambda: Complex64,
    pub z: Complex64,
    /// Multiplicity of `z` as a root of the Jost polynomial.
    pub multiplicity: usize,
}

impl DiscreteEigenvalue {
    pub fn near_boundary(&self, band_margin: f64) -> bool {
        self.z.norm() > 1.0 - NEAR_BOUNDARY || band_distance(self.lambda) <= band_margin
    }
}

/// `{z + 1/z : z ∈ Z(J)}` with root multiplicities.
pub fn discrete_spectrum(op: &ComplexJacobiOperator) -> Vec<DiscreteEigenvalue> {
    cluster_roots(&jost_zeros(op))
        .into_iter()
        .map(|(z, multiplicity)| DiscreteEigenvalue {
            lambda: z + z.inv(),
            z,
            multiplicity,
        })
        .collect()
}

/// Merges roots within [`CLUSTER_TOL`] of each other into `(mean, count)`.
fn cluster_roots(roots: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &z in roots {
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - z).norm() <= CLUSTER_TOL * c.norm().max(1.0))
        {
            Some((c, k)) => {
                *c = (*c * *k as f64 + z) / (*k + 1) as f64;
                *k += 1;
            }
            None => clusters.push((z, 1)),
        }
    }
    clusters
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconcileOptions {
    /// Truncation size; the stability check also runs at `2n`.
    pub n: usize,
    /// Oracle eigenvalues this close to `[-2, 2]` are treated as band artifacts.
    pub band_margin: f64,
    pub match_tol: f64,
    /// Largest move between the `n` and `2n` truncations for a stable eigenvalue.
    pub stability_tol: f64,
}

impl Default for ReconcileOptions {
    fn default() -> Self {
        Self {
            n: 400,
            band_margin: 0.05,
            match_tol: 1e-4,
            stability_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueMatch {
    pub eigenvalue: DiscreteEigenvalue,
    /// Nearest eigenvalue of the `n×n` truncation.
    pub oracle: Complex64,
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub options: ReconcileOptions,
    pub jost_zeros: Vec<Complex64>,
    pub eigenvalues_from_zeros: Vec<DiscreteEigenvalue>,
    /// Eigenvalues of the `n×n` truncation.
    pub oracle_eigenvalues: Vec<Complex64>,
    /// Eigenvalues of the `2n×2n` truncation.
    pub oracle_eigenvalues_doubled: Vec<Complex64>,
    /// Jost-zero eigenvalues confirmed by the oracle.
    pub matches: Vec<EigenvalueMatch>,
    /// Jost-zero eigenvalues too close to the band to be resolved by truncation.
    pub near_boundary: Vec<DiscreteEigenvalue>,
    /// Jost-zero eigenvalues without an oracle partner.
    pub unmatched_zeros: Vec<EigenvalueMatch>,
    /// Stable oracle eigenvalues off the band.
    pub stable_off_band: Vec<Complex64>,
    /// Stable off-band oracle eigenvalues without a Jost zero.
    pub unmatched_oracle: Vec<(Complex64, f64)>,
    /// Oracle eigenvalues within `band_margin` of `[-2, 2]`.
    pub band_artifacts: usize,
}

impl SpectrumResult {
    pub fn is_consistent(&self) -> bool {
        self.unmatched_zeros.is_empty() && self.unmatched_oracle.is_empty()
    }
}

fn nearest(target: Complex64, pool: &[Complex64]) -> Option<(Complex64, f64)> {
    pool.iter()
        .map(|&w| (w, (w - target).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Matches the Jost-zero spectrum against truncation eigenvalues in both directions.
pub fn reconcile(op: &ComplexJacobiOperator, options: ReconcileOptions) -> Result<SpectrumResult> {
    if options.n < 2 {
        return Err(Error::TruncationTooSmall(options.n));
    }
    let jost_zeros = jost_zeros(op);
    let eigenvalues = discrete_spectrum(op);
    let oracle = truncated_eigenvalues(op, options.n)?;
    let doubled = truncated_eigenvalues(op, 2 * options.n)?;

    let mut matches = Vec::new();
    let mut near_boundary = Vec::new();
    let mut unmatched_zeros = Vec::new();
    for ev in &eigenvalues {
        if ev.near_boundary(options.band_margin) {
            near_boundary.push(*ev);
            continue;
        }
        let (oracle_value, distance) =
            nearest(ev.lambda, &oracle).unwrap_or((Complex64::new(f64::NAN, f64::NAN), f64::INFINITY));
        let m = EigenvalueMatch {
            eigenvalue: *ev,
            oracle: oracle_value,
            distance,
        };
        if distance < options.match_tol {
            matches.push(m);
        } else {
            unmatched_zeros.push(m);
        }
    }

    let zero_lambdas: Vec<Complex64> = eigenvalues.iter().map(|e| e.lambda).collect();
    let mut band_artifacts = 0;
    let mut stable_off_band = Vec::new();
    let mut unmatched_oracle = Vec::new();
    for &w in &oracle {
        if band_distance(w) <= options.band_margin {
            band_artifacts += 1;
            continue;
        }
        let stable = nearest(w, &doubled).is_some_and(|(_, d)| d < options.stability_tol);
        if !stable {
            continue;
        }
        stable_off_band.push(w);
        let distance = nearest(w, &zero_lambdas).map_or(f64::INFINITY, |(_, d)| d);
        if distance >= options.match_tol {
            unmatched_oracle.push((w, distance));
        }
    }

    Ok(SpectrumResult {
        options,
        jost_zeros,
        eigenvalues_from_zeros: eigenvalues,
        oracle_eigenvalues: oracle,
        oracle_eigenvalues_doubled: doubled,
        matches,
        near_boundary,
        unmatched_zeros,
        stable_off_band,
        unmatched_oracle,
        band_artifacts,
    })
}

/// `h_n = v_n(z₀) / k(n)` for `1 ≤ n ≤ N`: the Jost solution moved back to
/// the original (ungauged) recurrence, an eigenvector of `J` when `v₀(z₀) = 0`.
pub fn eigenvector(jost: &JostSolution, z0: Complex64, n: usize) -> Vec<Complex64> {
    let op = jost.operator();
    let seg = jost.segment(z0, n + 1);
    (1..=n)
        .map(|i| seg.values[i] / op.gauge_factor(i))
        .collect()
}

/// `‖(J_N - λ₀) h‖ / ‖h‖` over rows `1..N-1` for the Jost eigenvector at `z₀`.
pub fn eigenvector_check(op: &ComplexJacobiOperator, z0: Complex64, n: usize) -> Result<f64> {
    if n < op.support_bound() + 10 {
        return Err(Error::TruncationTooSmall(n));
    }
    let jost = jost_backsubstitute(op);
    let v0 = jost.jost_function();
    let residual = v0.eval(z0).norm();
    if residual > ZERO_RESIDUAL_TOL * v0.eval_scale(z0).max(1.0) || z0.norm() >= 1.0 {
        return Err(Error::NotAJostZero { z: z0, residual });
    }
    let lambda = z0 + z0.inv();
    let h = eigenvector(&jost, z0, n);
    Ok(eigen_residual(op, lambda, &h))
}

/// Residual of `J h = λ h` over all rows but the last, relative to `‖h‖`.
pub fn eigen_residual(op: &ComplexJacobiOperator, lambda: Complex64, h: &[Complex64]) -> f64 {
    let n = h.len();
    let mut sum = 0.0;
    for row in 1..n {
        let i = row - 1;
        let mut r = (op.b(row) - lambda) * h[i] + op.c(row) * h[i + 1];
        if row >= 2 {
            r += op.a(row - 1) * h[i - 1];
        }
        sum += r.norm_sqr();
    }
    let norm: f64 = h.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    sum.sqrt() / norm
}
