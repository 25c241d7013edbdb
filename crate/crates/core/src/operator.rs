//! Complex Jacobi operators with finitely supported perturbations.
//!
//! An operator is stored as its deviations from the discrete laplacian
//! `a_n = c_n = 1, b_n = 0`. Every infinite sum or product over the
//! coefficients is therefore a finite one.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Diagonal, Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Jacobi matrix with sub-diagonal `a`, diagonal `b` and super-diagonal `c`.
///
/// Indices start at 1. Entries that are not stored take the background
/// values `a = c = 1`, `b = 0`; `a_0 = c_0 = 1` always.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexJacobiOperator {
    a: BTreeMap<usize, Complex64>,
    b: BTreeMap<usize, Complex64>,
    c: BTreeMap<usize, Complex64>,
    support_bound: usize,
}

impl Default for ComplexJacobiOperator {
    fn default() -> Self {
        Self::free()
    }
}

impl ComplexJacobiOperator {
    /// The discrete laplacian `J₀`.
    pub fn free() -> Self {
        Self {
            a: BTreeMap::new(),
            b: BTreeMap::new(),
            c: BTreeMap::new(),
            support_bound: 0,
        }
    }

    /// Builds an operator from `(index, value)` lists for each diagonal.
    ///
    /// Entries equal to the background value are dropped. Zero `a_n` or
    /// `c_n`, index 0, duplicates and non-finite values are rejected.
    pub fn new(
        a: &[(usize, Complex64)],
        b: &[(usize, Complex64)],
        c: &[(usize, Complex64)],
    ) -> Result<Self> {
        let a = collect_entries(Diagonal::A, a)?;
        let b = collect_entries(Diagonal::B, b)?;
        let c = collect_entries(Diagonal::C, c)?;
        let mut op = Self {
            a,
            b,
            c,
            support_bound: 0,
        };
        op.support_bound = op.compute_support_bound();
        Ok(op)
    }

    /// Operator with only diagonal perturbations.
    pub fn diagonal(b: &[(usize, Complex64)]) -> Result<Self> {
        Self::new(&[], b, &[])
    }

    fn compute_support_bound(&self) -> usize {
        let candidates = self
            .b
            .keys()
            .copied()
            .chain(self.a.keys().map(|i| i + 1))
            .chain(self.c.keys().map(|i| i + 1));
        candidates
            .filter(|&m| self.weight_d(m) != 0.0)
            .max()
            .unwrap_or(0)
    }

    /// Largest `m` with `d_m ≠ 0`, or 0 for the free operator.
    pub fn support_bound(&self) -> usize {
        self.support_bound
    }

    pub fn is_free(&self) -> bool {
        self.a.is_empty() && self.b.is_empty() && self.c.is_empty()
    }

    pub fn a(&self, n: usize) -> Complex64 {
        self.a.get(&n).copied().unwrap_or(ONE)
    }

    pub fn b(&self, n: usize) -> Complex64 {
        self.b.get(&n).copied().unwrap_or(ZERO)
    }

    pub fn c(&self, n: usize) -> Complex64 {
        self.c.get(&n).copied().unwrap_or(ONE)
    }

    /// Stored (non-background) entries of one diagonal, in index order.
    pub fn entries(&self, diagonal: Diagonal) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let map = match diagonal {
            Diagonal::A => &self.a,
            Diagonal::B => &self.b,
            Diagonal::C => &self.c,
        };
        map.iter().map(|(&n, &v)| (n, v))
    }

    /// Largest index carrying any stored entry.
    pub fn max_stored_index(&self) -> usize {
        [&self.a, &self.b, &self.c]
            .iter()
            .filter_map(|m| m.keys().next_back().copied())
            .max()
            .unwrap_or(0)
    }

    /// Perturbation weight `d_m = |b_m| + |1 - a_{m-1} c_{m-1}|`.
    pub fn weight_d(&self, m: usize) -> f64 {
        assert!(m >= 1, "weight_d is defined for m >= 1");
        let ac = self.a(m - 1) * self.c(m - 1);
        self.b(m).norm() + (ONE - ac).norm()
    }

    /// `σ₀(n) = Σ_{m>n} d_m`.
    pub fn sigma0(&self, n: usize) -> f64 {
        (n + 1..=self.support_bound).map(|m| self.weight_d(m)).fold(0.0, |acc, d| acc + d)
    }

    /// `σ₁(n) = Σ_{m>n} m d_m`.
    pub fn sigma1(&self, n: usize) -> f64 {
        (n + 1..=self.support_bound)
            .map(|m| m as f64 * self.weight_d(m))
            .fold(0.0, |acc, d| acc + d)
    }

    /// Gauge factor `k(j) = Π_{i≥j} a_i` (finite product over stored entries).
    pub fn gauge_factor(&self, j: usize) -> Complex64 {
        self.a.range(j.max(1)..).map(|(_, &v)| v).product()
    }

    /// Ratio `(a_{n-1}⋯a_0) / (c_n⋯c_1)` carrying `W_0` to `W_n`.
    pub fn wronskian_propagator(&self, n: usize) -> Complex64 {
        let num: Complex64 = (0..n).map(|i| self.a(i)).product();
        let den: Complex64 = (1..=n).map(|i| self.c(i)).product();
        num / den
    }

    /// Largest residual of `a_{m-1}y_{m-1} + b_m y_m + c_m y_{m+1} = λ y_m`
    /// over the interior of `segment`.
    pub fn recurrence_residual(&self, z: Complex64, segment: &SolutionSegment) -> f64 {
        let lambda = z + z.inv();
        segment
            .interior()
            .map(|m| {
                let lhs = self.a(m - 1) * segment.value(m - 1)
                    + self.b(m) * segment.value(m)
                    + self.c(m) * segment.value(m + 1);
                (lhs - lambda * segment.value(m)).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Largest residual of the gauged recurrence
    /// `x_{m-1} + b_m x_m + a_m c_m x_{m+1} = λ x_m`, each term scaled by the
    /// sum of the magnitudes entering it.
    pub fn gauged_residual(&self, z: Complex64, segment: &SolutionSegment) -> f64 {
        let lambda = z + z.inv();
        segment
            .interior()
            .map(|m| {
                let terms = [
                    segment.value(m - 1),
                    self.b(m) * segment.value(m),
                    self.a(m) * self.c(m) * segment.value(m + 1),
                    -lambda * segment.value(m),
                ];
                let scale: f64 = terms.iter().map(|t| t.norm()).sum();
                let sum: Complex64 = terms.iter().sum();
                if scale == 0.0 {
                    0.0
                } else {
                    sum.norm() / scale
                }
            })
            .fold(0.0, f64::max)
    }
}

fn collect_entries(
    key: Diagonal,
    entries: &[(usize, Complex64)],
) -> Result<BTreeMap<usize, Complex64>> {
    let background = if key == Diagonal::B { ZERO } else { ONE };
    let mut out = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::new();
    for &(index, value) in entries {
        if index == 0 {
            return Err(Error::InvalidIndex { key, index });
        }
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonFiniteEntry { key, index });
        }
        if key != Diagonal::B && value == ZERO {
            return Err(Error::ZeroOffDiagonal { key, index });
        }
        if !seen.insert(index) {
            return Err(Error::DuplicateIndex { key, index });
        }
        if value != background {
            out.insert(index, value);
        }
    }
    Ok(out)
}

/// Spectral parameter `z` in the punctured closed disk and its image `λ = z + 1/z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub z: Complex64,
    pub lambda: Complex64,
}

impl SpectralPoint {
    pub fn from_z(z: Complex64) -> Result<Self> {
        if z.norm() > 1.0 + 1e-14 {
            return Err(Error::OutsideDisk(z));
        }
        Ok(Self {
            z,
            lambda: joukowski(z)?,
        })
    }

    pub fn from_lambda(lambda: Complex64) -> Self {
        Self {
            z: inverse_joukowski(lambda),
            lambda,
        }
    }
}

/// `λ = z + 1/z`.
pub fn joukowski(z: Complex64) -> Result<Complex64> {
    if z == ZERO {
        return Err(Error::ZeroSpectralParameter);
    }
    Ok(z + z.inv())
}

/// Root of `z² - λz + 1 = 0` with `|z| ≤ 1`.
///
/// On the band `λ ∈ [-2, 2]` both roots are unimodular and the one with
/// `Im z ≥ 0` is returned.
pub fn inverse_joukowski(lambda: Complex64) -> Complex64 {
    if lambda.im == 0.0 && lambda.re.abs() <= 2.0 {
        let x = lambda.re / 2.0;
        return Complex64::new(x, (1.0 - x * x).max(0.0).sqrt());
    }
    let s = (lambda * lambda - 4.0).sqrt();
    // the larger root is computed without cancellation; the other is its reciprocal
    let plus = lambda + s;
    let minus = lambda - s;
    let big = if plus.norm() >= minus.norm() { plus } else { minus } / 2.0;
    big.inv()
}

/// Consecutive values `y_{start}, y_{start+1}, …` of a recurrence solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSegment {
    pub start: usize,
    pub values: Vec<Complex64>,
}

impl SolutionSegment {
    pub fn new(start: usize, values: Vec<Complex64>) -> Self {
        Self { start, values }
    }

    /// Last index covered.
    pub fn end(&self) -> usize {
        self.start + self.values.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(self.start)
            .and_then(|i| self.values.get(i))
            .copied()
    }

    fn value(&self, n: usize) -> Complex64 {
        self.values[n - self.start]
    }

    /// Indices `m ≥ 1` with both neighbours inside the segment.
    fn interior(&self) -> impl Iterator<Item = usize> {
        let lo = (self.start + 1).max(1);
        let hi = self.end();
        lo..hi
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Solves the recurrence forward from `(y₀, y₁)` up to `y_N`.
pub fn extend_solution(
    op: &ComplexJacobiOperator,
    z: Complex64,
    y0: Complex64,
    y1: Complex64,
    n: usize,
) -> Result<SolutionSegment> {
    let lambda = joukowski(z)?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(y0);
    values.push(y1);
    for m in 1..n {
        let next = ((lambda - op.b(m)) * values[m] - op.a(m - 1) * values[m - 1]) / op.c(m);
        values.push(next);
    }
    values.truncate(n + 1);
    Ok(SolutionSegment::new(0, values))
}

/// `x_m = k(m) y_m`, mapping solutions of the original recurrence to the gauged one.
pub fn gauge_transform(op: &ComplexJacobiOperator, segment: &SolutionSegment) -> SolutionSegment {
    let values = segment
        .values
        .iter()
        .enumerate()
        .map(|(i, &y)| op.gauge_factor(segment.start + i) * y)
        .collect();
    SolutionSegment::new(segment.start, values)
}

/// Discrete Wronskian `W_n(g, h) = g_n h_{n+1} - g_{n+1} h_n`.
pub fn wronskian(g: &SolutionSegment, h: &SolutionSegment, n: usize) -> Result<Complex64> {
    let at = |s: &SolutionSegment, i: usize| {
        s.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            start: s.start,
            end: s.end(),
        })
    };
    Ok(at(g, n)? * at(h, n + 1)? - at(g, n + 1)? * at(h, n)?)
}
