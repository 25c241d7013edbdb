//! Dense complex polynomials, lowest degree first.

use std::ops::{Add, Mul};

use num_complex::Complex64;

/// Coefficients below this magnitude are trimmed from the top.
pub const TRIM_THRESHOLD: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coefficients: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coefficients: Vec<Complex64>) -> Self {
        while coefficients.len() > 1
            && coefficients.last().is_some_and(|c| c.norm() < TRIM_THRESHOLD)
        {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(ZERO);
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::constant(ZERO)
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficients[0] == ZERO
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `Σ |c_k| |z|^k`, the natural scale of rounding errors in [`eval`](Self::eval).
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coefficients.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// `‖p‖₁` over the coefficient vector.
    pub fn l1_norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm()).sum()
    }

    /// All complex roots, counted with multiplicity.
    pub fn roots(&self) -> Vec<Complex64> {
        aberth_roots(&self.coefficients)
    }
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn add(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let coeffs = (0..len)
            .map(|k| {
                self.coefficients.get(k).copied().unwrap_or(ZERO)
                    + rhs.coefficients.get(k).copied().unwrap_or(ZERO)
            })
            .collect();
        ComplexPolynomial::new(coeffs)
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn mul(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        let mut out = vec![ZERO; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, &p) in self.coefficients.iter().enumerate() {
            if p == ZERO {
                continue;
            }
            for (j, &q) in rhs.coefficients.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        ComplexPolynomial::new(out)
    }
}

const ABERTH_MAX_ITER: usize = 500;
const POLISH_STEPS: usize = 8;

/// Simultaneous root finding by the Aberth–Ehrlich iteration followed by
/// Newton polishing of every root.
fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    if degree == 1 {
        return vec![-coeffs[0] / lead];
    }
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();

    let mut roots = initial_guesses(coeffs);
    let mut converged = vec![false; degree];
    for _ in 0..ABERTH_MAX_ITER {
        let mut all_done = true;
        for i in 0..degree {
            if converged[i] {
                continue;
            }
            let z = roots[i];
            let (p, dp) = eval_with_derivative(coeffs, &deriv, z);
            if p == ZERO {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| (z - w).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            roots[i] = z - step;
            if step.norm() <= 4.0 * f64::EPSILON * roots[i].norm().max(f64::MIN_POSITIVE) {
                converged[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    for root in roots.iter_mut() {
        *root = newton_polish(coeffs, &deriv, *root);
    }
    roots
}

fn eval_with_derivative(coeffs: &[Complex64], deriv: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let p = coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
    let dp = deriv.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
    (p, dp)
}

/// Newton steps accepted only while they reduce the residual.
fn newton_polish(coeffs: &[Complex64], deriv: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut p, mut dp) = eval_with_derivative(coeffs, deriv, z);
    for _ in 0..POLISH_STEPS {
        if p == ZERO || dp == ZERO {
            break;
        }
        let candidate = z - p / dp;
        let (cp, cdp) = eval_with_derivative(coeffs, deriv, candidate);
        if cp.norm() >= p.norm() {
            break;
        }
        z = candidate;
        p = cp;
        dp = cdp;
    }
    z
}

/// Points on a circle whose radius is the geometric mean of the root moduli.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree].norm();
    let radius = match coeffs.iter().position(|c| *c != ZERO) {
        // a zero constant term means zero is a root; keep the circle at the
        // scale of the remaining coefficients
        Some(low) => (coeffs[low].norm() / lead).powf(1.0 / (degree - low).max(1) as f64),
        None => 1.0,
    };
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}
