//! Green kernel of the free recurrence and the kernel of the discrete
//! integral equation for the Jost solution.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::ComplexJacobiOperator;
use crate::poly::ComplexPolynomial;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Below this `|z² - 1|` the closed form of `G` is replaced by its finite sum.
pub const NEAR_EDGE: f64 = 1e-6;

/// `G(n, m; z) = (z^{m-n} - z^{n-m}) / (z - 1/z)` for `m > n`, zero otherwise.
pub fn green(n: usize, m: usize, z: Complex64) -> Result<Complex64> {
    if z == ZERO {
        return Err(Error::ZeroSpectralParameter);
    }
    Ok(green_unchecked(n, m, z))
}

fn green_unchecked(n: usize, m: usize, z: Complex64) -> Complex64 {
    if m <= n {
        return ZERO;
    }
    let k = (m - n) as i32;
    if (z * z - ONE).norm() < NEAR_EDGE {
        // z^{1-k} (1 + z² + … + z^{2(k-1)})
        let z2 = z * z;
        let mut sum = ZERO;
        let mut term = ONE;
        for _ in 0..k {
            sum += term;
            term *= z2;
        }
        return z.powi(1 - k) * sum;
    }
    (z.powi(k) - z.powi(-k)) / (z - z.inv())
}

/// Integral-equation kernel
/// `J(n, m; z) = -b_m G(n, m; z) + (1 - a_{m-1} c_{m-1}) G(n, m-1; z)`.
pub fn kernel_j(op: &ComplexJacobiOperator, n: usize, m: usize, z: Complex64) -> Result<Complex64> {
    if z == ZERO {
        return Err(Error::ZeroSpectralParameter);
    }
    if m <= n {
        return Ok(ZERO);
    }
    let ac = op.a(m - 1) * op.c(m - 1);
    Ok(-op.b(m) * green_unchecked(n, m, z) + (ONE - ac) * green_unchecked(n, m - 1, z))
}

/// `J̃(n, m; z) = J(n, m; z) z^{m-n}` as an explicit polynomial in `z`.
///
/// `J̃ = -b_m Σ_{k<m-n} z^{2k+1} + (1 - a_{m-1}c_{m-1}) Σ_{k<m-n-1} z^{2k+2}`.
pub fn kernel_j_tilde_poly(op: &ComplexJacobiOperator, n: usize, m: usize) -> ComplexPolynomial {
    if m <= n {
        return ComplexPolynomial::zero();
    }
    let span = m - n;
    let b = op.b(m);
    let w = ONE - op.a(m - 1) * op.c(m - 1);
    let mut coeffs = vec![ZERO; 2 * span];
    if b != ZERO {
        for k in 0..span {
            coeffs[2 * k + 1] = -b;
        }
    }
    if w != ZERO {
        for k in 0..span - 1 {
            coeffs[2 * k + 2] = w;
        }
    }
    ComplexPolynomial::new(coeffs)
}

/// Pointwise `J̃(n, m; z)`, evaluated directly from the sums (valid at `z = 0`).
pub fn kernel_j_tilde(op: &ComplexJacobiOperator, n: usize, m: usize, z: Complex64) -> Complex64 {
    if m <= n {
        return ZERO;
    }
    let span = m - n;
    let b = op.b(m);
    let w = ONE - op.a(m - 1) * op.c(m - 1);
    if b == ZERO && w == ZERO {
        return ZERO;
    }
    let z2 = z * z;
    // s = Σ_{k<span-1} z^{2k}
    let mut s = ZERO;
    let mut term = ONE;
    for _ in 0..span - 1 {
        s += term;
        term *= z2;
    }
    let odd = z * (s + term);
    let even = z2 * s;
    -b * odd + w * even
}

/// `|z| d_m min{|m-n|, 2/|z²-1|} - |J̃(n, m; z)|`, nonnegative up to rounding.
pub fn kernel_bound_margin(
    op: &ComplexJacobiOperator,
    n: usize,
    m: usize,
    z: Complex64,
) -> Result<f64> {
    check_punctured_disk(z)?;
    let edge = (z * z - ONE).norm();
    let span = m.saturating_sub(n) as f64;
    let bound = z.norm() * op.weight_d(m.max(1)) * span.min(2.0 / edge);
    Ok(bound - kernel_j_tilde(op, n, m, z).norm())
}

/// Rejects `z = 0`, `z = ±1` and `|z| > 1`.
pub(crate) fn check_punctured_disk(z: Complex64) -> Result<()> {
    if z == ZERO {
        return Err(Error::ZeroSpectralParameter);
    }
    if z == ONE || z == -ONE {
        return Err(Error::BandEdge(z));
    }
    if z.norm() > 1.0 + 1e-14 {
        return Err(Error::OutsideDisk(z));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rank_one() -> ComplexJacobiOperator {
        ComplexJacobiOperator::diagonal(&[(1, c(3.0, 0.0))]).unwrap()
    }

    fn offdiag_two() -> ComplexJacobiOperator {
        ComplexJacobiOperator::new(&[(1, c(2.0, 0.0))], &[], &[(1, c(2.0, 0.0))]).unwrap()
    }

    #[test]
    fn green_small_offsets() {
        for z in [c(0.5, 0.0), c(0.3, -0.8), c(-0.2, 0.1)] {
            for n in 0..4 {
                assert_eq!(green(n, n, z).unwrap(), ZERO);
                assert_eq!(green(n + 1, n, z).unwrap(), ZERO);
                assert!((green(n, n + 1, z).unwrap() - ONE).norm() < 1e-14);
            }
        }
        let g = green(0, 3, c(0.5, 0.0)).unwrap();
        assert!((g - c(5.25, 0.0)).norm() < 1e-14);
        assert!(green(0, 1, ZERO).is_err());
    }

    #[test]
    fn green_near_edges_is_finite() {
        // U_{k-1}(±1) = (±1)^{k-1} k
        for k in 1..6usize {
            let g = green(2, 2 + k, ONE).unwrap();
            assert!((g - c(k as f64, 0.0)).norm() < 1e-12);
            let g = green(2, 2 + k, -ONE).unwrap();
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            assert!((g - c(sign * k as f64, 0.0)).norm() < 1e-12);
        }
        let z = c(1.0 - 1e-9, 1e-9);
        let closed = green(0, 4, z).unwrap();
        assert!((closed - c(4.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn kernel_near_diagonal_values() {
        let op = ComplexJacobiOperator::new(
            &[(2, c(1.5, 0.5))],
            &[(2, c(0.4, -0.1)), (3, c(-0.7, 0.2))],
            &[(2, c(0.2, 1.0))],
        )
        .unwrap();
        let z = c(0.35, 0.6);
        let lambda = z + z.inv();
        for n in 1..5 {
            assert_eq!(kernel_j(&op, n, n, z).unwrap(), ZERO);
            let j = kernel_j(&op, n - 1, n, z).unwrap();
            assert!((j + op.b(n)).norm() < 1e-14);
            let j = kernel_j(&op, n - 1, n + 1, z).unwrap();
            let expected = -lambda * op.b(n + 1) + ONE - op.a(n) * op.c(n);
            assert!((j - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn tilde_polynomial_examples() {
        let p = kernel_j_tilde_poly(&rank_one(), 0, 1);
        assert_eq!(p.coefficients(), &[ZERO, c(-3.0, 0.0)]);
        let p = kernel_j_tilde_poly(&offdiag_two(), 0, 2);
        assert_eq!(p.coefficients(), &[ZERO, ZERO, c(-3.0, 0.0)]);
        let free = ComplexJacobiOperator::free();
        for n in 0..4 {
            for m in n + 1..7 {
                assert!(kernel_j_tilde_poly(&free, n, m).is_zero());
            }
        }
    }

    #[test]
    fn tilde_polynomial_matches_point_evaluation() {
        let ops = [rank_one(), offdiag_two()];
        for op in &ops {
            for k in 0..20 {
                let z = Complex64::from_polar(0.2 + 0.035 * k as f64, 0.7 * k as f64 + 0.1);
                for (n, m) in [(0, 1), (0, 2), (1, 2), (0, 3)] {
                    let from_poly = kernel_j_tilde_poly(op, n, m).eval(z);
                    let direct = kernel_j(op, n, m, z).unwrap() * z.powi((m - n) as i32);
                    assert!((from_poly - direct).norm() <= 1e-12 * direct.norm().max(1.0));
                    let pointwise = kernel_j_tilde(op, n, m, z);
                    assert!((pointwise - from_poly).norm() <= 1e-13 * from_poly.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn kernel_bound_examples() {
        let free = ComplexJacobiOperator::free();
        assert_eq!(kernel_bound_margin(&free, 0, 1, c(0.5, 0.0)).unwrap(), 0.0);
        let margin = kernel_bound_margin(&rank_one(), 0, 1, c(0.5, 0.0)).unwrap();
        assert!(margin.abs() < 1e-15);
        assert!(matches!(
            kernel_bound_margin(&free, 0, 1, ONE),
            Err(Error::BandEdge(_))
        ));
        assert!(matches!(
            kernel_bound_margin(&free, 0, 1, ZERO),
            Err(Error::ZeroSpectralParameter)
        ));
        assert!(kernel_bound_margin(&free, 0, 1, c(1.2, 0.0)).is_err());
    }
}
