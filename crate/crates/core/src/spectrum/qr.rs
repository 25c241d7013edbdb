//! Shifted QR eigenvalue solvers.
//!
//! Truncations of a Jacobi matrix are tridiagonal. A diagonal similarity
//! makes them complex symmetric (`a_n`, `c_n` both become `√(a_n c_n)`), and
//! complex-orthogonal plane rotations (`c² + s² = 1`) preserve that form, so
//! a QR sweep costs `O(N)`. [`hessenberg_eigenvalues`] is the dense unitary
//! variant for general upper Hessenberg matrices and serves as a check on
//! the tridiagonal solver.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::ComplexJacobiOperator;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative size below which an off-diagonal entry is deflated.
pub const DEFLATION_TOL: f64 = 1e-14;
/// Sweep budget per unit of matrix size.
pub const SWEEPS_PER_ROW: usize = 30;
const EXCEPTIONAL_SHIFT_EVERY: usize = 10;

/// Leading `N×N` block of the Jacobi matrix, by diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    /// `a_1, …, a_{N-1}` (row `i+1`, column `i`)
    pub sub: Vec<Complex64>,
    /// `b_1, …, b_N`
    pub diag: Vec<Complex64>,
    /// `c_1, …, c_{N-1}` (row `i`, column `i+1`)
    pub sup: Vec<Complex64>,
}

impl Tridiagonal {
    pub fn truncation(op: &ComplexJacobiOperator, n: usize) -> Self {
        Self {
            sub: (1..n).map(|i| op.a(i)).collect(),
            diag: (1..=n).map(|i| op.b(i)).collect(),
            sup: (1..n).map(|i| op.c(i)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Off-diagonal `√(a_i c_i)` of the similar complex symmetric matrix.
    pub fn symmetrized_offdiagonal(&self) -> Vec<Complex64> {
        self.sub
            .iter()
            .zip(&self.sup)
            .map(|(a, c)| (a * c).sqrt())
            .collect()
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.size();
        let mut m = vec![vec![ZERO; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.sup[i];
                m[i + 1][i] = self.sub[i];
            }
        }
        m
    }
}

/// Eigenvalues of the `N×N` truncation, sorted by real then imaginary part.
pub fn truncated_eigenvalues(op: &ComplexJacobiOperator, n: usize) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::TruncationTooSmall(n));
    }
    let t = Tridiagonal::truncation(op, n);
    let off = t.symmetrized_offdiagonal();
    let mut eig = symmetric_tridiagonal_eigenvalues(t.diag, off)?;
    sort_eigenvalues(&mut eig);
    Ok(eig)
}

pub(crate) fn sort_eigenvalues(eig: &mut [Complex64]) {
    eig.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

fn negligible(e: Complex64, d0: Complex64, d1: Complex64, floor: f64) -> bool {
    e.norm() <= (DEFLATION_TOL * (d0.norm() + d1.norm())).max(floor)
}

/// Eigenvalues of `[[a, b], [b, c]]`; the first is the one closer to `c`.
fn symmetric_2x2(a: Complex64, b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let half = (a - c) / 2.0;
    let root = (half * half + b * b).sqrt();
    let mean = (a + c) / 2.0;
    let (p, q) = (mean + root, mean - root);
    if (p - c).norm() <= (q - c).norm() {
        (p, q)
    } else {
        (q, p)
    }
}

/// Shifted QR on a complex symmetric tridiagonal matrix with diagonal `d`
/// and off-diagonal `e`.
pub fn symmetric_tridiagonal_eigenvalues(
    mut d: Vec<Complex64>,
    mut e: Vec<Complex64>,
) -> Result<Vec<Complex64>> {
    let n = d.len();
    assert_eq!(e.len() + 1, n.max(1), "off-diagonal must have length n - 1");
    if n <= 1 {
        return Ok(d);
    }
    let scale = d.iter().chain(&e).map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 1e-3 * f64::EPSILON * scale;
    let budget = SWEEPS_PER_ROW * n;

    let mut sweeps = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;
    while hi > 0 {
        if negligible(e[hi - 1], d[hi - 1], d[hi], floor) {
            e[hi - 1] = ZERO;
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            if negligible(e[lo - 1], d[lo - 1], d[lo], floor) {
                e[lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if hi - lo == 1 {
            let (p, q) = symmetric_2x2(d[lo], e[lo], d[hi]);
            d[hi] = p;
            d[lo] = q;
            e[lo] = ZERO;
            hi = lo.saturating_sub(1);
            if lo == 0 {
                break;
            }
            since_deflation = 0;
            continue;
        }

        if sweeps >= budget {
            let found = d[hi + 1..].to_vec();
            return Err(Error::QrNotConverged { sweeps, found });
        }
        sweeps += 1;
        since_deflation += 1;

        let (wilkinson, _) = symmetric_2x2(d[hi - 1], e[hi - 1], d[hi]);
        let mut shift = if since_deflation % EXCEPTIONAL_SHIFT_EVERY == 0 {
            d[hi] + Complex64::new(0.75, 0.5) * e[hi - 1].norm()
        } else {
            wilkinson
        };
        // an isotropic first rotation (x² + y² ≈ 0) cannot be normalized
        for attempt in 0..4 {
            let x = d[lo] - shift;
            let y = e[lo];
            let r2 = x * x + y * y;
            if r2.norm() > 1e-8 * (x.norm_sqr() + y.norm_sqr()) || attempt == 3 {
                break;
            }
            shift += Complex64::new(0.3, 0.7) * (e[lo].norm() + 1e-3 * scale);
        }
        symmetric_qr_sweep(&mut d, &mut e, lo, hi, shift);
    }
    Ok(d)
}

/// One implicit QR sweep on rows `lo..=hi`.
fn symmetric_qr_sweep(d: &mut [Complex64], e: &mut [Complex64], lo: usize, hi: usize, shift: Complex64) {
    let mut x = d[lo] - shift;
    let mut y = e[lo];
    for k in lo..hi {
        let r = (x * x + y * y).sqrt();
        let (cs, sn) = if r == ZERO { (ONE, ZERO) } else { (x / r, y / r) };
        if k > lo {
            e[k - 1] = r;
        }
        let (dk, dk1, ek) = (d[k], d[k + 1], e[k]);
        let (cc, ss, cssn) = (cs * cs, sn * sn, cs * sn);
        d[k] = cc * dk + 2.0 * cssn * ek + ss * dk1;
        d[k + 1] = ss * dk - 2.0 * cssn * ek + cc * dk1;
        e[k] = cssn * (dk1 - dk) + (cc - ss) * ek;
        if k + 1 < hi {
            let next = e[k + 1];
            x = e[k];
            y = sn * next;
            e[k + 1] = cs * next;
        }
    }
}

/// Unitary Givens rotation `[[c, s], [-s̄, c]]` with real `c` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

/// Eigenvalues of a dense upper Hessenberg matrix by explicitly shifted QR
/// with unitary Givens rotations and Wilkinson shifts.
pub fn hessenberg_eigenvalues(mut h: Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let n = h.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = h.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 1e-3 * f64::EPSILON * scale;
    let budget = SWEEPS_PER_ROW * n;
    let mut sweeps = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);

    while hi > 0 {
        if negligible(h[hi][hi - 1], h[hi - 1][hi - 1], h[hi][hi], floor) {
            h[hi][hi - 1] = ZERO;
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            if negligible(h[lo][lo - 1], h[lo - 1][lo - 1], h[lo][lo], floor) {
                h[lo][lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if sweeps >= budget {
            let found = (hi + 1..n).map(|i| h[i][i]).collect();
            return Err(Error::QrNotConverged { sweeps, found });
        }
        sweeps += 1;
        since_deflation += 1;

        let shift = if since_deflation % EXCEPTIONAL_SHIFT_EVERY == 0 {
            h[hi][hi] + Complex64::new(0.75, 0.5) * h[hi][hi - 1].norm()
        } else {
            wilkinson_shift(
                h[hi - 1][hi - 1],
                h[hi - 1][hi],
                h[hi][hi - 1],
                h[hi][hi],
            )
        };
        for i in lo..=hi {
            h[i][i] -= shift;
        }
        // H - μ = QR
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            for j in k..=hi {
                let (u, v) = (h[k][j], h[k + 1][j]);
                h[k][j] = c * u + s * v;
                h[k + 1][j] = -s.conj() * u + c * v;
            }
            rot.push((c, s));
        }
        // RQ
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            for i in lo..=(k + 1).min(hi) {
                let (u, v) = (h[i][k], h[i][k + 1]);
                h[i][k] = c * u + s.conj() * v;
                h[i][k + 1] = -s * u + c * v;
            }
        }
        for i in lo..=hi {
            h[i][i] += shift;
        }
    }
    Ok((0..n).map(|i| h[i][i]).collect())
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) / 2.0;
    let root = (half * half + b * c).sqrt();
    let mean = (a + d) / 2.0;
    let (p, q) = (mean + root, mean - root);
    if (p - d).norm() <= (q - d).norm() {
        p
    } else {
        q
    }
}
