//! Zero-free and spectrum-free regions.
//!
//! With `t` the root of `t e^t = 1` and `c = 2σ₀(0)/t`, the Jost function has
//! no zeros in `Ω = {z ∈ 𝔻 : |z - 1/z| > c}`, so the image
//! `G(J) = {z + 1/z : z ∈ Ω}` carries no discrete spectrum. If
//! `σ₁(0) < t` there is no discrete spectrum at all.
//!
//! Because `(z + 1/z)² - (z - 1/z)² = 4`, the complement of `G(J)` off the
//! band is `{λ : |λ² - 4| ≤ c²}`.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{inverse_joukowski, ComplexJacobiOperator};

/// Slack applied to the strict region inequalities, always toward "not free".
pub const REGION_SLACK: f64 = 1e-12;

const NEWTON_MAX_ITER: usize = 64;

/// The Omega constant: the real root of `t e^t = 1`.
///
/// Newton iteration on `g(t) = t + ln t` from `t = 0.5`.
pub fn omega_constant() -> f64 {
    let mut t: f64 = 0.5;
    for _ in 0..NEWTON_MAX_ITER {
        let step = (t + t.ln()) / (1.0 + 1.0 / t);
        let next = t - step;
        if next == t || step.abs() <= f64::EPSILON * t {
            t = next;
            break;
        }
        t = next;
    }
    t
}

/// `|z - 1/z| > 2 σ₀(0) / t`. The point `z = 0` counts as inside.
pub fn in_omega(z: Complex64, d0: f64, t: f64) -> bool {
    let threshold = omega_threshold(d0, t);
    if z == Complex64::new(0.0, 0.0) {
        return true;
    }
    (z - z.inv()).norm() > threshold * (1.0 + REGION_SLACK) + REGION_SLACK
}

/// `2 D₀ / t`.
pub fn omega_threshold(d0: f64, t: f64) -> f64 {
    2.0 * d0 / t
}

/// `σ₁(0) < t`: no discrete spectrum at all.
pub fn no_spectrum_criterion(op: &ComplexJacobiOperator, t: f64) -> bool {
    op.sigma1(0) < t - REGION_SLACK
}

/// Whether `λ` lies in the image `G(J)` of the zero-free region.
pub fn in_spectrum_free_region(op: &ComplexJacobiOperator, lambda: Complex64, t: f64) -> bool {
    in_omega(inverse_joukowski(lambda), op.sigma0(0), t)
}

/// Two symmetric rectangles
/// `{w : re_lo < |Re w| < re_hi, |Im w| < im_bound}` enclosing the discrete spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralRectangles {
    pub c: f64,
    pub re_lo: f64,
    pub re_hi: f64,
    pub im_bound: f64,
}

impl SpectralRectangles {
    /// Membership with `slack` added on every side.
    pub fn contains(&self, w: Complex64, slack: f64) -> bool {
        let x = w.re.abs();
        x > self.re_lo - slack && x < self.re_hi + slack && w.im.abs() < self.im_bound + slack
    }
}

/// Rectangles for `c = 2σ₀(0)/t < 2`, `None` otherwise.
pub fn spectral_rectangles(op: &ComplexJacobiOperator, t: f64) -> Option<SpectralRectangles> {
    let c = omega_threshold(op.sigma0(0), t);
    if c >= 2.0 {
        return None;
    }
    let c2 = c * c;
    Some(SpectralRectangles {
        c,
        re_lo: (4.0 - c2).sqrt(),
        re_hi: (4.0 + c2).sqrt(),
        im_bound: c2 / 4.0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionReport {
    pub t: f64,
    /// `σ₀(0)`
    pub d0: f64,
    /// `σ₁(0)`
    pub d1: f64,
    pub omega_threshold: f64,
    pub no_spectrum: bool,
    pub c: f64,
    pub rectangles: Option<SpectralRectangles>,
}

impl RegionReport {
    pub fn new(op: &ComplexJacobiOperator) -> Self {
        let t = omega_constant();
        let d0 = op.sigma0(0);
        let threshold = omega_threshold(d0, t);
        Self {
            t,
            d0,
            d1: op.sigma1(0),
            omega_threshold: threshold,
            no_spectrum: no_spectrum_criterion(op, t),
            c: threshold,
            rectangles: spectral_rectangles(op, t),
        }
    }
}

/// Boundary of `G(J)`: the level set `|w² - 4| = c²` traced as
/// `w = ±√(4 + c² e^{iθ})`, one polyline per starting branch. The branch is
/// followed continuously, so for `c ≥ 2` both polylines cover the same curve.
pub fn free_region_boundary(c: f64, samples: usize) -> Vec<Vec<Complex64>> {
    if c == 0.0 || samples < 2 {
        return Vec::new();
    }
    [1.0, -1.0]
        .iter()
        .map(|&sign| {
            let mut prev = Complex64::new(sign * (4.0 + c * c).sqrt(), 0.0);
            (0..=samples)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
                    let w = (Complex64::from_polar(c * c, theta) + 4.0).sqrt();
                    let w = if (w - prev).norm() <= (w + prev).norm() { w } else { -w };
                    prev = w;
                    w
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// Proven free of discrete spectrum.
    FreeRegion,
    /// Not covered by the exclusion region.
    Unresolved,
    /// Within one grid cell of the essential spectrum `[-2, 2]`.
    EssentialBand,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::FreeRegion => "free-region",
            RegionLabel::Unresolved => "unresolved",
            RegionLabel::EssentialBand => "essential-band",
        }
    }
}

/// Axis-aligned λ-grid, row-major with the imaginary axis as the outer loop.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub resolution_re: usize,
    pub resolution_im: usize,
}

impl GridSpec {
    pub fn new(re: (f64, f64), im: (f64, f64), resolution_re: usize, resolution_im: usize) -> Result<Self> {
        if re.0.partial_cmp(&re.1) != Some(Ordering::Less) || im.0.partial_cmp(&im.1) != Some(Ordering::Less) {
            return Err(Error::InvalidGrid(format!(
                "empty range re {:?} im {:?}",
                re, im
            )));
        }
        if resolution_re < 2 || resolution_im < 2 {
            return Err(Error::InvalidGrid(format!(
                "resolution {}x{} must be at least 2 per axis",
                resolution_re, resolution_im
            )));
        }
        Ok(Self {
            re,
            im,
            resolution_re,
            resolution_im,
        })
    }

    pub fn step(&self) -> (f64, f64) {
        (
            (self.re.1 - self.re.0) / (self.resolution_re - 1) as f64,
            (self.im.1 - self.im.0) / (self.resolution_im - 1) as f64,
        )
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let (dx, dy) = self.step();
        (0..self.resolution_im).flat_map(move |j| {
            (0..self.resolution_re).map(move |i| {
                Complex64::new(self.re.0 + i as f64 * dx, self.im.0 + j as f64 * dy)
            })
        })
    }

    pub fn len(&self) -> usize {
        self.resolution_re * self.resolution_im
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Distance from `λ` to the segment `[-2, 2]`.
pub fn band_distance(lambda: Complex64) -> f64 {
    let dx = (lambda.re.abs() - 2.0).max(0.0);
    dx.hypot(lambda.im)
}

/// Labels every λ of the grid.
pub fn region_grid(op: &ComplexJacobiOperator, grid: &GridSpec) -> Vec<(Complex64, RegionLabel)> {
    let t = omega_constant();
    let (dx, dy) = grid.step();
    let diagonal = dx.hypot(dy);
    grid.points()
        .map(|lambda| {
            let label = if band_distance(lambda) < diagonal {
                RegionLabel::EssentialBand
            } else if in_spectrum_free_region(op, lambda, t) {
                RegionLabel::FreeRegion
            } else {
                RegionLabel::Unresolved
            };
            (lambda, label)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(b1: f64) -> ComplexJacobiOperator {
        ComplexJacobiOperator::diagonal(&[(1, c(b1, 0.0))]).unwrap()
    }

    #[test]
    fn omega_constant_solves_defining_equation() {
        let t = omega_constant();
        assert!((t * t.exp() - 1.0).abs() < 1e-15);
        assert!((t - 0.567).abs() < 5e-4);
    }

    #[test]
    fn omega_membership() {
        let t = omega_constant();
        assert!(in_omega(c(0.5, 0.5), 0.0, t));
        assert!(in_omega(c(0.999, 0.0), 0.0, t));
        assert!(!in_omega(c(1.0 / 3.0, 0.0), 3.0, t));
        assert!(in_omega(c(0.01, 0.0), 3.0, t));
        assert!(in_omega(c(0.0, 0.0), 3.0, t));
    }

    #[test]
    fn no_spectrum_examples() {
        let t = omega_constant();
        assert!(no_spectrum_criterion(&ComplexJacobiOperator::free(), t));
        assert!(no_spectrum_criterion(&diag(0.5), t));
        assert!(!no_spectrum_criterion(&diag(3.0), t));
    }

    #[test]
    fn spectrum_free_region_examples() {
        let t = omega_constant();
        let free = ComplexJacobiOperator::free();
        assert!(in_spectrum_free_region(&free, c(2.5, 0.0), t));
        assert!(in_spectrum_free_region(&free, c(0.0, 0.3), t));
        let op = diag(3.0);
        assert!(!in_spectrum_free_region(&op, c(10.0 / 3.0, 0.0), t));
        assert!(in_spectrum_free_region(&op, c(100.0, 0.0), t));
    }

    #[test]
    fn rectangles_examples() {
        let t = omega_constant();
        let r = spectral_rectangles(&ComplexJacobiOperator::free(), t).unwrap();
        assert_eq!((r.re_lo, r.re_hi, r.im_bound), (2.0, 2.0, 0.0));
        assert!(!r.contains(c(2.0, 0.0), 0.0));

        let r = spectral_rectangles(&diag(0.1), t).unwrap();
        assert!((r.c - 0.2 / t).abs() < 1e-15);
        assert!((r.re_lo - 1.9687).abs() < 1e-4);
        assert!((r.re_hi - 2.0309).abs() < 1e-4);
        assert!((r.im_bound - 0.0311).abs() < 1e-4);

        assert!(spectral_rectangles(&diag(3.0), t).is_none());
    }

    #[test]
    fn report_fields() {
        let report = RegionReport::new(&diag(3.0));
        assert_eq!(report.d0, 3.0);
        assert_eq!(report.d1, 3.0);
        assert!(!report.no_spectrum);
        assert!((report.c - 6.0 / report.t).abs() < 1e-14);
        assert!(report.rectangles.is_none());
    }

    #[test]
    fn boundary_curve_satisfies_level_set() {
        for c_val in [0.3, 1.5, 2.0, 3.5] {
            let curves = free_region_boundary(c_val, 400);
            assert!(!curves.is_empty());
            for w in curves.iter().flatten() {
                assert!(((w * w - 4.0).norm() - c_val * c_val).abs() < 1e-10);
            }
        }
        assert!(free_region_boundary(0.0, 100).is_empty());
    }

    #[test]
    fn grid_labels() {
        let grid = GridSpec::new((-3.0, 3.0), (-1.0, 1.0), 31, 11).unwrap();
        let labels = region_grid(&ComplexJacobiOperator::free(), &grid);
        assert_eq!(labels.len(), 31 * 11);
        for (lambda, label) in &labels {
            if *label != RegionLabel::EssentialBand {
                assert_eq!(*label, RegionLabel::FreeRegion, "at {lambda}");
            }
        }
        assert!(labels.iter().any(|(_, l)| *l == RegionLabel::EssentialBand));

        let grid = GridSpec::new((0.0, 20.0 / 3.0), (-1.0, 1.0), 11, 3).unwrap();
        let labels = region_grid(&diag(3.0), &grid);
        let at = labels
            .iter()
            .find(|(l, _)| (l - c(10.0 / 3.0, 0.0)).norm() < 1e-12)
            .unwrap();
        assert_eq!(at.1, RegionLabel::Unresolved);

        let grid = GridSpec::new((-1.0, 1.0), (-1.0, 1.0), 2, 2).unwrap();
        assert_eq!(region_grid(&diag(3.0), &grid).len(), 4);

        assert!(GridSpec::new((1.0, 1.0), (0.0, 1.0), 4, 4).is_err());
        assert!(GridSpec::new((0.0, 1.0), (0.0, 1.0), 1, 4).is_err());
    }
}
