//! Spectrum-free region, no-spectrum criterion and the rectangle enclosure,
//! with an SVG plot written to the system temp directory (or the first
//! argument).
//!
//! cargo run --example spectrum_free_region [OUT.svg]

use jacobi_spectra::output::{region_svg, PlotWindow};
use jacobi_spectra::regions::{in_spectrum_free_region, RegionReport};
use jacobi_spectra::spectrum::discrete_spectrum;
use jacobi_spectra::{omega_constant, Complex64, ComplexJacobiOperator};

fn main() {
    let op = ComplexJacobiOperator::new(
        &[],
        &[(2, Complex64::new(0.05, 0.05)), (12, Complex64::new(0.2, 0.1))],
        &[],
    )
    .unwrap();
    let report = RegionReport::new(&op);
    println!("t = {:.16}", report.t);
    println!("σ₀(0) = {:.4}, σ₁(0) = {:.4}", report.d0, report.d1);
    println!("threshold c = {:.4}", report.omega_threshold);
    println!("σ₁(0) < t: {}", report.no_spectrum);
    match report.rectangles {
        Some(r) => println!(
            "rectangles {:.4} ≤ |Re λ| ≤ {:.4}, |Im λ| ≤ {:.4}",
            r.re_lo, r.re_hi, r.im_bound
        ),
        None => println!("rectangles not applicable"),
    }

    let eigenvalues: Vec<Complex64> = discrete_spectrum(&op).iter().map(|e| e.lambda).collect();
    let t = omega_constant();
    for w in &eigenvalues {
        println!("eigenvalue {w:.6}, inside free region: {}", in_spectrum_free_region(&op, *w, t));
    }

    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("spectrum_free_region.svg"));
    std::fs::write(&path, region_svg(&report, &eigenvalues, PlotWindow::default())).unwrap();
    println!("wrote {}", path.display());
}
