//! Jost-zero eigenvalues against eigenvalues of N×N truncations.
//!
//! cargo run --release --example truncation_oracle

use jacobi_spectra::spectrum::{reconcile, ReconcileOptions};
use jacobi_spectra::{truncated_eigenvalues, Complex64, ComplexJacobiOperator};

fn main() {
    let op = ComplexJacobiOperator::new(
        &[(2, Complex64::new(1.5, -0.5))],
        &[(1, Complex64::new(0.4, 1.1)), (3, Complex64::new(-1.2, 0.3))],
        &[(2, Complex64::new(0.7, 0.2))],
    )
    .unwrap();

    let eig = truncated_eigenvalues(&op, 40).unwrap();
    println!("N = 40 truncation, 4 eigenvalues farthest from the band:");
    let mut far: Vec<Complex64> = eig.clone();
    far.sort_by(|a, b| b.im.abs().total_cmp(&a.im.abs()));
    for w in far.iter().take(4) {
        println!("  {w:.8}");
    }

    let result = reconcile(&op, ReconcileOptions::default()).unwrap();
    println!("\nreconciliation at N = {}:", result.options.n);
    for m in &result.matches {
        println!(
            "  λ = {:.10} (z = {:.6})  oracle distance {:.1e}",
            m.eigenvalue.lambda, m.eigenvalue.z, m.distance
        );
    }
    for ev in &result.near_boundary {
        println!("  λ = {:.10} too close to the band to resolve", ev.lambda);
    }
    println!(
        "stable off-band truncation eigenvalues: {}, consistent: {}",
        result.stable_off_band.len(),
        result.is_consistent()
    );
}
