//! Green kernel of the free recurrence and the integral-equation kernel.
//!
//! cargo run --example green_kernel

use jacobi_spectra::green::{green, kernel_j, kernel_j_tilde_poly};
use jacobi_spectra::{Complex64, ComplexJacobiOperator};

fn main() {
    let z = Complex64::new(0.5, 0.5);
    let lambda = z + z.inv();
    println!("G(0, m; z) at z = {z}");
    for m in 1..=6 {
        let g = green(0, m, z).unwrap();
        // G(n, m+1) + G(n, m-1) - λ G(n, m) = δ(n, m)
        let identity = green(0, m + 1, z).unwrap() + green(0, m - 1, z).unwrap() - lambda * g;
        println!("  m = {m}: {g:.6}   recurrence defect {:.1e}", identity.norm());
    }

    // at z = ±1 the kernel degenerates to U_{k-1}(±1) = ±k
    for k in 1..=4 {
        let g = green(0, k, Complex64::new(-1.0, 0.0)).unwrap();
        println!("  G(0, {k}; -1) = {}", g.re);
    }

    let op = ComplexJacobiOperator::new(
        &[(1, Complex64::new(2.0, 0.0))],
        &[(2, Complex64::new(0.5, 0.0))],
        &[],
    )
    .unwrap();
    println!("\nJ(0, m; z) and its polynomial form z^m J(0, m; z)");
    for m in 1..=3 {
        let j = kernel_j(&op, 0, m, z).unwrap();
        let p = kernel_j_tilde_poly(&op, 0, m);
        println!(
            "  m = {m}: J = {j:.6}, poly coefficients {:?}",
            p.coefficients().iter().map(|c| c.re).collect::<Vec<_>>()
        );
    }
}
