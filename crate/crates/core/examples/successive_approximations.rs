//! Successive approximations for the discrete integral equation and the
//! a-priori bounds on their iterates.
//!
//! cargo run --example successive_approximations

use jacobi_spectra::jost::{bound_margin_i, bound_margin_ii, default_max_iter, iterate_bound, phi};
use jacobi_spectra::{jost_backsubstitute, jost_successive, Complex64, ComplexJacobiOperator};

fn main() {
    let op = ComplexJacobiOperator::diagonal(&[
        (1, Complex64::new(0.3, 0.1)),
        (2, Complex64::new(-0.2, 0.0)),
        (4, Complex64::new(0.0, 0.25)),
    ])
    .unwrap();
    let z = Complex64::new(0.2, 0.6);
    println!("σ₀(0) = {:.4}, σ₁(0) = {:.4}, φ(z) = {:.4}", op.sigma0(0), op.sigma1(0), phi(z));

    let s = jost_successive(&op, z, default_max_iter(&op), 0.0).unwrap();
    println!("converged after {} iterations", s.iterations());
    for j in 1..=s.iterations() {
        let f = s.iterate(0, j).norm();
        println!(
            "  |f_(0,{j})| = {f:.3e}   bound {:.3e}   sup over n {:.3e}",
            iterate_bound(&op, z, 0, j),
            s.sup_norms[j - 1]
        );
    }

    let jost = jost_backsubstitute(&op);
    println!("v~_0(z) by iteration      {:.12}", s.values[0]);
    println!("v~_0(z) by back-substitution {:.12}", jost.tilde_at(0, z));
    println!("slack in the φσ₀ bound: {:.3e}", bound_margin_i(&jost, z, 0).unwrap());
    println!("slack in the σ₁ bound:  {:.3e}", bound_margin_ii(&jost, z, 0).unwrap());
}
