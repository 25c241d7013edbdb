//! Jost polynomial of a few operators and the zeros it produces.
//!
//! cargo run --example jost_function

use jacobi_spectra::spectrum::discrete_spectrum;
use jacobi_spectra::{jost_backsubstitute, Complex64, ComplexJacobiOperator};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn show(name: &str, op: &ComplexJacobiOperator) {
    let jost = jost_backsubstitute(op);
    println!("{name} (M = {})", op.support_bound());
    for (n, p) in jost.tilde_polynomials().iter().enumerate() {
        let coefs: Vec<String> = p.coefficients().iter().map(|c| format!("{c:.4}")).collect();
        println!("  v~_{n}(z) = [{}]", coefs.join(", "));
    }
    for ev in discrete_spectrum(op) {
        println!(
            "  zero z = {:.6}  ->  eigenvalue {:.6}  (multiplicity {})",
            ev.z, ev.lambda, ev.multiplicity
        );
    }
    println!();
}

fn main() {
    show("b1 = 3", &ComplexJacobiOperator::diagonal(&[(1, c(3.0, 0.0))]).unwrap());

    let two = [(1, c(2.0, 0.0))];
    show("a1 = c1 = 2", &ComplexJacobiOperator::new(&two, &[], &two).unwrap());

    let op = ComplexJacobiOperator::new(
        &[(2, c(1.5, -0.5))],
        &[(1, c(0.4, 1.1)), (3, c(-1.2, 0.3))],
        &[(2, c(0.7, 0.2))],
    )
    .unwrap();
    show("complex perturbation", &op);

    // the Jost solution at a point, v_n(z) = v~_n(z) z^n
    let jost = jost_backsubstitute(&op);
    let z = c(0.3, 0.4);
    let seg = jost.segment(z, 6);
    println!("Jost solution at z = {z}:");
    for (n, v) in seg.values.iter().enumerate() {
        println!("  v_{n} = {v:.6}");
    }
    println!("gauged recurrence residual {:.1e}", op.gauged_residual(z, &seg));
}
