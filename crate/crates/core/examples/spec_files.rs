//! Reading operator files and writing them back in normalized form.
//!
//! cargo run --example spec_files

use std::path::Path;

use jacobi_spectra::spec_file::OperatorSpec;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/specs");
    let mut paths: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    for path in paths {
        let spec = OperatorSpec::load(&path).unwrap();
        println!(
            "{}: M = {}, σ₀(0) = {:.4}",
            spec.name.as_deref().unwrap_or("?"),
            spec.operator.support_bound(),
            spec.operator.sigma0(0)
        );
    }

    match OperatorSpec::parse(r#"{"c": [{"n": 1, "re": 0, "im": 0}]}"#) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
