//! The seeded property suites on a small random corpus.
//!
//! cargo run --release --example verify_corpus [SEED] [SIZE]

use jacobi_spectra::verify::{render_report, run_all, VerifyConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let size = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let config = VerifyConfig::new(seed, size);
    let outcomes = run_all(&config);
    print!("{}", render_report(&config, &outcomes));
}
