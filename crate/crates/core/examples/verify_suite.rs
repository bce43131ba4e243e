//! Run an identity suite and print the summary and a CSV report.
//!
//!     cargo run --example verify_suite -- zeta
use ramellin::identities::{verify_suite, Suite, SuiteReport};
use ramellin::mellin::QuadratureConfig;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "basic".into());
    let suite: Suite = name.parse().unwrap_or_else(|e| panic!("{e}"));
    let cases = verify_suite(suite, &QuadratureConfig::default());
    for r in &cases {
        println!("{:<12} {:<22} rel {:.2e}  {}", r.status.to_string(), r.id.to_string(), r.rel_err, r.notes);
    }
    let report = SuiteReport::new(name.as_str(), cases);
    println!("\n{:?}\n", report.summary);
    print!("{}", report.to_csv());
}
