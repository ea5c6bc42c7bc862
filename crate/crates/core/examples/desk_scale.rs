//! What happens when an instance is too large for the configured budget:
//! two cubics under a small term budget stop before the degree-108
//! intermediate resultant, and the structured fallback report still checks
//! the cusp count on the critical curve.
//!
//!     cargo run --release --example desk_scale

use caustic::cli::{budget_fallback, prepare, CliError, RunConfig};
use caustic::json;

fn main() {
    let config = RunConfig {
        max_terms: 4096,
        ..RunConfig::new("x^3 + 2*y^3 - 3*x*y + x - y/2 + 1/3", "x^3 + 3*x^2*y - 2*y^3 + x*y - 2*x + y + 1")
    };
    match prepare(&config) {
        Ok(p) => println!("eliminated within budget: degree {}", p.curve.degree),
        Err(CliError::Elimination(e)) => println!("{}", json::to_string(&budget_fallback(&config, &e).unwrap())),
        Err(e) => eprintln!("{e}"),
    }
}
