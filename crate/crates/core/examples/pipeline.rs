//! The full pipeline on a conic and a cubic: elimination, points at
//! infinity, singular points, direct cusp count, and the invariant report
//! compared with the closed forms.
//!
//!     cargo run --release --example pipeline

use caustic::cli::{run_pipeline, RunConfig};

fn main() {
    let config = RunConfig::new("x^3 + 2*y^3 - 3*x*y + x - y/2 + 1/3", "x^2 + y^2 - 1");
    let out = run_pipeline(&config).unwrap();
    let mut mult: Vec<u32> = out.profile.iter().map(|p| p.multiplicity).collect();
    mult.sort_unstable();
    println!("degree {} (expected {})", out.prepared.curve.degree, out.report.expected.degree);
    println!("points at infinity with multiplicities {mult:?}");
    println!("{} cusps, {} nodes; {} cusps on the critical curve", out.solve.n_cusps, out.solve.n_nodes, out.cusps_direct);
    for c in &out.report.checks {
        println!("  {:<26} {:>6} {:>6}  {}", c.name, c.lhs, c.rhs, if c.pass { "ok" } else { "FAIL" });
    }
    println!("report {}", if out.report.pass { "passes" } else { "fails" });
}
