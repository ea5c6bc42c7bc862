//! Closed-form invariants of the symmetry defect curve for small degree
//! pairs, with the consistency identities.
//!
//!     cargo run --example invariants

use caustic::invariants::{closed_form_checks, expected_invariants};

fn main() {
    println!("{:>3} {:>3} {:>7} {:>7} {:>8} {:>7} {:>8} {:>10}  identities", "d1", "d2", "degree", "cusps", "nodes", "genus", "chi_C", "chi_C'");
    for d1 in 2..=6 {
        for d2 in d1..=6 {
            let e = expected_invariants(d1, d2).unwrap();
            let checks = closed_form_checks(d1, d2).unwrap();
            let ok = checks.iter().all(|c| c.pass);
            println!(
                "{d1:>3} {d2:>3} {:>7} {:>7} {:>8} {:>7} {:>8} {:>10}  {}",
                e.degree,
                e.cusps,
                e.nodes,
                e.genus,
                e.chi_c,
                e.chi_cprime,
                if ok { "hold" } else { "FAIL" }
            );
        }
    }
}
