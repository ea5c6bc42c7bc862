//! Real pictures of the symmetry defect set for a circle and a hyperbola
//! placed by the affine pair G = identity, H = (1.1x + 0.1y, -0.2x + 0.9y).
//! Writes `gsds_circle.svg` and `gsds_hyperbola.svg` to the current
//! directory.
//!
//!     cargo run --release --example figure1

use caustic::cli::figure1;

fn main() {
    for panel in figure1(512).unwrap() {
        let file = format!("gsds_{}.svg", panel.name);
        std::fs::write(&file, &panel.svg).unwrap();
        println!(
            "{:<10} degree {}, {} cusps, {} nodes, {} real cusps, agreement {:.3} -> {file}",
            panel.name, panel.degree, panel.cusps, panel.nodes, panel.real_cusps, panel.agreement
        );
    }
}
