//! Real trace of one instance: chord midpoints of the two curves where the
//! critical equation changes sign, the zero contour of `P`, and the real
//! cusps. Prints the contour as CSV and writes `trace.svg`.
//!
//!     cargo run --release --example trace

use caustic::cli::{trace_instance, RunConfig};
use caustic::trace::Window;

fn main() {
    let config = RunConfig {
        window: Some(Window::new(-2.0, 2.0, -2.0, 2.0)),
        resolution: 256,
        ..RunConfig::new("x^2 + y^2 - 1", "x^2/4 + y^2 - 1")
    };
    let (outcome, trace) = trace_instance(&config).unwrap();
    eprintln!(
        "degree {}, {} midpoint samples, {} polylines, {} real cusps",
        outcome.prepared.curve.degree,
        trace.midpoint_samples.len(),
        trace.contour_polylines.len(),
        trace.real_cusps.len()
    );
    print!("{}", trace.contour_csv());
    std::fs::write("trace.svg", trace.to_svg()).unwrap();
}
