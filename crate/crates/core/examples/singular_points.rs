//! Singular points of the symmetry defect curve of a circle and an ellipse,
//! checked against the independent counts on the critical curve.
//!
//!     cargo run --release --example singular_points

use caustic::eliminate::{implicitize, ElimConfig};
use caustic::scene::{PlaneCurve, QuadSampler, SampleConfig, XY};
use caustic::singular::{count_cusps_direct, node_preimages, solve_singular_points, CuspConfig, Kind, SolveConfig};

fn main() {
    let x = PlaneCurve::parse("x^2 + y^2 - 1", XY).unwrap();
    let y = PlaneCurve::parse("x^2 + 2*y^2 - x*y + y - 3", XY).unwrap();
    let problem = QuadSampler::new(&x, &y, 3, SampleConfig::default()).unwrap().next_problem().unwrap();
    let curve = implicitize(&problem, &ElimConfig::default()).unwrap();

    let report = solve_singular_points(&curve, &SolveConfig::default(), Some(problem.degrees()), &[]).unwrap();
    println!("{} cusps, {} nodes ({} starts)", report.n_cusps, report.n_nodes, report.diagnostics.starts_used);
    for p in &report.points {
        let [u, v] = p.location;
        let extra = match p.kind {
            Kind::Node => format!("{} preimages", node_preimages(&problem, p, 1).unwrap_or(0)),
            _ => String::new(),
        };
        println!("{:?} {:>9.5} {:>9.5}i, {:>9.5} {:>9.5}i  {extra}", p.kind, u.re, u.im, v.re, v.im);
    }
    println!("cusps found directly on the critical curve: {}", count_cusps_direct(&problem, &CuspConfig::default()));
}
