//! Exact elimination of the critical curve: the implicit equation `P(u, v)`
//! of the symmetry defect curve of two circles, its stages, and its points
//! at infinity.
//!
//!     cargo run --release --example eliminate

use caustic::eliminate::{implicitize, infinity_profile, ElimConfig};
use caustic::scene::{GsdsProblem, PlaneCurve, Quadruple, XY};

fn main() {
    let circle = PlaneCurve::parse("x^2 + y^2 - 1", XY).unwrap();
    let problem = GsdsProblem::with_quadruple(&circle, &circle, Quadruple::from_ints(3, 5, -2, 7)).unwrap();
    println!("h = {}", problem.h);

    let curve = implicitize(&problem, &ElimConfig::default()).unwrap();
    for s in &curve.provenance.stages {
        println!("{:<28} degree {:>3}, {:>4} terms, {:>4} bits", s.stage, s.degree, s.terms, s.max_bits);
    }
    for f in &curve.provenance.factors {
        println!("factor of degree {} vanishes on {:.0}% of samples, kept: {}", f.degree, 100.0 * f.vanishing_fraction, f.retained);
    }
    println!("P has degree {} and {} terms", curve.degree, curve.p.num_terms());
    println!("P = {}", curve.p);

    for q in infinity_profile(&curve, &problem).unwrap() {
        println!("point at infinity ({:.4} : {:.4}) multiplicity {} from {:?}", q.direction[0], q.direction[1], q.multiplicity, q.kind);
    }
}
