//! End-to-end checks shared by the `pipeline` and `acceptance` targets.

use caustic::cli::{run_pipeline, RunConfig, RunOutcome};
use caustic::eliminate::{implicitize, ElimConfig, Order};
use caustic::numeric::C64;
use caustic::singular::{conjugation_symmetric, fiber_count, node_preimages, Kind, SingularError};

pub const CIRCLE: &str = "x^2 + y^2 - 1";
pub const CUBIC: &str = "x^3 + 2*y^3 - 3*x*y + x - y/2 + 1/3";

/// One named check with the observed value.
pub struct Line {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Line {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Line {
        Line { name: name.to_string(), pass, detail: detail.into() }
    }
}

pub fn eq<T: PartialEq + std::fmt::Debug>(name: &str, got: T, want: T) -> Line {
    let pass = got == want;
    Line::new(name, pass, format!("got {got:?}, expected {want:?}"))
}

pub fn run(x: &str, y: &str, seed: u64) -> RunOutcome {
    run_pipeline(&RunConfig { seed, ..RunConfig::new(x, y) }).expect("pipeline runs")
}

/// Node preimage counts; a node with the wrong count reports that count.
pub fn node_preimage_counts(out: &RunOutcome) -> Vec<usize> {
    out.solve
        .points
        .iter()
        .filter(|p| p.kind == Kind::Node)
        .map(|p| match node_preimages(&out.prepared.problem, p, 3) {
            Ok(k) | Err(SingularError::Preimages(k)) => k,
            Err(_) => 0,
        })
        .collect()
}

/// Fiber sizes at the first `count` points of a fixed real grid that are
/// not on the curve.
pub fn off_curve_fibers(out: &RunOutcome, count: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    for i in 0..4 * count {
        if sizes.len() == count {
            break;
        }
        let uv = [C64::new(0.3 * i as f64 - 1.1, 0.0), C64::new(0.7 - 0.2 * i as f64, 0.0)];
        match fiber_count(&out.prepared.problem, &out.prepared.curve, uv, i as u64) {
            Ok(k) => sizes.push(k),
            Err(SingularError::OnCurve(_)) => continue,
            Err(_) => sizes.push(0),
        }
    }
    sizes
}

/// The two single-order eliminations agree up to sign.
pub fn orders_agree(x: &str, y: &str, seed: u64) -> Line {
    let out = run(x, y, seed);
    let p = &out.prepared.problem;
    let one = |order| implicitize(p, &ElimConfig { order, seed, ..ElimConfig::default() }).map(|c| c.p);
    match (one(Order::WThenZ), one(Order::ZThenW)) {
        (Ok(a), Ok(b)) => {
            let same = a == b || a == -b.clone();
            Line::new("elimination order independence", same, format!("degrees {:?} / {:?}", a.total_degree(), b.total_degree()))
        }
        (a, b) => Line::new("elimination order independence", false, format!("{:?} / {:?}", a.err(), b.err())),
    }
}

pub fn conjugation(out: &RunOutcome) -> Line {
    let ok = conjugation_symmetric(&out.solve.points, 1e-6);
    Line::new("conjugation symmetry", ok, format!("{} points, {} real", out.solve.points.len(), out.solve.points.iter().filter(|p| p.is_real).count()))
}

/// Same seed twice gives byte-identical reports.
pub fn determinism(x: &str, y: &str, seed: u64) -> Line {
    let config = RunConfig { seed, ..RunConfig::new(x, y) };
    let text = || {
        let out = run_pipeline(&config).expect("pipeline runs");
        caustic::json::to_string(&out.to_json(&config)) + &caustic::json::to_string(&out.solve.to_json())
    };
    let (a, b) = (text(), text());
    Line::new("determinism", a == b, format!("{} bytes", a.len()))
}
