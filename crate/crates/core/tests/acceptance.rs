//! One pass/fail line per acceptance criterion. Run with `--nocapture` to
//! see the lines; the test fails if any criterion fails.
//!
//! The (3,3) criterion attempts the full elimination only when
//! `CAUSTIC_FULL_33` is set (it takes about 35 minutes on a desktop);
//! otherwise it runs under a desk-scale term budget and checks the
//! structured fallback report.

mod support;

use std::time::{Duration, Instant};

use caustic::cli::{budget_fallback, figure1_config, prepare, trace_instance, CliError, RunConfig};
use caustic::eliminate::{infinity_profile_matches, ElimError};
use caustic::invariants::{closed_form_checks, expected_invariants};
use caustic::singular::count_cusps_direct;
use caustic::trace::{Polyline, Window};
use support::pipeline::{self as pl, Line, CIRCLE, CUBIC};
use support::props;

const CUBIC_B: &str = "x^3 + 3*x^2*y - 2*y^3 + x*y - 2*x + y + 1";

/// Term budget that keeps the (3,3) intermediate resultant (degree 108)
/// out of the default test run.
const DESK_TERMS: usize = 4096;

struct Criterion {
    id: u32,
    lines: Vec<Line>,
    elapsed: Duration,
    limit: Duration,
}

impl Criterion {
    fn pass(&self) -> bool {
        self.elapsed <= self.limit && self.lines.iter().all(|l| l.pass)
    }

    fn print(&self) {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} ({:.1?}, limit {:?})", self.id, self.elapsed, self.limit);
        for l in &self.lines {
            println!("    [{}] {}: {}", if l.pass { "ok" } else { "FAIL" }, l.name, l.detail);
        }
    }
}

fn timed(id: u32, limit: Duration, f: impl FnOnce() -> Vec<Line>) -> Criterion {
    let t = Instant::now();
    let lines = f();
    Criterion { id, lines, elapsed: t.elapsed(), limit }
}

fn choose2(d: i64) -> i64 {
    d * (d - 1) / 2
}

/// Single-curve closed forms (both curves of degree `d`), written out
/// independently of the library's two-degree formulas.
fn diagonal_oracle(d: i64) -> (i64, i64, i64, i64) {
    let c2 = choose2(d) * choose2(d);
    (2 * d * d * (d - 1), 12 * c2, 4 * c2 * (2 * d * d - d - 5), 2 * d * d * (d * d - 3 * d + 2) + 1)
}

fn oracle() -> Vec<Line> {
    let e = expected_invariants(2, 2).unwrap();
    let mut lines = vec![pl::eq("(2,2) degree, cusps, nodes, genus", (e.degree, e.cusps, e.nodes, e.genus), (8, 12, 4, 1))];
    let mut bad = Vec::new();
    for d1 in 2..=6u32 {
        for d2 in 2..=6u32 {
            let a = expected_invariants(d1, d2).unwrap();
            if a != expected_invariants(d2, d1).unwrap() {
                bad.push(format!("asymmetric at ({d1},{d2})"));
            }
            for c in closed_form_checks(d1, d2).unwrap() {
                if !c.pass {
                    bad.push(format!("{} at ({d1},{d2}): {} != {}", c.name, c.lhs, c.rhs));
                }
            }
            if d1 == d2 {
                let o = diagonal_oracle(d1 as i64);
                if (a.degree, a.cusps, a.nodes, a.genus) != o {
                    bad.push(format!("diagonal oracle at d = {d1}: {o:?}"));
                }
            }
        }
    }
    lines.push(Line::new("symmetry, three identities, diagonal oracle for 2 <= d1, d2 <= 6", bad.is_empty(), if bad.is_empty() { "25 pairs".into() } else { bad.join("; ") }));
    lines
}

fn conic_pair() -> Vec<Line> {
    let out = pl::run(CIRCLE, CIRCLE, 7);
    let s = &out.solve;
    let pre = pl::node_preimage_counts(&out);
    let fibers = pl::off_curve_fibers(&out, 10);
    vec![
        pl::eq("degree of P", out.prepared.curve.degree, 8),
        pl::eq("singular points (cusps, nodes, other)", (s.points.len(), s.n_cusps, s.n_nodes, s.n_other), (16, 12, 4, 0)),
        pl::eq("cusps on the critical curve", out.cusps_direct, 12),
        Line::new("two preimages per node", pre.len() == 4 && pre.iter().all(|&k| k == 2), format!("{pre:?}")),
        Line::new("fiber size 4 at 10 off-curve points", fibers.len() == 10 && fibers.iter().all(|&k| k == 4), format!("{fibers:?}")),
        Line::new("worst residual within 1e-8", s.diagnostics.worst_residual <= 1e-8, format!("{:e}", s.diagnostics.worst_residual)),
    ]
}

fn conic_cubic() -> Vec<Line> {
    let config = RunConfig { seed: 7, ..RunConfig::new(CUBIC, CIRCLE) };
    match caustic::cli::run_pipeline(&config) {
        Ok(out) => {
            let s = &out.solve;
            let mut mult: Vec<u32> = out.profile.iter().map(|p| p.multiplicity).collect();
            mult.sort_unstable();
            let pre = pl::node_preimage_counts(&out);
            vec![
                pl::eq("degree of P", out.prepared.curve.degree, 18),
                pl::eq("singular points (cusps, nodes, other)", (s.n_cusps, s.n_nodes, s.n_other), (36, 60, 0)),
                pl::eq("cusps on the critical curve", out.cusps_direct, 36),
                Line::new("infinity profile {6,6,2,2,2}", mult == [2, 2, 2, 6, 6] && infinity_profile_matches(&out.profile, 3, 2), format!("{mult:?}")),
                Line::new("two preimages per node", pre.iter().all(|&k| k == 2), format!("{} nodes", pre.len())),
                pl::conjugation(&out),
            ]
        }
        Err(CliError::Elimination(e @ ElimError::Budget { .. })) => {
            let v = budget_fallback(&config, &e).unwrap();
            vec![Line::new("budget fallback: direct cusp count", v["cusps_direct_pass"] == true, format!("{}", v["computed"]))]
        }
        Err(e) => vec![Line::new("pipeline", false, e.to_string())],
    }
}

fn closed(line: &Polyline) -> bool {
    line.len() > 3 && line.first() == line.last()
}

fn on_edge(p: [f64; 2], w: &Window) -> bool {
    let tol = 1e-2 * (w.u[1] - w.u[0]).max(w.v[1] - w.v[0]);
    [p[0] - w.u[0], w.u[1] - p[0], p[1] - w.v[0], w.v[1] - p[1]].iter().any(|d| d.abs() <= tol)
}

fn figure_one() -> Vec<Line> {
    let mut lines = Vec::new();
    for (name, text, cusps) in [("circle", CIRCLE, 4), ("hyperbola", "x*y - 1", 2)] {
        match trace_instance(&figure1_config(text, 512)) {
            Ok((_, tr)) => {
                lines.push(pl::eq(&format!("{name}: real cusps"), tr.real_cusps.len(), cusps));
                let w = tr.window;
                let ok = !tr.contour_polylines.is_empty()
                    && tr.contour_polylines.iter().all(|l| closed(l) || (on_edge(l[0], &w) && on_edge(l[l.len() - 1], &w)));
                let n_closed = tr.contour_polylines.iter().filter(|l| closed(l)).count();
                lines.push(Line::new(&format!("{name}: curves closed or leaving the window"), ok, format!("{} polylines, {n_closed} closed", tr.contour_polylines.len())));
                let svg = tr.to_svg();
                let markers = svg.matches(r#"class="cusp""#).count();
                lines.push(pl::eq(&format!("{name}: SVG cusp markers"), markers, cusps));
            }
            Err(e) => lines.push(Line::new(name, false, e.to_string())),
        }
    }
    lines
}

fn properties() -> Vec<Line> {
    let mut lines: Vec<Line> = props::SUITES
        .iter()
        .map(|((name, suite), cases)| match suite(*cases) {
            Ok(()) => Line::new(name, true, format!("{cases} cases")),
            Err(e) => Line::new(name, false, e),
        })
        .collect();
    lines.push(pl::conjugation(&pl::run(CIRCLE, CIRCLE, 7)));
    lines.push(pl::orders_agree(CIRCLE, CIRCLE, 7));
    lines.push(pl::determinism(CIRCLE, CIRCLE, 7));
    lines
}

fn cubic_pair() -> Vec<Line> {
    let full = std::env::var_os("CAUSTIC_FULL_33").is_some();
    let base = RunConfig { seed: 7, ..RunConfig::new(CUBIC, CUBIC_B) };
    let config = if full { base } else { RunConfig { max_terms: DESK_TERMS, ..base } };
    match prepare(&config) {
        Ok(p) => {
            let direct = count_cusps_direct(&p.problem, &config.cusp_config());
            vec![pl::eq("degree of P", p.curve.degree, 36), pl::eq("cusps on the critical curve", direct, 108)]
        }
        Err(CliError::Elimination(e @ ElimError::Budget { .. })) => {
            let v = budget_fallback(&config, &e).unwrap();
            let e = &v["expected"];
            vec![
                Line::new("structured report", v["status"] == "out of desk-scale reach", format!("{}", v["reason"])),
                Line::new("closed forms (36, 108, 360)", e["degree"] == 36 && e["cusps"] == 108 && e["nodes"] == 360, format!("{e}")),
                Line::new("cusps on the critical curve", v["cusps_direct_pass"] == true, format!("{}", v["computed"])),
            ]
        }
        Err(e) => vec![Line::new("elimination", false, e.to_string())],
    }
}

#[test]
fn acceptance() {
    let min = |m: u64| Duration::from_secs(60 * m);
    let criteria = [
        timed(1, Duration::from_millis(100), oracle),
        timed(2, min(2), conic_pair),
        timed(3, min(30), conic_cubic),
        timed(4, min(1), figure_one),
        timed(5, min(30), properties),
        timed(6, min(120), cubic_pair),
    ];
    for c in &criteria {
        c.print();
    }
    let failed: Vec<u32> = criteria.iter().filter(|c| !c.pass()).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
