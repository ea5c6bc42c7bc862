//! Real pictures of the caustic: chord midpoints of the real curves, the
//! zero contour of `P`, and the real cusps.
//!
//! Everything in a [`RealTrace`] is in display coordinates, which are half of
//! `pi`: with the identity quadruple these are the actual chord midpoints.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::eliminate::ImplicitCurve;
use crate::numeric::{self, C64};
use crate::poly::{resultant_lenient, univariate, CompiledPoly, Poly, PolyError};
use crate::scene::{GsdsProblem, XY};
use crate::singular::{Kind, SolveReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TraceError {
    #[error("curve {0} has no real points in the sampling box")]
    EmptyRealLocus(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl Window {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Window {
        Window { u: [u0.min(u1), u0.max(u1)], v: [v0.min(v1), v0.max(v1)] }
    }

    pub fn square(half: f64) -> Window {
        Window::new(-half, half, -half, half)
    }

    /// `"u0,u1,v0,v1"`.
    pub fn parse(s: &str) -> Option<Window> {
        let v: Vec<f64> = s.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
        match v[..] {
            [a, b, c, d] if a != b && c != d && v.iter().all(|x| x.is_finite()) => Some(Window::new(a, b, c, d)),
            _ => None,
        }
    }

    pub fn width(&self) -> f64 {
        self.u[1] - self.u[0]
    }

    pub fn height(&self) -> f64 {
        self.v[1] - self.v[0]
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        (self.u[0]..=self.u[1]).contains(&p[0]) && (self.v[0]..=self.v[1]).contains(&p[1])
    }

    fn scaled(&self, k: f64) -> Window {
        Window::new(self.u[0] * k, self.u[1] * k, self.v[0] * k, self.v[1] * k)
    }

    /// Bounding box of `pts` scaled by 1.2 about its center.
    pub fn around(pts: &[[f64; 2]]) -> Option<Window> {
        let first = pts.first()?;
        let mut w = Window { u: [first[0]; 2], v: [first[1]; 2] };
        for p in pts {
            w.u = [w.u[0].min(p[0]), w.u[1].max(p[0])];
            w.v = [w.v[0].min(p[1]), w.v[1].max(p[1])];
        }
        let (cu, cv) = ((w.u[0] + w.u[1]) / 2.0, (w.v[0] + w.v[1]) / 2.0);
        let (hu, hv) = (0.6 * w.width().max(1e-9), 0.6 * w.height().max(1e-9));
        Some(Window::new(cu - hu, cu + hu, cv - hv, cv + hv))
    }
}

pub type Polyline = Vec<[f64; 2]>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealTrace {
    pub midpoint_samples: Vec<[f64; 2]>,
    pub contour_polylines: Vec<Polyline>,
    pub real_cusps: Vec<[f64; 2]>,
    pub window: Window,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceConfig {
    pub resolution: usize,
    /// Display window; by default the padded box around the midpoints.
    pub window: Option<Window>,
    /// Half-width of the box in which the real curves are sampled; by
    /// default three times the extent of their turning points.
    pub curve_box: Option<f64>,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig { resolution: 512, window: None, curve_box: None }
    }
}

// ---- marching squares ----------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    /// Between grid nodes `(i, j)` and `(i + 1, j)`.
    H(usize, usize),
    /// Between grid nodes `(i, j)` and `(i, j + 1)`.
    V(usize, usize),
}

struct Grid<'a> {
    window: Window,
    n: usize,
    values: Vec<f64>,
    eval: &'a (dyn Fn([f64; 2]) -> f64 + Sync),
}

impl Grid<'_> {
    fn node(&self, i: usize, j: usize) -> [f64; 2] {
        let w = &self.window;
        [w.u[0] + w.width() * i as f64 / self.n as f64, w.v[0] + w.height() * j as f64 / self.n as f64]
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.n + 1) + i]
    }

    fn crossing(&self, e: Edge) -> [f64; 2] {
        let ((i0, j0), (i1, j1)) = match e {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
        };
        let (a, b) = (self.value(i0, j0), self.value(i1, j1));
        let (p, q) = (self.node(i0, j0), self.node(i1, j1));
        let mut t = if a == b { 0.5 } else { a / (a - b) };
        t = t.clamp(0.0, 1.0);
        // one secant step on the true function sharpens the estimate
        let x = [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
        let fx = (self.eval)(x);
        let (lo, flo, hi, fhi) = if (fx >= 0.0) == (a >= 0.0) { (t, fx, 1.0, b) } else { (0.0, a, t, fx) };
        if flo != fhi {
            let s = (lo + flo / (flo - fhi) * (hi - lo)).clamp(lo, hi);
            if s.is_finite() {
                t = s;
            }
        }
        [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
    }
}

/// Oriented segments (positive side on the left) in cell `(i, j)`.
fn cell_segments(g: &Grid, i: usize, j: usize) -> Vec<(Edge, Edge)> {
    let c = [g.value(i, j), g.value(i + 1, j), g.value(i + 1, j + 1), g.value(i, j + 1)];
    let pos: Vec<bool> = c.iter().map(|&x| x >= 0.0).collect();
    // edges counterclockwise: bottom, right, top, left
    let edges = [Edge::H(i, j), Edge::V(i + 1, j), Edge::H(i, j + 1), Edge::V(i, j)];
    let crossing: Vec<usize> = (0..4).filter(|&k| pos[k] != pos[(k + 1) % 4]).collect();
    let pairs: Vec<(usize, usize)> = match crossing.len() {
        2 => vec![(crossing[0], crossing[1])],
        4 => {
            let center = c.iter().sum::<f64>() / 4.0;
            if (center >= 0.0) == pos[0] {
                vec![(0, 1), (2, 3)]
            } else {
                vec![(3, 0), (1, 2)]
            }
        }
        _ => vec![],
    };
    pairs
        .into_iter()
        .map(|(a, b)| {
            // walking counterclockwise, the edge where the corner sign
            // turns from positive to negative starts the segment
            if pos[a] && !pos[(a + 1) % 4] {
                (edges[a], edges[b])
            } else {
                (edges[b], edges[a])
            }
        })
        .collect()
}

fn march(eval: &(dyn Fn([f64; 2]) -> f64 + Sync), window: Window, resolution: usize) -> Vec<Polyline> {
    let n = resolution.max(2);
    let mut grid = Grid { window, n, values: Vec::new(), eval };
    let values: Vec<f64> = (0..(n + 1) * (n + 1))
        .into_par_iter()
        .map(|k| eval(grid.node(k % (n + 1), k / (n + 1))))
        .collect();
    grid.values = values;
    let segs: Vec<(Edge, Edge)> = (0..n * n).into_par_iter().flat_map_iter(|k| cell_segments(&grid, k % n, k / n)).collect();
    let mut next: BTreeMap<Edge, Edge> = BTreeMap::new();
    let mut incoming: BTreeMap<Edge, usize> = BTreeMap::new();
    for (a, b) in segs {
        next.insert(a, b);
        *incoming.entry(b).or_default() += 1;
    }
    let mut points: BTreeMap<Edge, [f64; 2]> = BTreeMap::new();
    let mut point = |e: Edge| *points.entry(e).or_insert_with(|| grid.crossing(e));
    let mut lines = Vec::new();
    let mut visited = std::collections::BTreeSet::new();
    let starts: Vec<Edge> = next.keys().filter(|e| !incoming.contains_key(e)).copied().collect();
    let cycles: Vec<Edge> = next.keys().copied().collect();
    for start in starts.into_iter().chain(cycles) {
        if visited.contains(&start) {
            continue;
        }
        let mut line = vec![point(start)];
        visited.insert(start);
        let mut cur = start;
        while let Some(&nx) = next.get(&cur) {
            line.push(point(nx));
            if !visited.insert(nx) {
                break;
            }
            cur = nx;
        }
        lines.push(line);
    }
    lines
}

/// Zero set of the curve's `P` inside `window` by marching squares on a
/// `resolution x resolution` grid. Each polyline keeps `{P > 0}` on its left;
/// closed polylines repeat their first point.
pub fn contour(curve: &ImplicitCurve, window: Window, resolution: usize) -> Vec<Polyline> {
    let p = CompiledPoly::normalized(&curve.p);
    march(&|x: [f64; 2]| p.eval_real(&x), window, resolution)
}

/// Real cusps of a solve report.
pub fn count_real_cusps(solve: &SolveReport) -> usize {
    solve.points.iter().filter(|p| p.kind == Kind::Cusp && p.is_real).count()
}

// ---- chord midpoints -----------------------------------------------------

/// A real plane curve `{f = 0}` with compiled gradient.
struct RealCurve {
    f: CompiledPoly,
    fx: CompiledPoly,
    fy: CompiledPoly,
}

impl RealCurve {
    fn new(f: &Poly) -> RealCurve {
        let scale = f.terms().map(|(_, c)| num_traits::Signed::abs(c)).max().expect("nonzero curve");
        let c = |q: &Poly| CompiledPoly::with_scale(q, &scale);
        let [a, b] = [&XY[0], &XY[1]].map(|v| f.partial_derivative(v).expect("x, y present"));
        RealCurve { f: c(f), fx: c(&a), fy: c(&b) }
    }

    fn grad(&self, p: [f64; 2]) -> [f64; 2] {
        [self.fx.eval_real(&p), self.fy.eval_real(&p)]
    }

    /// Gradient steps onto the curve.
    fn project(&self, mut p: [f64; 2]) -> [f64; 2] {
        for _ in 0..4 {
            let v = self.f.eval_real(&p);
            let g = self.grad(p);
            let n2 = g[0] * g[0] + g[1] * g[1];
            if n2 == 0.0 || v == 0.0 {
                break;
            }
            p = [p[0] - v * g[0] / n2, p[1] - v * g[1] / n2];
        }
        p
    }

    fn samples(&self, half: f64, resolution: usize) -> Vec<Polyline> {
        march(&|x: [f64; 2]| self.f.eval_real(&x), Window::square(half), resolution)
            .into_iter()
            .map(|l| l.into_iter().map(|p| self.project(p)).collect())
            .collect()
    }
}

/// Largest real root modulus of the turning-point resultants, at least 1.
fn turning_extent(f: &Poly) -> Result<f64, TraceError> {
    let mut extent: f64 = 1.0;
    for (var, other) in [("y", 0), ("x", 1)] {
        let r = resultant_lenient(f, &f.partial_derivative(var)?, var)?;
        let exact: Vec<_> = r.coeffs_idx(other).iter().map(|c| c.constant_value().unwrap_or_default()).collect();
        let dense: Vec<C64> = univariate::to_f64_normalized(&exact).into_iter().map(|x| C64::new(x, 0.0)).collect();
        for z in numeric::poly_roots(&dense) {
            if z.im.abs() < 1e-6 * (1.0 + z.re.abs()) {
                extent = extent.max(z.re.abs());
            }
        }
    }
    Ok(extent)
}

/// Sampling half-width used for both curves of the problem.
pub fn curve_box(problem: &GsdsProblem) -> Result<f64, TraceError> {
    let zw_as_xy = problem.y.with_vars(XY);
    Ok(3.0 * turning_extent(problem.x.poly())?.max(turning_extent(zw_as_xy.poly())?))
}

/// Chord midpoints of the real pair: the real curves are sampled by marching
/// on a `resolution` grid, and for each sample `p` on `X` the zeros of
/// `q -> h(p, q)` along the samples of `Y` are isolated by sign changes and
/// refined by Newton on `(g, h)`. Returns `pi(p, q) / 2`.
pub fn trace_midpoints(problem: &GsdsProblem, resolution: usize) -> Result<Vec<[f64; 2]>, TraceError> {
    let half = curve_box(problem)?;
    trace_midpoints_in(problem, resolution, half)
}

pub fn trace_midpoints_in(problem: &GsdsProblem, resolution: usize, half: f64) -> Result<Vec<[f64; 2]>, TraceError> {
    let x = RealCurve::new(problem.x.poly());
    let y = RealCurve::new(problem.y.with_vars(XY).poly());
    let xs: Vec<[f64; 2]> = x.samples(half, resolution).into_iter().flatten().collect();
    let ys = y.samples(half, resolution);
    if xs.is_empty() {
        return Err(TraceError::EmptyRealLocus("X".into()));
    }
    if ys.is_empty() {
        return Err(TraceError::EmptyRealLocus("Y".into()));
    }
    let h = CompiledPoly::normalized(&problem.h);
    let hz = CompiledPoly::normalized(&problem.h.partial_derivative("z")?);
    let hw = CompiledPoly::normalized(&problem.h.partial_derivative("w")?);
    let proj = |p: [f64; 2], q: [f64; 2]| {
        let m = problem.project(&[p[0], p[1], q[0], q[1]].map(|t| C64::new(t, 0.0)));
        [m[0].re / 2.0, m[1].re / 2.0]
    };
    let out: Vec<Vec<[f64; 2]>> = xs
        .par_iter()
        .map(|&p| {
            let hv = |q: [f64; 2]| h.eval_real(&[p[0], p[1], q[0], q[1]]);
            let mut found = Vec::new();
            for line in &ys {
                let vals: Vec<f64> = line.iter().map(|&q| hv(q)).collect();
                for k in 0..line.len().saturating_sub(1) {
                    let (a, b) = (vals[k], vals[k + 1]);
                    if (a >= 0.0) == (b >= 0.0) || line[k] == line[k + 1] {
                        continue;
                    }
                    let t = a / (a - b);
                    let q0 = [line[k][0] + t * (line[k + 1][0] - line[k][0]), line[k][1] + t * (line[k + 1][1] - line[k][1])];
                    let seg = numeric_dist(line[k], line[k + 1]);
                    let Some(q) = refine_pair(&y, &h, &hz, &hw, p, q0) else { continue };
                    if numeric_dist(q, q0) <= 2.0 * seg + 1e-12 {
                        found.push(proj(p, q));
                    }
                }
            }
            found
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

fn numeric_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Newton in `q` on `g(q) = 0`, `h(p, q) = 0`.
fn refine_pair(y: &RealCurve, h: &CompiledPoly, hz: &CompiledPoly, hw: &CompiledPoly, p: [f64; 2], mut q: [f64; 2]) -> Option<[f64; 2]> {
    for _ in 0..30 {
        let at = [p[0], p[1], q[0], q[1]];
        let r = [y.f.eval_real(&q), h.eval_real(&at)];
        let g = y.grad(q);
        let j = [[g[0], g[1]], [hz.eval_real(&at), hw.eval_real(&at)]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let d = [(r[0] * j[1][1] - r[1] * j[0][1]) / det, (j[0][0] * r[1] - j[1][0] * r[0]) / det];
        q = [q[0] - d[0], q[1] - d[1]];
        if d[0].abs() + d[1].abs() <= 1e-14 * (1.0 + q[0].abs() + q[1].abs()) {
            break;
        }
    }
    let at = [p[0], p[1], q[0], q[1]];
    let ok = q.iter().all(|t| t.is_finite()) && relative_real(&y.f, &q) < 1e-9 && relative_real(h, &at) < 1e-9;
    ok.then_some(q)
}

fn relative_real(p: &CompiledPoly, x: &[f64]) -> f64 {
    let z: Vec<C64> = x.iter().map(|&t| C64::new(t, 0.0)).collect();
    p.relative_residual(&z)
}

/// Both real renderings and the real cusps, in display coordinates.
pub fn real_trace(problem: &GsdsProblem, curve: Option<&ImplicitCurve>, solve: Option<&SolveReport>, config: &TraceConfig) -> Result<RealTrace, TraceError> {
    let midpoint_samples = match config.curve_box {
        Some(half) => trace_midpoints_in(problem, config.resolution, half)?,
        None => trace_midpoints(problem, config.resolution)?,
    };
    let window = config
        .window
        .or_else(|| Window::around(&midpoint_samples))
        .unwrap_or_else(|| Window::square(1.0));
    let contour_polylines = curve
        .map(|c| {
            contour(c, window.scaled(2.0), config.resolution)
                .into_iter()
                .map(|l| l.into_iter().map(|p| [p[0] / 2.0, p[1] / 2.0]).collect())
                .collect()
        })
        .unwrap_or_default();
    let real_cusps = solve.map(|s| s.real_cusps().into_iter().map(|p| [p[0] / 2.0, p[1] / 2.0]).collect()).unwrap_or_default();
    Ok(RealTrace { midpoint_samples, contour_polylines, real_cusps, window })
}

fn dist_to_segment(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let l2 = d[0] * d[0] + d[1] * d[1];
    let t = if l2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / l2).clamp(0.0, 1.0) };
    numeric_dist(p, [a[0] + t * d[0], a[1] + t * d[1]])
}

impl RealTrace {
    /// Grid cell size of the contour at `resolution`.
    pub fn cell(&self, resolution: usize) -> f64 {
        self.window.width().max(self.window.height()) / resolution as f64
    }

    /// Distance from `p` to the nearest contour segment.
    pub fn distance_to_contour(&self, p: [f64; 2]) -> f64 {
        self.contour_polylines
            .iter()
            .flat_map(|l| l.windows(2))
            .map(|s| dist_to_segment(p, s[0], s[1]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Fraction of in-window midpoint samples within `tol` of the contour.
    pub fn agreement(&self, tol: f64) -> f64 {
        let inside: Vec<[f64; 2]> = self.midpoint_samples.iter().copied().filter(|p| self.window.contains(*p)).collect();
        if inside.is_empty() {
            return 0.0;
        }
        let close = inside.par_iter().filter(|p| self.distance_to_contour(**p) <= tol).count();
        close as f64 / inside.len() as f64
    }

    pub fn to_svg(&self) -> String {
        let w = &self.window;
        let size = 800.0;
        let k = size / w.width().max(w.height());
        let map = |p: [f64; 2]| ((p[0] - w.u[0]) * k, (w.v[1] - p[1]) * k);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.3} {:.3}">"#,
            w.width() * k,
            w.height() * k,
            w.width() * k,
            w.height() * k
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(s, r##"<g fill="#9ab" stroke="none">"##);
        for p in self.midpoint_samples.iter().filter(|p| w.contains(**p)) {
            let (x, y) = map(*p);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="0.8"/>"#);
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r##"<g class="contour" fill="none" stroke="#124" stroke-width="1.2">"##);
        for line in &self.contour_polylines {
            let pts: Vec<String> = line.iter().map(|p| map(*p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r##"<g class="cusps" fill="#d22" stroke="none">"##);
        for c in self.real_cusps.iter().filter(|p| w.contains(**p)) {
            let (x, y) = map(*c);
            let _ = writeln!(s, r#"<circle class="cusp" cx="{x:.3}" cy="{y:.3}" r="5"/>"#);
        }
        let _ = writeln!(s, "</g>\n</svg>");
        s
    }

    pub fn midpoints_csv(&self) -> String {
        points_csv(&self.midpoint_samples)
    }

    /// Contour vertices; polylines separated by blank lines.
    pub fn contour_csv(&self) -> String {
        let mut s = String::from("u,v\n");
        for (i, line) in self.contour_polylines.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            for p in line {
                let _ = writeln!(s, "{},{}", sig15(p[0]), sig15(p[1]));
            }
        }
        s
    }
}

/// 15 significant digits.
fn sig15(x: f64) -> String {
    format!("{:.14e}", x)
}

pub fn points_csv(points: &[[f64; 2]]) -> String {
    let mut s = String::from("u,v\n");
    for p in points {
        let _ = writeln!(s, "{},{}", sig15(p[0]), sig15(p[1]));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eliminate::UV;
    use crate::scene::{figure1_pair, pair_to_quadruple, PlaneCurve};

    fn implicit(text: &str) -> ImplicitCurve {
        ImplicitCurve::from_poly(&Poly::parse_in(text, &UV).unwrap(), Default::default()).unwrap()
    }

    #[test]
    fn unit_circle_contour() {
        let n = 256;
        let lines = contour(&implicit("u^2 + v^2 - 1"), Window::square(2.0), n);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert_eq!(l.first(), l.last(), "closed");
        let dev = l.iter().map(|p| (p[0].hypot(p[1]) - 1.0).abs()).fold(0.0, f64::max);
        assert!(dev < 2.0 / n as f64, "{dev}");
        // positive side (outside) on the left: clockwise traversal
        let area: f64 = l.windows(2).map(|s| s[0][0] * s[1][1] - s[1][0] * s[0][1]).sum::<f64>() / 2.0;
        assert!(area < 0.0 && (area.abs() - std::f64::consts::PI).abs() < 1e-3, "{area}");
    }

    #[test]
    fn line_pair_and_empty() {
        // odd resolution keeps the crossing off the grid nodes
        let lines = contour(&implicit("u*v"), Window::square(1.0), 63);
        assert!(lines.len() >= 2, "{}", lines.len());
        let near_axis = |l: &Polyline| l.iter().all(|p| p[0].abs() < 1e-9 || p[1].abs() < 1e-9);
        assert!(lines.iter().all(near_axis));
        assert!(contour(&implicit("u^2 + v^2 + 1"), Window::square(2.0), 64).is_empty());
    }

    #[test]
    fn no_real_points() {
        let x = PlaneCurve::parse("x^2 + y^2 + 1", XY).unwrap();
        let p = pair_to_quadruple(&x, &x, &figure1_pair()).unwrap();
        assert!(matches!(trace_midpoints(&p, 64), Err(TraceError::EmptyRealLocus(_))));
    }

    #[test]
    fn windows_and_csv() {
        assert_eq!(Window::parse("1,-1, 0,2"), Some(Window::new(-1.0, 1.0, 0.0, 2.0)));
        assert_eq!(Window::parse("1,1,0,2"), None);
        assert_eq!(Window::parse("1,2,3"), None);
        let w = Window::around(&[[0.0, 0.0], [2.0, 1.0]]).unwrap();
        assert!((w.width() - 2.4).abs() < 1e-12 && (w.height() - 1.2).abs() < 1e-12);
        assert_eq!(points_csv(&[[0.1, -2.0]]), "u,v\n1.00000000000000e-1,-2.00000000000000e0\n");
    }

    #[test]
    fn midpoints_of_circle_are_on_contour() {
        let x = PlaneCurve::parse("x^2 + y^2 - 1", XY).unwrap();
        let p = pair_to_quadruple(&x, &x, &figure1_pair()).unwrap();
        let coarse = trace_midpoints(&p, 64).unwrap();
        let fine = trace_midpoints(&p, 128).unwrap();
        assert!(fine.len() > coarse.len());
        // refinement adds points but does not move the curve
        let nearest = |q: [f64; 2]| fine.iter().map(|r| numeric_dist(q, *r)).fold(f64::INFINITY, f64::min);
        let worst = coarse.iter().map(|q| nearest(*q)).fold(0.0, f64::max);
        assert!(worst < 0.1, "{worst}");
    }
}
