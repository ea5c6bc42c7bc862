//! Singular points of `C'`: location by multi-start Newton, node/cusp
//! classification from local Taylor data, and the independent counts on the
//! critical curve (cusp preimages, node preimages, covering degree).

use num_complex::Complex;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use twofloat::TwoFloat;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::eliminate::{sample_critical_points, substitute_fiber, ImplicitCurve, UV};
use crate::invariants::expected_invariants;
use crate::numeric::{self, dedup_points, newton, newton_fn, NewtonOptions, PolySystem, C64};
use crate::poly::{CompiledPoly, Poly, Rational};
use crate::scene::GsdsProblem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SingularError {
    #[error("found {found} singular points, expected {expected}")]
    CountMismatch { expected: usize, found: usize },
    #[error("quadratic part vanishes at the point (multiplicity at least 3)")]
    VanishingQuadratic,
    #[error("point is within {0:e} of the discriminant curve")]
    OnCurve(f64),
    #[error("node has {0} preimages on the critical curve, expected 2")]
    Preimages(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    Node,
    Cusp,
    Other,
}

/// Lowest-order Taylor data at a singular point: the quadratic part
/// `q[0] du^2 + q[1] du dv + q[2] dv^2` and the cubic part likewise.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalData {
    pub quadratic: [C64; 3],
    pub cubic: [C64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    pub location: [C64; 2],
    pub kind: Kind,
    pub local: LocalData,
    /// Max relative residual of `P`, `P_u`, `P_v` (unit max-coefficient scale).
    pub residual: f64,
    pub is_real: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveConfig {
    pub tol_dedup: f64,
    pub tol_residual: f64,
    pub tol_classify: f64,
    /// Start budget per expected root.
    pub starts_factor: usize,
    /// Number of escalations after the first pass; each quadruples the
    /// budget and the start radius.
    pub escalations: u32,
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { tol_dedup: 1e-8, tol_residual: 1e-8, tol_classify: 1e-6, starts_factor: 50, escalations: 2, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub expected: usize,
    pub starts_used: usize,
    pub candidates: usize,
    pub dedup_merges: usize,
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub worst_residual: f64,
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub start_radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub points: Vec<SingularPoint>,
    pub n_nodes: usize,
    pub n_cusps: usize,
    pub n_other: usize,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub fn to_json(&self) -> Value {
        let pts: Vec<Value> = self
            .points
            .iter()
            .map(|p| {
                json!({
                    "u": crate::json::complex(p.location[0]),
                    "v": crate::json::complex(p.location[1]),
                    "kind": p.kind,
                    "residual": crate::json::float(p.residual),
                    "is_real": p.is_real,
                })
            })
            .collect();
        json!({
            "schema": crate::json::SCHEMA,
            "points": pts,
            "n_nodes": self.n_nodes,
            "n_cusps": self.n_cusps,
            "n_other": self.n_other,
            "diagnostics": self.diagnostics,
        })
    }

    pub fn real_cusps(&self) -> Vec<[f64; 2]> {
        self.points
            .iter()
            .filter(|p| p.kind == Kind::Cusp && p.is_real)
            .map(|p| [p.location[0].re, p.location[1].re])
            .collect()
    }
}

/// Exact derivatives of `P` up to order three, compiled on `P`'s scale.
struct Jet {
    p: CompiledPoly,
    grad: [CompiledPoly; 2],
    hess: [CompiledPoly; 3],
    third: [CompiledPoly; 4],
    exact_grad: [Poly; 2],
    /// `P_u, P_v, P_uu, P_uv, P_vv, P` and the third derivatives in
    /// double-double, for the final polish and the local data.
    dd: Vec<DdPoly>,
    dd_degree: usize,
}

type Cdd = Complex<TwoFloat>;

/// A polynomial in `(u, v)` with double-double coefficients.
struct DdPoly {
    terms: Vec<(usize, usize, TwoFloat)>,
}

impl DdPoly {
    fn new(p: &Poly, scale: &Rational) -> DdPoly {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let q = c / scale;
                let hi = q.to_f64().unwrap_or(f64::NAN);
                let lo = Rational::from_float(hi).map_or(0.0, |h| (&q - h).to_f64().unwrap_or(0.0));
                (m[0] as usize, m[1] as usize, TwoFloat::new_add(hi, lo))
            })
            .collect();
        DdPoly { terms }
    }

    fn eval(&self, pu: &[Cdd], pv: &[Cdd]) -> Cdd {
        let zero = Cdd::new(TwoFloat::from(0.0), TwoFloat::from(0.0));
        self.terms.iter().fold(zero, |acc, &(i, j, c)| acc + pu[i] * pv[j] * c)
    }
}

fn dd_powers(z: Cdd, n: usize) -> Vec<Cdd> {
    let mut out = vec![Cdd::new(TwoFloat::from(1.0), TwoFloat::from(0.0))];
    for k in 0..n {
        out.push(out[k] * z);
    }
    out
}

fn to_dd(z: C64) -> Cdd {
    Cdd::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

fn from_dd(z: Cdd) -> C64 {
    C64::new(f64::from(z.re), f64::from(z.im))
}

impl Jet {
    fn new(p: &Poly) -> Jet {
        let scale = p.terms().map(|(_, c)| num_traits::Signed::abs(c)).max().unwrap_or_else(|| Rational::from_integer(1.into()));
        let d = |q: &Poly, v: &str| q.partial_derivative(v).expect("u, v present");
        let c = |q: &Poly| CompiledPoly::with_scale(q, &scale);
        let pu = d(p, "u");
        let pv = d(p, "v");
        let puu = d(&pu, "u");
        let puv = d(&pu, "v");
        let pvv = d(&pv, "v");
        let third = [d(&puu, "u"), d(&puu, "v"), d(&puv, "v"), d(&pvv, "v")];
        let dd: Vec<DdPoly> = [&pu, &pv, &puu, &puv, &pvv, p].into_iter().chain(&third).map(|q| DdPoly::new(q, &scale)).collect();
        let dd_degree = dd.iter().flat_map(|q| q.terms.iter()).map(|t| t.0.max(t.1)).max().unwrap_or(0);
        Jet {
            p: c(p),
            grad: [c(&pu), c(&pv)],
            hess: [c(&puu), c(&puv), c(&pvv)],
            third: third.each_ref().map(c),
            exact_grad: [pu, pv],
            dd,
            dd_degree,
        }
    }

    /// Gauss-Newton on the gradient, plus the Hessian determinant when
    /// `cusp`, with residuals in double-double and an f64 Jacobian. Plain
    /// f64 evaluation of a gradient of high degree leaves rounding noise
    /// that only pins a cusp down to about the square root of that noise.
    /// `None` unless the double-double residuals of `P` and its gradient
    /// reach far below f64 rounding; this separates singular points from
    /// nearby critical points of `P` with a tiny critical value.
    fn polish(&self, x: &[C64], cusp: bool) -> Option<[Cdd; 2]> {
        let mut xd = [to_dd(x[0]), to_dd(x[1])];
        for round in 0..=10 {
            let v = self.eval_dd(&xd);
            let h: Vec<C64> = v[2..5].iter().map(|&z| from_dd(z)).collect();
            let xf = [from_dd(xd[0]), from_dd(xd[1])];
            let small = |z: Cdd, e: &CompiledPoly| {
                let (re, im) = (f64::from(z.re.abs()), f64::from(z.im.abs()));
                re.max(im) <= 1e-24 * e.abs_sum(&xf)
            };
            if small(v[0], &self.grad[0]) && small(v[1], &self.grad[1]) {
                return small(v[5], &self.p).then_some(xd);
            }
            if round == 10 {
                break;
            }
            let mut rows = vec![(v[0], vec![h[0], h[1]]), (v[1], vec![h[1], h[2]])];
            if cusp {
                let t: Vec<C64> = v[6..].iter().map(|&z| from_dd(z)).collect();
                let det = v[2] * v[4] - v[3] * v[3];
                let du = t[0] * h[2] + h[0] * t[2] - h[1] * t[1] * 2.0;
                let dv = t[1] * h[2] + h[0] * t[3] - h[1] * t[2] * 2.0;
                rows.push((det, vec![du, dv]));
            }
            let (mut j, mut f) = (Vec::new(), Vec::new());
            for (r, g) in rows {
                let s = norm(&g);
                if s > 0.0 {
                    j.push(g.iter().map(|z| z / s).collect());
                    f.push(from_dd(r) / s);
                }
            }
            let dx = numeric::solve_least_squares(&j, &f)?;
            if !dx.iter().all(|z| z.re.is_finite() && z.im.is_finite()) || norm(&dx) > 1e-3 * (1.0 + norm(&xf)) {
                return None;
            }
            xd = [xd[0] - to_dd(dx[0]), xd[1] - to_dd(dx[1])];
        }
        None
    }

    fn eval_dd(&self, x: &[Cdd; 2]) -> Vec<Cdd> {
        let (pu, pv) = (dd_powers(x[0], self.dd_degree), dd_powers(x[1], self.dd_degree));
        self.dd.iter().map(|q| q.eval(&pu, &pv)).collect()
    }

    /// Polished location, trying the cusp system first when the Hessian is
    /// nearly singular.
    fn refine(&self, x: &[C64]) -> Option<[Cdd; 2]> {
        let cusp = self.hessian_conditioning(x) < 1e-3;
        self.polish(x, cusp).or_else(|| self.polish(x, !cusp))
    }

    /// `|det H| / |H|^2`: 0 for a rank-one Hessian, order 1 at a node.
    fn hessian_conditioning(&self, x: &[C64]) -> f64 {
        let h: Vec<C64> = self.hess.iter().map(|e| e.eval(x)).collect();
        let det = h[0] * h[2] - h[1] * h[1];
        let n2 = h.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if n2 == 0.0 {
            0.0
        } else {
            det.norm() / n2
        }
    }

    /// Taylor data evaluated in double-double; near clusters of singular
    /// points the Hessian is many orders below its term scale.
    fn local_dd(&self, x: &[Cdd; 2]) -> LocalData {
        let v: Vec<C64> = self.eval_dd(x).into_iter().map(from_dd).collect();
        let (h, t) = (&v[2..5], &v[6..]);
        LocalData {
            quadratic: [h[0] * 0.5, h[1], h[2] * 0.5],
            cubic: [t[0] / 6.0, t[1] * 0.5, t[2] * 0.5, t[3] / 6.0],
        }
    }

    fn residual(&self, x: &[C64]) -> f64 {
        self.p
            .relative_residual(x)
            .max(self.grad[0].relative_residual(x))
            .max(self.grad[1].relative_residual(x))
    }

    fn local(&self, x: &[C64]) -> LocalData {
        let h: Vec<C64> = self.hess.iter().map(|e| e.eval(x)).collect();
        let t: Vec<C64> = self.third.iter().map(|e| e.eval(x)).collect();
        LocalData {
            quadratic: [h[0] * 0.5, h[1], h[2] * 0.5],
            cubic: [t[0] / 6.0, t[1] * 0.5, t[2] * 0.5, t[3] / 6.0],
        }
    }

    /// Scale for deciding that second derivatives vanish.
    fn hess_scale(&self, x: &[C64]) -> f64 {
        self.hess.iter().map(|e| e.abs_sum(x)).fold(0.0, f64::max).max(1e-300)
    }
}

fn norm(v: &[C64]) -> f64 {
    numeric::norm(v)
}

/// Node/cusp decision from local Taylor data.
pub fn classify_data(local: &LocalData, tol: f64) -> Kind {
    let [a, b, c] = local.quadratic;
    let q2 = norm(&local.quadratic);
    let disc = b * b - a * c * 4.0;
    if disc.norm() > tol * q2 * q2 {
        return Kind::Node;
    }
    // rank one: q2 = (alpha du + beta dv)^2 up to scale; kernel direction
    let k1 = [b, -a * 2.0];
    let k2 = [c * 2.0, -b];
    let k = if norm(&k1) >= norm(&k2) { k1 } else { k2 };
    let kn = norm(&k);
    if kn == 0.0 {
        return Kind::Other;
    }
    let (s, t) = (k[0] / kn, k[1] / kn);
    let [c0, c1, c2, c3] = local.cubic;
    let value = c0 * s * s * s + c1 * s * s * t + c2 * s * t * t + c3 * t * t * t;
    let c3n = norm(&local.cubic);
    if value.norm() > tol * q2.max(c3n) {
        Kind::Cusp
    } else {
        Kind::Other
    }
}

/// Classifies a singular point of `{p = 0}` from exact derivatives of `p`.
pub fn classify_local(p: &Poly, point: [C64; 2]) -> Result<Kind, SingularError> {
    classify_local_tol(p, point, SolveConfig::default().tol_classify)
}

pub fn classify_local_tol(p: &Poly, point: [C64; 2], tol: f64) -> Result<Kind, SingularError> {
    let p = p.align_to_names(&UV).expect("polynomial in u, v");
    let jet = Jet::new(&p);
    let local = jet.local(&point);
    if norm(&local.quadratic) <= 1e-10 * jet.hess_scale(&point) {
        return Err(SingularError::VanishingQuadratic);
    }
    Ok(classify_data(&local, tol))
}

fn is_real(x: &[C64]) -> bool {
    x.iter().all(|z| z.im.abs() < 1e-8 * (1.0 + z.norm()))
}

fn random_start<R: Rng>(rng: &mut R, dim: usize, radius: f64) -> Vec<C64> {
    // log-uniform modulus so both small and large roots get starts
    (0..dim)
        .map(|_| {
            let r = (rng.gen_range(0.0..1.0f64) * (radius.max(1.0) * 2.0).ln()).exp() / 2.0;
            C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

struct Solver<'a> {
    jet: &'a Jet,
    grad_sys: PolySystem,
    tol: f64,
}

impl<'a> Solver<'a> {
    fn new(jet: &'a Jet, tol: f64) -> Solver<'a> {
        let grad_sys = PolySystem::new(&jet.exact_grad);
        Solver { jet, grad_sys, tol }
    }

    /// Newton on the gradient, then a high-precision polish; near-cusps
    /// (nearly singular Hessian, where the gradient root is multiple and
    /// Newton converges only linearly) add the Hessian determinant.
    fn run(&self, start: &[C64]) -> Option<Vec<C64>> {
        let opts = NewtonOptions::default();
        let x = newton(&self.grad_sys, start, &opts)?;
        if !x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return None;
        }
        if self.jet.p.relative_residual(&x) > 1e-4 {
            return None;
        }
        let x = self.jet.refine(&x)?;
        let x = vec![from_dd(x[0]), from_dd(x[1])];
        (self.jet.residual(&x) <= self.tol).then_some(x)
    }
}

/// All affine singular points of the curve, counted against the closed form
/// for `(d1, d2)` when given.
pub fn solve_singular_points(curve: &ImplicitCurve, config: &SolveConfig, degrees: Option<(u32, u32)>, seeds: &[[C64; 2]]) -> Result<SolveReport, SingularError> {
    let report = solve_unchecked(&curve.p, config, degrees, seeds);
    if degrees.is_some() && report.points.len() != report.diagnostics.expected {
        return Err(SingularError::CountMismatch { expected: report.diagnostics.expected, found: report.points.len() });
    }
    Ok(report)
}

/// Same search without the final count assertion; `expected` is 0 when no
/// degrees are given, and the search then runs the base budget only.
pub fn solve_unchecked(p: &Poly, config: &SolveConfig, degrees: Option<(u32, u32)>, seeds: &[[C64; 2]]) -> SolveReport {
    let p = p.align_to_names(&UV).expect("polynomial in u, v");
    let jet = Jet::new(&p);
    let solver = Solver::new(&jet, config.tol_residual);
    let expected = degrees
        .and_then(|(a, b)| expected_invariants(a, b).ok())
        .map(|e| (e.cusps + e.nodes) as usize)
        .unwrap_or(0);
    let mut radius = seeds.iter().map(|s| norm(s)).fold(2.0, f64::max) * 4.0;
    let per_batch = 8 * expected.max(4);
    let mut budget = config.starts_factor * expected.max(4);
    let mut found: Vec<Vec<C64>> = Vec::new();
    let mut merges = 0;
    let mut candidates = 0;
    let mut used = 0usize;
    let mut seed_starts: Vec<Vec<C64>> = seeds.iter().map(|s| s.to_vec()).collect();
    let mut escalations = 0;
    let mut stable = 0;
    loop {
        let mut starts: Vec<Vec<C64>> = std::mem::take(&mut seed_starts);
        let room = per_batch.min(budget.saturating_sub(used));
        starts.extend((0..room).map(|i| {
            let mut rng = numeric::rng_for(config.seed, (used + i) as u64);
            random_start(&mut rng, 2, radius)
        }));
        used += room;
        let batch: Vec<Vec<C64>> = starts.par_iter().filter_map(|s| solver.run(s)).collect();
        candidates += batch.len();
        let before = found.len();
        found.extend(batch);
        let (kept, m) = dedup_points(std::mem::take(&mut found), config.tol_dedup);
        merges += m;
        found = kept;
        if expected > 0 && found.len() == expected {
            stable += (found.len() == before) as usize;
            if stable >= 1 || used >= budget {
                break;
            }
        }
        if used >= budget {
            if expected == 0 || found.len() >= expected || escalations >= config.escalations {
                break;
            }
            escalations += 1;
            budget *= 4;
            radius *= 4.0;
        }
    }
    let mut points = Vec::with_capacity(found.len());
    for x in &found {
        let local = jet.local_dd(&jet.refine(x).unwrap_or([to_dd(x[0]), to_dd(x[1])]));
        let kind = if norm(&local.quadratic) <= 1e-20 * jet.hess_scale(x) {
            Kind::Other
        } else {
            classify_data(&local, config.tol_classify)
        };
        points.push(SingularPoint { location: [x[0], x[1]], kind, local, residual: jet.residual(x), is_real: is_real(x) });
    }
    let count = |k: Kind| points.iter().filter(|p| p.kind == k).count();
    let (n_nodes, n_cusps, n_other) = (count(Kind::Node), count(Kind::Cusp), count(Kind::Other));
    let worst_residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
    SolveReport {
        points,
        n_nodes,
        n_cusps,
        n_other,
        diagnostics: Diagnostics { expected, starts_used: used, candidates, dedup_merges: merges, worst_residual, start_radius: radius },
    }
}

/// Whether the multiset of locations is closed under complex conjugation.
pub fn conjugation_symmetric(points: &[SingularPoint], tol: f64) -> bool {
    points.iter().all(|p| {
        let c = [p.location[0].conj(), p.location[1].conj()];
        points.iter().any(|q| q.kind == p.kind && numeric::dist(&q.location, &c) <= tol * (1.0 + norm(&c)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CuspConfig {
    pub starts_factor: usize,
    /// Extra batches the count must survive once it reaches the closed form.
    pub stable_batches: usize,
    pub tol_dedup: f64,
    pub seed: u64,
}

impl Default for CuspConfig {
    fn default() -> Self {
        CuspConfig { starts_factor: 50, stable_batches: 1, tol_dedup: 1e-8, seed: 0 }
    }
}

/// Distinct solutions of `f = g = h = s = 0` found by multi-start Newton.
pub fn cusp_preimages(problem: &GsdsProblem, config: &CuspConfig) -> Vec<[C64; 4]> {
    let (d1, d2) = problem.degrees();
    let expected = expected_invariants(d1, d2).map(|e| e.cusps as usize).unwrap_or(0);
    let sys = PolySystem::new(&[problem.f().clone(), problem.g().clone(), problem.h.clone(), problem.s.clone()]);
    let samples = sample_critical_points(problem, 16, config.seed ^ 0x5eed);
    let radius = samples.iter().map(|s| norm(s)).fold(2.0, f64::max) * 2.0;
    let opts = NewtonOptions::default();
    let per_batch = 5 * expected.max(4);
    let budget = config.starts_factor * expected.max(4) * 5;
    let mut found: Vec<Vec<C64>> = Vec::new();
    let mut used = 0;
    let mut stable = 0;
    while used < budget {
        let batch: Vec<Vec<C64>> = (used..used + per_batch)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = numeric::rng_for(config.seed, (1u64 << 40) | i as u64);
                let s = random_start(&mut rng, 4, radius);
                newton(&sys, &s, &opts)
            })
            .filter(|x| x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) && sys.residual(x) < 1e-10)
            .collect();
        used += per_batch;
        let before = found.len();
        found.extend(batch);
        found = dedup_points(std::mem::take(&mut found), config.tol_dedup).0;
        if found.len() == expected && before == expected {
            stable += 1;
            if stable >= config.stable_batches {
                break;
            }
        }
    }
    found.into_iter().map(|p| [p[0], p[1], p[2], p[3]]).collect()
}

/// Number of cusps of `C'` counted on the critical curve.
pub fn count_cusps_direct(problem: &GsdsProblem, config: &CuspConfig) -> usize {
    cusp_preimages(problem, config).len()
}

/// Evaluates the fiber system at fixed `(u, v)` with `(z, w)` free.
struct Fiber {
    sys: PolySystem,
    uv: [C64; 2],
}

impl Fiber {
    fn new(problem: &GsdsProblem, uv: [C64; 2], with_h: bool) -> Fiber {
        let (f1, f2, f3) = substitute_fiber(problem);
        let polys = if with_h { vec![f1, f2, f3] } else { vec![f1, f2] };
        Fiber { sys: PolySystem::new(&polys), uv }
    }

    fn point(&self, zw: &[C64]) -> [C64; 4] {
        [zw[0], zw[1], self.uv[0], self.uv[1]]
    }

    fn eval(&self, zw: &[C64]) -> (Vec<C64>, Vec<Vec<C64>>) {
        let x = self.point(zw);
        let f = self.sys.eval(&x);
        let j = self.sys.jacobian(&x).into_iter().map(|row| row[..2].to_vec()).collect();
        (f, j)
    }

    fn residual(&self, zw: &[C64]) -> f64 {
        self.sys.residual(&self.point(zw))
    }

    /// Distinct solutions in `(z, w)` from `starts` random starts.
    fn solve(&self, seed: u64, starts: usize, radius: f64, extra: &[Vec<C64>]) -> Vec<Vec<C64>> {
        let opts = NewtonOptions::default();
        let mut all: Vec<Vec<C64>> = extra.to_vec();
        all.extend((0..starts).map(|i| {
            let mut rng = numeric::rng_for(seed, (1u64 << 48) | i as u64);
            random_start(&mut rng, 2, radius)
        }));
        let sols: Vec<Vec<C64>> = all
            .par_iter()
            .filter_map(|s| newton_fn(|x| self.eval(x), s, &opts))
            .filter(|x| x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) && self.residual(x) < 1e-9)
            .collect();
        dedup_points(sols, 1e-6).0
    }
}

/// Distinct points of `C` over a location of `C'`.
pub fn node_preimages(problem: &GsdsProblem, node: &SingularPoint, seed: u64) -> Result<usize, SingularError> {
    let count = preimage_count(problem, node.location, seed);
    if node.kind == Kind::Node && count != 2 {
        return Err(SingularError::Preimages(count));
    }
    Ok(count)
}

/// Points of `C` over `uv`: the fiber of `(f, g)` is solved first and each
/// fiber point then polished on the overdetermined system with `h`.
pub fn preimage_count(problem: &GsdsProblem, uv: [C64; 2], seed: u64) -> usize {
    let (d1, d2) = problem.degrees();
    let plain = Fiber::new(problem, uv, false);
    let full = Fiber::new(problem, uv, true);
    let radius = 4.0 * (1.0 + norm(&uv));
    let fiber = plain.solve(seed, 60 * (d1 * d2) as usize, radius, &[]);
    full.solve(seed ^ 0xfeed, 0, radius, &fiber).len()
}

/// Number of points of `X x Y` over `uv`, which must lie off `C'`.
pub fn fiber_count(problem: &GsdsProblem, curve: &ImplicitCurve, uv: [C64; 2], seed: u64) -> Result<usize, SingularError> {
    let r = CompiledPoly::normalized(&curve.p).relative_residual(&uv);
    if r <= 1e-3 {
        return Err(SingularError::OnCurve(r));
    }
    let (d1, d2) = problem.degrees();
    let plain = Fiber::new(problem, uv, false);
    let radius = 4.0 * (1.0 + norm(&uv));
    Ok(plain.solve(seed, 60 * (d1 * d2) as usize, radius, &[]).len())
}
