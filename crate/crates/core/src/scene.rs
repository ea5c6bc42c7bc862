//! Problem instances: a pair of plane curves, a projection quadruple in
//! generic position for them, and the critical-system polynomials `h`, `s`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{poly_roots, C64};
use crate::poly::{gcd, rat, resultant_lenient, univariate, CompiledPoly, Poly, PolyError, Rational};

pub const XY: [&str; 2] = ["x", "y"];
pub const ZW: [&str; 2] = ["z", "w"];
pub const XYZW: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SceneError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("curve must have degree at least 2, got {0}")]
    Degree(u32),
    #[error("curve polynomial is zero")]
    ZeroCurve,
    #[error("variable collision: {0:?}")]
    VariableCollision(Vec<String>),
    #[error("curve checks fail: {}", failed_names(.0))]
    CurveChecks(Vec<CheckResult>),
    #[error("retry limit exhausted after {attempts} quadruples; last failures: {}", failed_names(.last))]
    RetryLimit { attempts: u32, last: Vec<CheckResult> },
    #[error("affine map is not invertible")]
    SingularMap,
    #[error("instance not generic: {}", failed_names(.0))]
    NotGeneric(Vec<CheckResult>),
}

fn failed_names(checks: &[CheckResult]) -> String {
    let v: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed && c.gating)
        .map(|c| format!("{:?}({})", c.check, c.subject))
        .collect();
    v.join(", ")
}

pub type Result<T> = std::result::Result<T, SceneError>;

/// A plane curve `{poly = 0}` of degree at least 2 in two named variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    poly: Poly,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(poly: &Poly, vars: [&str; 2]) -> Result<PlaneCurve> {
        let p = poly.align_to_names(&vars).map_err(|e| match e {
            PolyError::UnknownVariable(v) => SceneError::VariableCollision(vec![v]),
            e => e.into(),
        })?;
        let degree = p.total_degree().ok_or(SceneError::ZeroCurve)?;
        if degree < 2 {
            return Err(SceneError::Degree(degree));
        }
        Ok(PlaneCurve { poly: p, degree })
    }

    /// Parses text in the given two variables.
    pub fn parse(text: &str, vars: [&str; 2]) -> Result<PlaneCurve> {
        PlaneCurve::new(&Poly::parse_in(text, &vars)?, vars)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The same curve with its variables renamed positionally.
    pub fn with_vars(&self, vars: [&str; 2]) -> PlaneCurve {
        PlaneCurve { poly: self.poly.rename(&vars), degree: self.degree }
    }
}

/// Coefficients of the projection `(x + a z + b w, y + c z + d w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quadruple {
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub b: Rational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub c: Rational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub d: Rational,
}

impl Quadruple {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Quadruple {
        Quadruple { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Quadruple {
        Quadruple::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn identity() -> Quadruple {
        Quadruple::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Draws each entry as `±num/den` with `num, den` uniform in `[1, height]`.
    pub fn random<R: Rng>(rng: &mut R, height: u32) -> Quadruple {
        let mut entry = || {
            let neg = rng.gen::<bool>();
            let num = rng.gen_range(1..=height as i64);
            let den = rng.gen_range(1..=height as i64);
            let r = Rational::new(num.into(), den.into());
            if neg {
                -r
            } else {
                r
            }
        };
        let a = entry();
        let b = entry();
        let c = entry();
        let d = entry();
        Quadruple { a, b, c, d }
    }
}

/// `p -> m p + t` on the plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffineMap {
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: [[Rational; 2]; 2],
    #[serde(serialize_with = "ser_vector")]
    pub translation: [Rational; 2],
}

fn ser_matrix<S: serde::Serializer>(m: &[[Rational; 2]; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    rows.serialize(s)
}

fn ser_vector<S: serde::Serializer>(t: &[Rational; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = t.iter().map(|c| c.to_string()).collect();
    v.serialize(s)
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap::linear([[rat(1), rat(0)], [rat(0), rat(1)]])
    }

    pub fn linear(matrix: [[Rational; 2]; 2]) -> AffineMap {
        AffineMap { matrix, translation: [rat(0), rat(0)] }
    }

    /// Six numbers `m11 m12 t1 m21 m22 t2`: the rows of the augmented 2x3 matrix.
    pub fn from_row_major(v: &[Rational; 6]) -> AffineMap {
        AffineMap {
            matrix: [[v[0].clone(), v[1].clone()], [v[3].clone(), v[4].clone()]],
            translation: [v[2].clone(), v[5].clone()],
        }
    }

    pub fn det(&self) -> Rational {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// Coordinates of the preimage `m^-1 (q - t)` as polynomials in `vars`.
    fn inverse_images(&self, vars: [&str; 2]) -> Result<[Poly; 2]> {
        let det = self.det();
        if det.is_zero() {
            return Err(SceneError::SingularMap);
        }
        let m = &self.matrix;
        let inv = [
            [&m[1][1] / &det, -&m[0][1] / &det],
            [-&m[1][0] / &det, &m[0][0] / &det],
        ];
        let q0 = Poly::var(&vars, vars[0])? - Poly::constant(&vars, self.translation[0].clone());
        let q1 = Poly::var(&vars, vars[1])? - Poly::constant(&vars, self.translation[1].clone());
        Ok([
            &q0.scale(&inv[0][0]) + &q1.scale(&inv[0][1]),
            &q0.scale(&inv[1][0]) + &q1.scale(&inv[1][1]),
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffinePair {
    pub g: AffineMap,
    pub h: AffineMap,
}

/// The Figure-1 perturbation: `G = id`, `H(x, y) = (1.1x + 0.1y, -0.2x + 0.9y)`.
pub fn figure1_pair() -> AffinePair {
    let r = |n: i64| Rational::new(n.into(), 10.into());
    AffinePair { g: AffineMap::identity(), h: AffineMap::linear([[r(11), r(1)], [r(-2), r(9)]]) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Check {
    /// Smooth affine curve.
    G1,
    /// Distinct points at infinity.
    G2,
    /// Both partials of the homogenization nonzero at each point at infinity.
    G3,
    /// The pairing constants at pairs of points at infinity are nonzero.
    G4,
    /// `ad - bc != 0`.
    G5,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    /// `"X"`, `"Y"` or `"pair"`.
    pub subject: String,
    pub passed: bool,
    /// Whether a failure rejects the instance.
    pub gating: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(check: Check, subject: &str, passed: bool, detail: String) -> CheckResult {
        CheckResult { check, subject: subject.to_string(), passed, gating: true, detail }
    }
}

/// `b f_x g_z - a f_x g_w + d f_y g_z - c f_y g_w` over `(x, y, z, w)`.
pub fn build_h(f: &Poly, g: &Poly, quad: &Quadruple) -> Result<Poly> {
    let (f, g) = split_vars(f, g)?;
    let fx = f.partial_derivative("x")?;
    let fy = f.partial_derivative("y")?;
    let gz = g.partial_derivative("z")?;
    let gw = g.partial_derivative("w")?;
    let left = &gz.scale(&quad.b) - &gw.scale(&quad.a);
    let right = &gz.scale(&quad.d) - &gw.scale(&quad.c);
    Ok(&(&fx * &left) + &(&fy * &right))
}

/// `h_x (a g_w - b g_z) + h_y (c g_w - d g_z) - h_z g_w + h_w g_z`.
pub fn build_s(f: &Poly, g: &Poly, h: &Poly, quad: &Quadruple) -> Result<Poly> {
    let (_, g) = split_vars(f, g)?;
    let h = h.align_to_names(&XYZW).map_err(|_| SceneError::VariableCollision(h.vars().to_vec()))?;
    let gz = g.partial_derivative("z")?;
    let gw = g.partial_derivative("w")?;
    let hx = h.partial_derivative("x")?;
    let hy = h.partial_derivative("y")?;
    let hz = h.partial_derivative("z")?;
    let hw = h.partial_derivative("w")?;
    let t1 = &hx * &(&gw.scale(&quad.a) - &gz.scale(&quad.b));
    let t2 = &hy * &(&gw.scale(&quad.c) - &gz.scale(&quad.d));
    Ok(&(&(&t1 + &t2) - &(&hz * &gw)) + &(&hw * &gz))
}

/// Aligns `f` to `(x, y, z, w)` using only `x, y`, and `g` using only `z, w`.
fn split_vars(f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    let mut bad = Vec::new();
    for &i in &f.used_vars() {
        if !XY.contains(&f.vars()[i].as_str()) {
            bad.push(f.vars()[i].clone());
        }
    }
    for &i in &g.used_vars() {
        if !ZW.contains(&g.vars()[i].as_str()) {
            bad.push(g.vars()[i].clone());
        }
    }
    if !bad.is_empty() {
        return Err(SceneError::VariableCollision(bad));
    }
    let f = f.align_to_names(&XYZW).expect("checked variables");
    let g = g.align_to_names(&XYZW).expect("checked variables");
    Ok((f, g))
}

fn dense_in(p: &Poly, i: usize) -> Vec<Rational> {
    p.coeffs_idx(i).into_iter().map(|c| c.constant_value().expect("univariate")).collect()
}

/// Smallest `k` in `0, 1, -1, 2, ...` with `form(1, k) != 0`.
fn shear_parameter(form: &Poly) -> i64 {
    (0i64..)
        .map(|j| if j % 2 == 0 { -(j / 2) } else { j / 2 + 1 })
        .find(|&k| !form.eval_rational_slice(&[rat(1), rat(k)]).is_zero())
        .expect("nonzero binary form has a non-root")
}

/// Restricts a binary form in positions `(i, i+1)` of its variable list to
/// the affine chart `(p, k p + 1)`, where `p` is `target[pos]`.
fn chart_images(target: &[&str], pos: usize, k: i64) -> [Poly; 2] {
    let p = Poly::var(target, target[pos]).expect("chart variable");
    let kp1 = &p.scale(&rat(k)) + &Poly::constant(target, rat(1));
    [p, kp1]
}

/// Whether two binary forms in `(x, y)` share a projective root. `t` must be
/// nonzero.
fn share_projective_root(t: &Poly, other: &Poly) -> bool {
    if other.is_zero() {
        return true;
    }
    let k = shear_parameter(t);
    let images = chart_images(&["p"], 0, k);
    let t1 = t.compose(&images);
    let o1 = other.compose(&images);
    match resultant_lenient(&t1, &o1, "p") {
        Ok(r) => r.is_zero(),
        Err(_) => true,
    }
}

/// Singular affine points of `{f = 0}`, located by resultants in a sheared
/// frame and confirmed numerically. Returns the points found.
fn singular_points(f: &Poly) -> Vec<[C64; 2]> {
    let top = f.top_form().expect("nonzero curve");
    // shear x -> x + k y so that the y^d coefficient is the nonzero constant top(k, 1)
    let k = (0i64..)
        .map(|j| if j % 2 == 0 { -(j / 2) } else { j / 2 + 1 })
        .find(|&k| !top.eval_rational_slice(&[rat(k), rat(1)]).is_zero())
        .expect("nonzero top form");
    let x = Poly::var(&XY, "x").unwrap();
    let y = Poly::var(&XY, "y").unwrap();
    let sheared = f.compose(&[&x + &y.scale(&rat(k)), y]);
    let fx = sheared.derivative_idx(0);
    let fy = sheared.derivative_idx(1);
    let resultant_or_zero = |q: &Poly| resultant_lenient(&sheared, q, "y").unwrap_or_else(|_| sheared.zero_like());
    let r1 = resultant_or_zero(&fx);
    let r2 = resultant_or_zero(&fy);
    let common = gcd(&r1, &r2);
    if common.is_zero() {
        // a repeated component: singular along a whole curve
        return vec![[C64::new(f64::NAN, 0.0); 2]];
    }
    if common.is_constant() {
        return Vec::new();
    }
    let sqf = univariate::squarefree_decomposition(&dense_in(&common, 0))
        .into_iter()
        .fold(vec![rat(1)], |acc, part| univariate::mul(&acc, &part));
    let coeffs: Vec<C64> = univariate::to_f64_normalized(&sqf).into_iter().map(|c| C64::new(c, 0.0)).collect();
    let cf = CompiledPoly::normalized(&sheared);
    let cx = CompiledPoly::normalized(&fx);
    let cy = CompiledPoly::normalized(&fy);
    let ycoeffs: Vec<CompiledPoly> = sheared.coeffs_idx(1).iter().map(CompiledPoly::new).collect();
    let mut out = Vec::new();
    for x0 in poly_roots(&coeffs) {
        let c: Vec<C64> = ycoeffs.iter().map(|p| p.eval(&[x0, C64::new(0.0, 0.0)])).collect();
        for y0 in poly_roots(&c) {
            let pt = [x0, y0];
            let tol = 1e-6;
            if cf.relative_residual(&pt) < tol && cx.relative_residual(&pt) < tol && cy.relative_residual(&pt) < tol {
                out.push([x0 + y0 * k as f64, y0]);
            }
        }
    }
    out
}

fn check_g1(curve: &PlaneCurve, subject: &str) -> CheckResult {
    let f = curve.poly().rename(&XY);
    let pts = singular_points(&f);
    let detail = if pts.is_empty() {
        "no common zero of f, f_x, f_y".to_string()
    } else {
        format!("{} singular point(s), e.g. ({:.6}, {:.6})", pts.len(), pts[0][0], pts[0][1])
    };
    CheckResult::new(Check::G1, subject, pts.is_empty(), detail)
}

fn check_g2(curve: &PlaneCurve, subject: &str) -> CheckResult {
    let t = curve.poly().rename(&XY).top_form().expect("nonzero");
    let tx = t.derivative_idx(0);
    let ty = t.derivative_idx(1);
    // by Euler's relation a common root of both partials is a repeated root of t
    let repeated = tx.is_zero() || share_projective_root(&tx, &ty);
    let detail = if repeated {
        "top form has a repeated root".to_string()
    } else {
        format!("{} distinct points at infinity", curve.degree())
    };
    CheckResult::new(Check::G2, subject, !repeated, detail)
}

fn check_g3(curve: &PlaneCurve, subject: &str) -> CheckResult {
    let t = curve.poly().rename(&XY).top_form().expect("nonzero");
    let bad_x = share_projective_root(&t, &t.derivative_idx(0));
    let bad_y = share_projective_root(&t, &t.derivative_idx(1));
    let detail = match (bad_x, bad_y) {
        (false, false) => "both partials nonzero at infinity".to_string(),
        (true, false) => "first partial vanishes at a point at infinity".to_string(),
        (false, true) => "second partial vanishes at a point at infinity".to_string(),
        (true, true) => "both partials vanish at points at infinity".to_string(),
    };
    CheckResult::new(Check::G3, subject, !(bad_x || bad_y), detail)
}

fn check_g4(x: &PlaneCurve, y: &PlaneCurve, quad: &Quadruple) -> CheckResult {
    let tf = x.poly().rename(&XY).top_form().expect("nonzero");
    let tg = y.poly().rename(&ZW).top_form().expect("nonzero");
    // the pairing form is the h-construction applied to the top forms
    let pairing = build_h(&tf, &tg, quad).expect("variables are split");
    let kf = shear_parameter(&tf);
    let kg = shear_parameter(&tg.rename(&XY));
    let target = ["p", "q"];
    let [p0, p1] = chart_images(&target, 0, kf);
    let [q0, q1] = chart_images(&target, 1, kg);
    let a = pairing.compose(&[p0.clone(), p1.clone(), q0.clone(), q1.clone()]);
    let tf1 = tf.compose(&[p0, p1]);
    let tg1 = tg.compose(&[q0, q1]);
    let passed = !a.is_zero()
        && resultant_lenient(&tf1, &a, "p")
            .and_then(|r| if r.is_zero() { Err(PolyError::ZeroPolynomial) } else { resultant_lenient(&tg1, &r, "q") })
            .map(|r| !r.is_zero())
            .unwrap_or(false);
    CheckResult::new(
        Check::G4,
        "pair",
        passed,
        if passed { "pairing nonzero at all pairs of points at infinity".into() } else { "pairing vanishes at a pair of points at infinity".into() },
    )
}

fn check_g5(quad: &Quadruple) -> CheckResult {
    let det = quad.det();
    CheckResult::new(Check::G5, "pair", !det.is_zero(), format!("ad - bc = {det}"))
}

/// Checks G1-G3 on one curve.
pub fn curve_checks(curve: &PlaneCurve, subject: &str) -> Vec<CheckResult> {
    vec![check_g1(curve, subject), check_g2(curve, subject), check_g3(curve, subject)]
}

/// Runs the full checklist; the returned list holds passes and failures.
pub fn validate_genericity(x: &PlaneCurve, y: &PlaneCurve, quad: &Quadruple) -> Vec<CheckResult> {
    let mut out = curve_checks(x, "X");
    out.extend(curve_checks(y, "Y"));
    out.push(check_g4(x, y, quad));
    out.push(check_g5(quad));
    out
}

fn all_pass(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.passed || !c.gating)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    /// Bound on numerators and denominators of sampled entries.
    pub height: u32,
    pub retry_limit: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { height: 64, retry_limit: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Origin {
    Sampled { seed: u64, attempt: u32 },
    Explicit,
    AffinePair { pair: AffinePair },
}

/// A validated instance: curves `X` in `(x, y)`, `Y` in `(z, w)`, the
/// quadruple, and `h`, `s` over `(x, y, z, w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GsdsProblem {
    pub x: PlaneCurve,
    pub y: PlaneCurve,
    f: Poly,
    g: Poly,
    pub quad: Quadruple,
    pub h: Poly,
    pub s: Poly,
    pub origin: Origin,
    pub genericity_log: Vec<CheckResult>,
}

impl GsdsProblem {
    fn assemble(x: PlaneCurve, y: PlaneCurve, quad: Quadruple, origin: Origin, log: Vec<CheckResult>) -> Result<GsdsProblem> {
        let x = x.with_vars(XY);
        let y = y.with_vars(ZW);
        let h = build_h(x.poly(), y.poly(), &quad)?;
        let s = build_s(x.poly(), y.poly(), &h, &quad)?;
        let f = x.poly().align_to_names(&XYZW)?;
        let g = y.poly().align_to_names(&XYZW)?;
        Ok(GsdsProblem {
            x,
            y,
            f,
            g,
            quad,
            h,
            s,
            origin,
            genericity_log: log,
        })
    }

    /// Validates an explicitly given quadruple.
    pub fn with_quadruple(x: &PlaneCurve, y: &PlaneCurve, quad: Quadruple) -> Result<GsdsProblem> {
        let log = validate_genericity(&x.with_vars(XY), &y.with_vars(ZW), &quad);
        if !all_pass(&log) {
            return Err(SceneError::NotGeneric(log));
        }
        GsdsProblem::assemble(x.clone(), y.clone(), quad, Origin::Explicit, log)
    }

    /// `(d1, d2)`.
    pub fn degrees(&self) -> (u32, u32) {
        (self.x.degree, self.y.degree)
    }

    /// `f` over `(x, y, z, w)`.
    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `g` over `(x, y, z, w)`.
    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `pi(x, y, z, w) = (x + a z + b w, y + c z + d w)`.
    pub fn project(&self, p: &[C64]) -> [C64; 2] {
        let q = &self.quad;
        let f = |r: &Rational| num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN);
        [
            p[0] + p[2] * f(&q.a) + p[3] * f(&q.b),
            p[1] + p[2] * f(&q.c) + p[3] * f(&q.d),
        ]
    }

    pub fn seed(&self) -> Option<u64> {
        match self.origin {
            Origin::Sampled { seed, .. } => Some(seed),
            _ => None,
        }
    }

    /// Quadruples rejected before this one was accepted.
    pub fn resamples(&self) -> u32 {
        match self.origin {
            Origin::Sampled { attempt, .. } => attempt.saturating_sub(1),
            _ => 0,
        }
    }
}

/// Deterministic stream of validated instances for one curve pair and seed.
/// Each call to `next_problem` continues the same RNG stream, so a caller can
/// resample after a downstream failure.
pub struct QuadSampler {
    x: PlaneCurve,
    y: PlaneCurve,
    seed: u64,
    config: SampleConfig,
    rng: ChaCha8Rng,
    attempts: u32,
    curve_log: Vec<CheckResult>,
}

impl QuadSampler {
    pub fn new(x: &PlaneCurve, y: &PlaneCurve, seed: u64, config: SampleConfig) -> Result<QuadSampler> {
        let x = x.with_vars(XY);
        let y = y.with_vars(ZW);
        let mut curve_log = curve_checks(&x, "X");
        curve_log.extend(curve_checks(&y, "Y"));
        if !all_pass(&curve_log) {
            return Err(SceneError::CurveChecks(curve_log));
        }
        Ok(QuadSampler { x, y, seed, config, rng: ChaCha8Rng::seed_from_u64(seed), attempts: 0, curve_log })
    }

    /// Total quadruples drawn so far.
    pub fn attempts(&self) -> u32 {
        self.attempts
    }

    pub fn next_problem(&mut self) -> Result<GsdsProblem> {
        let mut last = Vec::new();
        for _ in 0..self.config.retry_limit {
            let quad = Quadruple::random(&mut self.rng, self.config.height);
            self.attempts += 1;
            let pair_checks = vec![check_g4(&self.x, &self.y, &quad), check_g5(&quad)];
            if all_pass(&pair_checks) {
                let mut log = self.curve_log.clone();
                log.extend(pair_checks);
                let origin = Origin::Sampled { seed: self.seed, attempt: self.attempts };
                return GsdsProblem::assemble(self.x.clone(), self.y.clone(), quad, origin, log);
            }
            last = pair_checks;
        }
        Err(SceneError::RetryLimit { attempts: self.attempts, last })
    }
}

/// Draws a generic quadruple for the pair from a seeded RNG, resampling until
/// every check passes.
pub fn sample_problem(x: &PlaneCurve, y: &PlaneCurve, seed: u64, config: SampleConfig) -> Result<GsdsProblem> {
    QuadSampler::new(x, y, seed, config)?.next_problem()
}

/// Replaces the pair by `(G(X), H(Y))` and projects with the plain sum, i.e.
/// the identity quadruple on the transformed curves. G3 is recorded but does
/// not gate here: it concerns the coordinate axes, which carry no meaning for
/// a fixed projection, whereas G4 is the condition the counts rely on.
pub fn pair_to_quadruple(x: &PlaneCurve, y: &PlaneCurve, pair: &AffinePair) -> Result<GsdsProblem> {
    let gi = pair.g.inverse_images(XY)?;
    let hi = pair.h.inverse_images(ZW)?;
    let fx = PlaneCurve::new(&x.poly().rename(&XY).compose(&gi), XY)?;
    let gy = PlaneCurve::new(&y.poly().rename(&ZW).compose(&hi), ZW)?;
    let quad = Quadruple::identity();
    let mut log = validate_genericity(&fx, &gy, &quad);
    for c in &mut log {
        if c.check == Check::G3 {
            c.gating = false;
        }
    }
    if !all_pass(&log) {
        return Err(SceneError::NotGeneric(log));
    }
    GsdsProblem::assemble(fx, gy, quad, Origin::AffinePair { pair: pair.clone() }, log)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s, XY).unwrap()
    }

    fn xyzw(s: &str) -> Poly {
        Poly::parse_in(s, &XYZW).unwrap()
    }

    #[test]
    fn h_for_circles_and_hyperbolas() {
        let q = Quadruple::from_ints(3, 5, -2, 7);
        let f = Poly::parse("x^2 + y^2 - 1").unwrap();
        let g = Poly::parse("z^2 + w^2 - 1").unwrap();
        let h = build_h(&f, &g, &q).unwrap();
        assert_eq!(h, xyzw("4*(5*x*z - 3*x*w + 7*y*z + 2*y*w)"));
        let h2 = build_h(&Poly::parse("x*y - 1").unwrap(), &Poly::parse("z*w - 1").unwrap(), &q).unwrap();
        // f_x = y, f_y = x, g_z = w, g_w = z
        assert_eq!(h2, xyzw("5*y*w - 3*y*z + 7*x*w + 2*x*z"));
        assert_eq!(
            build_h(&Poly::parse("x*z").unwrap(), &g, &q),
            Err(SceneError::VariableCollision(vec!["z".into()]))
        );
    }

    #[test]
    fn s_at_circle_point() {
        let q = Quadruple::from_ints(3, 5, -2, 7);
        let f = Poly::parse("x^2 + y^2 - 1").unwrap();
        let g = Poly::parse("z^2 + w^2 - 1").unwrap();
        let h = build_h(&f, &g, &q).unwrap();
        let s = build_s(&f, &g, &h, &q).unwrap();
        let at = [("x", rat(1)), ("y", rat(0)), ("z", rat(0)), ("w", rat(1))];
        // -8a^2 - 8c^2 - 8b
        assert_eq!(s.eval_rational(&at).unwrap(), rat(-8 * 9 - 8 * 4 - 8 * 5));
        assert!(s.total_degree().unwrap() <= 2);
    }

    #[test]
    fn curve_check_examples() {
        let circle = curve("x^2 + y^2 - 1");
        assert!(curve_checks(&circle, "X").iter().all(|c| c.passed));
        let cusp = curve("y^2 - x^3");
        let g1 = &curve_checks(&cusp, "X")[0];
        assert!(!g1.passed);
        let parabola = curve("y - x^2");
        let checks = curve_checks(&parabola, "X");
        assert!(checks[0].passed);
        assert!(!checks[1].passed);
        assert!(matches!(PlaneCurve::parse("x + y", XY), Err(SceneError::Degree(1))));
    }

    #[test]
    fn hyperbola_fails_g3_only() {
        let hyp = curve("x*y - 1");
        let c = curve_checks(&hyp, "X");
        assert!(c[0].passed && c[1].passed && !c[2].passed);
    }

    #[test]
    fn identity_quadruple_is_degenerate_for_circles() {
        let circle = curve("x^2 + y^2 - 1");
        let log = validate_genericity(&circle, &circle.with_vars(ZW), &Quadruple::identity());
        let g4 = log.iter().find(|c| c.check == Check::G4).unwrap();
        assert!(!g4.passed);
        let log = validate_genericity(&circle, &circle.with_vars(ZW), &Quadruple::from_ints(3, 5, -2, 7));
        assert!(log.iter().all(|c| c.passed));
    }

    #[test]
    fn sampling_is_deterministic() {
        let circle = curve("x^2 + y^2 - 1");
        let a = sample_problem(&circle, &circle, 42, SampleConfig::default()).unwrap();
        let b = sample_problem(&circle, &circle, 42, SampleConfig::default()).unwrap();
        assert_eq!(a, b);
        let c = sample_problem(&circle, &circle, 43, SampleConfig::default()).unwrap();
        assert_ne!(a.quad, c.quad);
        let cusp = curve("y^2 - x^3");
        assert!(matches!(sample_problem(&cusp, &circle, 1, SampleConfig::default()), Err(SceneError::CurveChecks(_))));
    }

    #[test]
    fn affine_pairs() {
        let circle = curve("x^2 + y^2 - 1");
        let p = pair_to_quadruple(&circle, &circle, &figure1_pair()).unwrap();
        assert_eq!(p.quad, Quadruple::identity());
        // H^-1 applied: g'(H(q)) = g(q)
        let at = [("z", rat(1)), ("w", rat(0))];
        let hz = Rational::new(11.into(), 10.into());
        let hw = Rational::new((-2).into(), 10.into());
        let moved = [("x", rat(0)), ("y", rat(0)), ("z", hz), ("w", hw)];
        assert_eq!(p.g().eval_rational(&moved).unwrap(), circle.poly().rename(&ZW).eval_rational(&at).unwrap());
        let id = AffinePair { g: AffineMap::identity(), h: AffineMap::identity() };
        assert!(matches!(pair_to_quadruple(&circle, &circle, &id), Err(SceneError::NotGeneric(_))));
        let singular = AffinePair { g: AffineMap::identity(), h: AffineMap::linear([[rat(1), rat(2)], [rat(2), rat(4)]]) };
        assert_eq!(pair_to_quadruple(&circle, &circle, &singular), Err(SceneError::SingularMap));
    }
}
