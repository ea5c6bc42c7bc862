//! Implicit equation of the discriminant curve `C' = pi(C)` by iterated
//! resultants, with sample-based removal of extraneous factors.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::invariants::expected_invariants;
use crate::numeric::{self, dedup_points, newton, random_complex, NewtonOptions, PolySystem, C64};
use crate::poly::{gcd, rat, resultant, squarefree_decomposition, univariate, CompiledPoly, Poly, PolyError, Rational};
use crate::scene::{GsdsProblem, XYZW};

pub const UV: [&str; 2] = ["u", "v"];
const ZWUV: [&str; 4] = ["z", "w", "u", "v"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ElimError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{stage} exceeds the coefficient budget ({terms} terms, {bits} bits)")]
    Budget { stage: String, terms: usize, bits: u64 },
    #[error("need at least {needed} samples of C', found {found}")]
    InsufficientSamples { needed: usize, found: usize },
    #[error("no factor vanishes on the samples")]
    NoFactor,
    #[error("retained degree {got} differs from the expected {expected}")]
    DegreeMismatch { expected: u32, got: u32, provenance: Box<Provenance> },
    #[error("{got} distinct points at infinity, expected {expected}")]
    InfinityCount { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, ElimError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// Eliminate `w`, then `z`.
    WThenZ,
    /// Eliminate `z`, then `w`.
    ZThenW,
    /// Both orders; their gcd is the raw candidate.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElimConfig {
    pub order: Order,
    pub max_terms: usize,
    pub max_bits: u64,
    /// Number of numeric samples of `C'` used to arbitrate factors.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ElimConfig {
    fn default() -> Self {
        ElimConfig { order: Order::Both, max_terms: 200_000, max_bits: 1_000_000, samples: 32, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageInfo {
    pub stage: String,
    pub degree: u32,
    pub terms: usize,
    pub max_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorInfo {
    pub degree: u32,
    pub terms: usize,
    /// Fraction of samples at which the factor vanishes.
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub vanishing_fraction: f64,
    pub retained: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Provenance {
    pub order: Option<Order>,
    pub stages: Vec<StageInfo>,
    pub factors: Vec<FactorInfo>,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InfinityKind {
    /// Direction of a point at infinity of `X`.
    FromX,
    /// Image under the quadruple of a point at infinity of `Y`.
    FromY,
    Unmatched,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfinityPoint {
    /// Projective direction `(alpha : beta)`, scaled so `beta = 1` unless zero.
    #[serde(serialize_with = "crate::json::ser_complex_pair")]
    pub direction: [C64; 2],
    pub multiplicity: u32,
    pub kind: Option<InfinityKind>,
}

/// `P(u, v)`: primitive, squarefree, integer coefficients, positive
/// graded-lex leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitCurve {
    pub p: Poly,
    pub degree: u32,
    pub infinity_points: Vec<InfinityPoint>,
    pub provenance: Provenance,
}

impl ImplicitCurve {
    /// Wraps a polynomial in `(u, v)` (normalized here) and computes its
    /// points at infinity.
    pub fn from_poly(p: &Poly, provenance: Provenance) -> Result<ImplicitCurve> {
        let p = p.align_to_names(&UV)?.normalized();
        let degree = p.total_degree().ok_or(PolyError::ZeroPolynomial)?;
        let infinity_points = binary_form_roots(&p.top_form()?)
            .into_iter()
            .map(|(direction, multiplicity)| InfinityPoint { direction, multiplicity, kind: None })
            .collect();
        Ok(ImplicitCurve { p, degree, infinity_points, provenance })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .p
            .terms_grlex()
            .into_iter()
            .map(|(m, c)| json!([[m[0], m[1]], c.numer().to_string(), c.denom().to_string()]))
            .collect();
        json!({
            "schema": crate::json::SCHEMA,
            "variables": UV,
            "degree": self.degree,
            "text": self.p.to_string(),
            "terms": terms,
            "infinity_points": self.infinity_points,
            "provenance": self.provenance,
        })
    }
}

/// `F1 = f(u - az - bw, v - cz - dw)`, `F2 = g(z, w)`, `F3 = h(u - az - bw,
/// v - cz - dw, z, w)`, all over `(z, w, u, v)`.
pub fn substitute_fiber(problem: &GsdsProblem) -> (Poly, Poly, Poly) {
    let q = &problem.quad;
    let var = |n: &str| Poly::var(&ZWUV, n).expect("fixed variable list");
    let (z, w, u, v) = (var("z"), var("w"), var("u"), var("v"));
    let x_img = &(&u - &z.scale(&q.a)) - &w.scale(&q.b);
    let y_img = &(&v - &z.scale(&q.c)) - &w.scale(&q.d);
    let images = [x_img, y_img, z, w];
    let f1 = problem.f().compose(&images);
    let f2 = problem.g().compose(&images);
    let f3 = problem.h.compose(&images);
    (f1, f2, f3)
}

fn stage(name: &str, p: &Poly, config: &ElimConfig) -> Result<StageInfo> {
    let info = StageInfo {
        stage: name.to_string(),
        degree: p.total_degree().unwrap_or(0),
        terms: p.num_terms(),
        max_bits: p.max_coeff_bits(),
    };
    if info.terms > config.max_terms || info.max_bits > config.max_bits {
        return Err(ElimError::Budget { stage: info.stage, terms: info.terms, bits: info.max_bits });
    }
    Ok(info)
}

/// Aborts before an iterated resultant whose dense term count, from the
/// total degree bound `deg r1 * deg r2` in `(u, v)`, exceeds the budget.
fn preflight(name: &str, r1: &Poly, r2: &Poly, config: &ElimConfig) -> Result<()> {
    let d = (r1.total_degree().unwrap_or(0) as usize) * (r2.total_degree().unwrap_or(0) as usize);
    let terms = (d + 1) * (d + 2) / 2;
    if terms > config.max_terms {
        return Err(ElimError::Budget { stage: format!("{name} (predicted)"), terms, bits: 0 });
    }
    Ok(())
}

/// `Res_second(Res_first(F1, F2), Res_first(F1, F3))`, as a polynomial in `(u, v)`.
fn route(f1: &Poly, f2: &Poly, f3: &Poly, first: &str, second: &str, config: &ElimConfig) -> Result<(Poly, Vec<StageInfo>)> {
    let (r1, r2) = rayon::join(|| resultant(f1, f2, first), || resultant(f1, f3, first));
    let r1 = r1?.normalized();
    let r2 = r2?.normalized();
    let mut stages = vec![
        stage(&format!("Res_{first}(F1,F2)"), &r1, config)?,
        stage(&format!("Res_{first}(F1,F3)"), &r2, config)?,
    ];
    let name = format!("Res_{second}(R1,R2) [{first} first]");
    preflight(&name, &r1, &r2, config)?;
    let r3 = resultant(&r1, &r2, second)?.align_to_names(&UV)?.normalized();
    stages.push(stage(&name, &r3, config)?);
    Ok((r3, stages))
}

/// One order on its own: the extraneous factor of an iterated resultant
/// depends on the pairing, so a second pairing `(F1, F2), (F2, F3)` in the
/// same order is intersected with the first by a gcd.
fn single_route(f1: &Poly, f2: &Poly, f3: &Poly, first: &str, second: &str, config: &ElimConfig) -> Result<(Poly, Vec<StageInfo>)> {
    let (a, b) = rayon::join(|| route(f1, f2, f3, first, second, config), || resultant(f2, f3, first));
    let ((r3, mut stages), r2b) = (a?, b?.normalized());
    stages.push(stage(&format!("Res_{first}(F2,F3)"), &r2b, config)?);
    let r1 = resultant(f1, f2, first)?.normalized();
    let name = format!("Res_{second}(R1,R2') [{first} first]");
    preflight(&name, &r1, &r2b, config)?;
    let r4 = resultant(&r1, &r2b, second)?.align_to_names(&UV)?.normalized();
    stages.push(stage(&name, &r4, config)?);
    let common = gcd(&r3, &r4);
    stages.push(stage("gcd of both pairings", &common, config)?);
    Ok((common, stages))
}

/// Pairwise coprime factors whose products reproduce the squarefree parts of
/// every input: repeatedly splits a pair with a nontrivial common divisor.
fn coprime_refine(inputs: &[Poly]) -> Vec<Poly> {
    let mut parts: Vec<Poly> = Vec::new();
    for p in inputs {
        for f in squarefree_decomposition(p).unwrap_or_default() {
            if !f.is_constant() {
                parts.push(f.normalized());
            }
        }
    }
    loop {
        let mut split = None;
        'search: for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let g = gcd(&parts[i], &parts[j]);
                if !g.is_constant() {
                    split = Some((i, j, g));
                    break 'search;
                }
            }
        }
        let Some((i, j, g)) = split else { break };
        let a = parts[i].div_exact(&g).expect("gcd divides");
        let b = parts[j].div_exact(&g).expect("gcd divides");
        parts.remove(j);
        parts.remove(i);
        for f in [g, a, b] {
            if !f.is_constant() && !parts.contains(&f.normalized()) {
                parts.push(f.normalized());
            }
        }
    }
    parts.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.to_string().cmp(&b.to_string())));
    parts
}

/// Fraction of `samples` at which `p` vanishes to relative `1e-6`.
pub fn vanishing_fraction(p: &Poly, samples: &[[C64; 2]]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let c = CompiledPoly::normalized(p);
    let hits = samples.iter().filter(|s| c.relative_residual(&s[..]) < 1e-6).count();
    hits as f64 / samples.len() as f64
}

fn select_factors(factors: &[Poly], samples: &[[C64; 2]], expected: u32, mut provenance: Provenance) -> Result<(Poly, Provenance)> {
    if samples.is_empty() {
        return Err(ElimError::InsufficientSamples { needed: 1, found: 0 });
    }
    let mut product = Poly::constant(&UV, rat(1));
    let mut any = false;
    for f in factors {
        let frac = vanishing_fraction(f, samples);
        let retained = frac >= 0.9;
        provenance.factors.push(FactorInfo {
            degree: f.total_degree().unwrap_or(0),
            terms: f.num_terms(),
            vanishing_fraction: frac,
            retained,
        });
        if retained {
            product = &product * f;
            any = true;
        }
    }
    provenance.samples = samples.len();
    if !any {
        return Err(ElimError::NoFactor);
    }
    let got = product.total_degree().unwrap_or(0);
    if got != expected {
        return Err(ElimError::DegreeMismatch { expected, got, provenance: Box::new(provenance) });
    }
    Ok((product.normalized(), provenance))
}

fn expected_degree(problem: &GsdsProblem) -> u32 {
    let (d1, d2) = problem.degrees();
    expected_invariants(d1, d2).map(|i| i.degree as u32).unwrap_or(0)
}

/// Splits `p_raw` into squarefree coprime factors and keeps those vanishing
/// at 90% or more of the samples.
pub fn remove_extraneous(p_raw: &Poly, problem: &GsdsProblem, samples: &[[C64; 2]]) -> Result<Poly> {
    let p = p_raw.align_to_names(&UV)?;
    let factors = coprime_refine(&[p]);
    select_factors(&factors, samples, expected_degree(problem), Provenance::default()).map(|r| r.0)
}

/// Points of the critical curve `C` (residual below `1e-10` on `f = g = h = 0`),
/// found by Newton on the system cut with random real hyperplanes.
pub fn sample_critical_points(problem: &GsdsProblem, count: usize, seed: u64) -> Vec<[C64; 4]> {
    let critical = PolySystem::new(&[problem.f().clone(), problem.g().clone(), problem.h.clone()]);
    let opts = NewtonOptions::default();
    let mut found: Vec<Vec<C64>> = Vec::new();
    for round in 0..64u64 {
        let mut rng = numeric::rng_for(seed, 1 << 32 | round);
        use rand::Rng;
        let coeffs: Vec<Rational> = (0..4)
            .map(|_| Rational::new(rng.gen_range(-64i64..=64).into(), 64.into()))
            .collect();
        let mut slice = Poly::constant(&XYZW, rat(-1));
        for (i, c) in coeffs.iter().enumerate() {
            slice = &slice + &Poly::var(&XYZW, XYZW[i]).unwrap().scale(c);
        }
        let sys = PolySystem::new(&[problem.f().clone(), problem.g().clone(), problem.h.clone(), slice]);
        let starts: Vec<Vec<C64>> = (0..16).map(|_| (0..4).map(|_| random_complex(&mut rng, 2.0)).collect()).collect();
        let mut batch: Vec<Vec<C64>> = starts
            .par_iter()
            .filter_map(|s| newton(&sys, s, &opts))
            .filter(|p| p.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
            .filter(|p| critical.residual(p) < 1e-10 && sys.residual(p) < 1e-10)
            .collect();
        found.append(&mut batch);
        let (kept, _) = dedup_points(std::mem::take(&mut found), 1e-8);
        found = kept;
        if found.len() >= count {
            break;
        }
    }
    found.truncate(count);
    found.into_iter().map(|p| [p[0], p[1], p[2], p[3]]).collect()
}

/// Images of [`sample_critical_points`] under the projection.
pub fn sample_caustic_points(problem: &GsdsProblem, count: usize, seed: u64) -> Vec<[C64; 2]> {
    sample_critical_points(problem, count, seed).iter().map(|p| problem.project(p)).collect()
}

/// Eliminates `z, w` from the fiber system and removes extraneous factors.
pub fn implicitize(problem: &GsdsProblem, config: &ElimConfig) -> Result<ImplicitCurve> {
    let (f1, f2, f3) = substitute_fiber(problem);
    let (f1, f2, f3) = (f1.normalized(), f2.normalized(), f3.normalized());
    let mut provenance = Provenance { order: Some(config.order), ..Provenance::default() };
    let raws: Vec<Poly> = match config.order {
        Order::WThenZ | Order::ZThenW => {
            let (a, b) = if config.order == Order::WThenZ { ("w", "z") } else { ("z", "w") };
            let (r, stages) = single_route(&f1, &f2, &f3, a, b, config)?;
            provenance.stages = stages;
            vec![r]
        }
        Order::Both => {
            let (ra, rb) = rayon::join(|| route(&f1, &f2, &f3, "w", "z", config), || route(&f1, &f2, &f3, "z", "w", config));
            let (ra, sa) = ra?;
            let (rb, sb) = rb?;
            provenance.stages = sa.into_iter().chain(sb).collect();
            let common = gcd(&ra, &rb);
            provenance.stages.push(stage("gcd of both orders", &common, config)?);
            vec![common]
        }
    };
    if raws.iter().any(|r| r.is_zero()) {
        return Err(ElimError::NoFactor);
    }
    let factors = coprime_refine(&raws);
    let samples = sample_caustic_points(problem, config.samples, config.seed);
    if samples.len() < 20.min(config.samples) {
        return Err(ElimError::InsufficientSamples { needed: 20.min(config.samples), found: samples.len() });
    }
    let (p, provenance) = select_factors(&factors, &samples, expected_degree(problem), provenance)?;
    ImplicitCurve::from_poly(&p, provenance)
}

fn dense_in(p: &Poly, i: usize) -> Vec<Rational> {
    p.coeffs_idx(i).into_iter().map(|c| c.constant_value().expect("univariate")).collect()
}

fn dense_roots(d: &[Rational]) -> Vec<C64> {
    let c: Vec<C64> = univariate::to_f64_normalized(d).into_iter().map(|x| C64::new(x, 0.0)).collect();
    let roots = numeric::poly_roots(&c);
    polish_roots(d, roots)
}

/// A few Newton steps in exact-coefficient-derived f64 arithmetic.
fn polish_roots(d: &[Rational], roots: Vec<C64>) -> Vec<C64> {
    let c: Vec<C64> = univariate::to_f64_normalized(d).into_iter().map(|x| C64::new(x, 0.0)).collect();
    roots
        .into_iter()
        .map(|mut r| {
            for _ in 0..3 {
                let mut p = C64::new(0.0, 0.0);
                let mut dp = C64::new(0.0, 0.0);
                for a in c.iter().rev() {
                    dp = dp * r + p;
                    p = p * r + a;
                }
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                r -= step;
            }
            r
        })
        .collect()
}

/// Projective roots of a binary form in two variables with multiplicities,
/// ordered by multiplicity and then direction.
pub fn binary_form_roots(form: &Poly) -> Vec<([C64; 2], u32)> {
    let total = form.total_degree().unwrap_or(0);
    let dehom = dense_in(&form.substitute_idx(1, &rat(1)), 0);
    let finite_degree = univariate::degree(&dehom).unwrap_or(0) as u32;
    let mut out = Vec::new();
    for (k, part) in univariate::squarefree_decomposition(&dehom).into_iter().enumerate() {
        for r in dense_roots(&part) {
            out.push(([r, C64::new(1.0, 0.0)], k as u32 + 1));
        }
    }
    if total > finite_degree {
        out.push(([C64::new(1.0, 0.0), C64::new(0.0, 0.0)], total - finite_degree));
    }
    sort_directions(&mut out);
    out
}

fn sort_directions<T>(v: &mut [([C64; 2], T)])
where
    T: Ord + Copy,
{
    v.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then(a.0[1].re.total_cmp(&b.0[1].re).reverse())
            .then(a.0[0].re.total_cmp(&b.0[0].re))
            .then(a.0[0].im.total_cmp(&b.0[0].im))
    });
}

/// Points at infinity of `C'` labelled by origin. Multiplicities come from an
/// exact squarefree decomposition of the top form; labels from exact gcds
/// with the top form of `f` and with the top form of `g` pushed through the
/// quadruple.
pub fn infinity_profile(curve: &ImplicitCurve, problem: &GsdsProblem) -> Result<Vec<InfinityPoint>> {
    let top = curve.p.top_form()?;
    let tf = problem.x.poly().top_form()?.rename(&UV);
    // (u, v) = M (z, w)  =>  (z, w) = M^-1 (u, v)
    let q = &problem.quad;
    let det = q.det();
    let u = Poly::var(&UV, "u")?;
    let v = Poly::var(&UV, "v")?;
    let zi = &u.scale(&(&q.d / &det)) - &v.scale(&(&q.b / &det));
    let wi = &v.scale(&(&q.a / &det)) - &u.scale(&(&q.c / &det));
    let tg = problem.y.poly().top_form()?.compose(&[zi, wi]);
    let dehom = |p: &Poly| dense_in(&p.substitute_idx(1, &rat(1)), 0);
    let (tf1, tg1) = (dehom(&tf), dehom(&tg));
    let top1 = dehom(&top);
    let mut out = Vec::new();
    for (k, part) in univariate::squarefree_decomposition(&top1).into_iter().enumerate() {
        if univariate::degree(&part).unwrap_or(0) == 0 {
            continue;
        }
        let from_x = univariate::gcd(&part, &tf1);
        let rest = univariate::div_rem(&part, &from_x).0;
        let from_y = univariate::gcd(&rest, &tg1);
        let unmatched = univariate::div_rem(&rest, &from_y).0;
        for (piece, kind) in [(from_x, InfinityKind::FromX), (from_y, InfinityKind::FromY), (unmatched, InfinityKind::Unmatched)] {
            for r in dense_roots(&piece) {
                out.push(InfinityPoint { direction: [r, C64::new(1.0, 0.0)], multiplicity: k as u32 + 1, kind: Some(kind) });
            }
        }
    }
    let finite_degree = univariate::degree(&top1).unwrap_or(0) as u32;
    if curve.degree > finite_degree {
        let at = |p: &Poly| p.coeff(&[p.total_degree().unwrap_or(0), 0]);
        let kind = if at(&tf).is_zero() {
            InfinityKind::FromX
        } else if at(&tg).is_zero() {
            InfinityKind::FromY
        } else {
            InfinityKind::Unmatched
        };
        out.push(InfinityPoint {
            direction: [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            multiplicity: curve.degree - finite_degree,
            kind: Some(kind),
        });
    }
    let mut keyed: Vec<([C64; 2], (u32, u8))> = out.iter().map(|p| (p.direction, (p.multiplicity, p.kind.map(|k| k as u8).unwrap_or(9)))).collect();
    sort_directions(&mut keyed);
    let sorted: Vec<InfinityPoint> = keyed
        .into_iter()
        .map(|(d, _)| out.iter().find(|p| p.direction == d).cloned().expect("same points"))
        .collect();
    let (d1, d2) = problem.degrees();
    let expected = (d1 + d2) as usize;
    if sorted.len() != expected {
        return Err(ElimError::InfinityCount { expected, got: sorted.len() });
    }
    Ok(sorted)
}

/// Multiplicities the closed forms predict at infinity: `d2(d2-1)` at each of
/// the `d1` directions from `X`, `d1(d1-1)` at each of the `d2` from `Y`.
pub fn expected_infinity_multiplicities(d1: u32, d2: u32) -> (u32, u32) {
    (d2 * (d2 - 1), d1 * (d1 - 1))
}

/// Whether the profile has the predicted multiplicity for every labelled point.
pub fn infinity_profile_matches(profile: &[InfinityPoint], d1: u32, d2: u32) -> bool {
    let (mx, my) = expected_infinity_multiplicities(d1, d2);
    let nx = profile.iter().filter(|p| p.kind == Some(InfinityKind::FromX) && p.multiplicity == mx).count();
    let ny = profile.iter().filter(|p| p.kind == Some(InfinityKind::FromY) && p.multiplicity == my).count();
    nx == d1 as usize && ny == d2 as usize && profile.len() == (d1 + d2) as usize
}

/// Max |P| (unit max-coefficient normalization, relative residual) over samples.
pub fn max_sample_residual(curve: &ImplicitCurve, samples: &[[C64; 2]]) -> f64 {
    let c = CompiledPoly::normalized(&curve.p);
    samples.iter().map(|s| c.relative_residual(&s[..])).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{PlaneCurve, Quadruple, XY};

    fn circles(q: Quadruple) -> GsdsProblem {
        let c = PlaneCurve::parse("x^2 + y^2 - 1", XY).unwrap();
        GsdsProblem::with_quadruple(&c, &c, q).unwrap()
    }

    #[test]
    fn preflight_predicts_dense_size() {
        let vars = ["z", "u", "v"];
        let r1 = Poly::parse_in("z^9 + u^4*v^5 - 1", &vars).unwrap();
        let r2 = Poly::parse_in("z^12 + u*v^11 + 2", &vars).unwrap();
        let small = ElimConfig { max_terms: 5000, ..ElimConfig::default() };
        match preflight("stage", &r1, &r2, &small) {
            Err(ElimError::Budget { terms, .. }) => assert_eq!(terms, 109 * 110 / 2),
            other => panic!("{other:?}"),
        }
        assert!(preflight("stage", &r1, &r2, &ElimConfig::default()).is_ok());
    }

    #[test]
    fn fiber_substitution_identities() {
        let p = circles(Quadruple::from_ints(3, 5, -2, 7));
        let (f1, f2, _) = substitute_fiber(&p);
        assert_eq!(f2, Poly::parse_in("z^2 + w^2 - 1", &ZWUV).unwrap());
        let at0 = f1.substitute("z", &rat(0)).unwrap().substitute("w", &rat(0)).unwrap();
        assert_eq!(at0, Poly::parse_in("u^2 + v^2 - 1", &ZWUV).unwrap());
        let zw = f1.substitute("u", &rat(0)).unwrap().substitute("v", &rat(0)).unwrap();
        assert_eq!(zw.total_degree(), Some(2));
    }

    #[test]
    fn circle_pair_degree_eight() {
        let p = circles(Quadruple::from_ints(3, 5, -2, 7));
        let curve = implicitize(&p, &ElimConfig::default()).unwrap();
        assert_eq!(curve.degree, 8);
        let samples = sample_caustic_points(&p, 20, 99);
        assert!(max_sample_residual(&curve, &samples) < 1e-6);
        let prof = infinity_profile(&curve, &p).unwrap();
        assert_eq!(prof.len(), 4);
        assert!(prof.iter().all(|q| q.multiplicity == 2));
        assert!(infinity_profile_matches(&prof, 2, 2));
    }

    #[test]
    fn spurious_factor_removed() {
        let p = circles(Quadruple::from_ints(3, 5, -2, 7));
        let curve = implicitize(&p, &ElimConfig::default()).unwrap();
        let spurious = Poly::parse_in("u - 17/3", &UV).unwrap();
        let raw = &(&curve.p * &spurious) * &spurious;
        let samples = sample_caustic_points(&p, 24, 5);
        assert_eq!(remove_extraneous(&raw, &p, &samples).unwrap(), curve.p);
        assert_eq!(remove_extraneous(&curve.p, &p, &samples).unwrap(), curve.p);
        assert!(matches!(remove_extraneous(&curve.p, &p, &[]), Err(ElimError::InsufficientSamples { .. })));
    }

    #[test]
    fn binary_roots_with_infinity() {
        // u^2 v (u - v)^3: roots (0:1) x2, (1:0) x1, (1:1) x3
        let f = Poly::parse_in("u^2*v*(u - v)^3", &UV).unwrap();
        let r = binary_form_roots(&f);
        let mults: Vec<u32> = r.iter().map(|x| x.1).collect();
        assert_eq!(mults, vec![3, 2, 1]);
        assert!((r[2].0[1]).norm() < 1e-12);
    }
}
