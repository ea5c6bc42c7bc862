//! Property suites shared by the `properties` and `acceptance` targets.
//! Each suite runs on a deterministic RNG and reports the first failure.
#![allow(dead_code)]

use caustic::poly::{resultant, resultant_bareiss, squarefree_primitive_part, CompiledPoly, Poly, Rational};
use caustic::scene::{build_h, Quadruple, XYZW};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const XY: [&str; 2] = ["x", "y"];

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Polynomials in `(x, y)` of total degree at most `deg` with small integer
/// coefficients.
fn poly_xy(deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0..=deg, 0..=deg, -6i64..=6), 1..8).prop_map(move |terms| {
        Poly::from_terms(&XY, terms.into_iter().filter(|(i, j, _)| i + j <= deg).map(|(i, j, c)| (vec![i, j], rat(c))))
    })
}

/// Same, with positive degree in `y`.
fn poly_in_y(deg: u32) -> impl Strategy<Value = Poly> {
    poly_xy(deg).prop_filter("needs y", |p| p.degree_in("y").unwrap().unwrap_or(0) > 0)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn deg_y(p: &Poly) -> u32 {
    p.degree_in("y").unwrap().unwrap_or(0)
}

fn check<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn resultant_swap_sign(cases: u32) -> Result<(), String> {
    check(cases, (poly_in_y(3), poly_in_y(3)), |(p, q)| {
        let a = resultant(&p, &q, "y").unwrap();
        let b = resultant(&q, &p, "y").unwrap();
        let sign = if deg_y(&p) * deg_y(&q) % 2 == 1 { -Rational::one() } else { Rational::one() };
        prop_assert_eq!(a, b.scale(&sign));
        Ok(())
    })
}

pub fn resultant_multiplicative(cases: u32) -> Result<(), String> {
    check(cases, (poly_in_y(3), poly_in_y(2), poly_in_y(2)), |(p, q, r)| {
        let qr = q.clone() * r.clone();
        let lhs = resultant(&p, &qr, "y").unwrap();
        let rhs = resultant(&p, &q, "y").unwrap() * resultant(&p, &r, "y").unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn resultant_routes_agree(cases: u32) -> Result<(), String> {
    check(cases, (poly_in_y(3), poly_in_y(3)), |(p, q)| {
        prop_assert_eq!(resultant(&p, &q, "y").unwrap(), resultant_bareiss(&p, &q, "y").unwrap());
        Ok(())
    })
}

pub fn squarefree_idempotent(cases: u32) -> Result<(), String> {
    check(cases, (poly_in_y(3), poly_in_y(2)), |(p, q)| {
        let s = squarefree_primitive_part(&p, "y").unwrap();
        prop_assert_eq!(squarefree_primitive_part(&s, "y").unwrap(), s.clone());
        // repeated factors collapse
        let pq = p.clone() * q.clone();
        let repeated = pq.clone() * pq.clone() * p.clone();
        prop_assert_eq!(squarefree_primitive_part(&repeated, "y").unwrap(), squarefree_primitive_part(&pq, "y").unwrap());
        Ok(())
    })
}

pub fn evaluation_homomorphism(cases: u32) -> Result<(), String> {
    check(cases, (poly_xy(3), poly_xy(3), small_rational(), small_rational()), |(p, q, a, b)| {
        let pt = [("x", a), ("y", b)];
        let e = |f: &Poly| f.eval_rational(&pt).unwrap();
        prop_assert_eq!(e(&(p.clone() * q.clone())), e(&p) * e(&q));
        prop_assert_eq!(e(&(p.clone() + q.clone())), e(&p) + e(&q));
        Ok(())
    })
}

pub fn resultant_specializes(cases: u32) -> Result<(), String> {
    check(cases, (poly_in_y(3), poly_in_y(3), small_rational()), |(p, q, a)| {
        // valid when neither leading coefficient in y vanishes at x = a
        let at = |f: &Poly| f.eval_rational(&[("x", a.clone()), ("y", rat(0))]).unwrap();
        let lead = |f: &Poly| at(f.coeffs_in("y").unwrap().last().unwrap());
        prop_assume!(!lead(&p).is_zero() && !lead(&q).is_zero());
        let full = at(&resultant(&p, &q, "y").unwrap());
        let pa = p.substitute("x", &a).unwrap();
        let qa = q.substitute("x", &a).unwrap();
        let special = resultant(&pa, &qa, "y").unwrap().constant_value().unwrap();
        prop_assert_eq!(full, special);
        Ok(())
    })
}

pub fn top_form_degree(cases: u32) -> Result<(), String> {
    check(cases, poly_xy(4), |p| {
        prop_assume!(!p.is_zero());
        let d = p.total_degree().unwrap();
        let top = p.top_form().unwrap();
        prop_assert_eq!(top.total_degree(), Some(d));
        let rest = p.clone() - top;
        prop_assert!(rest.total_degree().is_none_or(|r| r < d));
        Ok(())
    })
}

pub fn float_matches_exact(cases: u32) -> Result<(), String> {
    let terms = prop::collection::vec((0u32..=4, 0u32..=4, -1_000_000i64..=1_000_000), 1..10);
    check(cases, (terms, -10i64..=10, -10i64..=10), |(terms, x, y)| {
        let p = Poly::from_terms(&XY, terms.into_iter().map(|(i, j, c)| (vec![i, j], rat(c))));
        let exact = p.eval_rational(&[("x", rat(x)), ("y", rat(y))]).unwrap();
        let exact = exact.numer().to_string().parse::<f64>().unwrap();
        let float = CompiledPoly::new(&p).eval_real(&[x as f64, y as f64]);
        prop_assert!((float - exact).abs() <= 1e-12 * exact.abs().max(1.0), "{} vs {}", float, exact);
        Ok(())
    })
}

/// `h` against the determinant of the 4x4 matrix with rows
/// `(f_x, f_y, 0, 0)`, `(0, 0, g_z, g_w)`, `(1, 0, a, b)`, `(0, 1, c, d)`.
fn det4(m: &[[Poly; 4]; 4]) -> Poly {
    let mut total = Poly::zero(&XYZW);
    let mut perm = [0usize, 1, 2, 3];
    // Heap's algorithm keeps track of the sign
    fn heap(k: usize, perm: &mut [usize; 4], sign: &mut i64, out: &mut Vec<([usize; 4], i64)>) {
        if k == 1 {
            out.push((*perm, *sign));
            return;
        }
        heap(k - 1, perm, sign, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) { perm.swap(i, k - 1) } else { perm.swap(0, k - 1) }
            *sign = -*sign;
            heap(k - 1, perm, sign, out);
        }
    }
    let mut all = Vec::new();
    heap(4, &mut perm, &mut 1, &mut all);
    assert_eq!(all.len(), 24);
    for (p, s) in all {
        let mut term = Poly::constant(&XYZW, rat(s));
        for (r, &c) in p.iter().enumerate() {
            term = term * m[r][c].clone();
        }
        total = total + term;
    }
    total
}

pub fn h_is_the_determinant(cases: u32) -> Result<(), String> {
    check(cases, (poly_xy(3), poly_xy(3), prop::array::uniform4(-9i64..=9)), |(f, g, q)| {
        let f = f.rename(&XY).align_to_names(&XYZW).unwrap();
        let g = g.rename(&["z", "w"]).align_to_names(&XYZW).unwrap();
        prop_assume!(f.total_degree().unwrap_or(0) >= 1 && g.total_degree().unwrap_or(0) >= 1);
        let quad = Quadruple::from_ints(q[0], q[1], q[2], q[3]);
        let h = build_h(&f, &g, &quad).unwrap();
        let z = Poly::zero(&XYZW);
        let c = |v: &Rational| Poly::constant(&XYZW, v.clone());
        let d = |p: &Poly, v: &str| p.partial_derivative(v).unwrap();
        let m = [
            [d(&f, "x"), d(&f, "y"), z.clone(), z.clone()],
            [z.clone(), z.clone(), d(&g, "z"), d(&g, "w")],
            [c(&rat(1)), z.clone(), c(&quad.a), c(&quad.b)],
            [z.clone(), c(&rat(1)), c(&quad.c), c(&quad.d)],
        ];
        prop_assert_eq!(h.clone(), det4(&m));
        let bound = f.total_degree().unwrap() + g.total_degree().unwrap() - 2;
        prop_assert!(h.total_degree().is_none_or(|dh| dh <= bound));
        Ok(())
    })
}

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

/// The algebraic suites with their case counts.
pub const SUITES: &[(Suite, u32)] = &[
    (("resultant swap sign", resultant_swap_sign), 100),
    (("resultant multiplicativity", resultant_multiplicative), 100),
    (("resultant routes agree", resultant_routes_agree), 100),
    (("squarefree idempotence", squarefree_idempotent), 100),
    (("evaluation homomorphism", evaluation_homomorphism), 100),
    (("resultant specialization", resultant_specializes), 100),
    (("top form degree", top_form_degree), 100),
    (("float vs exact evaluation", float_matches_exact), 100),
    (("h equals the 4x4 determinant", h_is_the_determinant), 20),
];
