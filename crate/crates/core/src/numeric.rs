//! Double-precision complex root finding: damped Newton / Gauss-Newton on
//! polynomial systems, Aberth iteration for univariate polynomials, and
//! deterministic point deduplication.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{CompiledPoly, Poly};

pub type C64 = Complex64;

/// Deterministic RNG for stream `stream` derived from a user seed.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn random_complex<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    C64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting; `None` if numerically singular.
pub fn solve_linear(mut a: Vec<Vec<C64>>, mut b: Vec<C64>) -> Option<Vec<C64>> {
    let n = b.len();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))?;
        if a[p][k].norm() <= 1e-300_f64.max(scale * 1e-15) {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
            let t = b[k];
            b[i] -= f * t;
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let mut s = b[k];
        for j in k + 1..n {
            s -= a[k][j] * x[j];
        }
        x[k] = s / a[k][k];
    }
    Some(x)
}

/// Least-squares step for an `m x n` system (`m >= n`) via normal equations.
pub(crate) fn solve_least_squares(j: &[Vec<C64>], f: &[C64]) -> Option<Vec<C64>> {
    let n = j[0].len();
    if j.len() == n {
        return solve_linear(j.to_vec(), f.to_vec());
    }
    let mut a = vec![vec![C64::new(0.0, 0.0); n]; n];
    let mut b = vec![C64::new(0.0, 0.0); n];
    for (row, fi) in j.iter().zip(f) {
        for p in 0..n {
            let cp = row[p].conj();
            b[p] += cp * fi;
            for q in 0..n {
                a[p][q] += cp * row[q];
            }
        }
    }
    solve_linear(a, b)
}

/// A polynomial system compiled for evaluation together with its Jacobian.
/// Each equation is scaled to unit max coefficient.
#[derive(Debug, Clone)]
pub struct PolySystem {
    nvars: usize,
    eqs: Vec<CompiledPoly>,
    jac: Vec<Vec<CompiledPoly>>,
}

impl PolySystem {
    /// All polynomials must share one variable list.
    pub fn new(polys: &[Poly]) -> PolySystem {
        let nvars = polys[0].nvars();
        let mut eqs = Vec::new();
        let mut jac = Vec::new();
        for p in polys {
            assert_eq!(p.vars(), polys[0].vars(), "system shares one variable list");
            let scale = p
                .terms()
                .map(|(_, c)| num_traits::Signed::abs(c))
                .max()
                .unwrap_or_else(num_traits::One::one);
            eqs.push(CompiledPoly::with_scale(p, &scale));
            jac.push(
                (0..nvars)
                    .map(|i| CompiledPoly::with_scale(&p.derivative_idx(i), &scale))
                    .collect(),
            );
        }
        PolySystem { nvars, eqs, jac }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn neqs(&self) -> usize {
        self.eqs.len()
    }

    pub fn eval(&self, x: &[C64]) -> Vec<C64> {
        self.eqs.iter().map(|e| e.eval(x)).collect()
    }

    pub fn jacobian(&self, x: &[C64]) -> Vec<Vec<C64>> {
        self.jac.iter().map(|row| row.iter().map(|e| e.eval(x)).collect()).collect()
    }

    /// Largest relative residual over the equations.
    pub fn residual(&self, x: &[C64]) -> f64 {
        self.eqs.iter().map(|e| e.relative_residual(x)).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub max_iter: usize,
    pub max_halvings: usize,
    pub step_tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_iter: 200, max_halvings: 40, step_tol: 1e-14 }
    }
}

/// Damped Newton (Gauss-Newton when overdetermined). The step is halved until
/// the residual norm decreases, at most `max_halvings` times. Returns `None`
/// for starts that leave the finite range or are still moving after
/// `max_iter` iterations; a stall (no decrease possible) counts as converged
/// and is left to the caller's residual test.
pub fn newton(sys: &PolySystem, x0: &[C64], opts: &NewtonOptions) -> Option<Vec<C64>> {
    newton_fn(|x| (sys.eval(x), sys.jacobian(x)), x0, opts)
}

pub fn newton_fn<F>(eval: F, x0: &[C64], opts: &NewtonOptions) -> Option<Vec<C64>>
where
    F: Fn(&[C64]) -> (Vec<C64>, Vec<Vec<C64>>),
{
    let mut x = x0.to_vec();
    let (mut f, mut j) = eval(&x);
    let mut fnorm = norm(&f);
    for _ in 0..opts.max_iter {
        if fnorm == 0.0 {
            return Some(x);
        }
        let dx = solve_least_squares(&j, &f)?;
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let trial: Vec<C64> = x.iter().zip(&dx).map(|(xi, di)| xi - di * t).collect();
            if trial.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                t *= 0.5;
                continue;
            }
            let (ft, jt) = eval(&trial);
            let n = norm(&ft);
            if n < fnorm {
                accepted = Some((trial, ft, jt, n));
                break;
            }
            t *= 0.5;
        }
        let Some((nx, nf, nj, nn)) = accepted else {
            return Some(x);
        };
        let step = dist(&nx, &x);
        let scale = 1.0 + norm(&nx);
        x = nx;
        f = nf;
        j = nj;
        fnorm = nn;
        if step <= opts.step_tol * scale {
            return Some(x);
        }
    }
    None
}

/// All complex roots of a univariate polynomial (ascending f64 complex
/// coefficients) by Aberth iteration followed by Newton polish.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = c[n];
    let monic: Vec<C64> = c.iter().map(|z| z / lc).collect();
    // Fujiwara-style bound for the initial circle
    let bound = (0..n)
        .map(|k| monic[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        * 2.0;
    let r = bound.max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(r, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: C64| -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for a in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: C64 = (0..n).filter(|&j| j != i).map(|j| C64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Sorts points lexicographically by (re, im) of each coordinate and merges
/// those within `tol * (1 + |p|)` of an already kept point. Returns kept
/// points and the number of merges.
pub fn dedup_points(mut pts: Vec<Vec<C64>>, tol: f64) -> (Vec<Vec<C64>>, usize) {
    pts.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b) {
            let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    });
    let mut kept: Vec<Vec<C64>> = Vec::new();
    let mut merges = 0;
    for p in pts {
        let scale = 1.0 + norm(&p);
        if kept.iter().any(|q| dist(q, &p) <= tol * scale) {
            merges += 1;
        } else {
            kept.push(p);
        }
    }
    (kept, merges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn aberth_finds_roots_of_unity_shift() {
        // (x - 1)(x + 2)(x - i)
        let coeffs = [c(0.0, 2.0), c(-2.0, -1.0), c(1.0, -1.0), c(1.0, 0.0)];
        let mut roots = poly_roots(&coeffs);
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((roots[0] - c(-2.0, 0.0)).norm() < 1e-12);
        assert!((roots[1] - c(0.0, 1.0)).norm() < 1e-12);
        assert!((roots[2] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn newton_on_circle_line() {
        let vars = ["x", "y"];
        let sys = PolySystem::new(&[
            Poly::parse_in("x^2 + y^2 - 1", &vars).unwrap(),
            Poly::parse_in("x - y", &vars).unwrap(),
        ]);
        let r = newton(&sys, &[c(0.9, 0.1), c(0.5, -0.1)], &NewtonOptions::default()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(dist(&r, &[c(s, 0.0), c(s, 0.0)]) < 1e-12);
        assert!(sys.residual(&r) < 1e-14);
    }

    #[test]
    fn dedup_is_order_independent() {
        let a = vec![vec![c(1.0, 0.0)], vec![c(1.0 + 1e-12, 0.0)], vec![c(2.0, 0.0)]];
        let mut b = a.clone();
        b.reverse();
        let (ka, ma) = dedup_points(a, 1e-8);
        let (kb, mb) = dedup_points(b, 1e-8);
        assert_eq!(ka, kb);
        assert_eq!((ma, mb), (1, 1));
    }
}
