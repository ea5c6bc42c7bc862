//! Sylvester resultants.
//!
//! The public [`resultant`] specializes every variable other than the
//! eliminated one at integer points until only scalar Sylvester matrices
//! remain, takes their determinants by fraction-free elimination, and
//! recovers the result by Newton interpolation. [`resultant_bareiss`] runs
//! fraction-free elimination directly over the polynomial ring; the two are
//! independent routes to the same determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{interpolate, rat, Poly, PolyError, Rational, Result};

fn prepare(p: &Poly, q: &Poly, var: &str) -> Result<(Poly, Poly, usize)> {
    let (p, q) = p.unify(q);
    let i = p.index_of(var)?;
    for f in [&p, &q] {
        if f.degree_idx(i).unwrap_or(0) == 0 {
            return Err(PolyError::ZeroDegree(var.to_string()));
        }
    }
    Ok((p, q, i))
}

/// Resultant of `p` and `q` with respect to `var`; see the module docs of
/// [`crate::poly`] for the sign convention.
pub fn resultant(p: &Poly, q: &Poly, var: &str) -> Result<Poly> {
    let (p, q, i) = prepare(p, q, var)?;
    Ok(res_interp(&p, &q, i))
}

/// Same determinant, computed by Bareiss elimination on the Sylvester matrix
/// with polynomial entries.
pub fn resultant_bareiss(p: &Poly, q: &Poly, var: &str) -> Result<Poly> {
    let (p, q, i) = prepare(p, q, var)?;
    let cp = p.coeffs_idx(i);
    let cq = q.coeffs_idx(i);
    let zero = p.zero_like();
    let mut m = sylvester(&cp, &cq, &zero);
    let n = m.len();
    let mut sign = false;
    let mut prev = p.const_like(Rational::one());
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(zero),
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &(&m[r][c] * &m[k][k]) - &(&m[r][k] * &m[k][c]);
                m[r][c] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { -det } else { det })
}

/// Resultant tolerant of a degree-0 argument (`Res(p, c) = c^deg p`), used by
/// the exact nonvanishing tests where a constant argument is legitimate.
pub(crate) fn resultant_lenient(p: &Poly, q: &Poly, var: &str) -> Result<Poly> {
    let (p, q) = p.unify(q);
    let i = p.index_of(var)?;
    let m = p.degree_idx(i).ok_or(PolyError::ZeroPolynomial)?;
    let n = q.degree_idx(i).ok_or(PolyError::ZeroPolynomial)?;
    match (m, n) {
        (_, 0) => Ok(q.pow(m)),
        (0, _) => Ok(p.pow(n)),
        _ => Ok(res_interp(&p, &q, i)),
    }
}

fn sylvester<T: Clone>(cp: &[T], cq: &[T], zero: &T) -> Vec<Vec<T>> {
    let m = cp.len() - 1;
    let n = cq.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cp.iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cq.iter().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant of an integer matrix by fraction-free elimination.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = row[k].clone();
            for c in k + 1..n {
                let v = &row[c] * pivot - &lead * &pivot_row[c];
                row[c] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn scalar_resultant(cp: &[Rational], cq: &[Rational]) -> Rational {
    let lcm_den = |c: &[Rational]| c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let lp = lcm_den(cp);
    let lq = lcm_den(cq);
    let ip: Vec<BigInt> = cp.iter().map(|c| c.numer() * (&lp / c.denom())).collect();
    let iq: Vec<BigInt> = cq.iter().map(|c| c.numer() * (&lq / c.denom())).collect();
    let m = cp.len() - 1;
    let n = cq.len() - 1;
    let det = bareiss_det(sylvester(&ip, &iq, &BigInt::zero()));
    let scale = num_traits::pow(lp, n) * num_traits::pow(lq, m);
    Rational::new(det, scale)
}

fn scalar_coeffs(p: &Poly, i: usize) -> Vec<Rational> {
    p.coeffs_idx(i)
        .into_iter()
        .map(|c| c.constant_value().expect("only the eliminated variable remains"))
        .collect()
}

/// Integer evaluation nodes 0, 1, -1, 2, -2, ...
pub(crate) fn nodes() -> impl Iterator<Item = Rational> {
    (0i64..).map(|k| if k % 2 == 0 { rat(-(k / 2)) } else { rat(k / 2 + 1) })
}

fn res_interp(p: &Poly, q: &Poly, i: usize) -> Poly {
    let mut others: Vec<usize> = p.used_vars();
    for v in q.used_vars() {
        if !others.contains(&v) {
            others.push(v);
        }
    }
    others.retain(|&v| v != i);
    others.sort_unstable();
    let m = p.degree_idx(i).unwrap_or(0);
    let n = q.degree_idx(i).unwrap_or(0);
    let Some(&y) = others.last() else {
        return p.const_like(scalar_resultant(&scalar_coeffs(p, i), &scalar_coeffs(q, i)));
    };
    let bound = (m * q.degree_idx(y).unwrap_or(0) + n * p.degree_idx(y).unwrap_or(0)) as usize;
    let lcp = p.leading_coeff_idx(i);
    let lcq = q.leading_coeff_idx(i);
    let chosen: Vec<Rational> = nodes()
        .filter(|t| !lcp.substitute_idx(y, t).is_zero() && !lcq.substitute_idx(y, t).is_zero())
        .take(bound + 1)
        .collect();
    let values: Vec<Poly> = chosen
        .par_iter()
        .map(|t| res_interp(&p.substitute_idx(y, t), &q.substitute_idx(y, t), i))
        .collect();
    interpolate(y, &chosen, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn linear_pair_sign() {
        let a = p("x - a").align_to_names(&["x", "a", "b"]).unwrap();
        let b = p("x - b").align_to_names(&["x", "a", "b"]).unwrap();
        assert_eq!(resultant(&a, &b, "x").unwrap(), p("b - a"));
        assert_eq!(resultant_bareiss(&a, &b, "x").unwrap(), p("b - a"));
    }

    #[test]
    fn known_values() {
        assert_eq!(resultant(&p("x^2+1"), &p("x^2-1"), "x").unwrap(), p("4"));
        let r = resultant(&p("x^2 - u"), &p("x").align_to_names(&["x", "u"]).unwrap(), "x").unwrap();
        assert_eq!(r, p("-u"));
    }

    #[test]
    fn zero_degree_rejected() {
        assert_eq!(
            resultant(&p("x^2+y"), &p("y+1"), "x"),
            Err(PolyError::ZeroDegree("x".into()))
        );
        let c = resultant_lenient(&p("x^2+y"), &p("y+1"), "x").unwrap();
        assert_eq!(c, p("(y+1)^2"));
    }

    #[test]
    fn routes_agree_trivariate() {
        let a = p("x^2*y - 3*x*z + y^2 - 1/2");
        let b = p("2*x^3 + x*y*z - z^2 + 7/3*y");
        let r1 = resultant(&a, &b, "x").unwrap();
        let r2 = resultant_bareiss(&a, &b, "x").unwrap();
        assert_eq!(r1, r2);
        assert!(!r1.is_zero());
    }
}
