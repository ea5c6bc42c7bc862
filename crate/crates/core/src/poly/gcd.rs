//! Multivariate gcd over the rationals by evaluation and interpolation,
//! recursing one variable at a time down to univariate remainder sequences.

use num_traits::One;

use super::resultant::nodes;
use super::univariate::{self, Dense};
use super::{interpolate, Poly, PolyError, Rational, Result};

fn union_used(a: &Poly, b: &Poly) -> Vec<usize> {
    let mut v = a.used_vars();
    for i in b.used_vars() {
        if !v.contains(&i) {
            v.push(i);
        }
    }
    v.sort_unstable();
    v
}

fn to_dense(p: &Poly, i: usize) -> Dense {
    p.coeffs_idx(i)
        .into_iter()
        .map(|c| c.constant_value().expect("univariate in the given variable"))
        .collect()
}

fn from_dense(like: &Poly, i: usize, d: &[Rational]) -> Poly {
    let coeffs: Vec<Poly> = d.iter().map(|c| like.const_like(c.clone())).collect();
    Poly::from_coeffs_idx(like.vars_arc(), i, &coeffs)
}

/// Greatest common divisor, normalized (primitive integer coefficients,
/// positive graded-lex leading coefficient). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (a, b) = a.unify(b);
    gcd_same(&a, &b).normalized()
}

fn gcd_same(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return a.const_like(Rational::one());
    }
    let used = union_used(a, b);
    let x = used[0];
    if used.len() == 1 {
        let g = univariate::gcd(&to_dense(a, x), &to_dense(b, x));
        return from_dense(a, x, &g);
    }
    let ca = content_idx(a, x);
    let cb = content_idx(b, x);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let cg = gcd_same(&ca, &cb);
    if pa.degree_idx(x).unwrap_or(0) == 0 || pb.degree_idx(x).unwrap_or(0) == 0 {
        return cg;
    }
    let g = gcd_primitive(&pa, &pb, x);
    &cg * &g
}

/// Gcd of two polynomials primitive with respect to `x`.
fn gcd_primitive(pa: &Poly, pb: &Poly, x: usize) -> Poly {
    let used = union_used(pa, pb);
    if used.len() == 1 {
        let g = univariate::gcd(&to_dense(pa, x), &to_dense(pb, x));
        return from_dense(pa, x, &g);
    }
    let y = *used.last().unwrap();
    let lca = pa.leading_coeff_idx(x);
    let lcb = pb.leading_coeff_idx(x);
    let gamma = gcd_same(&lca, &lcb);
    let bound = gamma.degree_idx(y).unwrap_or(0)
        + pa.degree_idx(y).unwrap_or(0).min(pb.degree_idx(y).unwrap_or(0));
    let needed = bound as usize + 1;
    let mut cur_deg = u32::MAX;
    let mut pts: Vec<Rational> = Vec::new();
    let mut vals: Vec<Poly> = Vec::new();
    for t in nodes() {
        let lca_t = lca.substitute_idx(y, &t);
        let lcb_t = lcb.substitute_idx(y, &t);
        if lca_t.is_zero() || lcb_t.is_zero() {
            continue;
        }
        let g_t = gcd_same(&pa.substitute_idx(y, &t), &pb.substitute_idx(y, &t));
        let dx = g_t.degree_idx(x).unwrap_or(0);
        if dx == 0 {
            return pa.const_like(Rational::one());
        }
        if dx > cur_deg {
            continue;
        }
        if dx < cur_deg {
            cur_deg = dx;
            pts.clear();
            vals.clear();
        }
        let gamma_t = gamma.substitute_idx(y, &t);
        let Some(scale) = gamma_t.div_exact(&g_t.leading_coeff_idx(x)) else {
            continue;
        };
        pts.push(t);
        vals.push(&g_t * &scale);
        if pts.len() >= needed {
            let h = interpolate(y, &pts, &vals);
            let g = primitive_idx(&h, x);
            if pa.div_exact(&g).is_some() && pb.div_exact(&g).is_some() {
                return g;
            }
        }
    }
    unreachable!("node sequence is infinite")
}

fn content_idx(p: &Poly, x: usize) -> Poly {
    let mut g = p.zero_like();
    for c in p.coeffs_idx(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd_same(&g, &c);
        if g.is_constant() {
            return p.const_like(Rational::one());
        }
    }
    g.normalized()
}

fn primitive_idx(p: &Poly, x: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    p.div_exact(&content_idx(p, x)).expect("content divides")
}

/// Content with respect to `var`: gcd of the coefficients as polynomials in
/// the remaining variables.
pub fn content_in(p: &Poly, var: &str) -> Result<Poly> {
    let x = p.index_of(var)?;
    Ok(content_idx(p, x))
}

pub fn primitive_part_in(p: &Poly, var: &str) -> Result<Poly> {
    let x = p.index_of(var)?;
    Ok(primitive_idx(p, x).normalized())
}

/// Squarefree decomposition: entry `k` is the product of the irreducible
/// factors of multiplicity exactly `k + 1` (normalized; constants for gaps).
pub fn squarefree_decomposition(p: &Poly) -> Result<Vec<Poly>> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(sqf_decomp(p))
}

fn sqf_decomp(p: &Poly) -> Vec<Poly> {
    let used = p.used_vars();
    let Some(&x) = used.first() else {
        return Vec::new();
    };
    let content = content_idx(p, x);
    let prim = p.div_exact(&content).expect("content divides");
    let mut parts = yun(&prim, x);
    for (k, c) in sqf_decomp(&content).into_iter().enumerate() {
        if k < parts.len() {
            parts[k] = (&parts[k] * &c).normalized();
        } else {
            while parts.len() < k {
                parts.push(p.const_like(Rational::one()));
            }
            parts.push(c);
        }
    }
    while parts.last().is_some_and(|f| f.is_constant()) {
        parts.pop();
    }
    parts
}

fn yun(p: &Poly, x: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    if p.degree_idx(x).unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative_idx(x);
    let a = gcd_same(p, &dp);
    let mut b = p.div_exact(&a).expect("gcd divides");
    let mut c = dp.div_exact(&a).expect("gcd divides");
    loop {
        let d = &c - &b.derivative_idx(x);
        let g = gcd_same(&b, &d);
        out.push(g.normalized());
        b = b.div_exact(&g).expect("gcd divides");
        if b.degree_idx(x).unwrap_or(0) == 0 {
            break;
        }
        c = d.div_exact(&g).expect("gcd divides");
    }
    out
}

/// Same zero set as `p`, every irreducible factor with multiplicity one,
/// normalized. Content with respect to `main_var` is reduced recursively so
/// factors free of `main_var` are kept.
pub fn squarefree_primitive_part(p: &Poly, main_var: &str) -> Result<Poly> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let x = p.index_of(main_var)?;
    Ok(sqf_part(p, Some(x)))
}

fn sqf_part(p: &Poly, main: Option<usize>) -> Poly {
    let x = match main.filter(|&x| p.degree_idx(x).unwrap_or(0) > 0) {
        Some(x) => x,
        None => match p.used_vars().first() {
            Some(&x) => x,
            None => return p.const_like(Rational::one()),
        },
    };
    let content = content_idx(p, x);
    let prim = p.div_exact(&content).expect("content divides");
    let g = gcd_same(&prim, &prim.derivative_idx(x));
    let part = prim.div_exact(&g).expect("gcd divides");
    (&part * &sqf_part(&content, None)).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse_in(s, &["u", "v", "w"]).unwrap()
    }

    #[test]
    fn bivariate_gcd() {
        let a = p("(u - v)^2 * (u + 2*v - 1)");
        let b = p("(u - v) * (u*v + 3) * (u + 2*v - 1)^2");
        assert_eq!(gcd(&a, &b), p("(u - v) * (u + 2*v - 1)").normalized());
        assert_eq!(gcd(&p("u^2 + v^2"), &p("u - v")), p("1"));
    }

    #[test]
    fn trivariate_gcd_with_content() {
        let common = p("w*u - v^2 + 3");
        let a = &p("(v + w)*(u^2 - w)") * &common;
        let b = &p("(v + w)*(u + v + w)") * &common;
        assert_eq!(gcd(&a, &b), (&p("v + w") * &common).normalized());
    }

    #[test]
    fn squarefree_examples() {
        let a = p("3/2*(u - v)^2");
        assert_eq!(squarefree_primitive_part(&a, "u").unwrap(), p("u - v"));
        let b = p("u^2 - v^2");
        assert_eq!(squarefree_primitive_part(&b, "u").unwrap(), b);
        let c = p("v*(u^2 + v^2)^2");
        assert_eq!(squarefree_primitive_part(&c, "u").unwrap(), p("v*(u^2 + v^2)").normalized());
        assert_eq!(
            squarefree_primitive_part(&Poly::zero(&["u"]), "u"),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn decomposition_multiplicities() {
        let f = p("(u - v) * (u + v + 1)^2 * v^3");
        let parts = squarefree_decomposition(&f).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], p("u - v"));
        assert_eq!(parts[1], p("u + v + 1"));
        assert_eq!(parts[2], p("v"));
    }
}
