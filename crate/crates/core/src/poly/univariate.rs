//! Dense univariate helpers over the rationals (ascending coefficients).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

pub type Dense = Vec<Rational>;

pub fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Rational]) -> Dense {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect()
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Dense, Dense) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate().take(db + 1) {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn make_monic(p: &mut Dense) {
    trim(p);
    if let Some(lc) = p.last().cloned() {
        let inv = lc.recip();
        for c in p.iter_mut() {
            *c *= &inv;
        }
    }
}

/// Scales to integer coefficients with unit content (keeps sign of lc positive).
pub fn primitive(p: &mut Dense) {
    trim(p);
    if p.is_empty() {
        return;
    }
    let mut l = BigInt::one();
    for c in p.iter() {
        l = l.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for c in p.iter() {
        g = g.gcd(&(c.numer() * (&l / c.denom())));
    }
    let mut s = Rational::new(l, g);
    if p.last().unwrap().is_negative() {
        s = -s;
    }
    for c in p.iter_mut() {
        *c *= &s;
    }
}

/// Monic gcd, computed modularly on the integer primitive parts.
pub fn gcd(a: &[Rational], b: &[Rational]) -> Dense {
    let mut x: Dense = a.to_vec();
    let mut y: Dense = b.to_vec();
    primitive(&mut x);
    primitive(&mut y);
    if x.is_empty() || y.is_empty() {
        let mut g = if x.is_empty() { y } else { x };
        make_monic(&mut g);
        return g;
    }
    let ints = |v: &Dense| -> Vec<BigInt> { v.iter().map(|c| c.numer().clone()).collect() };
    let g = super::modular::gcd_integer(&ints(&x), &ints(&y));
    let mut g: Dense = g.into_iter().map(Rational::from_integer).collect();
    make_monic(&mut g);
    g
}

/// Monic gcd by the primitive remainder sequence over the rationals.
pub fn gcd_prs(a: &[Rational], b: &[Rational]) -> Dense {
    let mut x: Dense = a.to_vec();
    let mut y: Dense = b.to_vec();
    primitive(&mut x);
    primitive(&mut y);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while degree(&y).is_some() {
        let (_, mut r) = div_rem(&x, &y);
        primitive(&mut r);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

/// Squarefree decomposition `p = c * prod f_i^i` (Yun). Entry `k` holds the
/// monic factor of multiplicity `k + 1`.
pub fn squarefree_decomposition(p: &[Rational]) -> Vec<Dense> {
    let mut out = Vec::new();
    if degree(p).unwrap_or(0) == 0 {
        return out;
    }
    let dp = derivative(p);
    let a = gcd(p, &dp);
    let (mut b, _) = div_rem(p, &a);
    let (mut c, _) = div_rem(&dp, &a);
    loop {
        let d = sub(&c, &derivative(&b));
        let g = gcd(&b, &d);
        out.push(g.clone());
        b = div_rem(&b, &g).0;
        if degree(&b).unwrap_or(0) == 0 {
            break;
        }
        c = div_rem(&d, &g).0;
    }
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Dense {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    let mut out: Dense = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Coefficients divided by the largest |coefficient|, as f64.
pub fn to_f64_normalized(p: &[Rational]) -> Vec<f64> {
    let max = p.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::one);
    if max.is_zero() {
        return vec![0.0; p.len()];
    }
    p.iter().map(|c| (c / &max).to_f64().unwrap_or(0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn d(v: &[i64]) -> Dense {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = d(&[-2, 1, 1]);
        let b = d(&[3, -4, 1]);
        assert_eq!(gcd(&a, &b), d(&[-1, 1]));
        assert_eq!(gcd(&a, &d(&[5])), d(&[1]));
        assert_eq!(gcd(&a, &[]), d(&[-2, 1, 1]));
        assert_eq!(gcd_prs(&a, &b), d(&[-1, 1]));
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (x-1) (x+1)^2 (x-2)^3
        let p = mul(&mul(&d(&[-1, 1]), &mul(&d(&[1, 1]), &d(&[1, 1]))), &mul(&d(&[-2, 1]), &mul(&d(&[-2, 1]), &d(&[-2, 1]))));
        let parts = squarefree_decomposition(&p);
        assert_eq!(parts, vec![d(&[-1, 1]), d(&[1, 1]), d(&[-2, 1])]);
        // x^2 (no simple part)
        assert_eq!(squarefree_decomposition(&d(&[0, 0, 3])), vec![d(&[1]), d(&[0, 1])]);
    }

    #[test]
    fn division() {
        let (q, r) = div_rem(&d(&[1, 0, 1]), &d(&[1, 1]));
        assert_eq!(q, d(&[-1, 1]));
        assert_eq!(r, d(&[2]));
    }
}
