//! Evaluation: exact over the rationals, or double-precision complex.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{Poly, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    ExactRational,
    ComplexFloat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalValue {
    Exact(Rational),
    Complex(Complex64),
}

impl Poly {
    /// Evaluates at a point given as `(name, value)` bindings.
    pub fn eval(&self, point: &[(&str, Rational)], mode: EvalMode) -> Result<EvalValue> {
        match mode {
            EvalMode::ExactRational => self.eval_rational(point).map(EvalValue::Exact),
            EvalMode::ComplexFloat => {
                let vals = self.bind(point, |r| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0))?;
                Ok(EvalValue::Complex(CompiledPoly::new(self).eval(&vals)))
            }
        }
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        CompiledPoly::new(self).eval(point)
    }
}

/// Recursive Horner scheme: `node = sum_k coeff_k * x_var^k` where each
/// coefficient is either a constant or a node in a later variable.
#[derive(Debug, Clone)]
enum Horner {
    Const(f64),
    Node { var: usize, coeffs: Vec<Horner> },
}

impl Horner {
    fn build(terms: &[(Vec<u32>, f64)], var: usize, nvars: usize) -> Horner {
        if terms.is_empty() {
            return Horner::Const(0.0);
        }
        if var == nvars {
            return Horner::Const(terms.iter().map(|t| t.1).sum());
        }
        let deg = terms.iter().map(|t| t.0[var]).max().unwrap_or(0) as usize;
        if deg == 0 {
            return Horner::build(terms, var + 1, nvars);
        }
        let mut buckets: Vec<Vec<(Vec<u32>, f64)>> = vec![Vec::new(); deg + 1];
        for (m, c) in terms {
            buckets[m[var] as usize].push((m.clone(), *c));
        }
        Horner::Node {
            var,
            coeffs: buckets.iter().map(|b| Horner::build(b, var + 1, nvars)).collect(),
        }
    }

    fn eval(&self, x: &[Complex64]) -> Complex64 {
        match self {
            Horner::Const(c) => Complex64::new(*c, 0.0),
            Horner::Node { var, coeffs } => {
                let t = x[*var];
                let mut acc = Complex64::new(0.0, 0.0);
                for c in coeffs.iter().rev() {
                    acc = acc * t + c.eval(x);
                }
                acc
            }
        }
    }

    fn eval_real(&self, x: &[f64]) -> f64 {
        match self {
            Horner::Const(c) => *c,
            Horner::Node { var, coeffs } => {
                let t = x[*var];
                coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.eval_real(x))
            }
        }
    }
}

/// A polynomial frozen to f64 coefficients for fast complex evaluation.
///
/// Coefficients are stored as `coeff / scale` where `scale` is the largest
/// |coefficient| of the source polynomial (or a caller-supplied scale), so
/// huge exact coefficients never overflow.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    nvars: usize,
    terms: Vec<(Vec<u32>, f64)>,
    horner: Horner,
}

impl CompiledPoly {
    /// Compiles with exact coefficients converted directly to f64.
    pub fn new(p: &Poly) -> CompiledPoly {
        Self::from_terms(
            p.nvars(),
            p.terms().map(|(m, c)| (m.clone(), c.to_f64().unwrap_or(f64::NAN))).collect(),
        )
    }

    /// Compiles after dividing every coefficient by the exact `scale`.
    pub fn with_scale(p: &Poly, scale: &Rational) -> CompiledPoly {
        Self::from_terms(
            p.nvars(),
            p.terms().map(|(m, c)| (m.clone(), (c / scale).to_f64().unwrap_or(f64::NAN))).collect(),
        )
    }

    /// Unit max-coefficient normalization.
    pub fn normalized(p: &Poly) -> CompiledPoly {
        Self::from_terms(p.nvars(), p.unit_max_coeffs())
    }

    fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, f64)>) -> CompiledPoly {
        let horner = Horner::build(&terms, 0, nvars);
        CompiledPoly { nvars, terms, horner }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.nvars);
        self.horner.eval(x)
    }

    pub fn eval_real(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        self.horner.eval_real(x)
    }

    /// Sum of |term| at `x`; the natural scale for a relative residual.
    pub fn abs_sum(&self, x: &[Complex64]) -> f64 {
        let norms: Vec<f64> = x.iter().map(|z| z.norm()).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.abs();
                for (i, &e) in m.iter().enumerate() {
                    if e > 0 {
                        t *= norms[i].powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// |p(x)| divided by `max(1, abs_sum(x))`: relative to the size of the
    /// terms far out, absolute (on the stored coefficient scale) near zero.
    pub fn relative_residual(&self, x: &[Complex64]) -> f64 {
        self.eval(x).norm() / self.abs_sum(x).max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn float_matches_exact_on_integer_points() {
        let p = Poly::parse("123456*x^3*y - 999999*y^4 + 17*x - 5").unwrap();
        for (a, b) in [(3, -7), (10, 10), (-4, 2)] {
            let exact = p.eval_rational(&[("x", rat(a)), ("y", rat(b))]).unwrap().to_f64().unwrap();
            let approx = p.eval_complex(&[Complex64::new(a as f64, 0.0), Complex64::new(b as f64, 0.0)]);
            assert!((approx.re - exact).abs() <= 1e-12 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn eval_modes() {
        let p = Poly::parse("x^2 + y^2 - 1").unwrap();
        let at = [("x", rat(2)), ("y", rat(0))];
        assert_eq!(p.eval(&at, EvalMode::ExactRational).unwrap(), EvalValue::Exact(rat(3)));
        assert_eq!(
            p.eval(&at, EvalMode::ComplexFloat).unwrap(),
            EvalValue::Complex(Complex64::new(3.0, 0.0))
        );
    }
}
