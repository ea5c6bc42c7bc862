//! Exact sparse multivariate polynomials with rational coefficients.
//!
//! A [`Poly`] carries its own ordered list of variable names. Binary
//! operations on polynomials over different variable lists first align both
//! operands to the union of their variables (left operand's order first).
//!
//! Conventions used throughout the crate:
//!
//! * Printing and normalization use graded-lex order: higher total degree
//!   first, ties broken lexicographically with the first variable most
//!   significant.
//! * [`Poly::normalized`] scales to primitive integer coefficients with a
//!   positive graded-lex leading coefficient.
//! * [`resultant`] is the determinant of the Sylvester matrix whose rows hold
//!   the coefficients of `p` first, columns indexed by ascending powers of the
//!   eliminated variable. This equals `lc(q)^deg(p) * prod p(beta)` over the
//!   roots `beta` of `q`, so `Res_x(x - a, x - b) = b - a` and
//!   `Res_x(x^2 - u, x) = -u`.

mod eval;
mod gcd;
mod interp;
mod modular;
mod parse;
mod resultant;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use eval::{CompiledPoly, EvalMode, EvalValue};
pub use gcd::{content_in, gcd, primitive_part_in, squarefree_decomposition, squarefree_primitive_part};
pub use interp::interpolate;
pub use parse::parse_rational;
pub use resultant::{resultant, resultant_bareiss};
pub(crate) use resultant::resultant_lenient;

pub use num_rational::BigRational as Rational;

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Monomial = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has degree 0 in `{0}`")]
    ZeroDegree(String),
    #[error("no value bound for variable `{0}`")]
    MissingBinding(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variables {0:?} occur in both operands")]
    VariableCollision(Vec<String>),
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// Graded-lex comparison of exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Poly {
        Poly::with_vars(Arc::new(vars.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub(crate) fn with_vars(vars: Arc<Vec<String>>) -> Poly {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Poly {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Poly> {
        let mut p = Poly::zero(vars);
        let i = p.index_of(name)?;
        let mut m = vec![0; p.vars.len()];
        m[i] = 1;
        p.terms.insert(m, Rational::one());
        Ok(p)
    }

    pub fn from_terms<S: AsRef<str>, I>(vars: &[S], terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.len(), p.vars.len(), "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn const_like(&self, c: Rational) -> Poly {
        let mut p = Poly::with_vars(self.vars.clone());
        if !c.is_zero() {
            p.terms.insert(vec![0; self.vars.len()], c);
        }
        p
    }

    pub(crate) fn zero_like(&self) -> Poly {
        Poly::with_vars(self.vars.clone())
    }

    pub(crate) fn var_like(&self, i: usize) -> Poly {
        let mut m = vec![0; self.vars.len()];
        m[i] = 1;
        let mut p = self.zero_like();
        p.terms.insert(m, Rational::one());
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn vars_arc(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn terms_grlex(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex(b.0, a.0));
        t
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> Result<Option<u32>> {
        let i = self.index_of(var)?;
        Ok(self.degree_idx(i))
    }

    pub(crate) fn degree_idx(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    /// Indices of the variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m[i] > 0))
            .collect()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that occurs in `self`.
    pub fn align_to(&self, vars: &Arc<Vec<String>>) -> Result<Poly> {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return Ok(Poly { vars: vars.clone(), terms: self.terms.clone() });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.iter().enumerate() {
            match vars.iter().position(|v| v == name) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|m| m[i] > 0) {
                        return Err(PolyError::UnknownVariable(name.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let mut out = Poly::with_vars(vars.clone());
        for (m, c) in &self.terms {
            let mut nm = vec![0; vars.len()];
            for (i, &e) in m.iter().enumerate() {
                if let Some(j) = map[i] {
                    nm[j] = e;
                }
            }
            out.terms.insert(nm, c.clone());
        }
        Ok(out)
    }

    pub fn align_to_names<S: AsRef<str>>(&self, vars: &[S]) -> Result<Poly> {
        let v = Arc::new(vars.iter().map(|s| s.as_ref().to_string()).collect());
        self.align_to(&v)
    }

    /// Renames variables positionally.
    pub fn rename<S: AsRef<str>>(&self, names: &[S]) -> Poly {
        assert_eq!(names.len(), self.vars.len());
        Poly {
            vars: Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()),
            terms: self.terms.clone(),
        }
    }

    /// Removes variables that do not occur.
    pub fn drop_unused_vars(&self) -> Poly {
        let used = self.used_vars();
        let names: Vec<String> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Poly::zero(&names);
        for (m, c) in &self.terms {
            out.terms.insert(used.iter().map(|&i| m[i]).collect(), c.clone());
        }
        out
    }

    fn unify(&self, other: &Poly) -> (Poly, Poly) {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return (self.clone(), other.clone().with_shared_vars(&self.vars));
        }
        let mut names: Vec<String> = (*self.vars).clone();
        for v in other.vars.iter() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        let names = Arc::new(names);
        (
            self.align_to(&names).expect("union contains all variables"),
            other.align_to(&names).expect("union contains all variables"),
        )
    }

    fn with_shared_vars(mut self, vars: &Arc<Vec<String>>) -> Poly {
        self.vars = vars.clone();
        self
    }

    fn same_vars(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return self.zero_like();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = self.const_like(Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        let i = self.index_of(var)?;
        Ok(self.derivative_idx(i))
    }

    pub(crate) fn derivative_idx(&self, i: usize) -> Poly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut nm = m.clone();
                nm[i] -= 1;
                out.terms.insert(nm, c * rat(m[i] as i64));
            }
        }
        out
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of top total degree.
    pub fn top_form(&self) -> Result<Poly> {
        let d = self.total_degree().ok_or(PolyError::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    /// Homogenization with respect to a fresh variable `t` appended last.
    pub fn homogenize(&self, t: &str) -> Result<HomogPoly> {
        let d = self.total_degree().ok_or(PolyError::ZeroPolynomial)?;
        if self.vars.iter().any(|v| v == t) {
            return Err(PolyError::VariableCollision(vec![t.to_string()]));
        }
        let mut names = (*self.vars).clone();
        names.push(t.to_string());
        let mut out = Poly::zero(&names);
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            nm.push(d - m.iter().sum::<u32>());
            out.terms.insert(nm, c.clone());
        }
        Ok(HomogPoly { base: out, claimed_degree: d })
    }

    /// Substitutes a rational value for variable index `i`; the variable
    /// stays in the list with exponent zero everywhere.
    pub(crate) fn substitute_idx(&self, i: usize, value: &Rational) -> Poly {
        let maxe = self.degree_idx(i).unwrap_or(0) as usize;
        let mut powers = Vec::with_capacity(maxe + 1);
        powers.push(Rational::one());
        for k in 1..=maxe {
            powers.push(&powers[k - 1] * value);
        }
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            let e = nm[i] as usize;
            nm[i] = 0;
            out.add_term(nm, c * &powers[e]);
        }
        out
    }

    pub fn substitute(&self, var: &str, value: &Rational) -> Result<Poly> {
        let i = self.index_of(var)?;
        Ok(self.substitute_idx(i, value))
    }

    /// Replaces each variable of `self` by the matching entry of `images`;
    /// all images must share one variable list, which becomes the result's.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| Arc::new(Vec::new()));
        let images: Vec<Poly> = images
            .iter()
            .map(|p| p.align_to(&target).expect("images share a variable list"))
            .collect();
        let mut cache: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::with_vars(target.clone()).const_like(Rational::one()), p.clone()])
            .collect();
        let mut out = Poly::with_vars(target.clone());
        for (m, c) in &self.terms {
            let mut t = Poly::with_vars(target.clone()).const_like(c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients with respect to variable `i`, ascending by power. Each
    /// coefficient keeps the full variable list (with exponent 0 in `i`).
    pub(crate) fn coeffs_idx(&self, i: usize) -> Vec<Poly> {
        let deg = match self.degree_idx(i) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![self.zero_like(); deg + 1];
        for (m, c) in &self.terms {
            let mut nm = m.clone();
            let e = nm[i] as usize;
            nm[i] = 0;
            out[e].terms.insert(nm, c.clone());
        }
        out
    }

    pub(crate) fn from_coeffs_idx(vars: &Arc<Vec<String>>, i: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::with_vars(vars.clone());
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                let mut nm = m.clone();
                nm[i] += e as u32;
                out.add_term(nm, k.clone());
            }
        }
        out
    }

    pub fn coeffs_in(&self, var: &str) -> Result<Vec<Poly>> {
        let i = self.index_of(var)?;
        Ok(self.coeffs_idx(i))
    }

    pub(crate) fn leading_coeff_idx(&self, i: usize) -> Poly {
        self.coeffs_idx(i).pop().unwrap_or_else(|| self.zero_like())
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (a, b) = self.unify(divisor);
        if a.is_zero() {
            return Some(a);
        }
        if let Some(c) = b.constant_value() {
            return Some(a.scale(&c.recip()));
        }
        // Lex order keeps the leading term at the end of the map.
        let (lm_b, lc_b) = b.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let inv_lc = lc_b.recip();
        let mut rem = a.terms.clone();
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((lm_r, lc_r)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm_r.iter().zip(&lm_b).any(|(r, d)| r < d) {
                return None;
            }
            let qm: Monomial = lm_r.iter().zip(&lm_b).map(|(r, d)| r - d).collect();
            let qc = &lc_r * &inv_lc;
            for (m, c) in &b.terms {
                let nm: Monomial = m.iter().zip(&qm).map(|(x, y)| x + y).collect();
                let delta = c * &qc;
                match rem.entry(nm) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.insert(qm, qc);
        }
        Some(Poly { vars: a.vars.clone(), terms: quot })
    }

    /// Splits into a positive rational content and a primitive polynomial
    /// with integer coefficients: `self = content * primitive`.
    pub fn primitive_integer(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&l / c.denom());
            g = g.gcd(&n);
        }
        let content = Rational::new(g, l);
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Primitive integer coefficients, positive graded-lex leading coefficient.
    pub fn normalized(&self) -> Poly {
        let (_, mut p) = self.primitive_integer();
        if let Some((_, c)) = p.leading_term() {
            if c.is_negative() {
                p = -p;
            }
        }
        p
    }

    pub fn eval_rational(&self, point: &[(&str, Rational)]) -> Result<Rational> {
        let vals = self.bind(point, |r| r.clone())?;
        Ok(self.eval_rational_slice(&vals))
    }

    pub(crate) fn eval_rational_slice(&self, vals: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(vals[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub(crate) fn bind<T, F: Fn(&Rational) -> T>(
        &self,
        point: &[(&str, Rational)],
        conv: F,
    ) -> Result<Vec<T>> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.iter().enumerate() {
            match point.iter().find(|(n, _)| n == name) {
                Some((_, v)) => vals.push(conv(v)),
                None => {
                    if self.terms.keys().any(|m| m[i] > 0) {
                        return Err(PolyError::MissingBinding(name.clone()));
                    }
                    vals.push(conv(&Rational::zero()));
                }
            }
        }
        Ok(vals)
    }

    /// Coefficients as f64 after dividing by the largest |coefficient|.
    pub fn unit_max_coeffs(&self) -> Vec<(Monomial, f64)> {
        let max = self
            .terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::one);
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), (c / &max).to_f64().unwrap_or(0.0)))
            .collect()
    }
}

/// `p op q` with automatic variable alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn arith(p: &Poly, q: &Poly, op: ArithOp) -> Poly {
    match op {
        ArithOp::Add => p + q,
        ArithOp::Sub => p - q,
        ArithOp::Mul => p * q,
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        if self.same_vars(other) {
            return self.terms == other.terms;
        }
        let (a, b) = self.unify(other);
        a.terms == b.terms
    }
}

impl Eq for Poly {}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if !self.same_vars(rhs) {
            let (a, b) = self.unify(rhs);
            return &a + &b;
        }
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big.vars = self.vars.clone();
        big
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        if !self.same_vars(rhs) {
            let (a, b) = self.unify(rhs);
            return &a - &b;
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if !self.same_vars(rhs) {
            let (a, b) = self.unify(rhs);
            return &a * &b;
        }
        let mut out = self.zero_like();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms_grlex().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Poly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Poly> {
        Poly::parse(s)
    }
}

/// A homogeneous polynomial: `base` is homogeneous of `claimed_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogPoly {
    pub base: Poly,
    pub claimed_degree: u32,
}

impl HomogPoly {
    pub fn is_consistent(&self) -> bool {
        self.base.terms().all(|(m, _)| m.iter().sum::<u32>() == self.claimed_degree)
    }

    /// Restriction to the hyperplane at infinity (`t = 0`, `t` the last variable).
    pub fn at_infinity(&self) -> Poly {
        let t = self.base.nvars() - 1;
        self.base.substitute_idx(t, &Rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!(&p("x+y") + &p("x-y"), p("2*x"));
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        let q = p("3*x*y - 7/2");
        assert_eq!(&q + &Poly::zero(&["x"]), q);
        assert_eq!(arith(&p("x"), &p("y"), ArithOp::Sub).to_string(), "x - y");
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2+y^2-1").partial_derivative("x").unwrap(), p("2*x"));
        assert!(p("x^2").align_to_names(&["x", "y"]).unwrap().partial_derivative("y").unwrap().is_zero());
        assert_eq!(
            p("5/2*x*z - 3/7*x*w").partial_derivative("x").unwrap(),
            p("5/2*z - 3/7*w")
        );
        assert_eq!(
            p("x^2").partial_derivative("q"),
            Err(PolyError::UnknownVariable("q".into()))
        );
    }

    #[test]
    fn top_forms() {
        assert_eq!(p("x^2+y^2-1").top_form().unwrap(), p("x^2+y^2"));
        assert_eq!(p("x*y-1").top_form().unwrap(), p("x*y"));
        assert_eq!(p("x^3+x").top_form().unwrap(), p("x^3"));
        assert_eq!(Poly::zero(&["x"]).top_form(), Err(PolyError::ZeroPolynomial));
        assert_eq!(Poly::zero(&["x"]).total_degree(), None);
    }

    #[test]
    fn exact_evaluation() {
        let c = p("x^2+y^2-1");
        assert_eq!(c.eval_rational(&[("x", rat(1)), ("y", rat(0))]).unwrap(), rat(0));
        assert_eq!(c.eval_rational(&[("x", rat(2)), ("y", rat(0))]).unwrap(), rat(3));
        let t = rat(4);
        let h = p("x*y-1");
        assert_eq!(h.eval_rational(&[("x", t.clone()), ("y", t.recip())]).unwrap(), rat(0));
        assert_eq!(
            h.eval_rational(&[("x", rat(1))]),
            Err(PolyError::MissingBinding("y".into()))
        );
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        assert_eq!(a.div_exact(&p("x-y")).unwrap(), p("x+y"));
        assert!(a.div_exact(&p("x-2*y")).is_none());
        assert_eq!(p("6*x").div_exact(&p("3/2")).unwrap(), p("4*x"));
    }

    #[test]
    fn normalization_and_printing() {
        assert_eq!(p("-3/2*u + 3/2*v").normalized().to_string(), "u - v");
        assert_eq!(p("x^2 + y^2 - 1").to_string(), "x^2 + y^2 - 1");
        assert_eq!(p("1/2*x*y^2 - 3").to_string(), "1/2*x*y^2 - 3");
    }

    #[test]
    fn homogenization() {
        let h = p("x^2+y^2-1").homogenize("t").unwrap();
        assert!(h.is_consistent());
        assert_eq!(h.claimed_degree, 2);
        assert_eq!(h.base, p("x^2+y^2-t^2"));
        assert_eq!(h.at_infinity().drop_unused_vars(), p("x^2+y^2"));
    }

    #[test]
    fn composition() {
        let f = p("x^2 + y");
        let images = [p("u - 2*z"), p("v + z")];
        let images: Vec<Poly> = images
            .iter()
            .map(|q| q.align_to_names(&["z", "u", "v"]).unwrap())
            .collect();
        assert_eq!(f.compose(&images), p("u^2 - 4*u*z + 4*z^2 + v + z"));
    }
}
