//! Sparse multivariate Laurent polynomials over [`Rational`].
//!
//! Terms are kept sorted by graded-lexicographic order on exponent vectors,
//! so equality is structural and the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{format_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("substituting a non-monomial for {0} which occurs with a negative exponent")]
    NonUnitSubstitutionIntoNegativePower(String),
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable {0} is zero but occurs with a negative exponent")]
    ZeroAtNegativePower(String),
    #[error("no value given for variable {0}")]
    MissingValue(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Ordered, named variables. Cloning is cheap.
#[derive(Clone)]
pub struct VarContext {
    inner: Arc<ContextInner>,
}

struct ContextInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, LaurentError> {
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref().to_string();
            if index.insert(name.clone(), i).is_some() {
                return Err(LaurentError::DuplicateVariable(name));
            }
            owned.push(name);
        }
        Ok(VarContext {
            inner: Arc::new(ContextInner { names: owned, index }),
        })
    }

    /// Matrix entries `x11 .. xnn` in row-major order, followed by `extra`.
    pub fn matrix(n: usize, extra: &[&str]) -> Self {
        let mut names: Vec<String> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| entry_name(i, j)))
            .collect();
        names.extend(extra.iter().map(|s| s.to_string()));
        Self::new(&names).expect("matrix entry names are distinct")
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, LaurentError> {
        self.inner
            .index
            .get(name)
            .copied()
            .ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))
    }
}

/// Name of the matrix entry in row `i`, column `j` (1-based).
/// Two-digit indices are separated by an underscore.
pub fn entry_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("x{i}{j}")
    } else {
        format!("x{i}_{j}")
    }
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl Eq for VarContext {}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len].into_boxed_slice())
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Laurent polynomial in a fixed [`VarContext`].
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ctx: VarContext,
    /// Sorted ascending, no zero coefficients, no repeated monomials.
    terms: Vec<(Monomial, Rational)>,
}

/// Hash-map accumulator for sums of many terms.
pub(crate) struct TermAccumulator {
    ctx: VarContext,
    terms: HashMap<Monomial, Rational>,
}

impl TermAccumulator {
    pub(crate) fn new(ctx: &VarContext) -> Self {
        TermAccumulator {
            ctx: ctx.clone(),
            terms: HashMap::new(),
        }
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    /// Adds `scale * poly`.
    pub(crate) fn add_scaled(&mut self, poly: &LaurentPoly, scale: &Rational) {
        debug_assert!(poly.ctx == self.ctx);
        if scale.is_zero() {
            return;
        }
        for (m, c) in &poly.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    /// Adds `scale * a * b`.
    pub(crate) fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (ma, ca) in &a.terms {
            let cas = ca * scale;
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &cas * cb);
            }
        }
    }

    pub(crate) fn finish(self) -> LaurentPoly {
        let mut terms: Vec<(Monomial, Rational)> =
            self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly {
            ctx: self.ctx,
            terms,
        }
    }
}

impl LaurentPoly {
    pub fn zero(ctx: &VarContext) -> Self {
        LaurentPoly {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: &VarContext, value: Rational) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), value)
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn monomial(ctx: &VarContext, mono: Monomial, coeff: Rational) -> Self {
        assert_eq!(mono.0.len(), ctx.len(), "exponent vector length");
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![(mono, coeff)]
        };
        LaurentPoly {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn var(ctx: &VarContext, name: &str) -> Result<Self, LaurentError> {
        let i = ctx.index_of(name)?;
        Ok(Self::var_at(ctx, i))
    }

    pub fn var_at(ctx: &VarContext, i: usize) -> Self {
        let mut exps = vec![0; ctx.len()];
        exps[i] = 1;
        Self::monomial(ctx, Monomial::new(exps), Rational::one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining repeats.
    pub fn from_terms(ctx: &VarContext, terms: Vec<(Vec<i32>, Rational)>) -> Self {
        let mut acc = TermAccumulator::new(ctx);
        for (exps, c) in terms {
            assert_eq!(exps.len(), ctx.len(), "exponent vector length");
            acc.add_term(Monomial::new(exps), c);
        }
        acc.finish()
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` iff the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// `Some((monomial, coeff))` iff there is exactly one term.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] != 0))
            .collect()
    }

    fn check_ctx(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(LaurentError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ctx(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ctx(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ctx(other)?;
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (mono, single, coeff) = match (self.as_monomial(), other.as_monomial()) {
                (Some((m, c)), _) => (m, other, c),
                (None, Some((m, c))) => (m, self, c),
                _ => unreachable!(),
            };
            return Ok(single.mul_term(mono, coeff));
        }
        let mut acc = TermAccumulator::new(&self.ctx);
        acc.add_product(self, other, &Rational::one());
        Ok(acc.finish())
    }

    fn merge(&self, other: &LaurentPoly, subtract: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let flip = |c: &Rational| if subtract { -c.clone() } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Less => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((mb.clone(), flip(cb)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = if subtract { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((ma.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((ma.clone(), ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((mb.clone(), flip(cb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    /// Multiplies by a single term; order is preserved so no re-sort is needed.
    pub fn mul_term(&self, mono: &Monomial, coeff: &Rational) -> LaurentPoly {
        if coeff.is_zero() {
            return Self::zero(&self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> LaurentPoly {
        self.mul_term(&Monomial::one(self.ctx.len()), factor)
    }

    pub fn pow(&self, exp: u32) -> LaurentPoly {
        let mut result = Self::one(&self.ctx);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Product of many factors; the empty product is 1.
    pub fn product<'a>(ctx: &VarContext, factors: impl IntoIterator<Item = &'a LaurentPoly>) -> Self {
        factors
            .into_iter()
            .fold(Self::one(ctx), |acc, f| &acc * f)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<LaurentPoly, LaurentError> {
        Ok(self.partial_derivative_at(self.ctx.index_of(var)?))
    }

    /// Derivative with respect to the variable at position `i`.
    pub fn partial_derivative_at(&self, i: usize) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] != 0)
            .map(|(m, c)| {
                let e = m.0[i];
                let mut exps = m.0.clone();
                exps[i] -= 1;
                (Monomial(exps), c * Rational::from_integer(e.into()))
            })
            .collect::<Vec<_>>();
        // Lowering one exponent shifts every degree by one, preserving order.
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Rewrites the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &VarContext) -> Result<LaurentPoly, LaurentError> {
        if *target == self.ctx {
            return Ok(self.clone());
        }
        let map = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = TermAccumulator::new(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            acc.add_term(Monomial::new(exps), c.clone());
        }
        Ok(acc.finish())
    }

    /// Substitutes polynomials for variables. Images must share one context,
    /// which becomes the result's; unassigned variables are carried over by name.
    pub fn substitute(
        &self,
        assignment: &HashMap<String, LaurentPoly>,
    ) -> Result<LaurentPoly, LaurentError> {
        let target = match assignment.values().next() {
            Some(p) => p.ctx.clone(),
            None => return Ok(self.clone()),
        };
        if assignment.values().any(|p| p.ctx != target) {
            return Err(LaurentError::ContextMismatch);
        }
        for name in assignment.keys() {
            self.ctx.index_of(name)?;
        }
        let mut images = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names().iter().enumerate() {
            let image = match assignment.get(name) {
                Some(p) => p.clone(),
                None => Self::var(&target, name)?,
            };
            let negative = self.terms.iter().any(|(m, _)| m.0[i] < 0);
            if negative && image.as_monomial().is_none() {
                return Err(LaurentError::NonUnitSubstitutionIntoNegativePower(name.clone()));
            }
            images.push(image);
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut acc = TermAccumulator::new(&target);
        for (m, c) in &self.terms {
            let mut term = LaurentPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let power = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].int_pow(e).expect("unit checked above"));
                term = &term * &*power;
            }
            acc.add_scaled(&term, &Rational::one());
        }
        Ok(acc.finish())
    }

    /// Integer power; negative exponents require a monomial.
    fn int_pow(&self, exp: i32) -> Option<LaurentPoly> {
        if exp >= 0 {
            return Some(self.pow(exp as u32));
        }
        let (m, c) = self.as_monomial()?;
        let k = -exp;
        let exps = m.0.iter().map(|&e| -e * k).collect();
        let coeff = num_traits::pow::Pow::pow(c.recip(), k as u32);
        Some(Self::monomial(&self.ctx, Monomial(exps), coeff))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let n = self.ctx.len();
        let mut min: Vec<i32> = match self.terms.first() {
            Some((m, _)) => m.0.to_vec(),
            None => return Monomial::one(n),
        };
        for (m, _) in &self.terms {
            for (lo, &e) in min.iter_mut().zip(m.0.iter()) {
                *lo = (*lo).min(e);
            }
        }
        Monomial::new(min)
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_ctx(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if let Some((m, c)) = divisor.as_monomial() {
            let inv = Monomial(m.0.iter().map(|e| -e).collect());
            return Ok(self.mul_term(&inv, &c.recip()));
        }
        let one = Rational::one();
        let f_content = self.monomial_content();
        let g_content = divisor.monomial_content();
        let f0 = self.mul_term(&Monomial(f_content.0.iter().map(|e| -e).collect()), &one);
        let g0 = divisor.mul_term(&Monomial(g_content.0.iter().map(|e| -e).collect()), &one);

        let (g_lead, g_coeff) = g0.leading_term().expect("nonzero divisor");
        let (g_lead, g_coeff) = (g_lead.clone(), g_coeff.clone());
        let mut rest = f0;
        let mut quotient = TermAccumulator::new(&self.ctx);
        while let Some((lead, coeff)) = rest.leading_term() {
            if !g_lead.divides(lead) {
                // This term can never be cancelled later: it lands in the remainder.
                return Err(LaurentError::NotDivisible);
            }
            let q_mono = lead.div(&g_lead);
            let q_coeff = coeff / &g_coeff;
            rest = rest.merge(&g0.mul_term(&q_mono, &q_coeff), true);
            quotient.add_term(q_mono, q_coeff);
        }
        let shift = f_content.div(&g_content);
        Ok(quotient.finish().mul_term(&shift, &one))
    }

    /// Evaluates at a point given positionally in context order.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, LaurentError> {
        assert_eq!(point.len(), self.ctx.len(), "point dimension");
        for (i, value) in point.iter().enumerate() {
            if value.is_zero() && self.terms.iter().any(|(m, _)| m.0[i] < 0) {
                return Err(LaurentError::ZeroAtNegativePower(self.ctx.name(i).to_string()));
            }
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    term *= num_traits::pow::Pow::pow(&point[i], e);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluates at a point given by name; every variable that occurs must be assigned.
    pub fn evaluate_named(&self, point: &HashMap<String, Rational>) -> Result<Rational, LaurentError> {
        let mut values = Vec::with_capacity(self.ctx.len());
        for (i, name) in self.ctx.names().iter().enumerate() {
            match point.get(name) {
                Some(v) => values.push(v.clone()),
                None if self.terms.iter().all(|(m, _)| m.0[i] == 0) => values.push(Rational::zero()),
                None => return Err(LaurentError::MissingValue(name.clone())),
            }
        }
        self.evaluate(&values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| JsonTerm {
                coeff: format_rational(c),
                exps: m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| (self.ctx.name(i).to_string(), e))
                    .collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("polynomial JSON is always serializable")
    }

    pub fn from_json(ctx: &VarContext, value: &serde_json::Value) -> Result<LaurentPoly, LaurentError> {
        let raw: Vec<JsonTerm> =
            serde_json::from_value(value.clone()).map_err(|e| LaurentError::Json(e.to_string()))?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let coeff = parse_rational(&t.coeff).map_err(|e| LaurentError::Json(e.to_string()))?;
            let mut exps = vec![0; ctx.len()];
            for (name, e) in t.exps {
                exps[ctx.index_of(&name)?] += e;
            }
            terms.push((exps, coeff));
        }
        Ok(Self::from_terms(ctx, terms))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    #[serde(default)]
    exps: std::collections::BTreeMap<String, i32>,
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| match e {
                    1 => self.ctx.name(i).to_string(),
                    _ => format!("{}^{}", self.ctx.name(i), e),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    /// Panics on context mismatch; use [`LaurentPoly::checked_add`] to handle it.
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("context mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("context mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("context mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_determinant(ctx: &VarContext, m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(ctx, m, 0, &cols)
}

fn det_rec(ctx: &VarContext, m: &[Vec<LaurentPoly>], row: usize, cols: &[usize]) -> LaurentPoly {
    match cols.len() {
        0 => LaurentPoly::one(ctx),
        1 => m[row][cols[0]].clone(),
        _ => {
            let mut acc = TermAccumulator::new(ctx);
            for (k, &c) in cols.iter().enumerate() {
                if m[row][c].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det_rec(ctx, m, row + 1, &rest);
                let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
                acc.add_product(&m[row][c], &minor, &sign);
            }
            acc.finish()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn xy() -> (VarContext, LaurentPoly, LaurentPoly) {
        let ctx = VarContext::new(&["x", "y"]).unwrap();
        let x = LaurentPoly::var(&ctx, "x").unwrap();
        let y = LaurentPoly::var(&ctx, "y").unwrap();
        (ctx, x, y)
    }

    fn inv(p: &LaurentPoly) -> LaurentPoly {
        p.int_pow(-1).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
        assert!((&rhs + &(-&rhs)).is_zero());
    }

    #[test]
    fn coordinate_product_is_a_monomial() {
        let ctx = VarContext::matrix(3, &[]);
        let p = &LaurentPoly::var(&ctx, "x11").unwrap() * &LaurentPoly::var(&ctx, "x13").unwrap();
        let (m, c) = p.as_monomial().unwrap();
        assert!(c.is_one());
        assert_eq!(m.exps()[0], 1);
        assert_eq!(m.exps()[2], 1);
        assert_eq!(m.degree(), 2);
    }

    #[test]
    fn derivatives() {
        let (ctx, x, y) = xy();
        let x2y = &(&x * &x) * &y;
        assert_eq!(x2y.partial_derivative("x").unwrap(), (&x * &y).scale(&int(2)));
        assert!(y.partial_derivative("x").unwrap().is_zero());
        let d = inv(&x).partial_derivative("x").unwrap();
        assert_eq!(d, inv(&(&x * &x)).scale(&int(-1)));
        assert_eq!(
            x.partial_derivative("q"),
            Err(LaurentError::UnknownVariable("q".into()))
        );
        assert_eq!(LaurentPoly::constant(&ctx, int(3)).partial_derivative_at(0), LaurentPoly::zero(&ctx));
    }

    #[test]
    fn substitution() {
        let ctx = VarContext::matrix(3, &[]);
        let big = VarContext::matrix(3, &["t", "z"]);
        let x11 = LaurentPoly::var(&ctx, "x11").unwrap();
        let image = &(&LaurentPoly::var(&big, "t").unwrap() * &LaurentPoly::var(&big, "z").unwrap())
            * &LaurentPoly::var(&big, "x11").unwrap();
        let mut a = HashMap::new();
        a.insert("x11".to_string(), image.clone());
        assert_eq!(x11.substitute(&a).unwrap(), image);

        let (_, x, y) = xy();
        let mut id = HashMap::new();
        id.insert("x".to_string(), x.clone());
        let f = &(&x * &y) + &inv(&y);
        assert_eq!(f.substitute(&id).unwrap(), f);

        let mut bad = HashMap::new();
        bad.insert("x".to_string(), &x + &y);
        assert_eq!(
            inv(&x).substitute(&bad),
            Err(LaurentError::NonUnitSubstitutionIntoNegativePower("x".into()))
        );
    }

    #[test]
    fn division() {
        let (_, x, y) = xy();
        let f = &(&x * &x) - &(&y * &y);
        assert_eq!(f.exact_divide(&(&x - &y)).unwrap(), &x + &y);
        assert_eq!(x.exact_divide(&y).unwrap(), &x * &inv(&y));
        let two_y = y.scale(&int(2));
        assert_eq!(
            (&x + &y).exact_divide(&(&x + &two_y)),
            Err(LaurentError::NotDivisible)
        );
        assert_eq!(x.exact_divide(&(&x - &x)), Err(LaurentError::DivisionByZero));
        // Monomial content on both sides.
        let g = &(&x + &y) * &inv(&(&x * &y));
        let h = &(&(&x - &y) * &g) * &(&y * &y);
        assert_eq!(h.exact_divide(&g).unwrap(), &(&x - &y) * &(&y * &y));
    }

    #[test]
    fn evaluation() {
        let (_, x, y) = xy();
        assert_eq!((&x + &y).evaluate(&[int(1), int(2)]).unwrap(), int(3));
        assert_eq!(inv(&x).evaluate(&[int(2), int(0)]).unwrap(), rat(1, 2));
        assert_eq!(
            inv(&x).evaluate(&[int(0), int(1)]),
            Err(LaurentError::ZeroAtNegativePower("x".into()))
        );
        let ctx = VarContext::matrix(3, &[]);
        let v = |n: &str| LaurentPoly::var(&ctx, n).unwrap();
        let p7 = &(&v("x13") * &v("x31")) - &(&v("x21") * &v("x23"));
        let mut identity = HashMap::new();
        for i in 1..=3 {
            for j in 1..=3 {
                identity.insert(entry_name(i, j), if i == j { int(1) } else { int(0) });
            }
        }
        assert_eq!(p7.evaluate_named(&identity).unwrap(), int(0));
    }

    #[test]
    fn display_and_json() {
        let (ctx, x, y) = xy();
        let f = &(&(&x * &x).scale(&rat(-2, 3)) + &inv(&y)) + &LaurentPoly::constant(&ctx, int(5));
        assert_eq!(f.to_string(), "-2/3*x^2 + 5 + y^-1");
        let back = LaurentPoly::from_json(&ctx, &f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(LaurentPoly::zero(&ctx).to_string(), "0");
    }

    #[test]
    fn determinant_of_two_by_two() {
        let ctx = VarContext::matrix(2, &[]);
        let m: Vec<Vec<LaurentPoly>> = (1..=2)
            .map(|i| (1..=2).map(|j| LaurentPoly::var(&ctx, &entry_name(i, j)).unwrap()).collect())
            .collect();
        let det = poly_determinant(&ctx, &m);
        let expected = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        assert_eq!(det, expected);
    }
}
