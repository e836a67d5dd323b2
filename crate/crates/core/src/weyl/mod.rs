//! Normal-ordered arithmetic in the algebra generated by the Heisenberg pairs
//! `x[mu]`, `p[mu]` and the tensorial Lorentz generators `xh[mu,nu]`.
//!
//! Relations:
//! * `[x_mu, p_nu] = i eta_munu`, coordinates commute, momenta commute;
//! * `[xh_mn, xh_rs] = i(eta_mr xh_ns - eta_ms xh_nr - eta_nr xh_ms + eta_ns xh_mr)`;
//! * `xh` commutes with every `x` and `p`.
//!
//! Elements are sparse maps from [`NormalMonomial`] to exact coefficients,
//! truncated at a parameter grade. The PBW form is unique, so equality of
//! elements is equality of their maps.

mod gauss;
mod metric;
mod monomial;
mod product;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::coeff::{Coefficient, ExactComplex, ParamExponent};

pub use metric::{Metric, MAX_DIM, MIN_DIM};
pub use monomial::NormalMonomial;

use product::{monomial_product, XhatCache};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension {0} not supported (expected 2..=6)")]
    UnsupportedDimension(usize),
    #[error("metric signature entries must be +1 or -1")]
    BadSignature,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("xh[{0},{0}] is not a generator")]
    DiagonalTensor(usize),
    #[error("metric mismatch between operands")]
    MetricMismatch,
    #[error("grade mismatch between operands: {0} vs {1}")]
    GradeMismatch(u32, u32),
    #[error("cannot raise grade from {from} to {to}")]
    GradeIncrease { from: u32, to: u32 },
}

/// The three generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    X(usize),
    P(usize),
    Xhat(usize, usize),
}

/// Exact normal-ordered element truncated at `grade`.
#[derive(Clone)]
pub struct AlgebraElement {
    metric: Arc<Metric>,
    grade: u32,
    terms: BTreeMap<NormalMonomial, ExactComplex>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.grade == other.grade && self.metric == other.metric && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(metric: Arc<Metric>, grade: u32) -> Self {
        AlgebraElement { metric, grade, terms: BTreeMap::new() }
    }

    /// Single term `value * param * word`; dropped when above the grade.
    pub fn monomial(metric: Arc<Metric>, grade: u32, mono: NormalMonomial, value: ExactComplex) -> Self {
        let mut e = Self::zero(metric, grade);
        if mono.weight() <= grade && !value.is_zero() {
            e.terms.insert(mono, value);
        }
        e
    }

    pub fn from_terms(metric: Arc<Metric>, grade: u32, terms: impl IntoIterator<Item = (NormalMonomial, ExactComplex)>) -> Self {
        let mut e = Self::zero(metric, grade);
        for (m, c) in terms {
            if m.weight() <= grade {
                e.accumulate(m, &c);
            }
        }
        e
    }

    pub fn metric(&self) -> &Arc<Metric> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn grade(&self) -> u32 {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, mono: &NormalMonomial) -> Option<&ExactComplex> {
        self.terms.get(mono)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(NormalMonomial::weight).max()
    }

    pub fn max_xhat_degree(&self) -> u32 {
        self.terms.keys().map(NormalMonomial::xhat_degree).max().unwrap_or(0)
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(NormalMonomial::x_degree).max().unwrap_or(0)
    }

    fn accumulate(&mut self, m: NormalMonomial, c: &ExactComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.metric != other.metric {
            return Err(AlgebraError::MetricMismatch);
        }
        if self.grade != other.grade {
            return Err(AlgebraError::GradeMismatch(self.grade, other.grade));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), &-c);
        }
        Ok(out)
    }

    /// PBW-normal-ordered product truncated at the common grade.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.mul_counting(other).map(|(e, _)| e)
    }

    /// Product together with the number of tensorial rewrite steps it took.
    pub fn mul_counting(&self, other: &Self) -> Result<(Self, u64), AlgebraError> {
        self.check_compatible(other)?;
        let grade = self.grade;
        let mut out = BTreeMap::new();
        let mut cache = XhatCache::default();
        let right: Vec<(&NormalMonomial, &ExactComplex)> = other.terms.iter().collect();
        for (ma, ca) in &self.terms {
            let wa = ma.weight();
            if wa > grade {
                continue;
            }
            let room = grade - wa;
            for (mb, cb) in &right {
                // terms are sorted by weight first
                if mb.weight() > room {
                    break;
                }
                let c = ca * *cb;
                monomial_product(&self.metric, ma, mb, &c, &mut cache, &mut out);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok((AlgebraElement { metric: self.metric.clone(), grade, terms: out }, cache.rewrites))
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        let mut out = Self::zero(self.metric.clone(), self.grade);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, num: i64, den: i64) -> Self {
        self.scale(&ExactComplex::ratio(num, den))
    }

    /// Multiply by a parameter polynomial (commutes with everything).
    pub fn mul_coefficient(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.metric.clone(), self.grade);
        for (pe, v) in c.terms() {
            if pe.weight() > self.grade {
                continue;
            }
            for (m, w) in &self.terms {
                if m.weight() + pe.weight() > self.grade {
                    continue;
                }
                let shifted = shift_param(m, pe);
                out.accumulate(shifted, &(w * v));
            }
        }
        out
    }

    /// Drop every term above `grade`; the grade can only be lowered.
    pub fn truncate(&self, grade: u32) -> Result<Self, AlgebraError> {
        if grade > self.grade {
            return Err(AlgebraError::GradeIncrease { from: self.grade, to: grade });
        }
        Ok(AlgebraElement {
            metric: self.metric.clone(),
            grade,
            terms: self.terms.iter().filter(|(m, _)| m.weight() <= grade).map(|(m, c)| (m.clone(), c.clone())).collect(),
        })
    }

    /// Keep only terms satisfying `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&NormalMonomial) -> bool) -> Self {
        AlgebraElement {
            metric: self.metric.clone(),
            grade: self.grade,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Specialization `a_mu -> 0`.
    pub fn drop_a_terms(&self) -> Self {
        self.filter_terms(|m| m.a_exps().iter().all(|&e| e == 0))
    }

    /// Specialization `b -> 0`.
    pub fn drop_beta_terms(&self) -> Self {
        self.filter_terms(|m| m.beta_pow() == 0)
    }

    /// Formal adjoint: reverse every word, conjugate the coefficient, then
    /// normal order again. All generators and parameters are self-adjoint.
    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let np = self.metric.num_pairs();
        let mut out = Self::zero(self.metric.clone(), self.grade);
        let zero_param = ParamExponent::one(d);
        for (m, c) in &self.terms {
            let p_block = NormalMonomial::from_parts(&zero_param, &vec![0; np], &vec![0; d], m.p_exps());
            let x_block = NormalMonomial::from_parts(&zero_param, &vec![0; np], m.x_exps(), &vec![0; d]);
            let mut word = Self::monomial(self.metric.clone(), self.grade, p_block, ExactComplex::one())
                .try_mul(&Self::monomial(self.metric.clone(), self.grade, x_block, ExactComplex::one()))
                .expect("same space");
            // reversed tensorial word: generators from highest to lowest
            for (k, &e) in m.xhat_exps().iter().enumerate().rev() {
                for _ in 0..e {
                    let mut xh = vec![0u16; np];
                    xh[k] = 1;
                    let g = NormalMonomial::from_parts(&zero_param, &xh, &vec![0; d], &vec![0; d]);
                    word = word
                        .try_mul(&Self::monomial(self.metric.clone(), self.grade, g, ExactComplex::one()))
                        .expect("same space");
                }
            }
            let param = m.param();
            for (wm, wc) in word.terms {
                out.accumulate(shift_param(&wm, &param), &(&wc * &c.conj()));
            }
        }
        out
    }

    /// `1/2 (A + A^dagger)`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_rational(1, 2)
    }

    /// Action on the unit function: `p ⊳ 1 = 0`, `x` and `xh` become
    /// commuting coordinates.
    pub fn act_on_unity(&self) -> CommutativePolynomial {
        CommutativePolynomial {
            metric: self.metric.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.p_degree() == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Deterministic text form (weight, then lexicographic monomial order).
    pub fn render(&self) -> String {
        render_terms(&self.metric, self.terms.iter())
    }
}

fn shift_param(m: &NormalMonomial, pe: &ParamExponent) -> NormalMonomial {
    let d = m.dim();
    let mut exps: monomial::Exps = SmallVec::from_slice(m.exps());
    exps[0] += pe.beta_pow as u16;
    for mu in 0..d {
        exps[1 + mu] += pe.a_pow[mu] as u16;
    }
    NormalMonomial::from_exps(d, exps)
}

fn render_terms<'a>(metric: &Metric, terms: impl Iterator<Item = (&'a NormalMonomial, &'a ExactComplex)>) -> String {
    let mut out = String::new();
    for (i, (m, c)) in terms.enumerate() {
        let negative = c.is_negative_like();
        let mag = if negative { -c } else { c.clone() };
        let word = m.render(metric);
        let body = if word == "1" {
            mag.to_string()
        } else if mag.is_one() {
            word
        } else {
            format!("{mag}*{word}")
        };
        match (i, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement(grade {}: {})", self.grade, self.render())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("incompatible operands")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("incompatible operands")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_mul(rhs).expect("incompatible operands")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&ExactComplex::from_integer(-1))
    }
}

/// Result of the vacuum action: a commuting polynomial in `x[mu]` and
/// `x[mu,nu]` with parameter-graded coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutativePolynomial {
    metric: Arc<Metric>,
    terms: BTreeMap<NormalMonomial, ExactComplex>,
}

impl CommutativePolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &ExactComplex)> {
        self.terms.iter()
    }

    /// Rendered with `x[mu,nu]` for the commuting images of `xh[mu,nu]`.
    pub fn render(&self) -> String {
        render_terms(&self.metric, self.terms.iter()).replace("xh[", "x[")
    }
}

/// Indexed families that can be contracted with the metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    X,
    P,
    A,
    /// `xh[mu, alpha]` for fixed `mu`.
    XhatRow(usize),
}

/// Factory for elements of a fixed metric and grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    metric: Arc<Metric>,
    grade: u32,
}

impl Algebra {
    pub fn new(metric: Metric, grade: u32) -> Self {
        Algebra { metric: Arc::new(metric), grade }
    }

    pub fn from_arc(metric: Arc<Metric>, grade: u32) -> Self {
        Algebra { metric, grade }
    }

    pub fn metric(&self) -> &Arc<Metric> {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn grade(&self) -> u32 {
        self.grade
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.metric.clone(), self.grade)
    }

    pub fn scalar(&self, value: ExactComplex) -> AlgebraElement {
        AlgebraElement::monomial(self.metric.clone(), self.grade, NormalMonomial::unit(self.dim()), value)
    }

    pub fn one(&self) -> AlgebraElement {
        self.scalar(ExactComplex::one())
    }

    pub fn param(&self, pe: &ParamExponent, value: ExactComplex) -> AlgebraElement {
        let d = self.dim();
        let np = self.metric.num_pairs();
        let m = NormalMonomial::from_parts(pe, &vec![0; np], &vec![0; d], &vec![0; d]);
        AlgebraElement::monomial(self.metric.clone(), self.grade, m, value)
    }

    pub fn coefficient(&self, c: &Coefficient) -> AlgebraElement {
        self.one().mul_coefficient(c)
    }

    /// `b^k`
    pub fn beta_pow(&self, k: u32) -> AlgebraElement {
        self.param(&ParamExponent::beta(self.dim(), k), ExactComplex::one())
    }

    pub fn a(&self, mu: usize) -> AlgebraElement {
        self.param(&ParamExponent::a(self.dim(), mu), ExactComplex::one())
    }

    pub fn generator(&self, g: Generator) -> Result<AlgebraElement, AlgebraError> {
        let d = self.dim();
        let np = self.metric.num_pairs();
        let check = |i: usize| if i < d { Ok(()) } else { Err(AlgebraError::IndexOutOfRange { index: i, dim: d }) };
        let zero_param = ParamExponent::one(d);
        let (mono, sign) = match g {
            Generator::X(mu) => {
                check(mu)?;
                let mut x = vec![0; d];
                x[mu] = 1;
                (NormalMonomial::from_parts(&zero_param, &vec![0; np], &x, &vec![0; d]), 1)
            }
            Generator::P(mu) => {
                check(mu)?;
                let mut p = vec![0; d];
                p[mu] = 1;
                (NormalMonomial::from_parts(&zero_param, &vec![0; np], &vec![0; d], &p), 1)
            }
            Generator::Xhat(mu, nu) => {
                check(mu)?;
                check(nu)?;
                let (k, sign) = self.metric.signed_pair(mu, nu).ok_or(AlgebraError::DiagonalTensor(mu))?;
                let mut xh = vec![0; np];
                xh[k] = 1;
                (NormalMonomial::from_parts(&zero_param, &xh, &vec![0; d], &vec![0; d]), sign)
            }
        };
        Ok(AlgebraElement::monomial(self.metric.clone(), self.grade, mono, ExactComplex::from_integer(sign)))
    }

    /// `x[mu]`; panics on an out-of-range index.
    pub fn x(&self, mu: usize) -> AlgebraElement {
        self.generator(Generator::X(mu)).expect("index in range")
    }

    pub fn p(&self, mu: usize) -> AlgebraElement {
        self.generator(Generator::P(mu)).expect("index in range")
    }

    /// `xh[mu,nu]` with `xh[mu,mu] = 0`.
    pub fn xhat(&self, mu: usize, nu: usize) -> AlgebraElement {
        if mu == nu {
            return self.zero();
        }
        self.generator(Generator::Xhat(mu, nu)).expect("index in range")
    }

    fn family(&self, f: Family, alpha: usize) -> AlgebraElement {
        match f {
            Family::X => self.x(alpha),
            Family::P => self.p(alpha),
            Family::A => self.a(alpha),
            Family::XhatRow(mu) => self.xhat(mu, alpha),
        }
    }

    /// `sum_alpha eta_alpha,alpha A_alpha B_alpha`, factors kept in the written order.
    pub fn contract(&self, left: Family, right: Family) -> AlgebraElement {
        self.contract_with(|a| self.family(left, a), |a| self.family(right, a))
    }

    pub fn contract_with(
        &self,
        left: impl Fn(usize) -> AlgebraElement,
        right: impl Fn(usize) -> AlgebraElement,
    ) -> AlgebraElement {
        let mut acc = self.zero();
        for alpha in 0..self.dim() {
            let eta = self.metric.eta(alpha, alpha);
            let term = &left(alpha) * &right(alpha);
            acc = &acc + &term.scale(&ExactComplex::from_integer(eta));
        }
        acc
    }

    /// `x.p`
    pub fn dot_xp(&self) -> AlgebraElement {
        self.contract(Family::X, Family::P)
    }

    /// `p^2`
    pub fn p_squared(&self) -> AlgebraElement {
        self.contract(Family::P, Family::P)
    }

    /// `a^2` as a pure parameter element.
    pub fn a_squared(&self) -> AlgebraElement {
        self.contract(Family::A, Family::A)
    }

    /// `u = b^2 p^2`.
    pub fn u(&self) -> AlgebraElement {
        &self.beta_pow(2) * &self.p_squared()
    }

    /// Lorentz generator `x_mu p_nu - x_nu p_mu`.
    pub fn orbital(&self, mu: usize, nu: usize) -> AlgebraElement {
        &(&self.x(mu) * &self.p(nu)) - &(&self.x(nu) * &self.p(mu))
    }
}
