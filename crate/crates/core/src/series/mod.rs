//! Truncated power series in the invariant `u` (or any single commuting
//! variable) with exact complex-rational coefficients.
//!
//! A series of order `K` knows its coefficients exactly up to `u^K`.
//! Binary operations take the smaller order; differentiation loses one
//! order and multiplication by `u` gains one.

mod parse;
mod recurrence;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::coeff::ExactComplex;

pub use parse::{parse_series, ParseError};
pub(crate) use recurrence::g2_closed_form;
pub use recurrence::{
    g1_from_f, g2_from_f, g3_from_f, phi2_from_phi1, phi_bundle, solve_f_for_phi1, SeriesBundle, TransformSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("reciprocal of a series with zero constant term")]
    ZeroConstantTerm,
    #[error("square root needs a positive rational square constant term, got {0}")]
    NonSquareConstant(String),
    #[error("series of order 0 has no known derivative")]
    OrderExhausted,
    #[error("series must vanish at u = 0 (constant term {0})")]
    NonzeroAtOrigin(String),
    #[error("series must equal 1 at u = 0 (constant term {0})")]
    NotUnitAtOrigin(String),
    #[error("transform with F0 != 0 needs the operator engine to produce phi3")]
    Phi3NeedsTransform,
    #[error("series order {have} is below the required {need}")]
    InsufficientOrder { have: usize, need: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactComplex>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![ExactComplex::zero(); order + 1] }
    }

    pub fn constant(value: ExactComplex, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ExactComplex::one(), order)
    }

    /// `u` itself (zero when `order == 0`).
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = ExactComplex::one();
        }
        s
    }

    /// Polynomial with the given low coefficients, known to `order`.
    pub fn from_coeffs(coeffs: Vec<ExactComplex>, order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    /// Polynomial from `(numerator, denominator)` pairs, real coefficients.
    pub fn from_rationals(coeffs: &[(i64, i64)], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&(n, d)| ExactComplex::ratio(n, d)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &ExactComplex {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[ExactComplex] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactComplex::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Equality modulo `u^(order+1)`, at the lower of both known orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let k = self.order().min(other.order());
        self.coeffs[..=k] == other.coeffs[..=k]
    }

    pub fn scale(&self, c: &ExactComplex) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `u`: order increases by one.
    pub fn mul_u(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ExactComplex::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// `d/du`, known to one order less.
    pub fn derivative(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderExhausted);
        }
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(n, c)| c.mul_gauss(n as i128, 0)).collect() })
    }

    /// Euler operator `u d/du`, exact at the same order.
    pub fn euler(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c.mul_gauss(n as i128, 0)).collect() }
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].inv().ok_or(SeriesError::ZeroConstantTerm)?;
        let k = self.order();
        let mut out = vec![ExactComplex::zero(); k + 1];
        out[0] = inv0.clone();
        for n in 1..=k {
            let mut acc = ExactComplex::zero();
            for j in 1..=n {
                acc += &(&self.coeffs[j] * &out[n - j]);
            }
            out[n] = -(&acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Principal square root; the constant term must be a positive rational square.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        let root = if c0.is_real() && c0.re.is_positive() { rational_sqrt(&c0.re) } else { None };
        let s0 = ExactComplex::from_rational(root.ok_or_else(|| SeriesError::NonSquareConstant(c0.to_string()))?);
        let inv2s0 = s0.mul_gauss(2, 0).inv().expect("nonzero");
        let k = self.order();
        let mut out = vec![ExactComplex::zero(); k + 1];
        out[0] = s0;
        for n in 1..=k {
            let mut acc = self.coeffs[n].clone();
            for j in 1..n {
                acc -= &(&out[j] * &out[n - j]);
            }
            out[n] = &acc * &inv2s0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.reciprocal()?)
    }

    pub fn render(&self) -> String {
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = int_sqrt(r.numer())?;
    let d = int_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match n {
                0 => c.to_string(),
                1 => format!("{c}*u"),
                _ => format!("{c}*u^{n}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(u^{})", parts.join(" + "), self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let k = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=k).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let k = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=k).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let k = self.order().min(rhs.order());
        let mut out = vec![ExactComplex::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl TruncatedSeries {
    pub(crate) fn constant_term_is_zero(&self) -> bool {
        self.coeffs[0].is_zero()
    }
}
