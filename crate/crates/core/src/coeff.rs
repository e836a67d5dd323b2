//! Exact complex-rational scalars and coefficients graded by the formal
//! deformation parameters `b` (beta) and `a[0..d]`.
//!
//! A [`Coefficient`] is a polynomial in the parameters with [`ExactComplex`]
//! values. Every monomial carries a weight, `wt(b) = wt(a_mu) = 1`, and
//! products are truncated at a caller supplied grade.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("parameter dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Complex number with arbitrary precision rational parts.
///
/// `BigRational` keeps both parts reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactComplex { re, im }
    }

    pub fn zero() -> Self {
        ExactComplex { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactComplex { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        ExactComplex { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactComplex { re: r, im: BigRational::zero() }
    }

    /// `num / den` as a real value. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn imaginary(r: BigRational) -> Self {
        ExactComplex { re: BigRational::zero(), im: r }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(ExactComplex { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    /// Multiply by the Gaussian integer `re + i im`.
    pub fn mul_gauss(&self, re: i128, im: i128) -> Self {
        if im == 0 {
            let r = BigRational::from_integer(BigInt::from(re));
            return ExactComplex { re: &self.re * &r, im: &self.im * &r };
        }
        if re == 0 {
            let s = BigRational::from_integer(BigInt::from(im));
            return ExactComplex { re: -(&self.im * &s), im: &self.re * &s };
        }
        let a = BigRational::from_integer(BigInt::from(re));
        let b = BigRational::from_integer(BigInt::from(im));
        ExactComplex { re: &self.re * &a - &self.im * &b, im: &self.re * &b + &self.im * &a }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        ExactComplex { re: &self.re * r, im: &self.im * r }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Leading sign for text rendering: a purely real or purely imaginary
    /// value is "negative" when its only nonzero part is.
    pub(crate) fn is_negative_like(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            return write!(f, "{im}");
        }
        if self.im.is_negative() {
            write!(f, "({}{})", fmt_rational(&self.re), im)
        } else {
            write!(f, "({}+{})", fmt_rational(&self.re), im)
        }
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactComplex { re: &self.re * &rhs.re, im: BigRational::zero() };
        }
        ExactComplex { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Exponents of `b` and of each `a[mu]` in a parameter monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamExponent {
    pub beta_pow: u32,
    pub a_pow: Vec<u32>,
}

impl ParamExponent {
    pub fn one(dim: usize) -> Self {
        ParamExponent { beta_pow: 0, a_pow: vec![0; dim] }
    }

    pub fn beta(dim: usize, pow: u32) -> Self {
        ParamExponent { beta_pow: pow, a_pow: vec![0; dim] }
    }

    pub fn a(dim: usize, mu: usize) -> Self {
        let mut a_pow = vec![0; dim];
        a_pow[mu] = 1;
        ParamExponent { beta_pow: 0, a_pow }
    }

    pub fn dim(&self) -> usize {
        self.a_pow.len()
    }

    /// Truncation weight: total degree in `b` and all `a[mu]`.
    pub fn weight(&self) -> u32 {
        self.beta_pow + self.a_pow.iter().sum::<u32>()
    }

    pub fn mul(&self, other: &ParamExponent) -> ParamExponent {
        ParamExponent {
            beta_pow: self.beta_pow + other.beta_pow,
            a_pow: self.a_pow.iter().zip(&other.a_pow).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn is_beta_only(&self) -> bool {
        self.a_pow.iter().all(|&e| e == 0)
    }
}

impl Ord for ParamExponent {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.beta_pow.cmp(&other.beta_pow))
            .then_with(|| self.a_pow.cmp(&other.a_pow))
    }
}

impl PartialOrd for ParamExponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ParamExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        push_power(&mut parts, "b".to_string(), self.beta_pow);
        for (mu, &e) in self.a_pow.iter().enumerate() {
            push_power(&mut parts, format!("a[{mu}]"), e);
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

pub(crate) fn push_power(parts: &mut Vec<String>, name: String, e: u32) {
    match e {
        0 => {}
        1 => parts.push(name),
        _ => parts.push(format!("{name}^{e}")),
    }
}

/// Polynomial in the formal parameters with exact complex values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coefficient {
    dim: usize,
    terms: BTreeMap<ParamExponent, ExactComplex>,
}

impl Coefficient {
    pub fn zero(dim: usize) -> Self {
        Coefficient { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, value: ExactComplex) -> Self {
        Self::monomial(ParamExponent::one(dim), value)
    }

    pub fn monomial(param: ParamExponent, value: ExactComplex) -> Self {
        let dim = param.dim();
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(param, value);
        }
        Coefficient { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamExponent, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn get(&self, param: &ParamExponent) -> Option<&ExactComplex> {
        self.terms.get(param)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(ParamExponent::weight).max()
    }

    pub fn add(&self, other: &Coefficient) -> Result<Coefficient, CoeffError> {
        if self.dim != other.dim {
            return Err(CoeffError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Coefficient {
        Coefficient { dim: self.dim, terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    /// Product with every entry of weight above `grade` discarded.
    pub fn mul(&self, other: &Coefficient, grade: u32) -> Result<Coefficient, CoeffError> {
        if self.dim != other.dim {
            return Err(CoeffError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Coefficient::zero(self.dim);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                if ka.weight() + kb.weight() > grade {
                    continue;
                }
                out.accumulate(ka.mul(kb), &(va * vb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactComplex) -> Coefficient {
        let mut out = Coefficient::zero(self.dim);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), &(v * c));
        }
        out
    }

    pub fn conjugate(&self) -> Coefficient {
        Coefficient { dim: self.dim, terms: self.terms.iter().map(|(k, v)| (k.clone(), v.conj())).collect() }
    }

    /// Drop every entry with weight above `grade`.
    pub fn truncate(&self, grade: u32) -> Coefficient {
        Coefficient {
            dim: self.dim,
            terms: self.terms.iter().filter(|(k, _)| k.weight() <= grade).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Substitute exact values for `b` and `a[mu]`.
    pub fn evaluate(&self, beta: &BigRational, a: &[BigRational]) -> ExactComplex {
        let mut total = ExactComplex::zero();
        for (k, v) in &self.terms {
            let mut w = num_traits::pow(beta.clone(), k.beta_pow as usize);
            for (ai, &e) in a.iter().zip(&k.a_pow) {
                w *= num_traits::pow(ai.clone(), e as usize);
            }
            total += &v.scale(&w);
        }
        total
    }

    fn accumulate(&mut self, key: ParamExponent, value: &ExactComplex) {
        if value.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += value;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, value.clone());
            }
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(k, v)| if k.weight() == 0 { v.to_string() } else { format!("{v}*{k}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: i64, d: i64) -> ExactComplex {
        ExactComplex::ratio(n, d)
    }

    #[test]
    fn halves_of_beta_squared_add_up() {
        let half = Coefficient::monomial(ParamExponent::beta(4, 2), c(1, 2));
        let sum = half.add(&half).unwrap();
        assert_eq!(sum, Coefficient::monomial(ParamExponent::beta(4, 2), c(1, 1)));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let x = Coefficient::monomial(ParamExponent::a(4, 0), c(3, 4));
        assert_eq!(x.add(&Coefficient::zero(4)).unwrap(), x);
        let y = Coefficient::monomial(ParamExponent::a(4, 0), c(-3, 4));
        assert!(x.add(&y).unwrap().is_zero());
    }

    #[test]
    fn product_truncates_by_weight() {
        let b2 = Coefficient::monomial(ParamExponent::beta(2, 2), ExactComplex::one());
        let b4 = Coefficient::monomial(ParamExponent::beta(2, 4), ExactComplex::one());
        assert_eq!(b2.mul(&b2, 4).unwrap(), b4);
        assert!(b2.mul(&b2, 3).unwrap().is_zero());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let ia = Coefficient::monomial(ParamExponent::a(3, 0), ExactComplex::i());
        let sq = ia.mul(&ia, 2).unwrap();
        let expected = Coefficient::monomial(ParamExponent::a(3, 0).mul(&ParamExponent::a(3, 0)), c(-1, 1));
        assert_eq!(sq, expected);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let x = Coefficient::constant(3, ExactComplex::one());
        let y = Coefficient::constant(4, ExactComplex::one());
        assert_eq!(x.add(&y), Err(CoeffError::DimensionMismatch(3, 4)));
        assert_eq!(x.mul(&y, 2), Err(CoeffError::DimensionMismatch(3, 4)));
    }

    #[test]
    fn conjugation_examples() {
        let ib2 = Coefficient::monomial(ParamExponent::beta(2, 2), ExactComplex::i());
        assert_eq!(ib2.conjugate(), Coefficient::monomial(ParamExponent::beta(2, 2), -ExactComplex::i()));
        let real = Coefficient::constant(2, c(3, 5));
        assert_eq!(real.conjugate(), real);
        let one_plus_i = ExactComplex::new(c(1, 1).re, c(1, 1).re);
        let x = Coefficient::monomial(ParamExponent::a(2, 1), one_plus_i.clone());
        assert_eq!(x.conjugate(), Coefficient::monomial(ParamExponent::a(2, 1), one_plus_i.conj()));
    }

    #[test]
    fn display_forms() {
        assert_eq!(c(-1, 2).to_string(), "-1/2");
        assert_eq!(ExactComplex::i().to_string(), "i");
        assert_eq!((-ExactComplex::i()).to_string(), "-i");
        assert_eq!(ExactComplex::new(c(1, 2).re, c(-3, 1).re).to_string(), "(1/2-3i)");
    }

    fn arb_complex() -> impl Strategy<Value = ExactComplex> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, x, y)| ExactComplex::new(c(a, b).re, c(x, y).re))
    }

    fn arb_coeff() -> impl Strategy<Value = Coefficient> {
        proptest::collection::vec((0u32..3, 0u32..3, 0u32..2, arb_complex()), 0..5).prop_map(|v| {
            let mut out = Coefficient::zero(2);
            for (b, a0, a1, val) in v {
                let pe = ParamExponent { beta_pow: b, a_pow: vec![a0, a1] };
                out = out.add(&Coefficient::monomial(pe, val)).unwrap();
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_hold_at_fixed_grade(x in arb_coeff(), y in arb_coeff(), z in arb_coeff(), grade in 0u32..7) {
            let xy_z = x.mul(&y, grade).unwrap().mul(&z, grade).unwrap();
            let x_yz = x.mul(&y.mul(&z, grade).unwrap(), grade).unwrap();
            prop_assert_eq!(xy_z, x_yz);
            prop_assert_eq!(x.mul(&y, grade).unwrap(), y.mul(&x, grade).unwrap());
            let lhs = x.mul(&y.add(&z).unwrap(), grade).unwrap();
            let rhs = x.mul(&y, grade).unwrap().add(&x.mul(&z, grade).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn conjugation_is_an_involution(x in arb_coeff()) {
            prop_assert_eq!(x.conjugate().conjugate(), x);
        }

        #[test]
        fn truncation_is_multiplicative(x in arb_coeff(), y in arb_coeff(), grade in 0u32..6) {
            let full = x.mul(&y, u32::MAX).unwrap().truncate(grade);
            let cut = x.truncate(grade).mul(&y.truncate(grade), grade).unwrap();
            prop_assert_eq!(full, cut);
        }
    }
}
