//! Series produced by conjugating `x_mu` and `p_mu` with `exp(i (x.p) F(u))`.
//!
//! With `theta = u d/du` the iterated commutators satisfy
//!
//! ```text
//! g1_{n+1} = F (g1_n - 2 theta g1_n)                       g1_0 = 1
//! g3_{n+1} = -F (g3_n + 2 theta g3_n)                      g3_0 = 1
//! g2_{n+1} = 2F' g1_n + 2 (theta F) g2_n - F g2_n - 2 F theta g2_n,   g2_0 = 0
//! ```
//!
//! and `g_i = sum_n g_in / n!`. Because `F(0) = 0` every step raises the
//! `u`-valuation by one, so the sums are finite modulo `u^(K+1)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::ExactComplex;

use super::{SeriesError, TruncatedSeries};

/// Generator data of a similarity transform, `G = F0(u) + (x.p) F(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformSpec {
    pub f0: TruncatedSeries,
    pub f: TruncatedSeries,
}

impl TransformSpec {
    pub fn new(f0: TruncatedSeries, f: TruncatedSeries) -> Result<Self, SeriesError> {
        for s in [&f0, &f] {
            if !s.constant_term_is_zero() {
                return Err(SeriesError::NonzeroAtOrigin(s.coeff(0).to_string()));
            }
        }
        Ok(TransformSpec { f0, f })
    }

    /// `F0 = 0`.
    pub fn from_f(f: TruncatedSeries) -> Result<Self, SeriesError> {
        let order = f.order();
        Self::new(TruncatedSeries::zero(order), f)
    }

    pub fn identity(order: usize) -> Self {
        TransformSpec { f0: TruncatedSeries::zero(order), f: TruncatedSeries::zero(order) }
    }
}

/// The `phi` functions of a realization `x phi1 + b^2 (x.p) p phi2 + b^2 p phi3`
/// together with the conjugation series `g1`, `g2`, `g3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesBundle {
    pub phi1: TruncatedSeries,
    pub phi2: TruncatedSeries,
    pub phi3: TruncatedSeries,
    pub g1: TruncatedSeries,
    pub g2: TruncatedSeries,
    pub g3: TruncatedSeries,
}

impl SeriesBundle {
    /// Bundle determined by the three `phi` series; the `g` series follow from
    /// `g1 = phi1`, `g3 = 1/g1` and `g2 = 2 g1' g1 / (g1 - 2u g1')`.
    pub fn from_phis(phi1: TruncatedSeries, phi2: TruncatedSeries, phi3: TruncatedSeries) -> Result<Self, SeriesError> {
        let g1 = phi1.clone();
        let g3 = g1.reciprocal()?;
        let g2 = g2_closed_form(&g1)?;
        Ok(SeriesBundle { phi1, phi2, phi3, g1, g2, g3 })
    }

    /// `phi2 (phi1 - 2u phi1') = 1 + 2 phi1' phi1` at the known order.
    pub fn satisfies_phi_relation(&self) -> bool {
        let Ok(d1) = self.phi1.derivative() else {
            return true;
        };
        let two = ExactComplex::from_integer(2);
        let lhs = &self.phi2 * &(&self.phi1 - &d1.mul_u().scale(&two));
        let rhs = &TruncatedSeries::one(d1.order()) + &(&d1 * &self.phi1).scale(&two);
        lhs.agrees_with(&rhs)
    }

    /// Lowest order among the three `phi` series.
    pub fn phi_order(&self) -> usize {
        self.phi1.order().min(self.phi2.order()).min(self.phi3.order())
    }
}

fn require_vanishing(f: &TruncatedSeries) -> Result<(), SeriesError> {
    if f.constant_term_is_zero() {
        Ok(())
    } else {
        Err(SeriesError::NonzeroAtOrigin(f.coeff(0).to_string()))
    }
}

fn inv_factorial(n: usize) -> ExactComplex {
    let mut f = BigInt::from(1);
    for k in 2..=n {
        f *= k;
    }
    ExactComplex::from_rational(BigRational::new(BigInt::from(1), f))
}

fn two() -> ExactComplex {
    ExactComplex::from_integer(2)
}

/// `g1 = exp(F (1 - 2u d/du)) (1)`, to order `min(K, F.order)`.
pub fn g1_from_f(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, SeriesError> {
    require_vanishing(f)?;
    let k = order.min(f.order());
    let f = f.truncate(k);
    let mut term = TruncatedSeries::one(k);
    let mut sum = term.clone();
    for n in 1..=k {
        term = &f * &(&term - &term.euler().scale(&two()));
        sum = &sum + &term.scale(&inv_factorial(n));
    }
    Ok(sum)
}

/// `g3 = exp(-F (1 + 2u d/du)) (1)`, to order `min(K, F.order)`.
pub fn g3_from_f(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, SeriesError> {
    require_vanishing(f)?;
    let k = order.min(f.order());
    let neg_f = -&f.truncate(k);
    let mut term = TruncatedSeries::one(k);
    let mut sum = term.clone();
    for n in 1..=k {
        term = &neg_f * &(&term + &term.euler().scale(&two()));
        sum = &sum + &term.scale(&inv_factorial(n));
    }
    Ok(sum)
}

/// `g2 = sum_{n>=1} g2_n / n!`; needs `F'`, so the result is known to
/// `min(K, F.order - 1)`.
pub fn g2_from_f(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, SeriesError> {
    require_vanishing(f)?;
    if f.order() == 0 {
        return Err(SeriesError::InsufficientOrder { have: 0, need: 1 });
    }
    let k = order.min(f.order() - 1);
    let fdot = f.truncate(k + 1).derivative()?;
    let f = f.truncate(k);
    let two_theta_f = f.euler().scale(&two());
    let two_fdot = fdot.scale(&two());
    let mut g1n = TruncatedSeries::one(k);
    let mut g2n = TruncatedSeries::zero(k);
    let mut sum = TruncatedSeries::zero(k);
    // g2_n has valuation n - 1, so n runs to k + 1
    for n in 1..=k + 1 {
        let next_g2 = &(&(&two_fdot * &g1n) + &(&two_theta_f * &g2n)) - &(&(&f * &g2n) + &(&f * &g2n.euler()).scale(&two()));
        let next_g1 = &f * &(&g1n - &g1n.euler().scale(&two()));
        g2n = next_g2;
        g1n = next_g1;
        sum = &sum + &g2n.scale(&inv_factorial(n));
    }
    Ok(sum)
}

/// `2 g1' g1 / (g1 - 2u g1')`.
pub(crate) fn g2_closed_form(g1: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let d = g1.derivative()?;
    let num = (&d * g1).scale(&two());
    let den = g1 - &d.mul_u().scale(&two());
    num.try_div(&den)
}

/// `phi2 = (1 + 2 phi1' phi1) / (phi1 - 2u phi1')`, one order below `phi1`.
pub fn phi2_from_phi1(phi1: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let d = phi1.derivative()?;
    let num = &TruncatedSeries::one(d.order()) + &(&d * phi1).scale(&two());
    let den = phi1 - &d.mul_u().scale(&two());
    num.try_div(&den)
}

/// Bundle for `F0 = 0`: `phi1 = g1`, `phi2 = g2 + g3 + u g2 g3^2`, `phi3 = 0`.
///
/// A nonzero `F0` only changes `phi3`, which is obtained by conjugating in
/// the operator engine instead (see `hadamard::TransformContext::bundle`).
pub fn phi_bundle(spec: &TransformSpec, order: usize) -> Result<SeriesBundle, SeriesError> {
    if !spec.f0.is_zero() {
        return Err(SeriesError::Phi3NeedsTransform);
    }
    let g1 = g1_from_f(&spec.f, order)?;
    let g2 = g2_from_f(&spec.f, order)?;
    let g3 = g3_from_f(&spec.f, order)?;
    let phi2 = &(&g2 + &g3) + &(&(&g2 * &g3) * &g3).mul_u();
    let phi3 = TruncatedSeries::zero(phi2.order());
    Ok(SeriesBundle { phi1: g1.clone(), phi2, phi3, g1, g2, g3 })
}

/// The unique `F` with `F(0) = 0` and `g1_from_f(F) = target` modulo
/// `u^(K+1)`. The coefficient of `u^n` in `g1` is `F_n` plus terms in
/// `F_1..F_{n-1}`, so the system is triangular.
pub fn solve_f_for_phi1(target: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, SeriesError> {
    if !target.coeff(0).is_one() {
        return Err(SeriesError::NotUnitAtOrigin(target.coeff(0).to_string()));
    }
    let k = order.min(target.order());
    let mut coeffs = vec![ExactComplex::zero(); k + 1];
    for n in 1..=k {
        let partial = TruncatedSeries::from_coeffs(coeffs.clone(), k);
        let g = g1_from_f(&partial, k)?;
        coeffs[n] = target.coeff(n) - g.coeff(n);
    }
    Ok(TruncatedSeries::from_coeffs(coeffs, k))
}
