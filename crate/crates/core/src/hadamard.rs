//! Conjugation by `S = exp(iG)` with `G = F0(u) + (x.p) F(u)`, computed as
//! the Hadamard sum `S A S^-1 = sum_n (ad_iG)^n (A) / n!` in the operator
//! engine. `G` has weight at least 2, so the sum terminates at the grade.

use crate::coeff::ExactComplex;
use crate::realizations::{
    build_snyder_original, decompose_momentum, decompose_phi_form, series_in, Realization, RealizationError,
};
use crate::series::{SeriesBundle, TransformSpec, TruncatedSeries};
use crate::weyl::{Algebra, AlgebraElement, AlgebraError};

#[derive(Clone, Debug)]
pub struct TransformContext {
    spec: TransformSpec,
    algebra: Algebra,
    g: AlgebraElement,
}

/// Series read back from transformed generators:
/// `x'_mu = x_mu g1 + b^2 (x.p) p_mu g2 + b^2 p_mu h` and `p'_mu = p_mu g3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformedGenerators {
    pub g1: TruncatedSeries,
    pub g2: TruncatedSeries,
    pub h: TruncatedSeries,
    pub g3: TruncatedSeries,
}

impl TransformContext {
    /// `spec.f` and `spec.f0` must be known to order `D/2`.
    pub fn new(algebra: &Algebra, spec: TransformSpec) -> Result<Self, RealizationError> {
        let u = algebra.u();
        let g = &series_in(algebra, &spec.f0, &u, 0)? + &(&algebra.dot_xp() * &series_in(algebra, &spec.f, &u, 0)?);
        Ok(TransformContext { spec, algebra: algebra.clone(), g })
    }

    pub fn spec(&self) -> &TransformSpec {
        &self.spec
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// The generator `G` expanded to the grade.
    pub fn generator(&self) -> &AlgebraElement {
        &self.g
    }

    pub fn transform(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let i = ExactComplex::i();
        let mut term = a.clone();
        let mut sum = a.clone();
        let mut n: i64 = 1;
        loop {
            term = self.g.commutator(&term)?.scale(&i).scale_rational(1, n);
            if term.is_zero() {
                return Ok(sum);
            }
            sum = sum.try_add(&term)?;
            n += 1;
        }
    }

    pub fn transform_realization(&self, r: &Realization) -> Result<Realization, RealizationError> {
        r.map_elements(format!("{}+transform", r.name), |e| Ok(self.transform(e)?))
    }

    /// Decompose the transformed `x_mu` and `p_mu`.
    pub fn transformed_generators(&self) -> Result<TransformedGenerators, RealizationError> {
        let d = self.algebra.dim();
        let xs = (0..d).map(|mu| self.transform(&self.algebra.x(mu))).collect::<Result<Vec<_>, _>>()?;
        let ps = (0..d).map(|mu| self.transform(&self.algebra.p(mu))).collect::<Result<Vec<_>, _>>()?;
        let (g1, g2, h) = decompose_phi_form(&self.algebra, &xs)?;
        let g3 = decompose_momentum(&self.algebra, &ps)?;
        Ok(TransformedGenerators { g1, g2, h, g3 })
    }

    /// `(phi1, phi2, phi3)` of the transformed original Snyder realization.
    pub fn bundle(&self) -> Result<SeriesBundle, RealizationError> {
        let r = self.transform_realization(&build_snyder_original(&self.algebra))?;
        let (phi1, phi2, phi3) = decompose_phi_form(&self.algebra, &r.xhat)?;
        Ok(SeriesBundle::from_phis(phi1, phi2, phi3)?)
    }

    pub fn phi3(&self) -> Result<TruncatedSeries, RealizationError> {
        Ok(self.bundle()?.phi3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realizations::{build_extended_snyder, build_extended_snyder_phi, extract_phis};
    use crate::series::{g1_from_f, g2_from_f, g3_from_f, phi_bundle, TruncatedSeries};
    use crate::weyl::Metric;

    fn alg(d: usize, grade: u32) -> Algebra {
        Algebra::new(Metric::lorentzian(d).unwrap(), grade)
    }

    fn spec(f0: &[(i64, i64)], f: &[(i64, i64)], order: usize) -> TransformSpec {
        TransformSpec::new(TruncatedSeries::from_rationals(f0, order), TruncatedSeries::from_rationals(f, order)).unwrap()
    }

    #[test]
    fn zero_generator_is_identity() {
        let a = alg(3, 4);
        let ctx = TransformContext::new(&a, TransformSpec::identity(2)).unwrap();
        assert!(ctx.generator().is_zero());
        let e = &a.x(0) * &a.p(1);
        assert_eq!(ctx.transform(&e).unwrap(), e);
    }

    #[test]
    fn snyder_example_from_conjugation() {
        let k = 4;
        let a = alg(3, 2 * k as u32 + 2);
        let ctx = TransformContext::new(&a, spec(&[], &[(0, 1), (-1, 2)], k + 1)).unwrap();
        let t = ctx.transformed_generators().unwrap();
        let f = TruncatedSeries::from_rationals(&[(0, 1), (-1, 2)], k + 2);
        assert!(t.g1.agrees_with(&g1_from_f(&f, k + 1).unwrap()));
        assert!(t.g2.agrees_with(&g2_from_f(&f, k).unwrap()));
        assert!(t.g3.agrees_with(&g3_from_f(&f, k + 1).unwrap()));
        assert!(t.h.is_zero());
        let b = ctx.bundle().unwrap();
        let expected = phi_bundle(&TransformSpec::from_f(f).unwrap(), k).unwrap();
        assert!(b.phi1.agrees_with(&expected.phi1));
        assert!(b.phi2.is_zero());
        assert!(b.phi3.is_zero());
    }

    #[test]
    fn remark_one() {
        // F = 0, F0 = u: phi3 = 2 (1 + u)
        let a = alg(3, 8);
        let ctx = TransformContext::new(&a, spec(&[(0, 1), (1, 1)], &[], 4)).unwrap();
        let b = ctx.bundle().unwrap();
        assert_eq!(b.phi3, TruncatedSeries::from_rationals(&[(2, 1), (2, 1)], 3));
        assert_eq!(b.phi1, TruncatedSeries::one(4));
        assert_eq!(b.phi2, TruncatedSeries::one(3));
    }

    #[test]
    fn tensorial_generators_are_fixed() {
        let a = alg(3, 6);
        let ctx = TransformContext::new(&a, spec(&[(0, 1), (0, 1), (1, 3)], &[(0, 1), (2, 3), (-1, 1)], 3)).unwrap();
        assert_eq!(ctx.transform(&a.xhat(0, 2)).unwrap(), a.xhat(0, 2));
    }

    #[test]
    fn conjugation_preserves_brackets() {
        let a = alg(3, 6);
        let ctx = TransformContext::new(&a, spec(&[(0, 1), (1, 2)], &[(0, 1), (1, 3), (-2, 1)], 3)).unwrap();
        let pairs =
            [(&a.x(0) * &a.p(1), &a.x(1) * &a.x(2)), (a.x(2), &(&a.p(0) * &a.p(0)) * &a.x(1)), (a.dot_xp(), &a.x(0) + &a.p(2))];
        for (l, r) in pairs {
            let lhs = ctx.transform(&l).unwrap().commutator(&ctx.transform(&r).unwrap()).unwrap();
            let rhs = ctx.transform(&l.commutator(&r).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn extended_family_from_conjugation() {
        let k = 3;
        let a = alg(3, 2 * k as u32);
        let f = TruncatedSeries::from_rationals(&[(0, 1), (1, 3)], k + 1);
        let ctx = TransformContext::new(&a, TransformSpec::from_f(f.clone()).unwrap()).unwrap();
        let t = ctx.transform_realization(&build_extended_snyder(&a)).unwrap();
        let bundle = phi_bundle(&TransformSpec::from_f(f).unwrap(), k).unwrap();
        let family = build_extended_snyder_phi(&a, &bundle).unwrap();
        assert_eq!(t.xhat, family.xhat);
        assert_eq!(t.m, family.m);
        assert_eq!(extract_phis(&t), Err(RealizationError::XhatDependent));
    }
}
