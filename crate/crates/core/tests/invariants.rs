use proptest::prelude::*;

use snyder_core::coeff::ExactComplex;
use snyder_core::hadamard::TransformContext;
use snyder_core::realizations::{build, hermitize, Model, Mutation, Realization};
use snyder_core::series::{g1_from_f, g2_from_f, g3_from_f, TransformSpec, TruncatedSeries};
use snyder_core::verifier::{rep_oracle, verify_all, OracleParams};
use snyder_core::weyl::{Algebra, Metric};

fn alg(d: usize, grade: u32) -> Algebra {
    Algebra::new(Metric::lorentzian(d).unwrap(), grade)
}

fn poly_f(coeffs: &[(i64, i64)], order: usize) -> TruncatedSeries {
    let mut all = vec![ExactComplex::zero()];
    all.extend(coeffs.iter().map(|&(n, d)| ExactComplex::ratio(n, d)));
    all.truncate(order + 1);
    TruncatedSeries::from_coeffs(all, order)
}

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..=5, 1i64..=4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn transformed_generators_stay_canonical(cs in prop::collection::vec(coeff(), 1..=3)) {
        let a = alg(2, 6);
        let ctx = TransformContext::new(&a, TransformSpec::from_f(poly_f(&cs, 3)).unwrap()).unwrap();
        let xs: Vec<_> = (0..2).map(|m| ctx.transform(&a.x(m)).unwrap()).collect();
        let ps: Vec<_> = (0..2).map(|m| ctx.transform(&a.p(m)).unwrap()).collect();
        for mu in 0..2 {
            for nu in 0..2 {
                let eta = a.metric().eta(mu, nu);
                let xp = xs[mu].commutator(&ps[nu]).unwrap();
                prop_assert_eq!(xp, a.scalar(ExactComplex::i().mul_gauss(eta as i128, 0)));
                prop_assert!(xs[mu].commutator(&xs[nu]).unwrap().is_zero());
                prop_assert!(ps[mu].commutator(&ps[nu]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn conjugation_matches_recurrences(cs in prop::collection::vec(coeff(), 1..=3)) {
        let k = 4;
        let f = poly_f(&cs, k + 1);
        let a = alg(2, 2 * k as u32 + 2);
        let g = TransformContext::new(&a, TransformSpec::from_f(f.clone()).unwrap()).unwrap().transformed_generators().unwrap();
        prop_assert_eq!(g.g1.truncate(k), g1_from_f(&f, k).unwrap());
        prop_assert_eq!(g.g2.truncate(k), g2_from_f(&f, k).unwrap());
        prop_assert_eq!(g.g3.truncate(k), g3_from_f(&f, k).unwrap());
        prop_assert!(g.h.is_zero());
    }
}

fn catalogue(a: &Algebra) -> Vec<Realization> {
    Model::ALL.into_iter().map(|m| build(m, a, None, None).unwrap()).collect()
}

#[test]
fn symbolic_and_oracle_checks_agree() {
    let a = alg(3, 5);
    let params = OracleParams::default();
    let mut cases = catalogue(&a);
    for m in Model::ALL {
        for x in Mutation::ALL.into_iter().filter(|x| x.applies_to(m)) {
            cases.push(build(m, &a, None, Some(x)).unwrap());
        }
    }
    for r in cases {
        let symbolic = verify_all(&r).ok;
        let oracle = rep_oracle(&r, &params).unwrap().ok;
        assert_eq!(symbolic, oracle, "{}", r.name);
        assert_eq!(symbolic, !r.name.contains('+'), "{}", r.name);
    }
}

#[test]
fn hermitized_catalogue_stays_valid() {
    let a = alg(3, 4);
    for r in catalogue(&a) {
        let h = hermitize(&r);
        assert!(h.xhat.iter().chain(h.m.iter().flatten()).all(|e| e.adjoint() == *e), "{}", h.name);
        let rep = verify_all(&h);
        assert!(rep.ok, "{}: {:?}", h.name, rep.failures().next());
    }
}

#[test]
fn untransformed_heisenberg_relations_hold_at_every_grade() {
    for grade in 0..=6 {
        let a = alg(3, grade);
        for mu in 0..3 {
            for nu in 0..3 {
                let eta = a.metric().eta(mu, nu) as i128;
                assert_eq!(a.x(mu).commutator(&a.p(nu)).unwrap(), a.scalar(ExactComplex::i().mul_gauss(eta, 0)));
                assert!(a.x(mu).commutator(&a.x(nu)).unwrap().is_zero());
            }
        }
    }
}
