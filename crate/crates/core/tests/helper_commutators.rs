//! Commutators of x, x.p and the Lorentz generators with the kernel
//! functions used by the extended realizations, as truncated identities.

use snyder_core::coeff::ExactComplex;
use snyder_core::realizations::series_in;
use snyder_core::series::{parse_series, TruncatedSeries};
use snyder_core::weyl::{Algebra, AlgebraElement, Metric};

fn series(text: &str, order: usize) -> TruncatedSeries {
    parse_series(text, order).unwrap()
}

/// `S(v) = 1/(1 + sqrt(1+v))`
fn kernel(order: usize) -> TruncatedSeries {
    series("1/(1+sqrt(1+u))", order)
}

/// `T(v) = 1/(sqrt(1+v) (1 + sqrt(1+v))^2)`
fn kernel_slope(order: usize) -> TruncatedSeries {
    series("1/(sqrt(1+u)*(1+sqrt(1+u))^2)", order)
}

fn i_times(alg: &Algebra, k: i64, e: &AlgebraElement) -> AlgebraElement {
    &alg.scalar(ExactComplex::i().mul_gauss(k as i128, 0)) * e
}

/// `M_mu,nu = xh_mu,nu + x_mu p_nu - x_nu p_mu`
fn extended_lorentz(alg: &Algebra, mu: usize, nu: usize) -> AlgebraElement {
    &alg.xhat(mu, nu) + &alg.orbital(mu, nu)
}

/// `(a^2 - b^2)` and `w = (a^2 - b^2) p^2`
fn kappa_base(alg: &Algebra) -> (AlgebraElement, AlgebraElement) {
    let c = &alg.a_squared() - &alg.beta_pow(2);
    let w = &c * &alg.p_squared();
    (c, w)
}

fn algebras(grade: u32) -> Vec<Algebra> {
    vec![
        Algebra::new(Metric::lorentzian(4).unwrap(), grade),
        Algebra::new(Metric::lorentzian(3).unwrap(), grade),
        Algebra::new(Metric::euclidean(3).unwrap(), grade),
    ]
}

#[test]
fn series_helpers_agree_with_direct_arithmetic() {
    let k = 10;
    let one = TruncatedSeries::one(k);
    let root = (&one + &TruncatedSeries::variable(k)).sqrt().unwrap();
    let denom = &one + &root;
    assert_eq!(kernel(k), denom.reciprocal().unwrap());
    assert_eq!(kernel_slope(k), (&root * &(&denom * &denom)).reciprocal().unwrap());
    // d/dv S = -T/2
    assert_eq!(kernel(k + 1).derivative().unwrap().scale(&ExactComplex::ratio(-2, 1)), kernel_slope(k));
}

#[test]
fn x_with_kernel_of_u() {
    for alg in algebras(8) {
        let u = alg.u();
        let s = series_in(&alg, &kernel(4), &u, 0).unwrap();
        let t = series_in(&alg, &kernel_slope(4), &u, 2).unwrap();
        let b2 = alg.beta_pow(2);
        for mu in 0..alg.dim() {
            let lhs = alg.x(mu).commutator(&s).unwrap();
            let rhs = i_times(&alg, -1, &(&(&b2 * &alg.p(mu)) * &t));
            assert_eq!(lhs, rhs, "mu = {mu}");
        }
    }
}

#[test]
fn kernel_of_u_with_dilatation() {
    for alg in algebras(8) {
        let u = alg.u();
        let s = series_in(&alg, &kernel(4), &u, 0).unwrap();
        let ut = series_in(&alg, &kernel_slope(4).mul_u(), &u, 0).unwrap();
        let lhs = s.commutator(&alg.dot_xp()).unwrap();
        assert_eq!(lhs, i_times(&alg, 1, &ut));
    }
}

#[test]
fn extended_lorentz_commutes_with_kernel_of_u() {
    for alg in algebras(8) {
        let s = series_in(&alg, &kernel(4), &alg.u(), 0).unwrap();
        for mu in 0..alg.dim() {
            for nu in 0..alg.dim() {
                assert!(extended_lorentz(&alg, mu, nu).commutator(&s).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn x_with_kernel_of_w() {
    for alg in algebras(6) {
        let (c, w) = kappa_base(&alg);
        let s = series_in(&alg, &kernel(3), &w, 0).unwrap();
        let t = series_in(&alg, &kernel_slope(3), &w, 2).unwrap();
        for mu in 0..alg.dim() {
            let lhs = alg.x(mu).commutator(&s).unwrap();
            let rhs = i_times(&alg, -1, &(&(&c * &alg.p(mu)) * &t));
            assert_eq!(lhs, rhs, "mu = {mu}");
        }
    }
}

#[test]
fn x_with_root_of_w() {
    for alg in algebras(6) {
        let (c, w) = kappa_base(&alg);
        let root = series_in(&alg, &series("sqrt(1+u)", 3), &w, 0).unwrap();
        let inv_root = series_in(&alg, &series("1/sqrt(1+u)", 3), &w, 2).unwrap();
        for mu in 0..alg.dim() {
            let lhs = alg.x(mu).commutator(&root).unwrap();
            assert_eq!(lhs, i_times(&alg, 1, &(&(&c * &alg.p(mu)) * &inv_root)), "mu = {mu}");
            // a p^2 in place of p_mu does not hold
            let p2 = i_times(&alg, 1, &(&(&c * &alg.p_squared()) * &inv_root));
            assert_ne!(lhs, p2);
        }
    }
}

#[test]
fn extended_lorentz_commutes_with_functions_of_w() {
    for alg in algebras(6) {
        let w = kappa_base(&alg).1;
        let s = series_in(&alg, &kernel(3), &w, 0).unwrap();
        let root = series_in(&alg, &series("sqrt(1+u)", 3), &w, 0).unwrap();
        for mu in 0..alg.dim() {
            for nu in 0..alg.dim() {
                let m = extended_lorentz(&alg, mu, nu);
                assert!(m.commutator(&s).unwrap().is_zero());
                assert!(m.commutator(&root).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn lorentz_action_on_x_p_and_tensorial_generators() {
    let alg = Algebra::new(Metric::lorentzian(4).unwrap(), 4);
    let eta = |a: usize, b: usize| alg.metric().eta(a, b);
    let d = alg.dim();
    for mu in 0..d {
        for nu in 0..d {
            let m = extended_lorentz(&alg, mu, nu);
            for la in 0..d {
                // [M, p_la] = i (p_nu eta_mu,la - p_mu eta_nu,la), same for x
                for (f, name) in [(&Algebra::p as &dyn Fn(&Algebra, usize) -> AlgebraElement, "p"), (&Algebra::x, "x")] {
                    let expect = i_times(
                        &alg,
                        1,
                        &(&f(&alg, nu).scale(&ExactComplex::from_integer(eta(mu, la)))
                            - &f(&alg, mu).scale(&ExactComplex::from_integer(eta(nu, la)))),
                    );
                    assert_eq!(m.commutator(&f(&alg, la)).unwrap(), expect, "{name} {mu}{nu}{la}");
                }
            }
            for rho in 0..d {
                for sigma in 0..d {
                    let terms = [
                        (eta(mu, rho), alg.xhat(nu, sigma)),
                        (-eta(mu, sigma), alg.xhat(nu, rho)),
                        (-eta(nu, rho), alg.xhat(mu, sigma)),
                        (eta(nu, sigma), alg.xhat(mu, rho)),
                    ];
                    let mut expect = alg.zero();
                    for (e, x) in terms {
                        expect = &expect + &x.scale(&ExactComplex::from_integer(e));
                    }
                    let lhs = m.commutator(&alg.xhat(rho, sigma)).unwrap();
                    assert_eq!(lhs, i_times(&alg, 1, &expect));
                }
            }
        }
    }
}
