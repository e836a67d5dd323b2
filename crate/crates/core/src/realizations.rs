//! Catalogue of realizations of Snyder-type algebras in the extended
//! Heisenberg algebra, and the inverse decomposition into series form.
//!
//! Series in `u = b^2 p^2` (or `w = (a^2 - b^2) p^2` for the kappa models) are
//! substituted as polynomials in the base element; prefactors containing `x`
//! are written to the left, as in the printed formulas.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeff::ExactComplex;
use crate::series::{phi2_from_phi1, SeriesBundle, SeriesError, TruncatedSeries};
use crate::weyl::{Algebra, AlgebraElement, AlgebraError, Family, NormalMonomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unknown model '{0}'")]
    UnknownModel(String),
    #[error("unknown mutation '{0}'")]
    UnknownMutation(String),
    #[error("mutation {mutation} does not apply to model {model}")]
    MutationNotApplicable { mutation: Mutation, model: Model },
    #[error("phi1 and phi2 violate phi2 (phi1 - 2u phi1') = 1 + 2 phi1' phi1")]
    PhiRelation,
    #[error("phi1(0) must be positive, got {0}")]
    NonPositivePhi1(String),
    #[error("component {0} is not of the form x phi1 + b^2 (x.p) p phi2 + b^2 p phi3")]
    NotPhiShape(usize),
    #[error("components 0 and {0} give different series")]
    ComponentsDisagree(usize),
    #[error("realization depends on the tensorial generators")]
    XhatDependent,
    #[error("grade {0} is too low to read off series coefficients (need at least 2)")]
    GradeTooLow(u32),
}

/// Which relations a realization is meant to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetAlgebra {
    /// `b^2 M` term in the coordinate bracket.
    pub beta: bool,
    /// `a_mu` terms in the coordinate and Lorentz-coordinate brackets.
    pub kappa: bool,
    /// Tensorial generators are present.
    pub extended: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    SnyderOriginal,
    SnyderPhi,
    ExtendedSnyder,
    ExtendedSnyderPhi,
    KappaExtended,
    KappaMixed,
    KappaPoincareNatural,
}

impl Model {
    pub const ALL: [Model; 7] = [
        Model::SnyderOriginal,
        Model::SnyderPhi,
        Model::ExtendedSnyder,
        Model::ExtendedSnyderPhi,
        Model::KappaExtended,
        Model::KappaMixed,
        Model::KappaPoincareNatural,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Model::SnyderOriginal => "snyder-original",
            Model::SnyderPhi => "snyder-phi",
            Model::ExtendedSnyder => "extended-snyder",
            Model::ExtendedSnyderPhi => "extended-snyder-phi",
            Model::KappaExtended => "kappa-extended",
            Model::KappaMixed => "kappa-mixed",
            Model::KappaPoincareNatural => "kappa-poincare-natural",
        }
    }

    pub fn is_kappa(self) -> bool {
        matches!(self, Model::KappaExtended | Model::KappaMixed | Model::KappaPoincareNatural)
    }

    pub fn is_extended(self) -> bool {
        matches!(self, Model::ExtendedSnyder | Model::ExtendedSnyderPhi | Model::KappaExtended | Model::KappaPoincareNatural)
    }

    /// Models parametrised by a `SeriesBundle`.
    pub fn takes_bundle(self) -> bool {
        matches!(self, Model::SnyderPhi | Model::ExtendedSnyderPhi)
    }

    pub fn target(self) -> TargetAlgebra {
        TargetAlgebra { beta: self != Model::KappaPoincareNatural, kappa: self.is_kappa(), extended: self.is_extended() }
    }

    /// Default truncation grade.
    pub fn default_grade(self) -> u32 {
        if self.is_kappa() {
            6
        } else {
            8
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Model {
    type Err = RealizationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Model::ALL.into_iter().find(|m| m.id() == s).ok_or_else(|| RealizationError::UnknownModel(s.to_string()))
    }
}

/// Deliberate faults used to check that verification is not vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Flip the sign of the `xh_mu,alpha p_alpha` term.
    FlipXhatTerm,
    /// Replace `phi2` by `phi2 + u`.
    Phi2PlusU,
    /// Drop the `M_mu,alpha a_alpha` term.
    DropMaTerm,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::FlipXhatTerm, Mutation::Phi2PlusU, Mutation::DropMaTerm];

    pub fn id(self) -> &'static str {
        match self {
            Mutation::FlipXhatTerm => "flip-xhat-term",
            Mutation::Phi2PlusU => "phi2-plus-u",
            Mutation::DropMaTerm => "drop-ma-term",
        }
    }

    pub fn applies_to(self, model: Model) -> bool {
        match self {
            Mutation::FlipXhatTerm => model.is_extended(),
            Mutation::Phi2PlusU => model.takes_bundle(),
            Mutation::DropMaTerm => model.is_kappa(),
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Mutation {
    type Err = RealizationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL.into_iter().find(|m| m.id() == s).ok_or_else(|| RealizationError::UnknownMutation(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Label used in reports; the model id unless the realization was derived.
    pub name: String,
    pub model: Model,
    pub target: TargetAlgebra,
    pub algebra: Algebra,
    pub xhat: Vec<AlgebraElement>,
    /// Antisymmetric `d x d` array of Lorentz generators.
    pub m: Vec<Vec<AlgebraElement>>,
    pub bundle: Option<SeriesBundle>,
}

impl Realization {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn grade(&self) -> u32 {
        self.algebra.grade()
    }

    /// Apply `f` to every `xhat_mu` and `M_mu,nu`.
    pub fn map_elements(
        &self,
        name: String,
        mut f: impl FnMut(&AlgebraElement) -> Result<AlgebraElement, RealizationError>,
    ) -> Result<Realization, RealizationError> {
        let xhat = self.xhat.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        let m = self.m.iter().map(|row| row.iter().map(&mut f).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        Ok(Realization { name, model: self.model, target: self.target, algebra: self.algebra.clone(), xhat, m, bundle: None })
    }
}

/// Series order needed for a factor multiplied by a prefactor of weight `reserve`.
fn needed_order(grade: u32, reserve: u32) -> usize {
    (grade.saturating_sub(reserve) / 2) as usize
}

/// `sum_n s_n base^n` for `n <= (D - reserve)/2`, where `reserve` is the
/// smallest weight of whatever the series will be multiplied by and `base`
/// has weight 2.
pub fn series_in(
    alg: &Algebra,
    s: &TruncatedSeries,
    base: &AlgebraElement,
    reserve: u32,
) -> Result<AlgebraElement, RealizationError> {
    let need = needed_order(alg.grade(), reserve);
    if s.order() < need {
        return Err(SeriesError::InsufficientOrder { have: s.order(), need }.into());
    }
    let mut acc = alg.zero();
    let mut power = alg.one();
    for n in 0..=need {
        if !s.coeff(n).is_zero() {
            acc = &acc + &power.scale(s.coeff(n));
        }
        power = &power * base;
    }
    Ok(acc)
}

/// `1/(1 + sqrt(1 + v))` to the given order.
fn kernel(order: usize) -> TruncatedSeries {
    let one_plus = &TruncatedSeries::one(order) + &TruncatedSeries::variable(order);
    let root = one_plus.sqrt().expect("constant term 1");
    (&TruncatedSeries::one(order) + &root).reciprocal().expect("constant term 2")
}

/// `sqrt(1 + v)` to the given order.
fn sqrt_one_plus(order: usize) -> TruncatedSeries {
    (&TruncatedSeries::one(order) + &TruncatedSeries::variable(order)).sqrt().expect("constant term 1")
}

fn lorentz_orbital(alg: &Algebra) -> Vec<Vec<AlgebraElement>> {
    let d = alg.dim();
    (0..d).map(|mu| (0..d).map(|nu| alg.orbital(mu, nu)).collect()).collect()
}

fn lorentz_extended(alg: &Algebra) -> Vec<Vec<AlgebraElement>> {
    let d = alg.dim();
    (0..d).map(|mu| (0..d).map(|nu| &alg.xhat(mu, nu) + &alg.orbital(mu, nu)).collect()).collect()
}

/// `sum_alpha eta M_mu,alpha a_alpha`
fn m_dot_a(alg: &Algebra, m: &[Vec<AlgebraElement>], mu: usize) -> AlgebraElement {
    alg.contract_with(|alpha| m[mu][alpha].clone(), |alpha| alg.a(alpha))
}

fn xhat_row_p(alg: &Algebra, mu: usize) -> AlgebraElement {
    alg.contract(Family::XhatRow(mu), Family::P)
}

/// `phi1 = sqrt(1 - u)`, `phi2 = 0`, `phi3 = 0`, known to `order`.
pub fn default_bundle(order: usize) -> SeriesBundle {
    let phi1 = (&TruncatedSeries::one(order + 1) - &TruncatedSeries::variable(order + 1)).sqrt().expect("constant term 1");
    let phi2 = phi2_from_phi1(&phi1).expect("phi1(0) = 1");
    SeriesBundle::from_phis(phi1.truncate(order), phi2, TruncatedSeries::zero(order)).expect("phi1(0) = 1")
}

/// Bundle for the phi models given only `phi1`; `phi2` from the phi relation
/// and `phi3 = 0`. `phi1` must be known one order beyond `order`.
pub fn bundle_from_phi1(phi1: &TruncatedSeries, order: usize) -> Result<SeriesBundle, RealizationError> {
    let phi2 = phi2_from_phi1(phi1)?;
    let k = order.min(phi2.order());
    Ok(SeriesBundle::from_phis(phi1.truncate(k), phi2.truncate(k), TruncatedSeries::zero(k))?)
}

fn check_bundle(alg: &Algebra, bundle: &SeriesBundle) -> Result<(), RealizationError> {
    let need = needed_order(alg.grade(), 0);
    if bundle.phi1.order() < need {
        return Err(SeriesError::InsufficientOrder { have: bundle.phi1.order(), need }.into());
    }
    if !bundle.satisfies_phi_relation() {
        return Err(RealizationError::PhiRelation);
    }
    Ok(())
}

/// `x_mu phi1 + b^2 (x.p) p_mu phi2 + b^2 p_mu phi3` for one component.
fn phi_form_component(
    alg: &Algebra,
    mu: usize,
    phi1: &TruncatedSeries,
    phi2: &TruncatedSeries,
    phi3: &TruncatedSeries,
) -> Result<AlgebraElement, RealizationError> {
    let u = alg.u();
    let b2 = alg.beta_pow(2);
    let xp = alg.dot_xp();
    let t1 = &alg.x(mu) * &series_in(alg, phi1, &u, 0)?;
    let t2 = &(&(&b2 * &xp) * &alg.p(mu)) * &series_in(alg, phi2, &u, 2)?;
    let t3 = &(&b2 * &alg.p(mu)) * &series_in(alg, phi3, &u, 2)?;
    Ok(&(&t1 + &t2) + &t3)
}

pub fn build_snyder_original(alg: &Algebra) -> Realization {
    let b2 = alg.beta_pow(2);
    let xp = &b2 * &alg.dot_xp();
    let xhat = (0..alg.dim()).map(|mu| &alg.x(mu) + &(&xp * &alg.p(mu))).collect();
    finish(Model::SnyderOriginal, alg, xhat, lorentz_orbital(alg), None)
}

pub fn build_snyder_phi(alg: &Algebra, bundle: &SeriesBundle) -> Result<Realization, RealizationError> {
    check_bundle(alg, bundle)?;
    build_snyder_phi_unchecked(alg, bundle)
}

fn build_snyder_phi_unchecked(alg: &Algebra, bundle: &SeriesBundle) -> Result<Realization, RealizationError> {
    let xhat = (0..alg.dim())
        .map(|mu| phi_form_component(alg, mu, &bundle.phi1, &bundle.phi2, &bundle.phi3))
        .collect::<Result<_, _>>()?;
    Ok(finish(Model::SnyderPhi, alg, xhat, lorentz_orbital(alg), Some(bundle.clone())))
}

pub fn build_extended_snyder(alg: &Algebra) -> Realization {
    build_extended_snyder_signed(alg, 1)
}

fn build_extended_snyder_signed(alg: &Algebra, sign: i64) -> Realization {
    let b2 = alg.beta_pow(2);
    let xp = &b2 * &alg.dot_xp();
    let s = series_in(alg, &kernel(needed_order(alg.grade(), 2)), &alg.u(), 2).expect("order matches grade");
    let xhat = (0..alg.dim())
        .map(|mu| {
            let tensorial = &(&b2 * &xhat_row_p(alg, mu)) * &s;
            &(&alg.x(mu) + &(&xp * &alg.p(mu))) - &tensorial.scale_rational(sign, 1)
        })
        .collect();
    finish(Model::ExtendedSnyder, alg, xhat, lorentz_extended(alg), None)
}

pub fn build_extended_snyder_phi(alg: &Algebra, bundle: &SeriesBundle) -> Result<Realization, RealizationError> {
    check_bundle(alg, bundle)?;
    build_extended_snyder_phi_unchecked(alg, bundle, 1)
}

fn build_extended_snyder_phi_unchecked(alg: &Algebra, bundle: &SeriesBundle, sign: i64) -> Result<Realization, RealizationError> {
    let phi1 = &bundle.phi1;
    let c0 = phi1.coeff(0);
    if !(c0.is_real() && c0.re > num_rational::BigRational::from_integer(0.into())) {
        return Err(RealizationError::NonPositivePhi1(c0.to_string()));
    }
    // 1 / (phi1 + sqrt(phi1^2 + u))
    let k = phi1.order();
    let inner = &(phi1 * phi1) + &TruncatedSeries::variable(k);
    let composite = (phi1 + &inner.sqrt()?).reciprocal()?;
    let b2 = alg.beta_pow(2);
    let s = series_in(alg, &composite, &alg.u(), 2)?;
    let mut xhat = Vec::with_capacity(alg.dim());
    for mu in 0..alg.dim() {
        let base = phi_form_component(alg, mu, phi1, &bundle.phi2, &bundle.phi3)?;
        let tensorial = &(&b2 * &xhat_row_p(alg, mu)) * &s;
        xhat.push(&base - &tensorial.scale_rational(sign, 1));
    }
    Ok(finish(Model::ExtendedSnyderPhi, alg, xhat, lorentz_extended(alg), Some(bundle.clone())))
}

struct KappaParts {
    with_beta: bool,
    extended: bool,
    xhat_sign: i64,
    keep_ma: bool,
}

fn build_kappa(alg: &Algebra, model: Model, parts: KappaParts) -> Realization {
    let a2 = alg.a_squared();
    // (a^2 - b^2) or a^2
    let lambda = if parts.with_beta { &a2 - &alg.beta_pow(2) } else { a2 };
    let w = &lambda * &alg.p_squared();
    let m = if parts.extended { lorentz_extended(alg) } else { lorentz_orbital(alg) };
    let root = series_in(alg, &sqrt_one_plus(needed_order(alg.grade(), 0)), &w, 0).expect("order matches grade");
    let k = series_in(alg, &kernel(needed_order(alg.grade(), 2)), &w, 2).expect("order matches grade");
    let xhat = (0..alg.dim())
        .map(|mu| {
            let mut e = &alg.x(mu) * &root;
            if parts.keep_ma {
                e = &e + &m_dot_a(alg, &m, mu);
            }
            if parts.extended {
                let t = &(&lambda * &xhat_row_p(alg, mu)) * &k;
                e = &e + &t.scale_rational(parts.xhat_sign, 1);
            }
            e
        })
        .collect();
    finish(model, alg, xhat, m, None)
}

pub fn build_kappa_extended(alg: &Algebra) -> Realization {
    build_kappa(alg, Model::KappaExtended, KappaParts { with_beta: true, extended: true, xhat_sign: 1, keep_ma: true })
}

pub fn build_kappa_mixed(alg: &Algebra) -> Realization {
    build_kappa(alg, Model::KappaMixed, KappaParts { with_beta: true, extended: false, xhat_sign: 1, keep_ma: true })
}

/// The `b = 0` reduction of the kappa-extended realization.
pub fn build_kappa_poincare_natural(alg: &Algebra) -> Realization {
    build_kappa(alg, Model::KappaPoincareNatural, KappaParts { with_beta: false, extended: true, xhat_sign: 1, keep_ma: true })
}

fn finish(
    model: Model,
    alg: &Algebra,
    xhat: Vec<AlgebraElement>,
    m: Vec<Vec<AlgebraElement>>,
    bundle: Option<SeriesBundle>,
) -> Realization {
    Realization { name: model.id().to_string(), model, target: model.target(), algebra: alg.clone(), xhat, m, bundle }
}

/// Build any catalogue model, optionally with a fault injected. Phi models
/// use `bundle` or, when absent, [`default_bundle`].
pub fn build(
    model: Model,
    alg: &Algebra,
    bundle: Option<&SeriesBundle>,
    mutation: Option<Mutation>,
) -> Result<Realization, RealizationError> {
    if let Some(mutation) = mutation {
        if !mutation.applies_to(model) {
            return Err(RealizationError::MutationNotApplicable { mutation, model });
        }
    }
    let default;
    let bundle = match bundle {
        Some(b) => b,
        None => {
            default = default_bundle(needed_order(alg.grade(), 0));
            &default
        }
    };
    let flip = if mutation == Some(Mutation::FlipXhatTerm) { -1 } else { 1 };
    let keep_ma = mutation != Some(Mutation::DropMaTerm);
    let mut r = match model {
        Model::SnyderOriginal => build_snyder_original(alg),
        Model::ExtendedSnyder => build_extended_snyder_signed(alg, flip),
        Model::SnyderPhi | Model::ExtendedSnyderPhi => {
            let mut b = bundle.clone();
            if mutation == Some(Mutation::Phi2PlusU) {
                b.phi2 = &b.phi2 + &TruncatedSeries::variable(b.phi2.order());
            } else {
                check_bundle(alg, &b)?;
            }
            if model == Model::SnyderPhi {
                build_snyder_phi_unchecked(alg, &b)?
            } else {
                build_extended_snyder_phi_unchecked(alg, &b, flip)?
            }
        }
        Model::KappaExtended => build_kappa(alg, model, KappaParts { with_beta: true, extended: true, xhat_sign: flip, keep_ma }),
        Model::KappaMixed => build_kappa(alg, model, KappaParts { with_beta: true, extended: false, xhat_sign: 1, keep_ma }),
        Model::KappaPoincareNatural => {
            build_kappa(alg, model, KappaParts { with_beta: false, extended: true, xhat_sign: flip, keep_ma })
        }
    };
    if let Some(mutation) = mutation {
        r.name = format!("{}+{}", model.id(), mutation.id());
    }
    Ok(r)
}

/// Decompose `elems[mu] = x_mu phi1 + b^2 (x.p) p_mu phi2 + b^2 p_mu phi3`
/// and return `(phi1, phi2, phi3)`; all components must agree.
pub fn decompose_phi_form(
    alg: &Algebra,
    elems: &[AlgebraElement],
) -> Result<(TruncatedSeries, TruncatedSeries, TruncatedSeries), RealizationError> {
    let d = alg.dim();
    let grade = alg.grade();
    if grade < 2 {
        return Err(RealizationError::GradeTooLow(grade));
    }
    let k1 = needed_order(grade, 0);
    let k2 = needed_order(grade, 2);
    let metric = alg.metric();
    let np = metric.num_pairs();
    let mut first: Option<(TruncatedSeries, TruncatedSeries, TruncatedSeries)> = None;
    for (mu, e) in elems.iter().enumerate() {
        if e.max_xhat_degree() > 0 {
            return Err(RealizationError::XhatDependent);
        }
        let nu = (mu + 1) % d;
        let eta = metric.eta(nu, nu);
        let read = |beta: u32, x: Option<usize>, p_nu: u16, p_mu: u16, eta_pow: u32| -> ExactComplex {
            let mut xs = vec![0u16; d];
            if let Some(i) = x {
                xs[i] = 1;
            }
            let mut ps = vec![0u16; d];
            ps[nu] += p_nu;
            ps[mu] += p_mu;
            let m = NormalMonomial::from_parts(&crate::coeff::ParamExponent::beta(d, beta), &vec![0; np], &xs, &ps);
            let c = e.coefficient_of(&m).cloned().unwrap_or_else(ExactComplex::zero);
            c.mul_gauss(i128::from(eta.pow(eta_pow % 2)), 0)
        };
        let phi1 =
            TruncatedSeries::from_coeffs((0..=k1).map(|n| read(2 * n as u32, Some(mu), 2 * n as u16, 0, n as u32)).collect(), k1);
        let phi2 = TruncatedSeries::from_coeffs(
            (0..=k2).map(|n| read(2 * n as u32 + 2, Some(nu), 2 * n as u16 + 1, 1, n as u32 + 1)).collect(),
            k2,
        );
        let phi3 =
            TruncatedSeries::from_coeffs((0..=k2).map(|n| read(2 * n as u32 + 2, None, 2 * n as u16, 1, n as u32)).collect(), k2);
        let rebuilt = phi_form_component(alg, mu, &phi1, &phi2, &phi3)?;
        if &rebuilt != e {
            return Err(RealizationError::NotPhiShape(mu));
        }
        match &first {
            None => first = Some((phi1, phi2, phi3)),
            Some(f) if *f == (phi1, phi2, phi3) => {}
            Some(_) => return Err(RealizationError::ComponentsDisagree(mu)),
        }
    }
    Ok(first.expect("at least two components"))
}

/// Decompose `elems[mu] = p_mu g(u)` and return `g`.
pub fn decompose_momentum(alg: &Algebra, elems: &[AlgebraElement]) -> Result<TruncatedSeries, RealizationError> {
    let d = alg.dim();
    let k = needed_order(alg.grade(), 0);
    let np = alg.metric().num_pairs();
    let u = alg.u();
    let mut first: Option<TruncatedSeries> = None;
    for (mu, e) in elems.iter().enumerate() {
        let nu = (mu + 1) % d;
        let eta = alg.metric().eta(nu, nu);
        let g = TruncatedSeries::from_coeffs(
            (0..=k)
                .map(|n| {
                    let mut ps = vec![0u16; d];
                    ps[nu] = 2 * n as u16;
                    ps[mu] += 1;
                    let m = NormalMonomial::from_parts(
                        &crate::coeff::ParamExponent::beta(d, 2 * n as u32),
                        &vec![0; np],
                        &vec![0; d],
                        &ps,
                    );
                    let c = e.coefficient_of(&m).cloned().unwrap_or_else(ExactComplex::zero);
                    c.mul_gauss(i128::from(eta.pow(n as u32 % 2)), 0)
                })
                .collect(),
            k,
        );
        // p_mu g(u) with weight-0 prefactor; the p_mu factor itself carries no weight
        if &(&alg.p(mu) * &series_in(alg, &g, &u, 0)?) != e {
            return Err(RealizationError::NotPhiShape(mu));
        }
        match &first {
            None => first = Some(g),
            Some(f) if *f == g => {}
            Some(_) => return Err(RealizationError::ComponentsDisagree(mu)),
        }
    }
    Ok(first.expect("at least two components"))
}

/// Read `(phi1, phi2, phi3)` back from a realization without tensorial terms.
pub fn extract_phis(r: &Realization) -> Result<SeriesBundle, RealizationError> {
    let (phi1, phi2, phi3) = decompose_phi_form(&r.algebra, &r.xhat)?;
    Ok(SeriesBundle::from_phis(phi1, phi2, phi3)?)
}

/// Replace every element by its Hermitian part `(A + A^dagger)/2`.
pub fn hermitize(r: &Realization) -> Realization {
    r.map_elements(format!("{}+hermitian", r.name), |e| Ok(e.hermitian_part())).expect("infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Metric;

    fn alg(d: usize, grade: u32) -> Algebra {
        Algebra::new(Metric::lorentzian(d).unwrap(), grade)
    }

    #[test]
    fn model_ids_round_trip() {
        for m in Model::ALL {
            assert_eq!(m.id().parse::<Model>().unwrap(), m);
        }
        assert!("snyder".parse::<Model>().is_err());
        for m in Mutation::ALL {
            assert_eq!(m.id().parse::<Mutation>().unwrap(), m);
        }
    }

    #[test]
    fn snyder_original_coordinate_bracket() {
        let a = alg(4, 4);
        let r = build_snyder_original(&a);
        let c = r.xhat[0].commutator(&r.xhat[1]).unwrap();
        let expected = (&a.beta_pow(2) * &r.m[0][1]).scale(&ExactComplex::i());
        assert_eq!(c, expected);
        for mu in 0..4 {
            assert_eq!(r.xhat[mu].act_on_unity().render(), format!("x[{mu}]"));
            let betas: std::collections::BTreeSet<u16> = r.xhat[mu].terms().map(|(m, _)| m.beta_pow()).collect();
            assert_eq!(betas.into_iter().collect::<Vec<_>>(), vec![0, 2]);
        }
    }

    #[test]
    fn trivial_bundle_is_the_original() {
        let a = alg(3, 6);
        let b = SeriesBundle::from_phis(TruncatedSeries::one(3), TruncatedSeries::one(3), TruncatedSeries::zero(3)).unwrap();
        let r = build_snyder_phi(&a, &b).unwrap();
        assert_eq!(r.xhat, build_snyder_original(&a).xhat);
        let back = extract_phis(&build_snyder_original(&a)).unwrap();
        assert_eq!(back.phi1, TruncatedSeries::one(3));
        assert_eq!(back.phi2, TruncatedSeries::one(2));
        assert!(back.phi3.is_zero());
    }

    #[test]
    fn phi_bundle_round_trips() {
        let a = alg(3, 8);
        let b = default_bundle(4);
        let r = build_snyder_phi(&a, &b).unwrap();
        let back = extract_phis(&r).unwrap();
        assert_eq!(back.phi1, b.phi1);
        assert!(back.phi2.is_zero());
        assert!(back.phi3.is_zero());
    }

    #[test]
    fn bad_bundles_are_rejected() {
        let a = alg(3, 4);
        let b = SeriesBundle::from_phis(TruncatedSeries::one(2), TruncatedSeries::zero(1), TruncatedSeries::zero(1)).unwrap();
        assert_eq!(build_snyder_phi(&a, &b), Err(RealizationError::PhiRelation));
        let short = default_bundle(1);
        assert!(matches!(build_snyder_phi(&a, &short), Err(RealizationError::Series(SeriesError::InsufficientOrder { .. }))));
    }

    #[test]
    fn extended_models() {
        let a = alg(4, 4);
        let r = build_extended_snyder(&a);
        assert_eq!(r.m[0][1].act_on_unity().render(), "x[0,1]");
        assert_eq!(extract_phis(&r), Err(RealizationError::XhatDependent));
        for e in &r.xhat {
            assert!(e.max_xhat_degree() <= 1 && e.max_x_degree() <= 1);
        }
        // kernel constant term 1/2
        let k = kernel(2);
        assert_eq!(k.coeff(0), &ExactComplex::ratio(1, 2));
        let trivial =
            SeriesBundle::from_phis(TruncatedSeries::one(2), TruncatedSeries::one(1), TruncatedSeries::zero(1)).unwrap();
        assert_eq!(build_extended_snyder_phi(&a, &trivial).unwrap().xhat, r.xhat);
    }

    #[test]
    fn kappa_reductions() {
        let a = alg(3, 4);
        let k = build_kappa_extended(&a);
        let e = build_extended_snyder_phi(&a, &default_bundle(2)).unwrap();
        let n = build_kappa_poincare_natural(&a);
        for mu in 0..3 {
            assert_eq!(k.xhat[mu].drop_a_terms(), e.xhat[mu]);
            assert_eq!(k.xhat[mu].drop_beta_terms(), n.xhat[mu]);
        }
        let mixed = build_kappa_mixed(&a);
        let sn = build_snyder_phi(&a, &default_bundle(2)).unwrap();
        assert_eq!(mixed.xhat[1].drop_a_terms(), sn.xhat[1]);
    }

    #[test]
    fn remark_three_hermitian_form() {
        let a = alg(4, 6);
        let h = hermitize(&build_snyder_original(&a));
        let b2 = a.beta_pow(2);
        let px = a.contract(Family::P, Family::X);
        for mu in 0..4 {
            let sym = &(&a.dot_xp() * &a.p(mu)) + &(&a.p(mu) * &px);
            let expected = &a.x(mu) + &(&b2 * &sym).scale_rational(1, 2);
            assert_eq!(h.xhat[mu], expected);
            assert_eq!(h.xhat[mu].adjoint(), h.xhat[mu]);
        }
    }

    #[test]
    fn mutations_need_matching_models() {
        let a = alg(3, 4);
        assert!(build(Model::SnyderOriginal, &a, None, Some(Mutation::FlipXhatTerm)).is_err());
        let r = build(Model::ExtendedSnyder, &a, None, Some(Mutation::FlipXhatTerm)).unwrap();
        assert_eq!(r.name, "extended-snyder+flip-xhat-term");
        assert_ne!(r.xhat, build_extended_snyder(&a).xhat);
        assert!(build(Model::SnyderPhi, &a, None, Some(Mutation::Phi2PlusU)).is_ok());
        assert!(build(Model::KappaMixed, &a, None, Some(Mutation::DropMaTerm)).is_ok());
    }
}
