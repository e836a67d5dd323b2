//! Target commutation relations as index-instantiated templates.

use std::fmt;

use serde::Serialize;

use crate::coeff::{Coefficient, ExactComplex, ParamExponent};
use crate::realizations::TargetAlgebra;
use crate::weyl::Metric;

/// Elements that appear in relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operand {
    /// Noncommutative coordinate `xhat_mu`.
    Coord(usize),
    /// Lorentz generator `M_mu,nu` of the realization.
    Lorentz(usize, usize),
    /// Tensorial generator `xh_mu,nu`.
    Tensor(usize, usize),
    X(usize),
    P(usize),
    One,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Relation {
    HeisXP,
    HeisXX,
    HeisPP,
    CoordCoord,
    LorentzCoord,
    LorentzLorentz,
    TensorTensor,
    TensorX,
    TensorP,
}

impl Relation {
    pub const ALL: [Relation; 9] = [
        Relation::HeisXP,
        Relation::HeisXX,
        Relation::HeisPP,
        Relation::CoordCoord,
        Relation::LorentzCoord,
        Relation::LorentzLorentz,
        Relation::TensorTensor,
        Relation::TensorX,
        Relation::TensorP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::HeisXP => "heis-xp",
            Relation::HeisXX => "heis-xx",
            Relation::HeisPP => "heis-pp",
            Relation::CoordCoord => "coord-coord",
            Relation::LorentzCoord => "lorentz-coord",
            Relation::LorentzLorentz => "lorentz-lorentz",
            Relation::TensorTensor => "tensor-tensor",
            Relation::TensorX => "tensor-x",
            Relation::TensorP => "tensor-p",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Relation::HeisXP | Relation::HeisXX | Relation::HeisPP | Relation::CoordCoord => 2,
            Relation::LorentzCoord | Relation::TensorX | Relation::TensorP => 3,
            Relation::LorentzLorentz | Relation::TensorTensor => 4,
        }
    }

    pub fn is_tensorial(self) -> bool {
        matches!(self, Relation::TensorTensor | Relation::TensorX | Relation::TensorP)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Relations a target algebra is checked against.
pub fn relations_for(target: TargetAlgebra) -> Vec<Relation> {
    Relation::ALL.into_iter().filter(|r| target.extended || !r.is_tensorial()).collect()
}

/// `[lhs.0, lhs.1] = sum c_k rhs_k` for one index tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub relation: Relation,
    pub indices: Vec<usize>,
    pub lhs: (Operand, Operand),
    pub rhs: Vec<(Coefficient, Operand)>,
}

struct Rhs<'a> {
    d: usize,
    metric: &'a Metric,
    terms: Vec<(Coefficient, Operand)>,
}

impl Rhs<'_> {
    /// `i * k * op`
    fn i_const(&mut self, k: i64, op: Operand) {
        if k != 0 {
            self.terms.push((Coefficient::constant(self.d, ExactComplex::i().mul_gauss(k as i128, 0)), op));
        }
    }

    /// `i * sign * param * op`
    fn i_param(&mut self, sign: i64, param: ParamExponent, op: Operand) {
        self.terms.push((Coefficient::monomial(param, ExactComplex::i().mul_gauss(sign as i128, 0)), op));
    }

    fn eta(&self, a: usize, b: usize) -> i64 {
        self.metric.eta(a, b)
    }

    /// `i (eta_mr G_ns - eta_ms G_nr - eta_nr G_ms + eta_ns G_mr)`
    fn lorentz_bracket(&mut self, [m, n, r, s]: [usize; 4], g: impl Fn(usize, usize) -> Operand) {
        for (e, a, b) in [(self.eta(m, r), n, s), (-self.eta(m, s), n, r), (-self.eta(n, r), m, s), (self.eta(n, s), m, r)] {
            if a != b {
                self.i_const(e, g(a, b));
            }
        }
    }
}

fn tuples(d: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| (0..d).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// All index instances of `relation`, over every tuple including repeats.
pub fn instances(relation: Relation, target: TargetAlgebra, metric: &Metric) -> Vec<RelationInstance> {
    let d = metric.dim();
    tuples(d, relation.arity())
        .into_iter()
        .map(|idx| {
            let mut rhs = Rhs { d, metric, terms: Vec::new() };
            let lhs = match relation {
                Relation::HeisXP => {
                    rhs.i_const(metric.eta(idx[0], idx[1]), Operand::One);
                    (Operand::X(idx[0]), Operand::P(idx[1]))
                }
                Relation::HeisXX => (Operand::X(idx[0]), Operand::X(idx[1])),
                Relation::HeisPP => (Operand::P(idx[0]), Operand::P(idx[1])),
                Relation::CoordCoord => {
                    let (mu, nu) = (idx[0], idx[1]);
                    if target.kappa {
                        rhs.i_param(1, ParamExponent::a(d, mu), Operand::Coord(nu));
                        rhs.i_param(-1, ParamExponent::a(d, nu), Operand::Coord(mu));
                    }
                    if target.beta && mu != nu {
                        rhs.i_param(1, ParamExponent::beta(d, 2), Operand::Lorentz(mu, nu));
                    }
                    (Operand::Coord(mu), Operand::Coord(nu))
                }
                Relation::LorentzCoord => {
                    let (mu, nu, la) = (idx[0], idx[1], idx[2]);
                    // -i (xhat_mu eta_nu,la - xhat_nu eta_mu,la + a_mu M_nu,la - a_nu M_mu,la)
                    rhs.i_const(-metric.eta(nu, la), Operand::Coord(mu));
                    rhs.i_const(metric.eta(mu, la), Operand::Coord(nu));
                    if target.kappa {
                        if nu != la {
                            rhs.i_param(-1, ParamExponent::a(d, mu), Operand::Lorentz(nu, la));
                        }
                        if mu != la {
                            rhs.i_param(1, ParamExponent::a(d, nu), Operand::Lorentz(mu, la));
                        }
                    }
                    (Operand::Lorentz(mu, nu), Operand::Coord(la))
                }
                Relation::LorentzLorentz => {
                    rhs.lorentz_bracket([idx[0], idx[1], idx[2], idx[3]], Operand::Lorentz);
                    (Operand::Lorentz(idx[0], idx[1]), Operand::Lorentz(idx[2], idx[3]))
                }
                Relation::TensorTensor => {
                    rhs.lorentz_bracket([idx[0], idx[1], idx[2], idx[3]], Operand::Tensor);
                    (Operand::Tensor(idx[0], idx[1]), Operand::Tensor(idx[2], idx[3]))
                }
                Relation::TensorX => (Operand::Tensor(idx[0], idx[1]), Operand::X(idx[2])),
                Relation::TensorP => (Operand::Tensor(idx[0], idx[1]), Operand::P(idx[2])),
            };
            RelationInstance { relation, indices: idx, lhs, rhs: rhs.terms }
        })
        .collect()
}

/// Instances for every relation of `target`, sorted by relation then indices.
pub fn all_instances(target: TargetAlgebra, metric: &Metric) -> Vec<RelationInstance> {
    relations_for(target).into_iter().flat_map(|r| instances(r, target, metric)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_counts() {
        let m = Metric::lorentzian(4).unwrap();
        let t = TargetAlgebra { beta: true, kappa: false, extended: true };
        assert_eq!(instances(Relation::CoordCoord, t, &m).len(), 16);
        assert_eq!(instances(Relation::LorentzCoord, t, &m).len(), 64);
        assert_eq!(instances(Relation::TensorTensor, t, &m).len(), 256);
        assert_eq!(all_instances(t, &m).len(), 3 * 16 + 16 + 64 + 256 + 256 + 64 + 64);
        let plain = TargetAlgebra { extended: false, ..t };
        assert!(!relations_for(plain).contains(&Relation::TensorX));
    }

    #[test]
    fn coordinate_bracket_terms() {
        let m = Metric::lorentzian(3).unwrap();
        let t = TargetAlgebra { beta: true, kappa: true, extended: false };
        let inst = &instances(Relation::CoordCoord, t, &m)[1];
        assert_eq!(inst.indices, vec![0, 1]);
        assert_eq!(inst.rhs.len(), 3);
        let diag = &instances(Relation::CoordCoord, t, &m)[0];
        // a_0 xhat_0 - a_0 xhat_0 stays as two explicit terms
        assert_eq!(diag.rhs.len(), 2);
    }
}
