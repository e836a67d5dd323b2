//! Representation oracle: `x_mu` acts by multiplication and
//! `p_mu = -i eta_mumu d/dx_mu` on polynomials, the tensorial generators act
//! on a column index through vector-representation matrices, and the formal
//! parameters take exact rational values. Every relation residual must
//! annihilate each basis vector `monomial (x) column`.
//!
//! The check is necessary, not sufficient. Realizations truncated at grade
//! `D` differ from the exact ones only by terms with at least `D - 1`
//! momenta, so a polynomial degree of at most `D - 2` keeps it exact.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeff::ExactComplex;
use crate::realizations::Realization;
use crate::weyl::{AlgebraElement, Metric};

use super::relations::{all_instances, Operand, RelationInstance};
use super::Operands;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("representation oracle supports d <= 4, got {0}")]
    DimensionTooLarge(usize),
    #[error("basis of {size} vectors exceeds the limit {limit}")]
    BasisOverflow { size: usize, limit: usize },
    #[error("grade {grade} is below polynomial degree + 2 = {need}")]
    GradeTooLow { grade: u32, need: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleParams {
    pub poly_degree: u32,
    pub beta: BigRational,
    /// Values of `a_mu`; missing components are zero.
    pub a: Vec<BigRational>,
    pub max_basis: usize,
}

impl Default for OracleParams {
    /// Degree 3, `b = 1/7`, `a = (1/11, 0, ...)`.
    fn default() -> Self {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        OracleParams { poly_degree: 3, beta: q(1, 7), a: vec![q(1, 11)], max_basis: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecord {
    pub name: &'static str,
    pub indices: Vec<usize>,
    pub failing_vectors: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub model: String,
    pub dim: usize,
    pub grade: u32,
    pub poly_degree: u32,
    pub basis_size: usize,
    pub relations: Vec<OracleRecord>,
    pub ok: bool,
}

/// Basis element: polynomial exponents and column index.
type Basis = (Vec<u16>, usize);
type Vector = BTreeMap<Basis, ExactComplex>;

/// Matrix of the tensorial generator `xh_m,n` in the vector representation,
/// `X^alpha_beta = -i (delta^alpha_m eta_n,beta - delta^alpha_n eta_m,beta)`.
pub fn tensor_matrix(metric: &Metric, m: usize, n: usize) -> Vec<Vec<ExactComplex>> {
    let d = metric.dim();
    let mut out = vec![vec![ExactComplex::zero(); d]; d];
    for (alpha, row) in out.iter_mut().enumerate() {
        for (beta, slot) in row.iter_mut().enumerate() {
            let v = i64::from(alpha == m) * metric.eta(n, beta) - i64::from(alpha == n) * metric.eta(m, beta);
            *slot = ExactComplex::i().mul_gauss(-(v as i128), 0);
        }
    }
    out
}

struct NumericTerm {
    xh: Vec<u16>,
    x: Vec<u16>,
    p: Vec<u16>,
    c: ExactComplex,
}

struct NumericOp {
    terms: Vec<NumericTerm>,
}

impl NumericOp {
    fn new(e: &AlgebraElement, params: &OracleParams) -> Self {
        let d = e.dim();
        let a: Vec<BigRational> =
            (0..d).map(|i| params.a.get(i).cloned().unwrap_or_else(|| BigRational::from_integer(0.into()))).collect();
        let terms = e
            .terms()
            .filter_map(|(m, c)| {
                let mut w = num_traits::pow(params.beta.clone(), m.beta_pow() as usize);
                for (ai, &k) in a.iter().zip(m.a_exps()) {
                    w *= num_traits::pow(ai.clone(), k as usize);
                }
                let c = c.scale(&w);
                (!c.is_zero()).then(|| NumericTerm {
                    xh: m.xhat_exps().to_vec(),
                    x: m.x_exps().to_vec(),
                    p: m.p_exps().to_vec(),
                    c,
                })
            })
            .collect();
        NumericOp { terms }
    }
}

struct Rep<'a> {
    metric: &'a Metric,
    columns: usize,
}

impl Rep<'_> {
    /// One operator monomial on one basis vector.
    #[allow(clippy::needless_range_loop)]
    fn apply_term(&self, t: &NumericTerm, (exps, col): &Basis) -> Option<(Basis, ExactComplex)> {
        let mut exps = exps.clone();
        let mut c = t.c.clone();
        for mu in 0..exps.len() {
            let k = t.p[mu];
            if k == 0 {
                continue;
            }
            if exps[mu] < k {
                return None;
            }
            // p^k x^e = falling(e, k) (-i eta)^k x^(e-k)
            let mut falling: i128 = 1;
            for j in 0..k {
                falling *= i128::from(exps[mu] - j);
            }
            let eta = self.metric.eta(mu, mu) as i128;
            let phase = match k % 4 {
                0 => (1, 0),
                1 => (0, -eta),
                2 => (-1, 0),
                _ => (0, eta),
            };
            c = c.mul_gauss(phase.0 * falling, phase.1 * falling);
            exps[mu] -= k;
        }
        for (e, &x) in exps.iter_mut().zip(&t.x) {
            *e += x;
        }
        let mut col = *col;
        // rightmost generator acts first
        for (k, &e) in t.xh.iter().enumerate().rev() {
            if e == 0 {
                continue;
            }
            assert!(self.columns > 1, "tensorial term in a model without tensorial generators");
            let (m, n) = self.metric.pairs()[k];
            for _ in 0..e {
                // X e_n = -i eta_nn e_m, X e_m = i eta_mm e_n
                if col == n {
                    c = c.mul_gauss(0, -(self.metric.eta(n, n) as i128));
                    col = m;
                } else if col == m {
                    c = c.mul_gauss(0, self.metric.eta(m, m) as i128);
                    col = n;
                } else {
                    return None;
                }
            }
        }
        Some(((exps, col), c))
    }
}

struct Instance<'a> {
    rep: Rep<'a>,
    ops: &'a HashMap<Operand, NumericOp>,
    cache: HashMap<(Operand, Basis), Vector>,
}

impl Instance<'_> {
    fn apply_basis(&mut self, op: Operand, b: &Basis) -> Vector {
        if let Some(v) = self.cache.get(&(op, b.clone())) {
            return v.clone();
        }
        let mut out = Vector::new();
        for t in &self.ops[&op].terms {
            if let Some((nb, c)) = self.rep.apply_term(t, b) {
                add_into(&mut out, nb, &c);
            }
        }
        self.cache.insert((op, b.clone()), out.clone());
        out
    }

    fn apply(&mut self, op: Operand, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (b, c) in v {
            for (nb, nc) in self.apply_basis(op, b) {
                add_into(&mut out, nb, &(&nc * c));
            }
        }
        out
    }
}

fn add_into(v: &mut Vector, b: Basis, c: &ExactComplex) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(b.clone()).or_insert_with(ExactComplex::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&b);
    }
}

fn monomials(d: usize, degree: u32) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u16>| {
                let used: u32 = m.iter().map(|&e| u32::from(e)).sum();
                (0..=(degree - used) as u16).map(move |e| [m.clone(), vec![e]].concat())
            })
            .collect();
    }
    out
}

/// Run every relation of the realization's target algebra on the
/// representation.
pub fn rep_oracle(r: &Realization, params: &OracleParams) -> Result<OracleReport, OracleError> {
    let d = r.dim();
    if d > 4 {
        return Err(OracleError::DimensionTooLarge(d));
    }
    if r.grade() < params.poly_degree + 2 {
        return Err(OracleError::GradeTooLow { grade: r.grade(), need: params.poly_degree + 2 });
    }
    let columns = if r.target.extended { d } else { 1 };
    let polys = monomials(d, params.poly_degree);
    let size = polys.len() * columns;
    if size > params.max_basis {
        return Err(OracleError::BasisOverflow { size, limit: params.max_basis });
    }
    let basis: Vec<Basis> = polys.iter().flat_map(|m| (0..columns).map(move |c| (m.clone(), c))).collect();
    let metric = r.algebra.metric().as_ref();
    let insts = all_instances(r.target, metric);

    let resolver = Operands::new(r);
    let mut ops: HashMap<Operand, NumericOp> = HashMap::new();
    for inst in &insts {
        for op in [inst.lhs.0, inst.lhs.1].into_iter().chain(inst.rhs.iter().map(|(_, o)| *o)) {
            ops.entry(op).or_insert_with(|| NumericOp::new(&resolver.get(op), params));
        }
    }
    let a: Vec<BigRational> =
        (0..d).map(|i| params.a.get(i).cloned().unwrap_or_else(|| BigRational::from_integer(0.into()))).collect();

    let records: Vec<OracleRecord> = insts
        .par_iter()
        .map(|inst: &RelationInstance| {
            let mut run = Instance { rep: Rep { metric, columns }, ops: &ops, cache: HashMap::new() };
            let rhs: Vec<(ExactComplex, Operand)> = inst.rhs.iter().map(|(c, o)| (c.evaluate(&params.beta, &a), *o)).collect();
            let (l, rt) = inst.lhs;
            let mut failing = 0;
            for b in &basis {
                let v: Vector = [(b.clone(), ExactComplex::one())].into_iter().collect();
                let lr = run.apply(rt, &v);
                let rl = run.apply(l, &v);
                let mut res = run.apply(l, &lr);
                for (nb, c) in run.apply(rt, &rl) {
                    add_into(&mut res, nb, &-c);
                }
                for (c, o) in &rhs {
                    for (nb, x) in run.apply(*o, &v) {
                        add_into(&mut res, nb, &-(&x * c));
                    }
                }
                failing += usize::from(!res.is_empty());
            }
            OracleRecord { name: inst.relation.name(), indices: inst.indices.clone(), failing_vectors: failing, ok: failing == 0 }
        })
        .collect();
    Ok(OracleReport {
        model: r.name.clone(),
        dim: d,
        grade: r.grade(),
        poly_degree: params.poly_degree,
        basis_size: size,
        ok: records.iter().all(|x| x.ok),
        relations: records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<ExactComplex>], b: &[Vec<ExactComplex>]) -> Vec<Vec<ExactComplex>> {
        let d = a.len();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut s = ExactComplex::zero();
                        for k in 0..d {
                            s += &(&a[i][k] * &b[k][j]);
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    }

    fn combine(terms: &[(i64, &Vec<Vec<ExactComplex>>)], d: usize) -> Vec<Vec<ExactComplex>> {
        let mut out = vec![vec![ExactComplex::zero(); d]; d];
        for (k, m) in terms {
            for i in 0..d {
                for j in 0..d {
                    out[i][j] += &m[i][j].mul_gauss(*k as i128, 0);
                }
            }
        }
        out
    }

    #[test]
    fn matrices_close_the_lorentz_algebra_d4() {
        let metric = Metric::lorentzian(4).unwrap();
        let d = 4;
        let zero = vec![vec![ExactComplex::zero(); d]; d];
        let j = |m: usize, n: usize| if m == n { zero.clone() } else { tensor_matrix(&metric, m, n) };
        let mut checked = 0;
        for &(m, n) in metric.pairs() {
            for &(r, s) in metric.pairs() {
                let lhs = combine(&[(1, &matmul(&j(m, n), &j(r, s))), (-1, &matmul(&j(r, s), &j(m, n)))], d);
                let e = |a: usize, b: usize| metric.eta(a, b);
                let rhs = combine(&[(e(m, r), &j(n, s)), (-e(m, s), &j(n, r)), (-e(n, r), &j(m, s)), (e(n, s), &j(m, r))], d);
                let rhs: Vec<Vec<ExactComplex>> = rhs.iter().map(|row| row.iter().map(|x| x.mul_gauss(0, 1)).collect()).collect();
                assert_eq!(lhs, rhs, "pairs {m}{n} {r}{s}");
                checked += 1;
            }
        }
        assert_eq!(checked, 36);
    }

    #[test]
    fn monomial_basis_size() {
        assert_eq!(monomials(4, 3).len(), 35);
        assert_eq!(monomials(2, 2).len(), 6);
    }
}
