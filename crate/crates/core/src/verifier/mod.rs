//! Exact verification of realizations against their target algebras, an
//! independent matrix-representation oracle, and series identity checks.

mod identities;
mod oracle;
mod relations;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::realizations::Realization;
use crate::weyl::{AlgebraElement, AlgebraError};

pub use identities::{check_series_identities, IdentityRecord, IdentityReport};
pub use oracle::{rep_oracle, tensor_matrix, OracleError, OracleParams, OracleRecord, OracleReport};
pub use relations::{all_instances, instances, relations_for, Operand, Relation, RelationInstance};

/// Residual of one relation instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationRecord {
    pub name: &'static str,
    pub indices: Vec<usize>,
    pub residual_terms: usize,
    pub max_residual_weight: Option<u32>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub model: String,
    pub dim: usize,
    pub grade: u32,
    pub relations: Vec<RelationRecord>,
    pub ok: bool,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationRecord> {
        self.relations.iter().filter(|r| !r.ok)
    }

    pub fn instances_of(&self, name: &str) -> usize {
        self.relations.iter().filter(|r| r.name == name).count()
    }
}

/// Elements of a realization addressed by [`Operand`].
pub(crate) struct Operands<'a> {
    r: &'a Realization,
}

impl<'a> Operands<'a> {
    pub(crate) fn new(r: &'a Realization) -> Self {
        Operands { r }
    }

    pub(crate) fn get(&self, op: Operand) -> AlgebraElement {
        let alg = &self.r.algebra;
        match op {
            Operand::Coord(mu) => self.r.xhat[mu].clone(),
            Operand::Lorentz(mu, nu) => self.r.m[mu][nu].clone(),
            Operand::Tensor(mu, nu) => alg.xhat(mu, nu),
            Operand::X(mu) => alg.x(mu),
            Operand::P(mu) => alg.p(mu),
            Operand::One => alg.one(),
        }
    }
}

/// `[A, B] - sum c_k E_k` for one instance.
pub fn residual(r: &Realization, inst: &RelationInstance) -> Result<AlgebraElement, AlgebraError> {
    let ops = Operands::new(r);
    let mut res = ops.get(inst.lhs.0).commutator(&ops.get(inst.lhs.1))?;
    for (c, op) in &inst.rhs {
        res = res.try_sub(&ops.get(*op).mul_coefficient(c))?;
    }
    Ok(res)
}

/// Check every instance of `relations` (all index tuples) at the realization's grade.
pub fn verify(r: &Realization, relations: &[Relation]) -> VerificationReport {
    let start = Instant::now();
    let metric = r.algebra.metric();
    let insts: Vec<RelationInstance> = relations.iter().flat_map(|&rel| instances(rel, r.target, metric)).collect();
    let records: Vec<RelationRecord> = insts
        .par_iter()
        .map(|inst| {
            let res = residual(r, inst).expect("elements share one algebra");
            RelationRecord {
                name: inst.relation.name(),
                indices: inst.indices.clone(),
                residual_terms: res.len(),
                max_residual_weight: res.max_weight(),
                ok: res.is_zero(),
            }
        })
        .collect();
    VerificationReport {
        model: r.name.clone(),
        dim: r.dim(),
        grade: r.grade(),
        ok: records.iter().all(|x| x.ok),
        relations: records,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// [`verify`] against every relation of the realization's target algebra.
pub fn verify_all(r: &Realization) -> VerificationReport {
    verify(r, &relations_for(r.target))
}
