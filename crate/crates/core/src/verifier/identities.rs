//! Identities between the conjugation series and the `phi` functions.

use serde::Serialize;

use crate::series::{g1_from_f, g2_closed_form, g2_from_f, g3_from_f, SeriesBundle, SeriesError, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub name: &'static str,
    /// `F` the identity was checked for.
    pub case: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub order: usize,
    pub records: Vec<IdentityRecord>,
    pub ok: bool,
}

/// For each `F` (known to order `K + 1`), check mod `u^(K+1)`:
/// `g1 g3 = 1`; `g2` equals its closed form; the assembled
/// `phi2 = g2 + g3 (g1 g3 + u g2 g3)` equals `g2 + g3 + u g2 g3^2`; and
/// `(phi1, phi2)` satisfy the phi relation.
pub fn check_series_identities(order: usize, fs: &[TruncatedSeries]) -> Result<IdentityReport, SeriesError> {
    let mut records = Vec::new();
    for f in fs {
        let case = format!("F = {f}");
        let g1 = g1_from_f(f, order)?;
        let g2 = g2_from_f(f, order)?;
        let g3 = g3_from_f(f, order)?;
        let k = g1.order().min(g2.order());
        let mut push = |name, ok| records.push(IdentityRecord { name, case: case.clone(), ok });

        push("g1-g3-inverse", (&g1 * &g3) == TruncatedSeries::one(g1.order()));

        let g1_long = g1_from_f(f, order + 1)?;
        push("g2-closed-form", g1_long.order() > k && g2_closed_form(&g1_long)?.truncate(k) == g2.truncate(k));

        // x' + b^2 (x'.p') p' with x' = x g1 + b^2 (x.p) p g2 and p' = p g3
        let u = TruncatedSeries::variable(k);
        let assembled = &g2 + &(&g3 * &(&(&g1 * &g3) + &(&(&u * &g2) * &g3)));
        let phi2 = &(&g2 + &g3) + &(&(&g2 * &g3) * &g3).mul_u();
        push("assembly", assembled.agrees_with(&phi2));

        let bundle = SeriesBundle::from_phis(g1.clone(), phi2, TruncatedSeries::zero(k))?;
        push("phi-relation", bundle.satisfies_phi_relation());
    }
    let ok = records.iter().all(|r| r.ok);
    Ok(IdentityReport { order, records, ok })
}
