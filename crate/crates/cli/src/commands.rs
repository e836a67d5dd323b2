use std::fmt::Write as _;
use std::fs;

use serde::Serialize;
use serde_json::Value;
use snyder_core::hadamard::TransformContext;
use snyder_core::realizations::{
    build, build_extended_snyder_phi, bundle_from_phi1, extract_phis, hermitize as hermitize_realization, Model, Realization,
};
use snyder_core::series::{
    g1_from_f, g2_from_f, g3_from_f, phi_bundle, solve_f_for_phi1, SeriesBundle, TransformSpec, TruncatedSeries,
};
use snyder_core::verifier::{rep_oracle, verify_all, OracleReport, VerificationReport};
use snyder_core::weyl::Algebra;

use crate::config::{algebra, optional_series, oracle_params, require_model, series_flag, truncation, CliError, Result};
use crate::{Format, Opts};

/// What a command produced: a text rendering, a JSON rendering, and whether it passed.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    fn new(text: String, json: impl Serialize, ok: bool) -> Result<Self> {
        let json = serde_json::to_value(json).map_err(|e| CliError::Io(e.into()))?;
        Ok(Outcome { text, json, ok })
    }

    pub fn emit(&self, o: &Opts) -> Result<()> {
        let format = o.format.unwrap_or(match &o.out {
            Some(p) if p.extension().is_some_and(|e| e == "json") => Format::Json,
            _ => Format::Text,
        });
        let body = match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Io(e.into()))?;
                s.push('\n');
                s
            }
        };
        match &o.out {
            Some(path) => {
                fs::write(path, body)?;
                println!("{} {}", if self.ok { "ok" } else { "FAILED" }, path.display());
            }
            None => print!("{body}"),
        }
        Ok(())
    }
}

fn zero_or(s: Option<TruncatedSeries>, order: usize) -> TruncatedSeries {
    s.unwrap_or_else(|| TruncatedSeries::zero(order))
}

/// `F` and `F0` from `--F`/`--phi1` and `--F0`, known to `order`.
fn transform_spec(o: &Opts, order: usize) -> Result<TransformSpec> {
    if o.phi1.is_some() && o.f.is_some() {
        return Err(CliError::Usage("give at most one of --F and --phi1".into()));
    }
    let f = match &o.phi1 {
        Some(t) => solve_f_for_phi1(&series_flag("--phi1", t, order)?, order)?,
        None => zero_or(optional_series("--F", o.f.as_deref(), order)?, order),
    };
    let f0 = zero_or(optional_series("--F0", o.f0.as_deref(), order)?, order);
    Ok(TransformSpec::new(f0, f)?)
}

/// Bundle for a phi model from `--phi1`, or from `--F`/`--F0`; `None` selects the default.
fn model_bundle(o: &Opts, model: Model, alg: &Algebra, order: usize) -> Result<Option<SeriesBundle>> {
    if o.phi1.is_none() && o.f.is_none() && o.f0.is_none() {
        return Ok(None);
    }
    if !model.takes_bundle() {
        return Err(CliError::Usage(format!("--F, --F0 and --phi1 do not apply to {model}")));
    }
    if let (Some(t), None, None) = (&o.phi1, &o.f, &o.f0) {
        return Ok(Some(bundle_from_phi1(&series_flag("--phi1", t, order + 1)?, order)?));
    }
    let spec = transform_spec(o, order + 1)?;
    let bundle = if spec.f0.is_zero() { phi_bundle(&spec, order)? } else { TransformContext::new(alg, spec)?.bundle()? };
    Ok(Some(bundle))
}

fn build_model(o: &Opts, model: Model, alg: &Algebra, order: usize) -> Result<Realization> {
    let bundle = model_bundle(o, model, alg, order)?;
    Ok(build(model, alg, bundle.as_ref(), o.mutate)?)
}

fn timed(mut rep: VerificationReport, o: &Opts) -> VerificationReport {
    if o.no_timing {
        rep.elapsed_ms = 0;
    }
    rep
}

fn rows(s: &TruncatedSeries) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct BundleRows {
    phi1: Vec<String>,
    phi2: Vec<String>,
    phi3: Vec<String>,
}

impl BundleRows {
    fn new(b: &SeriesBundle) -> Self {
        BundleRows { phi1: rows(&b.phi1), phi2: rows(&b.phi2), phi3: rows(&b.phi3) }
    }

    fn write_text(&self, out: &mut String) {
        for (name, r) in [("phi1", &self.phi1), ("phi2", &self.phi2), ("phi3", &self.phi3)] {
            let _ = writeln!(out, "{name}: {}", r.join(", "));
        }
    }
}

fn write_verification(out: &mut String, rep: &VerificationReport) {
    let mut names: Vec<&str> = Vec::new();
    for r in &rep.relations {
        if !names.contains(&r.name) {
            names.push(r.name);
        }
    }
    for name in names {
        let total = rep.instances_of(name);
        let failed = rep.relations.iter().filter(|r| r.name == name && !r.ok).count();
        let status = if failed == 0 { "ok".to_string() } else { format!("{failed} FAILED") };
        let _ = writeln!(out, "  {name:<16} {total:>4} instances  {status}");
    }
    for f in rep.failures().take(10) {
        let _ = writeln!(
            out,
            "  residual {}{:?}: {} terms, max weight {}",
            f.name,
            f.indices,
            f.residual_terms,
            f.max_residual_weight.map_or("-".into(), |w| w.to_string())
        );
    }
    let _ = writeln!(out, "verification: {} ({} ms)", if rep.ok { "ok" } else { "FAILED" }, rep.elapsed_ms);
}

fn write_oracle(out: &mut String, rep: &OracleReport) {
    let failed = rep.relations.iter().filter(|r| !r.ok).count();
    let _ = writeln!(
        out,
        "oracle: {} (degree {}, basis {}, {} instances, {} failing)",
        if rep.ok { "ok" } else { "FAILED" },
        rep.poly_degree,
        rep.basis_size,
        rep.relations.len(),
        failed
    );
}

fn write_elements(out: &mut String, r: &Realization) {
    for (mu, e) in r.xhat.iter().enumerate() {
        let _ = writeln!(out, "xhat[{mu}] = {}", e.render());
    }
}

#[derive(Serialize)]
struct SeriesReport {
    order: usize,
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "F0")]
    f0: String,
    #[serde(flatten)]
    phis: BundleRows,
    g1: Vec<String>,
    g2: Vec<String>,
    g3: Vec<String>,
}

pub fn series(o: &Opts) -> Result<Outcome> {
    let k = truncation(o, o.model)?.order;
    let spec = transform_spec(o, k + 1)?;
    let g1 = g1_from_f(&spec.f, k)?;
    let g2 = g2_from_f(&spec.f, k)?;
    let g3 = g3_from_f(&spec.f, k)?;
    let bundle = if spec.f0.is_zero() {
        phi_bundle(&spec, k)?
    } else {
        // phi3 comes from conjugating in the operator engine
        let alg = algebra(o, 2 * k as u32 + 2)?;
        let b = TransformContext::new(&alg, spec.clone())?.bundle()?;
        SeriesBundle::from_phis(b.phi1.truncate(k), b.phi2.truncate(k), b.phi3.truncate(k))?
    };
    let report = SeriesReport {
        order: k,
        f: spec.f.truncate(k).to_string(),
        f0: spec.f0.truncate(k).to_string(),
        phis: BundleRows::new(&bundle),
        g1: rows(&g1),
        g2: rows(&g2),
        g3: rows(&g3),
    };
    let mut text = String::new();
    let _ = writeln!(text, "order {k}");
    let _ = writeln!(text, "F  = {}", report.f);
    let _ = writeln!(text, "F0 = {}", report.f0);
    report.phis.write_text(&mut text);
    for (name, r) in [("g1", &report.g1), ("g2", &report.g2), ("g3", &report.g3)] {
        let _ = writeln!(text, "{name}: {}", r.join(", "));
    }
    Outcome::new(text, report, true)
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleReport>,
}

pub fn verify(o: &Opts) -> Result<Outcome> {
    let model = require_model(o)?;
    let t = truncation(o, Some(model))?;
    let alg = algebra(o, t.grade)?;
    let r = build_model(o, model, &alg, t.order)?;
    let oracle = if o.oracle { Some(rep_oracle(&r, &oracle_params(o)?)?) } else { None };
    let report = timed(verify_all(&r), o);
    let ok = report.ok && oracle.as_ref().is_none_or(|x| x.ok);
    let mut text = String::new();
    let _ = writeln!(text, "{} dim {} grade {}", report.model, report.dim, report.grade);
    write_verification(&mut text, &report);
    if let Some(rep) = &oracle {
        write_oracle(&mut text, rep);
    }
    Outcome::new(text, VerifyOutput { report, oracle }, ok)
}

#[derive(Serialize)]
struct TransformOutput {
    model: String,
    dim: usize,
    grade: u32,
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "F0")]
    f0: String,
    xhat: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bundle: Option<BundleRows>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family_member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    verification: VerificationReport,
}

pub fn transform(o: &Opts) -> Result<Outcome> {
    let model = o.model.unwrap_or(Model::SnyderOriginal);
    let t = truncation(o, Some(model))?;
    let alg = algebra(o, t.grade)?;
    let spec = {
        // --phi1 here selects the base model's bundle, not the transformation
        let mut fo = o.clone();
        fo.phi1 = None;
        transform_spec(&fo, t.order + 1)?
    };
    let base_bundle = match (&o.phi1, model.takes_bundle()) {
        (Some(p), true) => Some(bundle_from_phi1(&series_flag("--phi1", p, t.order + 1)?, t.order)?),
        (Some(_), false) => return Err(CliError::Usage(format!("--phi1 does not apply to {model}"))),
        (None, _) => None,
    };
    let base = build(model, &alg, base_bundle.as_ref(), o.mutate)?;
    let ctx = TransformContext::new(&alg, spec.clone())?;
    let r = ctx.transform_realization(&base)?;

    let (bundle, note) = match extract_phis(&r) {
        Ok(b) => (Some(BundleRows::new(&b)), None),
        Err(e) => (None, Some(format!("no phi decomposition: {e}"))),
    };
    // the extended model is carried into the phi family with the bundle of F
    let family_member = if model == Model::ExtendedSnyder && o.mutate.is_none() && spec.f0.is_zero() {
        let member = build_extended_snyder_phi(&alg, &phi_bundle(&spec, t.order)?)?;
        Some(member.xhat == r.xhat)
    } else {
        None
    };
    let verification = timed(verify_all(&r), o);

    let mut text = String::new();
    let _ = writeln!(text, "{} dim {} grade {}", r.name, r.dim(), r.grade());
    let _ = writeln!(text, "F  = {}", spec.f);
    let _ = writeln!(text, "F0 = {}", spec.f0);
    write_elements(&mut text, &r);
    if let Some(b) = &bundle {
        b.write_text(&mut text);
    }
    if let Some(m) = family_member {
        let _ = writeln!(text, "extended-snyder-phi member: {}", if m { "yes" } else { "no" });
    }
    if let Some(n) = &note {
        let _ = writeln!(text, "note: {n}");
    }
    write_verification(&mut text, &verification);
    let ok = verification.ok && family_member != Some(false);
    let out = TransformOutput {
        model: r.name.clone(),
        dim: r.dim(),
        grade: r.grade(),
        f: spec.f.to_string(),
        f0: spec.f0.to_string(),
        xhat: r.xhat.iter().map(|e| e.render()).collect(),
        bundle,
        family_member,
        note,
        verification,
    };
    Outcome::new(text, out, ok)
}

#[derive(Serialize)]
struct HermitizeOutput {
    model: String,
    dim: usize,
    grade: u32,
    xhat: Vec<String>,
    self_adjoint: bool,
    verification: VerificationReport,
}

pub fn hermitize(o: &Opts) -> Result<Outcome> {
    let model = require_model(o)?;
    let t = truncation(o, Some(model))?;
    let alg = algebra(o, t.grade)?;
    let h = hermitize_realization(&build_model(o, model, &alg, t.order)?);
    let self_adjoint = h.xhat.iter().chain(h.m.iter().flatten()).all(|e| e.adjoint() == *e);
    let verification = timed(verify_all(&h), o);

    let mut text = String::new();
    let _ = writeln!(text, "{} dim {} grade {}", h.name, h.dim(), h.grade());
    write_elements(&mut text, &h);
    let _ = writeln!(text, "self-adjoint: {}", if self_adjoint { "yes" } else { "NO" });
    write_verification(&mut text, &verification);
    let ok = self_adjoint && verification.ok;
    let out = HermitizeOutput {
        model: h.name.clone(),
        dim: h.dim(),
        grade: h.grade(),
        xhat: h.xhat.iter().map(|e| e.render()).collect(),
        self_adjoint,
        verification,
    };
    Outcome::new(text, out, ok)
}

pub fn oracle(o: &Opts) -> Result<Outcome> {
    let model = require_model(o)?;
    let t = truncation(o, Some(model))?;
    let alg = algebra(o, t.grade)?;
    let r = build_model(o, model, &alg, t.order)?;
    let rep = rep_oracle(&r, &oracle_params(o)?)?;
    let mut text = String::new();
    let _ = writeln!(text, "{} dim {} grade {}", rep.model, rep.dim, rep.grade);
    for f in rep.relations.iter().filter(|x| !x.ok).take(10) {
        let _ = writeln!(text, "  {}{:?}: {} failing basis vectors", f.name, f.indices, f.failing_vectors);
    }
    write_oracle(&mut text, &rep);
    let ok = rep.ok;
    Outcome::new(text, rep, ok)
}
