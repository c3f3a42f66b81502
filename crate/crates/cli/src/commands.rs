//! Subcommand bodies. Each returns a [`CommandResult`]; `main` only prints.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use zariski_core::chambers::{self, CensusConfig, ChamberError};
use zariski_core::enriques::{self, FibrationData};
use zariski_core::lattice::{self, IntersectionForm, LatticeVector, RationalVector};
use zariski_core::model_io::{self, decode_integer};
use zariski_core::surface::{self, SurfaceModel};
use zariski_core::zariski::{self, ZariskiError};
use zariski_core::{parse_rational, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Well-formed request whose mathematics failed.
    DomainError,
    /// Bad arguments or unreadable input.
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::DomainError => 1,
            Status::UsageError => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub human_text: String,
}

impl CommandResult {
    fn ok(mut payload: Value, human_text: String) -> Self {
        payload["status"] = json!("ok");
        Self {
            status: Status::Ok,
            payload,
            human_text,
        }
    }

    fn fail(status: Status, kind: &str, message: String, mut extra: Value) -> Self {
        if !extra.is_object() {
            extra = json!({});
        }
        extra["status"] = json!("error");
        extra["error"] = json!({ "kind": kind, "message": message });
        Self {
            status,
            payload: extra,
            human_text: format!("error: {message}"),
        }
    }

    fn usage(message: String) -> Self {
        Self::fail(Status::UsageError, "usage", message, Value::Null)
    }
}

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Builtin catalog name or path to a JSON model file.
pub fn resolve_model(reference: &str) -> Result<SurfaceModel, CommandResult> {
    if let Ok(m) = surface::builtin(reference) {
        return Ok(m);
    }
    if Path::new(reference).exists() {
        return model_io::load_model(reference)
            .map_err(|e| CommandResult::usage(format!("cannot load model `{reference}`: {e}")));
    }
    Err(CommandResult::usage(format!(
        "unknown model `{reference}` (builtins: {}; or pass a JSON file)",
        surface::builtin_names().join(", ")
    )))
}

/// `"1, 1/2, -3"` → exact rationals.
pub fn parse_coefficients(text: &str, rank: usize) -> Result<RationalVector, CommandResult> {
    let parts: Vec<&str> = text.split(',').collect();
    let mut out = Vec::with_capacity(parts.len());
    for p in &parts {
        out.push(parse_rational(p).ok_or_else(|| {
            CommandResult::usage(format!(
                "`{}` is not an exact rational (use p/q; floats are rejected)",
                p.trim()
            ))
        })?);
    }
    if out.len() != rank {
        return Err(CommandResult::usage(format!(
            "expected {rank} coefficients, found {}",
            out.len()
        )));
    }
    Ok(RationalVector::new(out))
}

fn parse_json_arg(text: &str, what: &str) -> Result<Value, CommandResult> {
    serde_json::from_str(text).map_err(|e| CommandResult::usage(format!("{what}: {e}")))
}

fn parse_matrix(v: &Value, what: &str) -> Result<Vec<Vec<num_bigint::BigInt>>, CommandResult> {
    let rows = v
        .as_array()
        .ok_or_else(|| CommandResult::usage(format!("{what}: expected an array of arrays")))?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let r = r
                .as_array()
                .ok_or_else(|| CommandResult::usage(format!("{what}[{i}]: expected an array")))?;
            r.iter()
                .enumerate()
                .map(|(j, x)| {
                    decode_integer(x, &format!("{what}[{i}][{j}]"))
                        .map_err(|e| CommandResult::usage(e.to_string()))
                })
                .collect()
        })
        .collect()
}

pub fn cmd_catalog() -> CommandResult {
    let models: Vec<Value> = surface::catalog()
        .iter()
        .map(|m| {
            json!({
                "name": m.name(),
                "rank": m.rank(),
                "curves": m.curves().len(),
                "curve_list_complete": m.metadata().curve_list_complete,
            })
        })
        .collect();
    let mut text = String::new();
    for m in &models {
        text += &format!(
            "{:<30} rank {:>2}  curves {:>2}  {}\n",
            m["name"].as_str().unwrap(),
            m["rank"],
            m["curves"],
            if m["curve_list_complete"].as_bool().unwrap() {
                "complete"
            } else {
                "partial curve list"
            }
        );
    }
    CommandResult::ok(json!({ "models": models }), text)
}

pub fn cmd_show(reference: &str) -> CommandResult {
    let model = match resolve_model(reference) {
        Ok(m) => m,
        Err(e) => return e,
    };
    let violations = surface::validate(&model);
    let sig = lattice::signature(model.form());
    let mut text = format!(
        "{} (rank {}, signature {sig})\n",
        model.name(),
        model.rank()
    );
    for c in model.curves() {
        text += &format!("  {:<6} {}\n", c.name(), c.coords());
    }
    text += &format!("  ample  {}\n", model.ample());
    for v in &violations {
        text += &format!("  violation: {v}\n");
    }
    CommandResult::ok(
        json!({
            "model": model_io::model_to_json(&model),
            "signature": to_json(&sig),
            "violations": to_json(&violations),
        }),
        text,
    )
}

fn zariski_failure(e: ZariskiError) -> CommandResult {
    let extra = match &e {
        ZariskiError::NotPseudoEffective { reason, subset } => {
            json!({ "reason": to_json(reason), "subset": subset })
        }
        _ => Value::Null,
    };
    let kind = match &e {
        ZariskiError::NotPseudoEffective { .. } => "not_pseudo_effective",
        _ => "zariski",
    };
    CommandResult::fail(Status::DomainError, kind, e.to_string(), extra)
}

pub fn cmd_decompose(reference: &str, coefficients: &str) -> CommandResult {
    let model = match resolve_model(reference) {
        Ok(m) => m,
        Err(e) => return e,
    };
    let d = match parse_coefficients(coefficients, model.rank()) {
        Ok(d) => d,
        Err(e) => return e,
    };
    let split = match zariski::zariski_decompose(&model, &d) {
        Ok(s) => s,
        Err(e) => return zariski_failure(e),
    };
    let p = split.positive();
    let volume = model.form().pair(p, p).expect("rank checked");
    let big = zariski::is_big(&model, &d);
    let (label, signature) = if big {
        let label = chambers::chamber_label(&model, &d).ok();
        let sig = match chambers::weyl_signature(&model, &d) {
            Ok(s) => json!({ "signs": s.sign_string(), "entries": to_json(s.entries()) }),
            Err(ChamberError::OnWall { curve }) => json!({ "on_wall": curve }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        (label.map(|l| to_json(&l)).unwrap_or(Value::Null), sig)
    } else {
        (Value::Null, Value::Null)
    };

    let terms: Vec<String> = split
        .negative_terms()
        .iter()
        .map(|t| format!("{}*{}", t.coefficient, t.name))
        .collect();
    let n = if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    };
    let mut text = format!("D = {d}\nP = {p}\nN = {n}\nvol = {volume}\nbig = {big}\n");
    if let Some(s) = signature.get("signs") {
        text += &format!("weyl signature = {}\n", s.as_str().unwrap());
    } else if let Some(c) = signature.get("on_wall") {
        text += &format!("on the wall of {}\n", c.as_str().unwrap());
    }

    CommandResult::ok(
        json!({
            "model": model.name(),
            "divisor": to_json(&d),
            "positive": to_json(p),
            "negative": to_json(split.negative_terms()),
            "support": split.support(),
            "volume": volume.to_string(),
            "big": big,
            "chamber_label": label,
            "weyl_signature": signature,
        }),
        text,
    )
}

pub fn cmd_criterion(reference: &str) -> CommandResult {
    let model = match resolve_model(reference) {
        Ok(m) => m,
        Err(e) => return e,
    };
    let v = chambers::numerically_determined(&model);
    let verdict = if v.determined {
        "determined"
    } else {
        "not_determined"
    };
    let mut text = format!("{}: {verdict}\n", model.name());
    for (a, b) in &v.witnesses {
        text += &format!("  witness: {a}, {b}\n");
    }
    if !v.curve_list_complete {
        text +=
            "  caveat: the curve list is partial; the verdict covers the declared curves only\n";
    }
    CommandResult::ok(
        json!({
            "model": model.name(),
            "verdict": verdict,
            "witnesses": v.witnesses,
            "curve_list_complete": v.curve_list_complete,
            "pairwise_disjoint_support": chambers::pairwise_disjoint_support_property(&model),
        }),
        text,
    )
}

fn chamber_failure(e: ChamberError) -> CommandResult {
    let kind = match &e {
        ChamberError::Model(_) => return CommandResult::usage(e.to_string()),
        ChamberError::PairDisjoint { .. } => "pair_disjoint",
        ChamberError::PairNotNegativeDefinite { .. } => "pair_not_negative_definite",
        ChamberError::EmptyCensus => return CommandResult::usage(e.to_string()),
        _ => "chamber",
    };
    CommandResult::fail(Status::DomainError, kind, e.to_string(), Value::Null)
}

pub fn cmd_counterexample(reference: &str, c1: &str, c2: &str) -> CommandResult {
    let model = match resolve_model(reference) {
        Ok(m) => m,
        Err(e) => return e,
    };
    let ce = match chambers::construct_counterexample(&model, c1, c2) {
        Ok(ce) => ce,
        Err(e) => return chamber_failure(e),
    };
    let r = &ce.report;
    let mut text = format!(
        "a = {}, b = {}, c = {}\nT1 = {}\nD1 = {}\nD2 = {}\n",
        ce.a, ce.b, ce.c, ce.t1, ce.d1, ce.d2
    );
    text += &format!("D1.{c1} = {}, D1.{c2} = {}\n", r.d1_c1, r.d1_c2);
    text += &format!("D2.{c1} = {}, D2.{c2} = {}\n", r.d2_c1, r.d2_c2);
    for c in &r.checks {
        text += &format!("  [{}] {}\n", if c.passed { "ok" } else { "FAIL" }, c.name);
    }
    let payload = json!({ "model": model.name(), "counterexample": to_json(&ce) });
    if r.all_passed() {
        CommandResult::ok(payload, text)
    } else {
        let mut res = CommandResult::fail(
            Status::DomainError,
            "verification",
            "counterexample checks failed".into(),
            payload,
        );
        res.human_text = text + "error: counterexample checks failed";
        res
    }
}

pub struct CensusArgs<'a> {
    pub model: &'a str,
    pub n: usize,
    pub seed: u64,
    /// Curve pair whose counterexample divisors are evaluated first.
    pub inject: Option<(&'a str, &'a str)>,
    pub include_samples: bool,
    pub execution: Execution,
}

pub fn cmd_census(args: &CensusArgs) -> CommandResult {
    let model = match resolve_model(args.model) {
        Ok(m) => m,
        Err(e) => return e,
    };
    let mut config = CensusConfig::new(args.n, args.seed);
    config.execution = args.execution;
    if let Some((c1, c2)) = args.inject {
        match chambers::construct_counterexample(&model, c1, c2) {
            Ok(ce) => config.fixtures = vec![ce.d1.to_rational(), ce.d2.to_rational()],
            Err(e) => return chamber_failure(e),
        }
    }
    let census = match chambers::census_with(&model, &config) {
        Ok(c) => c,
        Err(e) => return chamber_failure(e),
    };
    let mut text = format!(
        "{}: {} samples, {} attempts ({} not big, {} on a wall), curve order {}\n",
        census.model,
        census.samples.len(),
        census.attempts,
        census.skipped_not_big,
        census.skipped_on_wall,
        census.curves.join(" ")
    );
    for s in &census.summary {
        let sigs: Vec<String> = s
            .signatures
            .iter()
            .map(|c| format!("{} x{}", c.signs, c.count))
            .collect();
        text += &format!("  {{{}}}: {}\n", s.support.join(", "), sigs.join(", "));
    }
    let split = census.split_supports().len();
    text += &format!("supports with several Weyl signatures: {split}\n");
    let mut payload = to_json(&census);
    if !args.include_samples {
        payload.as_object_mut().unwrap().remove("samples");
    }
    payload["accepted"] = json!(census.samples.len());
    payload["split_supports"] = json!(split);
    CommandResult::ok(payload, text)
}

pub fn cmd_enriques_check(path: &str, strict: bool) -> CommandResult {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return CommandResult::usage(format!("cannot read `{path}`: {e}")),
    };
    let f = match FibrationData::from_json(&text) {
        Ok(f) => f,
        Err(e) => return CommandResult::usage(format!("invalid fibration file `{path}`: {e}")),
    };
    let domain = |e: enriques::EnriquesError| {
        CommandResult::fail(
            Status::DomainError,
            "inconsistent_fibration",
            e.to_string(),
            Value::Null,
        )
    };
    if let Err(e) = f.check(strict) {
        return domain(e);
    }
    let chain = match enriques::picard_bound_chain(&f) {
        Ok(c) => c,
        Err(e) => return domain(e),
    };
    let max = enriques::max_fiber_components(&f);
    let holds = max <= 2;
    let cover: Vec<String> = enriques::k3_cover_fibers(&f)
        .iter()
        .map(|k| k.to_string())
        .collect();
    let verdict = if holds {
        "every fiber of this fibration has at most two components"
    } else {
        "this fibration has a fiber with three or more components"
    };
    let human = format!(
        "{f}\nmax components {max}, t = {}, MW rank {}\ncover fibers: {}\nPicard lower bound {}\n{verdict}\n\
         (only this fibration was checked; other fibrations of the surface are not covered)\n",
        chain.t,
        chain.mordell_weil_rank,
        if cover.is_empty() { "none".to_string() } else { cover.join(", ") },
        chain.bound
    );
    CommandResult::ok(
        json!({
            "fibration": to_json(&f),
            "euler_sum": f.euler_sum(),
            "max_components": max,
            "t": chain.t,
            "mordell_weil_rank": chain.mordell_weil_rank,
            "cover_fibers": cover,
            "cover_trivial_rank": chain.cover_trivial_rank,
            "picard_lower_bound": chain.bound,
            "at_most_two_components": holds,
            "verdict": verdict,
        }),
        human,
    )
}

/// Form for `lattice` subcommands: `--gram`, else `--model`, else the
/// Enriques lattice `E8(−1) ⊕ U`.
pub fn resolve_form(
    gram: Option<&str>,
    model: Option<&str>,
) -> Result<IntersectionForm, CommandResult> {
    if let Some(g) = gram {
        let rows = parse_matrix(&parse_json_arg(g, "gram")?, "gram")?;
        return IntersectionForm::new(rows).map_err(|e| CommandResult::usage(format!("gram: {e}")));
    }
    if let Some(m) = model {
        return resolve_model(m).map(|m| m.form().clone());
    }
    Ok(surface::enriques_lattice())
}

pub fn cmd_lattice_signature(form: &IntersectionForm) -> CommandResult {
    let sig = lattice::signature(form);
    CommandResult::ok(
        json!({ "rank": form.rank(), "signature": to_json(&sig), "determinant": model_io::encode_integer(&form.determinant()) }),
        format!(
            "rank {}, signature {sig}, determinant {}\n",
            form.rank(),
            form.determinant()
        ),
    )
}

pub fn cmd_lattice_complement(form: &IntersectionForm, vectors: &str) -> CommandResult {
    let rows = match parse_json_arg(vectors, "vectors").and_then(|v| parse_matrix(&v, "vectors")) {
        Ok(r) => r,
        Err(e) => return e,
    };
    let vs: Vec<LatticeVector> = rows.into_iter().map(LatticeVector::new).collect();
    let basis = match lattice::orthogonal_complement(&vs, form) {
        Ok(b) => b,
        Err(e) => return CommandResult::usage(format!("vectors: {e}")),
    };
    let sig = if basis.is_empty() {
        None
    } else {
        Some(lattice::signature(
            &form.restrict(&basis).expect("complement has form rank"),
        ))
    };
    let mut text = format!("complement of rank {}", basis.len());
    if let Some(s) = &sig {
        text += &format!(", signature {s}");
    }
    text.push('\n');
    for b in &basis {
        text += &format!("  {b}\n");
    }
    CommandResult::ok(
        json!({ "basis": to_json(&basis), "signature": to_json(&sig) }),
        text,
    )
}

pub fn cmd_lattice_isotropic(form: &IntersectionForm, bound: u32) -> CommandResult {
    match lattice::find_isotropic_primitive(form, bound) {
        Some(v) => CommandResult::ok(json!({ "isotropic": to_json(&v), "bound": bound }), format!("{v}\n")),
        None => CommandResult::fail(
            Status::DomainError,
            "isotropic_not_found_in_bound",
            format!("no primitive isotropic vector with coordinates bounded by {bound} (not a proof that none exists)"),
            json!({ "bound": bound }),
        ),
    }
}
