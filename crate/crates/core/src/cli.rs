//! Job files, the job runner and the `noether` command line.
//!
//! A job is `{"command": …, "payload": {…}, "budgets": {…}}`. Running it
//! gives a [`Report`] whose JSON form is deterministic; wall-clock timings
//! live in a separate field that is only printed on request.

use std::ffi::OsString;
use std::fmt;
use std::io::Read;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::baer::{
    baer_chain, baer_step, baer_test, injective_envelope_bruteforce, injective_resolution,
    BaerOptions, EnvelopeOptions,
};
use crate::cech::{
    affine_vanishing_check, expected_top_and_bottom, twisted_cohomology_dims, AffineWindow,
    TwistData,
};
use crate::digraph::{
    basis_with_intersections, count_digraph_space, count_finite_digraph_space, evaluate_sheaf,
    extract_digraph, extract_zz_digraph, is_quasi_coherent, round_trip,
    section_membership_fraction, validate_digraph, ExtractOptions, PiecewiseOracle, ZZSheafData,
};
use crate::error::{Error, Result};
use crate::etale::{run_tower_suite, ExponentRule};
use crate::field::Field;
use crate::finite::{
    enumerate_ideals, enumerate_spec, hom_from_ideal, noetherian_witness, FiniteIdeal,
    FiniteModule, FiniteRing,
};
use crate::groebner::Budget;
use crate::json::{
    build_opens, parse_in, points_of, CoverDesc, DigraphDesc, FiniteModuleDesc, FiniteRingDesc,
    GeneratorDesc, IdealDesc, OpenDesc, OracleDesc, RingDesc, SpaceDesc, ZZSheafDesc,
};
use crate::ring::{CombineOp, PresentedRing};
use crate::topology::{cover_check, DistinguishedOpen, FiniteSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Groebner,
    Ideal,
    Open,
    DigraphValidate,
    DigraphEval,
    DigraphExtract,
    CechAffine,
    CechProjective,
    Baer,
    Etale,
    Suite,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Groebner,
        Command::Ideal,
        Command::Open,
        Command::DigraphValidate,
        Command::DigraphEval,
        Command::DigraphExtract,
        Command::CechAffine,
        Command::CechProjective,
        Command::Baer,
        Command::Etale,
        Command::Suite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Groebner => "groebner",
            Command::Ideal => "ideal",
            Command::Open => "open",
            Command::DigraphValidate => "digraph-validate",
            Command::DigraphEval => "digraph-eval",
            Command::DigraphExtract => "digraph-extract",
            Command::CechAffine => "cech-affine",
            Command::CechProjective => "cech-projective",
            Command::Baer => "baer",
            Command::Etale => "etale",
            Command::Suite => "suite",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse {
                message: format!("unknown command `{s}`"),
                line: 1,
                column: 1,
            })
    }
}

/// Budget values given in a job file; anything missing keeps its default.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetOverrides {
    pub max_pairs: Option<usize>,
    pub max_degree: Option<u32>,
    pub extraction_depth: Option<usize>,
    pub baer_max_maps: Option<usize>,
    pub baer_max_size: Option<u128>,
    pub envelope_size_bound: Option<u128>,
    pub envelope_max_rank: Option<usize>,
}

/// Resource limits for one job: defaults, then the job file, then the
/// `NOETHER_BUDGET_*` environment variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub kernel: Budget,
    pub extraction_depth: usize,
    pub baer: BaerOptions,
    pub envelope: EnvelopeOptions,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            kernel: Budget::default(),
            extraction_depth: ExtractOptions::default().depth_bound,
            baer: BaerOptions::default(),
            envelope: EnvelopeOptions::default(),
        }
    }
}

fn env_value<T: FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok().and_then(|s| s.trim().parse().ok())
}

impl Budgets {
    pub fn resolve(o: &BudgetOverrides) -> Self {
        let mut b = Budgets::default();
        if let Some(v) = o.max_pairs {
            b.kernel.max_pairs = v;
        }
        if let Some(v) = o.max_degree {
            b.kernel.max_degree = v;
        }
        b.kernel = b.kernel.with_env();
        b.extraction_depth = env_value("NOETHER_BUDGET_DEPTH")
            .or(o.extraction_depth)
            .unwrap_or(b.extraction_depth);
        b.baer.max_maps = env_value("NOETHER_BUDGET_MAPS")
            .or(o.baer_max_maps)
            .unwrap_or(b.baer.max_maps);
        b.baer.max_size = env_value("NOETHER_BUDGET_SIZE")
            .or(o.baer_max_size)
            .unwrap_or(b.baer.max_size);
        b.envelope.size_bound = env_value("NOETHER_BUDGET_ENVELOPE_SIZE")
            .or(o.envelope_size_bound)
            .unwrap_or(b.envelope.size_bound);
        b.envelope.max_rank = env_value("NOETHER_BUDGET_ENVELOPE_RANK")
            .or(o.envelope_max_rank)
            .unwrap_or(b.envelope.max_rank);
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum IdealQuery {
    Member {
        ring: RingDesc,
        ideal: Vec<String>,
        element: String,
    },
    RadicalMember {
        ring: RingDesc,
        ideal: Vec<String>,
        element: String,
    },
    Equal {
        ring: RingDesc,
        ideal: Vec<String>,
        other: Vec<String>,
    },
    /// `other ⊆ ideal`.
    Contains {
        ring: RingDesc,
        ideal: Vec<String>,
        other: Vec<String>,
    },
    Sum {
        ring: RingDesc,
        ideal: Vec<String>,
        other: Vec<String>,
    },
    Product {
        ring: RingDesc,
        ideal: Vec<String>,
        other: Vec<String>,
    },
    Intersection {
        ring: RingDesc,
        ideal: Vec<String>,
        other: Vec<String>,
    },
    Saturate {
        ring: RingDesc,
        ideal: Vec<String>,
        element: String,
    },
    Colon {
        ring: RingDesc,
        ideal: Vec<String>,
        element: String,
    },
    /// All ideals of a finite ring.
    Enumerate { finite_ring: FiniteRingDesc },
    /// The prime ideals of a finite ring.
    Spec { finite_ring: FiniteRingDesc },
    /// Noetherian witnesses for a family of ideals given by element indices
    /// (all ideals when omitted).
    Noetherian {
        finite_ring: FiniteRingDesc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        family: Option<Vec<Vec<usize>>>,
    },
    /// Maps from the ideal generated by the listed ring elements into a
    /// module.
    Hom {
        module: FiniteModuleDesc,
        ideal: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OpenQuery {
    /// `b ⊆ a`.
    Contains {
        ring: RingDesc,
        a: OpenDesc,
        b: OpenDesc,
    },
    Equal {
        ring: RingDesc,
        a: OpenDesc,
        b: OpenDesc,
    },
    Intersect {
        ring: RingDesc,
        a: OpenDesc,
        b: OpenDesc,
    },
    Empty {
        ring: RingDesc,
        open: OpenDesc,
    },
    Cover {
        ring: RingDesc,
        cover: CoverDesc,
    },
    CoordinateRing {
        ring: RingDesc,
        open: OpenDesc,
    },
    /// Opens, connected opens and components of a finite space.
    Space {
        space: SpaceDesc,
    },
}

/// The digraph vocabulary to count valid digraphs over: a finite ring, or
/// a presented ring with candidate opens and ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_ring: Option<FiniteRingDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDesc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub opens: Vec<OpenDesc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideals: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digraph: Option<DigraphDesc>,
    /// When given, also decide quasi-coherence on these opens.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<OpenDesc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<CountRequest>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipDesc {
    pub open: OpenDesc,
    pub section: GeneratorDesc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalRequest {
    pub digraph: DigraphDesc,
    #[serde(default)]
    pub evaluate: Vec<OpenDesc>,
    #[serde(default)]
    pub membership: Vec<MembershipDesc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zz: Option<ZZSheafDesc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineRequest {
    pub ring: RingDesc,
    pub ideal: Vec<String>,
    pub cover: CoverDesc,
    #[serde(default)]
    pub window: AffineWindow,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaerOp {
    #[default]
    Test,
    Step,
    Chain,
    Envelope,
    Resolution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaerRequest {
    pub module: FiniteModuleDesc,
    #[serde(default)]
    pub op: BaerOp,
    /// Chain length.
    #[serde(default = "one")]
    pub k: usize,
    /// Resolution length.
    #[serde(default = "two")]
    pub length: usize,
}

fn one() -> usize {
    1
}

fn two() -> usize {
    2
}

fn three() -> usize {
    3
}

fn rationals() -> String {
    "q".to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaleRequest {
    #[serde(default = "three")]
    pub depth: usize,
    #[serde(default = "rationals")]
    pub field: String,
    #[serde(default = "default_rule")]
    pub exponent_rule: ExponentRule,
}

fn default_rule() -> ExponentRule {
    ExponentRule::Power
}

impl<'de> Deserialize<'de> for ExponentRule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ExponentRule::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Default for EtaleRequest {
    fn default() -> Self {
        EtaleRequest {
            depth: 3,
            field: rationals(),
            exponent_rule: ExponentRule::Power,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteRequest {
    #[serde(default = "three")]
    pub etale_depth: usize,
}

impl Default for SuiteRequest {
    fn default() -> Self {
        SuiteRequest { etale_depth: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Groebner(IdealDesc),
    Ideal(IdealQuery),
    Open(OpenQuery),
    DigraphValidate(ValidateRequest),
    DigraphEval(EvalRequest),
    DigraphExtract(ExtractRequest),
    CechAffine(AffineRequest),
    CechProjective(TwistData),
    Baer(BaerRequest),
    Etale(EtaleRequest),
    Suite(SuiteRequest),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub payload: Payload,
    pub budgets: Budgets,
}

fn json_error(e: serde_json::Error) -> Error {
    let text = e.to_string();
    let message = match text.rsplit_once(" at line ") {
        Some((m, _)) => m.to_string(),
        None => text,
    };
    Error::Parse {
        message,
        line: e.line(),
        column: e.column(),
    }
}

fn empty_input() -> Error {
    Error::Parse {
        message: "empty input".into(),
        line: 1,
        column: 1,
    }
}

#[derive(Deserialize)]
struct Head {
    command: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JobFile<P> {
    #[allow(dead_code)]
    command: String,
    #[serde(default = "Option::default")]
    payload: Option<P>,
    #[serde(default)]
    budgets: BudgetOverrides,
}

fn decode_job<P: DeserializeOwned>(
    text: &str,
    wrap: fn(P) -> Payload,
) -> Result<(Payload, BudgetOverrides)> {
    let job: JobFile<P> = serde_json::from_str(text).map_err(json_error)?;
    let payload = match job.payload {
        Some(p) => p,
        None => serde_json::from_str("{}").map_err(|e| Error::Parse {
            message: format!("missing payload ({})", json_error(e)),
            line: 1,
            column: 1,
        })?,
    };
    Ok((wrap(payload), job.budgets))
}

fn decode_payload<P: DeserializeOwned>(text: &str, wrap: fn(P) -> Payload) -> Result<Payload> {
    let text = if text.trim().is_empty() { "{}" } else { text };
    Ok(wrap(serde_json::from_str(text).map_err(json_error)?))
}

macro_rules! dispatch_decode {
    ($command:expr, $f:ident, $text:expr) => {
        match $command {
            Command::Groebner => $f($text, Payload::Groebner),
            Command::Ideal => $f($text, Payload::Ideal),
            Command::Open => $f($text, Payload::Open),
            Command::DigraphValidate => $f($text, Payload::DigraphValidate),
            Command::DigraphEval => $f($text, Payload::DigraphEval),
            Command::DigraphExtract => $f($text, Payload::DigraphExtract),
            Command::CechAffine => $f($text, Payload::CechAffine),
            Command::CechProjective => $f($text, Payload::CechProjective),
            Command::Baer => $f($text, Payload::Baer),
            Command::Etale => $f($text, Payload::Etale),
            Command::Suite => $f($text, Payload::Suite),
        }
    };
}

/// Parses and schema-checks a complete job file. Polynomials and rings are
/// built once here so that syntax errors surface before anything runs.
pub fn parse_job(text: &str) -> Result<JobSpec> {
    if text.trim().is_empty() {
        return Err(empty_input());
    }
    let head: Head = serde_json::from_str(text).map_err(json_error)?;
    let command: Command = head.command.parse()?;
    let (payload, overrides) = dispatch_decode!(command, decode_job, text)?;
    let job = JobSpec {
        command,
        payload,
        budgets: Budgets::resolve(&overrides),
    };
    check(&job)?;
    Ok(job)
}

/// Parses the payload of `command` on its own (as read by the subcommands).
/// An empty payload stands for `{}`.
pub fn parse_payload(command: Command, text: &str, overrides: &BudgetOverrides) -> Result<JobSpec> {
    let payload = dispatch_decode!(command, decode_payload, text)?;
    let job = JobSpec {
        command,
        payload,
        budgets: Budgets::resolve(overrides),
    };
    check(&job)?;
    Ok(job)
}

fn check(job: &JobSpec) -> Result<()> {
    let budget = job.budgets.kernel;
    match &job.payload {
        Payload::Groebner(d) => {
            d.build(budget)?;
        }
        Payload::Ideal(q) => match q {
            IdealQuery::Member {
                ring,
                ideal,
                element,
            }
            | IdealQuery::RadicalMember {
                ring,
                ideal,
                element,
            }
            | IdealQuery::Saturate {
                ring,
                ideal,
                element,
            }
            | IdealQuery::Colon {
                ring,
                ideal,
                element,
            } => {
                let r = ring.build(budget)?;
                parse_gens(&r, ideal)?;
                parse_in(&r, element, "element")?;
            }
            IdealQuery::Equal { ring, ideal, other }
            | IdealQuery::Contains { ring, ideal, other }
            | IdealQuery::Sum { ring, ideal, other }
            | IdealQuery::Product { ring, ideal, other }
            | IdealQuery::Intersection { ring, ideal, other } => {
                let r = ring.build(budget)?;
                parse_gens(&r, ideal)?;
                parse_gens(&r, other)?;
            }
            IdealQuery::Enumerate { finite_ring }
            | IdealQuery::Spec { finite_ring }
            | IdealQuery::Noetherian { finite_ring, .. } => {
                finite_ring.build()?;
            }
            IdealQuery::Hom { module, .. } => {
                module.build()?;
            }
        },
        Payload::Open(q) => match q {
            OpenQuery::Contains { ring, a, b }
            | OpenQuery::Equal { ring, a, b }
            | OpenQuery::Intersect { ring, a, b } => {
                let r = ring.build(budget)?;
                a.build(&r)?;
                b.build(&r)?;
            }
            OpenQuery::Empty { ring, open } | OpenQuery::CoordinateRing { ring, open } => {
                open.build(&ring.build(budget)?)?;
            }
            OpenQuery::Cover { ring, cover } => {
                cover.build(&ring.build(budget)?)?;
            }
            OpenQuery::Space { space } => {
                space.build()?;
            }
        },
        Payload::DigraphValidate(v) => match (&v.digraph, &v.count) {
            (Some(d), None) => {
                let g = d.build(budget)?;
                if let Some(b) = &v.basis {
                    build_opens(g.ring(), b)?;
                }
            }
            (None, Some(_)) => {}
            _ => return Err(schema("give exactly one of `digraph` and `count`")),
        },
        Payload::DigraphEval(e) => {
            let d = e.digraph.build(budget)?;
            build_opens(d.ring(), &e.evaluate)?;
            for m in &e.membership {
                m.open.build(d.ring())?;
                m.section.build(d.ring())?;
            }
        }
        Payload::DigraphExtract(x) => match (&x.oracle, &x.zz) {
            (Some(o), None) => {
                o.build(budget)?;
            }
            (None, Some(z)) => {
                z.space.build()?;
            }
            _ => return Err(schema("give exactly one of `oracle` and `zz`")),
        },
        Payload::CechAffine(a) => {
            let r = a.ring.build(budget)?;
            parse_gens(&r, &a.ideal)?;
            a.cover.build(&r)?;
        }
        Payload::Baer(b) => {
            b.module.build()?;
        }
        Payload::Etale(e) => {
            Field::parse(&e.field)?;
        }
        Payload::CechProjective(_) | Payload::Suite(_) => {}
    }
    Ok(())
}

fn schema(message: &str) -> Error {
    Error::Parse {
        message: message.to_string(),
        line: 1,
        column: 1,
    }
}

fn parse_gens(
    ring: &crate::ring::RingRef,
    gens: &[String],
) -> Result<Vec<crate::poly::Polynomial>> {
    gens.iter()
        .map(|g| parse_in(ring, g, "generator"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl ErrorReport {
    pub fn from_error(e: &Error) -> Self {
        let (kind, line, column) = match e {
            Error::Parse { line, column, .. } => ("parse", Some(*line), Some(*column)),
            Error::Resource { .. } => ("resource", None, None),
            Error::Bound { .. } => ("bound", None, None),
            Error::Domain(_) => ("domain", None, None),
            Error::Validation(_) => ("validation", None, None),
            Error::Capability(_) => ("capability", None, None),
            Error::Oracle { .. } => ("oracle", None, None),
        };
        let message = match e {
            Error::Parse { message, .. }
            | Error::Domain(message)
            | Error::Validation(message)
            | Error::Capability(message) => message.clone(),
            other => other.to_string(),
        };
        ErrorReport {
            kind,
            message,
            line,
            column,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            "parse" => 2,
            "resource" | "bound" | "capability" => 3,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub config: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    /// Not covered by the determinism guarantee.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report {
    pub fn from_error(command: Option<Command>, config: Value, e: &Error) -> Self {
        Report {
            command: command.map_or_else(String::new, |c| c.name().to_string()),
            status: Status::Error,
            config,
            result: Value::Null,
            witnesses: Vec::new(),
            error: Some(ErrorReport::from_error(e)),
            timings: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.status, &self.error) {
            (Status::Pass, _) => 0,
            (Status::Fail, _) => 1,
            (Status::Error, Some(e)) => e.exit_code(),
            (Status::Error, None) => 1,
        }
    }

    pub fn without_timings(&self) -> Self {
        Report {
            timings: None,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// Aligned plain-text rendering of the JSON form.
    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        render_text(&v, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = a.iter().map(|x| scalar(x).unwrap_or_default()).collect();
            Some(format!("[{}]", items.join(", ")))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k:<width$}  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}\n"));
                        render_text(x, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}]  {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render_text(x, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

struct Outcome {
    passed: bool,
    result: Value,
    witnesses: Vec<String>,
}

impl Outcome {
    fn pass(result: Value) -> Self {
        Outcome {
            passed: true,
            result,
            witnesses: Vec::new(),
        }
    }

    fn verdict(passed: bool, result: Value, witness: impl FnOnce() -> String) -> Self {
        Outcome {
            passed,
            result,
            witnesses: if passed { Vec::new() } else { vec![witness()] },
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report values serialize")
}

pub fn run_job(job: &JobSpec) -> Report {
    let config = json!({ "budgets": job.budgets, "payload": job.payload });
    let start = Instant::now();
    let outcome = execute(job);
    let timings = Some(Timings {
        elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
    });
    match outcome {
        Ok(o) => Report {
            command: job.command.name().to_string(),
            status: if o.passed { Status::Pass } else { Status::Fail },
            config,
            result: o.result,
            witnesses: o.witnesses,
            error: None,
            timings,
        },
        Err(e) => Report {
            timings,
            ..Report::from_error(Some(job.command), config, &e)
        },
    }
}

fn execute(job: &JobSpec) -> Result<Outcome> {
    let b = &job.budgets;
    match &job.payload {
        Payload::Groebner(d) => run_groebner(d, b),
        Payload::Ideal(q) => run_ideal(q, b),
        Payload::Open(q) => run_open(q, b),
        Payload::DigraphValidate(v) => run_validate(v, b),
        Payload::DigraphEval(e) => run_eval(e, b),
        Payload::DigraphExtract(x) => run_extract(x, b),
        Payload::CechAffine(a) => run_cech_affine(a, b),
        Payload::CechProjective(t) => run_cech_projective(t),
        Payload::Baer(r) => run_baer(r, b),
        Payload::Etale(e) => run_etale(e),
        Payload::Suite(s) => run_suite(s),
    }
}

fn run_groebner(d: &IdealDesc, b: &Budgets) -> Result<Outcome> {
    let ideal = d.build(b.kernel)?;
    let ring = ideal.ring().clone();
    // With inverted elements only the saturated basis is meaningful.
    let gb: Vec<String> = if ring.inverted().is_empty() {
        ideal
            .groebner_basis()?
            .iter()
            .map(|p| ring.render(p))
            .collect()
    } else {
        ideal.render_canonical()?
    };
    Ok(Outcome::pass(json!({
        "groebner_basis": gb,
        "canonical": ideal.render_canonical()?,
        "unit": ideal.is_unit()?,
    })))
}

fn run_ideal(q: &IdealQuery, b: &Budgets) -> Result<Outcome> {
    let k = b.kernel;
    let with_element = |ring: &RingDesc, ideal: &[String], element: &str| -> Result<_> {
        let r = ring.build(k)?;
        let i = r.ideal(parse_gens(&r, ideal)?)?;
        let e = parse_in(&r, element, "element")?;
        Ok((r, i, e))
    };
    let with_other = |ring: &RingDesc, ideal: &[String], other: &[String]| -> Result<_> {
        let r = ring.build(k)?;
        let i = r.ideal(parse_gens(&r, ideal)?)?;
        let j = r.ideal(parse_gens(&r, other)?)?;
        Ok((i, j))
    };
    let combine =
        |ring: &RingDesc, ideal: &[String], other: &[String], op: CombineOp| -> Result<Outcome> {
            let (i, j) = with_other(ring, ideal, other)?;
            let c = i.combine(op, &j)?;
            Ok(Outcome::pass(json!({ "ideal": c.render_canonical()? })))
        };
    match q {
        IdealQuery::Member {
            ring,
            ideal,
            element,
        } => {
            let (r, i, e) = with_element(ring, ideal, element)?;
            let member = i.contains(&e)?;
            Ok(Outcome::verdict(
                member,
                json!({ "member": member, "canonical": i.render_canonical()? }),
                || format!("{} is not in {}", r.render(&e), i.render()),
            ))
        }
        IdealQuery::RadicalMember {
            ring,
            ideal,
            element,
        } => {
            let (r, i, e) = with_element(ring, ideal, element)?;
            let member = i.radical_contains(&e)?;
            Ok(Outcome::verdict(
                member,
                json!({ "radical_member": member }),
                || format!("no power of {} lies in {}", r.render(&e), i.render()),
            ))
        }
        IdealQuery::Equal { ring, ideal, other } => {
            let (i, j) = with_other(ring, ideal, other)?;
            let equal = i.equals(&j)?;
            Ok(Outcome::verdict(
                equal,
                json!({ "equal": equal, "canonical": [i.render_canonical()?, j.render_canonical()?] }),
                || format!("{} and {} differ", i.render(), j.render()),
            ))
        }
        IdealQuery::Contains { ring, ideal, other } => {
            let (i, j) = with_other(ring, ideal, other)?;
            let contains = i.contains_ideal(&j)?;
            Ok(Outcome::verdict(
                contains,
                json!({ "contains": contains }),
                || format!("{} is not inside {}", j.render(), i.render()),
            ))
        }
        IdealQuery::Sum { ring, ideal, other } => combine(ring, ideal, other, CombineOp::Sum),
        IdealQuery::Product { ring, ideal, other } => {
            combine(ring, ideal, other, CombineOp::Product)
        }
        IdealQuery::Intersection { ring, ideal, other } => {
            combine(ring, ideal, other, CombineOp::Intersection)
        }
        IdealQuery::Saturate {
            ring,
            ideal,
            element,
        } => {
            let (_, i, e) = with_element(ring, ideal, element)?;
            Ok(Outcome::pass(
                json!({ "ideal": i.saturate(&e)?.render_canonical()? }),
            ))
        }
        IdealQuery::Colon {
            ring,
            ideal,
            element,
        } => {
            let (_, i, e) = with_element(ring, ideal, element)?;
            Ok(Outcome::pass(
                json!({ "ideal": i.colon(&e)?.render_canonical()? }),
            ))
        }
        IdealQuery::Enumerate { finite_ring } => {
            let r = Arc::new(finite_ring.build()?);
            let ideals = enumerate_ideals(&r)?;
            Ok(Outcome::pass(json!({
                "ring": r.label(),
                "size": r.size(),
                "count": ideals.len(),
                "ideals": render_finite_ideals(&r, &ideals),
            })))
        }
        IdealQuery::Spec { finite_ring } => {
            let r = Arc::new(finite_ring.build()?);
            let primes = enumerate_spec(&r)?;
            Ok(Outcome::pass(json!({
                "ring": r.label(),
                "count": primes.len(),
                "primes": render_finite_ideals(&r, &primes),
            })))
        }
        IdealQuery::Noetherian {
            finite_ring,
            family,
        } => {
            let r = Arc::new(finite_ring.build()?);
            let family = match family {
                Some(f) => f.clone(),
                None => enumerate_ideals(&r)?
                    .iter()
                    .map(|i| i.elements().to_vec())
                    .collect(),
            };
            let report = noetherian_witness(&r, &family)?;
            let passed = report.chain_bound_holds
                && !report.maximal.is_empty()
                && report.every_subfamily_has_maximal != Some(false);
            Ok(Outcome::verdict(passed, to_value(&report), || {
                "a Noetherian condition fails on the family".to_string()
            }))
        }
        IdealQuery::Hom { module, ideal } => {
            let m = module.build()?;
            let r = m.ring().clone();
            if let Some(&x) = ideal.iter().find(|&&x| x >= r.size()) {
                return Err(Error::domain(format!("ring element {x} is out of range")));
            }
            let i = FiniteIdeal::generated_by(&r, ideal);
            let maps = hom_from_ideal(&r, &i, &m)?;
            Ok(Outcome::pass(json!({
                "ideal": i.render(&r),
                "module_size": m.size(),
                "maps": maps.len(),
            })))
        }
    }
}

fn render_finite_ideals(r: &Arc<FiniteRing>, ideals: &[FiniteIdeal]) -> Vec<String> {
    ideals.iter().map(|i| i.render(r)).collect()
}

fn run_open(q: &OpenQuery, b: &Budgets) -> Result<Outcome> {
    let k = b.kernel;
    let pair = |ring: &RingDesc,
                a: &OpenDesc,
                bb: &OpenDesc|
     -> Result<(DistinguishedOpen, DistinguishedOpen)> {
        let r = ring.build(k)?;
        Ok((a.build(&r)?, bb.build(&r)?))
    };
    match q {
        OpenQuery::Contains { ring, a, b } => {
            let (u, v) = pair(ring, a, b)?;
            let c = u.contains(&v)?;
            Ok(Outcome::verdict(c, json!({ "contains": c }), || {
                format!("{v} is not inside {u}")
            }))
        }
        OpenQuery::Equal { ring, a, b } => {
            let (u, v) = pair(ring, a, b)?;
            let e = u.equals(&v)?;
            Ok(Outcome::verdict(e, json!({ "equal": e }), || {
                format!("{u} and {v} differ")
            }))
        }
        OpenQuery::Intersect { ring, a, b } => {
            let (u, v) = pair(ring, a, b)?;
            let w = u.intersect(&v);
            Ok(Outcome::pass(
                json!({ "open": w.to_string(), "empty": w.is_empty()? }),
            ))
        }
        OpenQuery::Empty { ring, open } => {
            let u = open.build(&ring.build(k)?)?;
            Ok(Outcome::pass(json!({ "empty": u.is_empty()? })))
        }
        OpenQuery::Cover { ring, cover } => {
            let c = cover.build(&ring.build(k)?)?;
            let covers = cover_check(&c)?;
            Ok(Outcome::verdict(
                covers,
                json!({ "covers": covers }),
                || format!("the pieces do not cover {}", c.target),
            ))
        }
        OpenQuery::CoordinateRing { ring, open } => {
            let u = open.build(&ring.build(k)?)?;
            Ok(Outcome::pass(
                json!({ "ring": RingDesc::describe(&u.coordinate_ring()?) }),
            ))
        }
        OpenQuery::Space { space } => {
            let s = space.build()?;
            let sets =
                |masks: Vec<u32>| -> Vec<Vec<usize>> { masks.into_iter().map(points_of).collect() };
            Ok(Outcome::pass(json!({
                "points": s.len(),
                "opens": sets(s.opens().to_vec()),
                "connected_opens": sets(s.connected_opens()),
                "components": sets(s.components()),
            })))
        }
    }
}

fn run_validate(v: &ValidateRequest, b: &Budgets) -> Result<Outcome> {
    if let Some(c) = &v.count {
        let count = match (&c.finite_ring, &c.ring) {
            (Some(f), None) => count_finite_digraph_space(&Arc::new(f.build()?))?,
            (None, Some(r)) => {
                let ring = r.build(b.kernel)?;
                let opens = build_opens(&ring, &c.opens)?;
                let ideals = c
                    .ideals
                    .iter()
                    .map(|g| ring.ideal(parse_gens(&ring, g)?))
                    .collect::<Result<Vec<_>>>()?;
                count_digraph_space(&ring, &opens, &ideals)?
            }
            _ => {
                return Err(schema(
                    "a count needs exactly one of `finite_ring` and `ring`",
                ))
            }
        };
        return Ok(Outcome::pass(json!({ "count": count })));
    }
    let d = v
        .digraph
        .as_ref()
        .ok_or_else(|| schema("give exactly one of `digraph` and `count`"))?
        .build(b.kernel)?;
    let report = validate_digraph(&d)?;
    let mut result = json!({ "validation": report });
    if let (Some(basis), true) = (&v.basis, report.valid) {
        let opens = build_opens(d.ring(), basis)?;
        result["quasi_coherent"] = json!(is_quasi_coherent(&d, &opens)?);
    }
    let witnesses = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| {
            let mut w = format!("{}: {}", c.name, c.detail.clone().unwrap_or_default());
            if let Some((p, q)) = c.edge {
                w.push_str(&format!(" (edge {p} -> {q})"));
            }
            w
        })
        .collect();
    Ok(Outcome {
        passed: report.valid,
        result,
        witnesses,
    })
}

fn run_eval(e: &EvalRequest, b: &Budgets) -> Result<Outcome> {
    let d = e.digraph.build(b.kernel)?;
    d.require_valid()?;
    let ring = d.ring().clone();
    let mut evaluated = Vec::new();
    for u in build_opens(&ring, &e.evaluate)? {
        evaluated.push(
            json!({ "open": u.to_string(), "ideal": evaluate_sheaf(&d, &u)?.render_canonical()? }),
        );
    }
    let mut membership = Vec::new();
    for m in &e.membership {
        let u = m.open.build(&ring)?;
        let s = m.section.build(&ring)?;
        let member = section_membership_fraction(&d, &u, &s)?;
        membership.push(json!({ "open": u.to_string(), "section": m.section, "member": member }));
    }
    Ok(Outcome::pass(
        json!({ "evaluate": evaluated, "membership": membership }),
    ))
}

fn run_extract(x: &ExtractRequest, b: &Budgets) -> Result<Outcome> {
    if let Some(z) = &x.zz {
        let data = z.build()?;
        let d = extract_zz_digraph(&data);
        let mismatches: Vec<Vec<usize>> = d.mismatches(&data).into_iter().map(points_of).collect();
        let nodes: Vec<Value> = d
            .nodes
            .iter()
            .map(|n| json!({ "open": points_of(n.open), "n": n.n }))
            .collect();
        let passed = mismatches.is_empty();
        return Ok(Outcome::verdict(
            passed,
            json!({ "nodes": nodes, "edges": d.edges, "roots": d.roots, "mismatches": mismatches }),
            || {
                format!(
                    "regeneration differs on {} connected opens",
                    mismatches.len()
                )
            },
        ));
    }
    let oracle = x
        .oracle
        .as_ref()
        .ok_or_else(|| schema("give exactly one of `oracle` and `zz`"))?
        .build(b.kernel)?;
    let ex = extract_digraph(
        oracle.as_ref(),
        ExtractOptions {
            depth_bound: b.extraction_depth,
        },
    )?;
    let opens = basis_with_intersections(oracle.basis())?;
    let (round, note) = match round_trip(oracle.as_ref(), &ex.digraph, &opens) {
        Ok(entries) => (Some(entries), None),
        Err(Error::Capability(m)) => (None, Some(m)),
        Err(e) => return Err(e),
    };
    let agrees = round.as_ref().is_none_or(|r| r.iter().all(|e| e.equal));
    let passed = ex.validation.valid && ex.certificate.strictly_increasing && agrees;
    let mut witnesses = Vec::new();
    if let Some(r) = &round {
        for e in r.iter().filter(|e| !e.equal) {
            witnesses.push(format!(
                "on {} the oracle gives {:?} but the digraph gives {:?}",
                e.open, e.oracle, e.digraph
            ));
        }
    }
    if let Some((p, q)) = ex.certificate.failing_edge {
        witnesses.push(format!(
            "saturated ideals do not increase along edge {p} -> {q}"
        ));
    }
    let mut result = json!({
        "oracle": oracle.describe(),
        "digraph": DigraphDesc::describe(&ex.digraph),
        "nodes": ex.digraph.nodes().len(),
        "generations": ex.generations,
        "validation": ex.validation,
        "certificate": ex.certificate,
        "round_trip": round,
    });
    if let Some(n) = note {
        result["round_trip_skipped"] = json!(n);
    }
    Ok(Outcome {
        passed,
        result,
        witnesses,
    })
}

fn run_cech_affine(a: &AffineRequest, b: &Budgets) -> Result<Outcome> {
    let ring = a.ring.build(b.kernel)?;
    let ideal = ring.ideal(parse_gens(&ring, &a.ideal)?)?;
    let cover = a.cover.build(&ring)?;
    let v = affine_vanishing_check(&ring, &ideal, &cover, a.window)?;
    let passed = v.holds && v.d_squared_zero;
    Ok(Outcome::verdict(passed, to_value(&v), || {
        format!(
            "cohomology {:?} against {} global sections",
            v.dims, v.global_sections
        )
    }))
}

fn run_cech_projective(t: &TwistData) -> Result<Outcome> {
    let c = twisted_cohomology_dims(t)?;
    let (h0, hn) = expected_top_and_bottom(t.n, t.d);
    let matches = if t.n == 0 {
        c.dims == [1]
    } else {
        c.dims[0] == h0 && c.dims[t.n] == hn && c.dims[1..t.n].iter().all(|&x| x == 0)
    };
    let passed = c.d_squared_zero && (matches || !c.warnings.is_empty());
    let mut result = to_value(&c);
    result["expected"] = json!({ "h0": h0, "hn": hn });
    result["matches_closed_form"] = json!(matches);
    Ok(Outcome::verdict(passed, result, || {
        format!("dims {:?}, closed form H0 = {h0}, Hn = {hn}", c.dims)
    }))
}

fn module_summary(m: &FiniteModule) -> Value {
    json!({ "size": m.size(), "ring": m.ring().label() })
}

fn run_baer(r: &BaerRequest, b: &Budgets) -> Result<Outcome> {
    let m = r.module.build()?;
    match r.op {
        BaerOp::Test => {
            let t = baer_test(&m)?;
            let witness = t.witness.clone();
            Ok(Outcome::verdict(
                t.injective,
                to_value(&t),
                || match witness {
                    Some(w) => format!("the map {:?} on {} does not extend", w.map, w.ideal),
                    None => "not injective".into(),
                },
            ))
        }
        BaerOp::Step => {
            let s = baer_step(&m, b.baer)?;
            let passed = s.embedding_injective && s.postcondition_holds;
            let result = json!({
                "input": module_summary(&s.input),
                "output": module_summary(&s.output),
                "maps": s.ledger.len(),
                "embedding_injective": s.embedding_injective,
                "postcondition_holds": s.postcondition_holds,
            });
            Ok(Outcome::verdict(passed, result, || {
                "the step does not extend every ideal map".into()
            }))
        }
        BaerOp::Chain => {
            let c = baer_chain(&m, r.k, b.baer)?;
            let passed = c.holds();
            let result = json!({
                "k": r.k,
                "sizes": c.modules.iter().map(|x| x.size()).collect::<Vec<_>>(),
                "stages": c.stages,
                "stopped": c.stopped,
            });
            Ok(Outcome::verdict(passed, result, || match &c.stopped {
                Some(s) => format!("stopped at stage {}: {}", s.stage, s.reason),
                None => "a stage lacks the extension property".into(),
            }))
        }
        BaerOp::Envelope => {
            let s = injective_envelope_bruteforce(&m, b.envelope)?;
            let found = s
                .found
                .as_ref()
                .map(|e| json!({ "size": e.module.size(), "rank": e.rank }));
            let result = json!({
                "module": module_summary(&m),
                "envelope": found,
                "candidates_examined": s.candidates_examined,
                "searched_up_to": s.searched_up_to,
                "options": s.options,
            });
            Ok(Outcome::verdict(s.found.is_some(), result, || {
                format!("no injective envelope up to size {}", s.searched_up_to)
            }))
        }
        BaerOp::Resolution => {
            let res = injective_resolution(&m, r.length, b.envelope)?;
            let result = json!({
                "terms": res.terms.iter().map(module_summary).collect::<Vec<_>>(),
                "complete": res.complete,
                "not_found_at": res.not_found_at,
            });
            Ok(Outcome::verdict(res.not_found_at.is_none(), result, || {
                format!(
                    "no envelope found at term {}",
                    res.not_found_at.unwrap_or_default()
                )
            }))
        }
    }
}

fn run_etale(e: &EtaleRequest) -> Result<Outcome> {
    let field = Field::parse(&e.field)?;
    let s = run_tower_suite(e.depth, field, e.exponent_rule)?;
    let mut witnesses = Vec::new();
    if let Some(n) = s.failing_level {
        let level = s.levels.iter().find(|l| l.n == n);
        let w = level
            .and_then(|l| {
                l.cover_map
                    .as_ref()
                    .and_then(|c| c.witness.clone())
                    .or_else(|| l.maximality.witness.clone())
            })
            .or_else(|| s.chain_witness.clone())
            .unwrap_or_else(|| format!("a check fails at level {n}"));
        witnesses.push(format!("level {n}: {w}"));
    }
    Ok(Outcome {
        passed: s.passed,
        result: to_value(&s),
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn suite_check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> SuiteCheck {
    match f() {
        Ok((passed, detail)) => SuiteCheck {
            name,
            passed,
            detail,
        },
        Err(e) => SuiteCheck {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Desk-scale self-checks across every layer.
pub fn self_checks(etale_depth: usize) -> Vec<SuiteCheck> {
    vec![
        suite_check("ideal-membership", || {
            let r = PresentedRing::from_strs(Field::Rationals, &["x", "y"], &[], &[])?;
            let i = r.ideal_strs(&["x^2 - y"])?;
            let inside = i.contains(&r.parse("x^3 - x*y")?)?;
            let outside = !i.contains(&r.parse("x")?)?;
            Ok((
                inside && outside,
                format!("x^3 - x*y in (x^2 - y): {inside}, x outside: {outside}"),
            ))
        }),
        suite_check("noetherian-zmod", || {
            let mut bad = Vec::new();
            for n in 2..=24u64 {
                let r = Arc::new(FiniteRing::zmod(n)?);
                let divisors = (1..=n).filter(|d| n % d == 0).count();
                if enumerate_ideals(&r)?.len() != divisors {
                    bad.push(n);
                }
            }
            Ok((
                bad.is_empty(),
                format!("ideal counts match divisor counts for n <= 24, failures {bad:?}"),
            ))
        }),
        suite_check("digraph-extract", || {
            let ring = PresentedRing::from_strs(Field::Rationals, &["x"], &[], &[])?;
            let basis: Vec<DistinguishedOpen> = ["x", "x - 1", "x^2 - x"]
                .iter()
                .map(|s| DistinguishedOpen::parse(&ring, s))
                .collect::<Result<_>>()?;
            let oracle = PiecewiseOracle {
                ring: ring.clone(),
                base: vec![ring.zero()],
                pieces: vec![(DistinguishedOpen::parse(&ring, "x")?, vec![ring.one()])],
                basis,
            };
            let ex = extract_digraph(&oracle, ExtractOptions::default())?;
            let n = ex.digraph.nodes().len();
            Ok((
                n == 2 && ex.validation.valid,
                format!("{n} nodes extracted from the two-piece oracle"),
            ))
        }),
        suite_check("zz-regeneration", || {
            let space = FiniteSpace::from_edges(3, &[(0, 1), (0, 2)])?;
            let z = ZZSheafData::from_points(space, &[2, 4, 6])?;
            let d = extract_zz_digraph(&z);
            let m = d.mismatches(&z);
            Ok((
                m.is_empty(),
                format!("{} nodes, {} mismatches", d.nodes.len(), m.len()),
            ))
        }),
        suite_check("cech-euler", || {
            let mut bad = Vec::new();
            for d in -4i64..=4 {
                let c = twisted_cohomology_dims(&TwistData::new(1, d))?;
                if c.dims[0] as i64 - c.dims[1] as i64 != d + 1 || !c.d_squared_zero {
                    bad.push(d);
                }
            }
            Ok((
                bad.is_empty(),
                format!("H0 - H1 = d + 1 on P^1 for |d| <= 4, failures {bad:?}"),
            ))
        }),
        suite_check("baer-step", || {
            let r = Arc::new(FiniteRing::zmod(4)?);
            let s = baer_step(&FiniteModule::zero(&r), BaerOptions::default())?;
            let size = s.output.size();
            Ok((
                size == 8 && s.postcondition_holds,
                format!("step of 0 over Z/4 has size {size}"),
            ))
        }),
        suite_check("injective-envelope", || {
            let r = Arc::new(FiniteRing::zmod(4)?);
            let m = FiniteModule::cyclic(&r, &[vec![2]]);
            let s = injective_envelope_bruteforce(&m, EnvelopeOptions::default())?;
            let size = s.found.map(|e| e.module.size());
            Ok((
                size == Some(4),
                format!("envelope of Z/2 over Z/4 has size {size:?}"),
            ))
        }),
        suite_check("etale-tower", || {
            let s = run_tower_suite(etale_depth, Field::Rationals, ExponentRule::Power)?;
            Ok((
                s.passed && s.strict_inclusions == etale_depth,
                format!(
                    "depth {etale_depth}: {} strict inclusions",
                    s.strict_inclusions
                ),
            ))
        }),
    ]
}

fn run_suite(s: &SuiteRequest) -> Result<Outcome> {
    let checks = self_checks(s.etale_depth);
    let witnesses = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect::<Vec<_>>();
    Ok(Outcome {
        passed: witnesses.is_empty(),
        result: json!({ "checks": checks }),
        witnesses,
    })
}

#[derive(Debug, Parser)]
#[command(
    name = "noether",
    version,
    about = "Exact commutative algebra jobs with JSON reports"
)]
pub struct Cli {
    /// Print the report as JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Print the report as aligned text.
    #[arg(long, global = true)]
    pub text: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct PayloadArgs {
    /// Payload JSON file, `-` for stdin.
    #[arg(long, short)]
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct ProjectiveArgs {
    #[arg(long, short)]
    pub input: Option<String>,
    /// Dimension of the projective space.
    #[arg(long)]
    pub n: Option<usize>,
    /// Twist.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    /// Bound on the Laurent exponents (default |d| + 1).
    #[arg(long)]
    pub window: Option<i64>,
}

#[derive(Debug, Args)]
pub struct EtaleArgs {
    /// Optional action word; `verify` is the only one.
    #[arg(value_parser = ["verify"])]
    pub action: Option<String>,
    #[arg(long, short)]
    pub input: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// `q` or `fp:<p>`.
    #[arg(long)]
    pub field: Option<String>,
    /// `power` or `literal`.
    #[arg(long)]
    pub exponent_rule: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Run a job file `{"command", "payload", "budgets"}`; `-` reads stdin.
    Run { file: String },
    /// Reduced Gröbner basis and canonical form of an ideal.
    Groebner(PayloadArgs),
    /// Ideal queries and operations, including finite rings.
    Ideal(PayloadArgs),
    /// Distinguished opens, covers and finite spaces.
    Open(PayloadArgs),
    /// Check the digraph invariants, or count valid digraphs.
    DigraphValidate(PayloadArgs),
    /// Evaluate the generated sheaf and test section membership.
    DigraphEval(PayloadArgs),
    /// Extract a digraph from a sheaf oracle or a ℤ-sheaf on a finite space.
    DigraphExtract(PayloadArgs),
    /// Čech cohomology of an ideal on an affine cover.
    CechAffine(PayloadArgs),
    /// Čech cohomology of O(d) on projective space.
    CechProjective(ProjectiveArgs),
    /// Baer criterion, Baer steps and chains, injective envelopes.
    Baer(PayloadArgs),
    /// Verify the squaring tower over the punctured line.
    Etale(EtaleArgs),
    /// Desk-scale self-checks across all layers.
    Suite(PayloadArgs),
}

fn read_source(src: &str) -> Result<String> {
    let mut text = String::new();
    let res = if src == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(src).map(|t| text = t)
    };
    res.map_err(|e| Error::Parse {
        message: format!("cannot read {src}: {e}"),
        line: 0,
        column: 0,
    })?;
    Ok(text)
}

fn job_from_cli(command: &CliCommand) -> (Option<Command>, Result<JobSpec>) {
    let none = BudgetOverrides::default();
    let payload_job = |c: Command, input: &Option<String>, default_empty: bool| {
        let text = match input {
            Some(src) => read_source(src),
            None if default_empty => Ok(String::new()),
            None => read_source("-"),
        };
        (Some(c), text.and_then(|t| parse_payload(c, &t, &none)))
    };
    match command {
        CliCommand::Run { file } => match read_source(file) {
            Ok(text) => {
                let command = serde_json::from_str::<Head>(&text)
                    .ok()
                    .and_then(|h| h.command.parse().ok());
                (command, parse_job(&text))
            }
            Err(e) => (None, Err(e)),
        },
        CliCommand::Groebner(a) => payload_job(Command::Groebner, &a.input, false),
        CliCommand::Ideal(a) => payload_job(Command::Ideal, &a.input, false),
        CliCommand::Open(a) => payload_job(Command::Open, &a.input, false),
        CliCommand::DigraphValidate(a) => payload_job(Command::DigraphValidate, &a.input, false),
        CliCommand::DigraphEval(a) => payload_job(Command::DigraphEval, &a.input, false),
        CliCommand::DigraphExtract(a) => payload_job(Command::DigraphExtract, &a.input, false),
        CliCommand::CechAffine(a) => payload_job(Command::CechAffine, &a.input, false),
        CliCommand::Baer(a) => payload_job(Command::Baer, &a.input, false),
        CliCommand::Suite(a) => payload_job(Command::Suite, &a.input, true),
        CliCommand::CechProjective(a) => {
            let c = Command::CechProjective;
            if let Some(src) = &a.input {
                return payload_job(c, &Some(src.clone()), false);
            }
            let (Some(n), Some(d)) = (a.n, a.d) else {
                return (
                    Some(c),
                    Err(schema("cech-projective needs --n and --d (or --input)")),
                );
            };
            let t = TwistData {
                window: a.window,
                ..TwistData::new(n, d)
            };
            (
                Some(c),
                Ok(JobSpec {
                    command: c,
                    payload: Payload::CechProjective(t),
                    budgets: Budgets::resolve(&none),
                }),
            )
        }
        CliCommand::Etale(a) => {
            let c = Command::Etale;
            if let Some(src) = &a.input {
                return payload_job(c, &Some(src.clone()), false);
            }
            let mut req = EtaleRequest::default();
            if let Some(d) = a.depth {
                req.depth = d;
            }
            if let Some(f) = &a.field {
                req.field = f.clone();
            }
            let job = (|| {
                if let Some(r) = &a.exponent_rule {
                    req.exponent_rule =
                        ExponentRule::parse(r).map_err(|e| schema(&e.to_string()))?;
                }
                let job = JobSpec {
                    command: c,
                    payload: Payload::Etale(req),
                    budgets: Budgets::resolve(&none),
                };
                check(&job)?;
                Ok(job)
            })();
            (Some(c), job)
        }
    }
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (command, job) = job_from_cli(&cli.command);
    let report = match job {
        Ok(j) => run_job(&j),
        Err(e) => Report::from_error(command, Value::Null, &e),
    };
    let shown = if cli.timings {
        report.clone()
    } else {
        report.without_timings()
    };
    if cli.text {
        print!("{}", shown.to_text());
    } else {
        print!("{}", shown.to_json());
    }
    if let Some(e) = &report.error {
        eprintln!("noether: {} error: {}", e.kind, e.message);
    }
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Report {
        run_job(&parse_job(text).unwrap()).without_timings()
    }

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!(matches!(
            "nope".parse::<Command>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn parse_diagnostics() {
        assert!(matches!(parse_job(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_job("  \n"), Err(Error::Parse { .. })));
        match parse_job("{\"command\": \"groebner\",\n \"payload\": {\"ring\": {\"vars\": [\"x\"]}, \"generators\": [\"x*w\"]}}") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("`w`"), "{message}"),
            other => panic!("{other:?}"),
        }
        match parse_job(
            "{\"command\": \"groebner\",\n \"payload\": {\"ring\": {\"vars\": [\"x\"]}}}",
        ) {
            Err(Error::Parse { message, line, .. }) => {
                assert!(message.contains("generators"), "{message}");
                assert_eq!(line, 2);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_job(r#"{"command": "suite", "payload": {}, "extra": 1}"#),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn minimal_groebner_job() {
        let r = run(
            r#"{"command": "groebner", "payload": {"ring": {"vars": ["x", "y"]}, "generators": ["x^2 - y", "x*y"]}}"#,
        );
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.exit_code(), 0);
        assert!(r.result["groebner_basis"].as_array().unwrap().len() >= 2);
    }

    #[test]
    fn projective_and_etale() {
        let r = run(r#"{"command": "cech-projective", "payload": {"n": 1, "d": -2}}"#);
        assert_eq!(r.result["dims"], json!([0, 1]));
        assert_eq!(r.status, Status::Pass);
        let r = run(r#"{"command": "etale", "payload": {"depth": 3}}"#);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.result["strict_inclusions"], json!(3));
        let r = run(r#"{"command": "etale", "payload": {"depth": 3, "exponent_rule": "literal"}}"#);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.exit_code(), 1);
        assert!(r.witnesses[0].contains("x^8 - 2"));
    }

    #[test]
    fn increasing_violation_fails_with_edge() {
        let r = run(
            r#"{"command": "digraph-validate", "payload": {"digraph": {"ring": {"vars": ["x"]},
                "nodes": [{"open": "1", "generators": ["x"]}, {"open": "x", "generators": ["1"]}],
                "edges": [[0, 1]], "root": 0}}}"#,
        );
        assert_eq!(r.status, Status::Fail);
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.starts_with("increasing-on-ideals") && w.contains("0 -> 1")));
    }

    #[test]
    fn resource_errors_exit_3() {
        let r = run(r#"{"command": "cech-projective", "payload": {"n": 9, "d": 1}}"#);
        assert_eq!(r.status, Status::Error);
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn budgets_from_job_file() {
        let j =
            parse_job(r#"{"command": "suite", "budgets": {"max_pairs": 10, "baer_max_maps": 3}}"#)
                .unwrap();
        assert_eq!(j.budgets.kernel.max_pairs, 10);
        assert_eq!(j.budgets.baer.max_maps, 3);
        assert_eq!(j.budgets.envelope, EnvelopeOptions::default());
    }

    #[test]
    fn reports_are_deterministic_and_render() {
        let text =
            r#"{"command": "ideal", "payload": {"op": "enumerate", "finite_ring": {"zmod": 12}}}"#;
        let a = run(text);
        let b = run(text);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.result["count"], json!(6));
        let t = a.to_text();
        assert!(t.contains("status") && t.contains("pass"), "{t}");
    }
}
