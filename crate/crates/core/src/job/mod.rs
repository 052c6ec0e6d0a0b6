//! Job files, reports and the orchestration behind the command-line tool.

mod parse;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::parse_polynomial;

use crate::classgroup::{
    classify, corollary_x0_mode, validate_hypotheses, validate_hypotheses_x0, ClassGroupResult, HypersurfaceSpec,
    HypothesisFlags, HypothesisReport, Relation, RelationKind,
};
use crate::error::{Error, Result};
use crate::hyperring::Hypersurface;
use crate::oracle::{
    diagonal_d2_crosscheck, enumerate_cokernel, monomial_model_classgroup, verify_all_graded, DiagonalCrosscheck,
    GradedCheck, MonomialModelReport,
};
use crate::sections::DegreeFailure;
use crate::wpoly::{as_diagonal_binomial, FieldSpec, WPolynomial, WeightedRing};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest magnitude written as a JSON number; larger integers are strings.
const JSON_SAFE: i64 = (1 << 53) - 1;

/// Coset enumeration is skipped above this ambient group size.
const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Exact integer that serializes as a JSON number when it is safe for
/// doubles and as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= JSON_SAFE => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(JsonInt(x.into())),
            Repr::Str(s) => s.parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        JsonInt(x.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableSpec {
    pub name: String,
    pub weight: u64,
}

/// Input job. `g`, `factors` or both must be given; with `x0` set, `g` is a
/// form in the listed variables and the job describes `z^n - x0 g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub schema_version: u32,
    pub field: String,
    pub n: u64,
    pub variables: Vec<VariableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<String>,
    #[serde(default)]
    pub assume_normal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify_depth: Option<u64>,
    #[serde(default = "default_oracle")]
    pub oracle: bool,
}

fn default_oracle() -> bool {
    true
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

impl JobFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let job: JobFile = serde_json::from_str(text).map_err(|e| Error::InvalidJob(e.to_string()))?;
        if job.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidJob(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                job.schema_version
            )));
        }
        Ok(job)
    }

    pub fn flags(&self) -> HypothesisFlags {
        HypothesisFlags { assume_normal: self.assume_normal }
    }

    /// Parses the field, variables and polynomials.
    pub fn to_spec(&self) -> Result<HypersurfaceSpec> {
        let field: FieldSpec = self.field.parse()?;
        let mut names: Vec<String> = Vec::new();
        for v in &self.variables {
            if !is_identifier(&v.name) || v.name == "z" {
                return Err(Error::InvalidJob(format!("'{}' is not a usable variable name", v.name)));
            }
            if names.contains(&v.name) || self.x0.as_deref() == Some(v.name.as_str()) {
                return Err(Error::InvalidJob(format!("variable '{}' is declared twice", v.name)));
            }
            names.push(v.name.clone());
        }
        if let Some(x0) = &self.x0 {
            if !is_identifier(x0) || x0 == "z" {
                return Err(Error::InvalidJob(format!("'{x0}' is not a usable variable name")));
            }
        }
        let weights = self.variables.iter().map(|v| v.weight).collect();
        let ring = WeightedRing::new(names, weights, field)?;
        let arith = ring.field.arithmetic();
        let parse = |s: &String| parse_polynomial(s, &ring.names, arith);
        let g = self.g.as_ref().map(parse).transpose()?;
        let factors = self.factors.as_ref().map(|fs| fs.iter().map(parse).collect::<Result<Vec<WPolynomial>>>()).transpose()?;
        Ok(HypersurfaceSpec { ring, n: self.n, g, factors })
    }

    /// Validated hypersurface for this job.
    pub fn hypersurface(&self) -> (Option<HypothesisReport>, Result<Hypersurface>) {
        let spec = match self.to_spec() {
            Ok(s) => s,
            Err(e) => return (None, Err(e)),
        };
        let (rep, hs) = match &self.x0 {
            Some(x0) => validate_hypotheses_x0(&spec, x0, &self.flags()),
            None => validate_hypotheses(&spec, &self.flags()),
        };
        (Some(rep), hs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Rejected,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        ErrorInfo { code: e.code().into(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub invariant_factors: Vec<JsonInt>,
    pub order: JsonInt,
    pub display: String,
    pub factor_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSummary {
    pub a: JsonInt,
    pub b: JsonInt,
    pub s: Vec<JsonInt>,
    #[serde(rename = "D")]
    pub d: String,
    pub denominator_lcm: JsonInt,
    /// Coefficients `p / q` of `D`, one per prime component.
    pub components: Vec<String>,
    pub alpha_numerators: Vec<JsonInt>,
    pub alpha_moduli: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: Relation,
    /// Outcome of the graded witness check; `None` when it did not run.
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub passed: bool,
    pub failures: Vec<DegreeFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub depth: u64,
    pub section_ring: CheckSummary,
    pub hilbert: CheckSummary,
    pub oracle: bool,
    pub graded: Vec<GradedCheck>,
    pub coset_enumeration: Option<bool>,
    pub relation_presentation: bool,
    pub monomial_model: Option<MonomialModelReport>,
    pub diagonal_crosscheck: Option<DiagonalCrosscheck>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub status: Status,
    pub exit_code: i32,
    pub error: Option<ErrorInfo>,
    pub job: JobFile,
    pub hypotheses: Option<HypothesisReport>,
    pub class_group: Option<GroupSummary>,
    pub generators: Vec<[String; 2]>,
    pub generator_degrees: Vec<[u64; 2]>,
    pub relations: Vec<RelationReport>,
    pub divisor: Option<DivisorSummary>,
    pub verification: Option<VerificationSummary>,
}

impl Report {
    fn new(job: &JobFile) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            status: Status::Ok,
            exit_code: 0,
            error: None,
            job: job.clone(),
            hypotheses: None,
            class_group: None,
            generators: Vec::new(),
            generator_degrees: Vec::new(),
            relations: Vec::new(),
            divisor: None,
            verification: None,
        }
    }

    fn fail(&mut self, e: &Error) {
        let rejected = e.is_hypothesis_rejection();
        self.status = if rejected { Status::Rejected } else { Status::Error };
        self.exit_code = if rejected { 2 } else { 1 };
        self.error = Some(e.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidJob(e.to_string()))
    }
}

/// Runs the pipeline and every enabled check. Exit codes: 0 success, 2
/// hypothesis rejection, 1 anything else (bad input, failed verification,
/// internal error).
pub fn run_job(job: &JobFile) -> Report {
    let mut report = Report::new(job);
    let spec = match job.to_spec() {
        Ok(s) => s,
        Err(e) => {
            report.fail(&e);
            return report;
        }
    };
    let (hyp, result) = match &job.x0 {
        Some(x0) => corollary_x0_mode(&spec, x0, &job.flags()),
        None => classify(&spec, &job.flags()),
    };
    report.hypotheses = Some(hyp);
    let result = match result {
        Ok(r) => r,
        Err(e) => {
            report.fail(&e);
            return report;
        }
    };
    fill_result(&mut report, &result);
    match verify(job, &spec, &result) {
        Ok(summary) => {
            for rel in &mut report.relations {
                rel.verified = witness_status(&rel.relation, &summary.graded);
            }
            let passed = summary.passed;
            report.verification = Some(summary);
            if !passed {
                report.fail(&Error::InternalInconsistency("a verification check failed".into()));
                report.error.as_mut().expect("just set").code = "VERIFICATION_FAILED".into();
            }
        }
        Err(e) => report.fail(&e),
    }
    report
}

fn ints(xs: &[BigInt]) -> Vec<JsonInt> {
    xs.iter().map(JsonInt::from).collect()
}

fn fill_result(report: &mut Report, result: &ClassGroupResult) {
    let c = &result.section_ring.construction;
    report.class_group = Some(GroupSummary {
        invariant_factors: ints(result.group.invariant_factors()),
        order: JsonInt(result.group.order()),
        display: result.group.to_string(),
        factor_count: result.factor_count(),
    });
    report.generators = result.generators.iter().map(|g| g.elements.clone()).collect();
    report.generator_degrees = result.generators.iter().map(|g| g.degrees).collect();
    report.relations =
        result.relations.iter().map(|r| RelationReport { relation: r.clone(), verified: None }).collect();
    let reg = &c.registry;
    report.divisor = Some(DivisorSummary {
        a: (&c.bezout.a).into(),
        b: (&c.bezout.b).into(),
        s: ints(&c.s),
        d: c.d.display(reg),
        denominator_lcm: JsonInt(c.d.denominator_lcm()),
        components: (0..reg.len()).map(|k| format!("V({}): {}", reg.component(k).label, c.d.coefficient(k))).collect(),
        alpha_numerators: ints(&result.alpha_numerators),
        alpha_moduli: ints(&result.alpha_moduli),
    });
}

fn witness_status(rel: &Relation, graded: &[GradedCheck]) -> Option<bool> {
    let n = graded.len().checked_sub(1)? / 2;
    let check = match rel.kind {
        RelationKind::Order { index } => graded.get(n + index - 1)?,
        RelationKind::Sum => graded.last()?,
    };
    check.skipped.is_none().then(|| check.passed())
}

fn verify(job: &JobFile, spec: &HypersurfaceSpec, result: &ClassGroupResult) -> Result<VerificationSummary> {
    let sr = &result.section_ring;
    let hs = &sr.hs;
    let depth = job.verify_depth.unwrap_or_else(|| hs.default_depth());
    let rep = sr.verify(depth)?;
    let (sections_pass, hilbert_pass) = (rep.sections_pass(), rep.hilbert_pass());
    let section_ring = CheckSummary { passed: sections_pass, failures: rep.section_failures };
    let hilbert = CheckSummary { passed: hilbert_pass, failures: rep.hilbert_failures };
    let relation_presentation = result.relation_group == result.group;
    let mut summary = VerificationSummary {
        depth,
        section_ring,
        hilbert,
        oracle: job.oracle,
        graded: Vec::new(),
        coset_enumeration: None,
        relation_presentation,
        monomial_model: None,
        diagonal_crosscheck: None,
        passed: false,
    };
    if job.oracle {
        summary.graded = verify_all_graded(sr, depth)?;
        summary.coset_enumeration =
            enumerate_cokernel(&result.group, &result.alpha_numerators, &result.alpha_moduli, ENUMERATION_LIMIT);
        let factors = &hs.factored().factors;
        let two_variables = hs.nvars() == 2
            && factors.len() == 2
            && factors.iter().all(|f| f.poly.as_ref().is_some_and(|p| p.as_scaled_variable().is_some()));
        if two_variables && hs.n() >= 2 {
            let n = u32::try_from(hs.n()).map_err(|_| Error::Overflow("n".into()))?;
            summary.monomial_model = Some(monomial_model_classgroup(n, 6 * n));
        }
        if job.x0.is_none() && spec.factors.is_none() && hs.nvars() == 2 {
            if let Some((_, _, m1, m2)) = as_diagonal_binomial(hs.g()) {
                summary.diagonal_crosscheck = Some(diagonal_d2_crosscheck(m1, m2, hs.n(), &hs.ring().field)?);
            }
        }
    }
    let order = result.group.order();
    let model_ok = summary
        .monomial_model
        .as_ref()
        .is_none_or(|m| m.consistent && m.order.map(BigInt::from) == Some(order.clone()));
    summary.passed = summary.section_ring.passed
        && summary.hilbert.passed
        && summary.relation_presentation
        && summary.graded.iter().all(|c| c.skipped.is_some() || c.passed())
        && summary.coset_enumeration != Some(false)
        && model_ok
        && summary.diagonal_crosscheck.as_ref().is_none_or(DiagonalCrosscheck::passed);
    Ok(summary)
}

/// One row of the Hilbert function comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub degree: u64,
    /// Coefficient of the closed-form series.
    pub series: JsonInt,
    /// Size of the monomial basis `{z^u mu}`.
    pub basis: usize,
}

pub fn hilbert_rows(hs: &Hypersurface, depth: u64) -> Vec<HilbertRow> {
    let series = hs.hilbert_series(depth as usize);
    (0..=depth)
        .map(|j| HilbertRow {
            degree: j,
            series: JsonInt(series[j as usize].clone()),
            basis: hs.graded_component_basis(j as i64).len(),
        })
        .collect()
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Human-readable rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let job = &r.job;
    let status = match r.status {
        Status::Ok => "ok",
        Status::Rejected => "rejected",
        Status::Error => "error",
    };
    let _ = writeln!(out, "status: {status} (exit {})", r.exit_code);
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error: {} ({})", e.message, e.code);
    }
    if let Some(h) = &r.hypotheses {
        let vars: Vec<String> = h.variables.iter().zip(&h.weights).map(|(v, w)| format!("{v}:{w}")).collect();
        let _ = writeln!(out, "field: {}  n: {}  weights: {}", h.field, h.n, vars.join(" "));
        if let Some(x0) = &job.x0 {
            let _ = writeln!(out, "x0 mode: {x0} of weight {}", h.x0_weight.map_or("?".into(), |c| c.to_string()));
        }
        if let (Some(m), Some(g)) = (h.m, h.gcd) {
            let _ = writeln!(out, "deg g = {m}, gcd(deg g, n) = {g}");
        }
        if let (Some(k), Some(c)) = (h.factor_count, h.factorization) {
            let _ = writeln!(out, "factors: {k} ({})", serde_json::to_value(c).expect("enum").as_str().unwrap_or(""));
        }
        if let Some(nm) = h.normality {
            let _ = writeln!(out, "normality: {}", serde_json::to_value(nm).expect("enum").as_str().unwrap_or(""));
        }
    }
    if let Some(g) = &r.class_group {
        let _ = writeln!(out, "class group: {}", g.display);
    }
    if !r.generators.is_empty() {
        let _ = writeln!(out, "generators:");
        for (g, d) in r.generators.iter().zip(&r.generator_degrees) {
            let _ = writeln!(out, "  ({}, {})  degrees {} and {}", g[0], g[1], d[0], d[1]);
        }
    }
    if !r.relations.is_empty() {
        let _ = writeln!(out, "relations:");
        for rel in &r.relations {
            let w = match rel.verified {
                Some(ok) => mark(ok),
                None => "not checked",
            };
            let _ = writeln!(out, "  {}  [{}; {}: {}]", rel.relation.statement, rel.relation.divisor_identity, rel.relation.witness, w);
        }
    }
    if let Some(d) = &r.divisor {
        let _ = writeln!(out, "D = {}", d.d);
    }
    if let Some(v) = &r.verification {
        out.push_str(&render_verification(v));
    }
    out
}

/// Pass/fail table for the verification part of a report.
pub fn render_verification(v: &VerificationSummary) -> String {
    let mut rows: Vec<(String, String)> = vec![
        ("section ring".into(), mark(v.section_ring.passed).into()),
        ("hilbert series".into(), mark(v.hilbert.passed).into()),
        ("relation presentation".into(), mark(v.relation_presentation).into()),
    ];
    for c in &v.graded {
        let status = match &c.skipped {
            Some(why) => format!("skipped ({why})"),
            None => mark(c.passed()).into(),
        };
        rows.push((c.name.clone(), status));
    }
    if let Some(e) = v.coset_enumeration {
        rows.push(("coset enumeration".into(), mark(e).into()));
    }
    if let Some(m) = &v.monomial_model {
        rows.push((format!("monomial model k[xy, x^{0}, y^{0}]", m.n), mark(m.consistent).into()));
    }
    if let Some(d) = &v.diagonal_crosscheck {
        rows.push((format!("diagonal x1^{} + x2^{}", d.exponents.0, d.exponents.1), mark(d.passed()).into()));
    }
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = format!("verification to degree {}:\n", v.depth);
    for (k, s) in rows {
        let _ = writeln!(out, "  {k:<width$}  {s}");
    }
    let _ = writeln!(out, "  {:<width$}  {}", "overall", mark(v.passed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODE: &str = r#"{
        "schema_version": 1,
        "field": "Q",
        "n": 3,
        "variables": [{"name": "x1", "weight": 1}, {"name": "x2", "weight": 1}],
        "factors": ["x1", "x2"],
        "verify_depth": 30
    }"#;

    #[test]
    fn node_job() {
        let job = JobFile::from_json(NODE).unwrap();
        let rep = run_job(&job);
        assert_eq!(rep.exit_code, 0, "{}", rep.to_json());
        assert_eq!(rep.generators, vec![["z".to_string(), "x1".to_string()]]);
        assert_eq!(rep.class_group.as_ref().unwrap().invariant_factors, vec![JsonInt(3.into())]);
        assert!(rep.relations.iter().all(|r| r.verified == Some(true)));
        let v = rep.verification.as_ref().unwrap();
        assert!(v.monomial_model.as_ref().unwrap().consistent);
        let back = Report::from_json(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        assert!(render_text(&rep).contains("class group: Z/3"));
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = NODE.replace("\"n\": 3", "\"n\": 3, \"colour\": 1");
        assert!(matches!(JobFile::from_json(&bad), Err(Error::InvalidJob(_))));
    }

    #[test]
    fn json_int_switches_to_strings() {
        let big = JsonInt(BigInt::from(1u64 << 60));
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"1152921504606846976\"");
        assert_eq!(serde_json::to_string(&JsonInt(BigInt::from(-7))).unwrap(), "-7");
        let back: JsonInt = serde_json::from_str("\"1152921504606846976\"").unwrap();
        assert_eq!(back, big);
    }
}
