use serde::Serialize;

use steinerlike::extension::{build_extension, Variant};
use steinerlike::identities::{brute_check, criterion, criterion_raw, CriterionError, CriterionReport, IdentityName};
use steinerlike::source::{ResolvedSpec, SpecJson};
use steinerlike::Check;

use crate::args::CheckArgs;
use crate::{read_json, CliError, Exit, Outcome, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Brute,
    Criterion,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResult {
    pub identity: IdentityName,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<CriterionReport>,
    /// Why no criterion applies, in `both` mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion_error: Option<String>,
    /// Present when both sides ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub variant: Variant,
    pub order: usize,
    pub mode: Mode,
    pub disagreements: usize,
    pub results: Vec<IdentityResult>,
}

impl CheckReport {
    pub fn exit(&self) -> Exit {
        if self.disagreements > 0 {
            Exit::Violation
        } else {
            Exit::Ok
        }
    }
}

/// The library criterion: by weight when the spec was given as one,
/// otherwise after recovering a weight from `f`.
pub fn default_criterion(spec: &ResolvedSpec, id: IdentityName) -> Result<CriterionReport, CriterionError> {
    match &spec.weighted {
        Some(w) => Ok(criterion(w, spec.spec.variant, id)),
        None => criterion_raw(&spec.spec, id),
    }
}

/// Runs the checks with an injectable criterion.
pub fn run_check_with<F>(
    spec: &ResolvedSpec,
    ids: &[IdentityName],
    mode: Mode,
    settings: &Settings,
    criterion: F,
) -> Result<CheckReport, CliError>
where
    F: Fn(&ResolvedSpec, IdentityName) -> Result<CriterionReport, CriterionError>,
{
    settings.check_order(spec.spec.order())?;
    let table = match mode {
        Mode::Criterion => None,
        _ => Some(build_extension(&spec.spec)?),
    };
    let mut results = Vec::with_capacity(ids.len());
    for &id in ids {
        let brute = table.as_ref().map(|t| brute_check(t, id));
        let (crit, criterion_error) = match mode {
            Mode::Brute => (None, None),
            Mode::Criterion => (Some(criterion(spec, id)?), None),
            Mode::Both => match criterion(spec, id) {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(e.to_string())),
            },
        };
        let agree = match (&brute, &crit) {
            (Some(b), Some(c)) => Some(b.holds == c.holds),
            _ => None,
        };
        results.push(IdentityResult { identity: id, brute, criterion: crit, criterion_error, agree });
    }
    let disagreements = results.iter().filter(|r| r.agree == Some(false)).count();
    Ok(CheckReport { variant: spec.spec.variant, order: spec.spec.order(), mode, disagreements, results })
}

/// Reads a spec file and applies a variant override.
pub fn load_spec(path: &std::path::Path, variant: Option<Variant>) -> Result<ResolvedSpec, CliError> {
    let raw: SpecJson = read_json(path)?;
    let mut resolved = raw.resolve()?;
    if let Some(v) = variant {
        resolved.spec = resolved.spec.with_variant(v);
    }
    Ok(resolved)
}

pub fn parse_identities(text: &str) -> Result<Vec<IdentityName>, CliError> {
    if text == "all" {
        return Ok(IdentityName::ALL.to_vec());
    }
    text.split(',').map(|t| t.trim().parse().map_err(|e| CliError::Usage(format!("{e}")))).collect()
}

pub fn run(args: &CheckArgs, settings: &Settings) -> Result<Outcome, CliError> {
    let mode = match (args.brute, args.criterion) {
        (true, _) => Mode::Brute,
        (_, true) => Mode::Criterion,
        _ => Mode::Both,
    };
    let spec = load_spec(&args.spec, args.variant)?;
    let ids = parse_identities(&args.identity)?;
    let report = run_check_with(&spec, &ids, mode, settings, default_criterion)?;
    let exit = report.exit();
    Outcome::with_exit(report, exit)
}
