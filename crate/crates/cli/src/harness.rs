//! The equivalence harness plus fixed structural checks on translation
//! groups and automorphism groups.

use std::fs;
use std::path::Path;

use serde::Serialize;

use steinerlike::identities::{equivalence_harness, instance_families, HarnessConfig, HarnessReport};
use steinerlike::morphisms::{automorphism_group, AutGroupReport};
use steinerlike::source::SpecJson;
use steinerlike::translations::{full_group_decomposition, iota_maps, translation_groups, TranslationReport};

use crate::args::HarnessArgs;
use crate::{read_json, write_file, CliError, Exit, Outcome, Settings};

/// The shipped configuration, as text.
pub const DEFAULT_CONFIG: &str = include_str!("../configs/default_harness.json");

/// Specs spanning abelian and nonabelian `A` with central and noncentral `f`.
const STRUCTURAL_SPECS: [(&str, &str); 7] = [
    ("klein-z2", r#"{"s": "sts:3", "a": "Z2", "h": {"1": 1, "2": 1, "3": 1}, "diag": {"1": 0, "2": 0, "3": 0}}"#),
    ("klein-z4", r#"{"s": "sts:3", "a": "Z4", "h": {"1": 1, "2": 2, "3": 3}, "diag": {"1": 1, "2": 0, "3": 2}}"#),
    (
        "fano-z2",
        r#"{"s": "sts:7", "a": "Z2", "h": {"1": 1, "2": 0, "3": 1, "4": 1, "5": 0, "6": 0, "7": 1}, "diag": {"1": 0, "2": 0, "3": 0, "4": 0, "5": 0, "6": 0, "7": 0}}"#,
    ),
    (
        "klein-s3-trivial",
        r#"{"s": "sts:3", "a": "S3", "h": {"1": 0, "2": 0, "3": 0}, "diag": {"1": 0, "2": 0, "3": 0}}"#,
    ),
    (
        "klein-s3-diagonal",
        r#"{"s": "sts:3", "a": "S3", "h": {"1": 0, "2": 0, "3": 0}, "diag": {"1": 3, "2": 4, "3": 0}}"#,
    ),
    ("klein-s3", r#"{"s": "sts:3", "a": "S3", "h": {"1": 1, "2": 3, "3": 2}, "diag": {"1": 0, "2": 1, "3": 0}}"#),
    (
        "klein-s3-star",
        r#"{"s": "sts:3", "a": "S3", "h": {"1": 1, "2": 2, "3": 5}, "diag": {"1": 0, "2": 0, "3": 0}, "variant": "star"}"#,
    ),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralResult {
    pub name: String,
    pub f_central: bool,
    pub translations: TranslationReport,
    pub iota_all_automorphisms: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_from_left: Option<bool>,
    pub automorphisms: AutGroupSummary,
    /// Names of the checks that failed.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutGroupSummary {
    pub order: usize,
    pub psi_order: usize,
    pub sigma_order: usize,
}

impl From<&AutGroupReport> for AutGroupSummary {
    fn from(r: &AutGroupReport) -> Self {
        Self { order: r.order, psi_order: r.psi.len(), sigma_order: r.sigma.len() }
    }
}

fn structural_case(name: &str, text: &str, settings: &Settings) -> Result<StructuralResult, CliError> {
    let raw: SpecJson = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
    let spec = raw.resolve()?.spec;
    let f_central = spec.f_central();
    let tr = translation_groups(&spec, settings.closure_cap)?.report;
    let iota = iota_maps(&spec)?;
    let right_from_left =
        if f_central { full_group_decomposition(&spec, settings.closure_cap)?.right_from_left } else { None };
    let aut = automorphism_group(&spec)?;
    let checks = [
        ("g_l = g_r iff A abelian", tr.g_l_equals_g_r == tr.a_abelian),
        ("A-slice isomorphic to A", tr.a_slice_isomorphic),
        ("|G_r| = |A||Σ|/|Σ ∩ A-slice|", tr.order_product_corrected),
        ("iota automorphisms iff f central", iota.all_automorphisms == f_central),
        ("ρ = ι∘λ under central f", right_from_left != Some(false)),
        ("Ψ closed", aut.psi_closed),
        ("Ψ commutative", aut.psi_commutative),
        ("Ψ of exponent two", aut.psi_exponent_two),
        ("Ψ ∩ Σ trivial", aut.psi_meets_sigma_trivially),
        ("kernels contain the derived subloop", aut.kernels_contain_derived),
        ("homomorphic condition", aut.homomorphic_condition_agrees != Some(false)),
    ];
    // stated for the Standard product only
    let standard = [
        ("A-slice normal in G_r", tr.a_slice_normal_in_g_r),
        ("right factorisation", tr.right_factorisation),
        ("right conjugation", tr.right_conjugation),
    ];
    let failures = checks
        .into_iter()
        .chain(standard.into_iter().filter(|_| spec.variant == steinerlike::extension::Variant::Standard))
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.to_string())
        .collect();
    Ok(StructuralResult {
        name: name.to_string(),
        f_central,
        translations: tr,
        iota_all_automorphisms: iota.all_automorphisms,
        right_from_left,
        automorphisms: (&aut).into(),
        failures,
    })
}

pub fn structural_checks(settings: &Settings) -> Result<Vec<StructuralResult>, CliError> {
    STRUCTURAL_SPECS.iter().map(|(name, text)| structural_case(name, text, settings)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessSummary {
    pub passed: bool,
    pub counterexamples: u64,
    pub harness: HarnessReport,
    pub structural: Vec<StructuralResult>,
}

pub fn run_harness(config: &HarnessConfig, settings: &Settings) -> Result<HarnessSummary, CliError> {
    let harness = equivalence_harness(config)?;
    let structural = structural_checks(settings)?;
    let structural_failures = structural.iter().filter(|r| !r.failures.is_empty()).count() as u64;
    let counterexamples = harness.disagreement_count
        + harness.implication_violations
        + harness.structure_failure_count
        + structural_failures;
    Ok(HarnessSummary { passed: counterexamples == 0, counterexamples, harness, structural })
}

fn put<T: Serialize>(dir: &Path, prefix: &str, i: usize, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    write_file(&dir.join(format!("{prefix}-{i:03}.json")), &text)
}

/// One file per listed disagreement, structure failure and failing
/// structural case.
fn write_counterexamples(dir: &Path, summary: &HarnessSummary) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.to_path_buf(), source: e })?;
    for (i, d) in summary.harness.disagreements.iter().enumerate() {
        put(dir, "disagreement", i, d)?;
    }
    for (i, f) in summary.harness.structure_failures.iter().enumerate() {
        put(dir, "structure", i, f)?;
    }
    for (i, r) in summary.structural.iter().filter(|r| !r.failures.is_empty()).enumerate() {
        put(dir, "structural", i, r)?;
    }
    Ok(())
}

pub fn run(args: &HarnessArgs, settings: &Settings, seed_override: Option<u64>) -> Result<Outcome, CliError> {
    let mut config: HarnessConfig = match &args.config {
        Some(path) => read_json(path)?,
        None => instance_families(),
    };
    if let Some(seed) = seed_override {
        config.seed = seed;
    }
    let summary = run_harness(&config, settings)?;
    if let Some(dir) = &args.counterexamples {
        write_counterexamples(dir, &summary)?;
    }
    let exit = if summary.passed { Exit::Ok } else { Exit::Violation };
    let mut outcome = Outcome::with_exit(summary, exit)?;
    outcome.seed = Some(config.seed);
    Ok(outcome)
}
