//! Command handlers behind the `steinerlike` binary.
//!
//! Every handler returns a JSON object and an exit status; [`render`] adds
//! the `meta` block recording the seed and caps, so identical inputs, seed
//! and caps give byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use steinerlike::extension::ExtensionError;
use steinerlike::fischer::FischerError;
use steinerlike::identities::CriterionError;
use steinerlike::morphisms::MorphismError;
use steinerlike::source::SourceError;
use steinerlike::steiner::SteinerError;
use steinerlike::tables::TableError;
use steinerlike::translations::TranslationError;

pub mod analysis;
pub mod args;
pub mod check;
pub mod construct;
pub mod harness;

pub use args::{Cli, Command};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Violation = 2,
    Cap = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("violation: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => Exit::Usage,
            CliError::Cap(_) => Exit::Cap,
            CliError::Violation(_) => Exit::Violation,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::OrderCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ExtensionError> for CliError {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::OrderCap { .. } => CliError::Cap(e.to_string()),
            ExtensionError::Table(t) => t.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SteinerError> for CliError {
    fn from(e: SteinerError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FischerError> for CliError {
    fn from(e: FischerError) -> Self {
        match e {
            FischerError::OrderCap { .. } => CliError::Cap(e.to_string()),
            FischerError::Violation(_) => CliError::Violation(e.to_string()),
            FischerError::Table(t) => t.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SourceError> for CliError {
    fn from(e: SourceError) -> Self {
        match e {
            SourceError::Table(t) => t.into(),
            SourceError::Extension(x) => x.into(),
            SourceError::Fischer(f) => f.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<TranslationError> for CliError {
    fn from(e: TranslationError) -> Self {
        match e {
            TranslationError::ClosureCap { .. } => CliError::Cap(e.to_string()),
            TranslationError::Extension(x) => x.into(),
            TranslationError::HypothesisFailed(_) | TranslationError::Degree(..) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<MorphismError> for CliError {
    fn from(e: MorphismError) -> Self {
        match e {
            MorphismError::OrderCap { .. } => CliError::Cap(e.to_string()),
            MorphismError::Violation(_) => CliError::Violation(e.to_string()),
            MorphismError::Extension(x) => x.into(),
            MorphismError::Precondition(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CriterionError> for CliError {
    fn from(e: CriterionError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Seed and caps shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub seed: u64,
    pub order_cap: usize,
    pub closure_cap: usize,
}

impl Settings {
    /// Fails with a cap error when an extension of `order` is too large.
    pub fn check_order(&self, order: usize) -> Result<(), CliError> {
        if order > self.order_cap {
            return Err(CliError::Cap(format!("order {order} exceeds --order-cap {}", self.order_cap)));
        }
        Ok(())
    }
}

/// A command result before the `meta` block is attached.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: Value,
    pub exit: Exit,
    /// The seed actually used, when it differs from the command-line one.
    pub seed: Option<u64>,
}

impl Outcome {
    pub fn ok(body: impl Serialize) -> Result<Self, CliError> {
        Self::with_exit(body, Exit::Ok)
    }

    pub fn with_exit(body: impl Serialize, exit: Exit) -> Result<Self, CliError> {
        let body = serde_json::to_value(body).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Self { body, exit, seed: None })
    }
}

/// Pretty JSON with a trailing newline. Object bodies gain a `meta` key;
/// anything else is wrapped as `{"meta": …, "value": …}`.
pub fn render(command: &str, settings: &Settings, outcome: Outcome) -> String {
    let meta = serde_json::json!({
        "tool": "steinerlike",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": outcome.seed.unwrap_or(settings.seed),
        "order_cap": settings.order_cap,
        "closure_cap": settings.closure_cap,
    });
    let mut object = match outcome.body {
        Value::Object(map) => map,
        other => Map::from_iter([("value".to_string(), other)]),
    };
    object.insert("meta".into(), meta);
    let mut text = serde_json::to_string_pretty(&Value::Object(object)).expect("JSON values serialize");
    text.push('\n');
    text
}

/// Reads a JSON file, ignoring a top-level `meta` key so that any output of
/// this tool can be fed back as input.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if let Value::Object(map) = &mut value {
        map.remove("meta");
    }
    serde_json::from_value(value).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Runs the parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let settings = cli.settings()?;
    match &cli.command {
        Command::Construct { what } => construct::run(what, &settings),
        Command::Check(a) => check::run(a, &settings),
        Command::Harness(a) => harness::run(a, &settings, cli.seed),
        Command::Translations { spec } => analysis::translations(spec, &settings),
        Command::Fischer { input } => analysis::fischer(input),
        Command::Morphisms { spec, to, no_prune } => analysis::morphisms(spec, to.as_deref(), !no_prune, &settings),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meta_is_attached_and_stripped() {
        let settings = Settings { seed: 7, order_cap: 16, closure_cap: 32 };
        let outcome = Outcome::ok(serde_json::json!({"n": 3})).unwrap();
        let text = render("construct sts", &settings, outcome);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["meta"]["seed"], 7);
        assert_eq!(v["meta"]["order_cap"], 16);
        let dir = std::env::temp_dir().join(format!("steinerlike-meta-{}", std::process::id()));
        write_file(&dir, &text).unwrap();
        let back: Map<String, Value> = read_json(&dir).unwrap();
        fs::remove_file(&dir).unwrap();
        assert_eq!(back.keys().collect::<Vec<_>>(), ["n"]);
    }

    #[test]
    fn library_errors_map_to_exit_codes() {
        assert_eq!(CliError::from(TableError::OrderCap { order: 5, cap: 4 }).exit(), Exit::Cap);
        assert_eq!(CliError::from(TranslationError::ClosureCap { cap: 1 }).exit(), Exit::Cap);
        assert_eq!(CliError::from(MorphismError::Violation("x".into())).exit(), Exit::Violation);
        assert_eq!(CliError::from(SteinerError::BadResidue(8)).exit(), Exit::Usage);
    }
}
