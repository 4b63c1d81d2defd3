use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use steinerlike::extension::Variant;
use steinerlike::identities::DEFAULT_SEED;
use steinerlike::tables::{GroupKind, ORDER_CAP};
use steinerlike::translations::CLOSURE_CAP;

use crate::{CliError, Settings};

const EXIT_CODES: &str = "\
Exit status:
  0  success
  1  usage or I/O error
  2  a checked statement failed, or brute force and a criterion disagree
  3  a cap was exceeded";

#[derive(Debug, Parser)]
#[command(name = "steinerlike", version, about = "Extensions of groups by weighted Steiner loops", after_help = EXIT_CODES)]
pub struct Cli {
    /// Seed for every random choice, decimal or 0x-prefixed hex [default: 0x5EED]
    #[arg(long, global = true, env = "STEINER_SEED", value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Worker threads [default: available parallelism]. Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Largest loop order that may be built
    #[arg(long, global = true, default_value_t = ORDER_CAP)]
    pub order_cap: usize,
    /// Largest permutation group that may be enumerated
    #[arg(long, global = true, default_value_t = CLOSURE_CAP)]
    pub closure_cap: usize,
    /// Write the JSON result here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_seed(text: &str) -> Result<u64, String> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {text:?}: {e}"))
}

impl Cli {
    pub fn settings(&self) -> Result<Settings, CliError> {
        if self.order_cap == 0 || self.closure_cap == 0 {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        if self.order_cap > ORDER_CAP {
            return Err(CliError::Usage(format!("--order-cap cannot exceed {ORDER_CAP}")));
        }
        Ok(Settings {
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            order_cap: self.order_cap,
            closure_cap: self.closure_cap,
        })
    }

    /// The command path recorded in `meta`, e.g. `construct sts`.
    pub fn command_name(&self) -> String {
        match &self.command {
            Command::Construct { what } => format!("construct {}", what.name()),
            Command::Check(_) => "check".into(),
            Command::Harness(_) => "harness".into(),
            Command::Translations { .. } => "translations".into(),
            Command::Fischer { .. } => "fischer".into(),
            Command::Morphisms { .. } => "morphisms".into(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a JSON artifact
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Evaluate loop identities on an extension by brute force, by criterion, or both.
    ///
    /// Exit 0 means every requested evaluation ran and, with --both, brute
    /// force agreed with the criterion on every identity. Whether an identity
    /// holds is reported as `holds` in the JSON and does not affect the exit
    /// status. Exit 2 means a disagreement.
    Check(CheckArgs),
    /// Run the brute-force/criterion equivalence harness and the structural checks
    Harness(HarnessArgs),
    /// Translation groups of an extension
    Translations {
        /// Weighted or extension spec file
        #[arg(long)]
        spec: PathBuf,
    },
    /// Fischer space, restricted Fischer group and Hall system checks for a weighted triple system
    Fischer {
        /// Weighted triple system file
        #[arg(long)]
        input: PathBuf,
    },
    /// Automorphism group of an extension, or isomorphisms between two
    Morphisms {
        /// Weighted or extension spec file
        #[arg(long)]
        spec: PathBuf,
        /// Second spec: search for isomorphisms from --spec to this one
        #[arg(long)]
        to: Option<PathBuf>,
        /// Do not skip pairs of automorphisms failing the commutator condition
        #[arg(long)]
        no_prune: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupFamily {
    /// Z_n
    Cyclic,
    /// (Z2)^n
    ElementaryAbelian,
    /// S_n
    Symmetric,
    /// (Z3)^n ⋊ Z2
    Gf3Semidirect,
}

impl GroupFamily {
    pub fn kind(self, n: usize) -> GroupKind {
        match self {
            GroupFamily::Cyclic => GroupKind::Cyclic { n },
            GroupFamily::ElementaryAbelian => GroupKind::ElementaryAbelian2 { k: n },
            GroupFamily::Symmetric => GroupKind::Symmetric { n },
            GroupFamily::Gf3Semidirect => GroupKind::Gf3Semidirect { s: n },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Steiner triple system on n points
    Sts {
        #[arg(long)]
        n: usize,
    },
    /// Steiner loop of the n-point triple system
    SteinerLoop {
        #[arg(long)]
        n: usize,
    },
    /// Group table, by family and parameter or by name (Z4, Z2^3, S4, Z4xZ2, GF3^2:2)
    #[command(group(ArgGroup::new("which").required(true).args(["kind", "name"])))]
    Group {
        #[arg(long, value_enum, requires = "n")]
        kind: Option<GroupFamily>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "kind")]
        name: Option<GroupKind>,
    },
    /// Weighted Steiner loop
    Weighted {
        /// Steiner loop: "sts:N"
        #[arg(long)]
        s: String,
        /// Group name
        #[arg(long)]
        a: GroupKind,
        /// Weights h(1), h(2), … as comma-separated element indices
        #[arg(long)]
        h: Option<String>,
        /// "core", "identity", "scaled" (F = h), or comma-separated indices [default: identity]
        #[arg(long)]
        diag: Option<String>,
        /// Draw the unspecified weights and diagonal from the seed
        #[arg(long)]
        random: bool,
        /// Record a product variant in the artifact
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Cayley table of the extension described by a spec file
    Extension {
        #[arg(long)]
        spec: PathBuf,
        /// Override the spec's product variant
        #[arg(long)]
        variant: Option<Variant>,
    },
    /// Affine covering of the Fischer space of (Z3)^s ⋊ Z2 by AG(n,3)
    AffineCovering {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
    },
}

impl Construct {
    pub fn name(&self) -> &'static str {
        match self {
            Construct::Sts { .. } => "sts",
            Construct::SteinerLoop { .. } => "steiner-loop",
            Construct::Group { .. } => "group",
            Construct::Weighted { .. } => "weighted",
            Construct::Extension { .. } => "extension",
            Construct::AffineCovering { .. } => "affine-covering",
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").args(["brute", "criterion", "both"])))]
pub struct CheckArgs {
    /// Weighted or extension spec file
    #[arg(long)]
    pub spec: PathBuf,
    /// Identity name, or "all"
    #[arg(long, default_value = "all")]
    pub identity: String,
    /// Override the spec's product variant
    #[arg(long)]
    pub variant: Option<Variant>,
    /// Brute force only
    #[arg(long)]
    pub brute: bool,
    /// Criterion only
    #[arg(long)]
    pub criterion: bool,
    /// Both, compared (the default)
    #[arg(long)]
    pub both: bool,
}

#[derive(Debug, Args)]
pub struct HarnessArgs {
    /// Family configuration [default: the shipped configuration]
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Directory receiving one JSON file per listed counterexample; left empty on success
    #[arg(long)]
    pub counterexamples: Option<PathBuf>,
}
