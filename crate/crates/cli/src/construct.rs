use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use steinerlike::extension::build_extension;
use steinerlike::fischer::affine_covering;
use steinerlike::source::{GroupSource, LoopSource, SpecJson, WeightedJson, WeightedStsJson};
use steinerlike::steiner::{construct_sts, loop_from_sts, StsJson};
use steinerlike::tables::{make_group, GroupTable, LoopTable, TableJson};
use steinerlike::weighted::{core_diagonal, WeightedSteinerLoop};

use crate::args::Construct;
use crate::{read_json, CliError, Outcome, Settings};

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("--{what}: {t:?} is not an element index"))))
        .collect()
}

/// Weights and diagonal from the flags. Random draws use one ChaCha8
/// stream, weights first.
fn weighted(
    s: &Arc<LoopTable>,
    a: &Arc<GroupTable>,
    h: Option<&str>,
    diag: Option<&str>,
    random: bool,
    seed: u64,
) -> Result<WeightedSteinerLoop, CliError> {
    let m = s.order() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| (0..m).map(|_| rng.gen_range(0..a.order())).collect::<Vec<_>>();
    let h = match (h, random) {
        (Some(text), _) => parse_list(text, "h")?,
        (None, true) => draw(&mut rng),
        (None, false) => return Err(CliError::Usage("give --h or --random".into())),
    };
    let diag = match (diag, random) {
        (Some("core"), _) => core_diagonal(s, a, &h),
        (Some("identity"), _) | (None, false) => vec![0; m],
        (Some("scaled"), _) => h.clone(),
        (Some(text), _) => parse_list(text, "diag")?,
        (None, true) => draw(&mut rng),
    };
    WeightedSteinerLoop::new(s.clone(), a.clone(), &h, &diag).map_err(|e| CliError::Usage(e.to_string()))
}

/// The table's wire form with one extra key, so the artifact still reads
/// back as a table.
fn annotated(table: &LoopTable, key: &str, value: Value) -> Value {
    let mut out = serde_json::to_value(TableJson::from(table)).expect("tables serialize");
    out.as_object_mut().expect("a table is an object").insert(key.into(), value);
    out
}

pub fn run(what: &Construct, settings: &Settings) -> Result<Outcome, CliError> {
    match what {
        Construct::Sts { n } => Outcome::ok(StsJson::from(&construct_sts(*n)?)),
        Construct::SteinerLoop { n } => {
            settings.check_order(n + 1)?;
            Outcome::ok(TableJson::from(&loop_from_sts(&construct_sts(*n)?)))
        }
        Construct::Group { kind, n, name } => {
            let kind = match (kind, name) {
                (_, Some(k)) => k.clone(),
                (Some(family), None) => family.kind(n.expect("clap requires --n with --kind")),
                (None, None) => unreachable!("clap requires --kind or --name"),
            };
            if let Some(order) = kind.order() {
                settings.check_order(order)?;
            }
            Outcome::ok(annotated(make_group(&kind)?.as_loop(), "name", json!(kind.to_string())))
        }
        Construct::Weighted { s, a, h, diag, random, variant } => {
            let s = Arc::new(LoopSource::Named(s.clone()).resolve()?);
            let group = Arc::new(make_group(a)?);
            settings.check_order(s.order() * group.order())?;
            let w = weighted(&s, &group, h.as_deref(), diag.as_deref(), *random, settings.seed)?;
            let mut out = WeightedJson::describe(&w, GroupSource::Named(a.clone()));
            out.variant = *variant;
            Outcome::ok(out)
        }
        Construct::Extension { spec, variant } => {
            let raw: SpecJson = read_json(spec)?;
            let mut spec = raw.resolve()?.spec;
            if let Some(v) = variant {
                spec = spec.with_variant(*v);
            }
            settings.check_order(spec.order())?;
            let table = build_extension(&spec)?;
            Outcome::ok(annotated(&table, "variant", json!(spec.variant)))
        }
        Construct::AffineCovering { s, n } => {
            let cover = affine_covering(*s, *n)?;
            let g = GroupSource::Named(steinerlike::tables::GroupKind::Gf3Semidirect { s: *s });
            Outcome::ok(WeightedStsJson::describe(&cover.weighted, g))
        }
    }
}
