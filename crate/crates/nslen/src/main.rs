//! Command-line surface: ingest group files or construction recipes,
//! dispatch computations, emit one JSON document per invocation.
//!
//! Exit codes: 0 success, 1 usage, 2 bad input, 3 cap exceeded,
//! 4 verification failure. Diagnostics go to stderr only.

use clap::{Parser, Subcommand};
use nslen::constructions::build_recipe;
use nslen::error::Error;
use nslen::group::Group;
use nslen::perm::Permutation;
use nslen::structure::{Caps, Mode};
use nslen::{class_l, oracle, rarefied, rs, verify};
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::json;
use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "nslen",
    about = "Nonsolvable length of finite permutation groups",
    disable_help_subcommand = true
)]
struct Cli {
    /// Config file (JSON: caps, seed, mode, out); flags override it.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Seed for randomized computations.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// exact or mc (Monte-Carlo).
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nonsolvable length of a group.
    Lambda { source: String },
    /// Certified series of alternating radical and socle layers.
    RsSeries { source: String },
    /// Solvable radical.
    Radical { source: String },
    /// Socle of G modulo its radical, lifted back to G.
    Socle { source: String },
    /// Per-level rarefied conditions and the strict/strong verdicts.
    RarefiedCheck { source: String },
    /// Search for an n-rarefied subgroup, n = lambda(G).
    RarefiedFind { source: String },
    /// Identify a simple group by its order.
    ClassL { order: String },
    /// Run a reproduction suite (lambda-m, lambda-f, bound1, generators,
    /// exponent, oracle, subdirect, class-l).
    Verify { suite: String },
    /// Cross-check main algorithms against the brute-force oracle.
    OracleCheck { source: String },
}

#[derive(Default, Deserialize)]
struct Config {
    caps: Option<Caps>,
    seed: Option<u64>,
    mode: Option<String>,
    out: Option<String>,
}

struct Settings {
    caps: Caps,
    seed: u64,
    mode: Mode,
    out: Option<String>,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn load_settings(cli: &Cli) -> Result<Settings, (u8, String)> {
    let mut cfg = Config::default();
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| (EXIT_INPUT, format!("cannot read config {path}: {e}")))?;
        cfg = serde_json::from_str(&text)
            .map_err(|e| (EXIT_INPUT, format!("malformed config {path}: {e}")))?;
    }
    let caps = cfg.caps.unwrap_or_default();
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let mode_str = cli
        .mode
        .clone()
        .or(cfg.mode)
        .unwrap_or_else(|| "exact".into());
    let mode = match mode_str.as_str() {
        "exact" => Mode::Exact,
        "mc" | "montecarlo" => Mode::MonteCarlo { seed },
        other => return Err((EXIT_USAGE, format!("unknown mode '{other}', expected exact|mc"))),
    };
    let out = cli.out.clone().or(cfg.out);
    Ok(Settings { caps, seed, mode, out })
}

#[derive(Deserialize)]
struct GroupFile {
    degree: usize,
    /// Each generator is a list of cycles; points are 1-based.
    generators: Vec<Vec<Vec<usize>>>,
}

fn parse_group_source(source: &str, caps: &Caps) -> Result<Group, Error> {
    if source.contains(':') {
        return Ok(build_recipe(source, caps)?.group);
    }
    let text = fs::read_to_string(source)
        .map_err(|e| Error::BadInput(format!("cannot read group file {source}: {e}")))?;
    let file: GroupFile = serde_json::from_str(&text)
        .map_err(|e| Error::BadInput(format!("malformed group file {source}: {e}")))?;
    let gens = file
        .generators
        .iter()
        .map(|cycles| Permutation::from_cycles(file.degree, cycles))
        .collect::<Result<Vec<_>, _>>()?;
    Group::new(file.degree, gens)
}

fn group_json(g: &Group) -> serde_json::Value {
    json!({
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": g.generators().iter().map(|p| p.cycles1()).collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli, s: &Settings) -> Result<(serde_json::Value, bool), Error> {
    let doc = match &cli.command {
        Command::Lambda { source } => {
            let g = parse_group_source(source, &s.caps)?;
            let lam = rs::lambda(&g, s.mode, &s.caps)?;
            json!({"lambda": lam.value, "exact": lam.exact, "mode": lam.flag})
        }
        Command::RsSeries { source } => {
            let g = parse_group_source(source, &s.caps)?;
            rs::rs_series(&g, s.mode, &s.caps)?.to_json()
        }
        Command::Radical { source } => {
            let g = parse_group_source(source, &s.caps)?;
            let (r, flag) = nslen::structure::solvable_radical(&g, s.mode, &s.caps)?;
            json!({"radical": group_json(&r), "mode": flag})
        }
        Command::Socle { source } => {
            let g = parse_group_source(source, &s.caps)?;
            let (r, _) = nslen::structure::solvable_radical(&g, s.mode, &s.caps)?;
            let q = nslen::structure::quotient(&g, &r, &s.caps)?;
            let soc = nslen::structure::socle_nonabelian(&q.image, s.mode, &s.caps)?;
            let lifted = q.lift(&soc.socle)?;
            json!({
                "socle_mod_radical": group_json(&lifted),
                "components": soc.component_ids,
                "complete": soc.complete,
            })
        }
        Command::RarefiedCheck { source } => {
            let g = parse_group_source(source, &s.caps)?;
            rarefied::check_rarefied(&g, s.mode, &s.caps)?.to_json()
        }
        Command::RarefiedFind { source } => {
            let g = parse_group_source(source, &s.caps)?;
            let (h, report) = rarefied::find_rarefied_subgroup(&g, s.mode, &s.caps)?;
            json!({"subgroup": group_json(&h), "report": report.to_json()})
        }
        Command::ClassL { order } => {
            let n = BigUint::from_str(order)
                .map_err(|_| Error::BadInput(format!("not a number: {order}")))?;
            serde_json::to_value(class_l::identify_simple_by_order(&n))
                .map_err(|e| Error::Internal(e.to_string()))?
        }
        Command::Verify { suite } => {
            if !verify::suite_names().contains(&suite.as_str()) {
                return Err(Error::BadInput(format!(
                    "unknown suite '{suite}'; known: {}",
                    verify::suite_names().join(", ")
                )));
            }
            let reports = verify::run_suite(suite, s.seed, &s.caps)?;
            let ok = verify::all_pass(&reports);
            let doc = serde_json::to_value(&reports).map_err(|e| Error::Internal(e.to_string()))?;
            return Ok((doc, !ok));
        }
        Command::OracleCheck { source } => {
            let g = parse_group_source(source, &s.caps)?;
            if g.order_u64().map(|o| o > oracle::ORACLE_ORDER_CAP) != Some(false) {
                return Err(Error::CapExceeded {
                    what: "oracle order",
                    needed: g.order().to_string(),
                    cap: oracle::ORACLE_ORDER_CAP.to_string(),
                });
            }
            let corpus = vec![(source.clone(), g)];
            let reports = verify::oracle_cross_check(&corpus, &s.caps)?;
            let ok = verify::all_pass(&reports);
            let doc = serde_json::to_value(&reports).map_err(|e| Error::Internal(e.to_string()))?;
            return Ok((doc, !ok));
        }
    };
    Ok((doc, false))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let settings = match load_settings(&cli) {
        Ok(s) => s,
        Err((code, msg)) => return fail(code, &msg),
    };
    match run(&cli, &settings) {
        Ok((doc, verify_failed)) => {
            let text = format!("{:#}\n", doc);
            if let Some(path) = &settings.out {
                if let Err(e) = fs::write(path, &text) {
                    return fail(EXIT_INPUT, &format!("cannot write {path}: {e}"));
                }
            } else {
                print!("{text}");
            }
            if verify_failed {
                eprintln!("verification failed");
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(exit_code_for(&e), &e.to_string()),
    }
}
