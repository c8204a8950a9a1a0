use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcrys_core::boson::{
    block_results, build_so3, check_so3, check_so3_top_spin, FockSpace, Realization,
};
use qcrys_core::crystal::{AlgebraType, CrystalModel, CrystalSpec, Sign, DEFAULT_MARGIN};
use qcrys_core::rep::{op_generator, op_hat, Flavor, LinOp};
use qcrys_core::scalar::{check_serre_identity, check_serre_identity_classical, QValue};
use qcrys_core::verify::{run_suite, Family, ModelEntry, SuiteConfig, DEFAULT_CONFIG};

#[derive(Parser)]
#[command(
    name = "qcrys",
    version,
    about = "Exact crystal-basis generators and relation checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the alternating q-bracket sum identity for given a, z.
    Identity(IdentityArgs),
    /// Export a crystal graph.
    Crystal(CrystalArgs),
    /// Export generator matrices of one node.
    Rep(RepArgs),
    /// Run relation checks on crystal models.
    Verify(VerifyArgs),
    /// Check an so_q(3) boson realization.
    Boson(BosonArgs),
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    z: i64,
    /// Decide at q = 1 only.
    #[arg(long)]
    classical: bool,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long = "type", value_parser = parse_algebra)]
    algebra: AlgebraType,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    lambda: u32,
    /// Type C only; defaults to lambda + 10.
    #[arg(long)]
    cap: Option<u32>,
}

impl SpecArgs {
    fn spec(&self) -> CrystalSpec {
        match self.algebra {
            AlgebraType::A => CrystalSpec::sl(self.n, self.lambda),
            AlgebraType::C => {
                CrystalSpec::sp(self.n, self.lambda, self.cap.unwrap_or(self.lambda + 10))
            }
        }
    }
}

#[derive(Args)]
struct CrystalArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
    format: GraphFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct RepArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, default_value_t = 1)]
    node: usize,
    #[arg(long, value_enum, default_value_t = Which::Classical)]
    which: Which,
    #[arg(long, default_value = "1", value_parser = parse_q)]
    q: QValue,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
    format: MatrixFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Hat,
    Classical,
    Deformed,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML suite configuration; `--print-default` shows the format.
    #[arg(long, conflicts_with_all = ["algebra", "print_default"])]
    config: Option<PathBuf>,
    /// Print the built-in configuration and exit.
    #[arg(long)]
    print_default: bool,
    #[arg(long = "type", value_parser = parse_algebra, requires_all = ["n", "lambda"])]
    algebra: Option<AlgebraType>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    lambda: Option<u32>,
    #[arg(long)]
    cap: Option<u32>,
    /// Comma-separated rationals.
    #[arg(long, default_value = "1,2,1/2,3/5")]
    q: String,
    #[arg(long)]
    margin: Option<u32>,
    /// Comma-separated families: cartan, ladder, serre, map, casimir.
    #[arg(long, default_value = "cartan,ladder,serre,map")]
    relations: String,
    /// Curtright-Zachos route and Casimir checks on sl(2).
    #[arg(long)]
    cz: bool,
    /// Skip the classical forms.
    #[arg(long)]
    no_classical: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BosonArgs {
    #[arg(long, value_parser = parse_realization)]
    realization: Realization,
    #[arg(long, value_parser = parse_q)]
    q: QValue,
    #[arg(long, default_value_t = qcrys_core::boson::DEFAULT_CUTOFF)]
    cutoff: u32,
    #[command(flatten)]
    output: Output,
}

fn parse_algebra(s: &str) -> std::result::Result<AlgebraType, String> {
    s.parse().map_err(|e: qcrys_core::Error| e.to_string())
}

fn parse_q(s: &str) -> std::result::Result<QValue, String> {
    s.parse().map_err(|e: qcrys_core::Error| e.to_string())
}

fn parse_realization(s: &str) -> std::result::Result<Realization, String> {
    s.parse().map_err(|e: qcrys_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qcrys: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Identity(args) => cmd_identity(args),
        Command::Crystal(args) => cmd_crystal(args),
        Command::Rep(args) => cmd_rep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Boson(args) => cmd_boson(args),
    }
}

/// Writes to a temporary file next to `path` and renames it into place.
fn emit(output: &Output, contents: &str) -> Result<()> {
    match &output.out {
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
        Some(path) => write_atomic(path, contents),
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn cmd_identity(args: IdentityArgs) -> Result<u8> {
    let holds = if args.classical {
        check_serre_identity_classical(args.a, args.z)?
    } else {
        check_serre_identity(args.a, args.z)?
    };
    let regime = if args.classical { "q=1" } else { "all q" };
    let verdict = if holds { "PASS" } else { "FAIL" };
    let text = match args.format {
        TextFormat::Text => format!("identity a={} z={} ({regime}): {verdict}\n", args.a, args.z),
        TextFormat::Json => {
            pretty(&json!({ "a": args.a, "z": args.z, "regime": regime, "holds": holds }))
        }
    };
    emit(&args.output, &text)?;
    Ok(if holds { 0 } else { 1 })
}

fn cmd_crystal(args: CrystalArgs) -> Result<u8> {
    let model = CrystalModel::build(args.spec.spec())?;
    let text = match args.format {
        GraphFormat::Dot => model.to_dot(),
        GraphFormat::Json => pretty(&model.to_json()),
    };
    emit(&args.output, &text)?;
    Ok(0)
}

fn cmd_rep(args: RepArgs) -> Result<u8> {
    let model = CrystalModel::build(args.spec.spec())?;
    let build = |sign: Sign| -> Result<LinOp> {
        Ok(match args.which {
            Which::Hat => op_hat(&model, args.node, sign)?,
            Which::Classical => op_generator(&model, args.node, sign, &Flavor::Classical)?,
            Which::Deformed => {
                op_generator(&model, args.node, sign, &Flavor::Deformed(args.q.clone()))?
            }
        })
    };
    let raise = build(Sign::Raise)?;
    let lower = build(Sign::Lower)?;
    let label = |i: usize| model.state(i).to_string();
    let text = match args.format {
        MatrixFormat::Json => pretty(&json!({
            "spec": model.spec(),
            "node": args.node,
            "states": model.states(),
            "raise": raise.to_json(|i| json!(model.state(i))),
            "lower": lower.to_json(|i| json!(model.state(i))),
        })),
        MatrixFormat::Csv => {
            let mut out = String::from("sign,from,to,coeff\n");
            for (sign, op) in [("+", &raise), ("-", &lower)] {
                for row in op.to_csv(label).lines().skip(1) {
                    out.push_str(&format!("{sign},{row}\n"));
                }
            }
            out
        }
    };
    emit(&args.output, &text)?;
    Ok(0)
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn verify_config(args: &VerifyArgs) -> Result<SuiteConfig> {
    if let Some(path) = &args.config {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(SuiteConfig::parse(&text)?);
    }
    let Some(algebra) = args.algebra else {
        if args.cz {
            bail!("--cz needs --type A --n 2 --lambda L");
        }
        let mut config = SuiteConfig::default_suite();
        if let Some(m) = args.margin {
            config.margin = m;
        }
        return Ok(config);
    };
    let q = split_list(&args.q)
        .map(str::parse)
        .collect::<qcrys_core::Result<Vec<QValue>>>()?;
    let relations = if args.cz {
        if algebra != AlgebraType::A || args.n != Some(2) {
            bail!("--cz applies to sl(2): --type A --n 2");
        }
        vec![Family::Map, Family::Casimir]
    } else {
        split_list(&args.relations)
            .map(str::parse)
            .collect::<qcrys_core::Result<Vec<Family>>>()?
    };
    let entry = ModelEntry {
        algebra,
        n: vec![args.n.expect("required by clap")],
        lambda: vec![args.lambda.expect("required by clap")],
        cap: args.cap,
        q,
        relations,
        classical: !args.no_classical,
        margin: None,
    };
    for spec in entry.specs() {
        spec.validate()?;
    }
    Ok(SuiteConfig {
        margin: args.margin.unwrap_or(DEFAULT_MARGIN),
        word_paths: true,
        threads: None,
        models: vec![entry],
    })
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("QCRYS_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("QCRYS_THREADS={v:?} is not a count"))?;
            Ok(Some(n))
        }
        _ => Ok(None),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<u8> {
    if args.print_default {
        emit(&args.output, DEFAULT_CONFIG)?;
        return Ok(0);
    }
    let mut config = verify_config(&args)?;
    if let Some(t) = threads_from_env()? {
        config.threads = Some(t);
    }
    let outcome = run_suite(&config)?;
    emit(&args.output, &outcome.to_json_string())?;
    let s = outcome.summary;
    eprintln!(
        "{} reports: {} pass, {} fail, {} boundary",
        outcome.reports.len(),
        s.pass,
        s.fail,
        s.boundary
    );
    Ok(outcome.status as u8)
}

fn cmd_boson(args: BosonArgs) -> Result<u8> {
    let space = FockSpace::new(args.cutoff);
    let gens = build_so3(args.realization, &space, &args.q);
    let report = check_so3(&gens, &space);
    let blocks = block_results(&report);
    let top_spin = check_so3_top_spin(&gens, &space);
    let mut value = report.to_json();
    value["realization"] = json!(args.realization);
    value["cutoff"] = json!(args.cutoff);
    value["blocks"] = json!(blocks);
    value["top_spin"] = json!(top_spin);
    emit(&args.output, &pretty(&value))?;
    let s = report.summary;
    eprintln!(
        "so3 {} q={}: {} pass, {} fail, {} boundary",
        args.realization, args.q, s.pass, s.fail, s.boundary
    );
    Ok(u8::from(report.has_failures()))
}
