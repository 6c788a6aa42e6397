//! `ispab`: membership tests, decomposition runs, verification campaigns,
//! bound sheets and generators, all reporting JSON.
//!
//! Exit codes: 0 success (or member), 1 negative finding, 2 error.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ispab::campaign::{self, CampaignConfig, Status, Suite};
use ispab::formats::Format;
use ispab::generators::{self, PatternPab};
use ispab::structure::{
    compute_bounds, decompose_driver, BoundsConfig, DFunction, DriverConfig, DriverError, Rational,
    TauMode,
};
use ispab::subdivision::{membership_witness, SubdivisionWitness};
use ispab::{Graph, Limits};

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(
    name = "ispab",
    version,
    about = "Induced P(a,b) subdivisions: detection, decomposition and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test membership: exit 0 if the graph has no induced subdivision of P(a,a), 1 with a witness otherwise.
    Detect(DetectArgs),
    /// Run the decomposition pipeline on a class member.
    Decompose(DecomposeArgs),
    /// Run a seeded verification campaign, or replay one instance of it.
    Verify(VerifyArgs),
    /// Evaluate the bound formulas.
    Bounds(BoundsArgs),
    /// Write a generated graph.
    Gen(GenArgs),
}

#[derive(Args)]
struct Common {
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Raise or lower a search guard, e.g. `max_pattern_host=60`. Repeatable.
    #[arg(long = "guard-override", value_name = "NAME=N")]
    guard_overrides: Vec<String>,
}

impl Common {
    fn limits(&self) -> Result<Limits> {
        let mut limits = Limits::default();
        for spec in &self.guard_overrides {
            limits.apply_override(spec).map_err(|e| anyhow!(e))?;
        }
        Ok(limits)
    }
}

#[derive(Args)]
struct InputArgs {
    /// Graph file; `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted (.g6, .col/.dimacs, otherwise edge list).
    #[arg(long)]
    format: Option<Format>,
    /// Pattern parameter: the excluded pattern is P(a,a).
    #[arg(long, default_value_t = 2)]
    a: usize,
}

impl InputArgs {
    fn read(&self) -> Result<Graph> {
        let text = if self.input == Path::new("-") {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            s
        } else {
            fs::read_to_string(&self.input)
                .with_context(|| format!("reading {}", self.input.display()))?
        };
        let format = self
            .format
            .unwrap_or_else(|| Format::from_path(&self.input));
        format
            .parse(&text)
            .with_context(|| format!("parsing {} as {format}", self.input.display()))
    }
}

#[derive(Args)]
struct BoundsFlags {
    /// Exponent constant c in R(p, q) = (p + q)^(1/c), as `n` or `n/d`.
    #[arg(long = "c-const", default_value = "1")]
    c_const: Rational,
    /// Use a constant degree function d = N instead of the polynomial default.
    #[arg(long = "d-constant", value_name = "N")]
    d_constant: Option<u64>,
}

impl BoundsFlags {
    fn config(&self) -> BoundsConfig {
        BoundsConfig {
            c_const: self.c_const,
            d_function: match self.d_constant {
                Some(value) => DFunction::Constant { value },
                None => DFunction::default(),
            },
        }
    }
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    bounds: BoundsFlags,
    /// `oracle` (largest χ of a neighbourhood) or `fixed:N`.
    #[arg(long = "tau-mode", default_value = "oracle")]
    tau_mode: TauMode,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign configuration (JSON); flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// detector, trichotomy, violations, growth, dominating, cutset, probes or chi.
    #[arg(long)]
    suite: Option<Suite>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    instances: Option<u64>,
    #[arg(long)]
    min_vertices: Option<usize>,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    min_probability: Option<f64>,
    #[arg(long)]
    max_probability: Option<f64>,
    #[arg(long)]
    a: Option<usize>,
    /// Rebuild and report only this instance index.
    #[arg(long)]
    replay: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    omega: usize,
    #[arg(long)]
    tau: usize,
    #[command(flatten)]
    bounds: BoundsFlags,
    #[arg(long)]
    json_out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// pattern A B | multipartite S1,S2,... | complete N | path N | cycle N | petersen | random N P
    name: String,
    params: Vec<String>,
    /// Output format; inferred from --output when omitted, graph6 on standard output.
    #[arg(long)]
    format: Option<Format>,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    result: &'a T,
}

fn emit<T: Serialize>(command: &'static str, result: &T, json_out: Option<&Path>) -> Result<()> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        result,
    };
    let mut text = serde_json::to_string_pretty(&envelope)?;
    text.push('\n');
    match json_out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct Membership {
    a: usize,
    vertex_count: usize,
    edge_count: usize,
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<SubdivisionWitness>,
}

impl Membership {
    fn new(g: &Graph, a: usize, witness: Option<SubdivisionWitness>) -> Self {
        Membership {
            a,
            vertex_count: g.n(),
            edge_count: g.edge_count(),
            member: witness.is_none(),
            witness,
        }
    }
}

fn detect(args: &DetectArgs) -> Result<ExitCode> {
    let g = args.input.read()?;
    let limits = args.common.limits()?;
    let witness = membership_witness(&g, args.input.a, &limits)?;
    let report = Membership::new(&g, args.input.a, witness);
    emit("detect", &report, args.common.json_out.as_deref())?;
    Ok(if report.member {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn decompose(args: &DecomposeArgs) -> Result<ExitCode> {
    let g = args.input.read()?;
    let limits = args.common.limits()?;
    let config = DriverConfig {
        tau_mode: args.tau_mode,
        bounds: args.bounds.config(),
    };
    match decompose_driver(&g, args.input.a, config, &limits) {
        Ok(report) => {
            emit("decompose", &report, args.common.json_out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Err(DriverError::NotMember { witness }) => {
            let report = Membership::new(&g, args.input.a, Some(*witness));
            emit("decompose", &report, args.common.json_out.as_deref())?;
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let mut config = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => CampaignConfig::for_suite(args.suite.unwrap_or(Suite::Trichotomy)),
    };
    if let Some(suite) = args.suite {
        if args.config.is_some() {
            config.suite = suite;
        }
    }
    macro_rules! set {
        ($($field:ident),*) => { $( if let Some(v) = args.$field { config.$field = v; } )* };
    }
    set!(
        seed,
        instances,
        min_vertices,
        max_vertices,
        min_probability,
        max_probability,
        a
    );
    for spec in &args.common.guard_overrides {
        config.limits.apply_override(spec).map_err(|e| anyhow!(e))?;
    }
    let json_out = args.common.json_out.as_deref();
    if let Some(index) = args.replay {
        let report = campaign::run_instance(&config, index)?;
        emit("verify", &report, json_out)?;
        return Ok(if report.status == Status::Fail {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        });
    }
    let summary = campaign::run_campaign(&config)?;
    emit("verify", &summary, json_out)?;
    Ok(if summary.failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn bounds(args: &BoundsArgs) -> Result<ExitCode> {
    let sheet = compute_bounds(args.a, args.omega, args.tau, args.bounds.config())?;
    emit("bounds", &sheet, args.json_out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn count(params: &[String], i: usize, what: &str) -> Result<usize> {
    let raw = params
        .get(i)
        .ok_or_else(|| anyhow!("missing parameter {what}"))?;
    raw.parse()
        .with_context(|| format!("{what} must be a count, got {raw:?}"))
}

fn generate(args: &GenArgs) -> Result<Graph> {
    let p = &args.params;
    let expect = |k: usize| -> Result<()> {
        if p.len() != k {
            bail!("`{}` takes {k} parameter(s), got {}", args.name, p.len());
        }
        Ok(())
    };
    let g = match args.name.as_str() {
        "pattern" => {
            expect(2)?;
            PatternPab::new(count(p, 0, "a")?, count(p, 1, "b")?)?.graph
        }
        "multipartite" => {
            expect(1)?;
            let sizes = p[0]
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .with_context(|| format!("bad part size {s:?}"))
                })
                .collect::<Result<Vec<_>>>()?;
            generators::complete_multipartite(&sizes)?
        }
        "complete" => {
            expect(1)?;
            generators::complete(count(p, 0, "n")?)
        }
        "path" => {
            expect(1)?;
            generators::path(count(p, 0, "n")?)
        }
        "cycle" => {
            expect(1)?;
            generators::cycle(count(p, 0, "n")?)
        }
        "petersen" => {
            expect(0)?;
            generators::petersen()
        }
        "random" => {
            expect(2)?;
            let prob: f64 = p[1]
                .parse()
                .with_context(|| format!("bad probability {:?}", p[1]))?;
            generators::random(count(p, 0, "n")?, prob, args.seed)?
        }
        other => bail!("unknown generator `{other}`"),
    };
    Ok(g)
}

fn gen(args: &GenArgs) -> Result<ExitCode> {
    let g = generate(args)?;
    let format = args
        .format
        .or_else(|| args.output.as_deref().map(Format::from_path))
        .unwrap_or(Format::Graph6);
    let text = format.emit(&g);
    match &args.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Detect(args) => detect(args),
        Command::Decompose(args) => decompose(args),
        Command::Verify(args) => verify(args),
        Command::Bounds(args) => bounds(args),
        Command::Gen(args) => gen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
