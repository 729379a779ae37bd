//! Command-line front end: argument parsing, dispatch and rendering.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euler::{report_gram, GramMatrix};
use crate::group::{parse_spec, ActionSpec, SpecDocument};
use crate::inertia::{components, InertiaComponent};
use crate::mutlat::{apply_script, BlockMove, ExceptionalSequence, MoveRecord};
use crate::presets::Preset;
use crate::sod::{assemble, msodc_plan, MutationPlan, SodReport};
use crate::verify::{self, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "msod", version, about = "Decompositions of diagonal μ₂^k quotient stacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the inertia components with coarse spaces and ranks.
    Analyze(InputArgs),
    /// Ordered decomposition, rank ledger and element grouping plan.
    Sod(InputArgs),
    /// Gram matrix of canonical generators (projective spaces only).
    Gram(InputArgs),
    /// Apply a block-move script to a sequence.
    Mutate(MutateArgs),
    /// Run cross-checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct PresetArgs {
    /// Built-in action: etale, p2-example, pn-full, quadric.
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long = "q-dim")]
    pub q_dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Action-spec JSON file.
    pub spec: Option<PathBuf>,
    #[command(flatten)]
    pub preset: PresetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    /// Sequence JSON file (form, vectors, blocks).
    pub sequence: Option<PathBuf>,
    /// JSON list of moves `{block, direction}`.
    #[arg(long, value_name = "PATH")]
    pub script: PathBuf,
    #[command(flatten)]
    pub preset: PresetArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Action-spec JSON file.
    pub spec: Option<PathBuf>,
    #[command(flatten)]
    pub preset: PresetArgs,
    /// Run one named family of checks.
    #[arg(long, value_name = "NAME", conflicts_with_all = ["spec", "preset"])]
    pub check: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Structured output of `analyze`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    pub spec: SpecDocument,
    pub components: Vec<InertiaComponent>,
}

/// Structured output of `sod`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodOutput {
    pub report: SodReport,
    pub plan: MutationPlan,
    pub grouped: Vec<String>,
}

/// Structured output of `gram`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramOutput {
    pub spec: SpecDocument,
    pub gram: GramMatrix,
    pub unipotent_upper: bool,
    pub diagonal_blocks_binomial: bool,
}

/// Structured output of `mutate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutateOutput {
    pub sequence: ExceptionalSequence,
    pub moves: Vec<MoveRecord>,
    pub semiorthogonal: bool,
    #[serde(with = "crate::mutlat::wide::scalar")]
    pub determinant: BigInt,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let (result, out_path) = match &cli.command {
        Command::Analyze(a) => (analyze(a), &a.output.out),
        Command::Sod(a) => (sod(a), &a.output.out),
        Command::Gram(a) => (gram(a), &a.output.out),
        Command::Mutate(a) => (mutate(a), &a.output.out),
        Command::Verify(a) => (run_verify(a), &a.output.out),
    };
    let (code, text) = match result {
        Ok(v) => v,
        Err(e) => {
            return Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    match out_path {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(source) => Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: format!("error: {}\n", CliError::Write { path: path.clone(), source }),
            },
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn preset_of(args: &PresetArgs) -> Result<Option<Preset>, CliError> {
    match &args.preset {
        Some(name) => Preset::parse(name, args.n, args.k, args.q_dim)
            .map(Some)
            .map_err(|e| CliError::Input(e.to_string())),
        None => {
            if args.n.is_some() || args.k.is_some() || args.q_dim.is_some() {
                return Err(CliError::Usage("--n, --k and --q-dim need --preset".into()));
            }
            Ok(None)
        }
    }
}

fn load_spec(path: Option<&Path>, preset: &PresetArgs) -> Result<ActionSpec, CliError> {
    match (path, preset_of(preset)?) {
        (Some(_), Some(_)) => Err(CliError::Usage("give either a spec file or --preset, not both".into())),
        (None, None) => Err(CliError::Usage("give a spec file or --preset".into())),
        (Some(p), None) => parse_spec(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        (None, Some(pre)) => pre.spec().map_err(|e| CliError::Input(e.to_string())),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn analyze(a: &InputArgs) -> Result<(i32, String), CliError> {
    let spec = load_spec(a.spec.as_deref(), &a.preset)?;
    let comps = components(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    if a.output.json {
        return Ok((EXIT_OK, to_json(&AnalyzeOutput { spec: spec.to_document(), components: comps })));
    }
    let mut t = String::new();
    writeln!(t, "{} with k = {}, |G| = {}", spec.space(), spec.rank(), spec.order()).unwrap();
    if !spec.is_effective() {
        writeln!(t, "warning: {} group elements act trivially", spec.kernel().len()).unwrap();
    }
    writeln!(t, "{:<24} {:>4} {:>5}  {:<16} smooth", "component", "dim", "rank", "coarse type").unwrap();
    for c in &comps {
        writeln!(
            t,
            "{:<24} {:>4} {:>5}  {:<16} {:?}",
            c.label(&spec),
            c.coarse_dim,
            c.rank,
            format!("{:?}", c.coarse_type),
            c.smooth_status
        )
        .unwrap();
    }
    writeln!(t, "total rank {}", comps.iter().map(|c| c.rank).sum::<i64>()).unwrap();
    Ok((EXIT_OK, t))
}

fn sod(a: &InputArgs) -> Result<(i32, String), CliError> {
    let spec = load_spec(a.spec.as_deref(), &a.preset)?;
    let report = assemble(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    // orthogonality flags need generators, which exist for projective spaces
    let sequence = report_gram(&spec, &report).ok().and_then(|g| g.to_sequence().ok());
    let plan = msodc_plan(&report, sequence.as_ref()).map_err(|e| CliError::Input(e.to_string()))?;
    let grouped: Vec<String> = plan.target.iter().map(|&p| report.order[p].label.clone()).collect();
    if a.output.json {
        return Ok((EXIT_OK, to_json(&SodOutput { report, plan, grouped })));
    }
    let mut t = String::new();
    writeln!(t, "{:>3}  {:<24} {:>4} {:>5}", "#", "piece", "dim", "rank").unwrap();
    for (i, p) in report.order.iter().enumerate() {
        writeln!(t, "{:>3}  {:<24} {:>4} {:>5}", i, p.label, p.dim, p.rank).unwrap();
    }
    writeln!(t, "{} pieces, total rank {}", report.order.len(), report.total_rank).unwrap();
    for w in &report.flags.warnings {
        writeln!(t, "warning: {w}").unwrap();
    }
    if plan.moves.is_empty() {
        writeln!(t, "already grouped by element").unwrap();
    } else {
        let moves: Vec<String> = plan
            .moves
            .iter()
            .map(|m| {
                let tag = match m.orthogonal {
                    Some(true) => " (orthogonal)",
                    Some(false) => " (mutation)",
                    None => "",
                };
                format!("block {} {:?}{tag}", m.block, m.direction).to_lowercase()
            })
            .collect();
        writeln!(t, "plan: {}", moves.join(", ")).unwrap();
    }
    writeln!(t, "grouped: <{}>", grouped.join(", ")).unwrap();
    Ok((EXIT_OK, t))
}

fn gram(a: &InputArgs) -> Result<(i32, String), CliError> {
    let spec = load_spec(a.spec.as_deref(), &a.preset)?;
    let report = assemble(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    let g = report_gram(&spec, &report).map_err(|e| CliError::Input(e.to_string()))?;
    let out = GramOutput {
        spec: spec.to_document(),
        unipotent_upper: g.is_unipotent_upper(),
        diagonal_blocks_binomial: g.diagonal_blocks_binomial(),
        gram: g,
    };
    if a.output.json {
        return Ok((EXIT_OK, to_json(&out)));
    }
    let mut t = String::new();
    for b in &out.gram.blocks {
        writeln!(t, "block {:<24} rows {}..{}", b.label, b.start, b.start + b.len).unwrap();
    }
    let width = out.gram.matrix.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    for row in &out.gram.matrix {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        writeln!(t, "{}", cells.join(" ")).unwrap();
    }
    writeln!(
        t,
        "unipotent upper triangular: {}, binomial diagonal blocks: {}",
        out.unipotent_upper, out.diagonal_blocks_binomial
    )
    .unwrap();
    Ok((EXIT_OK, t))
}

fn mutate(a: &MutateArgs) -> Result<(i32, String), CliError> {
    let seq: ExceptionalSequence = match (&a.sequence, preset_of(&a.preset)?) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either a sequence file or --preset, not both".into())),
        (None, None) => return Err(CliError::Usage("give a sequence file or --preset".into())),
        (Some(p), None) => serde_json::from_str(&read(p)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        (None, Some(pre)) => {
            let spec = pre.spec().map_err(|e| CliError::Input(e.to_string()))?;
            let report = assemble(&spec).map_err(|e| CliError::Input(e.to_string()))?;
            report_gram(&spec, &report)
                .and_then(|g| g.to_sequence())
                .map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    let script: Vec<BlockMove> = serde_json::from_str(&read(&a.script)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", a.script.display())))?;
    let (state, moves) = apply_script(&seq, &script).map_err(|e| CliError::Input(e.to_string()))?;
    let out = MutateOutput {
        semiorthogonal: state.is_semiorthogonal(),
        determinant: state.determinant(),
        sequence: state,
        moves,
    };
    if a.output.json {
        return Ok((EXIT_OK, to_json(&out)));
    }
    let mut t = String::new();
    for m in &out.moves {
        writeln!(
            t,
            "block {} {:?}: {}",
            m.step.block,
            m.step.direction,
            if m.orthogonal { "orthogonal, transposition" } else { "mutation" }
        )
        .unwrap();
    }
    let labels = out.sequence.block_labels().map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(t, "blocks: <{}>", labels.join(", ")).unwrap();
    writeln!(t, "semiorthogonal: {}, determinant: {}", out.semiorthogonal, out.determinant).unwrap();
    Ok((EXIT_OK, t))
}

fn run_verify(a: &VerifyArgs) -> Result<(i32, String), CliError> {
    let checks = if let Some(name) = &a.check {
        verify::run_named(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown check {name:?} (expected one of {})",
                verify::CHECK_NAMES.join(", ")
            ))
        })?
    } else {
        match (&a.spec, preset_of(&a.preset)?) {
            (Some(_), Some(_)) => return Err(CliError::Usage("give either a spec file or --preset, not both".into())),
            (None, None) => verify::default_suite(),
            (Some(p), None) => {
                let spec = parse_spec(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                verify::checks_for_spec(&spec)
            }
            (None, Some(pre)) => verify::checks_for_preset(pre),
        }
    };
    let report = VerifyReport::new(checks);
    let code = if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
    if a.output.json {
        return Ok((code, to_json(&report)));
    }
    let mut t = String::new();
    for c in &report.checks {
        writeln!(t, "{c}").unwrap();
    }
    let failed = report.checks.iter().filter(|c| c.failed()).count();
    writeln!(t, "{} checks, {} failed", report.checks.len(), failed).unwrap();
    Ok((code, t))
}
