//! `mmagic`: generate, verify, search, sweep and render labeled paths.
//!
//! Exit codes: 0 success, 1 usage error or inadmissible input, 2 a labeling
//! was produced or read but fails its checks.

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use mmagic_core::io::{
    describe_report, labeling_from_json, render_dot, render_table, run_generate, stream_oracle,
    sweep, write_sweep_csv, GenerateOutcome,
};
use mmagic_core::oracle::{SearchLimits, SearchParams};
use mmagic_core::verification::verify_m_magic;
use mmagic_core::{ConstructionKind, Family, SpectrumMode};

#[derive(Debug, Parser)]
#[command(
    name = "mmagic",
    version,
    about = "m-magic labelings of anti-fuzzy paths"
)]
struct Cli {
    /// JSON object whose keys supply flags not given on the command line.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    AntiFuzzy,
    Bipolar,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::AntiFuzzy => Family::AntiFuzzy,
            FamilyArg::Bipolar => Family::Bipolar,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a labeling from its closed form and check it.
    Generate {
        #[arg(long, value_parser = parse_kind)]
        family: ConstructionKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        scale_exp: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value = "strict", value_parser = parse_mode)]
        mode: SpectrumMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a labeling file for m distinct edge-sum constants.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "strict", value_parser = parse_mode)]
        mode: SpectrumMode,
    },
    /// Exhaustive search on a small grid; one JSON witness per line.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        grid: i64,
        #[arg(long, default_value = "strict", value_parser = parse_mode)]
        mode: SpectrumMode,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long, value_enum, default_value = "anti-fuzzy")]
        family: FamilyArg,
        #[arg(long, default_value_t = 2)]
        scale_exp: u32,
        /// Lift the default n <= 7, grid <= 40 bounds.
        #[arg(long = "override")]
        allow_large: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the block construction over ranges of m and a; CSV output.
    Sweep {
        #[arg(long, value_parser = parse_kind)]
        family: ConstructionKind,
        #[arg(long, value_parser = parse_range)]
        m_range: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        a_range: RangeInclusive<usize>,
        #[arg(long, default_value = "strict", value_parser = parse_mode)]
        mode: SpectrumMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DOT drawing of a labeling file.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> Result<ConstructionKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_mode(s: &str) -> Result<SpectrumMode, String> {
    s.parse()
}

/// `A..B` and `A..=B` are both inclusive of `B`.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in {s:?}"))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in {s:?}"))?;
    Ok(a..=b)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = arg.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Appends `--key value` for every config entry whose flag is absent.
fn apply_config(mut args: Vec<String>) -> Result<Vec<String>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing config {path}"))?;
    let Value::Object(map) = value else {
        bail!("config {path} must be a JSON object");
    };
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        let given = args
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        match value {
            Value::Bool(true) => args.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => args.extend([flag, n.to_string()]),
            Value::String(s) => args.extend([flag, s]),
            other => bail!("config key {key:?} has unsupported value {other}"),
        }
    }
    Ok(args)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_labeling(path: &Path) -> Result<mmagic_core::Labeling> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    labeling_from_json(&text).with_context(|| format!("loading {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate {
            family,
            n,
            m,
            scale_exp,
            format,
            mode,
            out,
        } => {
            let construction = family.with_m(m)?;
            let doc = match run_generate(construction, n, scale_exp, mode)? {
                GenerateOutcome::Inadmissible(report) => {
                    eprintln!("inadmissible: {}", report.reason);
                    return Ok(1);
                }
                GenerateOutcome::Generated(doc) => doc,
            };
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&doc)? + "\n",
                Format::Table => render_table(&doc)?,
                Format::Dot => render_dot(&doc.labeling.clone().into_labeling()?),
            };
            emit(out.as_deref(), &text)?;
            if doc.passed {
                Ok(0)
            } else {
                for line in describe_report(&doc.verification)
                    .into_iter()
                    .chain(describe_report(&doc.conformance))
                {
                    eprintln!("violation: {line}");
                }
                Ok(2)
            }
        }
        Command::Verify { input, m, mode } => {
            let labeling = read_labeling(&input)?;
            let report = verify_m_magic(&labeling, m, mode);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.passed { 0 } else { 2 })
        }
        Command::Oracle {
            n,
            m,
            grid,
            mode,
            limit,
            family,
            scale_exp,
            allow_large,
            out,
        } => {
            let params = SearchParams::new(n, m, grid, scale_exp, mode)
                .limit(limit)
                .family(family.into());
            let limits = SearchLimits::from_env()?.with_override(allow_large);
            let mut buf = Vec::new();
            stream_oracle(&params, &limits, &mut buf)?;
            emit(out.as_deref(), std::str::from_utf8(&buf)?)?;
            Ok(0)
        }
        Command::Sweep {
            family,
            m_range,
            a_range,
            mode,
            out,
        } => {
            let rows = sweep(family, m_range, a_range, mode)?;
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf)?;
            emit(out.as_deref(), std::str::from_utf8(&buf)?)?;
            Ok(if rows.iter().all(|r| r.passed) { 0 } else { 2 })
        }
        Command::Render { input, out } => {
            let labeling = read_labeling(&input)?;
            emit(out.as_deref(), &render_dot(&labeling))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let args = match apply_config(std::env::args().collect()) {
        Ok(args) => args,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
