//! Command-line front end: the `.mm` model-file format, report building and
//! the `sullivan` command runner.

pub mod dsl;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use dsl::{parse_model, print_model, ModelFile, ParseError};
pub use report::{fixture_report, render_text, run_command, Options};

#[derive(Parser, Debug)]
#[command(name = "sullivan", version, about = "Derivation homology, Gottlieb groups and weights of Sullivan minimal models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check degrees, minimality and d² = 0
    Validate(FileArgs),
    /// Homology of the derivation complex
    Homology(FileArgs),
    /// Ranks of the rational homotopy groups of B aut₁(X)
    Baut(FileArgs),
    /// Gottlieb group ranks via restriction to generators
    Gottlieb(FileArgs),
    /// Positive weight decomposition search
    Weights(FileArgs),
    /// Derivation criterion for the file's KS-extension
    KsCheck(FileArgs),
    /// Derivation basis by degree, with the differential of each element
    DerTable(FileArgs),
}

#[derive(clap::Args, Debug)]
struct FileArgs {
    /// Model file (`.mm`)
    file: PathBuf,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Include homology representatives
    #[arg(long)]
    reps: bool,
    /// Restrict the report to degrees A..B (inclusive)
    #[arg(long, value_name = "A..B", value_parser = degree_range)]
    degrees: Option<(u32, u32)>,
}

fn degree_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, found `{s}`"))?;
    let a: u32 = a.parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

/// Runs one invocation and returns the exit code: 0 on success, 1 when a
/// check fails (invalid model, INFEASIBLE, ks-check FAIL), 2 on parse and
/// usage errors.
pub fn run<I, T>(args: I, color: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let (name, args) = match &cli.command {
        Command::Validate(a) => ("validate", a),
        Command::Homology(a) => ("homology", a),
        Command::Baut(a) => ("baut", a),
        Command::Gottlieb(a) => ("gottlieb", a),
        Command::Weights(a) => ("weights", a),
        Command::KsCheck(a) => ("ks-check", a),
        Command::DerTable(a) => ("der-table", a),
    };
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", args.file.display());
            return 2;
        }
    };
    let file = match parse_model(&text) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", args.file.display());
            return 2;
        }
    };
    let opts = Options {
        reps: args.reps,
        degrees: args.degrees,
    };
    match run_command(name, &file, opts) {
        Ok(outcome) => {
            let body = if args.json {
                format!("{}\n", serde_json::to_string_pretty(&outcome.report).expect("serializable"))
            } else {
                render_text(&outcome.report, color)
            };
            let _ = out.write_all(body.as_bytes());
            outcome.exit
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.exit
        }
    }
}
