//! `symbolize`: real-valued CSV column → ordinal symbol CSV.

use crate::manifest::RunManifest;
use crate::{output, table_io, CmdResult, Failure};
use clap::Args;
use std::fmt::Write as _;
use std::path::PathBuf;
use transcripta::{symbolize, RealSeries, TieRule};

#[derive(Args)]
pub struct SymbolizeArgs {
    /// Input CSV with the real-valued series.
    #[arg(long)]
    pub input: PathBuf,
    /// Ordinal pattern length (at least 2).
    #[arg(long)]
    pub length: usize,
    /// Lattice delay between the samples of one pattern.
    #[arg(long, default_value_t = 1)]
    pub delay: usize,
    /// Tie handling: "index-order", "jitter", or "jitter:<seed>".
    #[arg(long, default_value = "index-order")]
    pub tie_rule: String,
    /// Column to read: header name or 0-based index (default: first).
    #[arg(long)]
    pub column: Option<String>,
    /// Output CSV path.
    #[arg(long, default_value = "symbols.csv")]
    pub output: PathBuf,
}

fn parse_tie_rule(raw: &str) -> Result<TieRule, Failure> {
    match raw {
        "index-order" => Ok(TieRule::IndexOrder),
        "jitter" => Ok(TieRule::Jitter { seed: 0 }),
        other => match other.strip_prefix("jitter:").map(str::parse) {
            Some(Ok(seed)) => Ok(TieRule::Jitter { seed }),
            _ => Err(Failure::usage(format!(
                "--tie-rule must be \"index-order\", \"jitter\", or \"jitter:<seed>\", got {raw:?}"
            ))),
        },
    }
}

pub fn run(args: SymbolizeArgs) -> CmdResult {
    if args.length < 2 {
        return Err(Failure::usage(format!(
            "--length must be at least 2, got {}",
            args.length
        )));
    }
    if args.delay < 1 {
        return Err(Failure::usage("--delay must be at least 1"));
    }
    let tie = parse_tie_rule(&args.tie_rule)?;

    let values = table_io::read_numeric_column(&args.input, args.column.as_deref())?;
    let label = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".to_string());
    let series = RealSeries::new(label, values).map_err(Failure::from_library)?;
    let symbols = symbolize(&series, args.length, args.delay, tie).map_err(Failure::from_library)?;

    let mut csv = String::from("t,symbol,pattern\n");
    for (t, (&symbol, pattern)) in symbols
        .symbols()
        .iter()
        .zip(symbols.symbol_labels())
        .enumerate()
    {
        writeln!(csv, "{t},{symbol},{pattern}").expect("string write");
    }
    output::write_file(&args.output, &csv)?;

    let mut manifest = RunManifest::new("symbolize");
    manifest
        .param("input", args.input.display())
        .param("length", args.length)
        .param("delay", args.delay)
        .param("tie_rule", &args.tie_rule)
        .param("output", args.output.display());
    if let Some(column) = &args.column {
        manifest.param("column", column);
    }
    manifest.input(&args.input)?;
    manifest.write_beside(&args.output)?;

    println!("wrote {} symbols to {}", symbols.len(), args.output.display());
    Ok(())
}
