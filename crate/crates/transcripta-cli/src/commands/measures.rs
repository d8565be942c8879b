//! `measures`: JSON records of entropic, coupling, and metric measures over
//! two symbol streams.
//!
//! Transcript-distribution records (`entropy`, `js`, `sc`, `orderclasses`)
//! describe the distribution of pointwise transcripts from the first stream
//! to the second at lag `--lambda`; `--lambda-pad` switches the lagged
//! transcription from overlap trimming to identity padding. `te`, `tmi`,
//! and `ccc` are the directed/consecutive coupling measures; `similarity`
//! is the normalized mean pointwise distance; `distances` summarizes the
//! pointwise distance histogram and a sliding window-`--window` `Lp`
//! profile at exponent `--p`.

use crate::manifest::RunManifest;
use crate::output::{round12, sig12};
use crate::{output, table_io, CmdResult, Failure};
use clap::Args;
use serde_json::{json, Value};
use std::path::PathBuf;
use transcripta::{
    ccc, distance_distribution, distance_series, estimate_dist, js_distance, js_divergence,
    lump_by_order_class, normalized_entropy, shannon_entropy, sliding_lp_series,
    statistical_complexity, symbolic_transfer_entropy, transcribe, transcribe_padded,
    transcript_mutual_information, DistanceNormalization, LogBase, Metric, ProbDist,
    SymbolSeries,
};

#[derive(Args)]
pub struct MeasuresArgs {
    /// Two symbol CSVs (as written by `symbolize`).
    #[arg(long, num_args = 2, value_name = "CSV")]
    pub symbols: Vec<PathBuf>,
    /// Two real-valued CSVs to symbolize first (requires --length).
    #[arg(long, num_args = 2, value_name = "CSV", conflicts_with = "symbols")]
    pub raw: Vec<PathBuf>,
    /// Pattern length: required with --raw, fallback for symbol files
    /// lacking a pattern column.
    #[arg(long)]
    pub length: Option<usize>,
    /// Symbolization delay for --raw inputs.
    #[arg(long, default_value_t = 1)]
    pub delay: usize,
    /// Column to read from --raw inputs.
    #[arg(long)]
    pub column: Option<String>,
    /// Comma-separated measures:
    /// entropy,js,sc,orderclasses,te,tmi,ccc,similarity,distances.
    #[arg(long, value_delimiter = ',', required = true)]
    pub set: Vec<String>,
    /// Coupling delay: transcription lag, and horizon for te/tmi (>= 1).
    #[arg(long, default_value_t = 1)]
    pub lambda: i64,
    /// Pad lagged transcription with identities instead of trimming.
    #[arg(long)]
    pub lambda_pad: bool,
    /// Distance metric: kendall or cayley.
    #[arg(long, default_value = "kendall")]
    pub metric: String,
    /// Sliding window size for the distances record.
    #[arg(long, default_value_t = 1)]
    pub window: usize,
    /// Lp exponent for the distances record.
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// Logarithm base for entropic records: bits or nats.
    #[arg(long, default_value = "bits")]
    pub base: String,
    /// Output JSON path (default: stdout, without a manifest sidecar).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq)]
enum MeasureKind {
    Entropy,
    Js,
    Sc,
    OrderClasses,
    Te,
    Tmi,
    Ccc,
    Similarity,
    Distances,
}

fn parse_kind(raw: &str) -> Result<MeasureKind, Failure> {
    match raw {
        "entropy" => Ok(MeasureKind::Entropy),
        "js" => Ok(MeasureKind::Js),
        "sc" => Ok(MeasureKind::Sc),
        "orderclasses" => Ok(MeasureKind::OrderClasses),
        "te" => Ok(MeasureKind::Te),
        "tmi" => Ok(MeasureKind::Tmi),
        "ccc" => Ok(MeasureKind::Ccc),
        "similarity" => Ok(MeasureKind::Similarity),
        "distances" => Ok(MeasureKind::Distances),
        other => Err(Failure::usage(format!(
            "unknown measure {other:?}; expected entropy, js, sc, orderclasses, te, tmi, ccc, \
             similarity, or distances"
        ))),
    }
}

fn parse_base(raw: &str) -> Result<LogBase, Failure> {
    match raw {
        "bits" | "base2" => Ok(LogBase::Base2),
        "nats" | "natural" => Ok(LogBase::Natural),
        other => Err(Failure::usage(format!(
            "--base must be \"bits\" or \"nats\", got {other:?}"
        ))),
    }
}

fn load_streams(args: &MeasuresArgs) -> Result<(SymbolSeries, SymbolSeries), Failure> {
    if !args.symbols.is_empty() {
        let a = table_io::read_symbol_series(&args.symbols[0], args.length)?;
        let b = table_io::read_symbol_series(&args.symbols[1], args.length)?;
        return Ok((a, b));
    }
    if !args.raw.is_empty() {
        let length = args.length.ok_or_else(|| {
            Failure::usage("--raw inputs need --length to fix the pattern length")
        })?;
        if length < 2 {
            return Err(Failure::usage(format!(
                "--length must be at least 2, got {length}"
            )));
        }
        let mut streams = Vec::new();
        for path in &args.raw {
            let values = table_io::read_numeric_column(path, args.column.as_deref())?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "series".to_string());
            let series =
                transcripta::RealSeries::new(label, values).map_err(Failure::from_library)?;
            streams.push(
                transcripta::symbolize(&series, length, args.delay, Default::default())
                    .map_err(Failure::from_library)?,
            );
        }
        let b = streams.pop().expect("two raw inputs");
        let a = streams.pop().expect("two raw inputs");
        return Ok((a, b));
    }
    Err(Failure::usage(
        "pass two inputs with --symbols or --raw",
    ))
}

fn transcript_distribution(
    a: &SymbolSeries,
    b: &SymbolSeries,
    lambda: i64,
    padded: bool,
    base: LogBase,
) -> Result<ProbDist, Failure> {
    let tau = if padded {
        transcribe_padded(a, b, lambda)
    } else {
        transcribe(a, b, lambda)
    }
    .map_err(Failure::from_library)?;
    Ok(estimate_dist(tau.series())
        .map_err(Failure::from_library)?
        .with_base(base))
}

pub fn run(args: MeasuresArgs) -> CmdResult {
    let kinds: Vec<(String, MeasureKind)> = args
        .set
        .iter()
        .map(|raw| parse_kind(raw).map(|k| (raw.clone(), k)))
        .collect::<Result<_, _>>()?;
    let base = parse_base(&args.base)?;
    let metric: Metric = args
        .metric
        .parse()
        .map_err(|e: transcripta::Error| Failure::usage(e.to_string()))?;
    let directed = [MeasureKind::Te, MeasureKind::Tmi];
    if kinds.iter().any(|(_, k)| directed.contains(k)) && args.lambda < 1 {
        return Err(Failure::usage(format!(
            "te and tmi need --lambda >= 1, got {}",
            args.lambda
        )));
    }
    if args.window < 1 {
        return Err(Failure::usage("--window must be at least 1"));
    }
    if !(args.p.is_finite() && args.p >= 1.0) || args.p.is_nan() {
        return Err(Failure::usage(format!(
            "--p must be a finite exponent >= 1, got {}",
            args.p
        )));
    }

    let (a, b) = load_streams(&args)?;

    let mut records: Vec<Value> = Vec::new();
    for (name, kind) in &kinds {
        let record = match kind {
            MeasureKind::Entropy => {
                let dist = transcript_distribution(&a, &b, args.lambda, args.lambda_pad, base)?;
                json!({
                    "measure": name,
                    "lambda": args.lambda,
                    "padded": args.lambda_pad,
                    "value": round12(shannon_entropy(&dist)),
                    "normalized": round12(normalized_entropy(&dist).map_err(Failure::from_library)?),
                    "log_base": base.name(),
                })
            }
            MeasureKind::Js => {
                let dist = transcript_distribution(&a, &b, args.lambda, args.lambda_pad, base)?;
                let uniform = ProbDist::uniform(dist.len())
                    .map_err(Failure::from_library)?
                    .with_base(base);
                json!({
                    "measure": name,
                    "lambda": args.lambda,
                    "padded": args.lambda_pad,
                    "reference": "uniform",
                    "divergence": round12(js_divergence(&dist, &uniform).map_err(Failure::from_library)?),
                    "distance": round12(js_distance(&dist, &uniform).map_err(Failure::from_library)?),
                    "log_base": base.name(),
                })
            }
            MeasureKind::Sc => {
                let dist = transcript_distribution(&a, &b, args.lambda, args.lambda_pad, base)?;
                json!({
                    "measure": name,
                    "lambda": args.lambda,
                    "padded": args.lambda_pad,
                    "value": round12(statistical_complexity(&dist, None).map_err(Failure::from_library)?),
                    "log_base": LogBase::Base2.name(),
                })
            }
            MeasureKind::OrderClasses => {
                let dist = transcript_distribution(&a, &b, args.lambda, args.lambda_pad, base)?;
                let classes = a.alphabet().order_classes();
                let lumped = lump_by_order_class(&dist, &classes).map_err(Failure::from_library)?;
                let entries: Vec<Value> = lumped
                    .orders()
                    .iter()
                    .zip(lumped.probs())
                    .map(|(&order, &prob)| json!({"order": order, "probability": round12(prob)}))
                    .collect();
                json!({
                    "measure": name,
                    "lambda": args.lambda,
                    "padded": args.lambda_pad,
                    "classes": entries,
                    "class_entropy": round12(shannon_entropy(lumped.dist())),
                    "log_base": base.name(),
                })
            }
            MeasureKind::Te => json!({
                "measure": name,
                "lambda": args.lambda,
                "value": round12(
                    symbolic_transfer_entropy(&a, &b, args.lambda, base)
                        .map_err(Failure::from_library)?
                ),
                "log_base": base.name(),
            }),
            MeasureKind::Tmi => json!({
                "measure": name,
                "lambda": args.lambda,
                "value": round12(
                    transcript_mutual_information(&a, &b, args.lambda, base)
                        .map_err(Failure::from_library)?
                ),
                "log_base": base.name(),
            }),
            MeasureKind::Ccc => json!({
                "measure": name,
                "value": round12(
                    ccc(&[a.clone(), b.clone()], base).map_err(Failure::from_library)?
                ),
                "log_base": base.name(),
            }),
            MeasureKind::Similarity => json!({
                "measure": name,
                "metric": metric.name(),
                "normalization": "largest-admissible",
                "value": round12(
                    transcripta::similarity_distance_with(
                        &a,
                        &b,
                        metric,
                        DistanceNormalization::LargestAdmissible,
                    )
                    .map_err(Failure::from_library)?
                ),
            }),
            MeasureKind::Distances => {
                let series = distance_series(&a, &b, metric).map_err(Failure::from_library)?;
                let histogram = distance_distribution(&series).map_err(Failure::from_library)?;
                let window_profile = sliding_lp_series(&a, &b, args.window, args.p, metric)
                    .map_err(Failure::from_library)?;
                let counts: Vec<Value> = histogram
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(distance, &count)| json!({"distance": distance, "count": count}))
                    .collect();
                let mean = window_profile.iter().sum::<f64>() / window_profile.len() as f64;
                let max = window_profile.iter().cloned().fold(f64::MIN, f64::max);
                json!({
                    "measure": name,
                    "metric": metric.name(),
                    "histogram": counts,
                    "forbidden": histogram.forbidden(),
                    "window": args.window,
                    "p": args.p,
                    "window_count": window_profile.len(),
                    "window_mean": round12(mean),
                    "window_max": round12(max),
                })
            }
        };
        records.push(record);
    }

    let body = serde_json::to_string_pretty(&records)
        .map_err(|e| Failure::internal(format!("record serialization: {e}")))?
        + "\n";
    match &args.output {
        None => print!("{body}"),
        Some(path) => {
            output::write_file(path, &body)?;
            let mut manifest = RunManifest::new("measures");
            manifest
                .param("set", args.set.join(","))
                .param("lambda", args.lambda)
                .param("lambda_pad", args.lambda_pad)
                .param("metric", metric.name())
                .param("window", args.window)
                .param("p", sig12(args.p))
                .param("base", base.name())
                .param("output", path.display());
            for input in args.symbols.iter().chain(&args.raw) {
                manifest.input(input)?;
            }
            manifest.write_beside(path)?;
            println!("wrote {} record(s) to {}", records.len(), path.display());
        }
    }
    Ok(())
}
