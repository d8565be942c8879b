//! `henon`: coupled Hénon-map sweep experiments written as plot-ready CSVs.
//!
//! Tables: 2 = transcript entropy/complexity, 3 = transcript order classes,
//! 4 = transfer entropy vs transcript mutual information (at the `--tlag`
//! symbolization stride), 5 = similarity and divergence profiles.

use crate::manifest::RunManifest;
use crate::output::sig12;
use crate::{output, CmdResult, Failure};
use clap::Args;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use transcripta::{
    experiment_entropy_complexity, experiment_order_classes, experiment_similarity,
    experiment_te_tmi, simulate, Error, HenonConfig, SweepConfig,
};

#[derive(Args)]
pub struct HenonArgs {
    /// Which experiment table to produce (2, 3, 4, or 5).
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
    pub figure: Option<u8>,
    /// Produce all four tables.
    #[arg(long, conflicts_with = "figure")]
    pub all: bool,
    #[arg(long, default_value_t = 0.0)]
    pub cmin: f64,
    #[arg(long, default_value_t = 1.2)]
    pub cmax: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Samples kept per trajectory.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// Iterations discarded before sampling.
    #[arg(long, default_value_t = 10_000)]
    pub transient: usize,
    /// Symbolization stride for the transfer-measure table.
    #[arg(long, default_value_t = 1)]
    pub tlag: usize,
    /// Directory for the output CSVs.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

/// On a divergence error, re-walks the grid sequentially to list every
/// coupling value whose trajectory leaves the bound.
fn divergence_report(sweep: &SweepConfig, err: Error) -> Failure {
    if !matches!(err, Error::TrajectoryDiverged { .. }) {
        return Failure::data(err.to_string());
    }
    let mut offending = Vec::new();
    if let Ok(grid) = sweep.grid() {
        for c in grid {
            let cfg = HenonConfig {
                coupling: c,
                n_samples: sweep.n_samples,
                transient: sweep.transient,
                ..Default::default()
            };
            if let Err(Error::TrajectoryDiverged { step, .. }) = simulate(&cfg) {
                offending.push(format!("C={} (step {step})", sig12(c)));
            }
        }
    }
    Failure::data(format!(
        "trajectory diverged at {}",
        if offending.is_empty() {
            err.to_string()
        } else {
            offending.join(", ")
        }
    ))
}

fn write_table(
    path: &Path,
    header: &str,
    rows: Vec<Vec<f64>>,
    args: &HenonArgs,
    figure: u8,
) -> CmdResult {
    let mut csv = String::from(header);
    csv.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| sig12(x)).collect();
        writeln!(csv, "{}", cells.join(",")).expect("string write");
    }
    output::write_file(path, &csv)?;

    let mut manifest = RunManifest::new("henon");
    manifest
        .param("figure", figure)
        .param("cmin", sig12(args.cmin))
        .param("cmax", sig12(args.cmax))
        .param("step", sig12(args.step))
        .param("n", args.n)
        .param("transient", args.transient)
        .param("tlag", args.tlag)
        .param("output", path.display());
    manifest.write_beside(path)?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn run(args: HenonArgs) -> CmdResult {
    let figures: Vec<u8> = match (args.figure, args.all) {
        (Some(figure), false) => vec![figure],
        (None, true) => vec![2, 3, 4, 5],
        (None, false) => {
            return Err(Failure::usage("pass --figure {2|3|4|5} or --all"));
        }
        (Some(_), true) => unreachable!("clap conflicts_with"),
    };
    if !(args.step.is_finite() && args.step > 0.0) {
        return Err(Failure::usage(format!(
            "--step must be positive, got {}",
            args.step
        )));
    }
    if args.cmin > args.cmax || !args.cmin.is_finite() || !args.cmax.is_finite() {
        return Err(Failure::usage(format!(
            "need --cmin <= --cmax, got {} and {}",
            args.cmin, args.cmax
        )));
    }
    if args.cmin < 0.0 {
        return Err(Failure::usage("--cmin must be non-negative"));
    }
    if args.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    if args.tlag == 0 {
        return Err(Failure::usage("--tlag must be at least 1"));
    }

    std::fs::create_dir_all(&args.out_dir).map_err(|e| {
        Failure::data(format!("cannot create {}: {e}", args.out_dir.display()))
    })?;

    let sweep = SweepConfig {
        c_min: args.cmin,
        c_max: args.cmax,
        c_step: args.step,
        pattern_len: 3,
        delay: 1,
        lag: 1,
        n_samples: args.n,
        transient: args.transient,
    };

    for figure in figures {
        match figure {
            2 => {
                let rows = experiment_entropy_complexity(&sweep)
                    .map_err(|e| divergence_report(&sweep, e))?;
                write_table(
                    &args.out_dir.join("entropy_complexity.csv"),
                    "C,h,SC",
                    rows.iter().map(|r| vec![r.coupling, r.h, r.sc]).collect(),
                    &args,
                    figure,
                )?;
            }
            3 => {
                let rows = experiment_order_classes(&sweep)
                    .map_err(|e| divergence_report(&sweep, e))?;
                write_table(
                    &args.out_dir.join("order_classes.csv"),
                    "C,p_order1,p_order2,p_order3,class_entropy",
                    rows.iter()
                        .map(|r| {
                            vec![r.coupling, r.p_order1, r.p_order2, r.p_order3, r.class_entropy]
                        })
                        .collect(),
                    &args,
                    figure,
                )?;
            }
            4 => {
                let strided = SweepConfig {
                    delay: args.tlag,
                    ..sweep.clone()
                };
                let rows =
                    experiment_te_tmi(&strided).map_err(|e| divergence_report(&strided, e))?;
                write_table(
                    &args.out_dir.join(format!("te_tmi_stride{}.csv", args.tlag)),
                    "C,TE,TMI,epsilon",
                    rows.iter()
                        .map(|r| vec![r.coupling, r.te, r.tmi, r.epsilon])
                        .collect(),
                    &args,
                    figure,
                )?;
            }
            5 => {
                let rows =
                    experiment_similarity(&sweep).map_err(|e| divergence_report(&sweep, e))?;
                write_table(
                    &args.out_dir.join("similarity.csv"),
                    "C,delta_K,js_distance",
                    rows.iter()
                        .map(|r| vec![r.coupling, r.delta_k, r.js_distance])
                        .collect(),
                    &args,
                    figure,
                )?;
            }
            _ => unreachable!("clap range parser"),
        }
    }
    Ok(())
}
