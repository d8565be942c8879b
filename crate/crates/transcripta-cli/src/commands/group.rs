//! `group`: distance matrices, order classes, and the regular embedding of
//! a finite group given as a JSON multiplication table.

use crate::manifest::RunManifest;
use crate::{output, CmdResult, Failure};
use clap::{Args, Subcommand};
use std::fmt::Write as _;
use std::path::PathBuf;
use transcripta::{transported_distance_matrix, FiniteGroup, Metric};

#[derive(Args)]
pub struct GroupArgs {
    /// Group table JSON: {"elements": [...], "table": [[...], ...]}.
    #[arg(long)]
    pub table: PathBuf,
    #[command(subcommand)]
    pub action: GroupAction,
}

#[derive(Subcommand)]
pub enum GroupAction {
    /// Pairwise distances between regular-embedding images.
    Distances {
        /// kendall or cayley.
        #[arg(long, default_value = "kendall")]
        metric: String,
        #[arg(long, default_value = "distances.csv")]
        output: PathBuf,
    },
    /// Elements grouped by their order.
    Orderclasses {
        #[arg(long, default_value = "order_classes.csv")]
        output: PathBuf,
    },
    /// Regular-embedding image of each element, in one-line form.
    Embed {
        #[arg(long, default_value = "embedding.csv")]
        output: PathBuf,
    },
}

fn load_group(path: &PathBuf) -> Result<FiniteGroup, Failure> {
    let json = output::read_file(path)?;
    FiniteGroup::from_json(&json)
        .map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

pub fn run(args: GroupArgs) -> CmdResult {
    let group = load_group(&args.table)?;
    let mut manifest = RunManifest::new("group");
    manifest.param("table", args.table.display());
    manifest.input(&args.table)?;

    match &args.action {
        GroupAction::Distances { metric, output } => {
            let metric: Metric = metric
                .parse()
                .map_err(|e: transcripta::Error| Failure::usage(e.to_string()))?;
            let matrix = transported_distance_matrix(&group, metric);
            let mut csv = String::new();
            writeln!(csv, ",{}", matrix.labels().join(",")).expect("string write");
            for (i, label) in matrix.labels().iter().enumerate() {
                let row: Vec<String> = matrix.row(i).iter().map(usize::to_string).collect();
                writeln!(csv, "{label},{}", row.join(",")).expect("string write");
            }
            output::write_file(output, &csv)?;
            manifest
                .param("action", "distances")
                .param("metric", metric.name())
                .param("output", output.display());
            manifest.write_beside(output)?;

            let adm = matrix.admissible_distances();
            let join = |set: &std::collections::BTreeSet<usize>| {
                set.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("wrote {} matrix to {}", metric.name(), output.display());
            println!("admissible distances: {}", join(&adm.admissible));
            println!(
                "gaps: {}",
                if adm.gaps.is_empty() {
                    "none".to_string()
                } else {
                    join(&adm.gaps)
                }
            );
        }
        GroupAction::Orderclasses { output } => {
            let mut csv = String::from("order,count,members\n");
            for (order, members) in group.order_classes() {
                let labels: Vec<String> = members
                    .iter()
                    .map(|&i| group.labels()[i].clone())
                    .collect();
                writeln!(csv, "{order},{},{}", members.len(), labels.join(" "))
                    .expect("string write");
            }
            output::write_file(output, &csv)?;
            manifest
                .param("action", "orderclasses")
                .param("output", output.display());
            manifest.write_beside(output)?;
            println!("wrote order classes to {}", output.display());
        }
        GroupAction::Embed { output } => {
            let mut csv = String::from("element,image\n");
            for (label, image) in group.labels().iter().zip(group.cayley_embedding()) {
                writeln!(csv, "{label},{}", image.one_line_string()).expect("string write");
            }
            output::write_file(output, &csv)?;
            manifest
                .param("action", "embed")
                .param("output", output.display());
            manifest.write_beside(output)?;
            println!("wrote embedding images to {}", output.display());
        }
    }
    Ok(())
}
