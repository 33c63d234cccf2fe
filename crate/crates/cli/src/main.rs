// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `qnetr` command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use qnetr::experiment::{emit_plot_data, read_results, run_experiment, ExperimentConfig, PlotKind, RunOptions};

#[derive(Parser)]
#[command(name = "qnetr", version, about = "Quantum network capacity experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a config file.
    Run {
        config: PathBuf,
        /// Override the config's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (0 = all cores).
        #[arg(long, env = "QNETR_WORKERS")]
        workers: Option<usize>,
        /// Output directory (defaults to the config's output.dir).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a results CSV into a long-format table for plotting.
    PlotData {
        results: PathBuf,
        #[arg(long)]
        kind: String,
    },
    /// Check a config file without running it.
    Validate { config: PathBuf },
}

struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl From<qnetr::Error> for Failure {
    fn from(e: qnetr::Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
            code: 1,
        }
    }
}

fn execute(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Run {
            config,
            seed,
            workers,
            out,
        } => {
            let cfg = ExperimentConfig::load(&config)?;
            let output = run_experiment(
                &cfg,
                &RunOptions {
                    seed,
                    workers,
                    out_dir: out,
                },
            )?;
            let report = serde_json::json!({
                "csv": output.csv_path,
                "summary": output.summary_path,
                "rows": output.records.len(),
            });
            Ok(report.to_string() + "\n")
        }
        Command::PlotData { results, kind } => {
            let kind: PlotKind = kind.parse()?;
            let records = read_results(&results)?;
            Ok(emit_plot_data(&records, kind)?)
        }
        Command::Validate { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            let labels: Vec<String> = cfg.specs.iter().map(|s| s.label()).collect();
            let report = serde_json::json!({
                "valid": true,
                "points": cfg.points.len(),
                "protocols": labels,
            });
            Ok(report.to_string() + "\n")
        }
    }
}

fn main() -> ExitCode {
    let result = match Cli::try_parse() {
        Ok(cli) => execute(cli.command),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => Err(Failure {
            kind: "usage",
            message: e.to_string().trim_end().to_string(),
            code: 2,
        }),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", serde_json::json!({"error": f.kind, "message": f.message}));
            ExitCode::from(f.code)
        }
    }
}
