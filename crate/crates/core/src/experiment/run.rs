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

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::{density, ExperimentConfig};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::metrics::{
    classify_phases, critical_density_consumption, critical_density_performance, sweep_evaluate, ConsumptionPeak,
    CriticalEstimate, CriticalSet, EnsembleReport, PhaseTable,
};
use crate::routing::ProtocolKind;

pub const CSV_HEADER: [&str; 13] = [
    "rho",
    "n",
    "radius_km",
    "protocol",
    "mean_rate",
    "se_rate",
    "mean_consumption",
    "se_consumption",
    "giant_fraction",
    "mean_degree",
    "L",
    "L_prime",
    "seed",
];

/// One row of the results table: a (sweep point, protocol) pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub rho: f64,
    pub n: usize,
    pub radius_km: f64,
    pub protocol: String,
    pub mean_rate: f64,
    pub se_rate: f64,
    pub mean_consumption: f64,
    pub se_consumption: f64,
    pub giant_fraction: f64,
    pub mean_degree: f64,
    #[serde(rename = "L")]
    pub pairs: usize,
    #[serde(rename = "L_prime")]
    pub networks: usize,
    pub seed: u64,
}

impl ResultRecord {
    fn fields(&self) -> [String; 13] {
        let f = |x: f64| format!("{x:.16e}");
        [
            f(self.rho),
            self.n.to_string(),
            f(self.radius_km),
            self.protocol.clone(),
            f(self.mean_rate),
            f(self.se_rate),
            f(self.mean_consumption),
            f(self.se_consumption),
            f(self.giant_fraction),
            f(self.mean_degree),
            self.pairs.to_string(),
            self.networks.to_string(),
            self.seed.to_string(),
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

/// Critical densities and phases estimated from a finished sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub master_seed: u64,
    pub densities: Vec<f64>,
    pub rate_threshold: f64,
    pub giant_threshold: f64,
    pub giant: CriticalEstimate,
    pub performance: BTreeMap<String, CriticalEstimate>,
    pub consumption: BTreeMap<String, ConsumptionPeak>,
    pub critical_set: Option<CriticalSet>,
    pub phases: Option<PhaseTable>,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub csv_path: PathBuf,
    pub summary_path: PathBuf,
    pub records: Vec<ResultRecord>,
    pub reports: Vec<EnsembleReport>,
    pub summary: Summary,
}

fn csv_line(fields: &[String]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(fields)?;
    w.into_inner().map_err(|e| Error::Format(e.to_string()))
}

fn append(file: &mut File, path: &Path, bytes: &[u8]) -> Result<()> {
    file.write_all(bytes).map_err(|e| Error::io(path, e))?;
    file.flush().map_err(|e| Error::io(path, e))
}

/// Run every sweep point, appending its rows to the CSV as soon as the
/// point is complete, then write the summary.
///
/// While the run is in progress a `<csv>.partial` marker exists next to
/// the table; it is removed once the summary has been written.
pub fn run_experiment(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<ExperimentOutput> {
    let seed = opts.seed.unwrap_or(cfg.master_seed);
    let workers = opts.workers.or(cfg.workers).unwrap_or(0);
    let exec = Executor::with_workers(workers);
    let dir = opts.out_dir.clone().unwrap_or_else(|| cfg.output.dir.clone());
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let csv_path = dir.join(format!("{}.csv", cfg.output.stem));
    let summary_path = dir.join(format!("{}.summary.json", cfg.output.stem));
    let marker = dir.join(format!("{}.csv.partial", cfg.output.stem));
    fs::write(&marker, b"incomplete run\n").map_err(|e| Error::io(&marker, e))?;
    let mut file = OpenOptions::new()
        .write(true)
        .create(true)
        .truncate(true)
        .open(&csv_path)
        .map_err(|e| Error::io(&csv_path, e))?;
    let header: Vec<String> = CSV_HEADER.iter().map(|s| s.to_string()).collect();
    append(&mut file, &csv_path, &csv_line(&header)?)?;

    let mut records = Vec::new();
    let mut reports = Vec::new();
    for i in 0..cfg.points.len() {
        let ens = cfg.ensemble(i, seed);
        let report = sweep_evaluate(std::slice::from_ref(&ens), &cfg.specs, &exec)?.remove(0);
        let mut block = Vec::new();
        for res in &report.results {
            let rec = ResultRecord {
                rho: density(cfg.points[i]),
                n: report.n,
                radius_km: report.radius_km,
                protocol: res.protocol.clone(),
                mean_rate: res.mean_rate,
                se_rate: res.se_rate,
                mean_consumption: res.mean_consumption,
                se_consumption: res.se_consumption,
                giant_fraction: report.giant_fraction,
                mean_degree: report.mean_degree,
                pairs: res.pairs,
                networks: res.networks,
                seed,
            };
            block.extend(csv_line(&rec.fields())?);
            records.push(rec);
        }
        append(&mut file, &csv_path, &block)?;
        reports.push(report);
    }
    drop(file);

    let summary = summarise(cfg, seed, &reports)?;
    let json = serde_json::to_string_pretty(&summary)? + "\n";
    fs::write(&summary_path, json).map_err(|e| Error::io(&summary_path, e))?;
    fs::remove_file(&marker).map_err(|e| Error::io(&marker, e))?;
    Ok(ExperimentOutput {
        csv_path,
        summary_path,
        records,
        reports,
        summary,
    })
}

fn summarise(cfg: &ExperimentConfig, seed: u64, reports: &[EnsembleReport]) -> Result<Summary> {
    let rho: Vec<f64> = cfg.points.iter().map(|p| density(*p)).collect();
    let giant: Vec<f64> = reports.iter().map(|r| r.giant_fraction).collect();
    let giant = critical_density_performance(&rho, &giant, cfg.analysis.giant_threshold)?;
    let mut performance = BTreeMap::new();
    let mut consumption = BTreeMap::new();
    let mut by_kind: Vec<(ProtocolKind, CriticalEstimate, Option<ConsumptionPeak>)> = Vec::new();
    for (k, spec) in cfg.specs.iter().enumerate() {
        let label = spec.label();
        let mean: Vec<f64> = reports.iter().map(|r| r.results[k].mean_rate).collect();
        let est = critical_density_performance(&rho, &mean, cfg.analysis.rate_threshold)?;
        performance.insert(label.clone(), est);
        let mut peak = None;
        if spec.kind != ProtocolKind::Flooding && rho.len() >= 3 {
            let e: Vec<f64> = reports.iter().map(|r| r.results[k].mean_consumption).collect();
            let se: Vec<f64> = reports.iter().map(|r| r.results[k].se_consumption).collect();
            let p = critical_density_consumption(&rho, &e, &se)?;
            consumption.insert(label, p.clone());
            peak = Some(p);
        }
        by_kind.push((spec.kind, est, peak));
    }
    let find = |pred: fn(&ProtocolKind) -> bool| by_kind.iter().find(|(k, _, _)| pred(k));
    let critical_set = match (
        find(|k| *k == ProtocolKind::Flooding),
        find(|k| *k == ProtocolKind::SinglePath),
        find(|k| matches!(k, ProtocolKind::MdpRateTarget(_))),
    ) {
        (Some(fl), Some(sp), Some(mdp)) => Some(CriticalSet {
            giant,
            flooding: fl.1,
            consumption: mdp.2.as_ref().map_or(CriticalEstimate::Undetermined, |p| p.estimate),
            mdp_rate_target: mdp.1,
            single_path: sp.1,
        }),
        _ => None,
    };
    Ok(Summary {
        master_seed: seed,
        densities: rho,
        rate_threshold: cfg.analysis.rate_threshold,
        giant_threshold: cfg.analysis.giant_threshold,
        giant,
        performance,
        consumption,
        phases: critical_set.as_ref().map(classify_phases),
        critical_set,
    })
}

/// Parse a results table written by [`run_experiment`].
pub fn read_results(path: &Path) -> Result<Vec<ResultRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Format(format!("unexpected results header {header:?}")));
    }
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}
