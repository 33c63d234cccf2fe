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

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkrate::{CvQkdParams, FiberParams, RateModel};
use crate::metrics::{EnsembleConfig, NetworkClass, PairSampling};
use crate::netgen::{PruneParams, ScaleFreeParams, WaxmanParams};
use crate::netmodel::Disjointness;
use crate::routing::{DeadEnd, IarParams, MatrixScope, ProtocolKind, ProtocolSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "topology", rename_all = "snake_case", deny_unknown_fields)]
pub enum TopologySection {
    Waxman {
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        radius_km: Option<f64>,
        beta: f64,
        /// `null` for the Erdős–Rényi limit.
        r0_km: Option<f64>,
        #[serde(default = "default_prune")]
        prune_epsilon: f64,
    },
    ScaleFree {
        #[serde(default)]
        n: Option<usize>,
        #[serde(default)]
        radius_km: Option<f64>,
        n0: usize,
        m: usize,
        sigma_deg: f64,
        sigma_r: f64,
        #[serde(default = "default_prune")]
        prune_epsilon: f64,
    },
}

fn default_prune() -> f64 {
    PruneParams::default().epsilon
}

impl TopologySection {
    fn n(&self) -> Option<usize> {
        match self {
            TopologySection::Waxman { n, .. } | TopologySection::ScaleFree { n, .. } => *n,
        }
    }

    fn radius_km(&self) -> Option<f64> {
        match self {
            TopologySection::Waxman { radius_km, .. } | TopologySection::ScaleFree { radius_km, .. } => *radius_km,
        }
    }

    pub fn prune(&self) -> PruneParams {
        match self {
            TopologySection::Waxman { prune_epsilon, .. } | TopologySection::ScaleFree { prune_epsilon, .. } => {
                PruneParams {
                    epsilon: *prune_epsilon,
                }
            }
        }
    }

    pub fn class(&self, n: usize, radius_km: f64) -> NetworkClass {
        match *self {
            TopologySection::Waxman { beta, r0_km, .. } => NetworkClass::Waxman(WaxmanParams {
                n,
                radius_km,
                beta,
                r0_km: r0_km.unwrap_or(f64::INFINITY),
            }),
            TopologySection::ScaleFree {
                n0,
                m,
                sigma_deg,
                sigma_r,
                ..
            } => NetworkClass::ScaleFree(ScaleFreeParams {
                n,
                n0,
                m,
                sigma_deg,
                sigma_r,
                radius_km,
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkModelName {
    PureLoss,
    ThermalUpper,
    ThermalLower,
    Cvqkd,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSection {
    pub model: LinkModelName,
    #[serde(default = "default_db")]
    pub gamma_db_per_km: f64,
    #[serde(default = "default_nbar")]
    pub nbar: f64,
    #[serde(default)]
    pub eta_eff: Option<f64>,
    #[serde(default)]
    pub beta_rec: Option<f64>,
    #[serde(default)]
    pub mu: Option<f64>,
}

fn default_db() -> f64 {
    0.2
}

fn default_nbar() -> f64 {
    FiberParams::default().nbar
}

impl LinkSection {
    pub fn model(&self) -> Result<RateModel> {
        let fiber = FiberParams::from_db_per_km(self.gamma_db_per_km, self.nbar)?;
        let qkd_only = [("eta_eff", self.eta_eff), ("beta_rec", self.beta_rec), ("mu", self.mu)];
        let model = match self.model {
            LinkModelName::PureLoss => RateModel::PureLoss { fiber },
            LinkModelName::ThermalUpper => RateModel::ThermalUpper { fiber },
            LinkModelName::ThermalLower => RateModel::ThermalLower { fiber },
            LinkModelName::Cvqkd => {
                let d = CvQkdParams::default();
                RateModel::Cvqkd {
                    fiber,
                    qkd: CvQkdParams {
                        eta_eff: self.eta_eff.unwrap_or(d.eta_eff),
                        beta_rec: self.beta_rec.unwrap_or(d.beta_rec),
                        mu: self.mu.unwrap_or(d.mu),
                        nbar: self.nbar,
                    },
                }
            }
        };
        if self.model != LinkModelName::Cvqkd {
            if let Some((name, _)) = qkd_only.iter().find(|(_, v)| v.is_some()) {
                return Err(Error::Config(format!("link.{name} only applies to the cvqkd model")));
            }
        }
        model.validate()?;
        Ok(model)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolName {
    Flooding,
    SinglePath,
    MdpFixed,
    MdpRateTarget,
    IterDijkstra,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSection {
    pub protocol: ProtocolName,
    #[serde(default, rename = "M")]
    pub m: Option<usize>,
    #[serde(default)]
    pub rate_target: Option<f64>,
    #[serde(default = "default_disjoint")]
    pub disjoint: Disjointness,
    #[serde(default = "default_eta")]
    pub iar_eta: f64,
    #[serde(default = "default_eps")]
    pub iar_epsilon: f64,
    #[serde(default)]
    pub matrix_scope: MatrixScope,
    #[serde(default)]
    pub dead_end: DeadEnd,
}

fn default_disjoint() -> Disjointness {
    Disjointness::Edge
}
fn default_eta() -> f64 {
    IarParams::default().eta
}
fn default_eps() -> f64 {
    IarParams::default().epsilon
}

impl ProtocolSection {
    pub fn spec(&self) -> Result<ProtocolSpec> {
        let need_m = || {
            self.m
                .ok_or_else(|| Error::Config(format!("protocol {:?} requires \"M\"", self.protocol)))
        };
        let kind = match self.protocol {
            ProtocolName::Flooding => ProtocolKind::Flooding,
            ProtocolName::SinglePath => ProtocolKind::SinglePath,
            ProtocolName::MdpFixed => ProtocolKind::MdpFixedM(need_m()?),
            ProtocolName::IterDijkstra => ProtocolKind::IterDijkstraFixedM(need_m()?),
            ProtocolName::MdpRateTarget => ProtocolKind::MdpRateTarget(
                self.rate_target
                    .ok_or_else(|| Error::Config("protocol mdp_rate_target requires \"rate_target\"".into()))?,
            ),
        };
        let spec = ProtocolSpec {
            kind,
            disjointness: self.disjoint,
            iar: IarParams {
                eta: self.iar_eta,
                epsilon: self.iar_epsilon,
            },
            scope: self.matrix_scope,
            dead_end: self.dead_end,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPoint {
    pub n: usize,
    pub radius_km: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SweepSection {
    /// Explicit densities on the topology's disc radius.
    Densities(Vec<f64>),
    /// `count` log-spaced densities from `min` to `max`.
    LogGrid { min: f64, max: f64, count: usize },
    /// Explicit `(N, R)` pairs.
    Points(Vec<SweepPoint>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSection {
    #[serde(rename = "L")]
    pub pairs: usize,
    #[serde(rename = "L_prime")]
    pub networks: usize,
    #[serde(default)]
    pub mode: PairSampling,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_stem")]
    pub stem: String,
}

fn default_dir() -> PathBuf {
    PathBuf::from("results")
}
fn default_stem() -> String {
    "results".into()
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: default_dir(),
            stem: default_stem(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    #[serde(default = "default_rate_threshold")]
    pub rate_threshold: f64,
    #[serde(default = "default_giant_threshold")]
    pub giant_threshold: f64,
}

fn default_rate_threshold() -> f64 {
    1.0
}
fn default_giant_threshold() -> f64 {
    0.5
}

impl Default for AnalysisSection {
    fn default() -> Self {
        AnalysisSection {
            rate_threshold: default_rate_threshold(),
            giant_threshold: default_giant_threshold(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(ProtocolSection),
    Many(Vec<ProtocolSection>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    topology: TopologySection,
    link: LinkSection,
    #[serde(alias = "protocol")]
    protocols: OneOrMany,
    #[serde(default)]
    sweep: Option<SweepSection>,
    sampling: SamplingSection,
    #[serde(default)]
    master_seed: u64,
    #[serde(default)]
    output: OutputSection,
    #[serde(default)]
    workers: Option<usize>,
    #[serde(default)]
    analysis: AnalysisSection,
}

/// A parsed and validated experiment description.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub topology: TopologySection,
    pub link: LinkSection,
    pub model: RateModel,
    pub protocols: Vec<ProtocolSection>,
    pub specs: Vec<ProtocolSpec>,
    pub points: Vec<SweepPoint>,
    pub sampling: SamplingSection,
    pub master_seed: u64,
    pub output: OutputSection,
    pub workers: Option<usize>,
    pub analysis: AnalysisSection,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    fn from_raw(raw: RawConfig) -> Result<Self> {
        let model = raw.link.model()?;
        let protocols = match raw.protocols {
            OneOrMany::One(p) => vec![p],
            OneOrMany::Many(v) => v,
        };
        if protocols.is_empty() {
            return Err(Error::Config("at least one protocol is required".into()));
        }
        let specs = protocols.iter().map(|p| p.spec()).collect::<Result<Vec<_>>>()?;
        let mut labels: Vec<String> = specs.iter().map(|s| s.label()).collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("protocol list contains duplicates".into()));
        }
        let points = resolve_points(&raw.topology, raw.sweep.as_ref())?;
        let cfg = ExperimentConfig {
            topology: raw.topology,
            link: raw.link,
            model,
            protocols,
            specs,
            points,
            sampling: raw.sampling,
            master_seed: raw.master_seed,
            output: raw.output,
            workers: raw.workers,
            analysis: raw.analysis,
        };
        for (i, _) in cfg.points.iter().enumerate() {
            cfg.ensemble(i, cfg.master_seed).validate()?;
        }
        if let Some(w) = cfg.points.windows(2).find(|w| density(w[0]) >= density(w[1])) {
            return Err(Error::Config(format!(
                "sweep densities must be strictly increasing ({} then {})",
                density(w[0]),
                density(w[1])
            )));
        }
        if !(cfg.topology.prune().epsilon >= 0.0) {
            return Err(Error::Config("prune_epsilon must be non-negative".into()));
        }
        Ok(cfg)
    }

    /// Ensemble recipe of sweep point `i` under `seed`.
    pub fn ensemble(&self, i: usize, seed: u64) -> EnsembleConfig {
        let p = self.points[i];
        EnsembleConfig {
            class: self.topology.class(p.n, p.radius_km),
            model: self.model,
            prune: self.topology.prune(),
            pairs: self.sampling.pairs,
            networks: self.sampling.networks,
            sampling: self.sampling.mode,
            seed,
            point: i as u64,
        }
    }
}

pub(crate) fn density(p: SweepPoint) -> f64 {
    p.n as f64 / (std::f64::consts::PI * p.radius_km * p.radius_km)
}

fn resolve_points(topology: &TopologySection, sweep: Option<&SweepSection>) -> Result<Vec<SweepPoint>> {
    let radius = || {
        topology
            .radius_km()
            .ok_or_else(|| Error::Config("density sweeps need topology.radius_km".into()))
    };
    let from_densities = |rhos: &[f64]| -> Result<Vec<SweepPoint>> {
        let r = radius()?;
        rhos.iter()
            .map(|&rho| {
                if !(rho > 0.0 && rho.is_finite()) {
                    return Err(Error::Config(format!("density {rho} must be positive")));
                }
                Ok(SweepPoint {
                    n: (rho * std::f64::consts::PI * r * r).round() as usize,
                    radius_km: r,
                })
            })
            .collect()
    };
    let points = match sweep {
        None => vec![SweepPoint {
            n: topology
                .n()
                .ok_or_else(|| Error::Config("without a sweep, topology.n is required".into()))?,
            radius_km: radius()?,
        }],
        Some(SweepSection::Densities(rhos)) => from_densities(rhos)?,
        Some(SweepSection::LogGrid { min, max, count }) => {
            if !(*min > 0.0 && max > min && *count >= 2) {
                return Err(Error::Config("log_grid needs 0 < min < max and count >= 2".into()));
            }
            let rhos: Vec<f64> = (0..*count)
                .map(|i| (min.ln() + (max.ln() - min.ln()) * i as f64 / (*count - 1) as f64).exp())
                .collect();
            from_densities(&rhos)?
        }
        Some(SweepSection::Points(p)) => p.clone(),
    };
    if points.is_empty() {
        return Err(Error::Config("sweep is empty".into()));
    }
    Ok(points)
}
