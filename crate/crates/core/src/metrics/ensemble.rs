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

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{average_degree, giant_component_fraction, mean_se};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::linkrate::{assign_rates, RateDistribution, RateModel};
use crate::netgen::{generate_scale_free, generate_waxman, generate_waxman_within, prune, PruneParams, ScaleFreeParams, WaxmanParams};
use crate::netmodel::{Network, NodeId};
use crate::routing::{run_protocol, ProtocolSpec};
use crate::seed::{self, STREAM_PAIRS};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum NetworkClass {
    Waxman(WaxmanParams),
    ScaleFree(ScaleFreeParams),
}

impl NetworkClass {
    pub fn node_count(&self) -> usize {
        match self {
            NetworkClass::Waxman(p) => p.n,
            NetworkClass::ScaleFree(p) => p.n,
        }
    }

    pub fn radius_km(&self) -> f64 {
        match self {
            NetworkClass::Waxman(p) => p.radius_km,
            NetworkClass::ScaleFree(p) => p.radius_km,
        }
    }

    /// Nodes per km².
    pub fn density(&self) -> f64 {
        self.node_count() as f64 / (std::f64::consts::PI * self.radius_km().powi(2))
    }

    /// Same class with `n` nodes on a disc of radius `radius_km`.
    pub fn resized(&self, n: usize, radius_km: f64) -> Self {
        match *self {
            NetworkClass::Waxman(p) => NetworkClass::Waxman(WaxmanParams { n, radius_km, ..p }),
            NetworkClass::ScaleFree(p) => NetworkClass::ScaleFree(ScaleFreeParams { n, radius_km, ..p }),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            NetworkClass::Waxman(p) => p.validate(),
            NetworkClass::ScaleFree(p) => p.validate(),
        }
    }

    /// Generate, assign rates and prune.
    ///
    /// Waxman networks skip pairs beyond the length at which the model's
    /// rate drops under the pruning threshold; every rate model decreases
    /// with distance, so the result equals full generation followed by
    /// pruning.
    pub fn realise(&self, model: &RateModel, prune_params: &PruneParams, seed: u64) -> Result<(Network, RateDistribution)> {
        let net = match self {
            NetworkClass::Waxman(p) => match model.cutoff_distance(prune_params.epsilon)? {
                Some(max_len) if prune_params.epsilon > 0.0 => generate_waxman_within(p, seed, max_len)?,
                _ => generate_waxman(p, seed)?,
            },
            NetworkClass::ScaleFree(p) => generate_scale_free(p, seed)?,
        };
        let rates = assign_rates(&net, model)?;
        prune(&net, &rates, prune_params)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSampling {
    /// `L` uniformly random pairs of distinct nodes per network.
    #[default]
    Random,
    /// As `Random`, restricted to the largest connected component.
    GiantComponent,
    /// Every unordered pair once; `L` is ignored.
    Exhaustive,
}

/// One sweep point's sampling recipe.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub class: NetworkClass,
    pub model: RateModel,
    pub prune: PruneParams,
    /// Pairs per network (`L`).
    pub pairs: usize,
    /// Networks per point (`L'`).
    pub networks: usize,
    pub sampling: PairSampling,
    pub seed: u64,
    /// Index of this point within its sweep; part of every network seed.
    pub point: u64,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        self.class.validate()?;
        self.model.validate()?;
        if self.pairs < 1 {
            return Err(Error::param("L", "at least one pair per network is required"));
        }
        if self.networks < 1 {
            return Err(Error::param("L'", "at least one network is required"));
        }
        if self.class.node_count() < 2 {
            return Err(Error::param("n", "pair sampling needs at least two nodes"));
        }
        Ok(())
    }

    /// Seed of network `k` of this point.
    pub fn network_seed(&self, k: usize) -> u64 {
        seed::derive(self.seed, &[self.point, k as u64])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSample {
    pub pair: (NodeId, NodeId),
    pub rate: f64,
    pub consumption_fraction: f64,
    pub pair_separation: f64,
}

/// Statistics of one protocol at one sweep point.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleResult {
    pub protocol: String,
    pub network_rates: Vec<f64>,
    pub network_consumption: Vec<f64>,
    pub mean_rate: f64,
    pub se_rate: f64,
    pub mean_consumption: f64,
    pub se_consumption: f64,
    /// Pairs per network actually evaluated.
    pub pairs: usize,
    pub networks: usize,
    /// Share of sampled pairs flagged with a shortfall.
    pub shortfall_fraction: f64,
}

/// Every protocol evaluated on the same networks and pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleReport {
    pub density: f64,
    pub n: usize,
    pub radius_km: f64,
    pub results: Vec<EnsembleResult>,
    pub giant_fraction: f64,
    pub se_giant_fraction: f64,
    pub mean_degree: f64,
    pub se_mean_degree: f64,
}

#[derive(Clone, Debug)]
struct NetworkOutcome {
    rate: Vec<f64>,
    consumption: Vec<f64>,
    shortfalls: Vec<usize>,
    pairs: usize,
    giant_fraction: f64,
    mean_degree: f64,
}

fn sample_pairs(net: &Network, cfg: &EnsembleConfig, seed: u64) -> Vec<(NodeId, NodeId)> {
    let n = net.node_count();
    if cfg.sampling == PairSampling::Exhaustive {
        return (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (NodeId::new(i), NodeId::new(j))))
            .collect();
    }
    let pool: Vec<NodeId> = match cfg.sampling {
        PairSampling::GiantComponent => {
            let labels = net.component_labels();
            let mut sizes = vec![0usize; n];
            for &l in &labels {
                sizes[l] += 1;
            }
            // lowest label among the largest components
            let giant = (0..n).max_by_key(|&l| (sizes[l], std::cmp::Reverse(l))).unwrap_or(0);
            let members: Vec<NodeId> = (0..n).filter(|&x| labels[x] == giant).map(NodeId::new).collect();
            if members.len() >= 2 {
                members
            } else {
                net.nodes().collect()
            }
        }
        _ => net.nodes().collect(),
    };
    let mut rng = seed::rng(seed::derive(seed, &[STREAM_PAIRS]));
    let m = pool.len();
    (0..cfg.pairs)
        .map(|_| {
            let i = rng.gen_range(0..m);
            let mut j = rng.gen_range(0..m - 1);
            if j >= i {
                j += 1;
            }
            (pool[i], pool[j])
        })
        .collect()
}

fn evaluate_network(cfg: &EnsembleConfig, specs: &[ProtocolSpec], k: usize) -> Result<NetworkOutcome> {
    let seed = cfg.network_seed(k);
    let (net, rates) = cfg.class.realise(&cfg.model, &cfg.prune, seed)?;
    let pairs = sample_pairs(&net, cfg, seed);
    let mut out = NetworkOutcome {
        rate: vec![0.0; specs.len()],
        consumption: vec![0.0; specs.len()],
        shortfalls: vec![0; specs.len()],
        pairs: pairs.len(),
        giant_fraction: giant_component_fraction(&net),
        mean_degree: average_degree(&net),
    };
    for (i, spec) in specs.iter().enumerate() {
        let samples = evaluate_pairs(&net, &rates, &pairs, spec)?;
        out.rate[i] = samples.iter().map(|(p, _)| p.rate).sum::<f64>() / pairs.len() as f64;
        out.consumption[i] = samples.iter().map(|(p, _)| p.consumption_fraction).sum::<f64>() / pairs.len() as f64;
        out.shortfalls[i] = samples.iter().filter(|(_, s)| *s).count();
    }
    Ok(out)
}

fn evaluate_pairs(
    net: &Network,
    rates: &RateDistribution,
    pairs: &[(NodeId, NodeId)],
    spec: &ProtocolSpec,
) -> Result<Vec<(PairSample, bool)>> {
    pairs
        .iter()
        .map(|&(a, b)| {
            let o = run_protocol(net, rates, a, b, spec)?;
            let consumption_fraction = if net.edge_count() == 0 {
                0.0
            } else {
                o.consumption_edges as f64 / net.edge_count() as f64
            };
            Ok((
                PairSample {
                    pair: (a, b),
                    rate: o.rate,
                    consumption_fraction,
                    pair_separation: net.distance(a, b),
                },
                o.shortfall,
            ))
        })
        .collect()
}

fn assemble(cfg: &EnsembleConfig, specs: &[ProtocolSpec], outcomes: &[NetworkOutcome]) -> EnsembleReport {
    let pairs = outcomes.first().map_or(0, |o| o.pairs);
    let total_pairs: usize = outcomes.iter().map(|o| o.pairs).sum();
    let results = specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let network_rates: Vec<f64> = outcomes.iter().map(|o| o.rate[i]).collect();
            let network_consumption: Vec<f64> = outcomes.iter().map(|o| o.consumption[i]).collect();
            let (mean_rate, se_rate) = mean_se(&network_rates);
            let (mean_consumption, se_consumption) = mean_se(&network_consumption);
            let short: usize = outcomes.iter().map(|o| o.shortfalls[i]).sum();
            EnsembleResult {
                protocol: spec.label(),
                network_rates,
                network_consumption,
                mean_rate,
                se_rate,
                mean_consumption,
                se_consumption,
                pairs,
                networks: outcomes.len(),
                shortfall_fraction: short as f64 / total_pairs.max(1) as f64,
            }
        })
        .collect();
    let giant: Vec<f64> = outcomes.iter().map(|o| o.giant_fraction).collect();
    let degree: Vec<f64> = outcomes.iter().map(|o| o.mean_degree).collect();
    let (giant_fraction, se_giant_fraction) = mean_se(&giant);
    let (mean_degree, se_mean_degree) = mean_se(&degree);
    EnsembleReport {
        density: cfg.class.density(),
        n: cfg.class.node_count(),
        radius_km: cfg.class.radius_km(),
        results,
        giant_fraction,
        se_giant_fraction,
        mean_degree,
        se_mean_degree,
    }
}

/// Evaluate several protocols on one ensemble with shared networks and pairs.
pub fn ensemble_evaluate_many(cfg: &EnsembleConfig, specs: &[ProtocolSpec], exec: &Executor) -> Result<EnsembleReport> {
    Ok(sweep_evaluate(std::slice::from_ref(cfg), specs, exec)?.remove(0))
}

pub fn ensemble_evaluate(cfg: &EnsembleConfig, spec: &ProtocolSpec, exec: &Executor) -> Result<EnsembleResult> {
    Ok(ensemble_evaluate_many(cfg, std::slice::from_ref(spec), exec)?.results.remove(0))
}

/// Evaluate a whole sweep; every (point, network) pair is one task.
pub fn sweep_evaluate(points: &[EnsembleConfig], specs: &[ProtocolSpec], exec: &Executor) -> Result<Vec<EnsembleReport>> {
    for p in points {
        p.validate()?;
    }
    for s in specs {
        s.validate()?;
    }
    let tasks: Vec<(usize, usize)> = points
        .iter()
        .enumerate()
        .flat_map(|(i, p)| (0..p.networks).map(move |k| (i, k)))
        .collect();
    let outcomes = exec.try_map(tasks, |(i, k)| evaluate_network(&points[i], specs, k))?;
    let mut it = outcomes.into_iter();
    Ok(points
        .iter()
        .map(|p| {
            let chunk: Vec<NetworkOutcome> = it.by_ref().take(p.networks).collect();
            assemble(p, specs, &chunk)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplification {
    /// `10 log10(<K>_other / <K>_base)`, `None` when the base mean is zero.
    pub rate_db: Option<f64>,
    pub consumption_db: Option<f64>,
}

pub fn amplification(base: &EnsembleResult, other: &EnsembleResult) -> Amplification {
    let db = |num: f64, den: f64| (den > 0.0 && num >= 0.0).then(|| 10.0 * (num / den).log10());
    Amplification {
        rate_db: db(other.mean_rate, base.mean_rate),
        consumption_db: db(other.mean_consumption, base.mean_consumption),
    }
}
