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

//! Random topology generation and rate-threshold pruning.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linkrate::RateDistribution;
use crate::netmodel::{euclidean_distance, subnetwork_with_map, Edge, EdgeId, Network, NodeId, Position};
use crate::seed::{self, STREAM_EDGES, STREAM_POSITIONS};

/// Sampled nodes closer than this are resampled.
pub const MIN_SEPARATION_KM: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaxmanParams {
    pub n: usize,
    pub radius_km: f64,
    /// Maximum connection probability.
    pub beta: f64,
    /// Decay length in km; `f64::INFINITY` gives an Erdős–Rényi graph.
    pub r0_km: f64,
}

impl WaxmanParams {
    pub fn validate(&self) -> Result<()> {
        check_radius(self.radius_km)?;
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::param("beta", format!("must lie in [0, 1], got {}", self.beta)));
        }
        if !(self.r0_km > 0.0) {
            return Err(Error::param("r0_km", format!("must be positive, got {}", self.r0_km)));
        }
        Ok(())
    }

    #[inline]
    pub fn connection_probability(&self, r: f64) -> f64 {
        self.beta * (-r / self.r0_km).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleFreeParams {
    pub n: usize,
    pub n0: usize,
    pub m: usize,
    pub sigma_deg: f64,
    pub sigma_r: f64,
    pub radius_km: f64,
}

impl ScaleFreeParams {
    pub fn validate(&self) -> Result<()> {
        check_radius(self.radius_km)?;
        if self.n0 < 2 {
            return Err(Error::param("n0", format!("seed network needs at least 2 nodes, got {}", self.n0)));
        }
        if self.n < self.n0 {
            return Err(Error::param("n", format!("must be at least n0 = {}, got {}", self.n0, self.n)));
        }
        if self.m < 1 || self.m > self.n0 {
            return Err(Error::param("m", format!("must lie in [1, n0 = {}], got {}", self.n0, self.m)));
        }
        if !(self.sigma_deg >= 0.0 && self.sigma_deg.is_finite()) {
            return Err(Error::param("sigma_deg", format!("must be non-negative, got {}", self.sigma_deg)));
        }
        if !(self.sigma_r >= 0.0 && self.sigma_r.is_finite()) {
            return Err(Error::param("sigma_r", format!("must be non-negative, got {}", self.sigma_r)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruneParams {
    pub epsilon: f64,
}

impl Default for PruneParams {
    fn default() -> Self {
        PruneParams { epsilon: 1e-12 }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::param("radius_km", format!("must be positive and finite, got {r}")));
    }
    Ok(())
}

/// Square-cell spatial hash over node positions.
struct CellIndex {
    cell: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl CellIndex {
    fn new(cell: f64) -> Self {
        CellIndex {
            cell,
            cells: HashMap::new(),
        }
    }

    fn key(&self, p: Position) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    fn insert(&mut self, p: Position, index: usize) {
        let k = self.key(p);
        self.cells.entry(k).or_default().push(index);
    }

    /// Indices in the 3×3 block of cells around `p`.
    fn around(&self, p: Position) -> impl Iterator<Item = usize> + '_ {
        let (cx, cy) = self.key(p);
        (-1..=1).flat_map(move |dx| {
            (-1..=1).flat_map(move |dy| self.cells.get(&(cx + dx, cy + dy)).into_iter().flatten().copied())
        })
    }
}

/// `n` points uniform in the disc (radius ∝ √u), resampling any point that
/// lands within [`MIN_SEPARATION_KM`] of an earlier one.
pub fn sample_disc_positions<R: Rng>(n: usize, radius_km: f64, rng: &mut R) -> Vec<Position> {
    let mut out: Vec<Position> = Vec::with_capacity(n);
    let mut index = CellIndex::new(MIN_SEPARATION_KM.max(radius_km * 1e-9));
    while out.len() < n {
        let r = radius_km * rng.gen::<f64>().sqrt();
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        let p = Position::new(r * theta.cos(), r * theta.sin());
        if index
            .around(p)
            .any(|j| euclidean_distance(out[j], p) < MIN_SEPARATION_KM)
        {
            continue;
        }
        index.insert(p, out.len());
        out.push(p);
    }
    out
}

/// Waxman graph: every pair joined independently with probability
/// `beta exp(-r / r0)`.
///
/// Edge decisions use pair-keyed uniforms (see [`seed::pair_uniform`]), so
/// the result is a pure function of `(params, seed)`.
pub fn generate_waxman(p: &WaxmanParams, seed: u64) -> Result<Network> {
    p.validate()?;
    let positions = sample_disc_positions(p.n, p.radius_km, &mut seed::rng(seed::derive(seed, &[STREAM_POSITIONS])));
    let edge_seed = seed::derive(seed, &[STREAM_EDGES]);
    let mut edges = Vec::new();
    if p.beta > 0.0 {
        for i in 0..p.n {
            for j in (i + 1)..p.n {
                let r = euclidean_distance(positions[i], positions[j]);
                if seed::pair_uniform(edge_seed, i, j) < p.connection_probability(r) {
                    edges.push(Edge {
                        u: NodeId::new(i),
                        v: NodeId::new(j),
                        length: r,
                    });
                }
            }
        }
    }
    Ok(Network::from_sorted_edges(p.radius_km, positions, edges))
}

/// The sub-graph of [`generate_waxman`]`(p, seed)` made of edges no longer
/// than `max_len_km`, built without visiting longer pairs.
///
/// Used when a rate model makes every longer link fall below the pruning
/// threshold: the pruned network is then bit-identical to the full
/// generate-then-prune pipeline.
pub fn generate_waxman_within(p: &WaxmanParams, seed: u64, max_len_km: f64) -> Result<Network> {
    p.validate()?;
    if !(max_len_km >= 0.0) {
        return Err(Error::param("max_len_km", format!("must be non-negative, got {max_len_km}")));
    }
    let positions = sample_disc_positions(p.n, p.radius_km, &mut seed::rng(seed::derive(seed, &[STREAM_POSITIONS])));
    if max_len_km >= 2.0 * p.radius_km || p.beta == 0.0 {
        drop(positions);
        let full = generate_waxman(p, seed)?;
        let keep: Vec<EdgeId> = full
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.length <= max_len_km)
            .map(|(i, _)| EdgeId::new(i))
            .collect();
        return subnetwork_with_map(&full, keep).map(|(n, _)| n);
    }
    let edge_seed = seed::derive(seed, &[STREAM_EDGES]);
    let mut index = CellIndex::new(max_len_km.max(MIN_SEPARATION_KM));
    for (i, &pos) in positions.iter().enumerate() {
        index.insert(pos, i);
    }
    let mut edges = Vec::new();
    let mut near = Vec::new();
    for i in 0..p.n {
        near.clear();
        near.extend(index.around(positions[i]).filter(|&j| j > i));
        near.sort_unstable();
        for &j in &near {
            let r = euclidean_distance(positions[i], positions[j]);
            if r <= max_len_km && seed::pair_uniform(edge_seed, i, j) < p.connection_probability(r) {
                edges.push(Edge {
                    u: NodeId::new(i),
                    v: NodeId::new(j),
                    length: r,
                });
            }
        }
    }
    Ok(Network::from_sorted_edges(p.radius_km, positions, edges))
}

/// Distance-aware preferential attachment.
///
/// The seed network is the complete graph on the first `n0` nodes. Every
/// later node attaches to `m` distinct earlier nodes, drawn sequentially
/// without replacement with probability proportional to
/// `max(k, 1)^sigma_deg / r^sigma_r` (degrees taken before the step). The
/// sequential draw is realised with exponential keys `E_x / w_x`, keeping
/// the `m` smallest, evaluated in log space.
pub fn generate_scale_free(p: &ScaleFreeParams, seed: u64) -> Result<Network> {
    p.validate()?;
    let positions = sample_disc_positions(p.n, p.radius_km, &mut seed::rng(seed::derive(seed, &[STREAM_POSITIONS])));
    let mut rng = seed::rng(seed::derive(seed, &[STREAM_EDGES]));
    let mut degree = vec![0usize; p.n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..p.n0 {
        for b in (a + 1)..p.n0 {
            pairs.push((a, b));
        }
        degree[a] = p.n0 - 1;
    }
    let mut keys: Vec<(f64, usize)> = Vec::with_capacity(p.n);
    for y in p.n0..p.n {
        keys.clear();
        for x in 0..y {
            let k = degree[x].max(1) as f64;
            let r = euclidean_distance(positions[x], positions[y]);
            let log_w = p.sigma_deg * k.ln() - p.sigma_r * r.ln();
            // ln(E) with E ~ Exp(1); 1 - u lies in (0, 1].
            let e: f64 = -(1.0 - rng.gen::<f64>()).ln();
            keys.push((e.ln() - log_w, x));
        }
        let m = p.m;
        keys.select_nth_unstable_by(m - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for &(_, x) in &keys[..m] {
            pairs.push((x, y));
        }
        for &(_, x) in &keys[..m] {
            degree[x] += 1;
        }
        degree[y] = m;
    }
    Network::new(p.radius_km, positions, pairs)
}

/// Drop every edge whose rate is below `epsilon`.
pub fn prune(net: &Network, rates: &RateDistribution, p: &PruneParams) -> Result<(Network, RateDistribution)> {
    if rates.len() != net.edge_count() {
        return Err(Error::param("rates", "one rate per edge is required"));
    }
    if !(p.epsilon >= 0.0) {
        return Err(Error::param("epsilon", format!("must be non-negative, got {}", p.epsilon)));
    }
    let keep: Vec<EdgeId> = (0..net.edge_count())
        .map(EdgeId::new)
        .filter(|id| rates.get(*id) >= p.epsilon)
        .collect();
    let kept_rates = keep.iter().map(|id| rates.get(*id)).collect();
    let (pruned, _) = subnetwork_with_map(net, keep)?;
    Ok((pruned, RateDistribution::new(kept_rates)))
}
