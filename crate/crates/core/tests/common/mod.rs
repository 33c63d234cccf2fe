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

#![allow(dead_code)]

pub mod invariants;
pub mod linkrate_tables;

use qnetr::seed;
use qnetr::{Network, NodeId, Position};
use rand::Rng;

/// Random graph in a 100 km disc: each pair joined with probability `p`,
/// rates uniform in [0.05, 2).
pub fn random_instance(seed_value: u64, n: usize, p: f64) -> (Network, Vec<f64>) {
    let mut rng = seed::rng(seed_value);
    let mut positions = Vec::with_capacity(n);
    while positions.len() < n {
        let (x, y): (f64, f64) = (rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        if x * x + y * y <= 100.0 * 100.0 {
            positions.push(Position::new(x, y));
        }
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                pairs.push((i, j));
            }
        }
    }
    let net = Network::new(100.0, positions, pairs).unwrap();
    let rates = (0..net.edge_count()).map(|_| rng.gen_range(0.05..2.0)).collect();
    (net, rates)
}

/// Every simple path from `s` to `t`, as node sequences.
pub fn simple_paths(net: &Network, s: NodeId, t: NodeId) -> Vec<Vec<NodeId>> {
    fn go(net: &Network, t: NodeId, path: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        let x = *path.last().unwrap();
        if x == t {
            out.push(path.clone());
            return;
        }
        for &(y, _) in net.neighbors(x) {
            if !path.contains(&y) {
                path.push(y);
                go(net, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(net, t, &mut vec![s], &mut out);
    out
}

/// Exhaustive minimum `a`-`b` cut restricted to the edges flagged in `keep`.
pub fn enumerate_min_cut(net: &Network, rates: &[f64], keep: &[bool], a: usize, b: usize) -> f64 {
    let n = net.node_count();
    let mut best = f64::INFINITY;
    for mask in 0u64..(1u64 << n) {
        if mask >> a & 1 == 0 || mask >> b & 1 == 1 {
            continue;
        }
        let cut: f64 = net
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, e)| keep[*i] && (mask >> e.u.index() & 1) != (mask >> e.v.index() & 1))
            .map(|(i, _)| rates[i])
            .sum();
        best = best.min(cut);
    }
    best
}

pub fn node(i: usize) -> NodeId {
    NodeId::new(i)
}
