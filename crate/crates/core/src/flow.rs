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

//! Max-flow / min-cut over undirected rate networks.
//!
//! Every undirected edge becomes a pair of antiparallel arcs, each with the
//! edge rate as capacity. Augmentation uses Dinic's algorithm on real-valued
//! capacities; arcs whose residual falls below `1e-12 × max rate` count as
//! saturated.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::netmodel::{CutSet, EdgeId, Network, NodeId, RouteSet};

/// Relative residual below which an arc is treated as saturated.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

/// Largest network accepted by [`brute_force_min_cut`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct FlowResult {
    pub value: f64,
    pub min_cut: CutSet,
    /// Net flow per edge, positive in the `u → v` direction of the stored edge.
    pub per_edge_flow: Vec<f64>,
}

/// Which edges an end-to-end protocol may use.
#[derive(Clone, Copy, Debug)]
pub enum Forwarding<'a> {
    Flooding,
    Routes(&'a RouteSet),
}

/// Residual network in compressed adjacency form. Arc `2e` runs along edge
/// `e` as stored, arc `2e + 1` runs against it.
struct FlowGraph {
    n: usize,
    head: Vec<u32>,
    cap: Vec<f64>,
    flow: Vec<f64>,
    start: Vec<usize>,
    arcs: Vec<u32>,
    tol: f64,
}

impl FlowGraph {
    fn new(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut head = Vec::with_capacity(2 * edges.len());
        let mut cap = Vec::with_capacity(2 * edges.len());
        let mut deg = vec![0usize; n + 1];
        let mut max_cap = 0.0f64;
        for &(u, v, c) in edges {
            head.push(v as u32);
            head.push(u as u32);
            cap.push(c);
            cap.push(c);
            deg[u] += 1;
            deg[v] += 1;
            max_cap = max_cap.max(c);
        }
        let mut start = vec![0usize; n + 1];
        for x in 0..n {
            start[x + 1] = start[x] + deg[x];
        }
        let mut fill = start.clone();
        let mut arcs = vec![0u32; 2 * edges.len()];
        for (e, &(u, v, _)) in edges.iter().enumerate() {
            arcs[fill[u]] = (2 * e) as u32;
            fill[u] += 1;
            arcs[fill[v]] = (2 * e + 1) as u32;
            fill[v] += 1;
        }
        FlowGraph {
            n,
            head,
            flow: vec![0.0; cap.len()],
            cap,
            start,
            arcs,
            tol: RESIDUAL_TOLERANCE * max_cap,
        }
    }

    #[inline]
    fn residual(&self, a: usize) -> f64 {
        self.cap[a] - self.flow[a]
    }

    #[inline]
    fn tail(&self, a: usize) -> usize {
        self.head[a ^ 1] as usize
    }

    fn levels(&self, s: usize, level: &mut [u32]) {
        level.fill(u32::MAX);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.arcs[self.start[x]..self.start[x + 1]] {
                let a = a as usize;
                let y = self.head[a] as usize;
                if level[y] == u32::MAX && self.residual(a) > self.tol {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }

    fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let mut total = 0.0;
        let mut level = vec![u32::MAX; self.n];
        let mut next = vec![0usize; self.n];
        let mut path: Vec<usize> = Vec::new();
        loop {
            self.levels(s, &mut level);
            if level[t] == u32::MAX {
                return total;
            }
            next.copy_from_slice(&self.start[..self.n]);
            path.clear();
            let mut x = s;
            loop {
                if x == t {
                    let push = path.iter().map(|&a| self.residual(a)).fold(f64::INFINITY, f64::min);
                    for &a in &path {
                        self.flow[a] += push;
                        self.flow[a ^ 1] -= push;
                    }
                    total += push;
                    let k = path
                        .iter()
                        .position(|&a| self.residual(a) <= self.tol)
                        .unwrap_or(path.len());
                    path.truncate(k);
                    x = path.last().map_or(s, |&a| self.head[a] as usize);
                    continue;
                }
                let end = self.start[x + 1];
                while next[x] < end {
                    let a = self.arcs[next[x]] as usize;
                    let y = self.head[a] as usize;
                    if level[y] == level[x] + 1 && self.residual(a) > self.tol {
                        break;
                    }
                    next[x] += 1;
                }
                if next[x] < end {
                    let a = self.arcs[next[x]] as usize;
                    path.push(a);
                    x = self.head[a] as usize;
                } else {
                    if x == s {
                        break;
                    }
                    level[x] = u32::MAX;
                    let a = path.pop().expect("non-source node on the path");
                    x = self.tail(a);
                    next[x] += 1;
                }
            }
        }
    }

    /// Nodes reachable from `s` through unsaturated arcs.
    fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.arcs[self.start[x]..self.start[x + 1]] {
                let a = a as usize;
                let y = self.head[a] as usize;
                if !seen[y] && self.residual(a) > self.tol {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

fn check_inputs(net: &Network, rates: &[f64], a: NodeId, b: NodeId) -> Result<()> {
    if a == b {
        return Err(Error::SameEndpoints(a.index()));
    }
    let n = net.node_count();
    for x in [a, b] {
        if x.index() >= n {
            return Err(Error::param("pair", format!("node {} is outside a network of {n} nodes", x.index())));
        }
    }
    if rates.len() != net.edge_count() {
        return Err(Error::param(
            "rates",
            format!("{} rates supplied for {} edges", rates.len(), net.edge_count()),
        ));
    }
    if let Some((i, &r)) = rates.iter().enumerate().find(|(_, r)| !(**r >= 0.0 && r.is_finite())) {
        return Err(Error::param("rates", format!("edge {i} has rate {r}")));
    }
    Ok(())
}

/// Maximum `a → b` flow and a witnessing minimum cut.
pub fn max_flow(net: &Network, rates: &[f64], a: NodeId, b: NodeId) -> Result<FlowResult> {
    check_inputs(net, rates, a, b)?;
    let edges: Vec<(usize, usize, f64)> = net
        .edges()
        .iter()
        .zip(rates)
        .map(|(e, &r)| (e.u.index(), e.v.index(), r))
        .collect();
    let mut g = FlowGraph::new(net.node_count(), &edges);
    let value = g.max_flow(a.index(), b.index());
    let side = g.source_side(a.index());
    let per_edge_flow = (0..edges.len()).map(|e| g.flow[2 * e]).collect();
    Ok(FlowResult {
        value,
        min_cut: CutSet::from_partition(net, &side),
        per_edge_flow,
    })
}

/// Max-flow value over a subset of edges, on a compact relabelled graph.
fn flow_value_on(net: &Network, rates: &[f64], keep: &[EdgeId], a: NodeId, b: NodeId) -> f64 {
    let mut label = vec![u32::MAX; net.node_count()];
    let mut n = 0usize;
    let mut id = |x: NodeId, label: &mut Vec<u32>| {
        if label[x.index()] == u32::MAX {
            label[x.index()] = n as u32;
            n += 1;
        }
        label[x.index()] as usize
    };
    let s = id(a, &mut label);
    let t = id(b, &mut label);
    let edges: Vec<(usize, usize, f64)> = keep
        .iter()
        .map(|&e| {
            let edge = net.edge(e);
            (id(edge.u, &mut label), id(edge.v, &mut label), rates[e.index()])
        })
        .collect();
    FlowGraph::new(n, &edges).max_flow(s, t)
}

/// Max-flow value restricted to the edges in `keep`.
pub fn max_flow_value_on(net: &Network, rates: &[f64], keep: &[EdgeId], a: NodeId, b: NodeId) -> Result<f64> {
    check_inputs(net, rates, a, b)?;
    if let Some(bad) = keep.iter().find(|e| e.index() >= net.edge_count()) {
        return Err(Error::param("keep", format!("edge {} does not exist", bad.index())));
    }
    Ok(flow_value_on(net, rates, keep, a, b))
}

/// Minimum crossing-rate sum over every bipartition separating `a` from `b`.
pub fn brute_force_min_cut(net: &Network, rates: &[f64], a: NodeId, b: NodeId) -> Result<f64> {
    check_inputs(net, rates, a, b)?;
    let n = net.node_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            nodes: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let free: Vec<usize> = (0..n).filter(|&x| x != a.index() && x != b.index()).collect();
    let mut side = vec![false; n];
    let mut best = f64::INFINITY;
    for mask in 0u32..(1u32 << free.len()) {
        side.fill(false);
        side[a.index()] = true;
        for (bit, &x) in free.iter().enumerate() {
            side[x] = mask >> bit & 1 == 1;
        }
        let cut: f64 = net
            .edges()
            .iter()
            .zip(rates)
            .filter(|(e, _)| side[e.u.index()] != side[e.v.index()])
            .map(|(_, &r)| r)
            .sum();
        best = best.min(cut);
    }
    Ok(best)
}

/// End-to-end rate of a protocol: max-flow over the edges it uses.
pub fn protocol_rate(net: &Network, rates: &[f64], a: NodeId, b: NodeId, using: Forwarding<'_>) -> Result<f64> {
    check_inputs(net, rates, a, b)?;
    match using {
        Forwarding::Flooding => {
            let all: Vec<EdgeId> = (0..net.edge_count()).map(EdgeId::new).collect();
            Ok(flow_value_on(net, rates, &all, a, b))
        }
        Forwarding::Routes(set) => {
            if set.source != a || set.target != b {
                return Err(Error::InvalidRoute(format!(
                    "route set joins {} and {}, expected {} and {}",
                    set.source.index(),
                    set.target.index(),
                    a.index(),
                    b.index()
                )));
            }
            set.validate(net)?;
            let used: Vec<EdgeId> = set.edge_set(net)?.into_iter().collect();
            Ok(flow_value_on(net, rates, &used, a, b))
        }
    }
}
