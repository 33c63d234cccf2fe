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

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::check_pair;
use crate::error::Result;
use crate::netmodel::{EdgeId, Network, NodeId, Route};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Minimize,
    Maximize,
}

/// Properties of the edge being relaxed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeProps {
    pub length: f64,
    pub rate: f64,
}

/// A route cost in the generalised Dijkstra form: a search direction, the
/// two initial costs, and the tentative cost of reaching `y` through `x`.
pub trait CostFunction {
    fn mode(&self) -> Mode;
    fn init_source(&self) -> f64;
    fn init_other(&self) -> f64;
    fn tentative(&self, t_x: f64, t_y: f64, edge: EdgeProps) -> f64;

    /// `a` strictly improves on `b` in this cost's direction.
    fn better(&self, a: f64, b: f64) -> bool {
        match self.mode() {
            Mode::Minimize => a < b,
            Mode::Maximize => a > b,
        }
    }
}

/// Total route length.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShortestLength;

impl CostFunction for ShortestLength {
    fn mode(&self) -> Mode {
        Mode::Minimize
    }
    fn init_source(&self) -> f64 {
        0.0
    }
    fn init_other(&self) -> f64 {
        f64::INFINITY
    }
    fn tentative(&self, t_x: f64, _t_y: f64, edge: EdgeProps) -> f64 {
        t_x + edge.length
    }
}

/// Shortest length with every edge of unit length.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinHops;

impl CostFunction for MinHops {
    fn mode(&self) -> Mode {
        Mode::Minimize
    }
    fn init_source(&self) -> f64 {
        0.0
    }
    fn init_other(&self) -> f64 {
        f64::INFINITY
    }
    fn tentative(&self, t_x: f64, _t_y: f64, _edge: EdgeProps) -> f64 {
        t_x + 1.0
    }
}

/// Bottleneck rate, maximised.
#[derive(Clone, Copy, Debug, Default)]
pub struct WidestPath;

impl CostFunction for WidestPath {
    fn mode(&self) -> Mode {
        Mode::Maximize
    }
    fn init_source(&self) -> f64 {
        f64::INFINITY
    }
    fn init_other(&self) -> f64 {
        f64::NEG_INFINITY
    }
    fn tentative(&self, t_x: f64, t_y: f64, edge: EdgeProps) -> f64 {
        t_y.max(t_x.min(edge.rate))
    }
}

/// `Σ (K^-eta + epsilon)` over the route, minimised.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InverseAccumulatedRate {
    pub eta: f64,
    pub epsilon: f64,
}

impl InverseAccumulatedRate {
    #[inline]
    pub fn edge_cost(&self, rate: f64) -> f64 {
        rate.powf(-self.eta) + self.epsilon
    }
}

impl CostFunction for InverseAccumulatedRate {
    fn mode(&self) -> Mode {
        Mode::Minimize
    }
    fn init_source(&self) -> f64 {
        0.0
    }
    fn init_other(&self) -> f64 {
        f64::INFINITY
    }
    fn tentative(&self, t_x: f64, _t_y: f64, edge: EdgeProps) -> f64 {
        t_x + self.edge_cost(edge.rate)
    }
}

/// Heap entry ordered so that the best cost pops first, ties going to the
/// smallest node id.
#[derive(Clone, Copy, Debug)]
struct Entry {
    key: f64,
    node: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.total_cmp(&other.key).then(self.node.cmp(&other.node))
    }
}

/// Costs and parents from a (possibly early-stopped) sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchTree {
    pub source: NodeId,
    pub cost: Vec<f64>,
    pub parent: Vec<Option<NodeId>>,
    /// Nodes in extraction order; unreachable nodes are never extracted.
    pub order: Vec<NodeId>,
}

impl SearchTree {
    pub fn route_to(&self, t: NodeId) -> Option<Route> {
        if t == self.source || self.parent[t.index()].is_none() {
            return None;
        }
        let mut nodes = vec![t];
        let mut x = t;
        while let Some(p) = self.parent[x.index()] {
            nodes.push(p);
            x = p;
        }
        nodes.reverse();
        Some(Route::from_nodes(&nodes))
    }
}

/// The exploration phase. Relaxation runs over neighbours still in the
/// queue; `visit(u, v, edge, a)` sees every tentative value computed, and
/// with `visit_settled` also the values towards already settled neighbours.
#[allow(clippy::too_many_arguments)]
pub(crate) fn explore<C: CostFunction + ?Sized>(
    net: &Network,
    rates: &[f64],
    cost: &C,
    s: NodeId,
    target: Option<NodeId>,
    mask: Option<&[bool]>,
    visit_settled: bool,
    mut visit: impl FnMut(NodeId, NodeId, EdgeId, f64),
) -> SearchTree {
    let n = net.node_count();
    let sign = match cost.mode() {
        Mode::Minimize => 1.0,
        Mode::Maximize => -1.0,
    };
    let init = cost.init_other();
    let mut t = vec![init; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut order = Vec::new();
    t[s.index()] = cost.init_source();
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Entry {
        key: sign * t[s.index()],
        node: s.index() as u32,
    }));
    while let Some(Reverse(Entry { key, node })) = heap.pop() {
        let u = node as usize;
        if done[u] || key != sign * t[u] {
            continue;
        }
        done[u] = true;
        order.push(NodeId::new(u));
        if Some(NodeId::new(u)) == target {
            break;
        }
        for &(v, e) in net.neighbors(NodeId::new(u)) {
            let vi = v.index();
            if (done[vi] && !visit_settled) || mask.is_some_and(|m| m[e.index()]) {
                continue;
            }
            let props = EdgeProps {
                length: net.edge(e).length,
                rate: rates[e.index()],
            };
            let a = cost.tentative(t[u], t[vi], props);
            visit(NodeId::new(u), v, e, a);
            if done[vi] {
                continue;
            }
            if cost.better(a, t[vi]) {
                t[vi] = a;
                parent[vi] = Some(NodeId::new(u));
                heap.push(Reverse(Entry { key: sign * a, node: vi as u32 }));
            }
        }
    }
    SearchTree {
        source: s,
        cost: t,
        parent,
        order,
    }
}

/// Full sweep from `s`.
pub fn dijkstra_tree<C: CostFunction + ?Sized>(net: &Network, rates: &[f64], cost: &C, s: NodeId) -> Result<SearchTree> {
    if s.index() >= net.node_count() {
        return Err(crate::Error::param("source", format!("node {} does not exist", s.index())));
    }
    if rates.len() != net.edge_count() {
        return Err(crate::Error::param("rates", "one rate per edge is required"));
    }
    Ok(explore(net, rates, cost, s, None, None, false, |_, _, _, _| {}))
}

/// Optimal `s → t` route and its cost, or `None` when `t` is unreachable.
pub fn general_dijkstra<C: CostFunction + ?Sized>(
    net: &Network,
    rates: &[f64],
    cost: &C,
    s: NodeId,
    t: NodeId,
) -> Result<Option<(Route, f64)>> {
    general_dijkstra_masked(net, rates, cost, s, t, None)
}

/// As [`general_dijkstra`], skipping every edge flagged in `mask`.
pub fn general_dijkstra_masked<C: CostFunction + ?Sized>(
    net: &Network,
    rates: &[f64],
    cost: &C,
    s: NodeId,
    t: NodeId,
    mask: Option<&[bool]>,
) -> Result<Option<(Route, f64)>> {
    check_pair(net, rates, s, t)?;
    if let Some(m) = mask {
        if m.len() != net.edge_count() {
            return Err(crate::Error::param("mask", "one flag per edge is required"));
        }
    }
    let tree = explore(net, rates, cost, s, Some(t), mask, false, |_, _, _, _| {});
    Ok(tree.route_to(t).map(|r| (r, tree.cost[t.index()])))
}

/// Widest route and its bottleneck; `(None, 0)` for disconnected pairs.
pub fn single_path_rate(net: &Network, rates: &[f64], s: NodeId, t: NodeId) -> Result<(Option<Route>, f64)> {
    Ok(match general_dijkstra(net, rates, &WidestPath, s, t)? {
        Some((route, k)) => (Some(route), k),
        None => (None, 0.0),
    })
}
