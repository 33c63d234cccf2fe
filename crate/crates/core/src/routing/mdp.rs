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

use serde::{Deserialize, Serialize};

use super::check_pair;
use super::dijkstra::{explore, InverseAccumulatedRate};
use crate::error::{Error, Result};
use crate::flow::max_flow_value_on;
use crate::netmodel::{Disjointness, EdgeId, Network, NodeId, Route, RouteSet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IarParams {
    /// Inverse-rate exponent.
    pub eta: f64,
    /// Per-edge usage penalty.
    pub epsilon: f64,
}

impl Default for IarParams {
    fn default() -> Self {
        IarParams { eta: 5.0, epsilon: 1.0 }
    }
}

impl IarParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return Err(Error::param("iar_eta", format!("must be non-negative, got {}", self.eta)));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(Error::param("iar_epsilon", format!("must be non-negative, got {}", self.epsilon)));
        }
        Ok(())
    }

    pub fn cost(&self) -> InverseAccumulatedRate {
        InverseAccumulatedRate {
            eta: self.eta,
            epsilon: self.epsilon,
        }
    }
}

/// Stored aggregated cost of reaching a node through neighbour `via`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostEntry {
    pub via: NodeId,
    pub edge: EdgeId,
    pub cost: f64,
}

/// Tentative cost matrix of one exploration sweep.
///
/// `diagonal(x)` is the optimal cost from the source to `x`; `entries(v)`
/// holds `T_uv` for every relaxation `u → v` attempted while `v` was
/// unsettled, sorted by `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    source: NodeId,
    diagonal: Vec<f64>,
    parent: Vec<Option<NodeId>>,
    incoming: Vec<Vec<CostEntry>>,
}

impl CostMatrix {
    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn node_count(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self, x: NodeId) -> f64 {
        self.diagonal[x.index()]
    }

    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        self.parent[x.index()]
    }

    pub fn entries(&self, v: NodeId) -> &[CostEntry] {
        &self.incoming[v.index()]
    }

    /// `T_uv`, if stored.
    pub fn entry(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let row = &self.incoming[v.index()];
        row.binary_search_by_key(&u, |c| c.via).ok().map(|i| row[i].cost)
    }
}

/// Which relaxations an exploration sweep records.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixScope {
    /// Only relaxations towards nodes still in the queue.
    Unsettled,
    /// Every edge out of each settled node, including edges back to nodes
    /// settled earlier.
    #[default]
    AllNeighbours,
}

/// Single exploration sweep from `s` under the IAR cost.
pub fn mdp_explore(net: &Network, rates: &[f64], iar: &IarParams, s: NodeId) -> Result<CostMatrix> {
    mdp_explore_scoped(net, rates, iar, s, MatrixScope::default())
}

pub fn mdp_explore_scoped(net: &Network, rates: &[f64], iar: &IarParams, s: NodeId, scope: MatrixScope) -> Result<CostMatrix> {
    iar.validate()?;
    if s.index() >= net.node_count() {
        return Err(Error::param("source", format!("node {} does not exist", s.index())));
    }
    if rates.len() != net.edge_count() {
        return Err(Error::param("rates", "one rate per edge is required"));
    }
    if let Some((i, &r)) = rates.iter().enumerate().find(|(_, r)| !(**r > 0.0)) {
        return Err(Error::NonPositiveRate { edge: i, rate: r });
    }
    let cost = iar.cost();
    let mut incoming: Vec<Vec<CostEntry>> = vec![Vec::new(); net.node_count()];
    let tree = explore(net, rates, &cost, s, None, None, scope == MatrixScope::AllNeighbours, |u, v, e, a| {
        incoming[v.index()].push(CostEntry { via: u, edge: e, cost: a });
    });
    for row in &mut incoming {
        row.sort_unstable_by_key(|c| c.via);
    }
    Ok(CostMatrix {
        source: s,
        diagonal: tree.cost,
        parent: tree.parent,
        incoming,
    })
}

/// What reconstruction does at a node without admissible entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeadEnd {
    /// Step back and try the next-cheapest admissible entry, depth first;
    /// reconstruction ends only when no route remains.
    #[default]
    Retreat,
    /// Drop the partial route and end reconstruction.
    Stop,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum StopRule {
    FixedM(usize),
    /// Stop once the route set reaches this end-to-end rate.
    RateTarget(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    pub routes: RouteSet,
    /// End-to-end rate of the returned set, computed for rate targets only.
    pub rate: Option<f64>,
    /// Fewer than `M` routes, or the rate target was not reached.
    pub shortfall: bool,
}

/// Backtrack disjoint routes from `t` to the matrix source.
///
/// Each step moves to the admissible neighbour with the smallest stored
/// cost, ties to the smallest id, never re-entering a node of the route
/// being built. Entries along used edges (and, for node-disjoint sets,
/// edges touching used intermediate nodes) are inadmissible.
pub fn mdp_reconstruct(
    matrix: &CostMatrix,
    net: &Network,
    rates: &[f64],
    t: NodeId,
    stop: StopRule,
    disjointness: Disjointness,
    dead_end: DeadEnd,
) -> Result<Reconstruction> {
    let s = matrix.source;
    check_pair(net, rates, s, t)?;
    if matrix.node_count() != net.node_count() {
        return Err(Error::param("matrix", "cost matrix belongs to a different network"));
    }
    let limit = match stop {
        StopRule::FixedM(m) if m >= 1 => m,
        StopRule::FixedM(m) => return Err(Error::param("M", format!("must be at least 1, got {m}"))),
        StopRule::RateTarget(r) if r > 0.0 && r.is_finite() => usize::MAX,
        StopRule::RateTarget(r) => return Err(Error::param("rate_target", format!("must be positive, got {r}"))),
    };
    let mut blocked = vec![false; net.edge_count()];
    let mut on_route = vec![false; net.node_count()];
    let mut routes = RouteSet::new(s, t);
    let mut used: Vec<EdgeId> = Vec::new();
    let mut rate = None;
    let mut reached = false;
    while routes.len() < limit {
        let attempt = match dead_end {
            DeadEnd::Retreat => backtrack_retreat(matrix, t, &blocked),
            DeadEnd::Stop => backtrack(matrix, t, &blocked, &mut on_route),
        };
        let Some((nodes, edges)) = attempt else {
            break;
        };
        for &e in &edges {
            blocked[e.index()] = true;
        }
        if disjointness == Disjointness::Node {
            for &x in &nodes[1..nodes.len() - 1] {
                for &(_, e) in net.neighbors(x) {
                    blocked[e.index()] = true;
                }
            }
        }
        used.extend_from_slice(&edges);
        routes.routes.push(Route::from_nodes(&nodes));
        if let StopRule::RateTarget(target) = stop {
            let k = max_flow_value_on(net, rates, &used, s, t)?;
            rate = Some(k);
            if k >= target {
                reached = true;
                break;
            }
        }
    }
    let shortfall = match stop {
        StopRule::FixedM(m) => routes.len() < m,
        StopRule::RateTarget(_) => {
            if rate.is_none() {
                rate = Some(0.0);
            }
            !reached
        }
    };
    Ok(Reconstruction { routes, rate, shortfall })
}

/// One greedy route from `t` back to the source, as nodes source-first
/// plus edges; `None` at the first dead end.
fn backtrack(
    matrix: &CostMatrix,
    t: NodeId,
    blocked: &[bool],
    on_route: &mut [bool],
) -> Option<(Vec<NodeId>, Vec<EdgeId>)> {
    let mut nodes = vec![t];
    let mut edges = Vec::new();
    on_route[t.index()] = true;
    let mut x = t;
    let mut found = true;
    while x != matrix.source {
        let mut best: Option<CostEntry> = None;
        for c in matrix.entries(x) {
            if blocked[c.edge.index()] || on_route[c.via.index()] || !c.cost.is_finite() {
                continue;
            }
            // entries are sorted by `via`, so strict comparison keeps the smallest id
            if best.map_or(true, |b| c.cost < b.cost) {
                best = Some(*c);
            }
        }
        let Some(step) = best else {
            found = false;
            break;
        };
        on_route[step.via.index()] = true;
        nodes.push(step.via);
        edges.push(step.edge);
        x = step.via;
    }
    for y in &nodes {
        on_route[y.index()] = false;
    }
    if !found {
        return None;
    }
    nodes.reverse();
    edges.reverse();
    Some((nodes, edges))
}

/// Depth-first variant of [`backtrack`]: at a dead end the search steps
/// back and tries the next entry. Nodes that failed stay closed for the
/// rest of this route.
fn backtrack_retreat(matrix: &CostMatrix, t: NodeId, blocked: &[bool]) -> Option<(Vec<NodeId>, Vec<EdgeId>)> {
    struct Frame {
        node: NodeId,
        via_edge: Option<EdgeId>,
        options: Vec<CostEntry>,
        next: usize,
    }
    let mut closed = vec![false; matrix.node_count()];
    let options = |x: NodeId, closed: &[bool]| {
        let mut c: Vec<CostEntry> = matrix
            .entries(x)
            .iter()
            .filter(|c| !blocked[c.edge.index()] && !closed[c.via.index()] && c.cost.is_finite())
            .copied()
            .collect();
        c.sort_by(|a, b| a.cost.total_cmp(&b.cost).then(a.via.cmp(&b.via)));
        c
    };
    closed[t.index()] = true;
    let mut stack = vec![Frame {
        node: t,
        via_edge: None,
        options: options(t, &closed),
        next: 0,
    }];
    loop {
        let top = stack.last_mut()?;
        if top.node == matrix.source {
            break;
        }
        let Some(&c) = top.options.get(top.next) else {
            stack.pop();
            continue;
        };
        top.next += 1;
        if closed[c.via.index()] {
            continue;
        }
        closed[c.via.index()] = true;
        stack.push(Frame {
            node: c.via,
            via_edge: Some(c.edge),
            options: options(c.via, &closed),
            next: 0,
        });
    }
    let nodes = stack.iter().rev().map(|f| f.node).collect();
    let edges = stack.iter().rev().filter_map(|f| f.via_edge).collect();
    Some((nodes, edges))
}
