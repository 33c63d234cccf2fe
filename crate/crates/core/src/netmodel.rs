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

//! Geometric network substrate: nodes in a disc, undirected edges, routes
//! and cuts.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lengths are recomputed from positions on load; stored lengths may
/// disagree by at most this much.
pub const LENGTH_TOLERANCE_KM: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn new(index: usize) -> Self {
        EdgeId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Planar position in km.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64) -> Self {
        Position { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

#[inline]
pub fn euclidean_distance(p: Position, q: Position) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub length: f64,
}

impl Edge {
    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable undirected geometric graph inside a disc of radius `radius_km`.
///
/// Edges are kept sorted by `(u, v)` and every adjacency list is sorted by
/// neighbour id, so all iteration orders are deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    radius_km: f64,
    positions: Vec<Position>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
}

impl Network {
    /// Build a network from node positions and unordered index pairs.
    pub fn new(
        radius_km: f64,
        positions: Vec<Position>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if !(radius_km > 0.0 && radius_km.is_finite()) {
            return Err(Error::param("radius_km", format!("must be positive and finite, got {radius_km}")));
        }
        let limit = radius_km * (1.0 + 1e-9);
        for (i, p) in positions.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite()) || p.norm() > limit {
                return Err(Error::InvalidNetwork(format!(
                    "node {i} at ({}, {}) lies outside the disc of radius {radius_km}",
                    p.x, p.y
                )));
            }
        }
        let n = positions.len();
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidNetwork(format!("edge ({a}, {b}) references a missing node")));
            }
            if a == b {
                return Err(Error::InvalidNetwork(format!("self-loop at node {a}")));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidNetwork(format!("duplicate edge ({}, {})", w[0].0, w[0].1)));
        }
        let mut edges = Vec::with_capacity(canon.len());
        for (a, b) in canon {
            let length = euclidean_distance(positions[a], positions[b]);
            if !(length > 0.0) {
                return Err(Error::InvalidNetwork(format!("edge ({a}, {b}) has zero length")));
            }
            edges.push(Edge {
                u: NodeId::new(a),
                v: NodeId::new(b),
                length,
            });
        }
        Ok(Self::from_sorted_edges(radius_km, positions, edges))
    }

    /// Network over the given nodes with no edges.
    pub fn edgeless(radius_km: f64, positions: Vec<Position>) -> Result<Self> {
        Self::new(radius_km, positions, std::iter::empty())
    }

    /// `edges` must already be canonical (`u < v`), sorted and duplicate-free.
    pub(crate) fn from_sorted_edges(radius_km: f64, positions: Vec<Position>, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| (w[0].u, w[0].v) < (w[1].u, w[1].v)));
        let mut adjacency = vec![Vec::new(); positions.len()];
        for (i, e) in edges.iter().enumerate() {
            let id = EdgeId::new(i);
            adjacency[e.u.index()].push((e.v, id));
            adjacency[e.v.index()].push((e.u, id));
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(nb, _)| nb);
        }
        Network {
            radius_km,
            positions,
            edges,
            adjacency,
        }
    }

    pub fn radius_km(&self) -> f64 {
        self.radius_km
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Nodes per km², `N / (π R²)`.
    pub fn density(&self) -> f64 {
        self.node_count() as f64 / (std::f64::consts::PI * self.radius_km * self.radius_km)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::new)
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn position(&self, x: NodeId) -> Position {
        self.positions[x.index()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.index()]
    }

    /// Neighbours of `x` with the connecting edge, sorted by neighbour id.
    pub fn neighbors(&self, x: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[x.index()]
    }

    pub fn degree(&self, x: NodeId) -> usize {
        self.adjacency[x.index()].len()
    }

    pub fn edge_between(&self, x: NodeId, y: NodeId) -> Option<EdgeId> {
        let list = self.adjacency.get(x.index())?;
        list.binary_search_by_key(&y, |&(nb, _)| nb)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn distance(&self, x: NodeId, y: NodeId) -> f64 {
        euclidean_distance(self.position(x), self.position(y))
    }

    /// Connected-component label per node; labels are dense and assigned in
    /// order of each component's smallest node.
    pub fn component_labels(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adjacency[x] {
                    if label[y.index()] == usize::MAX {
                        label[y.index()] = next;
                        queue.push_back(y.index());
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Hop distance from `s` to every node (`None` when unreachable).
    pub fn hop_distances(&self, s: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[s.index()] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x.index()].unwrap();
            for &(y, _) in self.neighbors(x) {
                if dist[y.index()].is_none() {
                    dist[y.index()] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn to_document(&self) -> NetworkDocument {
        NetworkDocument {
            radius_km: self.radius_km,
            nodes: self.positions.iter().map(|p| [p.x, p.y]).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeEntry::Pair([e.u.index(), e.v.index()]))
                .collect(),
        }
    }

    pub fn from_document(doc: &NetworkDocument) -> Result<Self> {
        let positions: Vec<Position> = doc.nodes.iter().map(|&[x, y]| Position::new(x, y)).collect();
        let pairs: Vec<(usize, usize)> = doc.edges.iter().map(EdgeEntry::endpoints).collect();
        let net = Network::new(doc.radius_km, positions, pairs).map_err(|e| Error::Format(e.to_string()))?;
        for entry in &doc.edges {
            if let EdgeEntry::WithLength(a, b, stored) = *entry {
                let actual = net.distance(NodeId::new(a), NodeId::new(b));
                if (actual - stored).abs() > LENGTH_TOLERANCE_KM {
                    return Err(Error::Format(format!(
                        "edge ({a}, {b}) stores length {stored} km but its endpoints are {actual} km apart"
                    )));
                }
            }
        }
        Ok(net)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: NetworkDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// On-disk network format. Edge lengths are always recomputed from positions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkDocument {
    pub radius_km: f64,
    pub nodes: Vec<[f64; 2]>,
    pub edges: Vec<EdgeEntry>,
}

/// `[u, v]`, or `[u, v, length_km]` when a stored length should be checked.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeEntry {
    Pair([usize; 2]),
    WithLength(usize, usize, f64),
}

impl EdgeEntry {
    fn endpoints(&self) -> (usize, usize) {
        match *self {
            EdgeEntry::Pair([a, b]) => (a, b),
            EdgeEntry::WithLength(a, b, _) => (a, b),
        }
    }
}

/// Network over the same nodes keeping only the edges in `keep`.
///
/// Edge ids are renumbered; see [`subnetwork_with_map`] to recover the
/// correspondence.
pub fn subnetwork(net: &Network, keep: impl IntoIterator<Item = EdgeId>) -> Result<Network> {
    subnetwork_with_map(net, keep).map(|(sub, _)| sub)
}

/// Like [`subnetwork`], also returning the original id of every kept edge
/// (indexed by the new id).
pub fn subnetwork_with_map(net: &Network, keep: impl IntoIterator<Item = EdgeId>) -> Result<(Network, Vec<EdgeId>)> {
    let mut ids = Vec::new();
    for id in keep {
        if id.index() >= net.edge_count() {
            return Err(Error::InvalidNetwork(format!("edge id {} is not part of the network", id.0)));
        }
        ids.push(id);
    }
    ids.sort_unstable();
    ids.dedup();
    let edges = ids.iter().map(|&id| *net.edge(id)).collect();
    let sub = Network::from_sorted_edges(net.radius_km, net.positions.clone(), edges);
    Ok((sub, ids))
}

/// Ordered hop list `[(a, x1), (x1, x2), …, (xk, b)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Route {
    hops: Vec<(NodeId, NodeId)>,
}

impl Route {
    pub fn from_hops(hops: Vec<(NodeId, NodeId)>) -> Self {
        Route { hops }
    }

    /// Route visiting `nodes` in order. Fewer than two nodes gives an empty route.
    pub fn from_nodes(nodes: &[NodeId]) -> Self {
        Route {
            hops: nodes.windows(2).map(|w| (w[0], w[1])).collect(),
        }
    }

    pub fn hops(&self) -> &[(NodeId, NodeId)] {
        &self.hops
    }

    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    pub fn source(&self) -> Option<NodeId> {
        self.hops.first().map(|h| h.0)
    }

    pub fn target(&self) -> Option<NodeId> {
        self.hops.last().map(|h| h.1)
    }

    /// Visited nodes in order, assuming consecutive hops chain.
    pub fn nodes(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.hops.len() + 1);
        if let Some(&(a, _)) = self.hops.first() {
            out.push(a);
        }
        out.extend(self.hops.iter().map(|h| h.1));
        out
    }

    pub fn edge_ids(&self, net: &Network) -> Result<Vec<EdgeId>> {
        self.hops
            .iter()
            .map(|&(x, y)| net.edge_between(x, y).ok_or(Error::MissingEdge(x.index(), y.index())))
            .collect()
    }

    /// Smallest edge rate along the route; `None` for an empty route or one
    /// using an edge absent from `net`.
    pub fn bottleneck(&self, net: &Network, rates: &[f64]) -> Option<f64> {
        let ids = self.edge_ids(net).ok()?;
        ids.iter().map(|id| rates[id.index()]).reduce(f64::min)
    }
}

/// True iff `route` is a non-empty chain of existing edges without repeated nodes.
pub fn validate_route(net: &Network, route: &Route) -> bool {
    let hops = route.hops();
    if hops.is_empty() {
        return false;
    }
    if hops.windows(2).any(|w| w[0].1 != w[1].0) {
        return false;
    }
    if hops.iter().any(|&(x, y)| net.edge_between(x, y).is_none()) {
        return false;
    }
    let nodes = route.nodes();
    let mut seen = BTreeSet::new();
    nodes.iter().all(|x| seen.insert(*x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disjointness {
    Edge,
    Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteSet {
    pub source: NodeId,
    pub target: NodeId,
    pub routes: Vec<Route>,
}

impl RouteSet {
    pub fn new(source: NodeId, target: NodeId) -> Self {
        RouteSet {
            source,
            target,
            routes: Vec::new(),
        }
    }

    pub fn with_routes(source: NodeId, target: NodeId, routes: Vec<Route>) -> Self {
        RouteSet { source, target, routes }
    }

    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routes.is_empty()
    }

    /// Union of route edges (the routing edge set).
    pub fn edge_set(&self, net: &Network) -> Result<BTreeSet<EdgeId>> {
        let mut set = BTreeSet::new();
        for r in &self.routes {
            set.extend(r.edge_ids(net)?);
        }
        Ok(set)
    }

    /// Every route valid in `net` and running from `source` to `target`.
    pub fn validate(&self, net: &Network) -> Result<()> {
        for (i, r) in self.routes.iter().enumerate() {
            if !validate_route(net, r) {
                return Err(Error::InvalidRoute(format!("route {i} is not a simple path of the network")));
            }
            if r.source() != Some(self.source) || r.target() != Some(self.target) {
                return Err(Error::InvalidRoute(format!(
                    "route {i} does not run from {} to {}",
                    self.source, self.target
                )));
            }
        }
        Ok(())
    }

    pub fn is_edge_disjoint(&self, net: &Network) -> bool {
        let mut seen = BTreeSet::new();
        self.routes.iter().all(|r| match r.edge_ids(net) {
            Ok(ids) => ids.into_iter().all(|id| seen.insert(id)),
            Err(_) => false,
        })
    }

    /// No intermediate node shared by two routes; also edge-disjoint, which
    /// only matters for a direct source–target edge.
    pub fn is_node_disjoint(&self, net: &Network) -> bool {
        let mut seen = BTreeSet::new();
        let inner_ok = self.routes.iter().all(|r| {
            let nodes = r.nodes();
            nodes.len() < 2 || nodes[1..nodes.len() - 1].iter().all(|x| seen.insert(*x))
        });
        inner_ok && self.is_edge_disjoint(net)
    }

    pub fn is_disjoint(&self, net: &Network, mode: Disjointness) -> bool {
        match mode {
            Disjointness::Edge => self.is_edge_disjoint(net),
            Disjointness::Node => self.is_node_disjoint(net),
        }
    }
}

/// Bipartition `(P_a, P_b)` with its crossing edges.
#[derive(Clone, Debug, PartialEq)]
pub struct CutSet {
    pub source_side: Vec<NodeId>,
    pub sink_side: Vec<NodeId>,
    pub cut_edges: Vec<EdgeId>,
}

impl CutSet {
    /// Cut whose source side is the set flagged in `in_source`.
    pub fn from_partition(net: &Network, in_source: &[bool]) -> Self {
        let mut source_side = Vec::new();
        let mut sink_side = Vec::new();
        for x in net.nodes() {
            if in_source[x.index()] {
                source_side.push(x);
            } else {
                sink_side.push(x);
            }
        }
        let cut_edges = net
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| in_source[e.u.index()] != in_source[e.v.index()])
            .map(|(i, _)| EdgeId::new(i))
            .collect();
        CutSet {
            source_side,
            sink_side,
            cut_edges,
        }
    }

    pub fn rate(&self, rates: &[f64]) -> f64 {
        self.cut_edges.iter().map(|id| rates[id.index()]).sum()
    }

    /// Checks every cut invariant against `net` for the pair `(a, b)`.
    pub fn is_valid_for(&self, net: &Network, a: NodeId, b: NodeId) -> bool {
        let n = net.node_count();
        if self.source_side.len() + self.sink_side.len() != n {
            return false;
        }
        let mut side = vec![None; n];
        for &x in &self.source_side {
            side[x.index()] = Some(true);
        }
        for &x in &self.sink_side {
            if side[x.index()].is_some() {
                return false;
            }
            side[x.index()] = Some(false);
        }
        if side[a.index()] != Some(true) || side[b.index()] != Some(false) {
            return false;
        }
        let in_source: Vec<bool> = side.iter().map(|s| s.unwrap_or(false)).collect();
        let expected = CutSet::from_partition(net, &in_source).cut_edges;
        if expected != self.cut_edges {
            return false;
        }
        let remaining = net.edges().len() - self.cut_edges.len();
        let cut: BTreeSet<EdgeId> = self.cut_edges.iter().copied().collect();
        let keep = (0..net.edge_count()).map(EdgeId::new).filter(|id| !cut.contains(id));
        let sub = match subnetwork(net, keep) {
            Ok(s) => s,
            Err(_) => return false,
        };
        debug_assert_eq!(sub.edge_count(), remaining);
        sub.hop_distances(a)[b.index()].is_none()
    }
}
