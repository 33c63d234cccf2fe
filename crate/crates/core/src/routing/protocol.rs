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
use super::dijkstra::single_path_rate;
use super::iterative::iterative_disjoint_dijkstra;
use super::mdp::{mdp_explore_scoped, mdp_reconstruct, DeadEnd, IarParams, MatrixScope, StopRule};
use crate::error::{Error, Result};
use crate::flow::{protocol_rate, Forwarding};
use crate::netmodel::{Disjointness, Network, NodeId, RouteSet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolKind {
    Flooding,
    SinglePath,
    MdpFixedM(usize),
    MdpRateTarget(f64),
    IterDijkstraFixedM(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolSpec {
    pub kind: ProtocolKind,
    pub disjointness: Disjointness,
    pub iar: IarParams,
    #[serde(default)]
    pub scope: MatrixScope,
    #[serde(default)]
    pub dead_end: DeadEnd,
}

impl ProtocolSpec {
    pub fn new(kind: ProtocolKind) -> Self {
        ProtocolSpec {
            kind,
            disjointness: Disjointness::Edge,
            iar: IarParams::default(),
            scope: MatrixScope::default(),
            dead_end: DeadEnd::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            ProtocolKind::MdpFixedM(0) | ProtocolKind::IterDijkstraFixedM(0) => {
                return Err(Error::param("M", "must be at least 1"))
            }
            ProtocolKind::MdpRateTarget(r) if !(r > 0.0 && r.is_finite()) => {
                return Err(Error::param("rate_target", format!("must be positive, got {r}")))
            }
            _ => {}
        }
        self.iar.validate()
    }

    /// Short identifier used in result tables.
    pub fn label(&self) -> String {
        let suffix = match self.disjointness {
            Disjointness::Edge => "",
            Disjointness::Node => "_node",
        };
        match self.kind {
            ProtocolKind::Flooding => "flooding".into(),
            ProtocolKind::SinglePath => "single_path".into(),
            ProtocolKind::MdpFixedM(m) => format!("mdp_fixed_{m}{suffix}"),
            ProtocolKind::MdpRateTarget(r) => format!("mdp_rate_target_{r}{suffix}"),
            ProtocolKind::IterDijkstraFixedM(m) => format!("iter_dijkstra_{m}{suffix}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Routing {
    Flooding,
    Routes(RouteSet),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolOutcome {
    pub routing: Routing,
    pub rate: f64,
    /// Number of distinct edges the protocol uses.
    pub consumption_edges: usize,
    /// Fewer routes than requested, or a rate target left unmet.
    pub shortfall: bool,
}

/// Evaluate one protocol for the pair `(s, t)`.
pub fn run_protocol(net: &Network, rates: &[f64], s: NodeId, t: NodeId, spec: &ProtocolSpec) -> Result<ProtocolOutcome> {
    spec.validate()?;
    check_pair(net, rates, s, t)?;
    let routed = |routes: RouteSet, shortfall: bool, rate: Option<f64>| -> Result<ProtocolOutcome> {
        let consumption_edges = routes.edge_set(net)?.len();
        let rate = match rate {
            Some(k) => k,
            None if routes.is_empty() => 0.0,
            None => protocol_rate(net, rates, s, t, Forwarding::Routes(&routes))?,
        };
        Ok(ProtocolOutcome {
            routing: Routing::Routes(routes),
            rate,
            consumption_edges,
            shortfall,
        })
    };
    match spec.kind {
        ProtocolKind::Flooding => Ok(ProtocolOutcome {
            routing: Routing::Flooding,
            rate: protocol_rate(net, rates, s, t, Forwarding::Flooding)?,
            consumption_edges: net.edge_count(),
            shortfall: false,
        }),
        ProtocolKind::SinglePath => {
            let (route, k) = single_path_rate(net, rates, s, t)?;
            let shortfall = route.is_none();
            let set = RouteSet::with_routes(s, t, route.into_iter().collect());
            routed(set, shortfall, Some(k))
        }
        ProtocolKind::MdpFixedM(m) => {
            let matrix = mdp_explore_scoped(net, rates, &spec.iar, s, spec.scope)?;
            let r = mdp_reconstruct(&matrix, net, rates, t, StopRule::FixedM(m), spec.disjointness, spec.dead_end)?;
            routed(r.routes, r.shortfall, None)
        }
        ProtocolKind::MdpRateTarget(target) => {
            let matrix = mdp_explore_scoped(net, rates, &spec.iar, s, spec.scope)?;
            let r = mdp_reconstruct(&matrix, net, rates, t, StopRule::RateTarget(target), spec.disjointness, spec.dead_end)?;
            routed(r.routes, r.shortfall, r.rate)
        }
        ProtocolKind::IterDijkstraFixedM(m) => {
            let set = iterative_disjoint_dijkstra(net, rates, s, t, m, spec.disjointness)?;
            let shortfall = set.len() < m;
            routed(set, shortfall, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::Position;

    #[test]
    fn flooding_uses_every_edge() {
        let pos: Vec<Position> = (0..4).map(|i| Position::new(i as f64, (i % 2) as f64)).collect();
        let net = Network::new(10.0, pos, [(0, 1), (2, 3)]).unwrap();
        let out = run_protocol(&net, &[0.5, 0.5], NodeId::new(0), NodeId::new(3), &ProtocolSpec::new(ProtocolKind::Flooding))
            .unwrap();
        assert_eq!(out.consumption_edges, 2);
        assert_eq!(out.rate, 0.0);
        for kind in [ProtocolKind::SinglePath, ProtocolKind::MdpFixedM(2), ProtocolKind::MdpRateTarget(1.0)] {
            let out = run_protocol(&net, &[0.5, 0.5], NodeId::new(0), NodeId::new(3), &ProtocolSpec::new(kind)).unwrap();
            assert_eq!((out.rate, out.consumption_edges), (0.0, 0));
        }
    }

    #[test]
    fn single_path_on_path_graph() {
        let pos: Vec<Position> = (0..5).map(|i| Position::new(i as f64, 0.0)).collect();
        let net = Network::new(10.0, pos, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let rates = [0.9, 0.4, 0.7, 0.8];
        let out = run_protocol(&net, &rates, NodeId::new(0), NodeId::new(4), &ProtocolSpec::new(ProtocolKind::SinglePath))
            .unwrap();
        assert_eq!(out.consumption_edges, 4);
        assert_eq!(out.rate, 0.4);
    }

    #[test]
    fn rejects_invalid_spec() {
        let pos: Vec<Position> = (0..2).map(|i| Position::new(i as f64, 0.0)).collect();
        let net = Network::new(10.0, pos, [(0, 1)]).unwrap();
        for kind in [ProtocolKind::MdpFixedM(0), ProtocolKind::MdpRateTarget(-1.0), ProtocolKind::IterDijkstraFixedM(0)] {
            assert!(run_protocol(&net, &[0.5], NodeId::new(0), NodeId::new(1), &ProtocolSpec::new(kind)).is_err());
        }
    }
}
