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

//! End-to-end route finding: the generalised Dijkstra family, the one-shot
//! multiple-disjoint-path algorithm with the inverse-accumulated-rate cost,
//! iterative disjoint widest paths, and protocol drivers.

mod dijkstra;
mod iterative;
mod mdp;
mod protocol;

pub use dijkstra::{
    dijkstra_tree, general_dijkstra, general_dijkstra_masked, single_path_rate, CostFunction, EdgeProps,
    InverseAccumulatedRate, MinHops, Mode, SearchTree, ShortestLength, WidestPath,
};
pub use iterative::iterative_disjoint_dijkstra;
pub use mdp::{
    mdp_explore, mdp_explore_scoped, mdp_reconstruct, CostEntry, CostMatrix, DeadEnd, IarParams, MatrixScope, Reconstruction,
    StopRule,
};
pub use protocol::{run_protocol, ProtocolKind, ProtocolOutcome, ProtocolSpec, Routing};

use crate::error::{Error, Result};
use crate::netmodel::{Network, NodeId};

pub(crate) fn check_pair(net: &Network, rates: &[f64], s: NodeId, t: NodeId) -> Result<()> {
    if s == t {
        return Err(Error::SameEndpoints(s.index()));
    }
    let n = net.node_count();
    for x in [s, t] {
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
    Ok(())
}
