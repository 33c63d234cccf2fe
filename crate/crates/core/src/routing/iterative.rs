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

use super::check_pair;
use super::dijkstra::{general_dijkstra_masked, WidestPath};
use crate::error::{Error, Result};
use crate::netmodel::{Disjointness, Network, NodeId, RouteSet};

/// Up to `m` disjoint widest routes, each found on the network left after
/// removing the edges of earlier routes (or, for node-disjoint sets, every
/// edge touching their intermediate nodes).
pub fn iterative_disjoint_dijkstra(
    net: &Network,
    rates: &[f64],
    s: NodeId,
    t: NodeId,
    m: usize,
    disjointness: Disjointness,
) -> Result<RouteSet> {
    check_pair(net, rates, s, t)?;
    if m < 1 {
        return Err(Error::param("M", format!("must be at least 1, got {m}")));
    }
    let mut mask = vec![false; net.edge_count()];
    let mut set = RouteSet::new(s, t);
    while set.len() < m {
        let Some((route, _)) = general_dijkstra_masked(net, rates, &WidestPath, s, t, Some(&mask))? else {
            break;
        };
        for e in route.edge_ids(net)? {
            mask[e.index()] = true;
        }
        if disjointness == Disjointness::Node {
            let nodes = route.nodes();
            for &x in &nodes[1..nodes.len() - 1] {
                for &(_, e) in net.neighbors(x) {
                    mask[e.index()] = true;
                }
            }
        }
        set.routes.push(route);
    }
    Ok(set)
}
