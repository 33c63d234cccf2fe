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

//! Simulation of end-to-end routing over random optical-fiber quantum networks.
//!
//! The crate is organised bottom-up:
//!
//! * [`netmodel`] – geometric graphs, routes and cuts;
//! * [`linkrate`] – point-to-point rate models (thermal-loss bounds, CV-QKD);
//! * [`netgen`] – Waxman and distance-aware scale-free generators, rate pruning;
//! * [`flow`] – max-flow / min-cut end-to-end rates;
//! * [`routing`] – generalised Dijkstra, multi-path reconstruction and protocol drivers;
//! * [`metrics`] – ensembles, critical densities and network phases;
//! * [`experiment`] – JSON-configured sweeps with CSV/JSON output.
//!
//! Ensemble work is spread over a rayon pool when the `parallel` feature is
//! enabled (the default); otherwise every task runs on the calling thread.
//! Results are identical either way.

pub mod error;
pub mod exec;
pub mod experiment;
pub mod flow;
pub mod linkrate;
pub mod metrics;
pub mod netgen;
pub mod netmodel;
pub mod routing;
pub mod seed;

pub use error::{Error, Result};
pub use netmodel::{Edge, EdgeId, Network, NodeId, Position, Route, RouteSet};
