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

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("edge ({0}, {1}) is not present in the network")]
    MissingEdge(usize, usize),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid route set: {0}")]
    InvalidRoute(String),

    #[error("source and target must differ (both are node {0})")]
    SameEndpoints(usize),

    #[error("network with {nodes} nodes is too large to enumerate (limit {limit})")]
    TooLarge { nodes: usize, limit: usize },

    #[error("edge {edge} has non-positive rate {rate}")]
    NonPositiveRate { edge: usize, rate: f64 },

    #[error("unphysical covariance matrix: symplectic eigenvalue {nu} < 1 (tau = {tau}, mu = {mu}, nbar = {nbar})")]
    Unphysical { nu: f64, tau: f64, mu: f64, nbar: f64 },

    #[error("format error: {0}")]
    Format(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("{op} is undefined: {reason}")]
    Undefined { op: &'static str, reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable tag used in the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::MissingEdge(..) => "missing_edge",
            Error::InvalidNetwork(_) => "invalid_network",
            Error::InvalidRoute(_) => "invalid_route",
            Error::SameEndpoints(_) => "same_endpoints",
            Error::TooLarge { .. } => "too_large",
            Error::NonPositiveRate { .. } => "non_positive_rate",
            Error::Unphysical { .. } => "unphysical",
            Error::Format(_) => "format",
            Error::Config(_) => "config",
            Error::Undefined { .. } => "undefined",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
