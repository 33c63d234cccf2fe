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

//! Ensemble statistics, connectivity measures, critical densities and
//! network phases.

mod critical;
mod ensemble;
mod phases;

pub use critical::{critical_density_consumption, critical_density_performance, ConsumptionPeak, CriticalEstimate};
pub use ensemble::{
    amplification, ensemble_evaluate, ensemble_evaluate_many, sweep_evaluate, Amplification, EnsembleConfig,
    EnsembleReport, EnsembleResult, NetworkClass, PairSample, PairSampling,
};
pub use phases::{classify_phases, CriticalSet, Phase, PhaseInterval, PhaseTable};

use crate::netmodel::Network;

/// Share of nodes in the largest connected component.
pub fn giant_component_fraction(net: &Network) -> f64 {
    let n = net.node_count();
    if n == 0 {
        return 0.0;
    }
    let labels = net.component_labels();
    let mut sizes = vec![0usize; labels.iter().max().map_or(0, |m| m + 1)];
    for l in labels {
        sizes[l] += 1;
    }
    *sizes.iter().max().unwrap_or(&0) as f64 / n as f64
}

/// `2|E| / N`.
pub fn average_degree(net: &Network) -> f64 {
    if net.node_count() == 0 {
        return 0.0;
    }
    2.0 * net.edge_count() as f64 / net.node_count() as f64
}

/// Mean and standard error of the mean (0 for a single sample).
pub(crate) fn mean_se(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    if x.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = x.iter().sum::<f64>() / n;
    if x.len() < 2 {
        return (mean, 0.0);
    }
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
