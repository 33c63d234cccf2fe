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

use super::critical::CriticalEstimate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    Undetermined,
}

/// Densities in `[lower, upper)`; `None` bounds are open.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseInterval {
    pub phase: Phase,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTable {
    pub intervals: Vec<PhaseInterval>,
    /// At least one boundary is a censoring bound rather than a value.
    pub censored: bool,
    pub data_error: Option<String>,
}

impl PhaseTable {
    pub fn phases(&self) -> Vec<Phase> {
        self.intervals.iter().map(|i| i.phase).collect()
    }

    fn undetermined(censored: bool, data_error: Option<String>) -> Self {
        PhaseTable {
            intervals: vec![PhaseInterval {
                phase: Phase::Undetermined,
                lower: None,
                upper: None,
            }],
            censored,
            data_error,
        }
    }
}

/// Critical densities feeding the phase table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalSet {
    pub giant: CriticalEstimate,
    pub flooding: CriticalEstimate,
    pub consumption: CriticalEstimate,
    pub mdp_rate_target: CriticalEstimate,
    pub single_path: CriticalEstimate,
}

/// Phase boundaries from the ordered critical densities
/// `rho_G <= rho_fl <= rho_mdp <= rho_sp`, with the consumption peak
/// splitting phase II (into II, III) or IV (into IV, V).
pub fn classify_phases(c: &CriticalSet) -> PhaseTable {
    let all = [c.giant, c.flooding, c.consumption, c.mdp_rate_target, c.single_path];
    let censored = all.iter().any(|e| e.is_censored());
    if all.iter().all(|e| e.is_censored()) {
        return PhaseTable::undetermined(true, None);
    }
    let (Some(g), Some(fl), Some(mdp), Some(sp)) = (
        c.giant.bound(),
        c.flooding.bound(),
        c.mdp_rate_target.bound(),
        c.single_path.bound(),
    ) else {
        return PhaseTable::undetermined(censored, Some("a required critical density is undetermined".into()));
    };
    if !(g <= fl && fl <= mdp && mdp <= sp) {
        return PhaseTable::undetermined(
            censored,
            Some(format!(
                "critical densities out of order: giant {g}, flooding {fl}, mdp {mdp}, single-path {sp}"
            )),
        );
    }
    let mut bounds: Vec<(Phase, f64)> = vec![(Phase::II, g)];
    let tilde = c.consumption.bound();
    if let Some(t) = tilde.filter(|t| g <= *t && *t < fl) {
        bounds.push((Phase::III, t));
    }
    bounds.push((Phase::IV, fl));
    if let Some(t) = tilde.filter(|t| fl <= *t && *t < mdp) {
        bounds.push((Phase::V, t));
    }
    bounds.push((Phase::VI, mdp));
    bounds.push((Phase::VII, sp));
    let mut intervals = vec![PhaseInterval {
        phase: Phase::I,
        lower: None,
        upper: Some(g),
    }];
    for (k, &(phase, lo)) in bounds.iter().enumerate() {
        intervals.push(PhaseInterval {
            phase,
            lower: Some(lo),
            upper: bounds.get(k + 1).map(|b| b.1),
        });
    }
    PhaseTable {
        intervals,
        censored,
        data_error: None,
    }
}
