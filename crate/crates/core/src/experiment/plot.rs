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

use std::fmt;
use std::str::FromStr;

use super::run::ResultRecord;
use crate::error::{Error, Result};
use crate::linkrate::{CvQkdParams, FiberParams, RateModel};

/// Distance grid for `rate_vs_distance`, in km.
pub const DISTANCE_GRID: std::ops::RangeInclusive<u32> = 1..=200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlotKind {
    RateVsDensity,
    ConsumptionVsDensity,
    RateVsDistance,
    DegreeVsDensity,
}

impl PlotKind {
    pub const ALL: [PlotKind; 4] = [
        PlotKind::RateVsDensity,
        PlotKind::ConsumptionVsDensity,
        PlotKind::RateVsDistance,
        PlotKind::DegreeVsDensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlotKind::RateVsDensity => "rate_vs_density",
            PlotKind::ConsumptionVsDensity => "consumption_vs_density",
            PlotKind::RateVsDistance => "rate_vs_distance",
            PlotKind::DegreeVsDensity => "degree_vs_density",
        }
    }
}

impl fmt::Display for PlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlotKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::param("kind", format!("unknown plot kind `{s}`")))
    }
}

fn model_grid() -> [RateModel; 4] {
    let fiber = FiberParams::default();
    [
        RateModel::PureLoss { fiber },
        RateModel::ThermalUpper { fiber },
        RateModel::ThermalLower { fiber },
        RateModel::Cvqkd {
            fiber,
            qkd: CvQkdParams::default(),
        },
    ]
}

/// Long-format table `x,series,y,se` for one figure.
///
/// Density kinds use `x = rho` and one series per protocol (the degree
/// table has the single series `mean_degree`, without standard errors).
/// `rate_vs_distance` ignores the records beyond requiring them to be
/// present and evaluates the four link models at default parameters on an
/// integer-km grid.
pub fn emit_plot_data(records: &[ResultRecord], kind: PlotKind) -> Result<String> {
    if records.is_empty() {
        return Err(Error::param("results", "no result records"));
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    let f = |x: f64| format!("{x:.16e}");
    match kind {
        PlotKind::RateVsDensity | PlotKind::ConsumptionVsDensity => {
            w.write_record(["rho", "series", "y", "se"])?;
            let mut series: Vec<&str> = Vec::new();
            for r in records {
                if !series.contains(&r.protocol.as_str()) {
                    series.push(&r.protocol);
                }
            }
            for s in series {
                let mut rows: Vec<&ResultRecord> = records.iter().filter(|r| r.protocol == s).collect();
                rows.sort_by(|a, b| a.rho.total_cmp(&b.rho));
                for r in rows {
                    let (y, se) = if kind == PlotKind::RateVsDensity {
                        (r.mean_rate, r.se_rate)
                    } else {
                        (r.mean_consumption, r.se_consumption)
                    };
                    w.write_record([f(r.rho), s.to_string(), f(y), f(se)])?;
                }
            }
        }
        PlotKind::DegreeVsDensity => {
            w.write_record(["rho", "series", "y", "se"])?;
            let mut rows: Vec<&ResultRecord> = Vec::new();
            for r in records {
                if !rows.iter().any(|q| q.rho == r.rho) {
                    rows.push(r);
                }
            }
            rows.sort_by(|a, b| a.rho.total_cmp(&b.rho));
            for r in rows {
                w.write_record([f(r.rho), "mean_degree".to_string(), f(r.mean_degree), String::new()])?;
            }
        }
        PlotKind::RateVsDistance => {
            w.write_record(["distance_km", "series", "y", "se"])?;
            for m in model_grid() {
                for d in DISTANCE_GRID {
                    w.write_record([f(d as f64), m.name().to_string(), f(m.rate(d as f64)?), String::new()])?;
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}
