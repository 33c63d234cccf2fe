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

use crate::error::{Error, Result};

/// A critical density read off a finite sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CriticalEstimate {
    Value { rho: f64 },
    /// Already satisfied at the lowest grid density `at`.
    LeftCensored { at: f64 },
    /// Not reached by the highest grid density `at`.
    RightCensored { at: f64 },
    Undetermined,
}

impl CriticalEstimate {
    /// Best available density: the value, or the censoring bound.
    pub fn bound(&self) -> Option<f64> {
        match *self {
            CriticalEstimate::Value { rho } => Some(rho),
            CriticalEstimate::LeftCensored { at } | CriticalEstimate::RightCensored { at } => Some(at),
            CriticalEstimate::Undetermined => None,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            CriticalEstimate::Value { rho } => Some(rho),
            _ => None,
        }
    }

    pub fn is_censored(&self) -> bool {
        !matches!(self, CriticalEstimate::Value { .. })
    }
}

fn check_grid(rho: &[f64], values: &[f64]) -> Result<()> {
    if rho.len() != values.len() {
        return Err(Error::param("sweep", "one value per grid density is required"));
    }
    if rho.is_empty() {
        return Err(Error::param("sweep", "empty density grid"));
    }
    if rho.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(Error::param("sweep", "densities must be positive"));
    }
    if rho.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("sweep", "density grid must be strictly increasing"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::param("sweep", "ensemble means must not be NaN"));
    }
    Ok(())
}

/// Smallest density from which the ensemble rate stays at or above
/// `threshold` for the rest of the grid, interpolated linearly in
/// `(ln rho, <K>)` across the last upward crossing.
pub fn critical_density_performance(rho: &[f64], mean_rate: &[f64], threshold: f64) -> Result<CriticalEstimate> {
    check_grid(rho, mean_rate)?;
    let n = rho.len();
    let mut i = n;
    while i > 0 && mean_rate[i - 1] >= threshold {
        i -= 1;
    }
    if i == n {
        return Ok(CriticalEstimate::RightCensored { at: rho[n - 1] });
    }
    if i == 0 {
        return Ok(CriticalEstimate::LeftCensored { at: rho[0] });
    }
    let (k0, k1) = (mean_rate[i - 1], mean_rate[i]);
    let (l0, l1) = (rho[i - 1].ln(), rho[i].ln());
    let f = (threshold - k0) / (k1 - k0);
    Ok(CriticalEstimate::Value {
        rho: (l0 + f * (l1 - l0)).exp(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsumptionPeak {
    pub estimate: CriticalEstimate,
    /// `<E>` at the selected peak.
    pub peak: f64,
    pub index: usize,
    /// Set when the selected peak is not the global maximum of the sweep.
    pub diagnostic: Option<String>,
}

/// Density of peak routing consumption after which consumption decays.
///
/// A grid point qualifies when consumption decays consistently after it:
/// no later mean exceeds any mean between it and the candidate by more than
/// the later point's standard error. The largest qualifying mean is
/// returned, with a diagnostic when that is not the global maximum.
pub fn critical_density_consumption(rho: &[f64], mean: &[f64], se: &[f64]) -> Result<ConsumptionPeak> {
    check_grid(rho, mean)?;
    if se.len() != mean.len() {
        return Err(Error::param("sweep", "one standard error per grid density is required"));
    }
    let n = rho.len();
    if n < 3 {
        return Err(Error::param("sweep", format!("at least 3 grid points are required, got {n}")));
    }
    let slack: Vec<f64> = se.iter().map(|s| if s.is_finite() { *s } else { 0.0 }).collect();
    // admissible points form a suffix of the grid
    let mut first = n - 1;
    while first > 0 && (first..n).all(|j| mean[j] <= mean[first - 1] + slack[j]) {
        first -= 1;
    }
    let b = (first..n).fold(first, |b, i| if mean[i] > mean[b] { i } else { b });
    let global = (0..n).fold(0, |g, i| if mean[i] > mean[g] { i } else { g });
    let diagnostic = (global != b).then(|| {
        format!(
            "global maximum {} at rho = {} is followed by a later rise; using {} at rho = {}",
            mean[global], rho[global], mean[b], rho[b]
        )
    });
    let estimate = if b == n - 1 {
        CriticalEstimate::RightCensored { at: rho[b] }
    } else {
        CriticalEstimate::Value { rho: rho[b] }
    };
    Ok(ConsumptionPeak {
        estimate,
        peak: mean[b],
        index: b,
        diagnostic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(k: usize) -> Vec<f64> {
        (0..k).map(|i| 1e-4 * 10f64.powf(i as f64 / 4.0)).collect()
    }

    #[test]
    fn linear_synthetic_sweep() {
        let rho = grid(9);
        let rho0 = 3.3e-4;
        let k: Vec<f64> = rho.iter().map(|r| r / rho0).collect();
        let est = critical_density_performance(&rho, &k, 1.0).unwrap();
        // linear in rho, interpolated in log rho: error bounded by the grid step
        assert!((est.value().unwrap() / rho0 - 1.0).abs() < 0.02);
    }

    #[test]
    fn censoring() {
        let rho = grid(4);
        assert_eq!(
            critical_density_performance(&rho, &[2.0; 4], 1.0).unwrap(),
            CriticalEstimate::LeftCensored { at: rho[0] }
        );
        assert_eq!(
            critical_density_performance(&rho, &[0.5; 4], 1.0).unwrap(),
            CriticalEstimate::RightCensored { at: rho[3] }
        );
    }

    #[test]
    fn guarantee_ignores_transient_crossings() {
        let rho = grid(5);
        let k = [0.2, 1.1, 0.9, 1.5, 2.0];
        let est = critical_density_performance(&rho, &k, 1.0).unwrap().value().unwrap();
        assert!(est > rho[2] && est < rho[3]);
    }

    #[test]
    fn rejects_bad_grid() {
        assert!(critical_density_performance(&[2.0, 1.0], &[0.0, 1.0], 1.0).is_err());
        assert!(critical_density_performance(&[], &[], 1.0).is_err());
        assert!(critical_density_consumption(&[1.0, 2.0], &[0.1, 0.2], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn consumption_peaks() {
        let rho = grid(7);
        let e = [0.1, 0.3, 0.45, 0.3, 0.2, 0.1, 0.05];
        let p = critical_density_consumption(&rho, &e, &[0.0; 7]).unwrap();
        assert_eq!(p.estimate, CriticalEstimate::Value { rho: rho[2] });
        assert_eq!(p.peak, 0.45);
        assert!(p.diagnostic.is_none());

        let dec = [0.9, 0.8, 0.5, 0.3, 0.2, 0.1, 0.0];
        let p = critical_density_consumption(&rho, &dec, &[0.0; 7]).unwrap();
        assert_eq!(p.estimate, CriticalEstimate::Value { rho: rho[0] });

        let inc = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7];
        let p = critical_density_consumption(&rho, &inc, &[0.0; 7]).unwrap();
        assert_eq!(p.estimate, CriticalEstimate::RightCensored { at: rho[6] });
    }

    #[test]
    fn consumption_slack_and_diagnostic() {
        let rho = grid(6);
        // a rise of 0.02 after the peak is within one standard error
        let e = [0.2, 0.5, 0.3, 0.32, 0.1, 0.05];
        let p = critical_density_consumption(&rho, &e, &[0.03; 6]).unwrap();
        assert_eq!(p.index, 1);
        assert!(p.diagnostic.is_none());
        // without slack the same rise breaks the decay after the first peak
        let p = critical_density_consumption(&rho, &e, &[0.0; 6]).unwrap();
        assert_eq!(p.index, 3);
        assert!(p.diagnostic.is_some());
        let e = [0.2, 0.7, 0.3, 0.6, 0.64, 0.05];
        let p = critical_density_consumption(&rho, &e, &[0.0; 6]).unwrap();
        assert_eq!(p.index, 4);
        assert!(p.diagnostic.is_some());
    }
}
