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

//! Link rates against tables frozen from a 60-digit mpmath evaluation
//! (`oracle/linkrate_oracle.py`). The CV-QKD oracle diagonalises the 4x4
//! covariance matrix numerically instead of using closed-form eigenvalues.

mod common;

use common::linkrate_tables::{CVQKD, THERMAL};
use qnetr::linkrate::{cvqkd_rate, pure_loss_capacity, thermal_bounds, transmissivity, CvQkdParams, FiberParams};

#[test]
fn cvqkd_matches_covariance_oracle() {
    let fiber = FiberParams::default();
    let qkd = CvQkdParams::default();
    for (d, want) in CVQKD {
        let got = cvqkd_rate(d, &qkd, &fiber).unwrap();
        assert!((got - want).abs() < 1e-9, "d = {d}: {got} vs {want}");
    }
    for d in [45.0, 60.0, 120.0] {
        assert_eq!(cvqkd_rate(d, &qkd, &fiber).unwrap(), 0.0);
    }
}

#[test]
fn thermal_and_pure_loss_match_oracle() {
    let fiber = FiberParams::default();
    for (d, plob, upper, lower) in THERMAL {
        let eta = transmissivity(d, fiber.gamma).unwrap();
        let b = thermal_bounds(eta, fiber.nbar).unwrap();
        let tol = |x: f64| 1e-12 * x.abs().max(1e-3);
        assert!((pure_loss_capacity(eta) - plob).abs() < tol(plob), "plob at {d}");
        assert!((b.upper - upper).abs() < tol(upper), "upper at {d}: {} vs {upper}", b.upper);
        assert!((b.lower - lower).abs() < tol(lower), "lower at {d}: {} vs {lower}", b.lower);
    }
}

#[test]
fn key_rate_never_beats_capacity_bound() {
    let fiber = FiberParams::default();
    let qkd = CvQkdParams::default();
    for i in 1..=400 {
        let d = i as f64 * 0.5;
        let tau = qkd.eta_eff * transmissivity(d, fiber.gamma).unwrap();
        let upper = thermal_bounds(tau, qkd.nbar).unwrap().upper;
        assert!(cvqkd_rate(d, &qkd, &fiber).unwrap() <= upper + 1e-12, "d = {d}");
    }
}
