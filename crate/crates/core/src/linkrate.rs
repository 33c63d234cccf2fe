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

//! Point-to-point link rates over optical fiber.
//!
//! All rates are in bits per channel use and never negative: a bound or key
//! rate whose raw value drops below zero is reported as zero.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netmodel::{EdgeId, Network};

/// Symplectic eigenvalues this far below 1 are treated as rounding noise.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberParams {
    /// Loss exponent per km: `eta = 10^(-gamma d)`. 0.02 is 0.2 dB/km.
    pub gamma: f64,
    /// Output thermal photons.
    pub nbar: f64,
}

impl Default for FiberParams {
    fn default() -> Self {
        FiberParams {
            gamma: 0.02,
            nbar: 1.0 / 500.0,
        }
    }
}

impl FiberParams {
    pub fn from_db_per_km(db_per_km: f64, nbar: f64) -> Result<Self> {
        let p = FiberParams {
            gamma: db_per_km / 10.0,
            nbar,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::param("gamma", format!("must be positive, got {}", self.gamma)));
        }
        if !(self.nbar >= 0.0 && self.nbar.is_finite()) {
            return Err(Error::param("nbar", format!("must be non-negative, got {}", self.nbar)));
        }
        Ok(())
    }
}

/// Gaussian-modulated coherent-state protocol with heterodyne detection.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvQkdParams {
    pub eta_eff: f64,
    pub beta_rec: f64,
    /// Modulation variance, `mu > 1`.
    pub mu: f64,
    /// Excess photons at the receiver.
    pub nbar: f64,
}

impl Default for CvQkdParams {
    fn default() -> Self {
        CvQkdParams {
            eta_eff: 0.7,
            beta_rec: 0.95,
            mu: 20.0,
            nbar: 1.0 / 500.0,
        }
    }
}

impl CvQkdParams {
    /// `nbar = eta_eff * nbar_bg + nbar_ex`.
    pub fn aggregate_nbar(eta_eff: f64, nbar_bg: f64, nbar_ex: f64) -> f64 {
        eta_eff * nbar_bg + nbar_ex
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta_eff > 0.0 && self.eta_eff <= 1.0) {
            return Err(Error::param("eta_eff", format!("must lie in (0, 1], got {}", self.eta_eff)));
        }
        if !(self.beta_rec > 0.0 && self.beta_rec <= 1.0) {
            return Err(Error::param("beta_rec", format!("must lie in (0, 1], got {}", self.beta_rec)));
        }
        if !(self.mu > 1.0 && self.mu.is_finite()) {
            return Err(Error::param("mu", format!("must exceed 1, got {}", self.mu)));
        }
        if !(self.nbar >= 0.0 && self.nbar.is_finite()) {
            return Err(Error::param("nbar", format!("must be non-negative, got {}", self.nbar)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum RateModel {
    PureLoss { fiber: FiberParams },
    ThermalUpper { fiber: FiberParams },
    ThermalLower { fiber: FiberParams },
    Cvqkd { fiber: FiberParams, qkd: CvQkdParams },
}

impl RateModel {
    pub fn fiber(&self) -> &FiberParams {
        match self {
            RateModel::PureLoss { fiber }
            | RateModel::ThermalUpper { fiber }
            | RateModel::ThermalLower { fiber }
            | RateModel::Cvqkd { fiber, .. } => fiber,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RateModel::PureLoss { .. } => "pure_loss",
            RateModel::ThermalUpper { .. } => "thermal_upper",
            RateModel::ThermalLower { .. } => "thermal_lower",
            RateModel::Cvqkd { .. } => "cvqkd",
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.fiber().validate()?;
        if let RateModel::Cvqkd { qkd, .. } = self {
            qkd.validate()?;
        }
        Ok(())
    }

    /// Rate of a fiber link of length `d` km.
    pub fn rate(&self, d: f64) -> Result<f64> {
        let fiber = self.fiber();
        if let RateModel::Cvqkd { qkd, .. } = self {
            return cvqkd_rate(d, qkd, fiber);
        }
        let eta = transmissivity(d, fiber.gamma)?;
        if eta >= 1.0 {
            return Err(Error::param("d", "zero-length links have no finite capacity"));
        }
        if eta <= 0.0 {
            return Ok(0.0);
        }
        Ok(match self {
            RateModel::PureLoss { .. } => pure_loss_capacity(eta),
            RateModel::ThermalUpper { fiber } => thermal_bounds(eta, fiber.nbar)?.upper,
            RateModel::ThermalLower { fiber } => thermal_bounds(eta, fiber.nbar)?.lower,
            RateModel::Cvqkd { .. } => unreachable!(),
        })
    }

    /// Largest link length whose rate is at least `epsilon`, found by
    /// bisection (every model is non-increasing in distance). `None` when the
    /// rate stays above `epsilon` out to 10⁵ km.
    pub fn cutoff_distance(&self, epsilon: f64) -> Result<Option<f64>> {
        let mut lo = 1e-6;
        if self.rate(lo)? < epsilon {
            return Ok(Some(0.0));
        }
        let mut hi = 1.0;
        while self.rate(hi)? >= epsilon {
            lo = hi;
            hi *= 2.0;
            if hi > 1e5 {
                return Ok(None);
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.rate(mid)? >= epsilon {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(Some(lo))
    }
}

/// Per-edge rates, indexed by [`EdgeId`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RateDistribution(Vec<f64>);

impl RateDistribution {
    pub fn new(rates: Vec<f64>) -> Self {
        RateDistribution(rates)
    }

    pub fn get(&self, id: EdgeId) -> f64 {
        self.0[id.index()]
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Multiply every rate by its forwarding probability `q ∈ [0, 1]`.
    pub fn weighted(&self, q: &[f64]) -> Result<Self> {
        if q.len() != self.0.len() {
            return Err(Error::param("q", "one forwarding probability per edge is required"));
        }
        if let Some(bad) = q.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::param("q", format!("forwarding probabilities must lie in [0, 1], got {bad}")));
        }
        Ok(RateDistribution(self.0.iter().zip(q).map(|(k, p)| k * p).collect()))
    }
}

impl Deref for RateDistribution {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// `10^(-gamma d)`.
pub fn transmissivity(d: f64, gamma: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::param("d", format!("distance must be non-negative, got {d}")));
    }
    Ok(10f64.powf(-gamma * d))
}

/// `h(x) = (x+1) log2(x+1) - x log2 x`, with `h(0) = 0`.
pub fn entropic_h(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::param("x", format!("mean photon number must be non-negative, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok((x + 1.0) * (x.ln_1p() / std::f64::consts::LN_2) - x * x.log2())
}

/// Von Neumann entropy of a thermal state with symplectic eigenvalue `nu`:
/// `((nu+1)/2) log2((nu+1)/2) - ((nu-1)/2) log2((nu-1)/2)`.
///
/// Relates to [`entropic_h`] through `holevo_h(2x + 1) = h(x)`.
pub fn holevo_h(nu: f64) -> f64 {
    if nu <= 1.0 {
        return 0.0;
    }
    let p = 0.5 * (nu + 1.0);
    let m = 0.5 * (nu - 1.0);
    p * p.log2() - m * m.log2()
}

/// PLOB bound `-log2(1 - eta)`.
pub fn pure_loss_capacity(eta: f64) -> f64 {
    -(-eta).ln_1p() / std::f64::consts::LN_2
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Lower and upper bounds on the thermal-loss channel capacity.
///
/// The upper bound is zero once the channel is entanglement breaking,
/// i.e. when `n_env >= eta / (1 - eta)`, equivalently `eta <= nbar`.
pub fn thermal_bounds(eta: f64, nbar: f64) -> Result<ThermalBounds> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::param("eta", format!("transmissivity must lie in (0, 1), got {eta}")));
    }
    if !(nbar >= 0.0 && nbar.is_finite()) {
        return Err(Error::param("nbar", format!("must be non-negative, got {nbar}")));
    }
    let n_env = nbar / (1.0 - eta);
    let lower_raw = pure_loss_capacity(eta) - entropic_h(n_env)?;
    let lower = lower_raw.max(0.0);
    let upper = if nbar > 0.0 && eta <= nbar {
        0.0
    } else {
        (lower_raw - n_env * eta.log2()).max(0.0)
    };
    Ok(ThermalBounds {
        lower,
        upper: upper.max(lower),
    })
}

/// Covariance-matrix quantities behind the asymptotic CV-QKD key rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CvQkdBreakdown {
    pub tau: f64,
    pub mutual_information: f64,
    pub holevo: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    pub rate: f64,
}

/// Asymptotic key rate `max(0, beta I_AB - chi_E)` of a `d` km link.
pub fn cvqkd_rate(d: f64, p: &CvQkdParams, fiber: &FiberParams) -> Result<f64> {
    cvqkd_breakdown(d, p, fiber).map(|b| b.rate)
}

pub fn cvqkd_breakdown(d: f64, p: &CvQkdParams, fiber: &FiberParams) -> Result<CvQkdBreakdown> {
    p.validate()?;
    let tau = p.eta_eff * transmissivity(d, fiber.gamma)?;
    if tau <= 0.0 {
        return Ok(CvQkdBreakdown {
            tau,
            mutual_information: 0.0,
            holevo: 0.0,
            nu_plus: p.mu,
            nu_minus: 2.0 * p.nbar + 1.0,
            rate: 0.0,
        });
    }
    if tau >= 1.0 {
        return Err(Error::param("tau", format!("total transmissivity must lie in (0, 1), got {tau}")));
    }
    let mu = p.mu;
    let nbar = p.nbar;
    let c2 = tau * (mu * mu - 1.0);
    let b = tau * (mu - 1.0) + 2.0 * nbar + 1.0;
    let delta = mu * mu + b * b - 2.0 * c2;
    let sqrt_det = (mu * b - c2).abs();
    let disc = (delta * delta - 4.0 * sqrt_det * sqrt_det).max(0.0);
    let nu_plus = (0.5 * (delta + disc.sqrt())).sqrt();
    // nu+ nu- = sqrt(det V); avoids cancellation in (delta - sqrt(disc)).
    let nu_minus = sqrt_det / nu_plus;
    let conditional = mu - c2 / (b + 1.0);
    for nu in [nu_plus, nu_minus, conditional] {
        if nu < 1.0 - PHYSICALITY_TOLERANCE || !nu.is_finite() {
            return Err(Error::Unphysical { nu, tau, mu, nbar });
        }
    }
    let holevo = holevo_h(nu_plus) + holevo_h(nu_minus) - holevo_h(conditional);
    let mutual_information = (tau * (mu - 1.0) / (2.0 * (nbar + 1.0))).ln_1p() / std::f64::consts::LN_2;
    let rate = (p.beta_rec * mutual_information - holevo).max(0.0);
    Ok(CvQkdBreakdown {
        tau,
        mutual_information,
        holevo,
        nu_plus,
        nu_minus,
        rate,
    })
}

/// Evaluate `model` on every edge of `net`.
pub fn assign_rates(net: &Network, model: &RateModel) -> Result<RateDistribution> {
    model.validate()?;
    net.edges()
        .iter()
        .map(|e| model.rate(e.length))
        .collect::<Result<Vec<_>>>()
        .map(RateDistribution)
}
