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

//! Counter-based seed derivation.
//!
//! Every random stream in a run is keyed by a path of integers below the
//! 64-bit master seed, e.g. `[point, network, STREAM_POSITIONS]`. The key is
//! folded with the SplitMix64 finalizer:
//!
//! ```text
//! h0 = mix(master)
//! h(k+1) = mix(h(k) ^ (key[k] + 0x9E3779B97F4A7C15 * (k + 1)))
//! ```
//!
//! where `mix` is the SplitMix64 output function. Because the derivation is a
//! pure function of the path, results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tag for node placement.
pub const STREAM_POSITIONS: u64 = 1;
/// Stream tag for edge draws.
pub const STREAM_EDGES: u64 = 2;
/// Stream tag for end-user pair sampling.
pub const STREAM_PAIRS: u64 = 3;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a child seed from `master` and a key path.
pub fn derive(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .enumerate()
        .fold(mix64(master), |h, (k, &key)| {
            mix64(h ^ key.wrapping_add(GOLDEN.wrapping_mul(k as u64 + 1)))
        })
}

/// A generator seeded from a derived seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draw in `[0, 1)` attached to an unordered node pair.
///
/// Pair-keyed draws make an edge decision independent of the order in which
/// pairs are visited, so a generator that skips pairs (see
/// [`crate::netgen::generate_waxman_within`]) reproduces the exact same edges.
#[inline]
pub fn pair_uniform(seed: u64, i: usize, j: usize) -> f64 {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let key = ((lo as u64) << 32) | hi as u64;
    let bits = mix64(seed ^ mix64(key.wrapping_add(GOLDEN)));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
