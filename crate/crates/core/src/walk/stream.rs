//! Deterministic seed derivation.
//!
//! Trial `t` of experiment `id` at walk length `n` draws from
//! `derive_seed(master, id, n, t)`; walk `i` within a trial uses
//! `walk_seed(trial_seed, i)`. Both are SplitMix64 finalizer chains over the
//! inputs (the id enters through its 64-bit FNV-1a hash), so every stream is
//! a pure function of its coordinates and no two coordinates share state.
//! Each derived seed keys a ChaCha8 generator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit FNV-1a.
pub fn label_hash(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

pub fn derive_seed(master: u64, experiment_id: &str, n: u64, trial: u64) -> u64 {
    let h = mix64(master ^ label_hash(experiment_id));
    let h = mix64(h ^ mix64(n));
    mix64(h ^ mix64(trial.wrapping_add(0x5851_F42D_4C95_7F2D)))
}

pub fn walk_seed(trial_seed: u64, walk_index: u64) -> u64 {
    mix64(trial_seed ^ mix64(walk_index.wrapping_add(1)))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
