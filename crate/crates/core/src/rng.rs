//! Seeded randomness.
//!
//! Every random draw in the crate comes from a `ChaCha8Rng` seeded through
//! `SeedableRng::seed_from_u64`. Per-case streams use the 64-bit seed
//!
//! ```text
//! mix(seed ^ mix(fnv1a64(label) ^ mix(index)))
//! ```
//!
//! where `mix` is the SplitMix64 finalizer and `fnv1a64` the 64-bit FNV-1a
//! hash of the label bytes. Field elements are drawn as `next_u64() mod p`.
//! Nothing else is consumed from the generator, so streams are reproducible
//! across platforms and thread counts.

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

pub type CaseRng = ChaCha8Rng;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Generator for a bare seed.
pub fn seeded(seed: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for case `index` of the stream named `label`.
pub fn case_rng(seed: u64, label: &str, index: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(mix(seed ^ mix(fnv1a64(label.as_bytes()) ^ mix(index))))
}
