//! Seeded randomness.
//!
//! Every randomized routine takes a 64-bit seed. Sub-streams are derived
//! with [`derive_seed`]: child `i` of master `s` is seeded with
//! `splitmix64(s ^ splitmix64(i + GOLDEN))`, and each seed drives a
//! ChaCha8 generator. Reports record the seed they were run with.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(GOLDEN)))
}

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Generator for sub-stream `index` of `master`.
pub fn substream(master: u64, index: u64) -> Rng {
    seeded(derive_seed(master, index))
}
