//! Keyed random streams.
//!
//! A stream is identified by a master seed plus a `(purpose, level, index)`
//! key. The master seed, purpose and level are mixed into a ChaCha8 key; the
//! index selects the ChaCha stream. Distinct indices under one key therefore
//! never share a keystream, and work can be split across threads in any order
//! without changing what each sample sees.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Purpose {
    Sample,
    Splitting,
    MonteCarlo,
    Uniformity,
    Fill,
}

impl Purpose {
    fn tag(self) -> u64 {
        match self {
            Purpose::Sample => 0x5341_4d50,
            Purpose::Splitting => 0x5350_4c54,
            Purpose::MonteCarlo => 0x4d43_4152,
            Purpose::Uniformity => 0x554e_4946,
            Purpose::Fill => 0x4649_4c4c,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StreamKey {
    pub purpose: Purpose,
    pub level: u64,
    pub index: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RngStream {
    pub master_seed: u64,
    pub key: StreamKey,
}

impl RngStream {
    pub fn new(master_seed: u64, purpose: Purpose, level: u64, index: u64) -> Self {
        Self {
            master_seed,
            key: StreamKey {
                purpose,
                level,
                index,
            },
        }
    }

    /// Same master seed and key, different purpose.
    pub fn with_purpose(self, purpose: Purpose) -> Self {
        Self {
            key: StreamKey {
                purpose,
                ..self.key
            },
            ..self
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(derive_key(
            self.master_seed,
            self.key.purpose,
            self.key.level,
        ));
        rng.set_stream(self.key.index);
        rng
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn derive_key(master: u64, purpose: Purpose, level: u64) -> [u8; 32] {
    let mut state = master;
    splitmix64(&mut state);
    state ^= purpose.tag();
    splitmix64(&mut state);
    state ^= level;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}
