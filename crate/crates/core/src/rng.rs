//! Reproducible random streams.
//!
//! A [`Seed`] is a master seed plus a stream index. The master seed keys a
//! ChaCha8 generator and the stream index selects one of its 2^64 independent
//! streams, so trial `i` of an experiment always sees the same numbers no
//! matter how trials are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator type handed to every randomized routine.
pub type Rng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed {
    pub master: u64,
    pub stream: u64,
}

impl Seed {
    pub const fn new(master: u64, stream: u64) -> Self {
        Seed { master, stream }
    }

    /// Same master, different stream.
    pub const fn with_stream(self, stream: u64) -> Self {
        Seed {
            master: self.master,
            stream,
        }
    }

    /// Independent master seed for a sub-purpose (e.g. one bisection step),
    /// keeping the stream index.
    pub fn derive(self, tag: u64) -> Self {
        let mut s = self.master ^ tag.wrapping_mul(0xA24B_AED4_963E_E407);
        Seed {
            master: splitmix64(&mut s),
            stream: self.stream,
        }
    }

    pub fn rng(self) -> Rng {
        let mut state = self.master;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream);
        rng
    }
}

/// SplitMix64 step; used only to spread a 64-bit seed over the ChaCha key.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
