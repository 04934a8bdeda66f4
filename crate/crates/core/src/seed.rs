//! Counter-based derivation of independent random substreams.
//!
//! Every random quantity in a simulation is drawn from a generator whose seed
//! is a pure function of the master seed and a path of integer labels, e.g.
//! `master -> trial 17 -> link S-R -> relay 3`. The label path is folded with
//! a SplitMix64 finalizer, so the stream for one label path never depends on
//! how many other streams were created or in which order trials execute.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for all simulation randomness.
pub type SimRng = ChaCha8Rng;

/// A node in the substream tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey(u64);

impl StreamKey {
    pub fn new(master_seed: u64) -> Self {
        StreamKey(splitmix64(master_seed ^ 0x6a09_e667_f3bc_c908))
    }

    /// Key of the child labelled `label`.
    pub fn child(self, label: u64) -> Self {
        StreamKey(splitmix64(self.0.rotate_left(17) ^ splitmix64(label.wrapping_add(0x9e37_79b9))))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn rng(self) -> SimRng {
        SimRng::seed_from_u64(self.0)
    }
}

/// Labels for the top-level streams of one trial.
pub mod label {
    pub const TRIAL: u64 = 1;
    pub const RELAY_POSITIONS: u64 = 2;
    pub const CHANNELS: u64 = 3;
    pub const SCHEME: u64 = 4;
    pub const QLEARN: u64 = 5;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
