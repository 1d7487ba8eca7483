//! Reproducible random streams.
//!
//! Every random draw in the solver comes from a ChaCha8 generator keyed
//! by the master seed, with the 64-bit stream id encoding the work item:
//!
//! ```text
//! stream = tau_index << 40 | gamma2_index << 20 | repetition
//! ```
//!
//! Work items are therefore statistically independent and fully
//! determined by `(master_seed, tau_index, gamma2_index, repetition)`,
//! no matter how many worker threads execute them or in what order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TAU_BITS: u32 = 24;
const GAMMA2_BITS: u32 = 20;
const REP_BITS: u32 = 20;

/// Stream spawner for one `(tau, gamma2)` grid candidate.
#[derive(Debug, Clone, Copy)]
pub struct CandidateStreams {
    master_seed: u64,
    tau_index: usize,
    gamma2_index: usize,
}

impl CandidateStreams {
    pub fn new(master_seed: u64, tau_index: usize, gamma2_index: usize) -> Self {
        assert!(tau_index < 1 << TAU_BITS, "tau index out of range");
        assert!(gamma2_index < 1 << GAMMA2_BITS, "gamma2 index out of range");
        Self {
            master_seed,
            tau_index,
            gamma2_index,
        }
    }

    pub fn tau_index(&self) -> usize {
        self.tau_index
    }

    pub fn gamma2_index(&self) -> usize {
        self.gamma2_index
    }

    /// Stream id for repetition `rep` of this candidate.
    pub fn stream_id(&self, rep: usize) -> u64 {
        assert!(rep < 1 << REP_BITS, "repetition index out of range");
        ((self.tau_index as u64) << (GAMMA2_BITS + REP_BITS))
            | ((self.gamma2_index as u64) << REP_BITS)
            | rep as u64
    }

    /// Generator for repetition `rep`, plus its stream id.
    pub fn repetition(&self, rep: usize) -> (ChaCha8Rng, u64) {
        let id = self.stream_id(rep);
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(id);
        (rng, id)
    }
}

/// Draws a uniform random permutation of `0..n` by Fisher-Yates.
pub fn random_permutation(n: usize, rng: &mut impl rand::Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}
