//! Solver output: a selected point set with its score and provenance.

use serde::{Deserialize, Serialize};

/// Which grid candidate and repetition produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Index into the tau grid.
    pub tau_index: usize,
    /// Index into the candidate's gamma2 list.
    pub gamma2_index: usize,
    /// Which decomposition repetition succeeded.
    pub repetition: usize,
    /// RNG stream id of that repetition, derived from the master seed.
    pub seed: u64,
}

impl Provenance {
    /// Placeholder provenance for paths that bypass the grid search,
    /// such as the single-color fallback.
    pub fn direct(seed: u64) -> Self {
        Self {
            tau_index: 0,
            gamma2_index: 0,
            repetition: 0,
            seed,
        }
    }
}

/// A selected point set.
///
/// `score` always equals `dataset.diversity(&indices)` recomputed at
/// construction time, and `feasible` records whether the set satisfies
/// the fairness bounds it was produced under. Solver outputs are always
/// feasible; baseline outputs (such as the unconstrained greedy) may
/// not be.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Selected point indices, ascending.
    pub indices: Vec<usize>,
    /// Minimum pairwise distance of the selection (infinite for a single point).
    pub score: f64,
    pub feasible: bool,
    pub provenance: Provenance,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_roundtrips_through_json() {
        let p = Provenance {
            tau_index: 3,
            gamma2_index: 1,
            repetition: 7,
            seed: 42,
        };
        let s = serde_json::to_string(&p).unwrap();
        let back: Provenance = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
    }
}
