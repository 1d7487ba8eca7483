//! Per-color cardinality constraints.

use crate::dataset::Dataset;
use crate::error::{Infeasibility, SpecError};

/// Selection size `k` together with per-color bounds `lower[i] <= |S ∩ V_i| <= upper[i]`.
///
/// Construction enforces `lower[i] <= upper[i]` for every color and
/// `sum(lower) <= k <= sum(upper)`; outside that window no set of size
/// `k` can satisfy the bounds regardless of the dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessSpec {
    k: usize,
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl FairnessSpec {
    pub fn new(k: usize, lower: Vec<usize>, upper: Vec<usize>) -> Result<Self, SpecError> {
        if k == 0 {
            return Err(SpecError::ZeroK);
        }
        if lower.len() != upper.len() {
            return Err(SpecError::LengthMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (color, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if l > u {
                return Err(SpecError::BoundsInverted {
                    color,
                    lower: l,
                    upper: u,
                });
            }
        }
        let lower_sum: usize = lower.iter().sum();
        if lower_sum > k {
            return Err(SpecError::LowerSumExceedsK { sum: lower_sum, k });
        }
        let upper_sum: usize = upper.iter().map(|&u| u.min(k)).sum();
        if upper_sum < k {
            return Err(SpecError::UpperSumBelowK {
                sum: upper.iter().sum(),
                k,
            });
        }
        Ok(Self { k, lower, upper })
    }

    /// Proportional-representation bounds with slack factor `slack` in `[0, 1)`:
    /// `lower[i] = max(1, floor((1 - slack) * k * |V_i| / n))` and
    /// `upper[i] = max(1, ceil((1 + slack) * k * |V_i| / n))`.
    ///
    /// Floor on the lower bound and ceil on the upper keep the integer
    /// window at least as wide as the real-valued one.
    pub fn proportional(dataset: &Dataset, k: usize, slack: f64) -> Result<Self, SpecError> {
        assert!(
            (0.0..1.0).contains(&slack),
            "slack must lie in [0, 1), got {slack}"
        );
        let n = dataset.n() as f64;
        let mut lower = Vec::with_capacity(dataset.m());
        let mut upper = Vec::with_capacity(dataset.m());
        for &size in dataset.class_sizes() {
            let share = (k * size) as f64 / n;
            lower.push(((1.0 - slack) * share).floor().max(1.0) as usize);
            upper.push(((1.0 + slack) * share).ceil().max(1.0) as usize);
        }
        Self::new(k, lower, upper)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of colors the bounds cover.
    pub fn m(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    /// Counts how many points of each color `s` selects, ignoring duplicates.
    pub fn color_counts(&self, dataset: &Dataset, s: &[usize]) -> Vec<usize> {
        let mut idx: Vec<usize> = s.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut counts = vec![0usize; self.m()];
        for &i in &idx {
            counts[dataset.color(i)] += 1;
        }
        counts
    }

    /// True iff `s` (as a set) has exactly `k` elements and every
    /// per-color count lies within its bounds.
    pub fn validate(&self, dataset: &Dataset, s: &[usize]) -> bool {
        assert_eq!(
            self.m(),
            dataset.m(),
            "spec covers {} colors but dataset has {}",
            self.m(),
            dataset.m()
        );
        let mut idx: Vec<usize> = s.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != self.k {
            return false;
        }
        let counts = self.color_counts(dataset, &idx);
        counts
            .iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .all(|((&c, &l), &u)| l <= c && c <= u)
    }

    /// Checks the counting conditions a dataset must meet for any
    /// feasible set to exist: every lower bound is coverable and the
    /// upper bounds leave room for `k` selections. These conditions are
    /// also sufficient when diversity is ignored.
    pub fn feasibility_precheck(&self, dataset: &Dataset) -> Result<(), Infeasibility> {
        assert_eq!(self.m(), dataset.m());
        if dataset.n() < self.k {
            return Err(Infeasibility::NotEnoughPoints {
                n: dataset.n(),
                k: self.k,
            });
        }
        let mut capacity = 0usize;
        for (color, &size) in dataset.class_sizes().iter().enumerate() {
            if self.lower[color] > size {
                return Err(Infeasibility::LowerExceedsClassSize {
                    color,
                    lower: self.lower[color],
                    available: size,
                });
            }
            capacity += self.upper[color].min(size);
        }
        if capacity < self.k {
            return Err(Infeasibility::CapacityBelowK {
                capacity,
                k: self.k,
            });
        }
        Ok(())
    }
}
