//! Budgeted per-color pruning.
//!
//! Thins a dataset so that surviving points of the same color are at
//! least `gamma` apart, keeping a bounded number of points per color.
//! Marking uses the strict test `d(u, v) < gamma`, so points at exactly
//! `gamma` survive and the output satisfies `d(u, v) >= gamma` for every
//! same-color pair. With `gamma = 0` nothing but the selected point
//! itself is ever marked, so the procedure keeps all points up to the
//! budget, duplicates included.

use crate::dataset::Dataset;

/// Selection order for [`prune`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneMode {
    /// Scan each color independently, always picking the unmarked point
    /// with the lowest index. The loop guard admits up to `budget + 1`
    /// selections per color: selection is allowed whenever the current
    /// count is at most `budget`, mirroring the guard this procedure is
    /// defined with. Deterministic.
    ArbitraryOrder,
    /// Global greedy: among colors still strictly below budget, pick the
    /// unmarked point furthest from everything selected so far (lowest
    /// index first, ties to the lowest index). At most `budget` points
    /// per color. Deterministic.
    FurthestPoint,
}

/// Parameters for [`prune`].
#[derive(Debug, Clone, Copy)]
pub struct PruneParams {
    /// Separation threshold, nonnegative.
    pub gamma: f64,
    /// Per-color budget, at least 1. Pass `dataset.n()` for unbounded.
    pub budget: usize,
    pub mode: PruneMode,
}

/// Returns the surviving point indices, ascending.
///
/// Every same-color pair in the output is at least `gamma` apart, and
/// every pruned point lies within `gamma` of some selected point of its
/// color unless the budget cut that color short.
pub fn prune(dataset: &Dataset, params: PruneParams) -> Vec<usize> {
    assert!(params.gamma >= 0.0, "gamma must be nonnegative");
    assert!(params.budget >= 1, "budget must be at least 1");
    match params.mode {
        PruneMode::ArbitraryOrder => prune_arbitrary(dataset, params.gamma, params.budget),
        PruneMode::FurthestPoint => prune_furthest(dataset, params.gamma, params.budget),
    }
}

fn prune_arbitrary(dataset: &Dataset, gamma: f64, budget: usize) -> Vec<usize> {
    let n = dataset.n();
    let mut by_color: Vec<Vec<usize>> = vec![Vec::new(); dataset.m()];
    for i in 0..n {
        by_color[dataset.color(i)].push(i);
    }

    let mut selected = Vec::new();
    for members in &by_color {
        let mut marked = vec![false; members.len()];
        let mut chosen = 0usize;
        loop {
            if chosen > budget {
                break;
            }
            let Some(pos) = marked.iter().position(|&m| !m) else {
                break;
            };
            let v = members[pos];
            for (j, &u) in members.iter().enumerate() {
                if !marked[j] && dataset.distance(u, v) < gamma {
                    marked[j] = true;
                }
            }
            marked[pos] = true; // gamma = 0 marks nothing, not even v
            selected.push(v);
            chosen += 1;
        }
    }
    selected.sort_unstable();
    selected
}

fn prune_furthest(dataset: &Dataset, gamma: f64, budget: usize) -> Vec<usize> {
    let n = dataset.n();
    let m = dataset.m();
    let mut marked = vec![false; n];
    let mut count = vec![0usize; m];
    // min distance to the selected set, Gonzalez-style running array
    let mut min_dist = vec![f64::INFINITY; n];
    let mut selected = Vec::new();

    loop {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if marked[i] || count[dataset.color(i)] >= budget {
                continue;
            }
            match best {
                None => best = Some(i),
                // strict comparison keeps the lowest index on ties
                Some(b) => {
                    if min_dist[i] > min_dist[b] {
                        best = Some(i);
                    }
                }
            }
        }
        let Some(v) = best else {
            break;
        };
        let cv = dataset.color(v);
        for u in 0..n {
            if dataset.color(u) == cv && !marked[u] && dataset.distance(u, v) < gamma {
                marked[u] = true;
            }
        }
        marked[v] = true;
        count[cv] += 1;
        selected.push(v);
        for (u, slot) in min_dist.iter_mut().enumerate() {
            let d = dataset.distance(u, v);
            if d < *slot {
                *slot = d;
            }
        }
    }
    selected.sort_unstable();
    selected
}
