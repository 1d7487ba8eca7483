//! The full randomized solver: prune, decompose, assign, repeat, and
//! search the guess grid.
//!
//! For a guessed optimum `tau` the pipeline prunes the dataset at
//! `gamma1`, repeatedly decomposes the survivors at `gamma2` and tries
//! to extract a feasible selection by maximum flow. Guesses run over
//! the geometric grid `tau_0 * (1 + epsilon)^i` capped by the largest
//! pairwise distance, and the best feasible solution over all
//! candidates wins. Every randomized step draws from a stream keyed by
//! `(master_seed, tau_index, gamma2_index, repetition)`, so results are
//! identical for any worker thread count.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::dataset::Dataset;
use crate::decompose::{ckr_decompose, compute_alpha};
use crate::error::{Infeasibility, SolveError};
use crate::fairness::FairnessSpec;
use crate::flow::{build_flow_network, extract_solution};
use crate::oracle::gmm;
use crate::prune::{prune, PruneMode, PruneParams};
use crate::rng::CandidateStreams;
use crate::solution::{Provenance, Solution};

/// Pipeline parameterization: the slow variant prunes at `tau / 3` with
/// an unbounded budget; the fast one prunes at `2 tau / 5` keeping at
/// most `k` points per color, trading approximation quality for speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Slow,
    Fast,
}

impl Variant {
    pub fn gamma1(self, tau: f64) -> f64 {
        match self {
            Variant::Slow => tau / 3.0,
            Variant::Fast => 2.0 * tau / 5.0,
        }
    }

    pub fn gamma2_base(self, tau: f64) -> f64 {
        match self {
            Variant::Slow => tau / 3.0,
            Variant::Fast => tau / 5.0,
        }
    }

    pub fn budget(self, n: usize, k: usize) -> usize {
        match self {
            Variant::Slow => n,
            Variant::Fast => k,
        }
    }
}

/// How many decomposition attempts each `(tau, gamma2)` candidate gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepeatSchedule {
    /// A fixed small count; a handful of attempts is enough in practice.
    Practical(usize),
    /// `t * m` attempts, the budget under which the probabilistic
    /// approximation guarantee holds.
    TheoryTimesM(usize),
}

impl RepeatSchedule {
    pub fn repetitions(self, m: usize) -> usize {
        match self {
            RepeatSchedule::Practical(c) => c,
            RepeatSchedule::TheoryTimesM(t) => t * m,
        }
    }
}

/// Solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct BreachConfig {
    pub variant: Variant,
    /// Grid ratio for the tau candidates (and the gamma2 sweep), > 0.
    pub epsilon: f64,
    pub repeats: RepeatSchedule,
    /// Sweep gamma2 over `[gamma1 / 2, gamma1 / alpha]` on the same
    /// `(1 + epsilon)` grid, in addition to the variant's base value.
    /// The fixed base threshold tends to build too sparse a graph.
    pub gamma2_sweep: bool,
    pub prune_mode: PruneMode,
    pub master_seed: u64,
    /// Worker threads for grid candidates. The result is identical for
    /// any value; this only caps parallelism.
    pub threads: usize,
}

impl Default for BreachConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Fast,
            epsilon: 0.1,
            repeats: RepeatSchedule::Practical(3),
            gamma2_sweep: true,
            prune_mode: PruneMode::FurthestPoint,
            master_seed: 0,
            threads: 1,
        }
    }
}

/// One guess of the optimum, with the derived thresholds.
#[derive(Debug, Clone)]
pub struct GridCandidate {
    pub tau: f64,
    pub gamma1: f64,
    pub budget: usize,
    /// Decomposition thresholds to try, ascending. Index into this list
    /// is the `gamma2_index` recorded in provenance.
    pub gamma2: Vec<f64>,
}

/// Builds the guess grid: `tau_i = tau_0 * (1 + epsilon)^i` for every
/// `tau_i` up to the largest pairwise distance, where `tau_0` is the
/// smallest nonzero distance. The optimum always lies in that range, so
/// some candidate lands within a factor `1 + epsilon` below it. Returns
/// an empty grid only when all points coincide.
pub fn candidate_grid(dataset: &Dataset, k: usize, config: &BreachConfig) -> Vec<GridCandidate> {
    assert!(config.epsilon > 0.0, "epsilon must be positive");
    let params = compute_alpha(dataset.m()).expect("grid requires at least 2 colors");
    let extremes = dataset.distance_extremes();
    let Some(tau0) = extremes.min_nonzero else {
        return Vec::new();
    };
    let ratio = 1.0 + config.epsilon;
    let mut grid = Vec::new();
    for i in 0.. {
        let tau = tau0 * ratio.powi(i);
        if tau > extremes.max {
            break;
        }
        let gamma1 = config.variant.gamma1(tau);
        let base = config.variant.gamma2_base(tau);
        let gamma2 = if config.gamma2_sweep {
            let lo = gamma1 / 2.0;
            let hi = gamma1 / params.alpha;
            let mut values = vec![base, hi];
            for j in 0.. {
                let v = lo * ratio.powi(j);
                if v > hi {
                    break;
                }
                values.push(v);
            }
            values.sort_by(|a, b| a.partial_cmp(b).unwrap());
            values.dedup();
            values
        } else {
            vec![base]
        };
        grid.push(GridCandidate {
            tau,
            gamma1,
            budget: config.variant.budget(dataset.n(), k),
            gamma2,
        });
    }
    grid
}

/// Wall-clock split of a solve, in milliseconds.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveTimings {
    pub prune_ms: f64,
    pub search_ms: f64,
    pub total_ms: f64,
}

#[derive(Default)]
struct PhaseClock {
    prune_ns: AtomicU64,
    search_ns: AtomicU64,
}

impl PhaseClock {
    fn add_prune(&self, d: Duration) {
        self.prune_ns.fetch_add(d.as_nanos() as u64, Ordering::Relaxed);
    }

    fn add_search(&self, d: Duration) {
        self.search_ns.fetch_add(d.as_nanos() as u64, Ordering::Relaxed);
    }
}

/// Runs the pipeline once with fixed thresholds: prune at `gamma1`,
/// then up to `repeats` decompose-and-assign attempts at `gamma2`, each
/// on its own RNG stream. Returns the first feasible solution; its
/// diversity is at least `gamma2 * alpha` by cluster separation.
pub fn breach_fixed(
    dataset: &Dataset,
    spec: &FairnessSpec,
    gamma1: f64,
    gamma2: f64,
    budget: usize,
    prune_mode: PruneMode,
    repeats: usize,
    streams: CandidateStreams,
) -> Option<Solution> {
    let survivors = prune(
        dataset,
        PruneParams {
            gamma: gamma1,
            budget,
            mode: prune_mode,
        },
    );
    run_repetitions(dataset, spec, &survivors, gamma2, repeats, streams)
}

fn run_repetitions(
    dataset: &Dataset,
    spec: &FairnessSpec,
    survivors: &[usize],
    gamma2: f64,
    repeats: usize,
    streams: CandidateStreams,
) -> Option<Solution> {
    let k = spec.k();
    if survivors.len() < k {
        return None;
    }
    // no decomposition can satisfy a lower bound the pruned set already misses
    let mut class = vec![0usize; dataset.m()];
    for &i in survivors {
        class[dataset.color(i)] += 1;
    }
    if class
        .iter()
        .zip(spec.lower())
        .any(|(&have, &need)| have < need)
    {
        return None;
    }

    for rep in 0..repeats {
        let (mut rng, seed) = streams.repetition(rep);
        let dec = ckr_decompose(dataset, survivors, gamma2, &mut rng)
            .expect("solver paths guarantee at least 2 colors");
        let mut net = build_flow_network(&dec.clusters, dataset, spec);
        if net.solve() == k as u64 {
            let indices = extract_solution(&dec.clusters, dataset, spec, &net)
                .expect("a flow of value k always extracts");
            let score = dataset.diversity(&indices);
            debug_assert!(
                score >= gamma2 * compute_alpha(dataset.m()).unwrap().alpha,
                "cluster separation certificate violated"
            );
            return Some(Solution {
                indices,
                score,
                feasible: true,
                provenance: Provenance {
                    tau_index: streams.tau_index(),
                    gamma2_index: streams.gamma2_index(),
                    repetition: rep,
                    seed,
                },
            });
        }
    }
    None
}

/// Runs the full guess grid and returns the best feasible solution,
/// ties to the lowest candidate index. Requires `m >= 2`; the public
/// [`solve`] entry point handles the remaining cases.
pub fn grid_search(
    dataset: &Dataset,
    spec: &FairnessSpec,
    config: &BreachConfig,
) -> Result<Solution, SolveError> {
    grid_search_inner(dataset, spec, config, None)
}

fn grid_search_inner(
    dataset: &Dataset,
    spec: &FairnessSpec,
    config: &BreachConfig,
    clock: Option<&PhaseClock>,
) -> Result<Solution, SolveError> {
    assert!(dataset.m() >= 2, "grid search requires at least 2 colors");
    assert_eq!(spec.m(), dataset.m());
    spec.feasibility_precheck(dataset)?;

    let grid = candidate_grid(dataset, spec.k(), config);
    if grid.is_empty() {
        // every point coincides: diversity is fixed, so any selection
        // within the bounds is optimal
        return Ok(coincident_fallback(dataset, spec, config.master_seed));
    }
    let alpha = compute_alpha(dataset.m()).unwrap().alpha;
    let repeats = config.repeats.repetitions(dataset.m());

    let run_candidate = |(tau_index, cand): (usize, &GridCandidate)| -> Option<Solution> {
        let prune_started = Instant::now();
        let survivors = prune(
            dataset,
            PruneParams {
                gamma: cand.gamma1,
                budget: cand.budget,
                mode: config.prune_mode,
            },
        );
        if let Some(clock) = clock {
            clock.add_prune(prune_started.elapsed());
        }
        let search_started = Instant::now();
        let max_dist = dataset.max_distance_among(&survivors);
        let mut best: Option<Solution> = None;
        for (gamma2_index, &gamma2) in cand.gamma2.iter().enumerate() {
            // a threshold above every surviving distance makes the
            // threshold graph complete, leaving at most one usable
            // cluster; skip unless a single point suffices
            if spec.k() >= 2 && gamma2 * alpha > max_dist {
                continue;
            }
            let streams = CandidateStreams::new(config.master_seed, tau_index, gamma2_index);
            if let Some(sol) = run_repetitions(dataset, spec, &survivors, gamma2, repeats, streams)
            {
                if best.as_ref().is_none_or(|b| sol.score > b.score) {
                    best = Some(sol);
                }
            }
        }
        if let Some(clock) = clock {
            clock.add_search(search_started.elapsed());
        }
        best
    };

    let outcomes: Vec<Option<Solution>> = if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .expect("worker pool");
        pool.install(|| grid.par_iter().enumerate().map(run_candidate).collect())
    } else {
        grid.iter().enumerate().map(run_candidate).collect()
    };

    // strict comparison keeps the earliest candidate on score ties
    outcomes
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.score > a.score { b } else { a })
        .ok_or(SolveError::Infeasible(Infeasibility::NoFeasibleCandidate))
}

/// Fallback when no nonzero pairwise distance exists: fill the lower
/// bounds, then top up to `k` under the upper bounds.
fn coincident_fallback(dataset: &Dataset, spec: &FairnessSpec, master_seed: u64) -> Solution {
    let mut indices = Vec::with_capacity(spec.k());
    let mut taken = vec![0usize; dataset.m()];
    for (i, &c) in dataset.colors().iter().enumerate() {
        if taken[c] < spec.lower()[c] {
            taken[c] += 1;
            indices.push(i);
        }
    }
    for (i, &c) in dataset.colors().iter().enumerate() {
        if indices.len() == spec.k() {
            break;
        }
        if taken[c] < spec.upper()[c] && !indices.contains(&i) {
            taken[c] += 1;
            indices.push(i);
        }
    }
    indices.sort_unstable();
    let score = dataset.diversity(&indices);
    debug_assert!(spec.validate(dataset, &indices));
    Solution {
        indices,
        score,
        feasible: true,
        provenance: Provenance::direct(master_seed),
    }
}

/// Rewrites a `k > m` instance over `k` colors by appending empty
/// classes with zero bounds; every selection keeps the same feasibility
/// verdict, and the decomposition scale is computed from the widened
/// color count. Instances with `k <= m` pass through unchanged.
pub fn extend_for_large_k(dataset: &Dataset, spec: &FairnessSpec) -> (Dataset, FairnessSpec) {
    let k = spec.k();
    if k <= dataset.m() {
        return (dataset.widen_colors(dataset.m()), spec.clone());
    }
    let wide = dataset.widen_colors(k);
    let mut lower = spec.lower().to_vec();
    let mut upper = spec.upper().to_vec();
    lower.resize(k, 0);
    upper.resize(k, 0);
    let spec = FairnessSpec::new(k, lower, upper).expect("padding preserves validity");
    (wide, spec)
}

/// Solves an instance end to end.
///
/// Handles the two cases the grid cannot: a single color (the scale
/// parameter is undefined, so plain greedy max-min selection is used;
/// any bounds over one color are satisfied by any k points) and
/// `k > m` (solved over the widened color space). Everything else goes
/// through [`grid_search`].
pub fn solve(
    dataset: &Dataset,
    spec: &FairnessSpec,
    config: &BreachConfig,
) -> Result<Solution, SolveError> {
    solve_with_clock(dataset, spec, config, None)
}

/// [`solve`] plus a wall-clock split for reporting.
pub fn solve_timed(
    dataset: &Dataset,
    spec: &FairnessSpec,
    config: &BreachConfig,
) -> (Result<Solution, SolveError>, SolveTimings) {
    let clock = PhaseClock::default();
    let started = Instant::now();
    let result = solve_with_clock(dataset, spec, config, Some(&clock));
    let timings = SolveTimings {
        prune_ms: clock.prune_ns.load(Ordering::Relaxed) as f64 / 1e6,
        search_ms: clock.search_ns.load(Ordering::Relaxed) as f64 / 1e6,
        total_ms: started.elapsed().as_nanos() as f64 / 1e6,
    };
    (result, timings)
}

fn solve_with_clock(
    dataset: &Dataset,
    spec: &FairnessSpec,
    config: &BreachConfig,
    clock: Option<&PhaseClock>,
) -> Result<Solution, SolveError> {
    assert_eq!(spec.m(), dataset.m());
    spec.feasibility_precheck(dataset)?;

    if dataset.m() == 1 {
        let k = spec.k();
        let mut indices = if k == 1 {
            vec![0]
        } else {
            gmm(dataset, k, 0).expect("precheck guarantees k <= n")
        };
        indices.sort_unstable();
        let score = dataset.diversity(&indices);
        debug_assert!(spec.validate(dataset, &indices));
        return Ok(Solution {
            indices,
            score,
            feasible: true,
            provenance: Provenance::direct(config.master_seed),
        });
    }

    if spec.k() > dataset.m() {
        let (wide, wide_spec) = extend_for_large_k(dataset, spec);
        grid_search_inner(&wide, &wide_spec, config, clock)
    } else {
        grid_search_inner(dataset, spec, config, clock)
    }
}
