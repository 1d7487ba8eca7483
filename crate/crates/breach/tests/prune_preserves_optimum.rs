//! Pruning keeps an approximate optimum reachable.
//!
//! With threshold `opt / 3` and no budget, the pruned set still
//! contains a feasible selection of diversity at least `opt / 3`; with
//! threshold `2 opt / 5` and budget `k` it still contains one of
//! diversity at least `opt / 5`. Both claims are checked exhaustively
//! on small instances against the brute-force optimum.

use breach::oracle::{exact_fmmd, ExactOutcome};
use breach::{prune, Dataset, FairnessSpec, PruneMode, PruneParams};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

// tolerance for float rounding in the threshold arithmetic
const REL_SLACK: f64 = 1.0 - 1e-12;

fn random_instance(rng: &mut ChaCha8Rng) -> (Dataset, FairnessSpec) {
    let m = rng.random_range(2..=3);
    let n = rng.random_range((m + 2)..=14);
    let mut colors: Vec<usize> = (0..m).collect();
    for _ in m..n {
        colors.push(rng.random_range(0..m));
    }
    let points: Vec<Vec<f64>> = (0..n)
        .map(|_| vec![rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)])
        .collect();
    let dataset = Dataset::euclidean(points, colors, m).unwrap();
    let k = rng.random_range(2..=m);
    let lower = if rng.random_bool(0.5) {
        vec![0; m]
    } else {
        let mut l = vec![0; m];
        for slot in l.iter_mut().take(k) {
            *slot = 1;
        }
        l
    };
    let spec = FairnessSpec::new(k, lower, vec![1; m]).unwrap();
    (dataset, spec)
}

fn induced(dataset: &Dataset, subset: &[usize]) -> Dataset {
    let points: Vec<Vec<f64>> = subset
        .iter()
        .map(|&i| dataset.point(i).unwrap().to_vec())
        .collect();
    let colors: Vec<usize> = subset.iter().map(|&i| dataset.color(i)).collect();
    Dataset::euclidean(points, colors, dataset.m()).unwrap()
}

fn optimum(dataset: &Dataset, spec: &FairnessSpec) -> Option<f64> {
    match exact_fmmd(dataset, spec).unwrap() {
        ExactOutcome::Optimal { score, .. } => Some(score),
        ExactOutcome::Infeasible => None,
    }
}

#[test]
fn unbudgeted_pruning_keeps_a_third_of_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x517);
    let mut checked = 0;
    while checked < 60 {
        let (dataset, spec) = random_instance(&mut rng);
        let Some(opt) = optimum(&dataset, &spec) else {
            continue;
        };
        checked += 1;
        for mode in [PruneMode::ArbitraryOrder, PruneMode::FurthestPoint] {
            let survivors = prune(
                &dataset,
                PruneParams {
                    gamma: opt / 3.0,
                    budget: dataset.n(),
                    mode,
                },
            );
            let sub = induced(&dataset, &survivors);
            let sub_opt = optimum(&sub, &spec)
                .expect("pruned set must keep a feasible selection");
            assert!(
                sub_opt >= opt / 3.0 * REL_SLACK,
                "mode {mode:?}: pruned optimum {sub_opt} below {}",
                opt / 3.0
            );
        }
    }
}

#[test]
fn budgeted_pruning_keeps_a_fifth_of_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2717);
    let mut checked = 0;
    while checked < 60 {
        let (dataset, spec) = random_instance(&mut rng);
        let Some(opt) = optimum(&dataset, &spec) else {
            continue;
        };
        checked += 1;
        for mode in [PruneMode::ArbitraryOrder, PruneMode::FurthestPoint] {
            let survivors = prune(
                &dataset,
                PruneParams {
                    gamma: 2.0 * opt / 5.0,
                    budget: spec.k(),
                    mode,
                },
            );
            let sub = induced(&dataset, &survivors);
            let sub_opt = optimum(&sub, &spec)
                .expect("budgeted pruning must keep a feasible selection");
            assert!(
                sub_opt >= opt / 5.0 * REL_SLACK,
                "mode {mode:?}: pruned optimum {sub_opt} below {}",
                opt / 5.0
            );
        }
    }
}
