//! Exhaustive reference procedures and the greedy baseline.
//!
//! These are deliberately simple and guarded: the exhaustive searches
//! refuse instances beyond a fixed enumeration budget rather than
//! silently truncating, so a returned optimum is always the true one.

use crate::dataset::Dataset;
use crate::error::OracleError;
use crate::fairness::FairnessSpec;

/// Enumeration cap for [`exact_fmmd`]: allow any n up to this size.
const EXACT_N_LIMIT: usize = 24;
/// Or any instance with at most this many k-subsets.
const EXACT_SUBSET_LIMIT: u128 = 5_000_000;
/// Cap on the choice-product for [`exact_assignment_feasible`].
const ASSIGN_PRODUCT_LIMIT: u128 = 1_000_000;

/// Result of the exhaustive fair max-min search.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactOutcome {
    /// The best feasible selection and its diversity.
    Optimal { score: f64, indices: Vec<usize> },
    /// No selection of size `k` meets the bounds.
    Infeasible,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > EXACT_SUBSET_LIMIT * 1000 {
            return u128::MAX;
        }
    }
    acc
}

/// Exhaustive optimum by enumerating every k-subset in lexicographic
/// order, keeping the first subset attaining the best diversity.
///
/// Guard: `n <= 24` or `C(n, k) <= 5e6`; larger instances error out.
pub fn exact_fmmd(dataset: &Dataset, spec: &FairnessSpec) -> Result<ExactOutcome, OracleError> {
    let n = dataset.n();
    let k = spec.k();
    if n > EXACT_N_LIMIT && binomial(n, k) > EXACT_SUBSET_LIMIT {
        return Err(OracleError::TooLarge {
            detail: format!("C({n},{k}) k-subsets exceed the enumeration budget"),
        });
    }
    if k > n {
        return Ok(ExactOutcome::Infeasible);
    }

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if spec.validate(dataset, &subset) {
            let score = dataset.diversity(&subset);
            // strict improvement keeps the lexicographically first optimum
            if best.as_ref().is_none_or(|(b, _)| score > *b) {
                best = Some((score, subset.clone()));
            }
        }
        if !next_combination(&mut subset, n) {
            break;
        }
    }
    Ok(match best {
        Some((score, indices)) => ExactOutcome::Optimal { score, indices },
        None => ExactOutcome::Infeasible,
    })
}

/// Advances `subset` to the next k-combination of `0..n`; false at the end.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in (i + 1)..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Decides by exhaustive search whether some choice of at most one
/// color per cluster (choosing a color the cluster contains, or
/// skipping the cluster) satisfies the fairness bounds.
///
/// Guard: the product of per-cluster option counts must stay at or
/// below 1e6.
pub fn exact_assignment_feasible(
    clusters: &[Vec<usize>],
    dataset: &Dataset,
    spec: &FairnessSpec,
) -> Result<bool, OracleError> {
    let mut options: Vec<Vec<usize>> = Vec::new();
    let mut product: u128 = 1;
    for cluster in clusters {
        if cluster.is_empty() {
            continue;
        }
        let mut colors: Vec<usize> = cluster.iter().map(|&p| dataset.color(p)).collect();
        colors.sort_unstable();
        colors.dedup();
        product = product.saturating_mul((colors.len() + 1) as u128);
        if product > ASSIGN_PRODUCT_LIMIT {
            return Err(OracleError::TooLarge {
                detail: "cluster choice product exceeds the enumeration budget".into(),
            });
        }
        options.push(colors);
    }
    let mut counts = vec![0usize; spec.m()];
    Ok(search_assignment(&options, 0, 0, &mut counts, spec))
}

fn search_assignment(
    options: &[Vec<usize>],
    at: usize,
    taken: usize,
    counts: &mut [usize],
    spec: &FairnessSpec,
) -> bool {
    if at == options.len() {
        return taken == spec.k()
            && counts
                .iter()
                .zip(spec.lower())
                .zip(spec.upper())
                .all(|((&c, &l), &u)| l <= c && c <= u);
    }
    // skip this cluster
    if search_assignment(options, at + 1, taken, counts, spec) {
        return true;
    }
    if taken < spec.k() {
        for &c in &options[at] {
            counts[c] += 1;
            let ok = search_assignment(options, at + 1, taken + 1, counts, spec);
            counts[c] -= 1;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Greedy next-furthest-point selection, ignoring colors: starts from
/// `start` and repeatedly adds the point maximizing the minimum
/// distance to the chosen set (lowest index on ties). A 1/2
/// approximation of the unconstrained max-min optimum in metric spaces.
pub fn gmm(dataset: &Dataset, k: usize, start: usize) -> Result<Vec<usize>, OracleError> {
    let n = dataset.n();
    if k > n {
        return Err(OracleError::KExceedsN { k, n });
    }
    assert!(start < n, "start index out of range");
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut chosen = vec![start];
    let mut min_dist: Vec<f64> = (0..n).map(|i| dataset.distance(i, start)).collect();
    while chosen.len() < k {
        let mut best = 0usize;
        for i in 1..n {
            if min_dist[i] > min_dist[best] {
                best = i;
            }
        }
        chosen.push(best);
        for (i, slot) in min_dist.iter_mut().enumerate() {
            let d = dataset.distance(i, best);
            if d < *slot {
                *slot = d;
            }
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64], colors: &[usize], m: usize) -> Dataset {
        let pts = points.iter().map(|&x| vec![x]).collect();
        Dataset::euclidean(pts, colors.to_vec(), m).unwrap()
    }

    #[test]
    fn exact_three_points_one_color_each() {
        let ds = line(&[0.0, 1.0, 10.0], &[0, 1, 2], 3);
        let spec = FairnessSpec::new(3, vec![1, 1, 1], vec![1, 1, 1]).unwrap();
        match exact_fmmd(&ds, &spec).unwrap() {
            ExactOutcome::Optimal { score, indices } => {
                assert_eq!(score, 1.0);
                assert_eq!(indices, vec![0, 1, 2]);
            }
            ExactOutcome::Infeasible => panic!("feasible instance"),
        }
    }

    #[test]
    fn exact_k_one_is_infinite() {
        let ds = line(&[0.0, 5.0], &[0, 0], 1);
        let spec = FairnessSpec::new(1, vec![0], vec![1]).unwrap();
        match exact_fmmd(&ds, &spec).unwrap() {
            ExactOutcome::Optimal { score, indices } => {
                assert_eq!(score, f64::INFINITY);
                assert_eq!(indices.len(), 1);
            }
            ExactOutcome::Infeasible => panic!("feasible instance"),
        }
    }

    #[test]
    fn exact_detects_infeasible_demand() {
        let ds = line(&[0.0, 1.0], &[0, 0], 2);
        let spec = FairnessSpec::new(2, vec![1, 1], vec![2, 2]).unwrap();
        assert_eq!(exact_fmmd(&ds, &spec).unwrap(), ExactOutcome::Infeasible);
    }

    #[test]
    fn exact_guard_rejects_large_instances() {
        let n = 25;
        let pts: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let ds = line(&pts, &vec![0; n], 1);
        let spec = FairnessSpec::new(12, vec![0], vec![25]).unwrap();
        assert!(matches!(
            exact_fmmd(&ds, &spec),
            Err(OracleError::TooLarge { .. })
        ));
    }

    // Independent recursive enumerator over subsets, walking indices in
    // descending order, used to cross-check the combination walk.
    fn best_by_recursion(
        ds: &Dataset,
        spec: &FairnessSpec,
        below: usize,
        acc: &mut Vec<usize>,
        best: &mut Option<f64>,
    ) {
        if acc.len() == spec.k() {
            if spec.validate(ds, acc) {
                let score = ds.diversity(acc);
                if best.is_none_or(|b| score > b) {
                    *best = Some(score);
                }
            }
            return;
        }
        for i in (0..below).rev() {
            acc.push(i);
            best_by_recursion(ds, spec, i, acc, best);
            acc.pop();
        }
    }

    #[test]
    fn exact_matches_independent_enumeration_order() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.random_range(4..10);
            let m = rng.random_range(2..4);
            let pts: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..50.0)).collect();
            let colors: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();
            let ds = line(&pts, &colors, m);
            let k = rng.random_range(2..=3.min(n));
            let spec = FairnessSpec::new(k, vec![0; m], vec![k; m]).unwrap();
            let forward = exact_fmmd(&ds, &spec).unwrap();
            let mut best = None;
            best_by_recursion(&ds, &spec, n, &mut Vec::new(), &mut best);
            match (forward, best) {
                (ExactOutcome::Optimal { score, .. }, Some(b)) => assert_eq!(score, b),
                (ExactOutcome::Infeasible, None) => {}
                other => panic!("oracle disagreement: {other:?}"),
            }
        }
    }

    #[test]
    fn assignment_feasible_examples() {
        let ds = line(&[0.0, 10.0], &[0, 1], 2);
        let spec = FairnessSpec::new(2, vec![1, 1], vec![1, 1]).unwrap();
        let clusters = vec![vec![0], vec![1]];
        assert!(exact_assignment_feasible(&clusters, &ds, &spec).unwrap());

        // a single cluster cannot supply two points
        let one = vec![vec![0, 1]];
        assert!(!exact_assignment_feasible(&one, &ds, &spec).unwrap());

        // color 1 is demanded but absent from every cluster
        let ds0 = line(&[0.0, 10.0], &[0, 0], 2);
        let missing = vec![vec![0], vec![1]];
        assert!(!exact_assignment_feasible(&missing, &ds0, &spec).unwrap());
    }

    #[test]
    fn gmm_hand_trace() {
        let ds = line(&[0.0, 1.0, 10.0], &[0, 0, 0], 1);
        assert_eq!(gmm(&ds, 2, 0).unwrap(), vec![0, 2]);
        assert_eq!(gmm(&ds, 3, 0).unwrap().len(), 3);
        assert_eq!(gmm(&ds, 1, 1).unwrap(), vec![1]);
        assert!(matches!(
            gmm(&ds, 4, 0),
            Err(OracleError::KExceedsN { .. })
        ));
    }

    #[test]
    fn gmm_k_equals_n_takes_everything() {
        let ds = line(&[3.0, 1.0, 2.0], &[0, 0, 0], 1);
        let mut s = gmm(&ds, 3, 0).unwrap();
        s.sort_unstable();
        assert_eq!(s, vec![0, 1, 2]);
    }
}
