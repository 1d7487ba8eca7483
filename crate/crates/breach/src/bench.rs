//! Benchmark harness over synthetic instances.
//!
//! For every `(n, m, k)` combination the suite generates one Gaussian
//! cloud instance, derives proportional bounds with slack 0.2, and
//! times both solver variants, the unconstrained greedy baseline, and
//! the exhaustive optimum where the enumeration guard allows it. Rows
//! are plot-ready CSV.

use std::time::Instant;

use crate::fairness::FairnessSpec;
use crate::oracle::{exact_fmmd, gmm, ExactOutcome};
use crate::solver::{solve, BreachConfig, Variant};
use crate::synth::gen_synthetic;

/// Cartesian benchmark grid.
#[derive(Debug, Clone)]
pub struct BenchSuite {
    pub n_values: Vec<usize>,
    pub m_values: Vec<usize>,
    pub k_values: Vec<usize>,
    /// Solver runs averaged per row (seeds vary per run).
    pub repetitions: usize,
    pub seed: u64,
    pub threads: usize,
}

/// How a benchmark row ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    /// The exhaustive search refused the instance size.
    SkippedGuard,
    /// No feasible selection exists for the generated instance.
    Infeasible,
}

impl RowStatus {
    fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::SkippedGuard => "skipped_guard",
            RowStatus::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub repetitions: usize,
    pub mean_diversity: Option<f64>,
    pub mean_time_ms: Option<f64>,
    pub status: RowStatus,
}

/// Runs the whole suite. Row order follows the configured value lists.
pub fn run_suite(suite: &BenchSuite) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &n in &suite.n_values {
        for &m in &suite.m_values {
            if m > n {
                continue;
            }
            for &k in &suite.k_values {
                if k > n {
                    continue;
                }
                rows.extend(bench_one(suite, n, m, k));
            }
        }
    }
    rows
}

fn bench_one(suite: &BenchSuite, n: usize, m: usize, k: usize) -> Vec<BenchRow> {
    let dataset = gen_synthetic(n, m, suite.seed ^ (n as u64) << 32 ^ (m as u64));
    let reps = suite.repetitions;
    let row = |algorithm: &str, diversity: Option<f64>, time: Option<f64>, status: RowStatus| {
        BenchRow {
            algorithm: algorithm.to_string(),
            n,
            m,
            k,
            repetitions: reps,
            mean_diversity: diversity,
            mean_time_ms: time,
            status,
        }
    };

    let spec = match FairnessSpec::proportional(&dataset, k, 0.2) {
        Ok(spec) => spec,
        Err(_) => {
            return ["breach-slow", "breach-fast", "gmm", "exact"]
                .iter()
                .map(|a| row(a, None, None, RowStatus::Infeasible))
                .collect();
        }
    };

    let mut rows = Vec::new();
    for (name, variant) in [("breach-slow", Variant::Slow), ("breach-fast", Variant::Fast)] {
        let mut scores = Vec::new();
        let mut times = Vec::new();
        for rep in 0..reps {
            let config = BreachConfig {
                variant,
                master_seed: suite.seed.wrapping_add(rep as u64),
                threads: suite.threads,
                ..BreachConfig::default()
            };
            let started = Instant::now();
            match solve(&dataset, &spec, &config) {
                Ok(sol) => {
                    times.push(started.elapsed().as_secs_f64() * 1e3);
                    scores.push(sol.score);
                }
                Err(_) => break,
            }
        }
        if scores.len() == reps {
            rows.push(row(name, Some(mean(&scores)), Some(mean(&times)), RowStatus::Ok));
        } else {
            rows.push(row(name, None, None, RowStatus::Infeasible));
        }
    }

    // unconstrained greedy baseline; deterministic, timed over the same reps
    {
        let mut times = Vec::new();
        let mut score = 0.0;
        for _ in 0..reps {
            let started = Instant::now();
            let s = gmm(&dataset, k, 0).expect("k <= n by construction");
            times.push(started.elapsed().as_secs_f64() * 1e3);
            score = dataset.diversity(&s);
        }
        rows.push(row("gmm", Some(score), Some(mean(&times)), RowStatus::Ok));
    }

    // exhaustive optimum, when the guard admits the instance
    {
        let started = Instant::now();
        match exact_fmmd(&dataset, &spec) {
            Ok(ExactOutcome::Optimal { score, .. }) => {
                let ms = started.elapsed().as_secs_f64() * 1e3;
                rows.push(row("exact", Some(score), Some(ms), RowStatus::Ok));
            }
            Ok(ExactOutcome::Infeasible) => {
                rows.push(row("exact", None, None, RowStatus::Infeasible));
            }
            Err(_) => rows.push(row("exact", None, None, RowStatus::SkippedGuard)),
        }
    }
    rows
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Renders rows as CSV with a fixed header.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("algorithm,n,m,k,repetitions,mean_diversity,mean_time_ms,status\n");
    for r in rows {
        let diversity = r
            .mean_diversity
            .map_or(String::new(), |d| format!("{d}"));
        let time = r.mean_time_ms.map_or(String::new(), |t| format!("{t:.3}"));
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.algorithm,
            r.n,
            r.m,
            r.k,
            r.repetitions,
            diversity,
            time,
            r.status.as_str()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_is_header_only() {
        let suite = BenchSuite {
            n_values: vec![],
            m_values: vec![2],
            k_values: vec![2],
            repetitions: 1,
            seed: 0,
            threads: 1,
        };
        let rows = run_suite(&suite);
        assert!(rows.is_empty());
        assert_eq!(
            to_csv(&rows),
            "algorithm,n,m,k,repetitions,mean_diversity,mean_time_ms,status\n"
        );
    }

    #[test]
    fn small_grid_produces_all_algorithms() {
        let suite = BenchSuite {
            n_values: vec![20],
            m_values: vec![2],
            k_values: vec![3],
            repetitions: 2,
            seed: 5,
            threads: 1,
        };
        let rows = run_suite(&suite);
        let names: Vec<&str> = rows.iter().map(|r| r.algorithm.as_str()).collect();
        assert_eq!(names, vec!["breach-slow", "breach-fast", "gmm", "exact"]);
        for r in &rows {
            assert_eq!(r.status, RowStatus::Ok, "{:?}", r);
        }
        // exact dominates the approximations on diversity
        let exact = rows[3].mean_diversity.unwrap();
        assert!(rows[0].mean_diversity.unwrap() <= exact + 1e-12);
        assert!(rows[1].mean_diversity.unwrap() <= exact + 1e-12);
    }

    #[test]
    fn oversized_exact_rows_are_skipped_not_dropped() {
        let suite = BenchSuite {
            n_values: vec![120],
            m_values: vec![3],
            k_values: vec![20],
            repetitions: 1,
            seed: 11,
            threads: 1,
        };
        let rows = run_suite(&suite);
        let exact = rows.iter().find(|r| r.algorithm == "exact").unwrap();
        assert_eq!(exact.status, RowStatus::SkippedGuard);
        let csv = to_csv(&rows);
        assert!(csv.contains("skipped_guard"));
    }
}
