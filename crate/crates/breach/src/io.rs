//! File formats: CSV datasets, constraint files, and result documents.
//!
//! Dataset CSV: header row, comma-separated, UTF-8; numeric feature
//! columns plus one categorical color column. Colors map to dense ids
//! in first-appearance order.
//!
//! Constraint file: one `color_id,lower,upper` line per color.
//!
//! Result JSON: `solution` (indices), `counts` (per color label),
//! `score` (number, or the string "inf" for a single-point selection),
//! `provenance`, `timings_ms`, and an echo of the solver configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::Dataset;
use crate::error::DataError;
use crate::fairness::FairnessSpec;
use crate::prune::PruneMode;
use crate::solution::{Provenance, Solution};
use crate::solver::{BreachConfig, RepeatSchedule, SolveTimings, Variant};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("input file has no data rows")]
    EmptyFile,
    #[error("column {name:?} not found in header")]
    MissingColumn { name: String },
    #[error("row {row}, column {column:?}: cannot parse {value:?} as a number")]
    BadNumber {
        row: usize,
        column: String,
        value: String,
    },
    #[error("constraint line {line}: {detail}")]
    BadConstraint { line: usize, detail: String },
}

/// Dense color ids mapped back to the labels they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorMap {
    labels: Vec<String>,
}

impl ColorMap {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, color: usize) -> &str {
        &self.labels[color]
    }

    /// Identity map "0", "1", ... for datasets without label strings.
    pub fn numeric(m: usize) -> Self {
        Self {
            labels: (0..m).map(|c| c.to_string()).collect(),
        }
    }
}

/// Loads a dataset from CSV. `feature_columns = None` takes every
/// column except the color column, in header order.
pub fn load_csv(
    path: &Path,
    color_column: &str,
    feature_columns: Option<&[String]>,
) -> Result<(Dataset, ColorMap), IoError> {
    let mut reader = csv::Reader::from_path(path)?;
    let header = reader.headers()?.clone();
    let col_of = |name: &str| -> Result<usize, IoError> {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IoError::MissingColumn {
                name: name.to_string(),
            })
    };
    let color_idx = col_of(color_column)?;
    let feature_idx: Vec<(usize, String)> = match feature_columns {
        Some(names) => names
            .iter()
            .map(|n| col_of(n).map(|i| (i, n.clone())))
            .collect::<Result<_, _>>()?,
        None => header
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != color_idx)
            .map(|(i, n)| (i, n.to_string()))
            .collect(),
    };

    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut colors: Vec<usize> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let mut point = Vec::with_capacity(feature_idx.len());
        for (i, name) in &feature_idx {
            let raw = record.get(*i).unwrap_or("");
            let value: f64 = raw.trim().parse().map_err(|_| IoError::BadNumber {
                // +2: one for the header, one for 1-based reporting
                row: row_idx + 2,
                column: name.clone(),
                value: raw.to_string(),
            })?;
            point.push(value);
        }
        let label = record.get(color_idx).unwrap_or("").to_string();
        let color = match labels.iter().position(|l| *l == label) {
            Some(c) => c,
            None => {
                labels.push(label);
                labels.len() - 1
            }
        };
        points.push(point);
        colors.push(color);
    }
    if points.is_empty() {
        return Err(IoError::EmptyFile);
    }
    let m = labels.len();
    Ok((
        Dataset::euclidean(points, colors, m)?,
        ColorMap { labels },
    ))
}

/// Writes a coordinate dataset as CSV with columns `f0..f{d-1},color`.
/// Floats print in shortest round-trip form, so loading the file back
/// reproduces the dataset exactly.
pub fn write_points_csv(
    path: &Path,
    dataset: &Dataset,
    colors: &ColorMap,
) -> Result<(), IoError> {
    let dim = dataset
        .dim()
        .expect("only coordinate datasets can be written as CSV");
    let mut out = String::new();
    for d in 0..dim {
        let _ = write!(out, "f{d},");
    }
    out.push_str("color\n");
    for i in 0..dataset.n() {
        for x in dataset.point(i).unwrap() {
            let _ = write!(out, "{x},");
        }
        let _ = writeln!(out, "{}", colors.label(dataset.color(i)));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads `color_id,lower,upper` lines covering every color exactly once.
pub fn load_constraints(path: &Path, m: usize) -> Result<(Vec<usize>, Vec<usize>), IoError> {
    let text = fs::read_to_string(path)?;
    let mut lower = vec![usize::MAX; m];
    let mut upper = vec![usize::MAX; m];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(IoError::BadConstraint {
                line,
                detail: format!("expected color_id,lower,upper, got {trimmed:?}"),
            });
        }
        let parse = |s: &str, what: &str| -> Result<usize, IoError> {
            s.parse().map_err(|_| IoError::BadConstraint {
                line,
                detail: format!("cannot parse {what} {s:?}"),
            })
        };
        let color = parse(parts[0], "color id")?;
        if color >= m {
            return Err(IoError::BadConstraint {
                line,
                detail: format!("color id {color} out of range (m = {m})"),
            });
        }
        if lower[color] != usize::MAX {
            return Err(IoError::BadConstraint {
                line,
                detail: format!("duplicate line for color {color}"),
            });
        }
        lower[color] = parse(parts[1], "lower bound")?;
        upper[color] = parse(parts[2], "upper bound")?;
    }
    if let Some(missing) = lower.iter().position(|&l| l == usize::MAX) {
        return Err(IoError::BadConstraint {
            line: 0,
            detail: format!("no line for color {missing}"),
        });
    }
    Ok((lower, upper))
}

/// Echo of the solver configuration in the result document. Worker
/// thread count is deliberately absent: it never changes the result.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConfigEcho {
    pub input: String,
    pub k: usize,
    pub fairness: String,
    pub variant: String,
    pub epsilon: f64,
    pub repeats: String,
    pub gamma2_sweep: bool,
    pub prune_mode: String,
    pub master_seed: u64,
}

impl ConfigEcho {
    pub fn new(input: &str, k: usize, fairness: String, config: &BreachConfig) -> Self {
        Self {
            input: input.to_string(),
            k,
            fairness,
            variant: match config.variant {
                Variant::Slow => "slow".into(),
                Variant::Fast => "fast".into(),
            },
            epsilon: config.epsilon,
            repeats: match config.repeats {
                RepeatSchedule::Practical(c) => format!("practical:{c}"),
                RepeatSchedule::TheoryTimesM(t) => format!("theory-times-m:{t}"),
            },
            gamma2_sweep: config.gamma2_sweep,
            prune_mode: match config.prune_mode {
                PruneMode::ArbitraryOrder => "arbitrary".into(),
                PruneMode::FurthestPoint => "furthest".into(),
            },
            master_seed: config.master_seed,
        }
    }
}

/// Diversity score in JSON: a number, or the string "inf".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScoreField {
    Finite(f64),
    Sentinel(String),
}

impl From<f64> for ScoreField {
    fn from(score: f64) -> Self {
        if score.is_finite() {
            ScoreField::Finite(score)
        } else {
            ScoreField::Sentinel("inf".into())
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TimingsField {
    pub prune: f64,
    pub search: f64,
    pub total: f64,
}

/// The machine-readable result of a feasible run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultDoc {
    pub solution: Vec<usize>,
    pub counts: BTreeMap<String, usize>,
    pub score: ScoreField,
    pub provenance: Provenance,
    pub timings_ms: TimingsField,
    pub config: ConfigEcho,
}

impl ResultDoc {
    pub fn new(
        solution: &Solution,
        dataset: &Dataset,
        spec: &FairnessSpec,
        colors: &ColorMap,
        timings: SolveTimings,
        config: ConfigEcho,
    ) -> Self {
        let per_color = spec.color_counts(dataset, &solution.indices);
        let counts = per_color
            .iter()
            .enumerate()
            .map(|(c, &count)| (colors.label(c).to_string(), count))
            .collect();
        Self {
            solution: solution.indices.clone(),
            counts,
            score: solution.score.into(),
            provenance: solution.provenance,
            timings_ms: TimingsField {
                prune: timings.prune_ms,
                search: timings.search_ms,
                total: timings.total_ms,
            },
            config,
        }
    }

    /// Serialization with the wall-clock fields zeroed, for comparing
    /// runs byte for byte.
    pub fn to_json_without_timings(&self) -> String {
        let mut copy = self.clone();
        copy.timings_ms = TimingsField {
            prune: 0.0,
            search: 0.0,
            total: 0.0,
        };
        serde_json::to_string_pretty(&copy).expect("result serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

/// Result document for an infeasible run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InfeasibleDoc {
    pub infeasible: String,
    pub config: ConfigEcho,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::gen_synthetic;
    use std::io::Write;

    #[test]
    fn csv_roundtrip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("points.csv");
        let ds = gen_synthetic(150, 3, 12345);
        write_points_csv(&path, &ds, &ColorMap::numeric(3)).unwrap();
        let (back, map) = load_csv(&path, "color", None).unwrap();
        assert_eq!(back.n(), ds.n());
        assert_eq!(back.m(), 3);
        assert_eq!(map.labels(), &["0", "1", "2"]);
        for i in 0..ds.n() {
            assert_eq!(ds.point(i).unwrap(), back.point(i).unwrap());
            assert_eq!(ds.color(i), back.color(i));
        }
    }

    #[test]
    fn load_maps_labels_in_first_appearance_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "x,y,sex").unwrap();
        writeln!(f, "0.5,1.5,female").unwrap();
        writeln!(f, "2.0,0.0,male").unwrap();
        writeln!(f, "3.5,4.0,female").unwrap();
        drop(f);
        let (ds, map) = load_csv(&path, "sex", None).unwrap();
        assert_eq!(ds.n(), 3);
        assert_eq!(ds.dim(), Some(2));
        assert_eq!(ds.m(), 2);
        assert_eq!(map.labels(), &["female", "male"]);
        assert_eq!(ds.colors(), &[0, 1, 0]);
    }

    #[test]
    fn load_reports_bad_cells_with_row_and_column() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        std::fs::write(&path, "x,color\n1.0,a\noops,b\n").unwrap();
        let err = load_csv(&path, "color", None).unwrap_err();
        match err {
            IoError::BadNumber { row, column, value } => {
                assert_eq!(row, 3);
                assert_eq!(column, "x");
                assert_eq!(value, "oops");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn load_rejects_missing_column_and_empty_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        std::fs::write(&path, "x,color\n1.0,a\n").unwrap();
        assert!(matches!(
            load_csv(&path, "nope", None),
            Err(IoError::MissingColumn { .. })
        ));
        std::fs::write(&path, "x,color\n").unwrap();
        assert!(matches!(
            load_csv(&path, "color", None),
            Err(IoError::EmptyFile)
        ));
    }

    #[test]
    fn single_category_color_column_gives_m_one() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        std::fs::write(&path, "x,color\n1.0,only\n2.0,only\n").unwrap();
        let (ds, _) = load_csv(&path, "color", None).unwrap();
        assert_eq!(ds.m(), 1);
    }

    #[test]
    fn constraints_parse_and_reject_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        std::fs::write(&path, "1,0,2\n0,1,1\n").unwrap();
        let (lower, upper) = load_constraints(&path, 2).unwrap();
        assert_eq!(lower, vec![1, 0]);
        assert_eq!(upper, vec![1, 2]);

        std::fs::write(&path, "0,1,1\n").unwrap();
        assert!(matches!(
            load_constraints(&path, 2),
            Err(IoError::BadConstraint { .. })
        ));
        std::fs::write(&path, "0,x,1\n1,0,1\n").unwrap();
        assert!(matches!(
            load_constraints(&path, 2),
            Err(IoError::BadConstraint { line: 1, .. })
        ));
    }

    #[test]
    fn score_field_serializes_infinity_as_string() {
        let s: ScoreField = f64::INFINITY.into();
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"inf\"");
        let s: ScoreField = 2.5.into();
        assert_eq!(serde_json::to_string(&s).unwrap(), "2.5");
    }
}
