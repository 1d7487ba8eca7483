//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while constructing a [`crate::Dataset`].
#[derive(Debug, Error)]
pub enum DataError {
    #[error("dataset has no points")]
    Empty,
    #[error("points must have dimension at least 1")]
    ZeroDimension,
    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("{points} points but {colors} color labels")]
    LengthMismatch { points: usize, colors: usize },
    #[error("point {index} has color {color}, but only {m} colors are declared")]
    ColorOutOfRange {
        index: usize,
        color: usize,
        m: usize,
    },
    #[error("distance matrix row {row} has {got} entries, expected {expected}")]
    MatrixNotSquare {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("distance matrix asymmetric at ({u},{v}): {forward} vs {backward}")]
    MatrixAsymmetric {
        u: usize,
        v: usize,
        forward: f64,
        backward: f64,
    },
    #[error("distance matrix diagonal entry {u} is {value}, expected 0")]
    NonzeroDiagonal { u: usize, value: f64 },
    #[error("negative distance {value} at ({u},{v})")]
    NegativeDistance { u: usize, v: usize, value: f64 },
}

/// Errors raised while constructing a [`crate::FairnessSpec`].
#[derive(Debug, Error)]
pub enum SpecError {
    #[error("k must be positive")]
    ZeroK,
    #[error("bounds have length {got}, expected one entry per color ({expected})")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color {color}: lower bound {lower} exceeds upper bound {upper}")]
    BoundsInverted {
        color: usize,
        lower: usize,
        upper: usize,
    },
    #[error("lower bounds sum to {sum}, which exceeds k = {k}")]
    LowerSumExceedsK { sum: usize, k: usize },
    #[error("upper bounds sum to {sum}, which is below k = {k}")]
    UpperSumBelowK { sum: usize, k: usize },
}

/// Why no feasible solution can be (or was) produced for an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Infeasibility {
    #[error("color {color} requires at least {lower} points but only {available} exist")]
    LowerExceedsClassSize {
        color: usize,
        lower: usize,
        available: usize,
    },
    #[error("upper bounds admit at most {capacity} points, below k = {k}")]
    CapacityBelowK { capacity: usize, k: usize },
    #[error("dataset has {n} points, fewer than k = {k}")]
    NotEnoughPoints { n: usize, k: usize },
    #[error("no grid candidate produced a feasible solution")]
    NoFeasibleCandidate,
}

/// Solver failure modes.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error("infeasible: {0}")]
    Infeasible(#[from] Infeasibility),
}

/// Errors raised by the decomposition stage.
#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("decomposition requires at least 2 colors, got {m}")]
    TooFewColors { m: usize },
}

/// Errors raised by the exhaustive reference procedures.
#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {detail}")]
    TooLarge { detail: String },
    #[error("k = {k} exceeds the point count {n}")]
    KExceedsN { k: usize, n: usize },
}
