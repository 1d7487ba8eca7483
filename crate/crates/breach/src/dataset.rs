//! Point sets with color labels and a metric.
//!
//! A [`Dataset`] owns the points, their color labels, and the distance
//! function. Distances are either Euclidean over stored coordinates or
//! looked up in a precomputed symmetric matrix. All instances are
//! immutable after construction and safe to share across threads.

use crate::error::DataError;

/// Which distance function a dataset carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    /// Euclidean distance over stored coordinates.
    Euclidean,
    /// Lookup in a precomputed symmetric distance matrix.
    ///
    /// The matrix is validated for symmetry, nonnegativity and a zero
    /// diagonal. The triangle inequality is assumed, not checked; on
    /// inputs that violate it the solver still runs but its separation
    /// guarantees are void.
    Precomputed,
}

#[derive(Debug, Clone)]
enum Points {
    Coordinates { data: Vec<f64>, dim: usize },
    Matrix { dist: Vec<f64> },
}

/// An immutable problem instance: points, colors, and a metric.
#[derive(Debug, Clone)]
pub struct Dataset {
    points: Points,
    colors: Vec<usize>,
    m: usize,
    class_sizes: Vec<usize>,
}

impl Dataset {
    /// Builds a Euclidean dataset. `m` must cover every color id; color
    /// classes beyond the labels used may be empty.
    pub fn euclidean(
        points: Vec<Vec<f64>>,
        colors: Vec<usize>,
        m: usize,
    ) -> Result<Self, DataError> {
        if points.is_empty() {
            return Err(DataError::Empty);
        }
        if points.len() != colors.len() {
            return Err(DataError::LengthMismatch {
                points: points.len(),
                colors: colors.len(),
            });
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(DataError::ZeroDimension);
        }
        let mut data = Vec::with_capacity(points.len() * dim);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(DataError::DimensionMismatch {
                    index,
                    expected: dim,
                    got: p.len(),
                });
            }
            data.extend_from_slice(p);
        }
        let class_sizes = check_colors(&colors, m)?;
        Ok(Self {
            points: Points::Coordinates { data, dim },
            colors,
            m,
            class_sizes,
        })
    }

    /// Builds a Euclidean dataset with `m` inferred as `max(color) + 1`.
    pub fn euclidean_auto(points: Vec<Vec<f64>>, colors: Vec<usize>) -> Result<Self, DataError> {
        let m = colors.iter().max().map_or(0, |&c| c + 1);
        Self::euclidean(points, colors, m)
    }

    /// Builds a dataset over a precomputed symmetric distance matrix.
    pub fn precomputed(
        matrix: Vec<Vec<f64>>,
        colors: Vec<usize>,
        m: usize,
    ) -> Result<Self, DataError> {
        let n = matrix.len();
        if n == 0 {
            return Err(DataError::Empty);
        }
        if n != colors.len() {
            return Err(DataError::LengthMismatch {
                points: n,
                colors: colors.len(),
            });
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != n {
                return Err(DataError::MatrixNotSquare {
                    row,
                    expected: n,
                    got: r.len(),
                });
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for r in &matrix {
            dist.extend_from_slice(r);
        }
        for u in 0..n {
            if dist[u * n + u] != 0.0 {
                return Err(DataError::NonzeroDiagonal {
                    u,
                    value: dist[u * n + u],
                });
            }
            for v in (u + 1)..n {
                let forward = dist[u * n + v];
                let backward = dist[v * n + u];
                if forward < 0.0 {
                    return Err(DataError::NegativeDistance {
                        u,
                        v,
                        value: forward,
                    });
                }
                if forward != backward {
                    return Err(DataError::MatrixAsymmetric {
                        u,
                        v,
                        forward,
                        backward,
                    });
                }
            }
        }
        let class_sizes = check_colors(&colors, m)?;
        Ok(Self {
            points: Points::Matrix { dist },
            colors,
            m,
            class_sizes,
        })
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Number of colors (including empty classes).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Color of point `i`.
    pub fn color(&self, i: usize) -> usize {
        self.colors[i]
    }

    /// All color labels, indexed by point.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Number of points of each color.
    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn metric_kind(&self) -> MetricKind {
        match self.points {
            Points::Coordinates { .. } => MetricKind::Euclidean,
            Points::Matrix { .. } => MetricKind::Precomputed,
        }
    }

    /// Coordinate dimension, if the dataset stores coordinates.
    pub fn dim(&self) -> Option<usize> {
        match &self.points {
            Points::Coordinates { dim, .. } => Some(*dim),
            Points::Matrix { .. } => None,
        }
    }

    /// Coordinates of point `i`, if the dataset stores coordinates.
    pub fn point(&self, i: usize) -> Option<&[f64]> {
        match &self.points {
            Points::Coordinates { data, dim } => Some(&data[i * dim..(i + 1) * dim]),
            Points::Matrix { .. } => None,
        }
    }

    /// Distance between points `u` and `v`.
    ///
    /// Panics if either index is out of range.
    pub fn distance(&self, u: usize, v: usize) -> f64 {
        let n = self.n();
        assert!(u < n && v < n, "point index out of range: ({u},{v}), n={n}");
        match &self.points {
            Points::Coordinates { data, dim } => {
                let a = &data[u * dim..(u + 1) * dim];
                let b = &data[v * dim..(v + 1) * dim];
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt()
            }
            Points::Matrix { dist } => dist[u * n + v],
        }
    }

    /// Minimum pairwise distance over distinct pairs of `s`.
    ///
    /// Duplicate indices are ignored. Sets with at most one distinct
    /// point score positive infinity: no pair exists, and the sentinel
    /// keeps comparisons against finite scores well defined.
    pub fn diversity(&self, s: &[usize]) -> f64 {
        let mut idx: Vec<usize> = s.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut best = f64::INFINITY;
        for (a, &u) in idx.iter().enumerate() {
            for &v in &idx[a + 1..] {
                let d = self.distance(u, v);
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    /// Smallest nonzero and largest pairwise distance, by full pair scan.
    pub fn distance_extremes(&self) -> DistanceExtremes {
        let n = self.n();
        let mut min_nonzero: Option<f64> = None;
        let mut max = 0.0f64;
        for u in 0..n {
            for v in (u + 1)..n {
                let d = self.distance(u, v);
                if d > max {
                    max = d;
                }
                if d > 0.0 && min_nonzero.is_none_or(|cur| d < cur) {
                    min_nonzero = Some(d);
                }
            }
        }
        DistanceExtremes { min_nonzero, max }
    }

    /// Clones the dataset with the color space widened to `m` colors.
    /// The added classes are empty. Used by the large-k extension.
    pub fn widen_colors(&self, m: usize) -> Dataset {
        assert!(m >= self.m, "cannot shrink the color space");
        let points = match &self.points {
            Points::Coordinates { data, dim } => Points::Coordinates {
                data: data.clone(),
                dim: *dim,
            },
            Points::Matrix { dist } => Points::Matrix { dist: dist.clone() },
        };
        let mut class_sizes = self.class_sizes.clone();
        class_sizes.resize(m, 0);
        Dataset {
            points,
            colors: self.colors.clone(),
            m,
            class_sizes,
        }
    }

    /// Largest pairwise distance within `subset`.
    pub fn max_distance_among(&self, subset: &[usize]) -> f64 {
        let mut max = 0.0f64;
        for (a, &u) in subset.iter().enumerate() {
            for &v in &subset[a + 1..] {
                let d = self.distance(u, v);
                if d > max {
                    max = d;
                }
            }
        }
        max
    }
}

fn check_colors(colors: &[usize], m: usize) -> Result<Vec<usize>, DataError> {
    let mut sizes = vec![0usize; m];
    for (index, &color) in colors.iter().enumerate() {
        if color >= m {
            return Err(DataError::ColorOutOfRange { index, color, m });
        }
        sizes[color] += 1;
    }
    Ok(sizes)
}

/// Result of [`Dataset::distance_extremes`].
#[derive(Debug, Clone, Copy)]
pub struct DistanceExtremes {
    /// Smallest strictly positive pairwise distance, if any pair differs.
    pub min_nonzero: Option<f64>,
    /// Largest pairwise distance (0 when n = 1).
    pub max: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64]) -> Dataset {
        let pts = points.iter().map(|&x| vec![x]).collect();
        Dataset::euclidean(pts, vec![0; points.len()], 1).unwrap()
    }

    #[test]
    fn distance_identity_is_zero() {
        let ds = line(&[0.0, 3.0]);
        assert_eq!(ds.distance(1, 1), 0.0);
    }

    #[test]
    fn distance_three_four_five() {
        let ds = Dataset::euclidean(vec![vec![0.0, 0.0], vec![3.0, 4.0]], vec![0, 1], 2).unwrap();
        assert_eq!(ds.distance(0, 1), 5.0);
        assert_eq!(ds.distance(1, 0), 5.0);
    }

    #[test]
    fn distance_precomputed_lookup() {
        let matrix = vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 7.5],
            vec![2.0, 7.5, 0.0],
        ];
        let ds = Dataset::precomputed(matrix, vec![0, 0, 1], 2).unwrap();
        assert_eq!(ds.distance(1, 2), 7.5);
        assert_eq!(ds.metric_kind(), MetricKind::Precomputed);
    }

    #[test]
    fn diversity_singleton_is_infinite() {
        let ds = line(&[2.0, 5.0]);
        assert_eq!(ds.diversity(&[0]), f64::INFINITY);
        assert_eq!(ds.diversity(&[]), f64::INFINITY);
        // duplicate indices do not create a phantom zero-distance pair
        assert_eq!(ds.diversity(&[1, 1]), f64::INFINITY);
    }

    #[test]
    fn diversity_single_pair() {
        let ds = Dataset::euclidean(vec![vec![0.0, 0.0], vec![3.0, 4.0]], vec![0, 1], 2).unwrap();
        assert_eq!(ds.diversity(&[0, 1]), 5.0);
    }

    // Independent check for the three-point example: enumerate all pairs.
    #[test]
    fn diversity_matches_pair_enumeration() {
        let ds = line(&[0.0, 1.0, 5.0]);
        let s = [0usize, 1, 2];
        let mut expected = f64::INFINITY;
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                expected = expected.min(ds.distance(s[i], s[j]));
            }
        }
        assert_eq!(expected, 1.0);
        assert_eq!(ds.diversity(&s), expected);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(matches!(
            Dataset::euclidean(vec![], vec![], 0),
            Err(DataError::Empty)
        ));
        assert!(matches!(
            Dataset::euclidean(vec![vec![0.0], vec![1.0, 2.0]], vec![0, 0], 1),
            Err(DataError::DimensionMismatch { index: 1, .. })
        ));
        assert!(matches!(
            Dataset::euclidean(vec![vec![0.0]], vec![3], 2),
            Err(DataError::ColorOutOfRange { color: 3, .. })
        ));
        assert!(matches!(
            Dataset::euclidean(vec![vec![0.0]], vec![0, 1], 2),
            Err(DataError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn empty_color_classes_are_allowed() {
        let ds = Dataset::euclidean(vec![vec![0.0], vec![1.0]], vec![0, 0], 3).unwrap();
        assert_eq!(ds.class_sizes(), &[2, 0, 0]);
    }

    #[test]
    fn precomputed_rejects_asymmetry_and_bad_diagonal() {
        let asym = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(
            Dataset::precomputed(asym, vec![0, 0], 1),
            Err(DataError::MatrixAsymmetric { .. })
        ));
        let diag = vec![vec![1.0, 1.0], vec![1.0, 0.0]];
        assert!(matches!(
            Dataset::precomputed(diag, vec![0, 0], 1),
            Err(DataError::NonzeroDiagonal { .. })
        ));
        let neg = vec![vec![0.0, -1.0], vec![-1.0, 0.0]];
        assert!(matches!(
            Dataset::precomputed(neg, vec![0, 0], 1),
            Err(DataError::NegativeDistance { .. })
        ));
    }

    #[test]
    fn extremes_on_line() {
        let ds = line(&[0.0, 1.0, 5.0]);
        let ex = ds.distance_extremes();
        assert_eq!(ex.min_nonzero, Some(1.0));
        assert_eq!(ex.max, 5.0);
        assert_eq!(ds.max_distance_among(&[0, 1]), 1.0);
    }

    #[test]
    fn extremes_with_duplicates_skip_zero() {
        let ds = line(&[2.0, 2.0, 4.0]);
        let ex = ds.distance_extremes();
        assert_eq!(ex.min_nonzero, Some(2.0));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn diversity_is_order_free_and_shrinks_with_growth(
            coords in proptest::collection::vec((0.0f64..50.0, 0.0f64..50.0), 2..20),
            extra in 0usize..20,
        ) {
            let n = coords.len();
            let pts: Vec<Vec<f64>> = coords.iter().map(|&(x, y)| vec![x, y]).collect();
            let ds = Dataset::euclidean(pts, vec![0; n], 1).unwrap();
            let subset: Vec<usize> = (0..n / 2).collect();
            let mut shuffled = subset.clone();
            shuffled.reverse();
            proptest::prop_assert_eq!(ds.diversity(&subset), ds.diversity(&shuffled));

            let mut grown = subset.clone();
            grown.push(extra % n);
            proptest::prop_assert!(ds.diversity(&grown) <= ds.diversity(&subset));
        }

        // matrices built from actual point sets are metrics; sampled
        // triples must satisfy the triangle inequality
        #[test]
        fn precomputed_fixtures_respect_the_triangle_inequality(
            coords in proptest::collection::vec((0.0f64..50.0, 0.0f64..50.0), 3..12),
        ) {
            let n = coords.len();
            let pts: Vec<Vec<f64>> = coords.iter().map(|&(x, y)| vec![x, y]).collect();
            let euclid = Dataset::euclidean(pts, vec![0; n], 1).unwrap();
            let matrix: Vec<Vec<f64>> = (0..n)
                .map(|u| (0..n).map(|v| euclid.distance(u, v)).collect())
                .collect();
            let ds = Dataset::precomputed(matrix, vec![0; n], 1).unwrap();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        proptest::prop_assert!(
                            ds.distance(a, c) <= ds.distance(a, b) + ds.distance(b, c) + 1e-9
                        );
                    }
                }
            }
        }
    }
}
