//! Random decomposition of a pruned space into well-separated clusters.
//!
//! Builds the threshold graph connecting pairs at distance strictly
//! below `gamma * alpha`, draws a uniform random permutation of the
//! vertices and a uniform random hop radius `R` in `[delta1, delta2]`,
//! and assigns every vertex to the first permuted center whose radius-R
//! BFS ball reaches it. Vertices at hop distance exactly `R` from their
//! center are guards and are dropped; the surviving clusters are
//! pairwise disconnected in the threshold graph, so any selection with
//! at most one point per cluster has diversity at least `gamma * alpha`.

use std::collections::VecDeque;

use rand::Rng;

use crate::dataset::Dataset;
use crate::error::DecomposeError;
use crate::rng::random_permutation;

/// Scale parameters derived from the color count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParams {
    /// `sqrt(ln m) / m`, the threshold and radius scale. Natural log.
    pub alpha: f64,
    /// Smallest hop radius, `max(floor(1 / (4 alpha)), 1)`.
    pub delta1: usize,
    /// Largest hop radius, `floor(1 / (2 alpha))`.
    pub delta2: usize,
}

/// Computes the scale parameters for `m >= 2` colors.
///
/// `alpha <= sqrt(ln 2) / 2 < 1/2` for every `m >= 2`, which forces
/// `delta2 >= 1` and `delta1 <= delta2`.
pub fn compute_alpha(m: usize) -> Result<AlphaParams, DecomposeError> {
    if m < 2 {
        return Err(DecomposeError::TooFewColors { m });
    }
    let alpha = (m as f64).ln().sqrt() / m as f64;
    let delta1 = ((1.0 / (4.0 * alpha)).floor() as usize).max(1);
    let delta2 = (1.0 / (2.0 * alpha)).floor() as usize;
    debug_assert!(delta1 <= delta2);
    Ok(AlphaParams {
        alpha,
        delta1,
        delta2,
    })
}

/// Unweighted graph connecting pairs of the subset at distance < theta.
pub struct ThresholdGraph {
    /// Original dataset indices of the vertices.
    vertices: Vec<usize>,
    /// Adjacency lists over local vertex ids.
    adj: Vec<Vec<u32>>,
    theta: f64,
}

impl ThresholdGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// True iff the local vertices `a` and `b` are adjacent.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&(b as u32))
    }
}

/// Builds the threshold graph over `subset` with strict cutoff `theta`.
pub fn build_threshold_graph(dataset: &Dataset, subset: &[usize], theta: f64) -> ThresholdGraph {
    let nu = subset.len();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nu];
    for a in 0..nu {
        for b in (a + 1)..nu {
            if dataset.distance(subset[a], subset[b]) < theta {
                adj[a].push(b as u32);
                adj[b].push(a as u32);
            }
        }
    }
    ThresholdGraph {
        vertices: subset.to_vec(),
        adj,
        theta,
    }
}

/// Output of [`ckr_decompose`]: ordered clusters, removed guards, and
/// the random choices that produced them. Clusters are positional, one
/// slot per vertex, and may be empty. All indices are original dataset
/// indices, sorted ascending within each list.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub clusters: Vec<Vec<usize>>,
    pub guards: Vec<usize>,
    /// Hop radius used.
    pub radius: usize,
    /// Center visit order (original dataset indices).
    pub permutation: Vec<usize>,
    /// Threshold `gamma * alpha` the graph was built with.
    pub theta: f64,
}

impl Decomposition {
    /// Clusters that actually hold points, with their positional index.
    pub fn nonempty_clusters(&self) -> impl Iterator<Item = (usize, &Vec<usize>)> {
        self.clusters
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
    }
}

/// Draws one random decomposition of `subset`.
///
/// The permutation is Fisher-Yates over the subset order, and the
/// radius is uniform on `[delta1, delta2]`; both come from `rng`, so a
/// fixed generator state reproduces the decomposition exactly.
pub fn ckr_decompose(
    dataset: &Dataset,
    subset: &[usize],
    gamma: f64,
    rng: &mut impl Rng,
) -> Result<Decomposition, DecomposeError> {
    let params = compute_alpha(dataset.m())?;
    let graph = build_threshold_graph(dataset, subset, gamma * params.alpha);
    let perm = random_permutation(subset.len(), rng);
    let radius = rng.random_range(params.delta1..=params.delta2);
    Ok(ckr_with_permutation(&graph, &perm, radius))
}

/// Deterministic core of the decomposition, exposed for tests and
/// inspection: assigns each vertex to the first center in `perm` whose
/// radius-R ball reaches it, then splits off guards at hop exactly R.
pub fn ckr_with_permutation(
    graph: &ThresholdGraph,
    perm: &[usize],
    radius: usize,
) -> Decomposition {
    let nu = graph.vertex_count();
    assert_eq!(perm.len(), nu);
    assert!(radius >= 1);

    let mut assigned = vec![false; nu];
    // best hop distance to any earlier center; lets later searches skip
    // vertices strictly closer to an earlier center, which provably
    // leaves the assignment unchanged (see the equivalence test below)
    let mut best = vec![u32::MAX; nu];
    let mut stamp = vec![u32::MAX; nu];
    let mut hop = vec![0u32; nu];
    let mut queue = VecDeque::new();
    let mut visited: Vec<u32> = Vec::new();

    let mut clusters: Vec<Vec<usize>> = Vec::with_capacity(nu);
    let mut guards: Vec<usize> = Vec::new();

    for (round, &center) in perm.iter().enumerate() {
        let round = round as u32;
        visited.clear();
        queue.clear();
        stamp[center] = round;
        hop[center] = 0;
        queue.push_back(center as u32);
        visited.push(center as u32);
        while let Some(v) = queue.pop_front() {
            let v = v as usize;
            if hop[v] as usize == radius {
                continue;
            }
            let next = hop[v] + 1;
            for &w in &graph.adj[v] {
                let wi = w as usize;
                if stamp[wi] == round || best[wi] < next {
                    continue;
                }
                stamp[wi] = round;
                hop[wi] = next;
                queue.push_back(w);
                visited.push(w);
            }
        }
        let mut cluster = Vec::new();
        for &v in &visited {
            let v = v as usize;
            if !assigned[v] {
                assigned[v] = true;
                if (hop[v] as usize) < radius {
                    cluster.push(graph.vertices[v]);
                } else {
                    guards.push(graph.vertices[v]);
                }
            }
            if hop[v] < best[v] {
                best[v] = hop[v];
            }
        }
        cluster.sort_unstable();
        clusters.push(cluster);
    }
    guards.sort_unstable();

    Decomposition {
        clusters,
        guards,
        radius,
        permutation: perm.iter().map(|&p| graph.vertices[p]).collect(),
        theta: graph.theta(),
    }
}

/// True iff every pair of points in distinct clusters is at least
/// `theta` apart. Holds for every output of [`ckr_decompose`]; exposed
/// as a checkable invariant.
pub fn cluster_separation_check(
    dataset: &Dataset,
    decomposition: &Decomposition,
    theta: f64,
) -> bool {
    let nonempty: Vec<&Vec<usize>> = decomposition
        .clusters
        .iter()
        .filter(|c| !c.is_empty())
        .collect();
    for (a, ca) in nonempty.iter().enumerate() {
        for cb in &nonempty[a + 1..] {
            for &u in ca.iter() {
                for &v in cb.iter() {
                    if dataset.distance(u, v) < theta {
                        return false;
                    }
                }
            }
        }
    }
    true
}
