//! Assigning clusters to colors via integral maximum flow.
//!
//! The network has a source feeding every nonempty cluster with unit
//! capacity, a unit arc from a cluster to each color present in it, and
//! per-color outflow split between a mandatory arc to the sink (capacity
//! `lower[j]`) and a slack path (capacity `upper[j] - lower[j]` into a
//! shared slack node, which drains to the sink with capacity
//! `k - sum(lower)`). A maximum flow of value `k` exists iff some
//! selection of one point per flowing cluster meets the fairness
//! bounds, and the integral arc flows identify the assignment.

use crate::dataset::Dataset;
use crate::fairness::FairnessSpec;

mod dinic {
    //! Small deterministic Dinic max-flow over integral capacities.

    #[derive(Clone)]
    struct Arc {
        to: u32,
        cap: u64,
    }

    pub struct Graph {
        arcs: Vec<Arc>,
        adj: Vec<Vec<u32>>,
        level: Vec<u32>,
        iter: Vec<usize>,
    }

    impl Graph {
        pub fn new(nodes: usize) -> Self {
            Self {
                arcs: Vec::new(),
                adj: vec![Vec::new(); nodes],
                level: vec![0; nodes],
                iter: vec![0; nodes],
            }
        }

        /// Adds a directed arc and returns its id; the paired reverse
        /// arc is `id ^ 1`.
        pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) -> usize {
            let id = self.arcs.len();
            self.arcs.push(Arc { to: to as u32, cap });
            self.adj[from].push(id as u32);
            self.arcs.push(Arc {
                to: from as u32,
                cap: 0,
            });
            self.adj[to].push((id + 1) as u32);
            id
        }

        /// Flow pushed through arc `id` so far (residual of the pair).
        pub fn flow(&self, id: usize) -> u64 {
            self.arcs[id ^ 1].cap
        }

        fn bfs(&mut self, s: usize, t: usize) -> bool {
            self.level.fill(u32::MAX);
            self.level[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &id in &self.adj[v] {
                    let arc = &self.arcs[id as usize];
                    if arc.cap > 0 && self.level[arc.to as usize] == u32::MAX {
                        self.level[arc.to as usize] = self.level[v] + 1;
                        queue.push_back(arc.to as usize);
                    }
                }
            }
            self.level[t] != u32::MAX
        }

        fn dfs(&mut self, v: usize, t: usize, limit: u64) -> u64 {
            if v == t {
                return limit;
            }
            while self.iter[v] < self.adj[v].len() {
                let id = self.adj[v][self.iter[v]] as usize;
                let (to, cap) = {
                    let arc = &self.arcs[id];
                    (arc.to as usize, arc.cap)
                };
                if cap > 0 && self.level[to] == self.level[v] + 1 {
                    let pushed = self.dfs(to, t, limit.min(cap));
                    if pushed > 0 {
                        self.arcs[id].cap -= pushed;
                        self.arcs[id ^ 1].cap += pushed;
                        return pushed;
                    }
                }
                self.iter[v] += 1;
            }
            0
        }

        pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
            let mut total = 0;
            while self.bfs(s, t) {
                self.iter.fill(0);
                loop {
                    let pushed = self.dfs(s, t, u64::MAX);
                    if pushed == 0 {
                        break;
                    }
                    total += pushed;
                }
            }
            total
        }
    }
}

/// The assignment network for one decomposition and fairness spec.
pub struct FlowNetwork {
    graph: dinic::Graph,
    source: usize,
    sink: usize,
    k: usize,
    /// Positional indices of the nonempty clusters, in network order.
    cluster_slots: Vec<usize>,
    /// `(slot position, color, arc id)` for every cluster-to-color arc.
    color_arcs: Vec<(usize, usize, usize)>,
    value: Option<u64>,
}

/// Builds the network over the nonempty clusters. Empty clusters are
/// dropped; a cluster holding several points of one color still gets a
/// single unit arc to that color.
pub fn build_flow_network(
    clusters: &[Vec<usize>],
    dataset: &Dataset,
    spec: &FairnessSpec,
) -> FlowNetwork {
    let m = spec.m();
    let k = spec.k();
    let lower_sum: usize = spec.lower().iter().sum();

    let cluster_slots: Vec<usize> = clusters
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(i, _)| i)
        .collect();
    let nc = cluster_slots.len();

    // node layout: source, clusters, colors, slack, sink
    let source = 0;
    let color_base = 1 + nc;
    let slack = color_base + m;
    let sink = slack + 1;
    let mut graph = dinic::Graph::new(sink + 1);

    let mut color_arcs = Vec::new();
    let mut seen = vec![false; m];
    for (pos, &slot) in cluster_slots.iter().enumerate() {
        let node = 1 + pos;
        graph.add_arc(source, node, 1);
        seen.fill(false);
        for &p in &clusters[slot] {
            let c = dataset.color(p);
            if !seen[c] {
                seen[c] = true;
                let id = graph.add_arc(node, color_base + c, 1);
                color_arcs.push((slot, c, id));
            }
        }
    }
    for c in 0..m {
        graph.add_arc(color_base + c, sink, spec.lower()[c] as u64);
        graph.add_arc(color_base + c, slack, (spec.upper()[c] - spec.lower()[c]) as u64);
    }
    graph.add_arc(slack, sink, (k - lower_sum) as u64);

    FlowNetwork {
        graph,
        source,
        sink,
        k,
        cluster_slots,
        color_arcs,
        value: None,
    }
}

impl FlowNetwork {
    /// Number of cluster nodes in the network.
    pub fn cluster_node_count(&self) -> usize {
        self.cluster_slots.len()
    }

    /// Solves the integral maximum flow and returns its value.
    pub fn solve(&mut self) -> u64 {
        let value = self.graph.max_flow(self.source, self.sink);
        self.value = Some(value);
        value
    }

    /// Flow value, if [`FlowNetwork::solve`] has run.
    pub fn value(&self) -> Option<u64> {
        self.value
    }

    /// `(cluster position, color)` pairs carrying one unit of flow.
    pub fn assignment(&self) -> Vec<(usize, usize)> {
        assert!(self.value.is_some(), "solve the network first");
        self.color_arcs
            .iter()
            .filter(|&&(_, _, id)| self.graph.flow(id) > 0)
            .map(|&(slot, color, _)| (slot, color))
            .collect()
    }
}

/// Extracts a selection from a solved network: one point per flowing
/// cluster, matching the assigned color, lowest index first. Returns
/// `None` when the flow value falls short of `k`, in which case no
/// feasible one-per-cluster selection exists in these clusters.
pub fn extract_solution(
    clusters: &[Vec<usize>],
    dataset: &Dataset,
    spec: &FairnessSpec,
    network: &FlowNetwork,
) -> Option<Vec<usize>> {
    let value = network.value().expect("solve the network first");
    if value < network.k as u64 {
        return None;
    }
    let mut selection = Vec::with_capacity(network.k);
    for (slot, color) in network.assignment() {
        let point = clusters[slot]
            .iter()
            .copied()
            .filter(|&p| dataset.color(p) == color)
            .min()
            .expect("assigned color must be present in the cluster");
        selection.push(point);
    }
    selection.sort_unstable();
    assert!(
        spec.validate(dataset, &selection),
        "a full flow must yield a selection inside the fairness bounds"
    );
    Some(selection)
}
