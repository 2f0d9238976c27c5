//! Directed graphlet orbit counting (2- and 3-node graphlets) and the
//! directed graphlet correlation distance over 13 orbits.
//!
//! The catalog covers the connected directed graphlets on 2 and 3 nodes that
//! contain no reciprocated pair. Orbit numbering:
//!
//! | orbit | graphlet      | position              |
//! |-------|---------------|-----------------------|
//! | 0, 1  | single edge   | source, target        |
//! | 2, 3  | out-star      | center, leaf          |
//! | 4, 5  | in-star       | center, leaf          |
//! | 6-8   | directed path | start, middle, end    |
//! | 9-11  | feed-forward  | source, relay, sink   |
//! | 12    | directed cycle| any                   |
//!
//! Induced subgraphs containing a reciprocated pair belong to no orbit and
//! are not counted.

use rayon::prelude::*;

use crate::graph::DiffusionNetwork;

pub const ORBITS: usize = 13;

/// Number of strictly-upper-triangular entries of a 13x13 matrix.
pub const UPPER_ENTRIES: usize = ORBITS * (ORBITS - 1) / 2;

/// Node-count threshold above which orbit counting is flagged as costly.
pub const LARGE_NETWORK_NODES: usize = 1000;

/// Orbit of each position of a 3-node induced subgraph, indexed by its 6-bit
/// adjacency signature. Bit layout over positions (0, 1, 2):
/// `0->1, 1->0, 0->2, 2->0, 1->2, 2->1`.
pub(crate) const TRIPLE_ORBITS: [Option<[u8; 3]>; 64] = [
    None,
    None,
    None,
    None,
    None,
    Some([2, 3, 3]),
    Some([7, 6, 8]),
    None,
    None,
    Some([7, 8, 6]),
    Some([4, 5, 5]),
    None,
    None,
    None,
    None,
    None,
    None,
    Some([6, 7, 8]),
    Some([3, 2, 3]),
    None,
    Some([5, 5, 4]),
    Some([9, 10, 11]),
    Some([10, 9, 11]),
    None,
    Some([8, 6, 7]),
    Some([12, 12, 12]),
    Some([11, 9, 10]),
    None,
    None,
    None,
    None,
    None,
    None,
    Some([5, 4, 5]),
    Some([8, 7, 6]),
    None,
    Some([6, 8, 7]),
    Some([9, 11, 10]),
    Some([12, 12, 12]),
    None,
    Some([3, 3, 2]),
    Some([10, 11, 9]),
    Some([11, 10, 9]),
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
    None,
];

/// 6-bit adjacency signature of the ordered triple `(a, b, c)`.
pub(crate) fn triple_signature(net: &DiffusionNetwork, a: usize, b: usize, c: usize) -> usize {
    let arcs = [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)];
    arcs.iter()
        .enumerate()
        .filter(|(_, &(u, v))| net.has_edge(u, v))
        .fold(0, |sig, (bit, _)| sig | (1 << bit))
}

/// A classified triple: signature, orbit of each position, member nodes.
type TripleHit = (usize, [u8; 3], [usize; 3]);

/// Per-node counts of the 13 orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCountMatrix {
    rows: Vec<[u64; ORBITS]>,
}

impl OrbitCountMatrix {
    pub fn from_rows(rows: Vec<[u64; ORBITS]>) -> Self {
        OrbitCountMatrix { rows }
    }

    pub fn rows(&self) -> &[[u64; ORBITS]] {
        &self.rows
    }

    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, orbit: usize) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().map(move |r| r[orbit])
    }

    pub fn column_sum(&self, orbit: usize) -> u64 {
        self.column(orbit).sum()
    }
}

/// Counts, for every node, its appearances in each orbit of every connected
/// induced 2- or 3-node subgraph.
pub fn count_orbits(net: &DiffusionNetwork) -> OrbitCountMatrix {
    let n = net.node_count();
    if n >= LARGE_NETWORK_NODES {
        log::warn!(
            "counting graphlet orbits on {} nodes ({}); cost grows with the sum of squared degrees",
            n,
            net.network_id
        );
    }
    let mut rows = vec![[0u64; ORBITS]; n];
    for &(u, v) in net.edges() {
        let (u, v) = (u as usize, v as usize);
        if !net.has_edge(v, u) {
            rows[u][0] += 1;
            rows[v][1] += 1;
        }
    }

    // Every connected triple is either an open wedge, seen once from its
    // center, or a triangle, attributed to its smallest node.
    let triples: Vec<Vec<TripleHit>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let nb = net.neighbors(v);
            let mut found = Vec::new();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    let (a, b) = (a as usize, b as usize);
                    let closed = net.neighbors(a).binary_search(&(b as u32)).is_ok();
                    if closed && (v > a || v > b) {
                        continue;
                    }
                    if let Some(orbits) = TRIPLE_ORBITS[triple_signature(net, v, a, b)] {
                        found.push((v, orbits, [v, a, b]));
                    }
                }
            }
            found
        })
        .collect();
    for (_, orbits, nodes) in triples.into_iter().flatten() {
        for (pos, &node) in nodes.iter().enumerate() {
            rows[node][orbits[pos] as usize] += 1;
        }
    }
    OrbitCountMatrix { rows }
}

/// Symmetric 13x13 matrix of Spearman correlations between orbit columns.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix13 {
    values: [[f64; ORBITS]; ORBITS],
}

impl CorrelationMatrix13 {
    pub fn from_values(values: [[f64; ORBITS]; ORBITS]) -> Self {
        CorrelationMatrix13 { values }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn values(&self) -> &[[f64; ORBITS]; ORBITS] {
        &self.values
    }

    /// Strictly-upper-triangular entries in row-major order.
    pub fn upper(&self) -> [f64; UPPER_ENTRIES] {
        let mut out = [0.0; UPPER_ENTRIES];
        let mut k = 0;
        for i in 0..ORBITS {
            for j in i + 1..ORBITS {
                out[k] = self.values[i][j];
                k += 1;
            }
        }
        out
    }
}

/// Average ranks (1-based) with ties sharing the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlations of all orbit-column pairs after appending a row of
/// ones. A column that is still constant correlates 0 with every other
/// column.
pub fn correlation_matrix(counts: &OrbitCountMatrix) -> CorrelationMatrix13 {
    let centered: Vec<Option<Vec<f64>>> = (0..ORBITS)
        .map(|o| {
            let col: Vec<f64> = counts.column(o).map(|c| c as f64).chain([1.0]).collect();
            let ranks = average_ranks(&col);
            let mean = ranks.iter().sum::<f64>() / ranks.len() as f64;
            let dev: Vec<f64> = ranks.iter().map(|r| r - mean).collect();
            let norm = dev.iter().map(|d| d * d).sum::<f64>().sqrt();
            (norm > 0.0).then(|| dev.into_iter().map(|d| d / norm).collect())
        })
        .collect();
    let mut values = [[0.0; ORBITS]; ORBITS];
    for i in 0..ORBITS {
        values[i][i] = 1.0;
        for j in i + 1..ORBITS {
            let r = match (&centered[i], &centered[j]) {
                (Some(a), Some(b)) => a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>().clamp(-1.0, 1.0),
                _ => 0.0,
            };
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    CorrelationMatrix13 { values }
}

/// Cached per-network graphlet signature.
#[derive(Debug, Clone)]
pub struct GraphletSignature {
    pub counts: OrbitCountMatrix,
    pub correlations: CorrelationMatrix13,
}

impl GraphletSignature {
    pub fn of(net: &DiffusionNetwork) -> Self {
        let counts = count_orbits(net);
        let correlations = correlation_matrix(&counts);
        GraphletSignature { counts, correlations }
    }

    pub fn distance(&self, other: &GraphletSignature) -> f64 {
        correlation_distance(&self.correlations, &other.correlations)
    }
}

/// Euclidean distance between the strictly-upper parts of two correlation
/// matrices.
pub fn correlation_distance(a: &CorrelationMatrix13, b: &CorrelationMatrix13) -> f64 {
    a.upper()
        .iter()
        .zip(b.upper().iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn dgcd13(a: &DiffusionNetwork, b: &DiffusionNetwork) -> f64 {
    GraphletSignature::of(a).distance(&GraphletSignature::of(b))
}
