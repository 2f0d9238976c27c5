//! Network portraits and the portrait divergence between two networks.
//!
//! Row `l` of a portrait counts, for each `k`, how many nodes have exactly
//! `k` nodes at shortest-path distance `l`. Row 0 is always `B[0][1] = n`.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::DiffusionNetwork;

/// Which edges shortest paths may follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathMode {
    #[default]
    Directed,
    Undirected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    nodes: usize,
    /// `rows[l][k]`, each row of length `nodes + 1`.
    rows: Vec<Vec<u64>>,
}

impl Portrait {
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    /// Largest finite shortest-path distance in the network.
    pub fn max_distance(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `B[l][k]`, zero outside the stored range.
    pub fn get(&self, l: usize, k: usize) -> u64 {
        self.rows.get(l).and_then(|r| r.get(k)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(l, k, count)` triplets in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, u64)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(l, row)| row.iter().enumerate().filter(|(_, &c)| c > 0).map(move |(k, &c)| (l, k, c)))
            .collect()
    }

    /// Rebuilds a portrait from sparse triplets; missing `k = 0` mass is
    /// restored so every row sums to `nodes`.
    pub fn from_triplets(nodes: usize, triplets: &[(usize, usize, u64)]) -> Option<Self> {
        let depth = triplets.iter().map(|t| t.0).max().unwrap_or(0);
        let mut rows = vec![vec![0u64; nodes + 1]; depth + 1];
        for &(l, k, c) in triplets {
            *rows[l].get_mut(k)? += c;
        }
        for row in rows.iter_mut() {
            let filled: u64 = row[1..].iter().sum();
            row[0] = (nodes as u64).checked_sub(filled)?;
        }
        Some(Portrait { nodes, rows })
    }

    /// Pair-weighted distribution `P(k, l) ∝ k * B[l][k]` over `k >= 1`,
    /// sorted by `(l, k)`.
    pub fn distribution(&self) -> Vec<((u32, u32), f64)> {
        let total: f64 = self
            .rows
            .iter()
            .flat_map(|row| row.iter().enumerate().map(|(k, &c)| k as f64 * c as f64))
            .sum();
        let mut out = Vec::new();
        for (l, row) in self.rows.iter().enumerate() {
            for (k, &c) in row.iter().enumerate().skip(1) {
                if c > 0 {
                    out.push(((l as u32, k as u32), k as f64 * c as f64 / total));
                }
            }
        }
        out
    }
}

/// Number of nodes at each distance from `source`, index = distance.
fn shell_sizes(
    net: &DiffusionNetwork,
    source: usize,
    mode: PathMode,
    dist: &mut [u32],
    queue: &mut VecDeque<usize>,
    touched: &mut Vec<usize>,
) -> Vec<u64> {
    for &v in touched.iter() {
        dist[v] = u32::MAX;
    }
    touched.clear();
    let mut shells = vec![0u64];
    dist[source] = 0;
    touched.push(source);
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v] as usize;
        shells[d] += 1;
        let next = match mode {
            PathMode::Directed => net.out_neighbors(v),
            PathMode::Undirected => net.neighbors(v),
        };
        for &w in next {
            let w = w as usize;
            if dist[w] == u32::MAX {
                dist[w] = d as u32 + 1;
                touched.push(w);
                queue.push_back(w);
                if shells.len() <= d + 1 {
                    shells.push(0);
                }
            }
        }
    }
    shells
}

pub fn portrait(net: &DiffusionNetwork) -> Portrait {
    portrait_with(net, PathMode::default())
}

/// Portrait from per-source BFS; sources are processed in parallel and the
/// shell histograms merged by addition.
pub fn portrait_with(net: &DiffusionNetwork, mode: PathMode) -> Portrait {
    let n = net.node_count();
    let width = n + 1;
    let partial = (0..n)
        .into_par_iter()
        .fold(
            || (Vec::<Vec<u64>>::new(), vec![u32::MAX; n], VecDeque::new(), Vec::new()),
            |(mut rows, mut dist, mut queue, mut touched), s| {
                let shells = shell_sizes(net, s, mode, &mut dist, &mut queue, &mut touched);
                if rows.len() < shells.len() {
                    rows.resize(shells.len(), vec![0u64; width]);
                }
                for (l, &count) in shells.iter().enumerate() {
                    rows[l][count as usize] += 1;
                }
                (rows, dist, queue, touched)
            },
        )
        .map(|(rows, ..)| rows)
        .reduce(Vec::new, add_rows);

    let mut rows = if partial.is_empty() { vec![vec![0u64; width]] } else { partial };
    // Sources whose BFS ended before row l have zero nodes there.
    for row in rows.iter_mut() {
        let filled: u64 = row[1..].iter().sum();
        row[0] = n as u64 - filled;
    }
    Portrait { nodes: n, rows }
}

fn add_rows(mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    if a.len() < b.len() {
        return add_rows(b, a);
    }
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
    a
}

/// Jensen-Shannon divergence (base 2) between two sorted sparse
/// distributions.
pub fn js_divergence(p: &[((u32, u32), f64)], q: &[((u32, u32), f64)]) -> f64 {
    let term = |x: f64, m: f64| if x > 0.0 { x * (x / m).log2() } else { 0.0 };
    let (mut i, mut j) = (0, 0);
    let mut sum = 0.0;
    while i < p.len() || j < q.len() {
        let (px, qx) = match (p.get(i), q.get(j)) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                i += 1;
                j += 1;
                (a.1, b.1)
            }
            (Some(a), Some(b)) if a.0 < b.0 => {
                i += 1;
                (a.1, 0.0)
            }
            (Some(a), None) => {
                i += 1;
                (a.1, 0.0)
            }
            (_, Some(b)) => {
                j += 1;
                (0.0, b.1)
            }
            (None, None) => unreachable!(),
        };
        let m = 0.5 * (px + qx);
        sum += 0.5 * term(px, m) + 0.5 * term(qx, m);
    }
    sum.clamp(0.0, 1.0)
}

pub fn portrait_divergence(a: &DiffusionNetwork, b: &DiffusionNetwork) -> f64 {
    portrait_divergence_with(a, b, PathMode::default())
}

pub fn portrait_divergence_with(a: &DiffusionNetwork, b: &DiffusionNetwork, mode: PathMode) -> f64 {
    js_divergence(&portrait_with(a, mode).distribution(), &portrait_with(b, mode).distribution())
}
