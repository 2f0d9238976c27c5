//! Naive reference implementations used as oracles. They share no code with
//! the library beyond the network type itself.

#![allow(dead_code)]

use std::collections::VecDeque;

use diffnet::DiffusionNetwork;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random simple directed graph with `n` nodes and edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DiffusionNetwork {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    DiffusionNetwork::from_indexed(n, edges)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adjacency(net: &DiffusionNetwork) -> Vec<Vec<bool>> {
    let n = net.node_count();
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in net.edges() {
        a[u as usize][v as usize] = true;
    }
    a
}

fn symmetric(a: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[i][j] || a[j][i]).collect()).collect()
}

fn bool_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

/// Reflexive-transitive closure by repeated squaring of `I + A`.
pub fn reachability(a: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || a[i][j]).collect()).collect();
    let mut steps = 1;
    while steps < n {
        r = bool_product(&r, &r);
        steps *= 2;
    }
    r
}

/// Sizes of the classes of a symmetric reachability relation.
fn class_sizes(mutual: impl Fn(usize, usize) -> bool, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for i in 0..n {
        if !seen[i] {
            let members: Vec<usize> = (0..n).filter(|&j| mutual(i, j)).collect();
            for &j in &members {
                seen[j] = true;
            }
            sizes.push(members.len());
        }
    }
    sizes
}

/// All-pairs shortest path lengths by BFS; `None` when unreachable.
pub fn all_pairs(a: &[Vec<bool>]) -> Vec<Vec<Option<usize>>> {
    let n = a.len();
    (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for w in 0..n {
                    if a[v][w] && d[w].is_none() {
                        d[w] = Some(d[v].unwrap() + 1);
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleFeatures {
    pub scc: usize,
    pub lscc: usize,
    pub wcc: usize,
    pub lwcc: usize,
    pub dwcc: usize,
    pub cc: f64,
    pub kc: usize,
}

fn undirected_clustering(u: &[Vec<bool>]) -> f64 {
    let n = u.len();
    let mut total = 0.0;
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&w| u[v][w]).collect();
        if nb.len() < 2 {
            continue;
        }
        let mut closed = 0;
        let mut pairs = 0;
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                pairs += 1;
                if u[nb[i]][nb[j]] {
                    closed += 1;
                }
            }
        }
        total += closed as f64 / pairs as f64;
    }
    total / n as f64
}

/// Largest k whose k-core is nonempty, by repeatedly deleting nodes of
/// degree below k.
fn main_core(u: &[Vec<bool>]) -> usize {
    let n = u.len();
    let mut best = 0;
    for k in 1..n {
        let mut alive = vec![true; n];
        loop {
            let drop: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && (0..n).filter(|&w| alive[w] && u[v][w]).count() < k)
                .collect();
            if drop.is_empty() {
                break;
            }
            for v in drop {
                alive[v] = false;
            }
        }
        if alive.iter().any(|&x| x) {
            best = k;
        } else {
            break;
        }
    }
    best
}

pub fn oracle_features(net: &DiffusionNetwork) -> OracleFeatures {
    let n = net.node_count();
    let a = adjacency(net);
    let u = symmetric(&a);
    let r = reachability(&a);
    let strong = class_sizes(|i, j| r[i][j] && r[j][i], n);
    let ru = reachability(&u);
    let weak = class_sizes(|i, j| ru[i][j], n);
    let lwcc = *weak.iter().max().unwrap();
    // Among equally large components the widest one counts.
    let dist = all_pairs(&u);
    let dwcc = (0..n)
        .filter(|&i| (0..n).filter(|&j| ru[i][j]).count() == lwcc)
        .flat_map(|i| dist[i].iter().flatten().copied().collect::<Vec<_>>())
        .max()
        .unwrap();
    OracleFeatures {
        scc: strong.len(),
        lscc: *strong.iter().max().unwrap(),
        wcc: weak.len(),
        lwcc,
        dwcc,
        cc: undirected_clustering(&u),
        kc: main_core(&u),
    }
}

/// Edge list over positions `0..k` and the orbit of each position.
pub type Template = (&'static [(usize, usize)], &'static [usize]);

/// Every graphlet of the catalog as a template.
pub const TEMPLATES: [Template; 6] = [
    (&[(0, 1)], &[0, 1]),
    (&[(0, 1), (0, 2)], &[2, 3, 3]),
    (&[(1, 0), (2, 0)], &[4, 5, 5]),
    (&[(0, 1), (1, 2)], &[6, 7, 8]),
    (&[(0, 1), (1, 2), (0, 2)], &[9, 10, 11]),
    (&[(0, 1), (1, 2), (2, 0)], &[12, 12, 12]),
];

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Orbit counts by enumerating every node pair and triple, matching the
/// induced subgraph against each template under all position mappings.
pub fn oracle_orbits(net: &DiffusionNetwork) -> Vec<[u64; 13]> {
    let n = net.node_count();
    let a = adjacency(net);
    let mut counts = vec![[0u64; 13]; n];
    let mut classify = |nodes: &[usize]| {
        let k = nodes.len();
        for (edges, orbits) in TEMPLATES.iter().filter(|(_, o)| o.len() == k) {
            for perm in permutations(k) {
                // perm[position] = index into `nodes`
                let matches = (0..k).all(|x| (0..k).all(|y| x == y || a[nodes[perm[x]]][nodes[perm[y]]] == edges.contains(&(x, y))));
                if matches {
                    for pos in 0..k {
                        counts[nodes[perm[pos]]][orbits[pos]] += 1;
                    }
                    return;
                }
            }
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            classify(&[i, j]);
            for l in j + 1..n {
                classify(&[i, j, l]);
            }
        }
    }
    counts
}

/// Pearson correlation of average ranks; 0 when either side is constant.
pub fn oracle_spearman(x: &[f64], y: &[f64]) -> f64 {
    let rank = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .map(|&a| {
                let below = v.iter().filter(|&&b| b < a).count() as f64;
                let equal = v.iter().filter(|&&b| b == a).count() as f64;
                below + (equal + 1.0) / 2.0
            })
            .collect()
    };
    let (rx, ry) = (rank(x), rank(y));
    let m = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / m, ry.iter().sum::<f64>() / m);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        0.0
    } else {
        cov / (vx * vy).sqrt()
    }
}

/// Portrait table from all-pairs BFS: `B[l][k]` for `l` up to the largest
/// finite distance and `k` up to `n`.
pub fn oracle_portrait(net: &DiffusionNetwork, undirected: bool) -> Vec<Vec<u64>> {
    let n = net.node_count();
    let mut a = adjacency(net);
    if undirected {
        a = symmetric(&a);
    }
    let d = all_pairs(&a);
    let depth = d.iter().flatten().flatten().copied().max().unwrap_or(0);
    let mut b = vec![vec![0u64; n + 1]; depth + 1];
    for (l, row) in b.iter_mut().enumerate() {
        for src in &d {
            let k = src.iter().filter(|&&x| x == Some(l)).count();
            row[k] += 1;
        }
    }
    b
}

/// KS statistic as the largest gap between the two empirical CDFs,
/// evaluated at every pooled sample point.
pub fn oracle_ks(xs: &[f64], ys: &[f64]) -> f64 {
    let ecdf = |v: &[f64], t: f64| v.iter().filter(|&&a| a <= t).count() as f64 / v.len() as f64;
    xs.iter().chain(ys).map(|&t| (ecdf(xs, t) - ecdf(ys, t)).abs()).fold(0.0, f64::max)
}

/// AUC by counting every positive/negative pair.
pub fn oracle_auc(scores: &[f64], labels: &[bool]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, &si) in scores.iter().enumerate() {
        for (j, &sj) in scores.iter().enumerate() {
            if labels[i] && !labels[j] {
                pairs += 1.0;
                wins += if si > sj {
                    1.0
                } else if si == sj {
                    0.5
                } else {
                    0.0
                };
            }
        }
    }
    wins / pairs
}
