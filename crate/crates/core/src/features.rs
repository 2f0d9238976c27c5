//! The seven global network properties used as the classifier feature space.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DiffusionNetwork;

/// Feature names in the fixed emission order.
pub const FEATURE_NAMES: [&str; 7] = ["scc", "lscc", "wcc", "lwcc", "dwcc", "cc", "kc"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// Number of strongly connected components.
    pub scc: usize,
    /// Size of the largest strongly connected component.
    pub lscc: usize,
    /// Number of weakly connected components.
    pub wcc: usize,
    /// Size of the largest weakly connected component.
    pub lwcc: usize,
    /// Diameter of the largest weakly connected component.
    pub dwcc: usize,
    /// Average clustering coefficient.
    pub cc: f64,
    /// Main k-core number.
    pub kc: usize,
}

impl FeatureVector {
    pub fn to_array(&self) -> [f64; 7] {
        [
            self.scc as f64,
            self.lscc as f64,
            self.wcc as f64,
            self.lwcc as f64,
            self.dwcc as f64,
            self.cc,
            self.kc as f64,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClusteringVariant {
    /// Local clustering on the undirected simple projection.
    #[default]
    Undirected,
    /// Directed clustering counting all directed triangles (Fagiolo).
    Directed,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub clustering: ClusteringVariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentFeatures {
    pub scc: usize,
    pub lscc: usize,
    pub wcc: usize,
    pub lwcc: usize,
}

/// Strongly connected component id of every node (iterative Tarjan).
/// Returns `(component_of, component_count)`.
pub fn strongly_connected(net: &DiffusionNetwork) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = net.node_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = net.out_neighbors(v);
            if *pos < succ.len() {
                let w = succ[*pos] as usize;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// Weakly connected component id of every node, ids in order of first node.
pub fn weakly_connected(net: &DiffusionNetwork) -> (Vec<usize>, usize) {
    let n = net.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in net.neighbors(v) {
                let w = w as usize;
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

fn largest(comp: &[usize], count: usize) -> (usize, usize) {
    let mut sizes = vec![0usize; count];
    for &c in comp {
        sizes[c] += 1;
    }
    sizes
        .iter()
        .enumerate()
        .fold((0, 0), |best, (c, &s)| if s > best.1 { (c, s) } else { best })
}

pub fn component_features(net: &DiffusionNetwork) -> Result<ComponentFeatures> {
    if net.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (scomp, scc) = strongly_connected(net);
    let (wcomp, wcc) = weakly_connected(net);
    Ok(ComponentFeatures {
        scc,
        lscc: largest(&scomp, scc).1,
        wcc,
        lwcc: largest(&wcomp, wcc).1,
    })
}

/// Undirected BFS eccentricity of `s`, restricted to nodes reachable from it.
fn eccentricity(net: &DiffusionNetwork, s: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) -> usize {
    dist.fill(u32::MAX);
    dist[s] = 0;
    queue.clear();
    queue.push_back(s);
    let mut ecc = 0;
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        ecc = ecc.max(d);
        for &w in net.neighbors(v) {
            let w = w as usize;
            if dist[w] == u32::MAX {
                dist[w] = d + 1;
                queue.push_back(w);
            }
        }
    }
    ecc as usize
}

/// Diameter of the undirected view of the largest weakly connected component.
/// When several components share the largest size the greatest of their
/// diameters is reported, so the value does not depend on node order.
pub fn lwcc_diameter(net: &DiffusionNetwork) -> Result<usize> {
    if net.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (comp, count) = weakly_connected(net);
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    let size = sizes.iter().copied().max().unwrap_or(0);
    let members: Vec<usize> = (0..net.node_count()).filter(|&v| sizes[comp[v]] == size).collect();
    let n = net.node_count();
    let run = |chunk: &[usize]| {
        let mut dist = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        chunk
            .iter()
            .map(|&s| eccentricity(net, s, &mut dist, &mut queue))
            .max()
            .unwrap_or(0)
    };
    if members.len() < 512 {
        return Ok(run(&members));
    }
    Ok(members.par_chunks(64).map(run).max().unwrap_or(0))
}

fn undirected_local_clustering(net: &DiffusionNetwork, v: usize, mark: &mut [bool]) -> f64 {
    let nb = net.neighbors(v);
    let deg = nb.len();
    if deg < 2 {
        return 0.0;
    }
    for &u in nb {
        mark[u as usize] = true;
    }
    let mut links = 0usize;
    for &u in nb {
        links += net.neighbors(u as usize).iter().filter(|&&w| w > u && mark[w as usize]).count();
    }
    for &u in nb {
        mark[u as usize] = false;
    }
    2.0 * links as f64 / (deg * (deg - 1)) as f64
}

fn directed_local_clustering(net: &DiffusionNetwork, v: usize) -> f64 {
    let nb = net.neighbors(v);
    let w = |a: usize, b: usize| net.has_edge(a, b) as u32 + net.has_edge(b, a) as u32;
    let total = net.out_neighbors(v).len() + net.in_neighbors(v).len();
    let reciprocal = net.out_neighbors(v).iter().filter(|&&u| net.has_edge(u as usize, v)).count();
    let denom = total * total.saturating_sub(1) - 2 * reciprocal;
    if denom == 0 {
        return 0.0;
    }
    let mut closed = 0u32;
    for &a in nb {
        for &b in nb {
            if a != b {
                closed += w(v, a as usize) * w(a as usize, b as usize) * w(b as usize, v);
            }
        }
    }
    // Ordered pairs count each triangle twice.
    (closed as f64 / 2.0) / denom as f64
}

/// Mean local clustering coefficient over all nodes.
pub fn average_clustering(net: &DiffusionNetwork, variant: ClusteringVariant) -> Result<f64> {
    if net.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = net.node_count();
    let sum: f64 = match variant {
        ClusteringVariant::Undirected => {
            let mut mark = vec![false; n];
            (0..n).map(|v| undirected_local_clustering(net, v, &mut mark)).sum()
        }
        ClusteringVariant::Directed => (0..n).map(|v| directed_local_clustering(net, v)).sum(),
    };
    Ok((sum / n as f64).clamp(0.0, 1.0))
}

/// Core number of every node in the undirected projection (bucket peeling).
pub fn core_numbers(net: &DiffusionNetwork) -> Vec<usize> {
    let n = net.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| net.neighbors(v).len()).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        order[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    if max_deg > 0 || n > 0 {
        bin[0] = 0;
    }
    for i in 0..n {
        let v = order[i];
        for &u in net.neighbors(v) {
            let u = u as usize;
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

/// Largest k with a nonempty k-core in the undirected projection.
pub fn main_kcore(net: &DiffusionNetwork) -> Result<usize> {
    if net.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(core_numbers(net).into_iter().max().unwrap_or(0))
}

pub fn extract_features(net: &DiffusionNetwork) -> Result<FeatureVector> {
    extract_features_with(net, &FeatureConfig::default())
}

pub fn extract_features_with(net: &DiffusionNetwork, config: &FeatureConfig) -> Result<FeatureVector> {
    let c = component_features(net)?;
    Ok(FeatureVector {
        scc: c.scc,
        lscc: c.lscc,
        wcc: c.wcc,
        lwcc: c.lwcc,
        dwcc: lwcc_diameter(net)?,
        cc: average_clustering(net, config.clustering)?,
        kc: main_kcore(net)?,
    })
}
