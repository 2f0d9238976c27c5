//! Stratified shuffle-split cross-validation folds.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Test-set size per class: proportional allocation of `n_test` with
/// largest remainders, at least one per class, never the whole class.
fn class_quotas(counts: &[usize], n_test: usize) -> Vec<usize> {
    let n: usize = counts.iter().sum();
    let exact: Vec<f64> = counts.iter().map(|&c| n_test as f64 * c as f64 / n as f64).collect();
    let mut quota: Vec<usize> = exact.iter().map(|e| e.floor() as usize).collect();
    let mut remaining = n_test.saturating_sub(quota.iter().sum());
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())));
    for &c in order.iter().cycle().take(counts.len()) {
        if remaining == 0 {
            break;
        }
        quota[c] += 1;
        remaining -= 1;
    }
    for (q, &c) in quota.iter_mut().zip(counts) {
        *q = (*q).max(1).min(c.saturating_sub(1));
    }
    while quota.iter().sum::<usize>() > n_test {
        let (largest, _) = quota.iter().enumerate().max_by_key(|&(i, q)| (*q, std::cmp::Reverse(i))).unwrap();
        if quota[largest] <= 1 {
            break;
        }
        quota[largest] -= 1;
    }
    quota
}

/// `folds` independent stratified train/test partitions of the samples.
/// The test set holds `ceil(test_fraction * n)` samples.
pub fn stratified_shuffle_split(labels: &[bool], folds: usize, test_fraction: f64, seed: u64) -> Result<Vec<Fold>> {
    if folds == 0 {
        return Err(Error::InvalidParameter("folds must be at least 1".into()));
    }
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!("test fraction {test_fraction} outside (0, 1)")));
    }
    let classes: [Vec<usize>; 2] = [
        (0..labels.len()).filter(|&i| !labels[i]).collect(),
        (0..labels.len()).filter(|&i| labels[i]).collect(),
    ];
    for (name, members) in ["negative", "positive"].iter().zip(&classes) {
        if members.len() < folds.max(2) {
            return Err(Error::ClassTooSmall {
                class: name.to_string(),
                count: members.len(),
                needed: folds.max(2),
            });
        }
    }
    let n = labels.len();
    let n_test = ((test_fraction * n as f64).ceil() as usize).clamp(2, n - 2);
    let counts = [classes[0].len(), classes[1].len()];
    let quotas = class_quotas(&counts, n_test);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(folds);
    for _ in 0..folds {
        let mut train = Vec::with_capacity(n);
        let mut test = Vec::with_capacity(n_test);
        for (members, &q) in classes.iter().zip(&quotas) {
            let mut shuffled = members.clone();
            shuffled.shuffle(&mut rng);
            test.extend_from_slice(&shuffled[..q]);
            train.extend_from_slice(&shuffled[q..]);
        }
        train.sort_unstable();
        test.sort_unstable();
        out.push(Fold { train, test });
    }
    Ok(out)
}
