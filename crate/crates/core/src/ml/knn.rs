//! K-nearest-neighbor scoring, in feature space or over a precomputed
//! distance matrix.

use crate::error::{Error, Result};

/// Default neighbor counts evaluated when sweeping `k`.
pub const DEFAULT_KS: [usize; 3] = [3, 5, 10];

fn check_k(k: usize, train: usize) -> Result<()> {
    if k == 0 || k > train {
        return Err(Error::KOutOfRange { k, train });
    }
    Ok(())
}

/// Fraction of positives among the `k` nearest of `(distance, label)`
/// candidates, listed in training order. Ties keep the smaller index.
fn vote(mut candidates: Vec<(f64, bool)>, k: usize) -> f64 {
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    candidates[..k].iter().filter(|c| c.1).count() as f64 / k as f64
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Score of `query` against labeled training points (Euclidean metric).
pub fn knn_predict(points: &[Vec<f64>], labels: &[bool], query: &[f64], k: usize) -> Result<f64> {
    if points.len() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} points, {} labels",
            points.len(),
            labels.len()
        )));
    }
    check_k(k, points.len())?;
    let candidates = points.iter().zip(labels).map(|(p, &l)| (euclidean(p, query), l)).collect();
    Ok(vote(candidates, k))
}

/// Score of sample `query` using row `query` of a full distance matrix;
/// `labels` is indexed like the matrix.
pub fn knn_predict_from_distances(distances: &[Vec<f64>], labels: &[bool], train: &[usize], query: usize, k: usize) -> Result<f64> {
    if distances.len() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix, {} labels",
            distances.len(),
            distances.len(),
            labels.len()
        )));
    }
    check_k(k, train.len())?;
    let row = distances
        .get(query)
        .ok_or_else(|| Error::DimensionMismatch(format!("query index {query} out of range")))?;
    let candidates = train
        .iter()
        .map(|&t| {
            row.get(t)
                .map(|&d| (d, labels[t]))
                .ok_or_else(|| Error::DimensionMismatch(format!("train index {t} out of range")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(vote(candidates, k))
}
