//! Column-wise z-score standardization.

use serde::Serialize;

/// Per-column mean and population standard deviation fit on a training set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Fits on `train` (rows of equal width). An empty set yields an empty
    /// standardizer.
    pub fn fit(train: &[Vec<f64>]) -> Self {
        let width = train.first().map_or(0, Vec::len);
        let n = train.len() as f64;
        let means: Vec<f64> = (0..width).map(|c| train.iter().map(|r| r[c]).sum::<f64>() / n).collect();
        let stds = (0..width)
            .map(|c| {
                let var = train.iter().map(|r| (r[c] - means[c]).powi(2)).sum::<f64>() / n;
                var.sqrt()
            })
            .collect();
        Standardizer { means, stds }
    }

    /// Z-scores of one row; zero-variance columns map to 0.
    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.means.iter().zip(&self.stds))
            .map(|(x, (m, s))| if *s > 0.0 { (x - m) / s } else { 0.0 })
            .collect()
    }

    pub fn apply_all(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.apply(r)).collect()
    }
}

pub fn standardize_fit(train: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let s = Standardizer::fit(train);
    (s.means, s.stds)
}

pub fn standardize_apply(x: &[f64], means: &[f64], stds: &[f64]) -> Vec<f64> {
    Standardizer {
        means: means.to_vec(),
        stds: stds.to_vec(),
    }
    .apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_values() {
        let rows = vec![vec![1.0], vec![2.0], vec![3.0]];
        let (means, stds) = standardize_fit(&rows);
        assert_eq!(means, [2.0]);
        assert!((stds[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let z: Vec<f64> = rows.iter().map(|r| standardize_apply(r, &means, &stds)[0]).collect();
        let expected = [-1.224744871391589, 0.0, 1.224744871391589];
        for (a, b) in z.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_column_maps_to_zero() {
        let rows = vec![vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 4.0]];
        let s = Standardizer::fit(&rows);
        assert!(s.apply_all(&rows).iter().all(|r| r[0] == 0.0));
    }

    #[test]
    fn refit_after_apply_is_identity() {
        let rows = vec![vec![1.0, 10.0], vec![4.0, -2.0], vec![9.0, 3.0], vec![0.5, 0.0]];
        let z = Standardizer::fit(&rows).apply_all(&rows);
        let again = Standardizer::fit(&z);
        for (m, s) in again.means.iter().zip(&again.stds) {
            assert!(m.abs() < 1e-9);
            assert!((s - 1.0).abs() < 1e-9);
        }
        // A second application with the original parameters moves the data.
        let twice = Standardizer::fit(&rows).apply_all(&z);
        assert_ne!(twice, z);
    }
}
