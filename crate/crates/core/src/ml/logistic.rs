//! L2-regularized logistic regression fit by full-batch gradient descent
//! with backtracking line search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticConfig {
    /// Strength of the `0.5 * l2 * |w|^2` penalty (bias unpenalized).
    pub l2: f64,
    /// Stop when the gradient norm falls below this.
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        LogisticConfig {
            l2: 1.0,
            tolerance: 1e-8,
            max_iter: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub iterations: usize,
    pub gradient_norm: f64,
}

impl LogisticModel {
    pub fn zeros(dim: usize) -> Self {
        LogisticModel {
            weights: vec![0.0; dim],
            bias: 0.0,
            iterations: 0,
            gradient_norm: f64::NAN,
        }
    }

    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x) + self.bias
    }

    /// `sigmoid(w.x + b)`.
    pub fn predict(&self, x: &[f64]) -> f64 {
        sigmoid(self.decision(x))
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `log(1 + exp(z))` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Penalized negative log-likelihood. `params` holds the weights followed by
/// the bias.
pub fn objective(params: &[f64], x: &[Vec<f64>], y: &[bool], l2: f64) -> f64 {
    let (w, b) = params.split_at(params.len() - 1);
    let nll: f64 = x
        .iter()
        .zip(y)
        .map(|(row, &label)| {
            let z = dot(w, row) + b[0];
            softplus(z) - if label { z } else { 0.0 }
        })
        .sum();
    nll + 0.5 * l2 * dot(w, w)
}

/// Analytic gradient of [`objective`].
pub fn gradient(params: &[f64], x: &[Vec<f64>], y: &[bool], l2: f64) -> Vec<f64> {
    let dim = params.len() - 1;
    let (w, b) = params.split_at(dim);
    let mut grad = vec![0.0; dim + 1];
    for (row, &label) in x.iter().zip(y) {
        let residual = sigmoid(dot(w, row) + b[0]) - if label { 1.0 } else { 0.0 };
        for (g, xi) in grad.iter_mut().zip(row) {
            *g += residual * xi;
        }
        grad[dim] += residual;
    }
    for (g, wi) in grad.iter_mut().zip(w) {
        *g += l2 * wi;
    }
    grad
}

fn validate(x: &[Vec<f64>], y: &[bool]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!("{} rows, {} labels", x.len(), y.len())));
    }
    if x.is_empty() {
        return Err(Error::EmptySample);
    }
    if y.iter().all(|&l| l) || y.iter().all(|&l| !l) {
        return Err(Error::SingleClass);
    }
    let dim = x[0].len();
    for (r, row) in x.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "row {r} has {} columns, expected {dim}",
                row.len()
            )));
        }
        if let Some(c) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: r, col: c });
        }
    }
    Ok(dim)
}

pub fn logistic_fit(x: &[Vec<f64>], y: &[bool], config: &LogisticConfig) -> Result<LogisticModel> {
    let dim = validate(x, y)?;
    let mut params = vec![0.0; dim + 1];
    let mut value = objective(&params, x, y, config.l2);
    let mut step = 1.0;
    let mut iterations = 0;
    let mut grad = gradient(&params, x, y, config.l2);
    let mut norm = dot(&grad, &grad).sqrt();

    while norm > config.tolerance && iterations < config.max_iter {
        iterations += 1;
        step *= 2.0;
        let sq = norm * norm;
        let mut candidate;
        let accepted = loop {
            candidate = params.iter().zip(&grad).map(|(p, g)| p - step * g).collect::<Vec<_>>();
            let next = objective(&candidate, x, y, config.l2);
            if next <= value - 0.5 * step * sq {
                value = next;
                break true;
            }
            // Near the optimum the decrease drops below rounding of the
            // objective; fall back to requiring a smaller gradient.
            if next <= value + 1e-12 * value.abs() {
                let g = gradient(&candidate, x, y, config.l2);
                if dot(&g, &g).sqrt() < norm {
                    value = next;
                    break true;
                }
            }
            step *= 0.5;
            if step < 1e-20 {
                break false;
            }
        };
        if !accepted {
            // No further descent is representable in floating point.
            break;
        }
        params = candidate;
        grad = gradient(&params, x, y, config.l2);
        norm = dot(&grad, &grad).sqrt();
    }

    let bias = params.pop().unwrap_or(0.0);
    Ok(LogisticModel {
        weights: params,
        bias,
        iterations,
        gradient_norm: norm,
    })
}

pub fn logistic_predict(model: &LogisticModel, x: &[f64]) -> f64 {
    model.predict(x)
}
