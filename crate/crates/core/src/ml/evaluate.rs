//! Labeled datasets and the cross-validated evaluation loop.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::knn::{knn_predict, knn_predict_from_distances};
use super::logistic::{logistic_fit, LogisticConfig};
use super::metrics::{auc, binary_metrics, roc_auc, RocPoint, DECISION_THRESHOLD};
use super::scale::Standardizer;
use super::split::{stratified_shuffle_split, Fold};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::graph::{Bias, Label, SizeBucket};

/// Minimum samples per class inside the evaluated bucket.
pub const MIN_PER_CLASS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub network_id: String,
    pub features: FeatureVector,
    pub label: Label,
    pub bias: Bias,
    pub n_nodes: usize,
}

impl Sample {
    pub fn bucket(&self) -> SizeBucket {
        SizeBucket::for_node_count(self.n_nodes)
    }
}

#[derive(Debug, Clone, Default)]
pub struct LabeledDataset {
    samples: Vec<Sample>,
    distances: Option<DistanceMatrix>,
}

impl LabeledDataset {
    /// Samples must carry unique ids and a mainstream/disinformation label.
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &samples {
            if !seen.insert(s.network_id.as_str()) {
                return Err(Error::InvalidParameter(format!("duplicate network id {}", s.network_id)));
            }
            if s.label == Label::Unlabeled {
                return Err(Error::InvalidParameter(format!("network {} is unlabeled", s.network_id)));
            }
        }
        Ok(LabeledDataset { samples, distances: None })
    }

    /// Attaches a distance matrix, reordered to the sample order. Every
    /// sample must appear in the matrix.
    pub fn with_distances(mut self, matrix: &DistanceMatrix) -> Result<Self> {
        let ids: Vec<String> = self.samples.iter().map(|s| s.network_id.clone()).collect();
        self.distances = Some(matrix.select(&ids)?);
        Ok(self)
    }

    /// Keeps only samples whose id appears in `ids`.
    pub fn retain_ids(mut self, ids: &[String]) -> Self {
        let keep: HashSet<&str> = ids.iter().map(String::as_str).collect();
        self.samples.retain(|s| keep.contains(s.network_id.as_str()));
        self
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn distances(&self) -> Option<&DistanceMatrix> {
        self.distances.as_ref()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample counts per non-`All` bucket.
    pub fn bucket_histogram(&self) -> [(SizeBucket, usize); 3] {
        SizeBucket::PARTITION.map(|b| (b, self.samples.iter().filter(|s| s.bucket() == b).count()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClassifierConfig {
    Lr(LogisticConfig),
    /// K-NN over standardized features.
    Knn {
        k: usize,
    },
    /// K-NN over the dataset's attached distance matrix.
    KnnDistance {
        k: usize,
    },
}

impl ClassifierConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifierConfig::Lr(_) => "lr",
            ClassifierConfig::Knn { .. } => "knn",
            ClassifierConfig::KnnDistance { .. } => "knn-distance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub classifier: ClassifierConfig,
    pub folds: usize,
    pub test_fraction: f64,
    pub seed: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            classifier: ClassifierConfig::Lr(LogisticConfig::default()),
            folds: 10,
            test_fraction: 0.1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub fold: usize,
    pub n_train: usize,
    pub n_test: usize,
    pub auc: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub roc: Vec<RocPoint>,
    pub test_ids: Vec<String>,
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
}

impl Summary {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Summary {
        let v: Vec<f64> = values.into_iter().collect();
        let n = v.len().max(1) as f64;
        let mean = v.iter().sum::<f64>() / n;
        let std = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt();
        Summary { mean, std }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub bucket: String,
    pub classifier: String,
    pub config: EvalConfig,
    pub n_samples: usize,
    pub n_positive: usize,
    pub folds: Vec<FoldReport>,
    pub auc: Summary,
    pub precision: Summary,
    pub recall: Summary,
    pub f1: Summary,
    /// AUC over the concatenated test scores of all folds.
    pub pooled_auc: f64,
}

/// Rows in the evaluated bucket, their labels, and the rows used to fit the
/// standardizer for each fold.
struct Selection<'a> {
    dataset: &'a LabeledDataset,
    rows: Vec<usize>,
    labels: Vec<bool>,
    features: Vec<Vec<f64>>,
}

impl Selection<'_> {
    /// Scores of the fold's test samples. `scaler_rows` are the local
    /// indices the standardizer is fit on (the training rows in
    /// [`evaluate`]).
    fn score_fold(&self, classifier: &ClassifierConfig, fold: &Fold, scaler_rows: &[usize]) -> Result<Vec<f64>> {
        let pick = |idx: &[usize]| idx.iter().map(|&i| self.features[i].clone()).collect::<Vec<_>>();
        let train_labels: Vec<bool> = fold.train.iter().map(|&i| self.labels[i]).collect();
        match *classifier {
            ClassifierConfig::Lr(cfg) => {
                let scaler = Standardizer::fit(&pick(scaler_rows));
                let model = logistic_fit(&scaler.apply_all(&pick(&fold.train)), &train_labels, &cfg)?;
                Ok(fold.test.iter().map(|&i| model.predict(&scaler.apply(&self.features[i]))).collect())
            }
            ClassifierConfig::Knn { k } => {
                let scaler = Standardizer::fit(&pick(scaler_rows));
                let train = scaler.apply_all(&pick(&fold.train));
                fold.test
                    .iter()
                    .map(|&i| knn_predict(&train, &train_labels, &scaler.apply(&self.features[i]), k))
                    .collect()
            }
            ClassifierConfig::KnnDistance { k } => {
                let matrix = self
                    .dataset
                    .distances()
                    .ok_or_else(|| Error::InvalidParameter("knn-distance needs a distance matrix".into()))?;
                let global_train: Vec<usize> = fold.train.iter().map(|&i| self.rows[i]).collect();
                let all_labels: Vec<bool> = self.dataset.samples().iter().map(|s| s.label.is_positive()).collect();
                fold.test
                    .iter()
                    .map(|&i| knn_predict_from_distances(&matrix.values, &all_labels, &global_train, self.rows[i], k))
                    .collect()
            }
        }
    }
}

fn select<'a>(dataset: &'a LabeledDataset, bucket: SizeBucket) -> Result<Selection<'a>> {
    let rows: Vec<usize> = (0..dataset.len())
        .filter(|&i| bucket.contains(dataset.samples[i].n_nodes))
        .collect();
    let labels: Vec<bool> = rows.iter().map(|&i| dataset.samples[i].label.is_positive()).collect();
    let pos = labels.iter().filter(|&&l| l).count();
    for (class, count) in [("disinformation", pos), ("mainstream", labels.len() - pos)] {
        if count < MIN_PER_CLASS {
            return Err(Error::ClassTooSmall {
                class: format!("{class} in {}", bucket.name()),
                count,
                needed: MIN_PER_CLASS,
            });
        }
    }
    let features = rows.iter().map(|&i| dataset.samples[i].features.to_array().to_vec()).collect();
    Ok(Selection {
        dataset,
        rows,
        labels,
        features,
    })
}

/// Cross-validated evaluation restricted to `bucket`: per fold, fit the
/// standardizer and model on the training split and score the test split.
pub fn evaluate(dataset: &LabeledDataset, config: &EvalConfig, bucket: SizeBucket) -> Result<ClassificationReport> {
    evaluate_impl(dataset, config, bucket, false)
}

fn evaluate_impl(dataset: &LabeledDataset, config: &EvalConfig, bucket: SizeBucket, leak: bool) -> Result<ClassificationReport> {
    let sel = select(dataset, bucket)?;
    let folds = stratified_shuffle_split(&sel.labels, config.folds, config.test_fraction, config.seed)?;
    let reports = folds
        .par_iter()
        .enumerate()
        .map(|(f, fold)| {
            let scaler_rows: Vec<usize> = if leak {
                fold.train.iter().chain(&fold.test).copied().collect()
            } else {
                fold.train.clone()
            };
            let wrap = |e: Error| Error::Fold {
                fold: f,
                source: Box::new(e),
            };
            let scores = sel.score_fold(&config.classifier, fold, &scaler_rows).map_err(wrap)?;
            let labels: Vec<bool> = fold.test.iter().map(|&i| sel.labels[i]).collect();
            let roc = roc_auc(&scores, &labels).map_err(wrap)?;
            let m = binary_metrics(&scores, &labels, DECISION_THRESHOLD);
            Ok(FoldReport {
                fold: f,
                n_train: fold.train.len(),
                n_test: fold.test.len(),
                auc: roc.auc,
                precision: m.precision,
                recall: m.recall,
                f1: m.f1,
                roc: roc.points,
                test_ids: fold.test.iter().map(|&i| dataset.samples[sel.rows[i]].network_id.clone()).collect(),
                scores,
            })
        })
        .collect::<Result<Vec<FoldReport>>>()?;

    let pooled_scores: Vec<f64> = reports.iter().flat_map(|r| r.scores.iter().copied()).collect();
    let pooled_labels: Vec<bool> = folds.iter().flat_map(|f| f.test.iter().map(|&i| sel.labels[i])).collect();
    Ok(ClassificationReport {
        bucket: bucket.name().to_string(),
        classifier: config.classifier.name().to_string(),
        config: *config,
        n_samples: sel.rows.len(),
        n_positive: sel.labels.iter().filter(|&&l| l).count(),
        auc: Summary::of(reports.iter().map(|r| r.auc)),
        precision: Summary::of(reports.iter().map(|r| r.precision)),
        recall: Summary::of(reports.iter().map(|r| r.recall)),
        f1: Summary::of(reports.iter().map(|r| r.f1)),
        pooled_auc: auc(&pooled_scores, &pooled_labels)?,
        folds: reports,
    })
}
