//! Statistical testing, standardization, classifiers, cross-validation and
//! evaluation metrics.

pub mod evaluate;
pub mod knn;
pub mod logistic;
pub mod metrics;
pub mod scale;
pub mod split;
pub mod stats;

pub use evaluate::{evaluate, ClassificationReport, ClassifierConfig, EvalConfig, FoldReport, LabeledDataset, Sample, Summary};
pub use knn::{knn_predict, knn_predict_from_distances};
pub use logistic::{logistic_fit, logistic_predict, LogisticConfig, LogisticModel};
pub use metrics::{binary_metrics, roc_auc, BinaryMetrics, Roc, RocPoint};
pub use scale::{standardize_apply, standardize_fit, Standardizer};
pub use split::{stratified_shuffle_split, Fold};
pub use stats::{ks_two_sample, KsResult};
