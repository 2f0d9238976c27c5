//! Corpus assembly: manifest filtering, loading, feature extraction and
//! bucket labeling.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::{extract_features_with, FeatureConfig};
use crate::graph::{Bias, DiffusionNetwork, Label};
use crate::io::{load_network, read_manifest, resolve, ManifestRow, NetworkFormat};
use crate::ml::{LabeledDataset, Sample};

/// Articles with fewer associated tweets are dropped.
pub const DEFAULT_MIN_TWEETS: u64 = 50;

/// The source a network belongs to: the part of its id before the first
/// `:`, if any.
pub fn source_of(network_id: &str) -> Option<&str> {
    network_id.split_once(':').map(|(s, _)| s)
}

#[derive(Debug, Clone)]
pub struct CorpusFilter {
    pub min_tweets: u64,
    /// Keep only these biases; `None` keeps all.
    pub biases: Option<Vec<Bias>>,
    /// Drop networks whose source is listed.
    pub exclude_sources: Vec<String>,
}

impl Default for CorpusFilter {
    fn default() -> Self {
        CorpusFilter {
            min_tweets: DEFAULT_MIN_TWEETS,
            biases: None,
            exclude_sources: Vec::new(),
        }
    }
}

impl CorpusFilter {
    pub fn admits(&self, row: &ManifestRow) -> bool {
        row.tweet_count >= self.min_tweets
            && self.biases.as_ref().is_none_or(|b| b.contains(&row.bias))
            && !source_of(&row.network_id).is_some_and(|s| self.exclude_sources.iter().any(|x| x == s))
    }
}

/// Manifest rows with the directory their relative paths resolve against.
#[derive(Debug, Clone)]
pub struct CorpusManifest {
    pub base: PathBuf,
    pub entries: Vec<ManifestRow>,
    pub filter: CorpusFilter,
}

impl CorpusManifest {
    pub fn read(path: &Path) -> Result<Self> {
        Ok(CorpusManifest {
            base: path.to_path_buf(),
            entries: read_manifest(path)?,
            filter: CorpusFilter::default(),
        })
    }

    pub fn from_rows(base: impl Into<PathBuf>, entries: Vec<ManifestRow>) -> Self {
        CorpusManifest {
            base: base.into(),
            entries,
            filter: CorpusFilter::default(),
        }
    }

    pub fn with_filter(mut self, filter: CorpusFilter) -> Self {
        self.filter = filter;
        self
    }

    /// Entries passing the filter, sorted by network id.
    pub fn admitted(&self) -> Vec<&ManifestRow> {
        let mut rows: Vec<&ManifestRow> = self.entries.iter().filter(|r| self.filter.admits(r)).collect();
        rows.sort_by(|a, b| a.network_id.cmp(&b.network_id));
        rows
    }

    pub fn path_of(&self, row: &ManifestRow) -> PathBuf {
        resolve(&self.base, &row.path)
    }
}

/// Outcome of loading every admitted entry: successes in id order and the
/// failures with their errors.
#[derive(Debug, Default)]
pub struct LoadedCorpus {
    pub networks: Vec<DiffusionNetwork>,
    pub failures: Vec<(String, Error)>,
}

fn load_entry(manifest: &CorpusManifest, row: &ManifestRow) -> Result<DiffusionNetwork> {
    let path = manifest.path_of(row);
    let format = if path.extension().is_some_and(|e| e == "jsonl" || e == "json") {
        NetworkFormat::Events
    } else {
        NetworkFormat::EdgeList
    };
    let mut net = load_network(&path, format)?
        .with_id(row.network_id.clone())
        .with_label(row.label, row.bias);
    net.tweet_count = row.tweet_count;
    Ok(net)
}

/// Loads admitted entries concurrently; the result order is by network id.
pub fn load_corpus(manifest: &CorpusManifest) -> LoadedCorpus {
    let results: Vec<(String, Result<DiffusionNetwork>)> = manifest
        .admitted()
        .into_par_iter()
        .map(|row| (row.network_id.clone(), load_entry(manifest, row)))
        .collect();
    let mut out = LoadedCorpus::default();
    for (id, r) in results {
        match r {
            Ok(net) => out.networks.push(net),
            Err(e) => out.failures.push((id, e)),
        }
    }
    out
}

/// Builds labeled samples (features and size) from loaded networks.
/// Unlabeled networks are skipped.
pub fn samples_from(networks: &[DiffusionNetwork], config: &FeatureConfig) -> Result<Vec<Sample>> {
    networks
        .par_iter()
        .filter(|n| n.label != Label::Unlabeled)
        .map(|n| {
            Ok(Sample {
                network_id: n.network_id.clone(),
                features: extract_features_with(n, config)?,
                label: n.label,
                bias: n.bias,
                n_nodes: n.node_count(),
            })
        })
        .collect()
}

/// Loads, filters and featurizes a corpus. Any entry that cannot be loaded
/// fails the whole assembly with the offending ids listed.
pub fn assemble(manifest: &CorpusManifest) -> Result<LabeledDataset> {
    assemble_with(manifest, &FeatureConfig::default())
}

pub fn assemble_with(manifest: &CorpusManifest, config: &FeatureConfig) -> Result<LabeledDataset> {
    let corpus = load_corpus(manifest);
    if !corpus.failures.is_empty() {
        for (id, e) in &corpus.failures {
            log::error!("{id}: {e}");
        }
        return Err(Error::Unresolvable(corpus.failures.into_iter().map(|(id, _)| id).collect()));
    }
    LabeledDataset::new(samples_from(&corpus.networks, config)?)
}
