//! Tabular outputs: feature tables, per-feature distribution summaries,
//! ROC point files and signature caches.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_NAMES};
use crate::graph::{Bias, Label, SizeBucket};
use crate::graphlet::{CorrelationMatrix13, OrbitCountMatrix, ORBITS};
use crate::ml::metrics::RocPoint;
use crate::ml::stats::{ks_two_sample, ALPHA};
use crate::ml::Sample;
use crate::portrait::Portrait;

/// One row of the feature table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub network_id: String,
    pub label: Label,
    pub bias: Bias,
    pub n_nodes: usize,
    pub scc: usize,
    pub lscc: usize,
    pub wcc: usize,
    pub lwcc: usize,
    pub dwcc: usize,
    pub cc: f64,
    pub kc: usize,
}

impl From<&Sample> for FeatureRow {
    fn from(s: &Sample) -> Self {
        let f = &s.features;
        FeatureRow {
            network_id: s.network_id.clone(),
            label: s.label,
            bias: s.bias,
            n_nodes: s.n_nodes,
            scc: f.scc,
            lscc: f.lscc,
            wcc: f.wcc,
            lwcc: f.lwcc,
            dwcc: f.dwcc,
            cc: f.cc,
            kc: f.kc,
        }
    }
}

impl From<FeatureRow> for Sample {
    fn from(r: FeatureRow) -> Self {
        Sample {
            network_id: r.network_id,
            features: FeatureVector {
                scc: r.scc,
                lscc: r.lscc,
                wcc: r.wcc,
                lwcc: r.lwcc,
                dwcc: r.dwcc,
                cc: r.cc,
                kc: r.kc,
            },
            label: r.label,
            bias: r.bias,
            n_nodes: r.n_nodes,
        }
    }
}

pub fn write_feature_table<W: Write>(writer: W, rows: &[FeatureRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if rows.is_empty() {
        w.write_record(["network_id", "label", "bias", "n_nodes"].iter().chain(FEATURE_NAMES.iter()))?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io("<feature table>", e))?;
    Ok(())
}

pub fn read_feature_table<R: Read>(reader: R) -> Result<Vec<FeatureRow>> {
    csv::Reader::from_reader(reader)
        .deserialize()
        .enumerate()
        .map(|(i, r)| {
            r.map_err(|e| Error::Format {
                path: "<feature table>".into(),
                line: i + 2,
                message: e.to_string(),
            })
        })
        .collect()
}

/// `threshold,fpr,tpr` rows, with an optional leading fold column.
pub fn write_roc_csv<W: Write>(writer: W, curves: &[(usize, &[RocPoint])]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["fold", "threshold", "fpr", "tpr"])?;
    for (fold, points) in curves {
        for p in *points {
            w.write_record([fold.to_string(), p.threshold.to_string(), p.fpr.to_string(), p.tpr.to_string()])?;
        }
    }
    w.flush().map_err(|e| Error::io("<roc csv>", e))?;
    Ok(())
}

/// Five-number summary for box plots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxSummary {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

impl BoxSummary {
    pub fn of(values: &[f64]) -> Option<BoxSummary> {
        if values.is_empty() {
            return None;
        }
        let mut v = values.to_vec();
        v.sort_by(f64::total_cmp);
        Some(BoxSummary {
            n: v.len(),
            min: v[0],
            q1: quantile(&v, 0.25),
            median: quantile(&v, 0.5),
            q3: quantile(&v, 0.75),
            max: v[v.len() - 1],
        })
    }
}

/// Per-feature class comparison within one bucket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureComparison {
    pub bucket: String,
    pub feature: String,
    pub ks_statistic: f64,
    pub p_value: f64,
    pub rejected: bool,
    pub mainstream: BoxSummary,
    pub disinformation: BoxSummary,
}

/// KS test and box summaries for every feature in every bucket that holds
/// both classes.
pub fn compare_features(samples: &[Sample]) -> Result<Vec<FeatureComparison>> {
    let mut out = Vec::new();
    for bucket in [
        SizeBucket::All,
        SizeBucket::Under100,
        SizeBucket::From100To1000,
        SizeBucket::From1000,
    ] {
        let (pos, neg): (Vec<&Sample>, Vec<&Sample>) = samples
            .iter()
            .filter(|s| bucket.contains(s.n_nodes) && s.label != Label::Unlabeled)
            .partition(|s| s.label.is_positive());
        if pos.is_empty() || neg.is_empty() {
            continue;
        }
        for (f, name) in FEATURE_NAMES.iter().enumerate() {
            let xs: Vec<f64> = neg.iter().map(|s| s.features.to_array()[f]).collect();
            let ys: Vec<f64> = pos.iter().map(|s| s.features.to_array()[f]).collect();
            let ks = ks_two_sample(&xs, &ys)?;
            out.push(FeatureComparison {
                bucket: bucket.name().to_string(),
                feature: name.to_string(),
                ks_statistic: ks.statistic,
                p_value: ks.p_value,
                rejected: ks.rejects(ALPHA),
                mainstream: BoxSummary::of(&xs).expect("non-empty"),
                disinformation: BoxSummary::of(&ys).expect("non-empty"),
            });
        }
    }
    Ok(out)
}

/// Orbit counts as a 13-column integer CSV, one row per node.
pub fn write_orbit_counts<W: Write>(writer: W, counts: &OrbitCountMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record((0..ORBITS).map(|o| format!("o{o}")))?;
    for row in counts.rows() {
        w.write_record(row.iter().map(u64::to_string))?;
    }
    w.flush().map_err(|e| Error::io("<orbit cache>", e))?;
    Ok(())
}

pub fn write_correlations<W: Write>(writer: W, m: &CorrelationMatrix13) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    for row in m.values() {
        w.write_record(row.iter().map(|v| format!("{v:e}")))?;
    }
    w.flush().map_err(|e| Error::io("<correlation cache>", e))?;
    Ok(())
}

/// Sparse `l,k,count` triplets of a portrait.
pub fn write_portrait<W: Write>(writer: W, p: &Portrait) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["l", "k", "count"])?;
    for (l, k, c) in p.triplets() {
        w.write_record([l.to_string(), k.to_string(), c.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<portrait cache>", e))?;
    Ok(())
}

pub fn read_portrait<R: Read>(reader: R, nodes: usize) -> Result<Portrait> {
    let mut triplets = Vec::new();
    for (i, rec) in csv::Reader::from_reader(reader).deserialize::<(usize, usize, u64)>().enumerate() {
        triplets.push(rec.map_err(|e| Error::Format {
            path: "<portrait cache>".into(),
            line: i + 2,
            message: e.to_string(),
        })?);
    }
    Portrait::from_triplets(nodes, &triplets).ok_or_else(|| Error::Format {
        path: "<portrait cache>".into(),
        line: 0,
        message: format!("triplets inconsistent with {nodes} nodes"),
    })
}
