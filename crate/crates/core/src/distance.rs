//! Pairwise distance matrices between networks (graphlet correlation or
//! portrait divergence) and their CSV form.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DiffusionNetwork;
use crate::graphlet::GraphletSignature;
use crate::portrait::{js_divergence, portrait_with, PathMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    Dgcd13,
    Portrait,
}

impl std::str::FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dgcd13" | "dgcd-13" | "dgcd" => Ok(DistanceKind::Dgcd13),
            "portrait" | "pd" => Ok(DistanceKind::Portrait),
            other => Err(Error::InvalidParameter(format!("unknown distance {other:?}"))),
        }
    }
}

/// Square, symmetric, zero-diagonal matrix labeled by network ids.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub ids: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    pub fn new(ids: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let m = DistanceMatrix { ids, values };
        m.validate(1e-12)?;
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn validate(&self, tolerance: f64) -> Result<()> {
        let n = self.ids.len();
        if self.values.len() != n || self.values.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("matrix is not {n}x{n}")));
        }
        for i in 0..n {
            if self.values[i][i] != 0.0 {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {}", self.ids[i])));
            }
            for j in 0..i {
                let (a, b) = (self.values[i][j], self.values[j][i]);
                if !a.is_finite() || (a - b).abs() > tolerance {
                    return Err(Error::InvalidParameter(format!(
                        "asymmetric entry ({}, {}): {a} vs {b}",
                        self.ids[i], self.ids[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Matrix restricted and reordered to `ids`.
    pub fn select(&self, ids: &[String]) -> Result<DistanceMatrix> {
        let index: std::collections::HashMap<&str, usize> = self.ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let pos = ids
            .iter()
            .map(|id| {
                index
                    .get(id.as_str())
                    .copied()
                    .ok_or_else(|| Error::DimensionMismatch(format!("network {id} missing from distance matrix")))
            })
            .collect::<Result<Vec<_>>>()?;
        let values = pos.iter().map(|&i| pos.iter().map(|&j| self.values[i][j]).collect()).collect();
        Ok(DistanceMatrix { ids: ids.to_vec(), values })
    }

    /// CSV with a `network_id` header row and one labeled row per network.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(std::iter::once("network_id").chain(self.ids.iter().map(String::as_str)))?;
        for (id, row) in self.ids.iter().zip(&self.values) {
            let mut rec = vec![id.clone()];
            rec.extend(row.iter().map(|v| format!("{v:e}")));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io("<distance matrix>", e))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<DistanceMatrix> {
        let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(reader);
        let mut records = r.records();
        let header = records
            .next()
            .ok_or_else(|| Error::DimensionMismatch("empty distance matrix".into()))??;
        let ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut values = Vec::with_capacity(ids.len());
        for (i, rec) in records.enumerate() {
            let rec = rec?;
            if rec.get(0) != ids.get(i).map(String::as_str) {
                return Err(Error::DimensionMismatch(format!("row {} label does not match header", i + 1)));
            }
            let row = rec
                .iter()
                .skip(1)
                .map(|v| {
                    v.trim().parse::<f64>().map_err(|e| Error::Format {
                        path: "<distance matrix>".into(),
                        line: i + 2,
                        message: e.to_string(),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            values.push(row);
        }
        DistanceMatrix::new(ids, values)
    }
}

/// All pairwise distances from per-network signatures, computed in parallel.
fn pairwise<S: Sync>(ids: Vec<String>, signatures: &[S], dist: impl Fn(&S, &S) -> f64 + Sync) -> DistanceMatrix {
    let n = signatures.len();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (i + 1..n).map(|j| dist(&signatures[i], &signatures[j])).collect())
        .collect();
    let mut values = vec![vec![0.0; n]; n];
    for (i, row) in upper.into_iter().enumerate() {
        for (off, d) in row.into_iter().enumerate() {
            let j = i + 1 + off;
            values[i][j] = d;
            values[j][i] = d;
        }
    }
    DistanceMatrix { ids, values }
}

pub fn dgcd13_matrix(networks: &[DiffusionNetwork]) -> DistanceMatrix {
    let sigs: Vec<GraphletSignature> = networks.par_iter().map(GraphletSignature::of).collect();
    pairwise(ids_of(networks), &sigs, GraphletSignature::distance)
}

pub fn portrait_matrix(networks: &[DiffusionNetwork], mode: PathMode) -> DistanceMatrix {
    let dists: Vec<Vec<((u32, u32), f64)>> = networks.par_iter().map(|n| portrait_with(n, mode).distribution()).collect();
    pairwise(ids_of(networks), &dists, |a, b| js_divergence(a, b))
}

fn ids_of(networks: &[DiffusionNetwork]) -> Vec<String> {
    networks.iter().map(|n| n.network_id.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let m = DistanceMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0.0, 0.25, 1.0 / 3.0], vec![0.25, 0.0, 0.5], vec![1.0 / 3.0, 0.5, 0.0]],
        )
        .unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("network_id,a,b,c\n"));
        assert_eq!(DistanceMatrix::read_csv(buf.as_slice()).unwrap(), m);
    }

    #[test]
    fn rejects_asymmetry_and_diagonal() {
        let ids = vec!["a".to_string(), "b".to_string()];
        assert!(DistanceMatrix::new(ids.clone(), vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(ids.clone(), vec![vec![1.0, 1.0], vec![1.0, 0.0]]).is_err());
        assert!(DistanceMatrix::new(ids, vec![vec![0.0]]).is_err());
    }

    #[test]
    fn identical_networks_are_at_zero() {
        let a = DiffusionNetwork::from_indexed(4, [(0, 1), (0, 2), (2, 3)]).with_id("a");
        let b = a.clone().with_id("b");
        let nets = [a, b];
        for m in [dgcd13_matrix(&nets), portrait_matrix(&nets, PathMode::Directed)] {
            assert_eq!(m.values[0][1], 0.0);
            m.validate(0.0).unwrap();
        }
    }

    #[test]
    fn select_reorders() {
        let m = DistanceMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]],
        )
        .unwrap();
        let s = m.select(&["c".into(), "a".into()]).unwrap();
        assert_eq!(s.values, vec![vec![0.0, 2.0], vec![2.0, 0.0]]);
        assert!(m.select(&["z".into()]).is_err());
    }
}
