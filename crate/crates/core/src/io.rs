//! File formats: event streams, edge lists with node manifests, and the
//! dataset manifest.
//!
//! Edge list: UTF-8, one `src<TAB>dst` per line (whitespace-separated is
//! accepted when the line has no tab), optional `#directed` header, other
//! `#` lines and blank lines ignored. The companion node manifest holds one
//! node id per line and preserves isolated nodes.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bias, DiffusionNetwork, InteractionEvent, Label, NetworkBuilder};

/// On-disk representation accepted by [`load_network`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkFormat {
    /// Edge list, plus the companion `.nodes` manifest when present.
    EdgeList,
    /// JSON-lines event stream holding events of a single URL.
    Events,
}

/// Path of the node manifest that accompanies an edge-list file.
pub fn node_manifest_path(edge_path: &Path) -> PathBuf {
    edge_path.with_extension("nodes")
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

/// Parses edge-list text into `builder`; returns the number of duplicate
/// edge lines collapsed.
pub fn parse_edge_list<R: Read>(reader: R, name: &str, builder: &mut NetworkBuilder) -> Result<usize> {
    let before = builder.duplicate_edges();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Format {
            path: name.to_string(),
            line: lineno,
            message: e.to_string(),
        })?;
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = if line.contains('\t') {
            line.split('\t').collect()
        } else {
            line.split_whitespace().collect()
        };
        let [src, dst] = fields.as_slice() else {
            return Err(Error::Format {
                path: name.to_string(),
                line: lineno,
                message: format!("expected 2 fields, found {}", fields.len()),
            });
        };
        let (src, dst) = (src.trim(), dst.trim());
        if src.is_empty() || dst.is_empty() {
            return Err(Error::Format {
                path: name.to_string(),
                line: lineno,
                message: "empty node identifier".into(),
            });
        }
        if src == dst {
            return Err(Error::SelfLoop {
                path: name.to_string(),
                line: lineno,
                node: src.to_string(),
            });
        }
        builder.add_edge(src, dst);
    }
    Ok(builder.duplicate_edges() - before)
}

pub fn parse_node_manifest<R: Read>(reader: R, name: &str, builder: &mut NetworkBuilder) -> Result<()> {
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| Error::Format {
            path: name.to_string(),
            line: i + 1,
            message: e.to_string(),
        })?;
        let id = line.trim();
        if !id.is_empty() && !id.starts_with('#') {
            builder.add_node(id);
        }
    }
    Ok(())
}

/// Loads a single network. The network id defaults to the file stem.
pub fn load_network(path: &Path, format: NetworkFormat) -> Result<DiffusionNetwork> {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    match format {
        NetworkFormat::EdgeList => {
            let mut builder = NetworkBuilder::new();
            let nodes = node_manifest_path(path);
            if nodes.exists() && nodes != path {
                parse_node_manifest(open(&nodes)?, &nodes.display().to_string(), &mut builder)?;
            }
            let dups = parse_edge_list(open(path)?, &path.display().to_string(), &mut builder)?;
            if dups > 0 {
                log::warn!("{}: collapsed {dups} duplicate edge line(s)", path.display());
            }
            Ok(builder.build(stem))
        }
        NetworkFormat::Events => {
            let events = read_events(path)?;
            let (events, malformed) = (events.events, events.malformed);
            if malformed > 0 {
                return Err(Error::Format {
                    path: path.display().to_string(),
                    line: 0,
                    message: format!("{malformed} malformed event line(s)"),
                });
            }
            let Some(first) = events.first() else {
                return Err(Error::Format {
                    path: path.display().to_string(),
                    line: 0,
                    message: "no events".into(),
                });
            };
            let url = first.url.clone();
            crate::graph::build_network(&events, &url)
        }
    }
}

/// Writes `net` as an edge list and its companion node manifest.
pub fn write_network(net: &DiffusionNetwork, edge_path: &Path) -> Result<()> {
    let write = |path: &Path, body: &dyn Fn(&mut BufWriter<File>) -> std::io::Result<()>| {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        body(&mut w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
    };
    write(edge_path, &|w| {
        writeln!(w, "#directed")?;
        for &(u, v) in net.edges() {
            writeln!(w, "{}\t{}", net.nodes()[u as usize], net.nodes()[v as usize])?;
        }
        Ok(())
    })?;
    write(&node_manifest_path(edge_path), &|w| {
        for id in net.nodes() {
            writeln!(w, "{id}")?;
        }
        Ok(())
    })
}

/// Result of reading an events file: parsed events and the 1-based line
/// numbers that failed to parse or validate.
#[derive(Debug, Default)]
pub struct EventRead {
    pub events: Vec<InteractionEvent>,
    pub malformed: usize,
    pub bad_lines: Vec<usize>,
}

pub fn parse_events<R: Read>(reader: R) -> Result<EventRead> {
    let mut out = EventRead::default();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(_) => {
                out.malformed += 1;
                out.bad_lines.push(i + 1);
                continue;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<InteractionEvent>(&line) {
            Ok(ev) if ev.validate().is_ok() => out.events.push(ev),
            _ => {
                out.malformed += 1;
                out.bad_lines.push(i + 1);
            }
        }
    }
    Ok(out)
}

pub fn read_events(path: &Path) -> Result<EventRead> {
    parse_events(open(path)?)
}

/// Groups events by URL, preserving the sorted URL order.
pub fn group_by_url(events: Vec<InteractionEvent>) -> BTreeMap<String, Vec<InteractionEvent>> {
    let mut groups: BTreeMap<String, Vec<InteractionEvent>> = BTreeMap::new();
    for ev in events {
        groups.entry(ev.url.clone()).or_default().push(ev);
    }
    groups
}

/// One row of the dataset manifest CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRow {
    pub network_id: String,
    pub path: String,
    pub label: Label,
    pub bias: Bias,
    pub tweet_count: u64,
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(open(path)?);
    let mut rows = Vec::new();
    for (i, rec) in reader.deserialize::<ManifestRow>().enumerate() {
        rows.push(rec.map_err(|e| Error::Format {
            path: path.display().to_string(),
            line: i + 2,
            message: e.to_string(),
        })?);
    }
    Ok(rows)
}

/// Appends rows to a manifest, writing the header when the file is new or
/// empty.
pub fn append_manifest(path: &Path, rows: &[ManifestRow]) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    let mut writer = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Resolves a manifest `path` entry relative to the manifest's directory.
pub fn resolve(manifest: &Path, entry: &str) -> PathBuf {
    let p = Path::new(entry);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        manifest.parent().unwrap_or(Path::new(".")).join(p)
    }
}
