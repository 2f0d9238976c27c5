//! Command implementations behind the `diffnet` binary.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dataset::{load_corpus, CorpusFilter, CorpusManifest, DEFAULT_MIN_TWEETS};
use crate::distance::{dgcd13_matrix, portrait_matrix, DistanceMatrix};
use crate::error::{Error, Result};
use crate::features::{extract_features_with, ClusteringVariant, FeatureConfig};
use crate::graph::{build_network_with, Bias, DiffusionNetwork, EdgeOrientation, Label, SizeBucket};
use crate::graphlet::{GraphletSignature, LARGE_NETWORK_NODES};
use crate::io::{append_manifest, group_by_url, read_events, write_network, ManifestRow};
use crate::ml::{evaluate, ClassifierConfig, EvalConfig, LabeledDataset, LogisticConfig, Sample};
use crate::portrait::{portrait_with, PathMode};
use crate::report::{
    compare_features, read_feature_table, write_correlations, write_feature_table, write_orbit_counts, write_portrait, write_roc_csv,
    FeatureRow,
};
use crate::synth::{generate_ensemble, CascadeRecipe, ClassProfile};

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "DIFFNET_THREADS";

/// Exit status of a command that completed but skipped some input.
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "diffnet", version, about = "Build, characterize and classify news diffusion networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one network per URL from a JSON-lines event file.
    Build(BuildArgs),
    /// Compute the seven global features of every network in a manifest.
    Features(FeaturesArgs),
    /// Compute a pairwise distance matrix (dgcd13 or portrait).
    Distances(DistancesArgs),
    /// Cross-validated classification on features or a distance matrix.
    Classify(ClassifyArgs),
    /// Generate synthetic networks and append them to a manifest.
    Generate(GenerateArgs),
    /// Per-feature KS tests and box-plot summaries by class and bucket.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrientationArg {
    InformationFlow,
    Reverse,
}

impl From<OrientationArg> for EdgeOrientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::InformationFlow => EdgeOrientation::InformationFlow,
            OrientationArg::Reverse => EdgeOrientation::Reverse,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClusteringArg {
    Undirected,
    Directed,
}

impl From<ClusteringArg> for ClusteringVariant {
    fn from(c: ClusteringArg) -> Self {
        match c {
            ClusteringArg::Undirected => ClusteringVariant::Undirected,
            ClusteringArg::Directed => ClusteringVariant::Directed,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathModeArg {
    Directed,
    Undirected,
}

impl From<PathModeArg> for PathMode {
    fn from(p: PathModeArg) -> Self {
        match p {
            PathModeArg::Directed => PathMode::Directed,
            PathModeArg::Undirected => PathMode::Undirected,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricArg {
    Dgcd13,
    Portrait,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifierArg {
    Lr,
    Knn,
    KnnDistance,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
pub enum BucketArg {
    #[value(name = "D_all", alias = "all")]
    All,
    #[value(name = "D_0_100", alias = "small")]
    Under100,
    #[value(name = "D_100_1000", alias = "medium")]
    From100To1000,
    #[value(name = "D_1000_inf", alias = "large")]
    From1000,
}

impl From<BucketArg> for SizeBucket {
    fn from(b: BucketArg) -> Self {
        match b {
            BucketArg::All => SizeBucket::All,
            BucketArg::Under100 => SizeBucket::Under100,
            BucketArg::From100To1000 => SizeBucket::From100To1000,
            BucketArg::From1000 => SizeBucket::From1000,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProfileArg {
    Broadcast,
    Clustered,
}

impl From<ProfileArg> for ClassProfile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Broadcast => ClassProfile::BroadcastLike,
            ProfileArg::Clustered => ClassProfile::ClusteredLike,
        }
    }
}

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} is not in (0, 1)"))
    }
}

fn parse_positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Corpus selection shared by commands that read a manifest.
#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Dataset manifest CSV (network_id,path,label,bias,tweet_count).
    #[arg(long)]
    pub manifest: PathBuf,
    /// Drop articles with fewer associated tweets.
    #[arg(long, default_value_t = DEFAULT_MIN_TWEETS)]
    pub min_tweets: u64,
    /// Keep only networks with these biases.
    #[arg(long, value_delimiter = ',')]
    pub bias: Vec<String>,
    /// Drop networks whose id starts with `<source>:`.
    #[arg(long)]
    pub exclude_source: Vec<String>,
}

impl CorpusArgs {
    fn manifest(&self) -> Result<CorpusManifest> {
        let biases = if self.bias.is_empty() {
            None
        } else {
            Some(self.bias.iter().map(|b| b.parse()).collect::<Result<Vec<Bias>>>()?)
        };
        Ok(CorpusManifest::read(&self.manifest)?.with_filter(CorpusFilter {
            min_tweets: self.min_tweets,
            biases,
            exclude_sources: self.exclude_source.clone(),
        }))
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// JSON-lines event file.
    #[arg(long)]
    pub events: PathBuf,
    /// Output directory for edge lists.
    #[arg(long)]
    pub out: PathBuf,
    /// Manifest to append to (default: <out>/manifest.csv).
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Optional CSV with columns url,label,bias[,source].
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "information-flow")]
    pub orientation: OrientationArg,
    #[arg(long, default_value_t = DEFAULT_MIN_TWEETS)]
    pub min_tweets: u64,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Feature table CSV to write.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "undirected")]
    pub clustering: ClusteringArg,
}

#[derive(Debug, Args)]
pub struct DistancesArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum)]
    pub metric: MetricArg,
    /// Distance matrix CSV to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Keep networks with 1000 or more nodes for dgcd13.
    #[arg(long)]
    pub include_large: bool,
    #[arg(long, value_enum, default_value = "directed")]
    pub portrait_mode: PathModeArg,
    /// Directory for per-network orbit/portrait caches.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Feature table CSV (supplies labels and sizes in every mode).
    #[arg(long)]
    pub features: PathBuf,
    /// Distance matrix CSV, required for knn-distance.
    #[arg(long)]
    pub distances: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "lr")]
    pub classifier: ClassifierArg,
    #[arg(long, value_enum, default_value = "D_all")]
    pub bucket: BucketArg,
    #[arg(long, default_value_t = 10, value_parser = parse_positive)]
    pub k: usize,
    #[arg(long, default_value_t = 10, value_parser = parse_positive)]
    pub folds: usize,
    #[arg(long, default_value_t = 0.1, value_parser = parse_fraction)]
    pub test_fraction: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// L2 penalty of logistic regression.
    #[arg(long, default_value_t = 1.0)]
    pub l2: f64,
    /// Report JSON to write.
    #[arg(long)]
    pub out: PathBuf,
    /// ROC points CSV (default: report path with .roc.csv).
    #[arg(long)]
    pub roc: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub profile: ProfileArg,
    #[arg(long, default_value_t = 100, value_parser = parse_positive)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "D_100_1000")]
    pub bucket: BucketArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for edge lists.
    #[arg(long)]
    pub out: PathBuf,
    /// Manifest to append to (default: <out>/manifest.csv).
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Audience power-law exponent (profile default when omitted).
    #[arg(long)]
    pub exponent: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Feature table CSV.
    #[arg(long)]
    pub features: PathBuf,
    /// Report JSON to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional flat CSV of box-plot summaries.
    #[arg(long)]
    pub box_csv: Option<PathBuf>,
}

/// Every knob of a run, written into report JSON for provenance.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub bucket: String,
    pub distance: Option<String>,
    pub classifier: String,
    pub k: usize,
    pub folds: usize,
    pub test_fraction: f64,
    pub seed: u64,
    pub min_tweets: u64,
    pub l2: f64,
    pub edge_orientation: EdgeOrientation,
    pub clustering: ClusteringVariant,
    pub portrait_mode: PathMode,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

/// File-system friendly form of a network id.
pub fn file_stem_for(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// How a manifest at `manifest` should refer to `file`: relative to the
/// manifest's directory when `file` lies below it, absolute otherwise.
pub fn manifest_entry(manifest: &Path, file: &Path) -> String {
    let base = manifest.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let absolute = |p: &Path| std::path::absolute(p).unwrap_or_else(|_| p.to_path_buf());
    let (base, file) = (absolute(base), absolute(file));
    file.strip_prefix(&base).unwrap_or(&file).display().to_string()
}

/// Stable network id of an article URL.
pub fn network_id_for_url(url: &str, source: Option<&str>) -> String {
    let digest = Sha256::digest(url.as_bytes());
    let short = hex::encode(&digest[..6]);
    match source {
        Some(s) if !s.is_empty() => format!("{s}:{short}"),
        _ => format!("net-{short}"),
    }
}

#[derive(Debug, serde::Deserialize)]
struct LabelRow {
    url: String,
    label: Label,
    bias: Bias,
    #[serde(default)]
    source: Option<String>,
}

/// Outcome of a command: `partial` when some input was skipped.
#[derive(Debug, Default)]
pub struct Outcome {
    pub partial: bool,
    pub summary: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.partial {
            EXIT_PARTIAL
        } else {
            0
        }
    }
}

pub fn cmd_build(args: &BuildArgs) -> Result<Outcome> {
    let read = read_events(&args.events)?;
    if read.events.is_empty() {
        return Err(if read.malformed > 0 {
            Error::Format {
                path: args.events.display().to_string(),
                line: read.bad_lines[0],
                message: format!("all {} event lines are malformed", read.malformed),
            }
        } else {
            Error::Format {
                path: args.events.display().to_string(),
                line: 0,
                message: "no events".into(),
            }
        });
    }
    for line in &read.bad_lines {
        log::warn!("{}:{line}: skipped malformed event", args.events.display());
    }
    let labels: HashMap<String, LabelRow> = match &args.labels {
        Some(path) => {
            let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(open(path)?);
            r.deserialize::<LabelRow>()
                .map(|row| row.map(|l| (l.url.clone(), l)).map_err(Error::from))
                .collect::<Result<_>>()?
        }
        None => HashMap::new(),
    };
    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    let manifest = args.manifest.clone().unwrap_or_else(|| args.out.join("manifest.csv"));

    let mut rows = Vec::new();
    let mut url_map = Vec::new();
    let (mut nodes, mut edges, mut below) = (0usize, 0usize, 0usize);
    for (url, events) in group_by_url(read.events) {
        let meta = labels.get(&url);
        let id = network_id_for_url(&url, meta.and_then(|m| m.source.as_deref()));
        let net = build_network_with(&events, &url, args.orientation.into())?;
        let file = args.out.join(format!("{}.edges", file_stem_for(&id)));
        write_network(&net, &file)?;
        if net.tweet_count < args.min_tweets {
            below += 1;
            log::warn!(
                "{id} ({url}) has {} tweets, below the minimum of {}",
                net.tweet_count,
                args.min_tweets
            );
        }
        nodes += net.node_count();
        edges += net.edge_count();
        url_map.push((id.clone(), url.clone()));
        rows.push(ManifestRow {
            network_id: id,
            path: manifest_entry(&manifest, &file),
            label: meta.map_or(Label::Unlabeled, |m| m.label),
            bias: meta.map_or(Bias::None, |m| m.bias),
            tweet_count: net.tweet_count,
        });
    }
    append_manifest(&manifest, &rows)?;
    let mut w = csv::Writer::from_writer(create(&args.out.join("urls.csv"))?);
    w.write_record(["network_id", "url"])?;
    for (id, url) in &url_map {
        w.write_record([id, url])?;
    }
    w.flush().map_err(|e| Error::io(&args.out, e))?;

    Ok(Outcome {
        partial: read.malformed > 0,
        summary: format!(
            "built {} networks ({nodes} nodes, {edges} edges); {below} below {} tweets; {} malformed lines skipped",
            rows.len(),
            args.min_tweets,
            read.malformed
        ),
    })
}

pub fn cmd_features(args: &FeaturesArgs) -> Result<Outcome> {
    let manifest = args.corpus.manifest()?;
    let corpus = load_corpus(&manifest);
    let config = FeatureConfig {
        clustering: args.clustering.into(),
    };
    let results: Vec<(String, Result<FeatureRow>)> = corpus
        .networks
        .par_iter()
        .map(|n| {
            let row = extract_features_with(n, &config).map(|f| {
                FeatureRow::from(&Sample {
                    network_id: n.network_id.clone(),
                    features: f,
                    label: n.label,
                    bias: n.bias,
                    n_nodes: n.node_count(),
                })
            });
            (n.network_id.clone(), row)
        })
        .collect();
    let mut failures = corpus.failures;
    let mut rows = Vec::new();
    for (id, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => failures.push((id, e)),
        }
    }
    for (id, e) in &failures {
        log::error!("{id}: {e}");
    }
    write_feature_table(create(&args.out)?, &rows)?;
    Ok(Outcome {
        partial: !failures.is_empty(),
        summary: format!("wrote {} feature rows, {} networks failed", rows.len(), failures.len()),
    })
}

fn write_caches(dir: &Path, networks: &[DiffusionNetwork], metric: MetricArg, mode: PathMode) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    networks.par_iter().try_for_each(|n| {
        let stem = dir.join(file_stem_for(&n.network_id));
        match metric {
            MetricArg::Dgcd13 => {
                let sig = GraphletSignature::of(n);
                write_orbit_counts(create(&stem.with_extension("orbits.csv"))?, &sig.counts)?;
                write_correlations(create(&stem.with_extension("gcm.csv"))?, &sig.correlations)
            }
            MetricArg::Portrait => write_portrait(create(&stem.with_extension("portrait.csv"))?, &portrait_with(n, mode)),
        }
    })
}

pub fn cmd_distances(args: &DistancesArgs) -> Result<Outcome> {
    let manifest = args.corpus.manifest()?;
    let corpus = load_corpus(&manifest);
    for (id, e) in &corpus.failures {
        log::error!("{id}: {e}");
    }
    let mut networks = corpus.networks;
    let mut excluded = Vec::new();
    if matches!(args.metric, MetricArg::Dgcd13) && !args.include_large {
        let (keep, drop): (Vec<_>, Vec<_>) = networks.into_iter().partition(|n| n.node_count() < LARGE_NETWORK_NODES);
        networks = keep;
        excluded = drop
            .into_iter()
            .map(|n| (n.node_count(), n.network_id))
            .map(|(c, id)| (id, c))
            .collect();
    }
    if !excluded.is_empty() {
        let path = args.out.with_extension("excluded.csv");
        let mut w = csv::Writer::from_writer(create(&path)?);
        w.write_record(["network_id", "n_nodes"])?;
        for (id, n) in &excluded {
            log::info!("excluded {id} ({n} nodes) from dgcd13");
            w.write_record([id.clone(), n.to_string()])?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
    }
    let mode: PathMode = args.portrait_mode.into();
    if let Some(dir) = &args.cache_dir {
        write_caches(dir, &networks, args.metric, mode)?;
    }
    let matrix = match args.metric {
        MetricArg::Dgcd13 => dgcd13_matrix(&networks),
        MetricArg::Portrait => portrait_matrix(&networks, mode),
    };
    matrix.validate(1e-12)?;
    matrix.write_csv(create(&args.out)?)?;
    Ok(Outcome {
        partial: !corpus.failures.is_empty(),
        summary: format!(
            "wrote {0}x{0} matrix; {1} excluded (>= {LARGE_NETWORK_NODES} nodes), {2} failed to load",
            matrix.len(),
            excluded.len(),
            corpus.failures.len()
        ),
    })
}

#[derive(Debug, Serialize)]
struct ClassifyOutput<'a> {
    settings: RunConfig,
    excluded_unlabeled: usize,
    report: &'a crate::ml::ClassificationReport,
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<Outcome> {
    let rows = read_feature_table(open(&args.features)?)?;
    let total = rows.len();
    let samples: Vec<Sample> = rows.into_iter().filter(|r| r.label != Label::Unlabeled).map(Sample::from).collect();
    let unlabeled = total - samples.len();
    let bucket: SizeBucket = args.bucket.into();

    let classifier = match args.classifier {
        ClassifierArg::Lr => ClassifierConfig::Lr(LogisticConfig {
            l2: args.l2,
            ..LogisticConfig::default()
        }),
        ClassifierArg::Knn => ClassifierConfig::Knn { k: args.k },
        ClassifierArg::KnnDistance => ClassifierConfig::KnnDistance { k: args.k },
    };
    let mut distance_kind = None;
    let dataset = match (&args.distances, args.classifier) {
        (Some(path), ClassifierArg::KnnDistance) => {
            let matrix = DistanceMatrix::read_csv(open(path)?)?;
            let known: HashMap<&str, &Sample> = samples.iter().map(|s| (s.network_id.as_str(), s)).collect();
            if let Some(missing) = matrix.ids.iter().find(|id| !known.contains_key(id.as_str())) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix has {} networks; {missing} has no labeled feature row",
                    matrix.len()
                )));
            }
            let in_bucket: Vec<String> = samples
                .iter()
                .filter(|s| bucket.contains(s.n_nodes))
                .map(|s| s.network_id.clone())
                .collect();
            distance_kind = path.to_str().map(|p| {
                if p.contains("dgcd") {
                    "dgcd13".to_string()
                } else {
                    "precomputed".to_string()
                }
            });
            LabeledDataset::new(samples)?.retain_ids(&in_bucket).with_distances(&matrix)?
        }
        (None, ClassifierArg::KnnDistance) => {
            return Err(Error::InvalidParameter("knn-distance requires --distances".into()));
        }
        _ => LabeledDataset::new(samples)?,
    };
    let config = EvalConfig {
        classifier,
        folds: args.folds,
        test_fraction: args.test_fraction,
        seed: args.seed,
    };
    let report = evaluate(&dataset, &config, bucket)?;
    let settings = RunConfig {
        subcommand: "classify".into(),
        bucket: bucket.name().into(),
        distance: distance_kind,
        classifier: config.classifier.name().into(),
        k: args.k,
        folds: args.folds,
        test_fraction: args.test_fraction,
        seed: args.seed,
        min_tweets: DEFAULT_MIN_TWEETS,
        l2: args.l2,
        edge_orientation: EdgeOrientation::default(),
        clustering: ClusteringVariant::default(),
        portrait_mode: PathMode::default(),
    };
    let out = ClassifyOutput {
        settings,
        excluded_unlabeled: unlabeled,
        report: &report,
    };
    let mut w = create(&args.out)?;
    serde_json::to_writer_pretty(&mut w, &out)?;
    w.flush().map_err(|e| Error::io(&args.out, e))?;

    let roc_path = args.roc.clone().unwrap_or_else(|| args.out.with_extension("roc.csv"));
    let curves: Vec<(usize, &[crate::ml::RocPoint])> = report.folds.iter().map(|f| (f.fold, f.roc.as_slice())).collect();
    write_roc_csv(create(&roc_path)?, &curves)?;
    Ok(Outcome {
        partial: false,
        summary: format!(
            "{} on {} ({} samples): AUC {:.3} +/- {:.3}, pooled {:.3}",
            report.classifier, report.bucket, report.n_samples, report.auc.mean, report.auc.std, report.pooled_auc
        ),
    })
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<Outcome> {
    let profile: ClassProfile = args.profile.into();
    let mut recipe = CascadeRecipe::for_profile(profile);
    if let Some(e) = args.exponent {
        recipe.audience_exponent = e;
    }
    recipe.validate()?;
    let networks = generate_ensemble(&recipe, profile, args.bucket.into(), args.count, args.seed)?;
    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    let manifest = args.manifest.clone().unwrap_or_else(|| args.out.join("manifest.csv"));
    let rows = networks
        .iter()
        .map(|n| {
            let file = args.out.join(format!("{}.edges", file_stem_for(&n.network_id)));
            write_network(n, &file)?;
            Ok(ManifestRow {
                network_id: n.network_id.clone(),
                path: manifest_entry(&manifest, &file),
                label: n.label,
                bias: n.bias,
                tweet_count: n.tweet_count,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    append_manifest(&manifest, &rows)?;
    Ok(Outcome {
        partial: false,
        summary: format!("generated {} {} networks into {}", rows.len(), profile.name(), args.out.display()),
    })
}

pub fn cmd_report(args: &ReportArgs) -> Result<Outcome> {
    let samples: Vec<Sample> = read_feature_table(open(&args.features)?)?.into_iter().map(Sample::from).collect();
    let comparisons = compare_features(&samples)?;
    let mut w = create(&args.out)?;
    serde_json::to_writer_pretty(&mut w, &comparisons)?;
    w.flush().map_err(|e| Error::io(&args.out, e))?;
    if let Some(path) = &args.box_csv {
        let mut w = csv::Writer::from_writer(create(path)?);
        w.write_record(["bucket", "feature", "class", "n", "min", "q1", "median", "q3", "max"])?;
        for c in &comparisons {
            for (class, b) in [("mainstream", &c.mainstream), ("disinformation", &c.disinformation)] {
                w.write_record([
                    c.bucket.clone(),
                    c.feature.clone(),
                    class.to_string(),
                    b.n.to_string(),
                    b.min.to_string(),
                    b.q1.to_string(),
                    b.median.to_string(),
                    b.q3.to_string(),
                    b.max.to_string(),
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    let rejected = comparisons.iter().filter(|c| c.rejected).count();
    Ok(Outcome {
        partial: false,
        summary: format!("{} feature comparisons, {rejected} reject equal distributions", comparisons.len()),
    })
}

/// Configures the rayon pool from [`THREADS_ENV`] when set.
pub fn init_threads() -> Result<()> {
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let n: usize = value
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV}={value:?} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    init_threads()?;
    match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Features(a) => cmd_features(a),
        Command::Distances(a) => cmd_distances(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Report(a) => cmd_report(a),
    }
}
