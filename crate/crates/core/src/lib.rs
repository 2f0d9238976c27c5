//! Reconstruction, characterization and classification of news diffusion
//! networks.
//!
//! The pipeline builds directed user-interaction graphs per article
//! ([`graph`]), summarizes them with seven global properties
//! ([`features`]), compares them with alignment-free distances
//! ([`graphlet`], [`portrait`], [`distance`]) and classifies them with
//! cross-validated logistic regression and nearest neighbors ([`ml`]).

pub mod cli;
pub mod dataset;
pub mod distance;
pub mod error;
pub mod features;
pub mod graph;
pub mod graphlet;
pub mod io;
pub mod ml;
pub mod portrait;
pub mod report;
pub mod synth;

pub use error::{Error, Result};
pub use features::{extract_features, FeatureVector};
pub use graph::{bucket_of, build_network, DiffusionNetwork, InteractionEvent, SizeBucket};
pub use graphlet::{count_orbits, dgcd13};
pub use portrait::{portrait, portrait_divergence};
