//! Synthetic diffusion-network generator.
//!
//! Each cascade starts with an original post; its audience size is drawn
//! from a truncated discrete power law. Audience members re-share from the
//! root or, with probability `depth_bias`, from an earlier re-sharer, and
//! may additionally reply, mention or be answered back. The class profile
//! decides where replies and mentions land:
//!
//! * `BroadcastLike`: replies and mentions go to the cascade root, so with
//!   no depth bias, reuse or reciprocity every cascade is a star.
//! * `ClusteredLike`: replies and mentions go to a neighbor of the member's
//!   parent, closing triangles.
//!
//! Networks are built from the generated events with the regular
//! construction rules.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_network, Bias, DiffusionNetwork, Interaction, InteractionEvent, Label, SizeBucket};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassProfile {
    BroadcastLike,
    ClusteredLike,
}

impl ClassProfile {
    pub fn name(self) -> &'static str {
        match self {
            ClassProfile::BroadcastLike => "broadcast",
            ClassProfile::ClusteredLike => "clustered",
        }
    }

    /// Label given to generated networks of this profile.
    pub fn label(self) -> Label {
        match self {
            ClassProfile::BroadcastLike => Label::Mainstream,
            ClassProfile::ClusteredLike => Label::Disinformation,
        }
    }
}

impl std::str::FromStr for ClassProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "broadcast" | "broadcast_like" => Ok(ClassProfile::BroadcastLike),
            "clustered" | "clustered_like" => Ok(ClassProfile::ClusteredLike),
            other => Err(Error::InvalidParameter(format!("unknown profile {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeRecipe {
    /// Number of cascades when `target_nodes` is unset.
    pub n_cascades: usize,
    /// Generate cascades until exactly this many users exist.
    pub target_nodes: Option<usize>,
    /// Exponent of the audience-size power law.
    pub audience_exponent: f64,
    /// Largest audience of a single cascade.
    pub max_audience: usize,
    pub reply_prob: f64,
    pub mention_prob: f64,
    pub quote_prob: f64,
    pub depth_bias: f64,
    pub reciprocity_prob: f64,
    /// Probability that a new participant is an existing user from an
    /// earlier cascade, merging cascades.
    pub reuse_prob: f64,
    pub seed: u64,
}

impl Default for CascadeRecipe {
    fn default() -> Self {
        CascadeRecipe {
            n_cascades: 10,
            target_nodes: None,
            audience_exponent: 2.5,
            max_audience: 1000,
            reply_prob: 0.0,
            mention_prob: 0.0,
            quote_prob: 0.0,
            depth_bias: 0.0,
            reciprocity_prob: 0.0,
            reuse_prob: 0.0,
            seed: 0,
        }
    }
}

impl CascadeRecipe {
    /// Calibrated defaults for a profile.
    pub fn for_profile(profile: ClassProfile) -> Self {
        match profile {
            ClassProfile::BroadcastLike => CascadeRecipe {
                audience_exponent: 2.5,
                reply_prob: 0.03,
                mention_prob: 0.05,
                quote_prob: 0.1,
                depth_bias: 0.05,
                reciprocity_prob: 0.0,
                reuse_prob: 0.0,
                ..CascadeRecipe::default()
            },
            ClassProfile::ClusteredLike => CascadeRecipe {
                audience_exponent: 1.7,
                reply_prob: 0.35,
                mention_prob: 0.2,
                quote_prob: 0.1,
                depth_bias: 0.5,
                reciprocity_prob: 0.1,
                reuse_prob: 0.08,
                ..CascadeRecipe::default()
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let probs = [
            ("reply_prob", self.reply_prob),
            ("mention_prob", self.mention_prob),
            ("quote_prob", self.quote_prob),
            ("depth_bias", self.depth_bias),
            ("reciprocity_prob", self.reciprocity_prob),
            ("reuse_prob", self.reuse_prob),
        ];
        for (name, p) in probs {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!("{name} = {p} outside [0, 1]")));
            }
        }
        if self.n_cascades == 0 && self.target_nodes.is_none() {
            return Err(Error::InvalidParameter("n_cascades must be at least 1".into()));
        }
        if self.target_nodes == Some(0) {
            return Err(Error::InvalidParameter("target_nodes must be at least 1".into()));
        }
        if self.audience_exponent <= 1.0 || !self.audience_exponent.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "audience exponent {} must exceed 1",
                self.audience_exponent
            )));
        }
        if self.max_audience == 0 {
            return Err(Error::InvalidParameter("max_audience must be at least 1".into()));
        }
        Ok(())
    }
}

struct EventLog {
    url: String,
    events: Vec<InteractionEvent>,
    users: usize,
}

impl EventLog {
    fn new_user(&mut self) -> String {
        self.users += 1;
        format!("u{:06}", self.users - 1)
    }

    fn push(&mut self, kind: Interaction, actor: &str, target: Option<&str>) {
        let n = self.events.len();
        self.events.push(InteractionEvent {
            tweet_id: format!("t{n:07}"),
            acting_user: actor.to_string(),
            target_user: target.map(str::to_string),
            interaction: kind,
            url: self.url.clone(),
            timestamp: n as i64,
        });
    }
}

/// Generates the event stream of one synthetic article.
pub fn generate_events(recipe: &CascadeRecipe, profile: ClassProfile) -> Result<Vec<InteractionEvent>> {
    recipe.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
    let cap = recipe.target_nodes.map_or(recipe.max_audience, |t| recipe.max_audience.min(t));
    // Audience = draw - 1 so that cascades without any re-share occur.
    let audience = Zipf::new((cap + 1) as f64, recipe.audience_exponent)
        .map_err(|e| Error::InvalidParameter(format!("audience distribution: {e}")))?;
    let mut log = EventLog {
        url: format!("synthetic://{}/{}", profile.name(), recipe.seed),
        events: Vec::new(),
        users: 0,
    };
    let target = recipe.target_nodes.unwrap_or(usize::MAX);
    let mut everyone: Vec<String> = Vec::new();
    let mut cascades = 0;

    while log.users < target && (recipe.target_nodes.is_some() || cascades < recipe.n_cascades) {
        cascades += 1;
        let root = log.new_user();
        log.push(Interaction::Original, &root, None);
        // (user, parent index within the cascade)
        let mut members: Vec<(String, usize)> = vec![(root.clone(), 0)];
        let size = audience.sample(&mut rng) as usize - 1;

        for _ in 0..size {
            let reuse = !everyone.is_empty() && rng.random_bool(recipe.reuse_prob);
            if !reuse && log.users >= target {
                break;
            }
            let user = if reuse {
                everyone.choose(&mut rng).cloned().unwrap_or_default()
            } else {
                log.new_user()
            };
            if members.iter().any(|(m, _)| *m == user) {
                continue;
            }
            let parent = if members.len() > 1 && rng.random_bool(recipe.depth_bias) {
                rng.random_range(1..members.len())
            } else {
                0
            };
            let kind = if rng.random_bool(recipe.quote_prob) {
                Interaction::Quote
            } else {
                Interaction::Retweet
            };
            log.push(kind, &user, Some(&members[parent].0));

            let closure_target = |rng: &mut ChaCha8Rng| -> usize {
                match profile {
                    ClassProfile::BroadcastLike => 0,
                    ClassProfile::ClusteredLike => {
                        // Neighbors of the parent inside the cascade: its own
                        // parent and its children.
                        let mut near: Vec<usize> = members
                            .iter()
                            .enumerate()
                            .filter(|&(i, (_, p))| *p == parent && i != parent)
                            .map(|(i, _)| i)
                            .collect();
                        if parent != 0 {
                            near.push(members[parent].1);
                        }
                        near.choose(rng).copied().unwrap_or(0)
                    }
                }
            };
            if rng.random_bool(recipe.reply_prob) {
                let t = closure_target(&mut rng);
                log.push(Interaction::Reply, &user, Some(&members[t].0));
            }
            if rng.random_bool(recipe.mention_prob) {
                let t = closure_target(&mut rng);
                log.push(Interaction::Mention, &user, Some(&members[t].0));
            }
            if rng.random_bool(recipe.reciprocity_prob) {
                log.push(Interaction::Reply, &members[parent].0, Some(&user));
            }
            members.push((user, parent));
        }
        everyone.extend(members.into_iter().map(|(u, _)| u));
        everyone.sort_unstable();
        everyone.dedup();
    }
    Ok(log.events)
}

/// Generates one labeled synthetic network; deterministic in the recipe.
pub fn generate(recipe: &CascadeRecipe, profile: ClassProfile) -> Result<DiffusionNetwork> {
    let events = generate_events(recipe, profile)?;
    let url = events
        .first()
        .map(|e| e.url.clone())
        .unwrap_or_else(|| format!("synthetic://{}/{}", profile.name(), recipe.seed));
    Ok(build_network(&events, &url)?.with_label(profile.label(), Bias::None))
}

/// SplitMix64 step, used to derive independent per-network seeds.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Node-count range sampled for a bucket. `D_0_100` starts at 20 nodes and
/// the open-ended buckets stop at 5000.
pub fn bucket_node_range(bucket: SizeBucket) -> (usize, usize) {
    match bucket {
        SizeBucket::Under100 => (20, 100),
        SizeBucket::From100To1000 => (100, 1000),
        SizeBucket::From1000 => (1000, 5000),
        SizeBucket::All => (20, 5000),
    }
}

/// `count` networks of one profile with node counts drawn log-uniformly in
/// the bucket range. Ids are `<profile>:<bucket>:<index>`.
pub fn generate_ensemble(
    base: &CascadeRecipe,
    profile: ClassProfile,
    bucket: SizeBucket,
    count: usize,
    seed: u64,
) -> Result<Vec<DiffusionNetwork>> {
    let (lo, hi) = bucket_node_range(bucket);
    (0..count)
        .into_par_iter()
        .map(|i| {
            let s = mix_seed(seed ^ (profile as u64) << 32, i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let nodes = ((lo as f64).ln() + rng.random::<f64>() * ((hi as f64).ln() - (lo as f64).ln()))
                .exp()
                .floor() as usize;
            let recipe = CascadeRecipe {
                target_nodes: Some(nodes.clamp(lo, hi - 1)),
                max_audience: hi,
                seed: rng.random(),
                ..base.clone()
            };
            let id = format!("{}:{}:{i:05}", profile.name(), bucket.name());
            Ok(generate(&recipe, profile)?.with_id(id))
        })
        .collect()
}
