//! Diffusion-network representation and construction from interaction events.
//!
//! A [`DiffusionNetwork`] is a directed, unweighted, simple graph: one node per
//! user, at most one edge per ordered pair, no self-loops. Nodes are stored in
//! lexicographic order of their identifiers so two networks built from the
//! same events in any order are identical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kind of tweet that produced an [`InteractionEvent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interaction {
    Original,
    Retweet,
    Quote,
    Reply,
    Mention,
}

/// One typed interaction extracted from a tweet carrying a news URL.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionEvent {
    pub tweet_id: String,
    #[serde(rename = "user")]
    pub acting_user: String,
    #[serde(default)]
    pub target_user: Option<String>,
    pub interaction: Interaction,
    pub url: String,
    pub timestamp: i64,
}

impl InteractionEvent {
    pub fn original(tweet_id: &str, user: &str, url: &str) -> Self {
        InteractionEvent {
            tweet_id: tweet_id.to_string(),
            acting_user: user.to_string(),
            target_user: None,
            interaction: Interaction::Original,
            url: url.to_string(),
            timestamp: 0,
        }
    }

    pub fn interaction(tweet_id: &str, kind: Interaction, user: &str, target: &str, url: &str) -> Self {
        InteractionEvent {
            tweet_id: tweet_id.to_string(),
            acting_user: user.to_string(),
            target_user: Some(target.to_string()),
            interaction: kind,
            url: url.to_string(),
            timestamp: 0,
        }
    }

    /// Checks the event-level invariants (target presence matches the kind,
    /// user identifiers non-empty).
    pub fn validate(&self) -> Result<()> {
        let malformed = |reason: &str| Error::MalformedEvent {
            tweet_id: self.tweet_id.clone(),
            reason: reason.to_string(),
        };
        if self.acting_user.is_empty() {
            return Err(malformed("empty user identifier"));
        }
        match (&self.interaction, &self.target_user) {
            (Interaction::Original, Some(_)) => Err(malformed("original tweet with a target user")),
            (Interaction::Original, None) => Ok(()),
            (_, None) => Err(malformed("interaction without a target user")),
            (_, Some(t)) if t.is_empty() => Err(malformed("empty target identifier")),
            _ => Ok(()),
        }
    }
}

/// Orientation of edges derived from interactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeOrientation {
    /// Along information flow: retweets, quotes and replies point from the
    /// original author to the acting user; mentions point from the acting
    /// user to the mentioned user.
    #[default]
    InformationFlow,
    /// Every edge of [`EdgeOrientation::InformationFlow`] reversed.
    Reverse,
}

impl EdgeOrientation {
    /// Returns the (source, destination) pair for a non-original event.
    fn orient<'a>(self, kind: Interaction, actor: &'a str, target: &'a str) -> (&'a str, &'a str) {
        let flow = match kind {
            Interaction::Mention => (actor, target),
            _ => (target, actor),
        };
        match self {
            EdgeOrientation::InformationFlow => flow,
            EdgeOrientation::Reverse => (flow.1, flow.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Mainstream,
    Disinformation,
    #[default]
    Unlabeled,
}

impl Label {
    /// Positive class for detection is disinformation.
    pub fn is_positive(self) -> bool {
        self == Label::Disinformation
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bias {
    Left,
    Centre,
    Right,
    Satire,
    #[default]
    None,
}

macro_rules! text_enum {
    ($ty:ty { $($variant:ident => $text:literal $(| $alias:literal)*),+ $(,)? }) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self { $(<$ty>::$variant => $text),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($text $(| $alias)* => Ok(<$ty>::$variant),)+
                    other => Err(Error::InvalidParameter(format!(
                        "unknown {} {:?}", stringify!($ty), other
                    ))),
                }
            }
        }
    };
}

text_enum!(Interaction {
    Original => "original",
    Retweet => "retweet",
    Quote => "quote",
    Reply => "reply",
    Mention => "mention",
});

text_enum!(Label {
    Mainstream => "mainstream",
    Disinformation => "disinformation",
    Unlabeled => "unlabeled" | "",
});

text_enum!(Bias {
    Left => "left",
    Centre => "centre" | "center",
    Right => "right",
    Satire => "satire",
    None => "none" | "",
});

/// Node-count buckets used to split the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SizeBucket {
    #[serde(rename = "D_all")]
    All,
    #[serde(rename = "D_0_100")]
    Under100,
    #[serde(rename = "D_100_1000")]
    From100To1000,
    #[serde(rename = "D_1000_inf")]
    From1000,
}

text_enum!(SizeBucket {
    All => "d_all" | "all",
    Under100 => "d_0_100" | "small",
    From100To1000 => "d_100_1000" | "medium",
    From1000 => "d_1000_inf" | "large",
});

impl SizeBucket {
    pub const PARTITION: [SizeBucket; 3] = [SizeBucket::Under100, SizeBucket::From100To1000, SizeBucket::From1000];

    /// The unique non-`All` bucket holding a network with `n` nodes.
    pub fn for_node_count(n: usize) -> SizeBucket {
        match n {
            0..100 => SizeBucket::Under100,
            100..1000 => SizeBucket::From100To1000,
            _ => SizeBucket::From1000,
        }
    }

    pub fn contains(self, n: usize) -> bool {
        self == SizeBucket::All || SizeBucket::for_node_count(n) == self
    }

    /// Display label as used in reports: `D_all`, `D_0_100`, ...
    pub fn name(self) -> &'static str {
        match self {
            SizeBucket::All => "D_all",
            SizeBucket::Under100 => "D_0_100",
            SizeBucket::From100To1000 => "D_100_1000",
            SizeBucket::From1000 => "D_1000_inf",
        }
    }
}

/// Directed, unweighted, simple graph of user interactions for one URL.
#[derive(Debug, Clone)]
pub struct DiffusionNetwork {
    pub network_id: String,
    pub label: Label,
    pub bias: Bias,
    pub tweet_count: u64,
    nodes: Vec<String>,
    edges: Vec<(u32, u32)>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
    und_adj: Vec<Vec<u32>>,
}

impl PartialEq for DiffusionNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.network_id == other.network_id
            && self.label == other.label
            && self.bias == other.bias
            && self.tweet_count == other.tweet_count
            && self.nodes == other.nodes
            && self.edges == other.edges
    }
}

impl DiffusionNetwork {
    /// Builds a network on nodes `0..n` (named with zero-padded decimal
    /// indices so that the node order matches the index order).
    ///
    /// Self-loops are dropped and duplicate edges collapsed.
    pub fn from_indexed(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let width = n.saturating_sub(1).to_string().len();
        let nodes: Vec<String> = (0..n).map(|i| format!("{i:0width$}")).collect();
        let mut list: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| {
                assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} nodes");
                (u as u32, v as u32)
            })
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::assemble(String::new(), nodes, list)
    }

    fn assemble(network_id: String, nodes: Vec<String>, edges: Vec<(u32, u32)>) -> Self {
        let n = nodes.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        let mut und_adj = vec![Vec::new(); n];
        for v in 0..n {
            let mut nb: Vec<u32> = out_adj[v].iter().chain(&in_adj[v]).copied().collect();
            nb.sort_unstable();
            nb.dedup();
            in_adj[v].sort_unstable();
            und_adj[v] = nb;
        }
        DiffusionNetwork {
            network_id,
            label: Label::Unlabeled,
            bias: Bias::None,
            tweet_count: 0,
            nodes,
            edges,
            out_adj,
            in_adj,
            und_adj,
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.network_id = id.into();
        self
    }

    pub fn with_label(mut self, label: Label, bias: Bias) -> Self {
        self.label = label;
        self.bias = bias;
        self
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node identifiers in index order (lexicographic).
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(id)).ok()
    }

    /// Edges as sorted `(source, destination)` index pairs.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[u32] {
        &self.in_adj[v]
    }

    /// Neighbors in the undirected simple projection.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.und_adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn bucket(&self) -> SizeBucket {
        bucket_of(self)
    }

    /// A copy with every edge reversed.
    pub fn reversed(&self) -> Self {
        let mut edges: Vec<(u32, u32)> = self.edges.iter().map(|&(u, v)| (v, u)).collect();
        edges.sort_unstable();
        let mut net = Self::assemble(self.network_id.clone(), self.nodes.clone(), edges);
        net.label = self.label;
        net.bias = self.bias;
        net.tweet_count = self.tweet_count;
        net
    }
}

/// Incremental string-keyed construction of a [`DiffusionNetwork`].
#[derive(Debug, Default)]
pub struct NetworkBuilder {
    nodes: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
    duplicates: usize,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str) {
        if !self.nodes.contains(id) {
            self.nodes.insert(id.to_string());
        }
    }

    /// Adds an edge and both endpoints. Returns `false` if the edge was a
    /// duplicate or a self-loop (the endpoints are still added).
    pub fn add_edge(&mut self, src: &str, dst: &str) -> bool {
        self.add_node(src);
        self.add_node(dst);
        if src == dst {
            return false;
        }
        let fresh = self.edges.insert((src.to_string(), dst.to_string()));
        if !fresh {
            self.duplicates += 1;
        }
        fresh
    }

    /// Number of `add_edge` calls that hit an existing edge.
    pub fn duplicate_edges(&self) -> usize {
        self.duplicates
    }

    pub fn build(self, network_id: impl Into<String>) -> DiffusionNetwork {
        let nodes: Vec<String> = self.nodes.into_iter().collect();
        let index: BTreeMap<&str, u32> = nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect();
        // BTreeSet order over strings matches index order since nodes are sorted.
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|(s, d)| (index[s.as_str()], index[d.as_str()])).collect();
        DiffusionNetwork::assemble(network_id.into(), nodes, edges)
    }
}

/// Builds the diffusion network of `url` with the default orientation.
pub fn build_network(events: &[InteractionEvent], url: &str) -> Result<DiffusionNetwork> {
    build_network_with(events, url, EdgeOrientation::default())
}

/// Builds the diffusion network of `url`: one node per user appearing in any
/// event, one edge per distinct oriented pair realized by a non-original
/// interaction. Authors whose tweets were never re-shared stay isolated.
pub fn build_network_with(events: &[InteractionEvent], url: &str, orientation: EdgeOrientation) -> Result<DiffusionNetwork> {
    let mut builder = NetworkBuilder::new();
    for event in events {
        if event.url != url {
            return Err(Error::UrlMismatch {
                tweet_id: event.tweet_id.clone(),
                expected: url.to_string(),
                found: event.url.clone(),
            });
        }
        event.validate()?;
        match &event.target_user {
            None => builder.add_node(&event.acting_user),
            Some(target) => {
                let (src, dst) = orientation.orient(event.interaction, &event.acting_user, target);
                builder.add_edge(src, dst);
            }
        }
    }
    let mut net = builder.build(url);
    net.tweet_count = events.len() as u64;
    Ok(net)
}

/// The unique non-`All` size bucket of a network.
pub fn bucket_of(network: &DiffusionNetwork) -> SizeBucket {
    SizeBucket::for_node_count(network.node_count())
}
