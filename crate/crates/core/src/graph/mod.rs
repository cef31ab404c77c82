//! Reply graphs and the conversations they induce.

mod audit;
mod stats;
mod union_find;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use audit::{audit_against_gold, AuditClass, AuditReport, AuditSummary, ConversationAudit};
pub use stats::{CorpusStats, Histogram, StatsSummary};
pub use union_find::UnionFind;

/// Directed reply links over the messages of one sample. An edge
/// `(parent, child)` means `child` responds to `parent`; `parent == child`
/// marks the start of a conversation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReplyGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ReplyGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut graph = Self::new(n);
        for (parent, child) in edges {
            graph.add_edge(parent, child)?;
        }
        Ok(graph)
    }

    /// Inserts a link; returns whether it was new.
    pub fn add_edge(&mut self, parent: usize, child: usize) -> Result<bool> {
        if parent > child || child >= self.n {
            return Err(Error::InvalidEdge {
                parent,
                child,
                n: self.n,
            });
        }
        Ok(self.edges.insert((parent, child)))
    }

    pub fn remove_edge(&mut self, parent: usize, child: usize) -> bool {
        self.edges.remove(&(parent, child))
    }

    pub fn contains(&self, parent: usize, child: usize) -> bool {
        self.edges.contains(&(parent, child))
    }

    /// Number of messages.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Edges whose child is at or after `from`.
    pub fn edges_from(&self, from: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges().filter(move |&(_, child)| child >= from)
    }

    /// Antecedents of each message, in ascending order.
    pub fn parents(&self) -> Vec<Vec<usize>> {
        let mut parents = vec![Vec::new(); self.n];
        for (p, c) in self.edges() {
            parents[c].push(p);
        }
        for ps in &mut parents {
            ps.sort_unstable();
        }
        parents
    }

    /// Replies to each message, excluding self-links.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.n];
        for (p, c) in self.edges().filter(|(p, c)| p != c) {
            children[p].push(c);
        }
        for cs in &mut children {
            cs.sort_unstable();
        }
        children
    }

    pub(crate) fn check_same_size(&self, other: &ReplyGraph) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

/// Disjoint groups of message indices. Parts are kept sorted and ordered by
/// their smallest member, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConversationPartition {
    parts: Vec<Vec<usize>>,
}

impl ConversationPartition {
    /// Builds a partition, rejecting overlapping or empty parts.
    pub fn from_parts(parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for part in &parts {
            if part.is_empty() {
                return Err(Error::Metric("empty conversation in partition".into()));
            }
            for &item in part {
                if !seen.insert(item) {
                    return Err(Error::Metric(format!(
                        "message {item} appears in two conversations"
                    )));
                }
            }
        }
        Ok(Self::canonical(parts))
    }

    /// Partition of `0..labels.len()` where equal labels share a part.
    pub fn from_labels<L: Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut slot: HashMap<&L, usize> = HashMap::new();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for (i, label) in labels.iter().enumerate() {
            let next = parts.len();
            let s = *slot.entry(label).or_insert(next);
            if s == next {
                parts.push(Vec::new());
            }
            parts[s].push(i);
        }
        Self::canonical(parts)
    }

    /// Every message in its own part.
    pub fn singletons(items: impl IntoIterator<Item = usize>) -> Self {
        Self::canonical(items.into_iter().map(|i| vec![i]).collect())
    }

    fn canonical(mut parts: Vec<Vec<usize>>) -> Self {
        for part in &mut parts {
            part.sort_unstable();
        }
        parts.retain(|p| !p.is_empty());
        parts.sort_unstable_by_key(|p| p[0]);
        Self { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Vec<usize>> {
        self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Number of messages covered.
    pub fn num_items(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn items(&self) -> Vec<usize> {
        let mut items: Vec<usize> = self.parts.iter().flatten().copied().collect();
        items.sort_unstable();
        items
    }

    /// Maps each message to the position of its part in [`Self::parts`].
    pub fn part_of(&self) -> HashMap<usize, usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(p, part)| part.iter().map(move |&i| (i, p)))
            .collect()
    }

    /// Drops messages before `from` (the context region).
    pub fn restrict_from(&self, from: usize) -> Self {
        Self::canonical(
            self.parts
                .iter()
                .map(|p| p.iter().copied().filter(|&i| i >= from).collect())
                .collect(),
        )
    }

    /// Keeps only the given messages.
    pub fn restrict_to(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self::canonical(
            self.parts
                .iter()
                .map(|p| p.iter().copied().filter(|&i| keep(i)).collect())
                .collect(),
        )
    }

    pub fn shifted(&self, offset: usize) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|&i| i + offset).collect())
                .collect(),
        }
    }

    /// Joins partitions over disjoint message sets.
    pub fn disjoint_union(partitions: impl IntoIterator<Item = Self>) -> Result<Self> {
        Self::from_parts(partitions.into_iter().flat_map(|p| p.parts).collect())
    }

    /// A graph over `n` messages whose conversations are exactly these
    /// parts: each message links to the previous one in its part, and the
    /// first links to itself.
    pub fn chain_graph(&self, n: usize) -> Result<ReplyGraph> {
        let mut graph = ReplyGraph::new(n);
        for part in &self.parts {
            graph.add_edge(part[0], part[0])?;
            for w in part.windows(2) {
                graph.add_edge(w[0], w[1])?;
            }
        }
        Ok(graph)
    }

    pub(crate) fn check_same_items(&self, other: &Self) -> Result<()> {
        if self.items() != other.items() {
            return Err(Error::SizeMismatch {
                expected: self.num_items(),
                found: other.num_items(),
            });
        }
        Ok(())
    }
}

/// Weakly connected components of the graph. Self-links do not connect
/// anything, so a message with only a self-link is a singleton.
pub fn conversations_of(graph: &ReplyGraph) -> ConversationPartition {
    let mut uf = UnionFind::new(graph.n());
    for (p, c) in graph.edges() {
        uf.union(p, c);
    }
    ConversationPartition { parts: uf.groups() }
}
