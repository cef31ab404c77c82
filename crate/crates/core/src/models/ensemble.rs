//! Combining the outputs of several models.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{ConversationPartition, ReplyGraph};

fn common_size(graphs: &[ReplyGraph]) -> Result<usize> {
    let first = graphs
        .first()
        .ok_or_else(|| Error::Config("ensemble needs at least one graph".into()))?;
    for g in &graphs[1..] {
        first.check_same_size(g)?;
    }
    Ok(first.n())
}

/// Every edge predicted by any model.
pub fn ensemble_union(graphs: &[ReplyGraph]) -> Result<ReplyGraph> {
    let n = common_size(graphs)?;
    ReplyGraph::from_edges(n, graphs.iter().flat_map(ReplyGraph::edges))
}

/// Edges predicted by every model. A message left without any agreed
/// antecedent is linked to itself.
pub fn ensemble_vote(graphs: &[ReplyGraph]) -> Result<ReplyGraph> {
    let n = common_size(graphs)?;
    let mut agreed: BTreeSet<(usize, usize)> = graphs[0].edge_set().clone();
    for g in &graphs[1..] {
        agreed.retain(|e| g.contains(e.0, e.1));
    }
    // messages some model linked at all; unlinked context stays unlinked
    let linked: BTreeSet<usize> = graphs.iter().flat_map(|g| g.edges().map(|(_, c)| c)).collect();
    let mut graph = ReplyGraph::from_edges(n, agreed)?;
    let has_parent: BTreeSet<usize> = graph.edges().map(|(_, c)| c).collect();
    for &c in linked.difference(&has_parent) {
        graph.add_edge(c, c)?;
    }
    Ok(graph)
}

/// Conversations that all partitions contain exactly; every other message
/// becomes a singleton.
pub fn ensemble_intersect(partitions: &[ConversationPartition]) -> Result<ConversationPartition> {
    let first = partitions
        .first()
        .ok_or_else(|| Error::Config("ensemble needs at least one partition".into()))?;
    for p in &partitions[1..] {
        first.check_same_items(p)?;
    }
    let mut parts = Vec::new();
    for part in first.parts() {
        if partitions[1..].iter().all(|p| p.parts().contains(part)) {
            parts.push(part.clone());
        } else {
            parts.extend(part.iter().map(|&i| vec![i]));
        }
    }
    ConversationPartition::from_parts(parts)
}
