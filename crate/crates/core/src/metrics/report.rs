use serde::{Deserialize, Serialize};

use crate::corpus::Message;
use crate::error::{Error, Result};
use crate::graph::{conversations_of, ConversationPartition, ReplyGraph};
use crate::metrics::{
    edge_counts, exact_match_counts, loc_rand, one_to_one, scaled_vi, shen_f, EdgeCounts, Prf,
};

/// A system's output for one sample: a reply graph, or just conversations
/// for systems that do not produce links.
#[derive(Debug, Clone, PartialEq)]
pub enum Prediction {
    Graph(ReplyGraph),
    Partition(ConversationPartition),
}

impl Prediction {
    pub fn partition(&self) -> ConversationPartition {
        match self {
            Prediction::Graph(g) => conversations_of(g),
            Prediction::Partition(p) => p.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SampleEval<'a> {
    pub gold: &'a ReplyGraph,
    pub prediction: Prediction,
    /// Messages before this index are context and are not scored.
    pub context: usize,
    /// Needed only when system messages are excluded.
    pub messages: Option<&'a [Message]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub include_self_links: bool,
    pub include_system_messages: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            include_self_links: true,
            include_system_messages: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCounts {
    pub samples: usize,
    pub messages: usize,
    pub gold_edges: usize,
    pub predicted_edges: usize,
    pub matched_edges: usize,
    pub gold_conversations: usize,
    pub predicted_conversations: usize,
    pub matched_conversations: usize,
}

/// Scores pooled over all evaluated samples. Field names are the keys of
/// the JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    /// Link scores; absent when predictions are conversations only.
    pub graph: Option<Prf>,
    pub vi: f64,
    pub one_to_one: f64,
    pub exact_match: Prf,
    pub shen: f64,
    pub loc: Option<f64>,
    pub counts: ReportCounts,
}

impl MetricReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Scores every sample's scored region and pools the results: link counts
/// are summed, and conversations from all samples are compared as one
/// partition.
pub fn evaluate(samples: &[SampleEval<'_>], opts: EvalOptions) -> Result<MetricReport> {
    if samples.is_empty() {
        return Err(Error::Metric("nothing to evaluate".into()));
    }
    let mut edges = EdgeCounts::default();
    let mut graph_scored = true;
    let (mut gold_parts, mut pred_parts) = (Vec::new(), Vec::new());
    let mut offset = 0;

    for s in samples {
        let n = s.gold.n();
        match &s.prediction {
            Prediction::Graph(pred) => edges.add(edge_counts(s.gold, pred, s.context, opts.include_self_links)?),
            Prediction::Partition(_) => graph_scored = false,
        }
        let mut gold = conversations_of(s.gold).restrict_from(s.context);
        let mut pred = s.prediction.partition().restrict_from(s.context);
        if !opts.include_system_messages {
            let messages = s
                .messages
                .ok_or_else(|| Error::Metric("excluding system messages needs the parsed log".into()))?;
            gold = gold.restrict_to(|i| !messages[i].is_system());
            pred = pred.restrict_to(|i| !messages[i].is_system());
        }
        gold_parts.push(gold.shifted(offset));
        pred_parts.push(pred.shifted(offset));
        offset += n;
    }

    let gold = ConversationPartition::disjoint_union(gold_parts)?;
    let pred = ConversationPartition::disjoint_union(pred_parts)?;
    let (matched, predicted, gold_multi) = exact_match_counts(&gold, &pred);
    gold.check_same_items(&pred)?;

    Ok(MetricReport {
        graph: graph_scored.then(|| edges.prf()),
        vi: scaled_vi(&gold, &pred)?,
        one_to_one: one_to_one(&gold, &pred)?,
        exact_match: Prf::from_counts(matched, predicted, gold_multi),
        shen: shen_f(&gold, &pred)?,
        loc: loc_rand(&gold, &pred).ok(),
        counts: ReportCounts {
            samples: samples.len(),
            messages: gold.num_items(),
            gold_edges: edges.gold,
            predicted_edges: edges.predicted,
            matched_edges: edges.matched,
            gold_conversations: gold_multi,
            predicted_conversations: predicted,
            matched_conversations: matched,
        },
    })
}
